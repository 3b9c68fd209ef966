#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "hyperdist.hpp"
#include "quadrature.hpp"
#include "special.hpp"

namespace hyperzeta {

struct SeriesConfig {
    std::size_t dim_cutoff = 0; // 0 picks a default based on dimension
    double tail_tol = 1e-2;     // accepted tail bound relative to the partial sum
    QuadConfig expectation_cfg{1e-12, 1e-12, 18, 15, 8.0};
};

struct SeriesResult {
    ComplexValue value;
    double err_estimate = 0.0;   // tail bound plus roundoff
    std::size_t terms = 0;
    double tail_bound = 0.0;
};

// Parameters (family, alpha, a, b) shared by the three zeta functions.
struct ZetaParams {
    Family family;
    std::vector<double> orders;  // alpha_j
    std::vector<double> weights; // a_j
    double b;

    double beta = 0.0;
    double lambda = 0.0; // half of a . alpha
    double c = 0.0;      // b - lambda
    double c_r = 1.0;    // prod a_j^{-alpha_j}

    ZetaParams(Family f, std::vector<double> alpha, std::vector<double> a, double b_)
        : family(f), orders(std::move(alpha)), weights(std::move(a)), b(b_) {
        if (orders.empty() || orders.size() != weights.size())
            throw ParameterError("ZetaParams: orders and weights must be nonempty and equal length");
        if (!(b > 0.0)) throw ParameterError("ZetaParams: b must be positive");
        for (std::size_t j = 0; j < orders.size(); ++j) {
            if (!(orders[j] > 0.0)) throw ParameterError("ZetaParams: orders must be positive");
            if (!(weights[j] > 0.0)) throw ParameterError("ZetaParams: weights must be positive");
            if (family == Family::Tanh && !detail::near_integer(orders[j]))
                throw ParameterError("ZetaParams: tanh family requires integer orders");
            beta += orders[j];
            lambda += 0.5 * weights[j] * orders[j];
            c_r *= std::pow(weights[j], -orders[j]);
        }
        c = b - lambda;
        if (family != Family::Tanh && std::abs(c) < 1e-6)
            throw ParameterError("ZetaParams: b - lambda too close to zero");
    }

    std::size_t dim() const { return orders.size(); }
    bool integer_beta() const { return detail::near_integer(beta); }

    MixtureSpec to_mixture() const {
        std::vector<MixtureComponent> comps;
        comps.reserve(dim());
        for (std::size_t j = 0; j < dim(); ++j)
            comps.push_back({weights[j], orders[j]});
        return MixtureSpec(family, std::move(comps));
    }
};

// Density of a sum of n independent uniform(0,1) variables.
inline double irwin_hall_pdf(int n, double x) {
    if (n < 1) throw ParameterError("irwin_hall_pdf: n must be at least 1");
    if (x < 0.0 || x > static_cast<double>(n)) return 0.0;
    double lf = 0.0; // log (n-1)!
    for (int k = 2; k < n; ++k) lf += std::log(static_cast<double>(k));
    double sum = 0.0, binom = 1.0;
    int kmax = static_cast<int>(std::floor(x));
    if (kmax == n) kmax = n - 1;
    for (int k = 0; k <= kmax; ++k) {
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        sum += sign * binom * std::pow(x - k, n - 1);
        binom *= static_cast<double>(n - k) / (k + 1);
    }
    return sum / std::exp(lf);
}

namespace detail {

// Laplace-kernel factor prod_j ((1 - e^{-a_j t}) / (a_j t))^{alpha_j},
// the Laplace transform of the shifted uniform blocks in a T-series term.
inline double laplace_uniform_factor(const ZetaParams& p, double t) {
    double ls = 0.0;
    for (std::size_t j = 0; j < p.dim(); ++j) {
        double u = p.weights[j] * t;
        double ratio = (u > 30.0) ? 1.0 / u : -std::expm1(-u) / u;
        ls += p.orders[j] * std::log(ratio);
    }
    return std::exp(ls);
}

struct Neumaier {
    double s = 0.0, comp = 0.0, abs = 0.0;
    void add(double x) {
        abs += std::abs(x);
        double t = s + x;
        if (std::abs(s) >= std::abs(x)) comp += (s - t) + x;
        else comp += (x - t) + s;
        s = t;
    }
    double total() const { return s + comp; }
};

// binomial weights obey |w(n)| <= wendel_c(alpha, n0) n^{alpha-1} / Gamma(alpha)
// for n >= n0, by log-convexity of the gamma function
inline double wendel_c(double alpha, double n0) {
    return std::pow(1.0 + alpha / n0, std::max(alpha - 1.0, 0.0));
}

inline double gamma_pos(double alpha) {
    return std::exp(log_gamma(ComplexValue(alpha, 0.0)).real());
}

// upper bound on int_M^inf x^(alpha-1) (a x + Q)^(-tau) dx for any tau > alpha
inline double tail_integral(double alpha, double a, double Q, double tau, double M) {
    if (alpha >= 1.0)
        return std::pow(a, -alpha) * std::pow(a * M + Q, alpha - tau) / (tau - alpha);
    double d = 0.5 * (tau - alpha);
    return std::pow(a, -alpha - d) * std::pow(M, -d) / d
         * std::pow(a * M + Q, -(tau - alpha - d));
}

// F(tau, Q) = sum_n |w_alpha(n)| (a n + Q)^(-tau): exact head plus bounded tail
inline double full_sum_base(double alpha, double a, double Q, double tau) {
    const std::size_t M = 400;
    double s = 0.0, w = 1.0;
    for (std::size_t n = 0; n <= M; ++n) {
        if (n > 0) w *= (static_cast<double>(n) - 1.0 + alpha) / static_cast<double>(n);
        s += w * std::pow(a * static_cast<double>(n) + Q, -tau);
    }
    s += wendel_c(alpha, static_cast<double>(M)) / gamma_pos(alpha)
       * tail_integral(alpha, a, Q, tau, static_cast<double>(M));
    return s;
}

// bound on sum over the remaining dimensions of prod |w_k| (Q + a.n)^(-tau)
inline double remaining_bound(const ZetaParams& p, std::size_t skip, double tau, double Q) {
    std::size_t r = p.dim();
    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k < r; ++k)
        if (k != skip) dims.push_back(k);
    if (dims.empty()) return std::pow(Q, -tau);
    if (dims.size() == 1)
        return full_sum_base(p.orders[dims[0]], p.weights[dims[0]], Q, tau);
    double beta_rest = 0.0;
    for (std::size_t k : dims) beta_rest += p.orders[k];
    double spread = (tau - beta_rest) / static_cast<double>(dims.size());
    double out = 1.0;
    for (std::size_t k : dims)
        out *= full_sum_base(p.orders[k], p.weights[k], Q, p.orders[k] + spread);
    return out;
}

// Bound on the summed terms outside the box [0,N]^r: one slab per dimension,
// the escaping index compared against its tail integral and the others summed
// exactly against the pushed-out base a_j N + b. This keeps the true N^(beta -
// sigma) rate instead of losing a factor N^(split) to exponent surgery.
inline double box_tail_bound(const ZetaParams& p, double sigma, double n_cut) {
    std::size_t r = p.dim();
    double total = 0.0;
    for (std::size_t j = 0; j < r; ++j) {
        double alpha = p.orders[j], a = p.weights[j];
        double c = wendel_c(alpha, n_cut) / gamma_pos(alpha);
        double Q = a * n_cut + p.b;
        double slab;
        if (alpha >= 1.0) {
            slab = c * std::pow(a, -alpha) / (sigma - alpha)
                 * remaining_bound(p, j, sigma - alpha, Q);
        } else {
            double d = std::min(0.25, 0.5 * (sigma - p.beta));
            slab = c * std::pow(a, -alpha - d) * std::pow(n_cut, -d) / d
                 * remaining_bound(p, j, sigma - alpha - d, Q);
        }
        total += slab;
    }
    return total;
}

inline std::size_t default_cutoff(const ZetaParams& p) {
    std::size_t r = p.dim();
    if (r == 1) return 2000;
    if (r == 2) return 700;
    return 150;
}

template <typename TermFn>
SeriesResult sum_box(const ZetaParams& p, ComplexValue s, const SeriesConfig& cfg,
                     TermFn&& term) {
    double sigma = s.real();
    if (!(sigma > p.beta + 0.5))
        throw ConvergenceRegionError("series: Re(s) must exceed beta + 1/2 for direct summation");
    std::size_t n_cut = cfg.dim_cutoff ? cfg.dim_cutoff : default_cutoff(p);
    std::size_t r = p.dim();

    std::vector<std::size_t> idx(r, 0);
    // per-dimension binomial weights, advanced recursively
    std::vector<std::vector<double>> w(r);
    for (std::size_t j = 0; j < r; ++j) {
        w[j].resize(n_cut + 1);
        w[j][0] = 1.0;
        for (std::size_t n = 1; n <= n_cut; ++n)
            w[j][n] = w[j][n - 1] * (static_cast<double>(n) - 1.0 + p.orders[j])
                      / static_cast<double>(n);
    }

    Neumaier re, im;
    std::size_t count = 0;
    for (;;) {
        double coeff = 1.0;
        double q = p.b;
        std::size_t parity = 0;
        for (std::size_t j = 0; j < r; ++j) {
            coeff *= w[j][idx[j]];
            q += p.weights[j] * static_cast<double>(idx[j]);
            parity += idx[j];
        }
        ComplexValue t = term(q, coeff, parity, idx);
        re.add(t.real());
        im.add(t.imag());
        ++count;
        std::size_t j = r;
        while (j > 0) {
            --j;
            if (idx[j] < n_cut) {
                ++idx[j];
                break;
            }
            idx[j] = 0;
            if (j == 0) {
                SeriesResult out;
                out.value = ComplexValue(re.total(), im.total());
                out.terms = count;
                out.tail_bound = box_tail_bound(p, sigma, static_cast<double>(n_cut));
                double scale = std::max(std::abs(out.value), 1e-300);
                if (out.tail_bound > cfg.tail_tol * scale)
                    throw TailToleranceError("series: tail bound exceeds the requested tolerance");
                out.err_estimate = out.tail_bound + 1e-16 * (re.abs + im.abs);
                return out;
            }
        }
    }
}

} // namespace detail

// E[(a.(n+V) + b)^{-s}] with V_j a sum of alpha_j uniforms, via the Laplace
// representation; requires Re(s) > 0, and equals 1 at s = 0.
inline ComplexValue term_T_expectation(const ZetaParams& p, const std::vector<std::size_t>& n,
                                       ComplexValue s, const QuadConfig& cfg) {
    if (n.size() != p.dim()) throw ParameterError("term_T_expectation: index size mismatch");
    if (s == ComplexValue(0.0, 0.0)) return ComplexValue(1.0, 0.0);
    if (!(s.real() > 0.0))
        throw ConvergenceRegionError("term_T_expectation: Re(s) must be positive");
    double q = p.b;
    for (std::size_t j = 0; j < p.dim(); ++j)
        q += p.weights[j] * static_cast<double>(n[j]);
    auto g = [&p](double t) -> ComplexValue {
        return ComplexValue(detail::laplace_uniform_factor(p, t), 0.0);
    };
    QuadResult mr = integrate_halfline_mellin(s, g, q, cfg);
    return mr.value * std::exp(-log_gamma(s));
}

inline SeriesResult series_S(const ZetaParams& p, ComplexValue s, const SeriesConfig& cfg = {}) {
    if (p.family != Family::Sinh)
        throw ParameterError("series_S: parameters must use the sinh family");
    return detail::sum_box(p, s, cfg,
        [&](double q, double coeff, std::size_t, const std::vector<std::size_t>&) {
            return coeff * std::exp(-s * std::log(q));
        });
}

inline SeriesResult series_C(const ZetaParams& p, ComplexValue s, const SeriesConfig& cfg = {}) {
    if (p.family != Family::Cosh)
        throw ParameterError("series_C: parameters must use the cosh family");
    return detail::sum_box(p, s, cfg,
        [&](double q, double coeff, std::size_t parity, const std::vector<std::size_t>&) {
            double sign = (parity % 2 == 0) ? 1.0 : -1.0;
            return sign * coeff * std::exp(-s * std::log(q));
        });
}

// The boxed partial sum of the tanh series collapses, term by term through
// the Laplace kernel, into one half-line integral:
//   sum_{n in [0,N]^r} prod_j C(-a_j,n_j) E[(a.(n+V)+b)^{-s}]
//     = (1/Gamma(s)) int_0^inf t^{s-1} e^{-bt}
//         prod_j [ P_j(-e^{-a_j t}) ((1-e^{-a_j t})/(a_j t))^{alpha_j} ] dt
// with P_j the boxed binomial polynomial, so the cutoff costs a Horner pass
// instead of one quadrature per term.
inline SeriesResult series_T(const ZetaParams& p, ComplexValue s, const SeriesConfig& cfg = {}) {
    if (p.family != Family::Tanh)
        throw ParameterError("series_T: parameters must use the tanh family");
    double sigma = s.real();
    if (!(sigma > p.beta + 0.5))
        throw ConvergenceRegionError("series: Re(s) must exceed beta + 1/2 for direct summation");
    std::size_t n_cut = cfg.dim_cutoff ? cfg.dim_cutoff : detail::default_cutoff(p);
    std::size_t r = p.dim();
    std::vector<std::vector<double>> w(r);
    for (std::size_t j = 0; j < r; ++j) {
        w[j].resize(n_cut + 1);
        w[j][0] = 1.0;
        for (std::size_t n = 1; n <= n_cut; ++n)
            w[j][n] = w[j][n - 1] * (static_cast<double>(n) - 1.0 + p.orders[j])
                      / static_cast<double>(n);
    }
    auto g = [&](double t) -> ComplexValue {
        double prod = 1.0;
        for (std::size_t j = 0; j < r; ++j) {
            double u = p.weights[j] * t;
            double z = -std::exp(-u);
            double pj = 0.0;
            for (std::size_t n = n_cut + 1; n-- > 0;) pj = pj * z + w[j][n];
            double ratio = (u > 30.0) ? 1.0 / u : -std::expm1(-u) / u;
            prod *= pj * std::pow(ratio, p.orders[j]);
        }
        return ComplexValue(prod, 0.0);
    };
    QuadResult mr = integrate_halfline_mellin(s, g, p.b, cfg.expectation_cfg);
    ComplexValue inv_gamma_s = std::exp(-log_gamma(s));
    SeriesResult out;
    out.value = mr.value * inv_gamma_s;
    std::size_t count = 1;
    for (std::size_t j = 0; j < r; ++j) count *= n_cut + 1;
    out.terms = count;
    out.tail_bound = detail::box_tail_bound(p, sigma, static_cast<double>(n_cut));
    double scale = std::max(std::abs(out.value), 1e-300);
    if (out.tail_bound > cfg.tail_tol * scale)
        throw TailToleranceError("series: tail bound exceeds the requested tolerance");
    out.err_estimate = out.tail_bound + std::abs(inv_gamma_s) * mr.err_estimate
                     + 1e-15 * std::abs(out.value);
    return out;
}

} // namespace hyperzeta
