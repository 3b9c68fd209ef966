#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "errors.hpp"
#include "hyperdist.hpp"
#include "quadrature.hpp"
#include "series.hpp"
#include "special.hpp"

namespace hyperzeta {

struct EvalResult {
    ComplexValue value;
    double err_estimate = 0.0;
    std::string method;
    std::vector<std::string> warnings;
};

struct PoleInfo {
    double location;
    double residue;
    std::string kind;
};

struct PoleReport {
    std::vector<PoleInfo> poles; // strictly decreasing locations
};

enum class Method { Auto, Series, Integral, Mellin, Verify };

struct EvalConfig {
    QuadConfig quad;
    SeriesConfig series;
};

// E[(c + iY)^{-w}] for the mixture variable Y: folded over the symmetric
// density, truncated where the contour envelope says the tail is spent.
inline QuadResult kernel_moment_integral(const MixtureSpec& spec, double c, ComplexValue w,
                                         const QuadConfig& cfg) {
    if (std::abs(c) < 1e-7)
        throw ParameterError("kernel_moment_integral: offset too close to zero");
    auto model = detail::build_density_model(spec);
    double q = std::max(0.0, -w.real());
    double theta_max = (c > 0.0) ? 1.5707963267948966 : 3.14159265358979323846;
    double osc = std::exp(std::min(std::abs(w.imag()) * theta_max, 700.0));
    auto trunc_bound = [&](double R) {
        return 4.0 / model->tau * model->envelope(R) * osc
             * std::pow(c * c + R * R, 0.5 * q);
    };
    double R = std::max(4.0, (2.0 * q + 4.0) / model->tau);
    double target = 0.05 * cfg.abs_tol;
    while (trunc_bound(R) > target && R < model->y_cut) R += 1.0;
    R = std::min(R, model->y_cut);

    auto folded = [&](double y) -> ComplexValue {
        double f = (*model)(y);
        if (f == 0.0) return ComplexValue(0.0, 0.0);
        ComplexValue up = std::exp(-w * std::log(ComplexValue(c, y)));
        ComplexValue dn = std::exp(-w * std::log(ComplexValue(c, -y)));
        return (up + dn) * f;
    };
    std::vector<double> splits = model->splits;
    if (w.real() > 0.5 && std::abs(c) < 0.5) {
        splits.push_back(std::abs(c));
        if (std::abs(c) < 0.02) splits.push_back(0.1);
    }
    QuadResult out = integrate_interval(folded, 0.0, R, cfg, splits);
    double kernel_max = osc * ((w.real() >= 0.0) ? std::pow(c * c, -0.5 * w.real())
                                                 : std::pow(c * c + R * R, 0.5 * q));
    out.truncation_bound = trunc_bound(R);
    out.err_estimate += out.truncation_bound + 2.0 * R * model->point_err * kernel_max;
    return out;
}

namespace detail {

inline double gamma_real_any(double x) {
    if (x > 0.0) return std::tgamma(x);
    return gamma_neg_real(-x);
}

// residue of the sinh-type function at s = beta - n (or s = k with n = beta - k
// when beta is an integer)
inline double residue_S_at(const ZetaParams& p, int n, const QuadConfig& cfg) {
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    double mom = complex_moment(p.to_mixture(), p.c, n, cfg).real();
    double lf = 0.0;
    for (int k = 2; k <= n; ++k) lf += std::log(static_cast<double>(k));
    return sign * p.c_r * mom / std::exp(lf) / gamma_real_any(p.beta - n);
}

inline bool at_real_point(ComplexValue s, double x, double tol) {
    return std::abs(s.imag()) < tol && std::abs(s.real() - x) < tol;
}

// Laplace route rearranged so it reaches the whole plane: the [0, tau0] part
// of the integral is a power series around t = 0 whose terms carry the poles,
// the remainder is a smooth integral. Works for any offset c, in particular
// c <= 0 where the folded kernel representation picks the wrong branch.
inline EvalResult mellin_continued(const ZetaParams& p, ComplexValue s,
                                   const QuadConfig& cfg) {
    const double pi = 3.14159265358979323846;
    double a_max = 0.0;
    for (double a : p.weights) a_max = std::max(a_max, a);
    double tau0 = ((p.family == Family::Sinh) ? pi : 0.5 * pi) / a_max;
    double shift = (p.family == Family::Sinh) ? p.beta : 0.0;
    ComplexValue w = s - shift;
    if (w.real() < -40.0)
        throw ConvergenceRegionError("mellin_continued: Re(s) too far left");

    auto g_disk = [&](ComplexValue z) -> ComplexValue {
        ComplexValue out = std::exp(-p.c * z);
        for (std::size_t j = 0; j < p.dim(); ++j) {
            ComplexValue u = 0.5 * p.weights[j] * z;
            ComplexValue base = (p.family == Family::Sinh)
                ? (std::abs(u) < 1e-6 ? 1.0 / (1.0 + u * u / 6.0) : u / std::sinh(u))
                : 1.0 / std::cosh(u);
            out *= std::pow(base, ComplexValue(p.orders[j], 0.0));
        }
        return out;
    };
    auto log_g = [&](double t) -> double {
        double ls = -p.c * t;
        for (std::size_t j = 0; j < p.dim(); ++j) {
            double u = 0.5 * p.weights[j] * t;
            if (p.family == Family::Sinh) {
                if (u < 1e-6) ls -= p.orders[j] * u * u / 6.0;
                else if (u < 20.0) ls += p.orders[j] * std::log(u / std::sinh(u));
                else ls += p.orders[j]
                         * (std::log(2.0 * u) - u - std::log1p(-std::exp(-2.0 * u)));
            } else {
                if (u < 20.0) ls -= p.orders[j] * std::log(std::cosh(u));
                else ls -= p.orders[j]
                         * (u - std::log(2.0) + std::log1p(std::exp(-2.0 * u)));
            }
        }
        return ls;
    };

    const int M = 64;
    std::vector<ComplexValue> samp(M);
    double g_max = 0.0;
    for (int m = 0; m < M; ++m) {
        double th = 2.0 * pi * m / M;
        samp[m] = g_disk(tau0 * ComplexValue(std::cos(th), std::sin(th)));
        g_max = std::max(g_max, std::abs(samp[m]));
    }
    ComplexValue inv_gamma_s = near_nonpos_int(s) ? ComplexValue(0.0, 0.0)
                                                  : std::exp(-log_gamma(s));
    auto pole_term = [&](int k) -> ComplexValue {
        ComplexValue wk = w + static_cast<double>(k);
        double j = static_cast<double>(k) - shift;
        bool cancels = j > -0.5 && std::abs(j - std::round(j)) < 1e-9;
        if (cancels && std::abs(wk) < 0.5) {
            // 1/((s+j) Gamma(s)) = s (s+1) ... (s+j-1) / Gamma(s+j+1)
            int ji = static_cast<int>(std::lround(j));
            ComplexValue num(1.0, 0.0);
            for (int i = 0; i < ji; ++i) num *= s + static_cast<double>(i);
            return num * std::exp(-log_gamma(s + static_cast<double>(ji + 1)));
        }
        return inv_gamma_s / wk;
    };
    ComplexValue tau0_w = std::exp(w * std::log(tau0));
    ComplexValue head(0.0, 0.0);
    double qsum = 0.0;
    for (int k = 0; k < M; ++k) {
        ComplexValue acc(0.0, 0.0);
        for (int m = 0; m < M; ++m) {
            double th = 2.0 * pi * k * m / M;
            acc += samp[m] * ComplexValue(std::cos(th), -std::sin(th));
        }
        double bk = acc.real() / M; // Taylor coefficient times tau0^k
        ComplexValue q = pole_term(k);
        head += bk * tau0_w * q;
        qsum += std::abs(q);
    }
    double head_err = 2e-16 * g_max * std::abs(tau0_w) * qsum;

    double lw = w.real() - 1.0;
    double T = tau0 + std::max(10.0, 4.0 * (p.beta + std::abs(lw) + 2.0) / p.b);
    double tail_bound;
    for (;;) {
        tail_bound = 2.0 * std::exp(log_g(T) + lw * std::log(T)) / p.b;
        if (tail_bound <= 0.02 * cfg.abs_tol || T > 2000.0) break;
        T *= 1.25;
    }
    auto high = [&](double t) -> ComplexValue {
        return std::exp(ComplexValue(log_g(t), 0.0) + (w - 1.0) * std::log(t));
    };
    QuadResult hi = integrate_interval(high, tau0, T, cfg, {});

    double pref = (p.family == Family::Sinh) ? p.c_r : std::pow(2.0, -p.beta);
    EvalResult out;
    out.method = "mellin";
    out.value = pref * (head + inv_gamma_s * hi.value);
    out.err_estimate = pref * (head_err
                               + std::abs(inv_gamma_s) * (hi.err_estimate + tail_bound))
                     + 1e-15 * std::abs(out.value);
    return out;
}

inline void append_near_pole_warnings(const ZetaParams& p, ComplexValue s,
                                      std::vector<std::string>& w) {
    if (p.family != Family::Sinh) return;
    double d;
    if (p.integer_beta()) {
        double k = std::round(s.real());
        if (k < 1.0 || k > p.beta + 0.5) return;
        d = std::abs(s - ComplexValue(k, 0.0));
    } else {
        double n = std::round(p.beta - s.real());
        if (n < -0.5) return;
        d = std::abs(s - ComplexValue(p.beta - std::round(n), 0.0));
    }
    if (d < 0.01) w.push_back("near-pole");
}

} // namespace detail

inline void check_pole_S(const ZetaParams& p, ComplexValue s, const QuadConfig& cfg) {
    if (std::abs(s.imag()) >= kPoleTol) return;
    if (p.integer_beta()) {
        double k = std::round(s.real());
        if (k >= 1.0 && k <= p.beta + 0.5 && std::abs(s.real() - k) < kPoleTol) {
            int n = static_cast<int>(std::lround(p.beta - k));
            throw AtPoleError("evaluation point is a pole", k,
                              detail::residue_S_at(p, n, cfg));
        }
    } else {
        double n = std::round(p.beta - s.real());
        if (n >= -0.5 && std::abs(s.real() - (p.beta - n)) < kPoleTol) {
            int ni = static_cast<int>(std::lround(n));
            throw AtPoleError("evaluation point is a pole", p.beta - n,
                              detail::residue_S_at(p, ni, cfg));
        }
    }
}

inline EvalResult eval_S(const ZetaParams& p, ComplexValue s, const QuadConfig& cfg = {}) {
    if (p.family != Family::Sinh)
        throw ParameterError("eval_S: parameters must use the sinh family");
    check_pole_S(p, s, cfg);
    EvalResult out;
    out.method = "integral";
    if (!p.integer_beta() && detail::near_nonpos_int(s)) {
        out.value = ComplexValue(0.0, 0.0);
        out.err_estimate = 1e-16;
        out.warnings.push_back("trivial-zero");
        return out;
    }
    if (p.c < 1e-7) {
        EvalResult m = detail::mellin_continued(p, s, cfg);
        detail::append_near_pole_warnings(p, s, m.warnings);
        return m;
    }
    ComplexValue gr = gamma_ratio(s, p.beta);
    QuadResult k = kernel_moment_integral(p.to_mixture(), p.c, s - p.beta, cfg);
    out.value = p.c_r * gr * k.value;
    out.err_estimate = p.c_r * std::abs(gr) * (k.err_estimate + 5e-14 * std::abs(k.value));
    detail::append_near_pole_warnings(p, s, out.warnings);
    return out;
}

inline EvalResult eval_C(const ZetaParams& p, ComplexValue s, const QuadConfig& cfg = {}) {
    if (p.family != Family::Cosh)
        throw ParameterError("eval_C: parameters must use the cosh family");
    if (p.c < 1e-7) return detail::mellin_continued(p, s, cfg);
    EvalResult out;
    out.method = "integral";
    QuadResult k = kernel_moment_integral(p.to_mixture(), p.c, s, cfg);
    double scale = std::pow(2.0, -p.beta);
    out.value = scale * k.value;
    out.err_estimate = scale * (k.err_estimate + 1e-15 * std::abs(k.value));
    return out;
}

inline EvalResult eval_T(const ZetaParams& p, ComplexValue s, const QuadConfig& cfg = {}) {
    if (p.family != Family::Tanh)
        throw ParameterError("eval_T: parameters must use the tanh family");
    EvalResult out;
    out.method = "integral";
    QuadResult k = kernel_moment_integral(p.to_mixture(), p.b, s, cfg);
    double scale = std::pow(2.0, -p.beta);
    out.value = scale * k.value;
    out.err_estimate = scale * (k.err_estimate + 1e-15 * std::abs(k.value));
    return out;
}

// Laplace-Mellin route, converging for Re(s) > beta (sinh) or Re(s) > 0.
inline EvalResult eval_mellin(const ZetaParams& p, ComplexValue s, const QuadConfig& cfg = {}) {
    double sigma = s.real();
    if (p.family == Family::Sinh) {
        if (!(sigma > p.beta + 0.02))
            throw ConvergenceRegionError("eval_mellin: need Re(s) > beta for the sinh family");
    } else if (!(sigma > 0.02)) {
        throw ConvergenceRegionError("eval_mellin: need Re(s) > 0");
    }
    auto g = [&p](double t) -> ComplexValue {
        double ls = 0.0;
        for (std::size_t j = 0; j < p.dim(); ++j) {
            double u = p.weights[j] * t;
            switch (p.family) {
                case Family::Sinh:
                    ls -= p.orders[j] * std::log(-std::expm1(-u));
                    break;
                case Family::Cosh:
                    ls -= p.orders[j] * std::log1p(std::exp(-u));
                    break;
                default:
                    if (u < 1e-5) ls += p.orders[j] * std::log(0.5 * (1.0 - u * u / 12.0));
                    else ls += p.orders[j] * std::log(std::tanh(0.5 * u) / u);
                    break;
            }
        }
        return ComplexValue(std::exp(ls), 0.0);
    };
    QuadResult m = integrate_halfline_mellin(s, g, p.b, cfg);
    ComplexValue inv_gamma = std::exp(-log_gamma(s));
    EvalResult out;
    out.method = "mellin";
    out.value = m.value * inv_gamma;
    out.err_estimate = std::abs(inv_gamma) * (m.err_estimate + 1e-14 * std::abs(m.value));
    return out;
}

inline PoleReport poles_S(const ZetaParams& p, int n_max = 20, const QuadConfig& cfg = {}) {
    if (p.family != Family::Sinh)
        throw ParameterError("poles_S: parameters must use the sinh family");
    if (n_max < 0) throw ParameterError("poles_S: n_max must be nonnegative");
    PoleReport rep;
    if (p.integer_beta()) {
        int beta_i = static_cast<int>(std::lround(p.beta));
        for (int k = beta_i; k >= 1; --k) {
            int n = beta_i - k;
            rep.poles.push_back({static_cast<double>(k),
                                 detail::residue_S_at(p, n, cfg), "integer-case"});
        }
    } else {
        for (int n = 0; n <= n_max; ++n) {
            double loc = p.beta - n;
            const char* kind = (loc > 0.0) ? "noninteger-case-i" : "noninteger-case-ii";
            rep.poles.push_back({loc, detail::residue_S_at(p, n, cfg), kind});
        }
    }
    return rep;
}

// numeric residue at a reported simple pole, by symmetric differencing and
// one Richardson step
inline double residue_check(const ZetaParams& p, double pole, const QuadConfig& cfg = {},
                            double h = 0.01) {
    if (!(h > 0.0) || h > 0.01) throw ParameterError("residue_check: h must lie in (0, 0.01]");
    auto A = [&](double step) {
        ComplexValue up = eval_S(p, ComplexValue(pole + step, 0.0), cfg).value;
        ComplexValue dn = eval_S(p, ComplexValue(pole - step, 0.0), cfg).value;
        return 0.5 * step * (up - dn).real();
    };
    double a1 = A(h), a2 = A(0.5 * h);
    return (4.0 * a2 - a1) / 3.0;
}

// classic special cases, routed through the general machinery
inline EvalResult barnes(const std::vector<double>& a, double b, ComplexValue s,
                         const QuadConfig& cfg = {}) {
    ZetaParams p(Family::Sinh, std::vector<double>(a.size(), 1.0), a, b);
    return eval_S(p, s, cfg);
}

inline EvalResult hurwitz(double b, ComplexValue s, const QuadConfig& cfg = {}) {
    if (std::abs(b - 0.5) < 1e-6)
        throw ParameterError("hurwitz: b = 1/2 puts the kernel offset at zero");
    ZetaParams p(Family::Sinh, {1.0}, {1.0}, b);
    return eval_S(p, s, cfg);
}

inline EvalResult eta_shift(double b, ComplexValue s, const QuadConfig& cfg = {}) {
    ZetaParams p(Family::Cosh, {1.0}, {1.0}, b);
    return eval_C(p, s, cfg);
}

namespace detail {

inline SeriesResult series_any(const ZetaParams& p, ComplexValue s, const SeriesConfig& cfg) {
    switch (p.family) {
        case Family::Sinh: return series_S(p, s, cfg);
        case Family::Cosh: return series_C(p, s, cfg);
        default: return series_T(p, s, cfg);
    }
}

inline EvalResult integral_any(const ZetaParams& p, ComplexValue s, const QuadConfig& cfg) {
    switch (p.family) {
        case Family::Sinh: return eval_S(p, s, cfg);
        case Family::Cosh: return eval_C(p, s, cfg);
        default: return eval_T(p, s, cfg);
    }
}

} // namespace detail

inline EvalResult dispatch(const ZetaParams& p, ComplexValue s, Method method,
                           const EvalConfig& cfg = {}) {
    switch (method) {
        case Method::Series: {
            SeriesResult r = detail::series_any(p, s, cfg.series);
            return {r.value, r.err_estimate, "series", {}};
        }
        case Method::Integral:
            return detail::integral_any(p, s, cfg.quad);
        case Method::Mellin:
            return eval_mellin(p, s, cfg.quad);
        case Method::Auto: {
            if (s.real() > p.beta + 1.0 && p.dim() <= 2) {
                try {
                    SeriesResult r = detail::series_any(p, s, cfg.series);
                    return {r.value, r.err_estimate, "series", {}};
                } catch (const ConvergenceRegionError&) {
                } catch (const TailToleranceError&) {
                }
            }
            return detail::integral_any(p, s, cfg.quad);
        }
        case Method::Verify:
        default: {
            EvalResult base = detail::integral_any(p, s, cfg.quad);
            std::vector<std::pair<ComplexValue, double>> others;
            std::vector<std::string> names;
            if (s.real() > p.beta + 1.0 && p.dim() <= 2) {
                try {
                    SeriesResult r = detail::series_any(p, s, cfg.series);
                    others.push_back({r.value, r.err_estimate});
                    names.push_back("series");
                } catch (const TailToleranceError&) {
                }
            }
            double mellin_floor = (p.family == Family::Sinh) ? p.beta : 0.0;
            if (s.real() > mellin_floor + 0.05) {
                EvalResult m = eval_mellin(p, s, cfg.quad);
                others.push_back({m.value, m.err_estimate});
                names.push_back("mellin");
            }
            for (std::size_t i = 0; i < others.size(); ++i) {
                double gap = std::abs(base.value - others[i].first);
                double allow = 10.0 * (base.err_estimate + others[i].second) + 1e-13;
                if (gap > allow)
                    throw DisagreementError("verify: " + names[i]
                                            + " route disagrees with the integral route");
            }
            base.method = "verify";
            if (others.empty())
                base.warnings.push_back("verify: single applicable route");
            for (const auto& n : names) base.warnings.push_back("agrees:" + n);
            return base;
        }
    }
}

} // namespace hyperzeta
