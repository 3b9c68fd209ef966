#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <vector>

#include "errors.hpp"
#include "quadrature.hpp"
#include "special.hpp"

namespace hyperzeta {

enum class Family { Sinh, Cosh, Tanh };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::Sinh: return "sinh";
        case Family::Cosh: return "cosh";
        default: return "tanh";
    }
}

struct MixtureComponent {
    double weight; // a_j > 0
    double order;  // alpha_j > 0
};

// A finite mixture sum_j a_j X_j where X_j is the halved hyperbolic variable
// of the given family with order alpha_j.
struct MixtureSpec {
    Family family;
    std::vector<MixtureComponent> components;

    MixtureSpec(Family f, std::vector<MixtureComponent> comps)
        : family(f), components(std::move(comps)) {
        if (components.empty())
            throw ParameterError("MixtureSpec: at least one component");
        for (const auto& c : components) {
            if (!(c.weight > 0.0)) throw ParameterError("MixtureSpec: weights must be positive");
            if (!(c.order > 0.0)) throw ParameterError("MixtureSpec: orders must be positive");
            if (family == Family::Tanh && !detail::near_integer(c.order))
                throw ParameterError("MixtureSpec: tanh family requires integer orders");
        }
    }

    double beta() const {
        double b = 0.0;
        for (const auto& c : components) b += c.order;
        return b;
    }
    double max_weight() const {
        double m = 0.0;
        for (const auto& c : components) m = std::max(m, c.weight);
        return m;
    }
    double min_weight() const {
        double m = components[0].weight;
        for (const auto& c : components) m = std::min(m, c.weight);
        return m;
    }
    std::string key() const {
        char buf[64];
        std::string k = family_name(family);
        for (const auto& c : components) {
            std::snprintf(buf, sizeof buf, "|%.17g:%.17g", c.weight, c.order);
            k += buf;
        }
        return k;
    }
};

// Characteristic function of the (un-halved) base variable at order t:
//   sinh: (theta/sinh theta)^t    cosh: sech(theta)^t    tanh: (tanh theta/theta)^t
inline double cf_component(Family family, double t, double theta) {
    if (!(t > 0.0)) throw ParameterError("cf_component: order must be positive");
    double u = std::abs(theta);
    if (u < 1e-4) {
        double u2 = u * u;
        double m; // base - 1, Taylor
        switch (family) {
            case Family::Sinh: m = u2 * (-1.0 / 6.0 + u2 * (7.0 / 360.0 - u2 * 31.0 / 15120.0)); break;
            case Family::Cosh: m = u2 * (-1.0 / 2.0 + u2 * (5.0 / 24.0 - u2 * 61.0 / 720.0)); break;
            default:           m = u2 * (-1.0 / 3.0 + u2 * (2.0 / 15.0 - u2 * 17.0 / 315.0)); break;
        }
        return std::exp(t * std::log1p(m));
    }
    double log_base;
    switch (family) {
        case Family::Sinh:
            if (u > 30.0) log_base = std::log(2.0 * u) - u - std::log1p(-std::exp(-2.0 * u));
            else log_base = std::log(u / std::sinh(u));
            break;
        case Family::Cosh:
            if (u > 30.0) log_base = std::log(2.0) - u - std::log1p(std::exp(-2.0 * u));
            else log_base = -std::log(std::cosh(u));
            break;
        default: {
            if (u > 20.0) {
                double e = std::exp(-2.0 * u);
                log_base = -std::log(u) + std::log1p(-2.0 * e / (1.0 + e));
            } else {
                log_base = std::log(std::tanh(u) / u);
            }
            break;
        }
    }
    return std::exp(t * log_base);
}

// CF of the mixture sum_j a_j X_j with X_j the halved law of order alpha_j.
inline double cf_mixture(const MixtureSpec& spec, double theta) {
    double p = 1.0;
    for (const auto& c : spec.components)
        p *= cf_component(spec.family, c.order, c.weight * theta / 2.0);
    return p;
}

// Closed densities of the un-halved laws at orders 1 and 2.
inline double density_closed(Family family, int t, double x) {
    if (t != 1 && t != 2) throw ParameterError("density_closed: order must be 1 or 2");
    const double pi = 3.14159265358979323846;
    double ax = std::abs(x);
    switch (family) {
        case Family::Sinh: {
            double u = pi * ax / 2.0;
            if (t == 1) {
                double e = std::exp(-2.0 * u);
                double d = 1.0 + e;
                return pi * e / (d * d); // pi/4 sech^2(u)
            }
            if (u < 0.01) {
                double u2 = u * u;
                return (pi / 2.0) * (1.0 / 3.0 - 2.0 * u2 / 15.0 + 2.0 * u2 * u2 / 63.0);
            }
            double e = std::exp(-2.0 * u);
            double om = 1.0 - e;
            return 2.0 * pi * e * (u * (1.0 + e) - om) / (om * om * om);
        }
        case Family::Cosh: {
            double u = pi * ax / 2.0;
            if (t == 1) {
                double e = std::exp(-u);
                return e / (1.0 + e * e); // 1/(2 cosh u)
            }
            if (u < 1e-4) {
                double u2 = u * u;
                return (1.0 / pi) * (1.0 - u2 / 6.0 + 7.0 * u2 * u2 / 360.0);
            }
            double e = std::exp(-u);
            return 2.0 * u * e / (pi * (1.0 - e * e));
        }
        default: {
            if (t == 1) {
                if (ax == 0.0)
                    throw SingularPointError("density_closed: tanh order-1 density is singular at 0");
                double e = std::exp(-pi * ax / 2.0); // e^{-2v}, v = pi|x|/4
                return std::log1p(2.0 * e / (1.0 - e)) / pi;
            }
            // int_{|x|}^inf y (y-|x|) / (2 sinh(pi y/2)) dy
            auto g = [ax, pi](double s) -> ComplexValue {
                double y = ax + s;
                double u = pi * y / 2.0;
                double inv_sinh;
                if (u < 1e-8) inv_sinh = (u == 0.0) ? 0.0 : 1.0 / u;
                else if (u > 30.0) inv_sinh = 2.0 * std::exp(-u) / (1.0 - std::exp(-2.0 * u));
                else inv_sinh = 1.0 / std::sinh(u);
                // y * s / (2 sinh u); at y -> 0 the 1/u blowup is killed by y
                return ComplexValue(y * s * 0.5 * inv_sinh, 0.0);
            };
            double upper = 40.0;
            while ((ax + upper) * upper * std::exp(-pi * (ax + upper) / 2.0) > 1e-22) upper += 10.0;
            QuadConfig qc;
            qc.abs_tol = 1e-13;
            qc.rel_tol = 1e-13;
            return integrate_interval(g, 0.0, upper, qc).value.real();
        }
    }
}

// Density of the halved law, by the change of variables y -> 2y.
inline double density_scaled_closed(Family family, int t, double x) {
    return 2.0 * density_closed(family, t, 2.0 * x);
}

namespace detail {

// ln |sinh(x+iy)| and ln |cosh(x+iy)|, stable for large |x|.
inline double log_abs_sinh(double x, double y) {
    double ax = std::abs(x);
    double sy = std::sin(y);
    if (ax <= 30.0) {
        double sh = std::sinh(ax);
        return 0.5 * std::log(sh * sh + sy * sy);
    }
    return ax - std::log(2.0);
}
inline double log_abs_cosh(double x, double y) {
    double ax = std::abs(x);
    double cy = std::cos(y);
    if (ax <= 30.0) {
        double sh = std::sinh(ax);
        return 0.5 * std::log(sh * sh + cy * cy);
    }
    return ax - std::log(2.0);
}

// |cf| along the shifted line theta + i tau (theta real), used for the
// contour envelope bound f(y) <= A e^{-tau |y|}.
inline double cf_mod_shifted(const MixtureSpec& spec, double theta, double tau) {
    double logm = 0.0;
    for (const auto& c : spec.components) {
        double x = c.weight * theta / 2.0;
        double y = c.weight * tau / 2.0;
        double lu = 0.5 * std::log(x * x + y * y);
        switch (spec.family) {
            case Family::Sinh: logm += c.order * (lu - log_abs_sinh(x, y)); break;
            case Family::Cosh: logm += c.order * (-log_abs_cosh(x, y)); break;
            default:           logm += c.order * (log_abs_sinh(x, y) - log_abs_cosh(x, y) - lu); break;
        }
    }
    return std::exp(logm);
}

// Fourier-cosine inversion of cf_mixture with a finite window plus, for the
// tanh family, the analytic continuation of the K theta^{-beta} tail through
// the sine/cosine integrals.
class InversionEngine {
public:
    MixtureSpec spec;
    double beta;
    double lambda;
    double tau_strip;
    double tau;      // envelope rate
    double env_A;    // envelope amplitude
    double theta_cut;
    double phi_width;
    double tail_sc = 0.0;   // sinh/cosh |cf| mass beyond theta_cut
    double tail_k = 0.0;    // tanh: cf ~ tail_k * theta^{-beta}
    double tail2 = 0.0;     // tanh: bound on |cf - K theta^-beta| mass beyond cut
    int beta_int = 0;

    explicit InversionEngine(const MixtureSpec& s) : spec(s) {
        const double pi = 3.14159265358979323846;
        beta = spec.beta();
        lambda = 0.0;
        double var = 0.0;
        for (const auto& c : spec.components) {
            lambda += 0.5 * c.weight * c.order;
            double v1 = (spec.family == Family::Sinh) ? 1.0 / 12.0
                      : (spec.family == Family::Cosh) ? 1.0 / 4.0 : 1.0 / 6.0;
            var += c.weight * c.weight * c.order * v1;
        }
        if (spec.family == Family::Tanh && beta < 2.0 - 1e-9)
            throw SlowDecayError("inversion: tanh cf decays like 1/theta, not absolutely integrable");

        tau_strip = ((spec.family == Family::Sinh) ? 2.0 * pi : pi) / spec.max_weight();
        tau = 0.85 * tau_strip;
        phi_width = std::min(2.0, std::min(1.0 / std::max(0.3, lambda),
                                           1.5 / std::max(0.3, std::sqrt(var))));

        if (spec.family == Family::Tanh) {
            beta_int = static_cast<int>(std::lround(beta));
            double lk = 0.0;
            theta_cut = 0.0;
            for (const auto& c : spec.components) {
                lk += c.order * std::log(2.0 / c.weight);
                theta_cut = std::max(theta_cut, (42.0 + std::log(1.0 + 2.0 * c.order)) / c.weight);
            }
            tail_k = std::exp(lk);
            for (const auto& c : spec.components)
                tail2 += 2.0 * c.order * tail_k * std::pow(theta_cut, -beta)
                       * std::exp(-c.weight * theta_cut) / c.weight;
        } else {
            double th = std::max(8.0, 6.0 / std::max(lambda, 0.02));
            double v = cf_mixture(spec, th);
            while (v > 1e-17 && th < 2e5) {
                th += std::max(1.0, 2.0 / std::max(lambda, 0.05));
                v = cf_mixture(spec, th);
            }
            theta_cut = th;
            double v_prev = cf_mixture(spec, th - 1.0);
            double slope = std::max(std::log(std::max(v_prev, 1e-300) / std::max(v, 1e-300)), 0.05);
            tail_sc = std::max(v, 1e-300) / slope;
        }

        // A = (1/pi) int_0^inf |cf(theta + i tau)| dtheta, coarse but honest
        double acc = 0.0;
        double w = phi_width;
        for (double t0 = 0.0; t0 < theta_cut; t0 += w) {
            double t1 = std::min(t0 + w, theta_cut);
            double h = 0.5 * (t1 - t0), c0 = 0.5 * (t0 + t1);
            double loc = 0.0;
            for (int i = 0; i < 8; ++i) {
                if (i == 7) loc += kGkWK[7] * cf_mod_shifted(spec, c0, tau);
                else loc += kGkWK[i] * (cf_mod_shifted(spec, c0 - h * kGkNode[i], tau)
                                       + cf_mod_shifted(spec, c0 + h * kGkNode[i], tau));
            }
            acc += h * loc;
        }
        if (spec.family == Family::Tanh)
            acc += tail_k * std::pow(theta_cut, 1.0 - beta) / (beta - 1.0);
        else
            acc += tail_sc;
        env_A = 1.3 * acc / pi;
    }

    double envelope(double y) const { return env_A * std::exp(-tau * std::abs(y)); }

    // pointwise inversion at y >= 0; *err_out receives an absolute error bound
    double value(double y, double* err_out = nullptr) const {
        const double pi = 3.14159265358979323846;
        double env = envelope(y);
        if (env < 1e-18) {
            if (err_out) *err_out = env;
            return 0.0;
        }
        double w = std::min(phi_width, 4.0 / std::max(y, 1.0));
        long double acc = 0.0L;
        double errsum = 0.0, l1 = 0.0;
        for (double t0 = 0.0; t0 < theta_cut; t0 += w) {
            double t1 = std::min(t0 + w, theta_cut);
            double h = 0.5 * (t1 - t0), c0 = 0.5 * (t0 + t1);
            double kv = 0.0, gv = 0.0, ka = 0.0;
            for (int i = 0; i < 8; ++i) {
                if (i == 7) {
                    double f = std::cos(c0 * y) * cf_mixture(spec, c0);
                    kv += kGkWK[7] * f;
                    gv += kGkWG[3] * f;
                    ka += kGkWK[7] * std::abs(f);
                } else {
                    double xa = c0 - h * kGkNode[i], xb = c0 + h * kGkNode[i];
                    double fa = std::cos(xa * y) * cf_mixture(spec, xa);
                    double fb = std::cos(xb * y) * cf_mixture(spec, xb);
                    kv += kGkWK[i] * (fa + fb);
                    if (i % 2 == 1) gv += kGkWG[i / 2] * (fa + fb);
                    ka += kGkWK[i] * (std::abs(fa) + std::abs(fb));
                }
            }
            acc += static_cast<long double>(h * kv);
            errsum += std::abs(h * (kv - gv));
            l1 += h * ka;
        }
        double tail_err;
        if (spec.family == Family::Tanh) {
            acc += static_cast<long double>(tail_k * power_cos_tail(y));
            tail_err = tail2;
        } else {
            tail_err = tail_sc;
        }
        double val = static_cast<double>(acc) / pi;
        double err = (errsum + tail_err) / pi + 1e-16 * l1 + 1e-17;
        if (err_out) *err_out = err;
        if (val < 0.0) {
            if (val < -std::max(1e-10, err))
                throw MaxDepthError("inversion: density negative beyond tolerance");
            val = 0.0;
        }
        return val;
    }

private:
    // int_{theta_cut}^inf theta^{-beta_int} cos(theta y) dtheta
    double power_cos_tail(double y) const {
        if (y < 1e-300)
            return std::pow(theta_cut, 1.0 - beta) / (beta - 1.0);
        double x = y * theta_cut;
        // C_m = int_x^inf u^{-m} cos u du, S_m likewise with sin
        double C = -cos_integral(x);
        double S = 1.57079632679489661923 - sin_integral(x);
        double cx = std::cos(x), sx = std::sin(x);
        double xp = 1.0; // x^{-m}
        for (int m = 1; m < beta_int; ++m) {
            xp /= x;
            double Cn = (xp * cx - S) / m;
            double Sn = (xp * sx + C) / m;
            C = Cn;
            S = Sn;
        }
        return std::pow(y, beta_int - 1.0) * C;
    }
};

inline std::shared_ptr<const InversionEngine> engine_for(const MixtureSpec& spec) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const InversionEngine>> cache;
    std::string k = spec.key();
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    auto e = std::make_shared<const InversionEngine>(spec);
    cache.emplace(std::move(k), e);
    return e;
}

} // namespace detail

// Pointwise mixture density by Fourier-cosine inversion of the CF.
inline double density_mixture(const MixtureSpec& spec, double y, const QuadConfig& cfg) {
    (void)cfg; // the engine always targets ~1e-13 absolute, tighter than any default
    if (spec.family == Family::Tanh && spec.beta() < 2.0 - 1e-9)
        throw SlowDecayError("density_mixture: tanh mixtures need total order >= 2");
    return detail::engine_for(spec)->value(std::abs(y));
}

namespace detail {

// Interpolated density table: Chebyshev fit of f on [0, y_cut], zero beyond
// with the contour envelope as the error bound. The fit is absolute; callers
// integrate against bounded kernels, so relative loss deep in the tail is
// immaterial while fitting f e^{sigma y} would amplify engine noise there.
struct DensityModel {
    double tau = 0.0, env_A = 0.0;
    double y_cut = 0.0;
    double point_err = 0.0;          // uniform bound on [0, y_cut]
    std::vector<double> coeff;       // Chebyshev coefficients of h on [0, y_cut]
    std::vector<double> splits;      // outer-integral split points (singularities)
    std::function<double(double)> closed; // set for closed-form paths

    double operator()(double y) const {
        double ay = std::abs(y);
        if (closed) return closed(ay);
        if (ay >= y_cut) return 0.0;
        double u = 2.0 * ay / y_cut - 1.0;
        double b0 = 0.0, b1 = 0.0;
        for (size_t k = coeff.size(); k-- > 1;) {
            double b2 = b1;
            b1 = b0;
            b0 = 2.0 * u * b1 - b2 + coeff[k];
        }
        double h = u * b0 - b1 + coeff[0];
        return std::max(0.0, h);
    }
    double envelope(double y) const { return env_A * std::exp(-tau * std::abs(y)); }
};

inline std::shared_ptr<const DensityModel> build_density_model(const MixtureSpec& spec) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const DensityModel>> cache;
    std::string key = spec.key();
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const double pi = 3.14159265358979323846;
    auto m = std::make_shared<DensityModel>();
    const auto& comps = spec.components;
    bool closed_ok = comps.size() == 1
        && (detail::near_integer(comps[0].order))
        && (std::lround(comps[0].order) == 1 || std::lround(comps[0].order) == 2)
        && (spec.family != Family::Tanh || std::lround(comps[0].order) == 1);
    if (spec.family == Family::Tanh && spec.beta() < 2.0 - 1e-9 && !closed_ok)
        throw SlowDecayError("density model: tanh total order below 2");

    if (closed_ok) {
        double a = comps[0].weight;
        int t = static_cast<int>(std::lround(comps[0].order));
        Family fam = spec.family;
        m->closed = [a, t, fam](double y) {
            return density_scaled_closed(fam, t, y / a) / a;
        };
        m->tau = 0.85 * ((fam == Family::Sinh) ? 2.0 * pi : pi) / a;
        if (fam == Family::Tanh) m->splits.push_back(0.0);
        // sampled sup of f e^{tau y}; the product decays once y is past the
        // density's own scale, so a fine scan is a sound bound in practice
        double A = 0.0;
        double span = 40.0 / m->tau;
        for (int i = 0; i <= 400; ++i) {
            double y = span * i / 400.0 + 1e-6;
            A = std::max(A, m->closed(y) * std::exp(m->tau * y));
        }
        m->env_A = 1.5 * A;
        m->y_cut = std::max(4.0, std::log(std::max(m->env_A, 1.0) * 1e18) / m->tau);
        m->point_err = 1e-15;
    } else {
        auto eng = engine_for(spec);
        m->tau = eng->tau;
        m->env_A = eng->env_A;
        m->y_cut = std::max(4.0, std::log(std::max(eng->env_A, 1.0) * 1e15) / eng->tau);
        double emax = 0.0;
        for (int N : {128, 256, 512, 1024}) {
            std::vector<double> vals(N + 1);
            emax = 0.0;
            for (int j = 0; j <= N; ++j) {
                double y = 0.5 * (1.0 + std::cos(pi * j / N)) * m->y_cut;
                double e = 0.0;
                vals[j] = eng->value(y, &e);
                emax = std::max(emax, e);
            }
            m->coeff.assign(N + 1, 0.0);
            for (int k = 0; k <= N; ++k) {
                double s = 0.5 * (vals[0] + (k % 2 == 0 ? 1.0 : -1.0) * vals[N]);
                for (int j = 1; j < N; ++j) s += vals[j] * std::cos(pi * j * k / N);
                m->coeff[k] = 2.0 * s / N;
            }
            m->coeff[0] *= 0.5;
            m->coeff[N] *= 0.5;
            double cmax = 0.0, ctail = 0.0;
            for (int k = 0; k <= N; ++k) cmax = std::max(cmax, std::abs(m->coeff[k]));
            for (int k = N - 7; k <= N; ++k) ctail = std::max(ctail, std::abs(m->coeff[k]));
            if (ctail < 1e-13 * std::max(cmax, 1e-30) || N == 1024) {
                m->point_err = emax + 10.0 * ctail;
                break;
            }
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    cache.emplace(std::move(key), m);
    return m;
}

} // namespace detail

// k-th raw moment of the mixture variable. Odd moments vanish by symmetry.
inline double moment_mixture(const MixtureSpec& spec, int k, const QuadConfig& cfg) {
    if (k < 0) throw ParameterError("moment_mixture: negative order");
    if (k == 0) return 1.0;
    if (k % 2 == 1) return 0.0;
    auto model = detail::build_density_model(spec);
    double r = 4.0;
    while (model->envelope(r) * std::pow(r, k) > 1e-16 && r < 1e4) r *= 1.25;
    auto f = [&](double y) -> ComplexValue {
        return ComplexValue(std::pow(y, k) * (*model)(y), 0.0);
    };
    QuadConfig qc = cfg;
    qc.abs_tol = std::min(cfg.abs_tol, 1e-11);
    qc.rel_tol = std::min(cfg.rel_tol, 1e-11);
    QuadResult q = integrate_interval(f, 0.0, r, qc, model->splits);
    return 2.0 * q.value.real();
}

// E[(c + i Y)^n] expanded through the even moments; real by symmetry.
inline ComplexValue complex_moment(const MixtureSpec& spec, double c, int n,
                                   const QuadConfig& cfg) {
    if (n < 0) throw ParameterError("complex_moment: negative order");
    double sum = 0.0;
    for (int k = 0; k <= n; k += 2) {
        double sign = (k / 2 % 2 == 0) ? 1.0 : -1.0;
        sum += gen_binomial(static_cast<double>(n), k) * std::pow(c, n - k)
             * sign * moment_mixture(spec, k, cfg);
    }
    return ComplexValue(sum, 0.0);
}

// Exact inverse-CDF sampling; integer orders only, tanh has no sampler here.
inline std::vector<double> sample(const MixtureSpec& spec, std::size_t count,
                                  std::uint64_t seed) {
    const double pi = 3.14159265358979323846;
    if (spec.family == Family::Tanh)
        throw UnsupportedFamilyError("sample: no inverse CDF for the tanh family");
    for (const auto& c : spec.components)
        if (!detail::near_integer(c.order))
            throw NonIntegerOrderError("sample: integer orders only");
    std::mt19937_64 rng(seed);
    auto unit = [&rng]() {
        return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
    };
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        double x = 0.0;
        for (const auto& c : spec.components) {
            int reps = static_cast<int>(std::lround(c.order));
            double s = 0.0;
            for (int k = 0; k < reps; ++k) {
                double u = unit();
                if (spec.family == Family::Sinh)
                    s += std::atanh(2.0 * u - 1.0) / pi;
                else
                    s += std::log(std::tan(pi * u / 2.0)) / pi;
            }
            x += c.weight * s;
        }
        out.push_back(x);
    }
    return out;
}

} // namespace hyperzeta
