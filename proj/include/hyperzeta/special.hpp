#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "errors.hpp"

namespace hyperzeta {

using ComplexValue = std::complex<double>;

// Distance from a singular point below which we refuse to evaluate.
inline constexpr double kPoleTol = 1e-9;

inline constexpr double kEulerGamma = 0.57721566490153286061;

namespace detail {

inline bool near_integer(double x, double tol = kPoleTol) {
    return std::abs(x - std::round(x)) < tol;
}

// true if z is within tol of {0, -1, -2, ...}
inline bool near_nonpos_int(const ComplexValue& z, double tol = kPoleTol) {
    if (std::abs(z.imag()) >= tol) return false;
    double r = std::round(z.real());
    return r <= 0.5 && std::abs(z.real() - r) < tol;
}

// log(sin(pi z)) stable for large |Im z|; branch is irrelevant to callers
// (only exp() of the result or differences are used).
inline ComplexValue log_sin_pi(const ComplexValue& z) {
    const double pi = 3.14159265358979323846;
    if (std::abs(z.imag()) <= 8.0)
        return std::log(std::sin(pi * z));
    if (z.imag() > 0.0) {
        // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z}),  |e^{2 i pi z}| < 1
        ComplexValue i(0.0, 1.0);
        return ComplexValue(-std::log(2.0), pi / 2.0) - i * pi * z
             + std::log(1.0 - std::exp(2.0 * i * pi * z));
    }
    return std::conj(log_sin_pi(std::conj(z)));
}

} // namespace detail

// Principal-branch log-gamma, Lanczos approximation (g = 607/128, 15 terms).
inline ComplexValue log_gamma(ComplexValue z) {
    static const double g = 4.7421875; // 607/128
    static const double coef[15] = {
        0.99999999999999709182,
        57.156235665862923517,     -59.597960355475491248,
        14.136097974741747174,     -0.49191381609762019978,
        0.33994649984811888699e-4,  0.46523628927048575665e-4,
        -0.98374475304879564677e-4, 0.15808870322491248884e-3,
        -0.21026444172410488319e-3, 0.21743961811521264320e-3,
        -0.16431810653676389022e-3, 0.84418223983852743293e-4,
        -0.26190838401581408670e-4, 0.36899182659531622704e-5,
    };
    static const double log_sqrt_2pi = 0.91893853320467274178;
    static const double pi = 3.14159265358979323846;

    if (detail::near_nonpos_int(z))
        throw PoleError("log_gamma: argument at non-positive integer");

    if (z.real() < 0.5) {
        // reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1-z)
        return std::log(pi) - detail::log_sin_pi(z) - log_gamma(1.0 - z);
    }
    ComplexValue sum(coef[0], 0.0);
    for (int k = 1; k < 15; ++k) sum += coef[k] / (z - 1.0 + static_cast<double>(k));
    ComplexValue t = z + (g - 0.5);
    return (z - 0.5) * std::log(t) - t + log_sqrt_2pi + std::log(sum);
}

// Principal-branch power. The negative real axis is a genuine branch cut for
// everything built on top of this, so refuse instead of silently picking a side.
inline ComplexValue complex_pow(const ComplexValue& base, const ComplexValue& expo) {
    if (base.real() == 0.0 && base.imag() == 0.0)
        throw ZeroBaseError("complex_pow: zero base");
    if (base.imag() == 0.0 && base.real() < 0.0)
        throw BranchCutError("complex_pow: base on negative real axis");
    return std::exp(expo * std::log(base));
}

// Gamma(s - beta) / Gamma(s).
//
// Integer beta collapses to the exact rational 1/((s-1)...(s-beta)); general
// beta goes through log_gamma. At s in {0,-1,-2,...} with non-integer beta the
// ratio vanishes (1/Gamma has a zero that nothing cancels) and we return an
// exact 0 so downstream evaluations hit the trivial zeros exactly.
inline ComplexValue gamma_ratio(const ComplexValue& s, double beta) {
    if (!(beta > 0.0))
        throw ParameterError("gamma_ratio: beta must be positive");
    if (detail::near_integer(beta)) {
        int m = static_cast<int>(std::lround(beta));
        ComplexValue acc(1.0, 0.0);
        for (int k = 1; k <= m; ++k) {
            ComplexValue d = s - static_cast<double>(k);
            if (std::abs(d) < kPoleTol)
                throw PoleError("gamma_ratio: s at pole " + std::to_string(k));
            acc /= d;
        }
        return acc;
    }
    if (detail::near_nonpos_int(s))
        return ComplexValue(0.0, 0.0);
    if (detail::near_nonpos_int(s - beta))
        throw PoleError("gamma_ratio: s - beta at non-positive integer");
    return std::exp(log_gamma(s - beta) - log_gamma(s));
}

// Generalized binomial coefficient C(gamma, n) for real gamma, integer n >= 0.
inline double gen_binomial(double gamma, int n) {
    if (n < 0) throw ParameterError("gen_binomial: negative n");
    double acc = 1.0;
    for (int k = 1; k <= n; ++k)
        acc *= (gamma - static_cast<double>(k - 1)) / static_cast<double>(k);
    return acc;
}

inline ComplexValue beta_complex(const ComplexValue& s1, const ComplexValue& s2) {
    return std::exp(log_gamma(s1) + log_gamma(s2) - log_gamma(s1 + s2));
}

// Gamma(-x) for real x > 0, x not an integer, written with Gamma of a
// positive argument:
//   Gamma(-x) = (-1)^{m+1} Gamma(m+1-x) / (x (x-1) ... (x-m)),  m = floor(x).
inline double gamma_neg_real(double x) {
    if (!(x > 0.0)) throw ParameterError("gamma_neg_real: x must be positive");
    if (detail::near_integer(x))
        throw IntegerArgumentError("gamma_neg_real: integer x is a pole");
    int m = static_cast<int>(std::floor(x));
    double num = std::tgamma(static_cast<double>(m + 1) - x);
    double den = 1.0;
    for (int k = 0; k <= m; ++k) den *= (x - static_cast<double>(k));
    return (m % 2 == 0 ? -1.0 : 1.0) * num / den;
}

// Pole-denominator factor for the continuation beyond the order:
//   d(beta, n) = (-1)^{m+1} Gamma(beta-n+1+m) / ((n-beta)(n-beta-1)...(n-beta-m)),
//   m = floor(n-beta).  Identically equal to Gamma(beta-n).
inline double d_factor(double beta, int n) {
    if (!(beta > 0.0) || detail::near_integer(beta))
        throw IntegerArgumentError("d_factor: beta must be positive non-integer");
    if (!(static_cast<double>(n) > beta))
        throw ParameterError("d_factor: requires n > beta");
    double x = static_cast<double>(n) - beta;
    int m = static_cast<int>(std::floor(x));
    double num = std::tgamma(beta - static_cast<double>(n) + 1.0 + static_cast<double>(m));
    double den = 1.0;
    for (int k = 0; k <= m; ++k) den *= (x - static_cast<double>(k));
    return (m % 2 == 0 ? -1.0 : 1.0) * num / den;
}

namespace detail {

// E1(z) by modified Lentz continued fraction; adequate away from the
// negative real axis for |z| >= ~3.
inline ComplexValue e1_contfrac(const ComplexValue& z) {
    const double tiny = 1e-290;
    ComplexValue b = z + 1.0;
    ComplexValue c(1.0 / tiny, 0.0);
    ComplexValue d = 1.0 / b;
    ComplexValue f = d;
    for (int k = 1; k <= 400; ++k) {
        double a = -static_cast<double>(k) * static_cast<double>(k);
        b += 2.0;
        d = b + a * d;
        if (std::abs(d) < tiny) d = ComplexValue(tiny, 0.0);
        c = b + a / c;
        if (std::abs(c) < tiny) c = ComplexValue(tiny, 0.0);
        d = 1.0 / d;
        ComplexValue delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-z) * f;
}

} // namespace detail

// Sine and cosine integrals Si(x), Ci(x); series for small x, the E1
// continued fraction on the imaginary axis otherwise:
//   E1(ix) = -Ci(x) - i (pi/2 - Si(x)).
inline double sin_integral(double x) {
    if (x < 0.0) return -sin_integral(-x);
    if (x == 0.0) return 0.0;
    if (x <= 4.0) {
        double term = x, sum = x, x2 = x * x;
        for (int k = 0; k < 60; ++k) {
            double tk = 2.0 * k + 1.0;
            term *= -x2 * tk / ((tk + 2.0) * (tk + 1.0) * (tk + 2.0));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    ComplexValue e1 = detail::e1_contfrac(ComplexValue(0.0, x));
    return 1.57079632679489661923 + e1.imag();
}

inline double cos_integral(double x) {
    if (!(x > 0.0)) throw ParameterError("cos_integral: requires x > 0");
    if (x <= 4.0) {
        double sum = kEulerGamma + std::log(x);
        double term = 1.0, x2 = x * x;
        for (int k = 1; k < 60; ++k) {
            double tk = 2.0 * k;
            term *= -x2 / ((tk - 1.0) * tk);      // (-1)^k x^{2k} / (2k)!
            double add = term / tk;
            sum += add;
            if (std::abs(add) < 1e-18) break;
        }
        return sum;
    }
    ComplexValue e1 = detail::e1_contfrac(ComplexValue(0.0, x));
    return -e1.real();
}

} // namespace hyperzeta
