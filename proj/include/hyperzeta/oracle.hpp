#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "hyperdist.hpp"

// Reference evaluations kept deliberately separate from the main code paths:
// long-double Euler-Maclaurin, Monte Carlo with its own sampler, and a
// Cohen-Rodriguez Villegas-Zagier accelerator for alternating sums.

namespace hyperzeta {

struct OracleValue {
    ComplexValue value;
    double claimed_accuracy = 0.0;
    std::string source;
};

namespace oracle_detail {

using CLD = std::complex<long double>;

// B_{2k} / (2k)!
inline constexpr long double kEmCoef[12] = {
    8.3333333333333333333e-2L,  -1.3888888888888888889e-3L,
    3.3068783068783068783e-5L,  -8.2671957671957671958e-7L,
    2.0876756987868098979e-8L,  -5.2841901386874931848e-10L,
    1.3382536530684678833e-11L, -3.3896802963225828668e-13L,
    8.5860620562778445641e-15L, -2.1748686985580618730e-16L,
    5.5090028283602295152e-18L, -1.3954464685812523340e-19L,
};

} // namespace oracle_detail

// Hurwitz zeta(s, b) by Euler-Maclaurin summation in long double.
inline OracleValue hurwitz_em(ComplexValue s, double b) {
    using oracle_detail::CLD;
    if (!(b > 0.0)) throw ParameterError("hurwitz_em: b must be positive");
    if (std::abs(s - ComplexValue(1.0, 0.0)) < 1e-12)
        throw PoleError("hurwitz_em: s = 1 is the pole");
    CLD sl(static_cast<long double>(s.real()), static_cast<long double>(s.imag()));
    long double bl = static_cast<long double>(b);

    int N = 24;
    N = std::max(N, static_cast<int>(1.5 * std::abs(s.imag())) + 8);
    N = std::max(N, static_cast<int>(2.0 * std::max(0.0, -s.real())) + 8);

    CLD sum(0.0L, 0.0L);
    long double abs_acc = 0.0L;
    for (int n = 0; n < N; ++n) {
        CLD t = std::pow(CLD(bl + n, 0.0L), -sl);
        sum += t;
        abs_acc += std::abs(t);
    }
    long double q = bl + N;
    CLD qs = std::pow(CLD(q, 0.0L), -sl);
    sum += qs * CLD(q, 0.0L) / (sl - CLD(1.0L, 0.0L));
    sum += qs * 0.5L;

    CLD poch = sl;              // (s)_{2k-1}
    CLD qpow = qs / CLD(q, 0.0L); // (b+N)^{-s-2k+1}
    long double q2 = q * q;
    long double prev = 1e30L;
    long double claimed_tail = 0.0L;
    for (int k = 0; k < 12; ++k) {
        CLD term = oracle_detail::kEmCoef[k] * poch * qpow;
        long double mag = std::abs(term);
        if (mag > prev) { // asymptotic series turned
            claimed_tail = prev;
            break;
        }
        sum += term;
        claimed_tail = mag;
        prev = mag;
        poch *= (sl + CLD(2.0L * k + 1.0L, 0.0L)) * (sl + CLD(2.0L * k + 2.0L, 0.0L));
        qpow /= q2;
    }

    OracleValue out;
    out.value = ComplexValue(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
    out.claimed_accuracy = static_cast<double>(claimed_tail)
                         + 1e-19 * static_cast<double>(abs_acc + std::abs(sum))
                         + 1e-18;
    out.source = "euler-maclaurin";
    return out;
}

// eta(s) = (1 - 2^{1-s}) zeta(s), with the removable point at s = 1.
inline OracleValue eta_reference(ComplexValue s) {
    const double ln2 = 0.69314718055994530942;
    OracleValue out;
    out.source = "euler-maclaurin";
    ComplexValue d = s - ComplexValue(1.0, 0.0);
    if (std::abs(d) < 1e-5) {
        out.value = ln2 + d * (kEulerGamma * ln2 - 0.5 * ln2 * ln2);
        out.claimed_accuracy = 0.5 * std::abs(d) * std::abs(d) + 1e-16;
        return out;
    }
    OracleValue z = hurwitz_em(s, 1.0);
    ComplexValue factor = 1.0 - std::exp((1.0 - s) * ln2);
    out.value = factor * z.value;
    out.claimed_accuracy = std::abs(factor) * z.claimed_accuracy + 1e-18 * std::abs(out.value);
    return out;
}

// Monte Carlo E[fn(Y)] over the mixture, with an inverse-CDF sampler of its
// own so the estimate shares nothing with the quadrature code under test.
inline OracleValue mc_expectation_fn(const MixtureSpec& spec,
                                     const std::function<ComplexValue(double)>& fn,
                                     std::size_t n_samples, std::uint64_t seed) {
    const double pi = 3.14159265358979323846;
    if (spec.family == Family::Tanh)
        throw UnsupportedFamilyError("mc_expectation: no sampler for the tanh family");
    for (const auto& c : spec.components)
        if (std::abs(c.order - std::lround(c.order)) > 1e-9)
            throw NonIntegerOrderError("mc_expectation: integer orders only");
    if (n_samples < 2) throw ParameterError("mc_expectation: need at least 2 samples");
    std::mt19937_64 rng(seed);
    auto unit = [&rng]() { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53; };
    double m_re = 0.0, m_im = 0.0, s_re = 0.0, s_im = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        double y = 0.0;
        for (const auto& c : spec.components) {
            int reps = static_cast<int>(std::lround(c.order));
            for (int k = 0; k < reps; ++k) {
                double u = unit();
                double x = (spec.family == Family::Sinh)
                         ? std::atanh(2.0 * u - 1.0) / pi
                         : std::log(std::tan(pi * u / 2.0)) / pi;
                y += c.weight * x;
            }
        }
        ComplexValue v = fn(y);
        double n1 = static_cast<double>(i + 1);
        double d_re = v.real() - m_re, d_im = v.imag() - m_im;
        m_re += d_re / n1;
        m_im += d_im / n1;
        s_re += d_re * (v.real() - m_re);
        s_im += d_im * (v.imag() - m_im);
    }
    double n = static_cast<double>(n_samples);
    double var = (s_re + s_im) / (n - 1.0);
    OracleValue out;
    out.value = ComplexValue(m_re, m_im);
    out.claimed_accuracy = 3.0 * std::sqrt(var / n) + 1e-18;
    out.source = "monte-carlo";
    return out;
}

// sample mean of (shift + i Y)^{-s}; exact 1 at s = 0
inline OracleValue mc_expectation(const MixtureSpec& spec, double shift, ComplexValue s,
                                  std::size_t n_samples, std::uint64_t seed) {
    if (s == ComplexValue(0.0, 0.0)) {
        OracleValue out;
        out.value = ComplexValue(1.0, 0.0);
        out.claimed_accuracy = 0.0;
        out.source = "monte-carlo";
        return out;
    }
    return mc_expectation_fn(spec, [shift, s](double y) {
        return std::pow(ComplexValue(shift, y), -s);
    }, n_samples, seed);
}

// sum_{k>=0} (-1)^k a_k by Chebyshev-weighted acceleration; the claimed
// accuracy comes from re-running at a higher level.
inline OracleValue alternating_sum(const std::function<ComplexValue(std::size_t)>& a, int level = 40) {
    if (level < 4) throw ParameterError("alternating_sum: level too small");
    auto run = [&a](int n) {
        double d = std::pow(3.0 + std::sqrt(8.0), n);
        d = (d + 1.0 / d) / 2.0;
        double bb = -1.0, cc = -d;
        ComplexValue s(0.0, 0.0);
        for (int k = 0; k < n; ++k) {
            cc = bb - cc;
            s += cc * a(static_cast<std::size_t>(k));
            bb = (k + n) * (k - n) * bb / ((k + 0.5) * (k + 1.0));
        }
        return s / d;
    };
    ComplexValue v1 = run(level);
    ComplexValue v2 = run(level + 8);
    OracleValue out;
    out.value = v2;
    out.claimed_accuracy = std::abs(v2 - v1) + 1e-16 * std::abs(v2) + 1e-18;
    out.source = "cvz";
    return out;
}

} // namespace hyperzeta
