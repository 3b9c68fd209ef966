#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "errors.hpp"
#include "special.hpp"

namespace hyperzeta {

struct QuadConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_depth = 18;
    int nodes_per_panel = 15; // the embedded 7/15 pair; values >= 5 accepted
    double initial_radius = 8.0;
};

struct QuadResult {
    ComplexValue value{0.0, 0.0};
    double err_estimate = 0.0;
    int panels_used = 0;
    double truncation_bound = 0.0; // included in err_estimate
};

namespace detail {

// Gauss(7)/Kronrod(15) pair on [-1,1].
inline constexpr double kGkNode[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double kGkWK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double kGkWG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelEval {
    ComplexValue value;
    double err;
};

template <class F>
PanelEval gk15(F&& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    ComplexValue k(0.0, 0.0), g(0.0, 0.0);
    for (int i = 0; i < 8; ++i) {
        ComplexValue fv;
        if (i == 7) {
            fv = f(c);
            k += kGkWK[7] * fv;
            g += kGkWG[3] * fv;
        } else {
            ComplexValue f1 = f(c - h * kGkNode[i]);
            ComplexValue f2 = f(c + h * kGkNode[i]);
            k += kGkWK[i] * (f1 + f2);
            if (i % 2 == 1) g += kGkWG[i / 2] * (f1 + f2);
        }
    }
    return {h * k, std::abs(h * (k - g))};
}

struct Panel {
    double a, b;
    ComplexValue value;
    double err;
    int depth;
};

// Adaptive subdivision over the union of [bp[i], bp[i+1]].
template <class F>
QuadResult integrate_panels(F&& f, const std::vector<double>& bps, const QuadConfig& cfg) {
    std::vector<Panel> panels;
    panels.reserve(bps.size() + 64);
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
        if (!(bps[i] < bps[i + 1])) continue;
        PanelEval pe = gk15(f, bps[i], bps[i + 1]);
        panels.push_back({bps[i], bps[i + 1], pe.value, pe.err, 0});
    }
    auto totals = [&panels]() {
        ComplexValue v(0.0, 0.0);
        double e = 0.0;
        for (const Panel& p : panels) { v += p.value; e += p.err; }
        return std::pair<ComplexValue, double>(v, e);
    };
    auto capped_err = [&panels, &cfg]() {
        double e = 0.0;
        for (const Panel& p : panels)
            if (p.depth >= cfg.max_depth) e += p.err;
        return e;
    };
    for (std::size_t iter = 0;; ++iter) {
        auto [v, e] = totals();
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw MaxDepthError("integrate: non-finite integrand value");
        double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(v));
        if (e <= target) break;
        if (panels.size() > 4096 || iter > 8192) break;
        // once depth-capped panels dominate the estimate, further splitting
        // of the remaining ones cannot repair it
        double ec = capped_err();
        if (e - ec <= std::max(0.05 * ec, 0.01 * target)) break;
        int worst = -1;
        double werr = 0.0;
        for (size_t i = 0; i < panels.size(); ++i) {
            if (panels[i].depth >= cfg.max_depth) continue;
            if (panels[i].err > werr) { werr = panels[i].err; worst = static_cast<int>(i); }
        }
        if (worst < 0) break; // every refinable panel exhausted
        Panel p = panels[worst];
        double mid = 0.5 * (p.a + p.b);
        PanelEval l = gk15(f, p.a, mid);
        PanelEval r = gk15(f, mid, p.b);
        panels[worst] = {p.a, mid, l.value, l.err, p.depth + 1};
        panels.push_back({mid, p.b, r.value, r.err, p.depth + 1});
    }
    auto [v, e] = totals();
    QuadResult out;
    out.value = v;
    out.err_estimate = e;
    out.panels_used = static_cast<int>(panels.size());
    double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(v));
    if (e > 1e3 * target)
        throw MaxDepthError("integrate: tolerance unreachable at max_depth, err="
                            + std::to_string(e));
    return out;
}

// Geometric ladder toward p from side a (a < p or a > p), for integrable
// endpoint singularities at declared split points.
inline void push_graded(std::vector<double>& bps, double p, double gap, int levels = 24) {
    // stop before breakpoints get so close to p that panel nodes round onto it
    double floor_step = 2e-12 * std::max(1.0, std::abs(p));
    double step = gap;
    for (int j = 1; j <= levels; ++j) {
        step *= 0.25;
        if (step < floor_step) break;
        bps.push_back(p + step);
        bps.push_back(p - step);
    }
}

} // namespace detail

// Finite-interval adaptive integral with optional interior split points.
inline QuadResult integrate_interval(const std::function<ComplexValue(double)>& f,
                                     double a, double b, const QuadConfig& cfg,
                                     std::vector<double> split_points = {}) {
    if (!(a < b)) throw ParameterError("integrate_interval: requires a < b");
    if (cfg.nodes_per_panel < 5) throw ParameterError("nodes_per_panel must be >= 5");
    std::vector<double> bps{a, b};
    for (double p : split_points)
        if (p > a && p < b) {
            bps.push_back(p);
            detail::push_graded(bps, p, std::min(p - a, b - p));
        }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    return detail::integrate_panels(f, bps, cfg);
}

// Whole-line integral of an absolutely integrable f. Mandatory panel
// boundaries at split_points; the core window [-R, R] grows by doubling
// until the outermost block contributes less than abs_tol/10, and the last
// block's contribution is carried as the truncation bound.
inline QuadResult integrate_line(const std::function<ComplexValue(double)>& f,
                                 const QuadConfig& cfg,
                                 std::vector<double> split_points = {}) {
    if (cfg.nodes_per_panel < 5) throw ParameterError("nodes_per_panel must be >= 5");
    double r0 = cfg.initial_radius;
    for (double p : split_points) r0 = std::max(r0, 1.25 * std::abs(p) + 1.0);

    std::vector<double> bps{-r0, r0};
    for (double x = -r0 + 2.0; x < r0 - 1.0; x += 2.0) bps.push_back(x); // seed panels
    for (double p : split_points)
        if (p > -r0 && p < r0) {
            bps.push_back(p);
            detail::push_graded(bps, p, 1.0);
        }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    QuadResult core = detail::integrate_panels(f, bps, cfg);
    QuadResult out = core;

    QuadConfig tail_cfg = cfg;
    tail_cfg.abs_tol = std::max(cfg.abs_tol / 8.0, 1e-300);
    for (int side = 0; side < 2; ++side) {
        double r = r0;
        double last = 0.0;
        bool decayed = false;
        double prev_mag = std::numeric_limits<double>::infinity();
        int grows = 0;
        for (int k = 0; k < 48; ++k) {
            double lo = (side == 0) ? r : -2.0 * r;
            double hi = (side == 0) ? 2.0 * r : -r;
            std::vector<double> tb{lo, hi};
            double mid = 0.5 * (lo + hi);
            tb.insert(tb.begin() + 1, mid);
            QuadResult blk = detail::integrate_panels(f, tb, tail_cfg);
            out.value += blk.value;
            out.err_estimate += blk.err_estimate;
            out.panels_used += blk.panels_used;
            double mag = std::abs(blk.value) + blk.err_estimate;
            if (mag >= prev_mag && mag > cfg.abs_tol) {
                if (++grows >= 3)
                    throw MaxDepthError("integrate_line: tail fails to decay");
            } else {
                grows = 0;
            }
            prev_mag = mag;
            r *= 2.0;
            last = mag;
            if (mag < cfg.abs_tol / 10.0) { decayed = true; break; }
        }
        if (!decayed)
            throw MaxDepthError("integrate_line: tail tolerance not reached");
        out.truncation_bound += 2.0 * last;
    }
    out.err_estimate += out.truncation_bound;
    return out;
}

// int_0^inf x^{s-1} e^{-b x} g(x) dx via x = e^u, which turns the endpoint
// behaviors into plain exponential decay on each side of the peak.
inline QuadResult integrate_halfline_mellin(const ComplexValue& s,
                                            const std::function<ComplexValue(double)>& g,
                                            double b, const QuadConfig& cfg) {
    if (!(b > 0.0)) throw ParameterError("integrate_halfline_mellin: requires b > 0");
    const double sigma = s.real();

    // integrability screen at 0: g ~ G x^p needs Re(s) + p > 0
    double p_hat = 0.0;
    {
        double g1 = std::abs(g(1e-6));
        double g2 = std::abs(g(1e-8));
        if (g1 > 1e-300 && g2 > 1e-300)
            p_hat = std::log(g1 / g2) / std::log(1e-6 / 1e-8);
    }
    double slope0 = sigma + std::min(p_hat, 0.0);
    if (slope0 <= 0.02)
        throw DivergenceError("integrate_halfline_mellin: integrand not integrable at 0");

    auto F = [&](double u) -> ComplexValue {
        double x = std::exp(u);
        return std::exp(s * u - ComplexValue(b * x, 0.0)) * g(x);
    };

    double u_star = (sigma > 0.5) ? std::log(sigma / b) : std::log(1.0 / b);
    double u_hi = u_star;
    {
        auto phi = [&](double u) { return sigma * u - b * std::exp(u); };
        double top = phi(u_star);
        while (phi(u_hi) > top - 60.0) u_hi += 0.5;
    }
    double u_lo = u_star - std::max(12.0, 30.0 / slope0);

    double width = std::min(1.0, 4.0 / std::max(1.0, std::abs(s.imag())));
    std::vector<double> bps;
    for (double u = u_lo; u < u_hi; u += width) bps.push_back(u);
    bps.push_back(u_hi);

    QuadResult out = detail::integrate_panels(F, bps, cfg);

    // extend left if the small-x side still carries weight
    QuadConfig tail_cfg = cfg;
    tail_cfg.abs_tol = std::max(cfg.abs_tol / 8.0, 1e-300);
    double last = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 60 && last > cfg.abs_tol / 10.0; ++k) {
        double lo = u_lo - 8.0;
        std::vector<double> tb{lo, lo + 4.0, u_lo};
        QuadResult blk = detail::integrate_panels(F, tb, tail_cfg);
        out.value += blk.value;
        out.err_estimate += blk.err_estimate;
        out.panels_used += blk.panels_used;
        double mag = std::abs(blk.value) + blk.err_estimate;
        if (k == 59 && mag > cfg.abs_tol / 10.0)
            throw MaxDepthError("integrate_halfline_mellin: slow decay toward 0");
        last = mag;
        u_lo = lo;
    }
    out.truncation_bound += 2.0 * last + std::abs(F(u_hi));
    out.err_estimate += out.truncation_bound;
    return out;
}

} // namespace hyperzeta
