#pragma once

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

#include "errors.hpp"
#include "hyperdist.hpp"
#include "oracle.hpp"
#include "series.hpp"
#include "special.hpp"
#include "zetacore.hpp"

namespace hyperzeta {
namespace selfcheck {

struct CheckOptions {
    bool fast = false;
    double tol = 0.0;     // optional user override; only ever tightens
    std::string cli_path; // binary used for the command-line round trips
};

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
    double seconds = 0.0;
};

namespace detail {

inline double eff_tol(const CheckOptions& o, double def) {
    return (o.tol > 0.0) ? std::min(o.tol, def) : def;
}

inline double now_s() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

struct RunOut {
    int code = -1;
    std::string out;
};

inline RunOut run_cmd(const std::string& cmd) {
    RunOut r;
    std::string full = cmd + " 2>/dev/null";
    FILE* p = popen(full.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int rc = pclose(p);
    if (WIFEXITED(rc)) r.code = WEXITSTATUS(rc);
    return r;
}

} // namespace detail

// classical Hurwitz values through the continuation path
inline CheckResult check_classical(const CheckOptions& o) {
    CheckResult r{"classical-values"};
    double tol = detail::eff_tol(o, 1e-6);
    struct Case { double s, b, want; };
    const Case cases[] = {{2.0, 1.0, 1.6449340668482264},
                          {0.0, 1.0, -0.5},
                          {-1.0, 1.0, -1.0 / 12.0},
                          {0.0, 0.3, 0.2}};
    double worst = 0.0, worst_t = 0.0;
    for (const auto& c : cases) {
        double t0 = detail::now_s();
        EvalResult e = hurwitz(c.b, ComplexValue(c.s, 0.0));
        double dt = detail::now_s() - t0;
        worst = std::max(worst, std::abs(e.value - ComplexValue(c.want, 0.0)));
        worst_t = std::max(worst_t, dt);
    }
    r.pass = worst <= tol && worst_t < 1.0;
    r.detail = "max err " + detail::fmt(worst) + ", max time " + detail::fmt(worst_t) + "s";
    return r;
}

// alternating-zeta identity across the continuation region
inline CheckResult check_eta_identities(const CheckOptions& o) {
    CheckResult r{"eta-identities"};
    double tol = detail::eff_tol(o, 1e-6);
    const ComplexValue pts[] = {{-2, 0}, {-1, 0}, {0, 0}, {1, 0}, {2, 0}, {3, 0}, {2, 3}};
    double worst = 0.0;
    for (ComplexValue s : pts) {
        EvalResult e = eta_shift(1.0, s);
        OracleValue ref = eta_reference(s);
        worst = std::max(worst, std::abs(e.value - ref.value));
    }
    r.pass = worst <= tol;
    r.detail = "max err " + detail::fmt(worst);
    return r;
}

// even/odd split of the alternating series against the Euler-Maclaurin oracle
inline CheckResult check_split_identity(const CheckOptions& o) {
    CheckResult r{"split-identity"};
    double tol = detail::eff_tol(o, 1e-6);
    const double ln2 = 0.69314718055994530942;
    const double bs[] = {1.0, 2.5};
    const ComplexValue ss[] = {{-1.5, 0}, {0.5, 0}, {2, 0}, {1, 2}};
    double worst = 0.0;
    for (double b : bs) {
        for (ComplexValue s : ss) {
            EvalResult e = eta_shift(b, s);
            ComplexValue rhs = std::exp(-s * ln2)
                * (hurwitz_em(s, b / 2.0).value - hurwitz_em(s, (b + 1.0) / 2.0).value);
            worst = std::max(worst, std::abs(e.value - rhs));
        }
    }
    r.pass = worst <= tol;
    r.detail = "max err " + detail::fmt(worst);
    return r;
}

// randomized series vs integral agreement inside the convergence region
inline CheckResult check_region_agreement(const CheckOptions& o) {
    CheckResult r{"region-agreement"};
    double t0 = detail::now_s();
    std::mt19937_64 rng(0x20260818ULL);
    std::uniform_real_distribution<double> ua(0.5, 2.0), ub(0.6, 3.0), u01(0.0, 1.0);
    double worst_ratio = 0.0;
    int done = 0;
    std::string fail;
    for (int i = 0; i < 20; ++i) {
        Family fam = (i % 3 == 0) ? Family::Sinh : (i % 3 == 1) ? Family::Cosh : Family::Tanh;
        std::size_t dim = (i % 2) + 1;
        std::vector<double> alpha, a;
        double b = 0.0;
        for (int attempt = 0; attempt < 100; ++attempt) {
            alpha.clear();
            a.clear();
            for (std::size_t j = 0; j < dim; ++j) {
                double pick = u01(rng);
                if (fam == Family::Sinh && pick < 1.0 / 3.0) alpha.push_back(0.5);
                else alpha.push_back(pick < 2.0 / 3.0 ? 1.0 : 2.0);
                a.push_back(ua(rng));
            }
            b = ub(rng);
            double lambda = 0.0;
            for (std::size_t j = 0; j < dim; ++j) lambda += 0.5 * a[j] * alpha[j];
            if (std::abs(b - lambda) >= 0.1) break;
        }
        ZetaParams p(fam, alpha, a, b);
        for (int t = 0; t <= 1; ++t) {
            ComplexValue s(p.beta + 1.5, static_cast<double>(t));
            try {
                EvalResult es = dispatch(p, s, Method::Series);
                EvalResult ei = dispatch(p, s, Method::Integral);
                double gap = std::abs(es.value - ei.value);
                double allow = 10.0 * (es.err_estimate + ei.err_estimate);
                worst_ratio = std::max(worst_ratio, gap / std::max(allow, 1e-300));
                ++done;
            } catch (const Error& e) {
                fail = e.what();
            }
        }
    }
    double dt = detail::now_s() - t0;
    r.seconds = dt;
    r.pass = fail.empty() && done == 40 && worst_ratio <= 1.0 && dt < 60.0;
    r.detail = "40 comparisons, worst gap/allowance " + detail::fmt(worst_ratio)
             + ", " + detail::fmt(dt) + "s" + (fail.empty() ? "" : (", error: " + fail));
    return r;
}

// reported residues vs numeric limits, integer and non-integer total order
inline CheckResult check_pole_residues(const CheckOptions& o) {
    CheckResult r{"pole-residues"};
    const double sqrt_pi = 1.7724538509055160273;
    double worst = 0.0;
    bool ok = true;
    std::string note;

    auto probe = [&](const ZetaParams& p, double loc, double want, double tol_scale) {
        PoleReport rep = poles_S(p, 6);
        const PoleInfo* found = nullptr;
        for (const auto& pi : rep.poles)
            if (std::abs(pi.location - loc) < 1e-12) found = &pi;
        if (!found) {
            ok = false;
            note = "missing pole at " + detail::fmt(loc);
            return;
        }
        double tol = detail::eff_tol(o, std::max(1e-6, 1e-3 * std::abs(want))) * tol_scale;
        double d1 = std::abs(found->residue - want);
        double d2 = std::abs(residue_check(p, loc) - found->residue);
        worst = std::max(worst, std::max(d1, d2));
        if (d1 > tol || d2 > tol) {
            ok = false;
            note = "pole " + detail::fmt(loc) + " off by " + detail::fmt(std::max(d1, d2));
        }
    };

    ZetaParams hur(Family::Sinh, {1.0}, {1.0}, 1.0);
    probe(hur, 1.0, 1.0, 1.0);
    if (!o.fast) {
        ZetaParams barnes2(Family::Sinh, {1.0, 1.0}, {1.0, 1.0}, 3.0);
        probe(barnes2, 2.0, 1.0, 1.0);
        probe(barnes2, 1.0, -2.0, 1.0); // -c with c = b - lambda = 2
        ZetaParams half(Family::Sinh, {0.5}, {1.0}, 1.0);
        probe(half, 0.5, 1.0 / sqrt_pi, 1.0);
        probe(half, -0.5, 3.0 / (8.0 * sqrt_pi), 1.0);
        if (ok) {
            PoleReport rep = poles_S(half, 2);
            if (rep.poles.size() < 2 || rep.poles[1].kind != "noninteger-case-ii") {
                ok = false;
                note = "second pole of the half-order set not labeled case-ii";
            }
        }
    }
    r.pass = ok;
    r.detail = ok ? ("max residue gap " + detail::fmt(worst)) : note;
    return r;
}

// zeros inherited from the reciprocal gamma factor
inline CheckResult check_trivial_zeros(const CheckOptions& o) {
    CheckResult r{"trivial-zeros"};
    double tol = detail::eff_tol(o, 1e-8);
    ZetaParams half(Family::Sinh, {0.5}, {1.0}, 1.0);
    double worst = 0.0;
    for (double s : {0.0, -1.0, -2.0})
        worst = std::max(worst, std::abs(eval_S(half, ComplexValue(s, 0.0)).value));
    r.pass = worst <= tol;
    r.detail = "max |value| " + detail::fmt(worst);
    return r;
}

// density engine vs closed forms, normalization, variances, sampling
inline CheckResult check_density_suite(const CheckOptions& o) {
    CheckResult r{"density-suite"};
    double tol_pt = detail::eff_tol(o, 1e-8);
    double tol_norm = detail::eff_tol(o, 1e-8);
    QuadConfig qc;
    double worst_pt = 0.0, worst_norm = 0.0, worst_var = 0.0, worst_mc = 0.0;
    std::string note;
    bool ok = true;

    struct Pt { Family fam; double order; };
    std::vector<Pt> pts = {{Family::Sinh, 1}, {Family::Cosh, 1}};
    if (!o.fast) {
        pts.push_back({Family::Sinh, 2});
        pts.push_back({Family::Cosh, 2});
        pts.push_back({Family::Tanh, 2});
    }
    for (const auto& c : pts) {
        MixtureSpec spec(c.fam, {{1.0, c.order}});
        for (double x = -5.0; x <= 5.0 + 1e-9; x += 0.5) {
            double got = density_mixture(spec, x, qc);
            double want = density_scaled_closed(c.fam, static_cast<int>(c.order), x);
            worst_pt = std::max(worst_pt, std::abs(got - want));
        }
        auto f = [&](double y) -> ComplexValue {
            return ComplexValue(density_mixture(spec, y, qc), 0.0);
        };
        double norm = 2.0 * integrate_interval(f, 0.0, 20.0, qc).value.real();
        worst_norm = std::max(worst_norm, std::abs(norm - 1.0));
    }
    // order-1 tanh law: closed form only; wiring plus normalization
    {
        MixtureSpec t1(Family::Tanh, {{1.0, 1.0}});
        auto model = hyperzeta::detail::build_density_model(t1);
        for (double x = 0.25; x <= 5.0 + 1e-9; x += 0.5)
            worst_pt = std::max(worst_pt,
                std::abs((*model)(x) - density_scaled_closed(Family::Tanh, 1, x)));
        auto f = [&](double y) -> ComplexValue {
            return ComplexValue(density_scaled_closed(Family::Tanh, 1, y), 0.0);
        };
        double norm = 2.0 * integrate_interval(f, 0.0, 20.0, qc, {0.001, 0.01, 0.1}).value.real();
        worst_norm = std::max(worst_norm, std::abs(norm - 1.0));
    }
    // halved-law second moments by quadrature
    {
        const double want[3] = {1.0 / 12.0, 1.0 / 4.0, 1.0 / 6.0};
        const Family fams[3] = {Family::Sinh, Family::Cosh, Family::Tanh};
        for (int i = 0; i < 3; ++i) {
            MixtureSpec spec(fams[i], {{1.0, 1.0}});
            worst_var = std::max(worst_var,
                std::abs(moment_mixture(spec, 2, qc) - want[i]));
        }
        if (worst_var > detail::eff_tol(o, 1e-8)) {
            ok = false;
            note = "variance gap " + detail::fmt(worst_var);
        }
    }
    if (!o.fast) {
        const double want[2] = {1.0 / 12.0, 1.0 / 4.0};
        const Family fams[2] = {Family::Sinh, Family::Cosh};
        for (int i = 0; i < 2; ++i) {
            MixtureSpec spec(fams[i], {{1.0, 1.0}});
            std::vector<double> draws = sample(spec, 1000000, 20260818ULL + i);
            double m = 0.0;
            for (double d : draws) m += d;
            m /= draws.size();
            double v = 0.0;
            for (double d : draws) v += (d - m) * (d - m);
            v /= (draws.size() - 1.0);
            worst_mc = std::max(worst_mc, std::abs(v - want[i]) / want[i]);
        }
        if (worst_mc > 0.05) {
            ok = false;
            note = "sampled variance off by " + detail::fmt(worst_mc * 100) + "%";
        }
    }
    if (worst_pt > tol_pt) {
        ok = false;
        note = "pointwise gap " + detail::fmt(worst_pt);
    }
    if (worst_norm > tol_norm) {
        ok = false;
        note = "normalization gap " + detail::fmt(worst_norm);
    }
    r.pass = ok;
    r.detail = ok ? ("pointwise " + detail::fmt(worst_pt) + ", norm " + detail::fmt(worst_norm)
                     + ", var " + detail::fmt(worst_var)
                     + (o.fast ? "" : ", mc " + detail::fmt(worst_mc * 100) + "%"))
                  : note;
    return r;
}

// smoke test of entirety: finite values, tame second differences, and
// agreement between two quadrature configurations over the grid
inline CheckResult check_entirety(const CheckOptions& o) {
    CheckResult r{"entirety-grid"};
    double t0 = detail::now_s();
    double tol = detail::eff_tol(o, 1e-6);
    QuadConfig loose, tight;
    loose.abs_tol = loose.rel_tol = 1e-8;
    tight.abs_tol = tight.rel_tol = 1e-11;
    ZetaParams pc(Family::Cosh, {1.0}, {1.0}, 1.0);
    ZetaParams pt(Family::Tanh, {2.0}, {1.0}, 1.0);
    bool ok = true;
    std::string note;
    double worst_gap = 0.0, worst_dd = 0.0;
    for (int famcase = 0; famcase < 2; ++famcase) {
        const ZetaParams& p = famcase == 0 ? pc : pt;
        for (double im = -5.0; im <= 5.0 + 1e-9; im += 1.0) {
            std::vector<ComplexValue> row;
            double row_max = 0.0;
            for (double re = -5.0; re <= 5.0 + 1e-9; re += 0.5) {
                ComplexValue s(re, im);
                EvalResult a = famcase == 0 ? eval_C(p, s, loose) : eval_T(p, s, loose);
                EvalResult bt = famcase == 0 ? eval_C(p, s, tight) : eval_T(p, s, tight);
                if (!std::isfinite(a.value.real()) || !std::isfinite(a.value.imag())) {
                    ok = false;
                    note = "non-finite value in grid";
                }
                worst_gap = std::max(worst_gap, std::abs(a.value - bt.value));
                row.push_back(bt.value);
                row_max = std::max(row_max, std::abs(bt.value));
            }
            for (std::size_t i = 1; i + 1 < row.size(); ++i)
                worst_dd = std::max(worst_dd,
                    std::abs(row[i + 1] - 2.0 * row[i] + row[i - 1]) / (1.0 + row_max));
        }
    }
    double dt = detail::now_s() - t0;
    r.seconds = dt;
    if (worst_gap > tol) {
        ok = false;
        note = "config disagreement " + detail::fmt(worst_gap);
    }
    if (worst_dd > 100.0) {
        ok = false;
        note = "second differences blow up: " + detail::fmt(worst_dd);
    }
    if (dt >= 120.0) {
        ok = false;
        note = "grid too slow: " + detail::fmt(dt) + "s";
    }
    r.pass = ok;
    r.detail = ok ? ("config gap " + detail::fmt(worst_gap) + ", rel 2nd diff "
                     + detail::fmt(worst_dd) + ", " + detail::fmt(dt) + "s")
                  : note;
    return r;
}

// command-line round trips: documented examples plus byte-stable reruns
inline CheckResult check_cli_goldens(const CheckOptions& o) {
    CheckResult r{"cli-goldens"};
    if (o.cli_path.empty()) {
        r.pass = false;
        r.detail = "no binary path provided";
        return r;
    }
    const std::string cli = o.cli_path;
    bool ok = true;
    std::string note;
    auto twice = [&](const std::string& args) {
        detail::RunOut r1 = detail::run_cmd(cli + " " + args);
        detail::RunOut r2 = detail::run_cmd(cli + " " + args);
        if (r1.out != r2.out || r1.code != r2.code) {
            ok = false;
            note = "rerun differs: " + args;
        }
        return r1;
    };

    auto e1 = twice("eval --family sinh --alpha 1 --a 1 --b 1 --s 2");
    auto e2 = twice("eval --family cosh --alpha 1 --a 1 --b 1 --s 0");
    auto e3 = twice("eval --family sinh --alpha 1 --a 1 --b 0.5 --s 2");
    if (ok) {
        try {
            auto j1 = nlohmann::json::parse(e1.out);
            auto j2 = nlohmann::json::parse(e2.out);
            if (e1.code != 0 || std::abs(j1["value"]["re"].get<double>() - 1.6449340668482264) > 1e-6) {
                ok = false;
                note = "sinh eval value off";
            }
            if (e2.code != 0 || std::abs(j2["value"]["re"].get<double>() - 0.5) > 1e-6) {
                ok = false;
                note = "cosh eval value off";
            }
        } catch (...) {
            ok = false;
            note = "eval output is not valid JSON";
        }
        if (e3.code != 3) {
            ok = false;
            note = "zero-offset eval should exit 3, got " + std::to_string(e3.code);
        }
    }
    if (ok && !o.fast) {
        auto p1 = twice("poles --family sinh --alpha 1 --a 1 --b 1");
        auto p2 = twice("poles --family sinh --alpha 1,1 --a 1,1 --b 3");
        auto p3 = twice("poles --family sinh --alpha 0.5 --a 1 --b 1 --n-max 3");
        try {
            auto j1 = nlohmann::json::parse(p1.out);
            auto j2 = nlohmann::json::parse(p2.out);
            auto j3 = nlohmann::json::parse(p3.out);
            if (j1.size() != 1 || std::abs(j1[0]["location"].get<double>() - 1.0) > 1e-12
                || std::abs(j1[0]["residue"].get<double>() - 1.0) > 1e-6
                || j1[0]["kind"] != "integer-case") {
                ok = false;
                note = "pole report for the classical case is wrong";
            }
            if (j2.size() != 2 || std::abs(j2[0]["location"].get<double>() - 2.0) > 1e-12
                || std::abs(j2[1]["location"].get<double>() - 1.0) > 1e-12) {
                ok = false;
                note = "two-dimensional pole report is wrong";
            }
            const double want3[] = {0.5, -0.5, -1.5, -2.5};
            if (j3.size() != 4) {
                ok = false;
                note = "half-order pole report size";
            } else {
                for (int i = 0; i < 4; ++i)
                    if (std::abs(j3[i]["location"].get<double>() - want3[i]) > 1e-12) {
                        ok = false;
                        note = "half-order pole locations wrong";
                    }
            }
        } catch (...) {
            ok = false;
            note = "pole output is not valid JSON";
        }
    }
    if (ok && !o.fast) {
        std::string gargs = "grid --family sinh --alpha 1 --a 1 --b 1 "
                            "--re-min 0 --re-max 2 --re-step 0.5 "
                            "--im-min -1 --im-max 1 --im-step 0.5";
        auto g = twice(gargs);
        // header plus 25 rows; the exact pole hit flagged, mirror rows equal in |value|
        std::vector<std::string> lines;
        std::string cur;
        for (char ch : g.out) {
            if (ch == '\n') {
                lines.push_back(cur);
                cur.clear();
            } else cur += ch;
        }
        if (lines.size() != 26) {
            ok = false;
            note = "grid row count " + std::to_string(lines.size());
        } else {
            int near_pole_rows = 0;
            for (const auto& ln : lines)
                if (ln.find("near-pole") != std::string::npos) ++near_pole_rows;
            if (near_pole_rows != 1 || lines[13].find("1,0,,,,,near-pole") == std::string::npos) {
                ok = false;
                note = "near-pole flag placement wrong";
            }
            auto abs_of = [&](int row) {
                const std::string& ln = lines[row];
                int commas = 0;
                std::string fld;
                for (char ch : ln) {
                    if (ch == ',') { ++commas; continue; }
                    if (commas == 4) fld += ch;
                }
                return fld;
            };
            // rows are re-major: row index 1 + 5*i + j for re_i, im_j
            for (int i = 0; i < 5 && ok; ++i)
                for (int j = 0; j < 2; ++j) {
                    int a = 1 + 5 * i + j, b = 1 + 5 * i + (4 - j);
                    if (lines[a].find("near-pole") != std::string::npos) continue;
                    if (abs_of(a) != abs_of(b)) {
                        ok = false;
                        note = "grid magnitude not symmetric in the imaginary part";
                    }
                }
        }
    }
    r.pass = ok;
    r.detail = ok ? "examples reproduce, reruns byte-identical" : note;
    return r;
}

inline std::vector<CheckResult> run_all(const CheckOptions& o) {
    std::vector<CheckResult> out;
    auto timed = [&out](CheckResult r, double t0) {
        if (r.seconds == 0.0) r.seconds = detail::now_s() - t0;
        out.push_back(std::move(r));
    };
    double t;
    t = detail::now_s();
    try { timed(check_classical(o), t); }
    catch (const std::exception& e) { timed({"classical-values", false, e.what()}, t); }
    t = detail::now_s();
    try { timed(check_eta_identities(o), t); }
    catch (const std::exception& e) { timed({"eta-identities", false, e.what()}, t); }
    t = detail::now_s();
    try { timed(check_split_identity(o), t); }
    catch (const std::exception& e) { timed({"split-identity", false, e.what()}, t); }
    if (!o.fast) {
        t = detail::now_s();
        try { timed(check_region_agreement(o), t); }
        catch (const std::exception& e) { timed({"region-agreement", false, e.what()}, t); }
    }
    t = detail::now_s();
    try { timed(check_pole_residues(o), t); }
    catch (const std::exception& e) { timed({"pole-residues", false, e.what()}, t); }
    t = detail::now_s();
    try { timed(check_trivial_zeros(o), t); }
    catch (const std::exception& e) { timed({"trivial-zeros", false, e.what()}, t); }
    t = detail::now_s();
    try { timed(check_density_suite(o), t); }
    catch (const std::exception& e) { timed({"density-suite", false, e.what()}, t); }
    if (!o.fast) {
        t = detail::now_s();
        try { timed(check_entirety(o), t); }
        catch (const std::exception& e) { timed({"entirety-grid", false, e.what()}, t); }
    }
    t = detail::now_s();
    try { timed(check_cli_goldens(o), t); }
    catch (const std::exception& e) { timed({"cli-goldens", false, e.what()}, t); }
    return out;
}

} // namespace selfcheck
} // namespace hyperzeta
