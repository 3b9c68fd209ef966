#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <future>
#include <string>
#include <thread>
#include <unistd.h>
#include <vector>

#include "CLI11.hpp"

#include "hyperzeta/selfcheck.hpp"
#include "hyperzeta/zetacore.hpp"

using namespace hyperzeta;

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string jesc(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out;
}

int emit_error(int code, const char* kind, const std::string& msg) {
    std::fprintf(stderr, "{\"error\":\"%s\",\"message\":\"%s\"}\n", kind, jesc(msg).c_str());
    return code;
}

bool parse_family(const std::string& s, Family& out) {
    if (s == "sinh") out = Family::Sinh;
    else if (s == "cosh") out = Family::Cosh;
    else if (s == "tanh") out = Family::Tanh;
    else return false;
    return true;
}

bool parse_list(const std::string& s, std::vector<double>& out) {
    out.clear();
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(',', pos);
        std::string tok = s.substr(pos, next == std::string::npos ? next : next - pos);
        if (tok.empty()) return false;
        char* end = nullptr;
        double v = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size() || !std::isfinite(v)) return false;
        out.push_back(v);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return !out.empty();
}

// "re", "re+imi", "re-imi"
bool parse_complex(std::string s, ComplexValue& out) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) return false;
    if (t.back() != 'i') {
        char* end = nullptr;
        double re = std::strtod(t.c_str(), &end);
        if (end != t.c_str() + t.size() || !std::isfinite(re)) return false;
        out = ComplexValue(re, 0.0);
        return true;
    }
    t.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t i = t.size(); i-- > 1;) {
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) return false; // pure imaginary not in the contract
    std::string rs = t.substr(0, split);
    std::string is = t.substr(split);
    if (is == "+" || is == "-") is += "1";
    char* end = nullptr;
    double re = std::strtod(rs.c_str(), &end);
    if (end != rs.c_str() + rs.size() || !std::isfinite(re)) return false;
    double im = std::strtod(is.c_str(), &end);
    if (end != is.c_str() + is.size() || !std::isfinite(im)) return false;
    out = ComplexValue(re, im);
    return true;
}

EvalConfig config_from_env() {
    EvalConfig cfg;
    if (const char* v = std::getenv("HYPERZETA_ABS_TOL")) {
        double x = std::strtod(v, nullptr);
        if (x > 0.0) cfg.quad.abs_tol = x;
    }
    if (const char* v = std::getenv("HYPERZETA_REL_TOL")) {
        double x = std::strtod(v, nullptr);
        if (x > 0.0) cfg.quad.rel_tol = x;
    }
    return cfg;
}

template <class F>
int run_guarded(F&& f) {
    try {
        return f();
    } catch (const AtPoleError& e) {
        std::fprintf(stderr,
                     "{\"error\":\"AtPoleError\",\"message\":\"%s\",\"pole\":%s,\"residue\":%s}\n",
                     jesc(e.what()).c_str(), fmt17(e.pole).c_str(), fmt17(e.residue).c_str());
        return 4;
    } catch (const ParameterError& e) {
        return emit_error(3, "ParameterError", e.what());
    } catch (const Error& e) {
        return emit_error(3, "Error", e.what());
    } catch (const std::exception& e) {
        return emit_error(3, "Error", e.what());
    }
}

struct CommonFlags {
    std::string family = "sinh";
    std::string alpha = "1";
    std::string a = "1";
    double b = 1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--family", family, "sinh, cosh, or tanh");
        cmd->add_option("--alpha", alpha, "comma-separated orders");
        cmd->add_option("--a", a, "comma-separated positive weights");
        cmd->add_option("--b", b, "shift");
    }

    // exits with code 2 semantics via return value; fills params
    int materialize(Family& fam, std::vector<double>& al, std::vector<double>& wa) const {
        if (!parse_family(family, fam))
            return emit_error(2, "invalid-flags", "unknown family: " + family);
        if (!parse_list(alpha, al))
            return emit_error(2, "invalid-flags", "bad --alpha list: " + alpha);
        if (!parse_list(a, wa))
            return emit_error(2, "invalid-flags", "bad --a list: " + a);
        if (al.size() != wa.size())
            return emit_error(2, "invalid-flags", "--alpha and --a must have equal length");
        return 0;
    }
};

std::string eval_json(const EvalResult& r) {
    std::string s = "{\"value\":{\"re\":" + fmt17(r.value.real())
                  + ",\"im\":" + fmt17(r.value.imag())
                  + "},\"err_estimate\":" + fmt17(r.err_estimate)
                  + ",\"method\":\"" + jesc(r.method) + "\",\"warnings\":[";
    for (std::size_t i = 0; i < r.warnings.size(); ++i) {
        if (i) s += ',';
        s += '"' + jesc(r.warnings[i]) + '"';
    }
    s += "]}";
    return s;
}

int cmd_eval(const CommonFlags& cf, const std::string& s_str, const std::string& mode_str,
             int n_max) {
    Family fam;
    std::vector<double> al, wa;
    if (int rc = cf.materialize(fam, al, wa)) return rc;
    ComplexValue s;
    if (!parse_complex(s_str, s))
        return emit_error(2, "invalid-flags", "bad --s value: " + s_str);
    Method mode;
    if (mode_str == "auto") mode = Method::Auto;
    else if (mode_str == "series") mode = Method::Series;
    else if (mode_str == "integral") mode = Method::Integral;
    else if (mode_str == "verify") mode = Method::Verify;
    else return emit_error(2, "invalid-flags", "unknown mode: " + mode_str);
    return run_guarded([&] {
        EvalConfig cfg = config_from_env();
        if (n_max > 0) cfg.series.dim_cutoff = static_cast<std::size_t>(n_max);
        ZetaParams p(fam, al, wa, cf.b);
        EvalResult r = dispatch(p, s, mode, cfg);
        std::printf("%s\n", eval_json(r).c_str());
        return 0;
    });
}

int cmd_poles(const CommonFlags& cf, int n_max) {
    Family fam;
    std::vector<double> al, wa;
    if (int rc = cf.materialize(fam, al, wa)) return rc;
    if (fam != Family::Sinh)
        return emit_error(2, "invalid-flags", "pole reports exist for the sinh family only");
    return run_guarded([&] {
        ZetaParams p(fam, al, wa, cf.b);
        PoleReport rep = poles_S(p, n_max > 0 ? static_cast<std::size_t>(n_max) : 20);
        std::string out = "[";
        for (std::size_t i = 0; i < rep.poles.size(); ++i) {
            if (i) out += ',';
            out += "{\"location\":" + fmt17(rep.poles[i].location)
                 + ",\"residue\":" + fmt17(rep.poles[i].residue)
                 + ",\"kind\":\"" + rep.poles[i].kind + "\"}";
        }
        out += "]";
        std::printf("%s\n", out.c_str());
        return 0;
    });
}

struct GridAxis {
    double lo = 0.0, hi = 0.0, step = 0.0;
};

int cmd_grid(const CommonFlags& cf, const GridAxis& re_ax, const GridAxis& im_ax) {
    Family fam;
    std::vector<double> al, wa;
    if (int rc = cf.materialize(fam, al, wa)) return rc;
    if (re_ax.step <= 0.0 || im_ax.step <= 0.0 || re_ax.hi < re_ax.lo || im_ax.hi < im_ax.lo)
        return emit_error(2, "invalid-flags", "grid axes need min <= max and step > 0");
    return run_guarded([&] {
        EvalConfig cfg = config_from_env();
        ZetaParams p(fam, al, wa, cf.b);
        std::vector<double> poles;
        if (fam == Family::Sinh) {
            std::size_t deep = p.integer_beta()
                ? 0
                : static_cast<std::size_t>(std::max(0.0, std::ceil(p.beta - re_ax.lo))) + 1;
            for (const auto& pi : poles_S(p, deep).poles) poles.push_back(pi.location);
        }
        std::vector<double> res, ims;
        for (double re = re_ax.lo; re <= re_ax.hi + 1e-12; re += re_ax.step) res.push_back(re);
        for (double im = im_ax.lo; im <= im_ax.hi + 1e-12; im += im_ax.step) ims.push_back(im);

        auto row_text = [&](double re) {
            std::string out;
            for (double im : ims) {
                ComplexValue s(re, im);
                out += fmt12(re) + "," + fmt12(im) + ",";
                bool near = false;
                for (double q : poles)
                    if (std::abs(s - ComplexValue(q, 0.0)) < 0.01) near = true;
                if (near) {
                    out += ",,,,near-pole\n";
                    continue;
                }
                try {
                    EvalResult r = dispatch(p, s, Method::Integral, cfg);
                    out += fmt12(r.value.real()) + "," + fmt12(r.value.imag()) + ","
                         + fmt12(std::abs(r.value)) + "," + fmt12(r.err_estimate) + ",ok\n";
                } catch (const Error&) {
                    out += ",,,,error\n";
                }
            }
            return out;
        };

        std::string out = "re,im,value_re,value_im,abs,err_estimate,flag\n";
        unsigned workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
        if (workers == 1 || res.size() == 1) {
            for (double re : res) out += row_text(re);
        } else {
            for (std::size_t base = 0; base < res.size(); base += workers) {
                std::vector<std::future<std::string>> block;
                for (std::size_t k = base; k < std::min(base + workers, res.size()); ++k)
                    block.push_back(std::async(std::launch::async, row_text, res[k]));
                for (auto& f : block) out += f.get();
            }
        }
        std::fputs(out.c_str(), stdout);
        return 0;
    });
}

int cmd_sample(const CommonFlags& cf, long count, unsigned long long seed) {
    Family fam;
    std::vector<double> al, wa;
    if (int rc = cf.materialize(fam, al, wa)) return rc;
    if (count < 0) return emit_error(2, "invalid-flags", "--count must be nonnegative");
    return run_guarded([&] {
        std::vector<MixtureComponent> comps;
        for (std::size_t j = 0; j < al.size(); ++j) comps.push_back({wa[j], al[j]});
        MixtureSpec spec(fam, comps);
        std::vector<double> draws = sample(spec, static_cast<std::size_t>(count), seed);
        std::string out;
        for (double d : draws) {
            out += fmt17(d);
            out += '\n';
        }
        std::fputs(out.c_str(), stdout);
        return 0;
    });
}

int cmd_selfcheck(bool fast, double tol) {
    selfcheck::CheckOptions opt;
    opt.fast = fast;
    opt.tol = tol;
    char buf[4096];
    ssize_t n = readlink("/proc/self/exe", buf, sizeof buf - 1);
    if (n > 0) {
        buf[n] = '\0';
        opt.cli_path = buf;
    }
    auto results = selfcheck::run_all(opt);
    bool all = true;
    double total = 0.0;
    for (const auto& r : results) {
        all = all && r.pass;
        total += r.seconds;
        std::printf("[%s] %-18s %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str(), r.seconds);
    }
    std::printf("%zu/%zu checks passed, %.1fs total\n",
                static_cast<std::size_t>(std::count_if(results.begin(), results.end(),
                                                       [](const auto& r) { return r.pass; })),
                results.size(), total);
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Barnes-type hyperbolic zeta functions: evaluation, poles, sampling"};
    app.require_subcommand(1);

    CommonFlags ef, pf, gf, sf;
    std::string s_str = "2", mode_str = "auto";
    int eval_nmax = 0, poles_nmax = 0;
    GridAxis re_ax{0.0, 1.0, 0.5}, im_ax{0.0, 0.0, 1.0};
    long sample_count = 10;
    unsigned long long sample_seed = 0;
    bool fast = false;
    double tol = 0.0;

    CLI::App* ce = app.add_subcommand("eval", "evaluate S, C, or T at one point");
    ef.attach(ce);
    ce->add_option("--s", s_str, "complex argument, re or re+imi");
    ce->add_option("--mode", mode_str, "auto, series, integral, or verify");
    ce->add_option("--n-max", eval_nmax, "per-dimension series cutoff override");

    CLI::App* cp = app.add_subcommand("poles", "pole and residue report (sinh family)");
    pf.attach(cp);
    cp->add_option("--n-max", poles_nmax, "poles to report below the leading one");

    CLI::App* cg = app.add_subcommand("grid", "CSV sweep over a rectangle of s values");
    gf.attach(cg);
    cg->add_option("--re-min", re_ax.lo);
    cg->add_option("--re-max", re_ax.hi);
    cg->add_option("--re-step", re_ax.step);
    cg->add_option("--im-min", im_ax.lo);
    cg->add_option("--im-max", im_ax.hi);
    cg->add_option("--im-step", im_ax.step);

    CLI::App* cs = app.add_subcommand("sample", "draw from the mixture law");
    sf.attach(cs);
    cs->add_option("--count", sample_count);
    cs->add_option("--seed", sample_seed);

    CLI::App* cc = app.add_subcommand("selfcheck", "run the acceptance suite");
    cc->add_flag("--fast", fast, "quick subset");
    cc->add_option("--tol", tol, "tolerance override; only tightens");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return emit_error(2, "invalid-flags", e.what());
    }

    if (ce->parsed()) return cmd_eval(ef, s_str, mode_str, eval_nmax);
    if (cp->parsed()) return cmd_poles(pf, poles_nmax);
    if (cg->parsed()) return cmd_grid(gf, re_ax, im_ax);
    if (cs->parsed()) return cmd_sample(sf, sample_count, sample_seed);
    if (cc->parsed()) return cmd_selfcheck(fast, tol);
    return emit_error(2, "invalid-flags", "no subcommand given");
}
