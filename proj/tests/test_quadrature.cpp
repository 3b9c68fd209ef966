#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include <hyperzeta/quadrature.hpp>
#include <hyperzeta/special.hpp>

using namespace hyperzeta;
using Catch::Approx;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("smooth integrand hits tolerance with honest estimate", "[quadrature]") {
    QuadConfig cfg;
    auto r = integrate_interval([](double t) { return ComplexValue(std::exp(t), 0.0); },
                                0.0, 1.0, cfg);
    double truth = std::exp(1.0) - 1.0;
    CHECK(std::abs(r.value.real() - truth) < 1e-10);
    CHECK(std::abs(r.value.real() - truth) <= r.err_estimate + 1e-14);
}

TEST_CASE("declared interior singularities converge", "[quadrature]") {
    QuadConfig cfg;
    SECTION("inverse square root") {
        auto r = integrate_interval(
            [](double t) { return ComplexValue(1.0 / std::sqrt(std::abs(t)), 0.0); },
            -0.5, 1.0, cfg, {0.0});
        double truth = 2.0 * std::sqrt(0.5) + 2.0;
        CHECK(std::abs(r.value.real() - truth) < 1e-8);
        CHECK(std::abs(r.value.real() - truth) <= r.err_estimate + 1e-10);
    }
    SECTION("logarithmic") {
        auto r = integrate_interval(
            [](double t) { return ComplexValue(std::log(1.0 / std::abs(t - 0.3)), 0.0); },
            0.0, 1.0, cfg, {0.3});
        double truth = 0.3 * (1.0 - std::log(0.3)) + 0.7 * (1.0 - std::log(0.7));
        CHECK(std::abs(r.value.real() - truth) < 1e-9);
        CHECK(std::abs(r.value.real() - truth) <= r.err_estimate + 1e-11);
    }
}

TEST_CASE("oscillatory cancellation stays inside the estimate", "[quadrature]") {
    QuadConfig cfg;
    auto r = integrate_interval(
        [](double t) { return std::exp(ComplexValue(0.0, 10.0 * t)); },
        0.0, 2.0 * kPi, cfg);
    CHECK(std::abs(r.value) <= r.err_estimate + 1e-12);
}

TEST_CASE("divergent integrand is refused", "[quadrature]") {
    QuadConfig cfg;
    CHECK_THROWS_AS(
        integrate_interval([](double t) { return ComplexValue(1.0 / t, 0.0); },
                           0.0, 1.0, cfg),
        MaxDepthError);
}

TEST_CASE("undeclared endpoint singularity fails honestly or converges", "[quadrature]") {
    QuadConfig cfg;
    double truth = 2.0;
    try {
        auto r = integrate_interval(
            [](double t) { return ComplexValue(1.0 / std::sqrt(t), 0.0); },
            0.0, 1.0, cfg);
        CHECK(std::abs(r.value.real() - truth) <= r.err_estimate + 1e-10);
    } catch (const MaxDepthError&) {
        SUCCEED("refused rather than reporting a false tolerance");
    }
}

TEST_CASE("whole-line integrals", "[quadrature]") {
    QuadConfig cfg;
    auto g = integrate_line([](double x) { return ComplexValue(std::exp(-x * x), 0.0); },
                            cfg);
    CHECK(g.value.real() == Approx(std::sqrt(kPi)).epsilon(1e-12));
    auto l = integrate_line([](double x) { return ComplexValue(std::exp(-std::abs(x)), 0.0); },
                            cfg, {0.0});
    CHECK(std::abs(l.value.real() - 2.0) < 1e-9);
}

TEST_CASE("half-line power weight reproduces the gamma function", "[quadrature]") {
    QuadConfig cfg;
    ComplexValue s(2.0, 3.0);
    double b = 1.7;
    auto r = integrate_halfline_mellin(
        s, [](double) { return ComplexValue(1.0, 0.0); }, b, cfg);
    ComplexValue truth = std::exp(log_gamma(s) - s * std::log(b));
    CHECK(std::abs(r.value - truth) < 1e-9);
    CHECK(std::abs(r.value - truth) <= r.err_estimate + 1e-11);
}

TEST_CASE("tolerance knobs actually tighten results", "[quadrature]") {
    auto f = [](double t) { return ComplexValue(1.0 / std::sqrt(std::abs(t)), 0.0); };
    QuadConfig loose;
    loose.abs_tol = 1e-4;
    loose.rel_tol = 1e-4;
    QuadConfig tight;
    tight.abs_tol = 1e-12;
    tight.rel_tol = 1e-12;
    double truth = 2.0 * std::sqrt(0.5) + 2.0;
    auto rl = integrate_interval(f, -0.5, 1.0, loose, {0.0});
    auto rt = integrate_interval(f, -0.5, 1.0, tight, {0.0});
    double el = std::abs(rl.value.real() - truth);
    double et = std::abs(rt.value.real() - truth);
    CHECK(el <= rl.err_estimate + 1e-10);
    CHECK(et <= rt.err_estimate + 1e-10);
    CHECK(et <= el + 1e-12);
}
