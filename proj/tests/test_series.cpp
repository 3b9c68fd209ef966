#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <hyperzeta/oracle.hpp>
#include <hyperzeta/series.hpp>

using namespace hyperzeta;
using Catch::Approx;

namespace {
const double kPi = 3.14159265358979323846;
const double kZeta4 = 1.0823232337111382;
const double kZeta5 = 1.0369277551433699;
const double kLn2 = 0.69314718055994530942;
}

TEST_CASE("uniform-sum density", "[series]") {
    CHECK(irwin_hall_pdf(3, 1.5) == Approx(0.75).epsilon(1e-13));
    CHECK(irwin_hall_pdf(2, 0.5) == Approx(0.5).epsilon(1e-14));
    CHECK(irwin_hall_pdf(1, 0.5) == 1.0);
    CHECK(irwin_hall_pdf(2, 2.5) == 0.0);
    CHECK(irwin_hall_pdf(2, -0.5) == 0.0);
    CHECK_THROWS_AS(irwin_hall_pdf(0, 0.5), ParameterError);
}

TEST_CASE("direct sums reproduce one-dimensional classics", "[series]") {
    ZetaParams p(Family::Sinh, {1.0}, {1.0}, 1.0);
    auto r = series_S(p, ComplexValue(4.0, 0.0));
    CHECK(std::abs(r.value.real() - kZeta4) < 1e-8);
    CHECK(std::abs(r.value.imag()) < 1e-14);
    CHECK(std::abs(r.value.real() - kZeta4) <= r.err_estimate);
    CHECK(r.tail_bound > 0.0);
}

TEST_CASE("two-dimensional sums collapse to differences of classics", "[series]") {
    ZetaParams p(Family::Sinh, {1.0, 1.0}, {1.0, 1.0}, 2.0);
    auto r = series_S(p, ComplexValue(5.0, 0.0));
    CHECK(std::abs(r.value.real() - (kZeta4 - kZeta5)) < 1e-8);

    ZetaParams q(Family::Sinh, {1.0, 1.0}, {1.0, 1.0}, 1.5);
    auto r2 = series_S(q, ComplexValue(5.0, 0.0));
    long double ref = 0.0L;
    for (long m = 4000; m >= 1; --m)
        ref += static_cast<long double>(m) * std::pow(static_cast<long double>(m) + 0.5L, -5.0L);
    CHECK(std::abs(r2.value.real() - static_cast<double>(ref)) < 1e-7);
}

TEST_CASE("order splitting leaves the sum unchanged", "[series]") {
    ComplexValue s(4.0, 0.0);
    auto a = series_S(ZetaParams(Family::Sinh, {1.0, 1.0}, {1.3, 1.3}, 2.0), s);
    auto b = series_S(ZetaParams(Family::Sinh, {2.0}, {1.3}, 2.0), s);
    CHECK(std::abs(a.value - b.value) <= a.err_estimate + b.err_estimate + 1e-12);

    auto ca = series_C(ZetaParams(Family::Cosh, {1.0, 1.0}, {1.3, 1.3}, 2.0), s);
    auto cb = series_C(ZetaParams(Family::Cosh, {2.0}, {1.3}, 2.0), s);
    CHECK(std::abs(ca.value - cb.value) <= ca.err_estimate + cb.err_estimate + 1e-12);
}

TEST_CASE("weight scaling pulls out as a power", "[series]") {
    ComplexValue s(4.0, 0.0);
    auto a = series_S(ZetaParams(Family::Sinh, {1.0}, {2.0}, 1.3), s);
    auto b = series_S(ZetaParams(Family::Sinh, {1.0}, {1.0}, 0.65), s);
    CHECK(a.value.real() == Approx(std::pow(2.0, -4.0) * b.value.real()).epsilon(1e-10));
}

TEST_CASE("alternating sum hits the eta function", "[series]") {
    ZetaParams p(Family::Cosh, {1.0}, {1.0}, 1.0);
    auto r = series_C(p, ComplexValue(2.0, 0.0));
    double truth = kPi * kPi / 12.0;
    CHECK(std::abs(r.value.real() - truth) < 5e-7);
    CHECK(std::abs(r.value.real() - truth) <= r.err_estimate);
}

TEST_CASE("single-term uniform expectations", "[series]") {
    QuadConfig cfg;
    std::vector<std::size_t> n0{0};
    ZetaParams p1(Family::Tanh, {1.0}, {1.0}, 1.0);
    CHECK(term_T_expectation(p1, n0, ComplexValue(1.0, 0.0), cfg).real()
          == Approx(kLn2).margin(1e-10));
    ZetaParams p2(Family::Tanh, {1.0}, {1.0}, 2.0);
    CHECK(term_T_expectation(p2, n0, ComplexValue(1.0, 0.0), cfg).real()
          == Approx(std::log(1.5)).margin(1e-10));
    ZetaParams p3(Family::Tanh, {2.0}, {1.0}, 1.0);
    CHECK(term_T_expectation(p3, n0, ComplexValue(1.0, 0.0), cfg).real()
          == Approx(3.0 * std::log(3.0) - 4.0 * kLn2).margin(1e-10));
    CHECK(term_T_expectation(p1, n0, ComplexValue(0.0, 0.0), cfg) == ComplexValue(1.0, 0.0));
    CHECK_THROWS_AS(term_T_expectation(p1, n0, ComplexValue(-1.0, 0.0), cfg),
                    ConvergenceRegionError);
    CHECK_THROWS_AS(term_T_expectation(p1, {0, 1}, ComplexValue(1.0, 0.0), cfg),
                    ParameterError);
}

TEST_CASE("tanh series through the collapsed kernel", "[series]") {
    ZetaParams p(Family::Tanh, {1.0}, {1.0}, 1.0);
    auto r = series_T(p, ComplexValue(2.0, 0.0));
    double truth = 2.0 * kLn2 - 1.0;
    CHECK(std::abs(r.value.real() - truth) < 5e-7);
    CHECK(std::abs(r.value.real() - truth) <= r.err_estimate + 1e-12);
}

TEST_CASE("direct summation refuses what it cannot certify", "[series]") {
    ZetaParams p(Family::Sinh, {1.0}, {1.0}, 1.0);
    CHECK_THROWS_AS(series_S(p, ComplexValue(1.4, 0.0)), ConvergenceRegionError);
    ZetaParams ph(Family::Sinh, {0.5}, {1.0}, 1.0);
    CHECK_THROWS_AS(series_S(ph, ComplexValue(1.01, 0.0)), TailToleranceError);
    CHECK_THROWS_AS(series_S(ZetaParams(Family::Cosh, {1.0}, {1.0}, 1.0),
                             ComplexValue(4.0, 0.0)),
                    ParameterError);
}

TEST_CASE("tail bounds are honest against an independent reference", "[series]") {
    ZetaParams p(Family::Sinh, {1.0}, {1.0}, 1.3);
    ComplexValue s(2.6, 0.0);
    auto r = series_S(p, s);
    auto ref = hurwitz_em(s, 1.3);
    CHECK(std::abs(r.value - ref.value) <= r.err_estimate + ref.claimed_accuracy + 1e-10);
    CHECK(r.tail_bound > 0.0);
}

TEST_CASE("bounding helpers", "[series]") {
    CHECK(detail::wendel_c(1.0, 100.0) == 1.0);
    CHECK(detail::wendel_c(0.5, 100.0) == 1.0);
    CHECK(detail::wendel_c(2.0, 100.0) == Approx(1.02).epsilon(1e-14));
    double f = detail::full_sum_base(1.0, 1.0, 1.0, 2.0);
    double truth = kPi * kPi / 6.0;
    CHECK(f >= truth - 1e-12);
    CHECK(f <= truth + 1e-4);
}
