#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <hyperzeta/oracle.hpp>

using namespace hyperzeta;
using Catch::Approx;

namespace {
const double kZeta2 = 1.6449340668482264;
const double kZeta4 = 1.0823232337111382;
const double kPi = 3.14159265358979323846;
const double kLn2 = 0.69314718055994530942;
}

TEST_CASE("Euler-Maclaurin reference values", "[oracle]") {
    CHECK(hurwitz_em(ComplexValue(2.0, 0.0), 1.0).value.real()
          == Approx(kZeta2).margin(1e-13));
    CHECK(hurwitz_em(ComplexValue(4.0, 0.0), 1.0).value.real()
          == Approx(kZeta4).margin(1e-13));
    CHECK(hurwitz_em(ComplexValue(0.0, 0.0), 0.3).value.real()
          == Approx(0.2).margin(1e-13));
    CHECK(hurwitz_em(ComplexValue(-1.0, 0.0), 1.0).value.real()
          == Approx(-1.0 / 12.0).margin(1e-13));
    CHECK_THROWS_AS(hurwitz_em(ComplexValue(1.0, 0.0), 1.0), PoleError);
    CHECK_THROWS_AS(hurwitz_em(ComplexValue(2.0, 0.0), -1.0), ParameterError);
}

TEST_CASE("alternating reference values", "[oracle]") {
    CHECK(eta_reference(ComplexValue(2.0, 0.0)).value.real()
          == Approx(kPi * kPi / 12.0).margin(1e-13));
    CHECK(eta_reference(ComplexValue(1.0, 0.0)).value.real() == Approx(kLn2).margin(1e-13));
    CHECK(eta_reference(ComplexValue(0.0, 0.0)).value.real() == Approx(0.5).margin(1e-13));
    CHECK(eta_reference(ComplexValue(-1.0, 0.0)).value.real() == Approx(0.25).margin(1e-13));
    CHECK(eta_reference(ComplexValue(-2.0, 0.0)).value.real() == Approx(0.0).margin(1e-13));
}

TEST_CASE("series acceleration agrees with Euler-Maclaurin", "[oracle]") {
    for (ComplexValue s : {ComplexValue(0.5, 0.7), ComplexValue(2.0, 0.7)}) {
        auto acc = alternating_sum([s](std::size_t k) {
            return std::exp(-s * std::log(static_cast<double>(k) + 1.0));
        });
        auto ref = eta_reference(s);
        CHECK(std::abs(acc.value - ref.value) < 1e-10);
        CHECK(std::abs(acc.value - ref.value)
              <= acc.claimed_accuracy + ref.claimed_accuracy + 1e-12);
    }
    auto l = alternating_sum([](std::size_t k) {
        return ComplexValue(1.0 / (static_cast<double>(k) + 1.0), 0.0);
    });
    CHECK(l.value.real() == Approx(kLn2).margin(1e-12));
    CHECK_THROWS_AS(alternating_sum([](std::size_t) { return ComplexValue(1.0, 0.0); }, 2),
                    ParameterError);
}

TEST_CASE("functional equation ties the two references together", "[oracle]") {
    ComplexValue s(2.0, 3.0);
    auto z = hurwitz_em(s, 1.0);
    auto e = eta_reference(s);
    ComplexValue factor = 1.0 - std::exp((1.0 - s) * kLn2);
    CHECK(std::abs(factor * z.value - e.value) < 1e-11);
}

TEST_CASE("Monte Carlo is unbiased with honest error bars", "[oracle]") {
    MixtureSpec spec(Family::Cosh, {{1.0, 1.0}});
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto mc = mc_expectation_fn(spec,
            [](double y) { return ComplexValue(y * y, 0.0); }, 40000, seed);
        if (std::abs(mc.value.real() - 0.25) <= mc.claimed_accuracy) ++hits;
        CHECK(std::abs(mc.value.real() - 0.25) <= 4.0 * mc.claimed_accuracy);
    }
    CHECK(hits >= 19);
}

TEST_CASE("Monte Carlo moments of the shifted power", "[oracle]") {
    MixtureSpec spec(Family::Sinh, {{1.0, 1.0}});
    auto one = mc_expectation(spec, 0.5, ComplexValue(0.0, 0.0), 100, 7);
    CHECK(one.value == ComplexValue(1.0, 0.0));
    CHECK(one.claimed_accuracy == 0.0);

    auto m2 = mc_expectation(spec, 0.5, ComplexValue(-2.0, 0.0), 200000, 11);
    CHECK(std::abs(m2.value.real() - 1.0 / 6.0) <= 5.0 * m2.claimed_accuracy + 1e-3);
    CHECK(std::abs(m2.value.imag()) <= 5.0 * m2.claimed_accuracy + 1e-3);

    CHECK_THROWS_AS(mc_expectation(MixtureSpec(Family::Tanh, {{1.0, 1.0}}), 0.5,
                                   ComplexValue(2.0, 0.0), 100, 3),
                    UnsupportedFamilyError);
}
