#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include <hyperzeta/hyperdist.hpp>

using namespace hyperzeta;
using Catch::Approx;

namespace {
const double kPi = 3.14159265358979323846;
const double kZeta3 = 1.2020569031595943;
}

TEST_CASE("characteristic function components", "[hyperdist]") {
    CHECK(cf_component(Family::Sinh, 1.0, 1.0) == Approx(1.0 / std::sinh(1.0)).epsilon(1e-13));
    CHECK(cf_component(Family::Cosh, 2.0, 1.0)
          == Approx(1.0 / (std::cosh(1.0) * std::cosh(1.0))).epsilon(1e-13));
    CHECK(cf_component(Family::Tanh, 1.0, 2.0) == Approx(std::tanh(2.0) / 2.0).epsilon(1e-13));
    CHECK(cf_component(Family::Tanh, 1.0, 45.0) == Approx(1.0 / 45.0).epsilon(1e-13));

    SECTION("series and direct branches agree across the small-angle cut") {
        for (double th : {9.999e-5, 1.0001e-4}) {
            double direct = std::pow(th / std::sinh(th), 2.0);
            CHECK(cf_component(Family::Sinh, 2.0, th) == Approx(direct).epsilon(1e-12));
        }
    }
    SECTION("log-form and direct branches agree across the large-angle cut") {
        for (double th : {29.999, 30.001}) {
            double direct = th / std::sinh(th);
            CHECK(cf_component(Family::Sinh, 1.0, th) == Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("mixture CF factorizes over components", "[hyperdist]") {
    MixtureSpec spec(Family::Sinh, {{1.0, 2.0}, {2.0, 1.0}});
    double th = 0.7;
    double expect = cf_component(Family::Sinh, 2.0, 1.0 * th / 2.0)
                  * cf_component(Family::Sinh, 1.0, 2.0 * th / 2.0);
    CHECK(cf_mixture(spec, th) == Approx(expect).epsilon(1e-14));
    CHECK(cf_mixture(spec, 0.0) == 1.0);
}

TEST_CASE("closed densities at the origin", "[hyperdist]") {
    CHECK(density_closed(Family::Sinh, 1, 0.0) == Approx(kPi / 4.0).epsilon(1e-13));
    CHECK(density_closed(Family::Sinh, 2, 0.0) == Approx(kPi / 6.0).epsilon(1e-13));
    CHECK(density_closed(Family::Cosh, 1, 0.0) == Approx(0.5).epsilon(1e-14));
    CHECK(density_closed(Family::Cosh, 2, 0.0) == Approx(1.0 / kPi).epsilon(1e-13));
    CHECK(density_closed(Family::Tanh, 2, 0.0)
          == Approx(14.0 * kZeta3 / (kPi * kPi * kPi)).margin(1e-10));
    CHECK_THROWS_AS(density_closed(Family::Tanh, 1, 0.0), SingularPointError);
    CHECK(density_scaled_closed(Family::Cosh, 1, 0.7)
          == Approx(2.0 * density_closed(Family::Cosh, 1, 1.4)).epsilon(1e-14));
}

TEST_CASE("Fourier inversion matches closed densities", "[hyperdist]") {
    QuadConfig cfg;
    SECTION("cosh order 1") {
        MixtureSpec spec(Family::Cosh, {{1.0, 1.0}});
        for (double y : {0.0, 0.5, 1.0, 2.0, 4.0})
            CHECK(density_mixture(spec, y, cfg)
                  == Approx(density_scaled_closed(Family::Cosh, 1, y)).margin(1e-9));
    }
    SECTION("tanh total order 2 built from two order-1 pieces") {
        MixtureSpec spec(Family::Tanh, {{1.0, 1.0}, {1.0, 1.0}});
        for (double y : {0.25, 0.75, 1.5, 3.0})
            CHECK(density_mixture(spec, y, cfg)
                  == Approx(density_scaled_closed(Family::Tanh, 2, y)).margin(2e-8));
    }
    SECTION("tanh below total order 2 is refused") {
        MixtureSpec spec(Family::Tanh, {{1.0, 1.0}});
        CHECK_THROWS_AS(density_mixture(spec, 0.5, cfg), SlowDecayError);
    }
}

TEST_CASE("density model is additive in the orders", "[hyperdist]") {
    auto one = detail::build_density_model(MixtureSpec(Family::Sinh, {{1.0, 2.0}}));
    auto two = detail::build_density_model(MixtureSpec(Family::Sinh, {{1.0, 1.0}, {1.0, 1.0}}));
    for (double y : {0.0, 0.3, 0.8, 1.6, 3.0}) {
        CHECK((*two)(y) == Approx((*one)(y)).margin(2e-9));
        CHECK((*two)(y) == Approx(density_scaled_closed(Family::Sinh, 2, y)).margin(1e-9));
    }
    QuadConfig cfg;
    auto mass = integrate_interval(
        [&two](double y) { return ComplexValue((*two)(y), 0.0); },
        0.0, 14.0, cfg, two->splits);
    CHECK(2.0 * mass.value.real() == Approx(1.0).margin(1e-8));
}

TEST_CASE("mixture moments", "[hyperdist]") {
    QuadConfig cfg;
    CHECK(moment_mixture(MixtureSpec(Family::Sinh, {{1.0, 1.0}}), 2, cfg)
          == Approx(1.0 / 12.0).margin(1e-9));
    CHECK(moment_mixture(MixtureSpec(Family::Cosh, {{1.0, 1.0}}), 2, cfg)
          == Approx(0.25).margin(1e-9));
    CHECK(moment_mixture(MixtureSpec(Family::Tanh, {{1.0, 1.0}}), 2, cfg)
          == Approx(1.0 / 6.0).margin(1e-9));
    CHECK(moment_mixture(MixtureSpec(Family::Sinh, {{1.0, 1.0}}), 3, cfg) == 0.0);
    CHECK(moment_mixture(MixtureSpec(Family::Sinh, {{1.0, 1.0}}), 0, cfg) == 1.0);
    CHECK_THROWS_AS(moment_mixture(MixtureSpec(Family::Sinh, {{1.0, 1.0}}), -1, cfg),
                    ParameterError);
}

TEST_CASE("complex moments reduce to real even-moment sums", "[hyperdist]") {
    QuadConfig cfg;
    MixtureSpec spec(Family::Sinh, {{1.0, 1.0}});
    ComplexValue m2 = complex_moment(spec, 0.5, 2, cfg);
    CHECK(m2.real() == Approx(1.0 / 6.0).margin(1e-9)); // 1/4 - 1/12
    CHECK(m2.imag() == 0.0);
    CHECK(complex_moment(MixtureSpec(Family::Cosh, {{1.0, 1.0}}), 0.5, 0, cfg)
          == ComplexValue(1.0, 0.0));
}

TEST_CASE("sampler matches the closed CDF", "[hyperdist]") {
    MixtureSpec spec(Family::Cosh, {{1.0, 1.0}, {1.0, 1.0}});
    auto xs = sample(spec, 1000000, 20260818u);
    std::sort(xs.begin(), xs.end());

    // trapezoid CDF of the total-order-2 closed density, anchored at F(0)=1/2
    const double h = 5e-4;
    const double lim = 9.0;
    const int half = static_cast<int>(lim / h);
    const int n = 2 * half + 1;
    std::vector<double> f(n), F(n);
    for (int i = 0; i < n; ++i)
        f[i] = density_scaled_closed(Family::Cosh, 2, (i - half) * h);
    F[half] = 0.5;
    for (int i = half + 1; i < n; ++i) F[i] = F[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    for (int i = half - 1; i >= 0; --i) F[i] = F[i + 1] - 0.5 * h * (f[i] + f[i + 1]);
    REQUIRE(F[0] < 1e-6);
    REQUIRE(F[n - 1] > 1.0 - 1e-6);

    double worst = 0.0;
    for (int i = 0; i < n; i += 4) {
        double y = (i - half) * h;
        auto it = std::upper_bound(xs.begin(), xs.end(), y);
        double emp = static_cast<double>(it - xs.begin()) / xs.size();
        worst = std::max(worst, std::abs(emp - F[i]));
    }
    CHECK(worst < 0.002);
}

TEST_CASE("sampler guards", "[hyperdist]") {
    CHECK_THROWS_AS(sample(MixtureSpec(Family::Tanh, {{1.0, 1.0}}), 10, 1u),
                    UnsupportedFamilyError);
    CHECK_THROWS_AS(sample(MixtureSpec(Family::Sinh, {{1.0, 0.5}}), 10, 1u),
                    NonIntegerOrderError);
    CHECK_THROWS_AS(MixtureSpec(Family::Sinh, {}), ParameterError);
    CHECK_THROWS_AS(MixtureSpec(Family::Tanh, {{1.0, 0.5}}), ParameterError);
}
