#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "gradrec/quadrature.hpp"

using namespace gradrec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("low-order rules", "[quadrature]") {
    const auto r1 = gauss_rule(1);
    REQUIRE(r1.order() == 1);
    CHECK(r1.points[0] == 0.0);
    CHECK(r1.weights[0] == 2.0);

    const auto r2 = gauss_rule(2);
    REQUIRE(r2.order() == 2);
    CHECK_THAT(r2.points[0], WithinAbs(-1.0 / std::sqrt(3.0), 1e-16));
    CHECK_THAT(r2.points[1], WithinAbs(1.0 / std::sqrt(3.0), 1e-16));
    CHECK(r2.weights[0] == 1.0);
    CHECK(r2.weights[1] == 1.0);

    CHECK_THROWS_AS(gauss_rule(0), Error);
    CHECK_THROWS_AS(gauss_rule(11), Error);
}

TEST_CASE("weights sum to the reference length", "[quadrature]") {
    for (std::size_t p = 1; p <= 10; ++p) {
        const auto r = gauss_rule(p);
        double s = 0.0;
        for (double w : r.weights) {
            CHECK(w > 0.0);
            s += w;
        }
        CHECK_THAT(s, WithinAbs(2.0, 1e-15));
    }
}

TEST_CASE("odd monomial integrates to zero", "[quadrature]") {
    const auto r = gauss_rule(5);
    double s = 0.0;
    for (std::size_t q = 0; q < r.order(); ++q) s += r.weights[q] * std::pow(r.points[q], 9);
    CHECK_THAT(s, WithinAbs(0.0, 1e-15));
}

TEST_CASE("p-point rule is exact through degree 2p-1", "[quadrature][property]") {
    Rng rng(3);
    for (std::size_t p = 1; p <= 10; ++p) {
        const auto r = gauss_rule(p);
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t degree = 2 * p - 1;
            std::vector<double> c(degree + 1);
            for (auto& v : c) v = rng.uniform(-1.0, 1.0);
            double exact = 0.0;  // int_{-1}^{1} x^k = 2/(k+1) for even k
            double scale = 0.0;
            for (std::size_t k = 0; k <= degree; ++k) {
                if (k % 2 == 0) exact += c[k] * 2.0 / static_cast<double>(k + 1);
                scale += std::abs(c[k]);
            }
            double approx = 0.0;
            for (std::size_t q = 0; q < r.order(); ++q) {
                double y = 0.0;
                for (std::size_t k = degree + 1; k-- > 0;) y = y * r.points[q] + c[k];
                approx += r.weights[q] * y;
            }
            CHECK_THAT(approx, WithinAbs(exact, 1e-13 * scale));
        }
    }
}

TEST_CASE("composite integration", "[quadrature]") {
    const auto one = [](double) { return 1.0; };
    CHECK_THAT(integrate(one, uniform(0.0, 1.0, 7), gauss_rule(1)), WithinAbs(1.0, 1e-15));
    CHECK_THAT(integrate([](double x) { return x * x; }, uniform(0.0, 1.0, 3), gauss_rule(2)),
               WithinAbs(1.0 / 3.0, 1e-15));
    CHECK_THAT(integrate([](double x) { return std::sin(std::numbers::pi * x); },
                         uniform(0.0, 1.0, 32), gauss_rule(5)),
               WithinAbs(2.0 / std::numbers::pi, 1e-10));
}

TEST_CASE("interior integration covers (x_1, x_{n-1})", "[quadrature]") {
    const auto one = [](double) { return 1.0; };
    CHECK_THAT(integrate_interior(one, uniform(0.0, 1.0, 4), gauss_rule(2)), WithinAbs(0.5, 1e-15));
    CHECK_THAT(integrate_interior(one, uniform(0.0, 1.0, 10), gauss_rule(2)), WithinAbs(0.8, 1e-15));
    CHECK_THROWS_AS(integrate_interior(one, uniform(0.0, 1.0, 2), gauss_rule(2)), Error);

    const Mesh m({0.0, 0.1, 0.45, 0.7, 1.0});
    const auto f = [](double x) { return std::exp(x); };
    const auto rule = gauss_rule(5);
    const double edges = integrate_element(f, m, 0, rule) + integrate_element(f, m, 3, rule);
    CHECK_THAT(integrate(f, m, rule), WithinAbs(integrate_interior(f, m, rule) + edges, 1e-15));
}

TEST_CASE("integration is consistent across nested meshes", "[quadrature][property]") {
    const auto p = [](double x) { return 3.0 * x * x * x - x + 0.5; };
    const auto rule = gauss_rule(2);
    const double coarse = integrate(p, uniform(-1.0, 2.0, 5), rule);
    for (std::size_t k : {10u, 20u, 40u, 80u}) {
        CHECK_THAT(integrate(p, uniform(-1.0, 2.0, k), rule), WithinRel(coarse, 1e-13));
    }
}
