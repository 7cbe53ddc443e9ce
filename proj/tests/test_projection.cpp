#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gradrec/projection.hpp"
#include "support/oracles.hpp"

using namespace gradrec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> to_vector(const NodalFunction& f) { return {f.values().begin(), f.values().end()}; }

NodalFunction random_values(const Mesh& m, Rng& rng) {
    std::vector<double> u(m.node_count());
    for (auto& v : u) v = rng.uniform(-5.0, 5.0);
    return NodalFunction(m, std::move(u));
}

}  // namespace

TEST_CASE("interpolation samples nodal values", "[projection]") {
    const Mesh m = uniform(0.0, 1.0, 2);
    const auto u = interpolate(FunctionSpec::polynomial({0.0, 0.0, 1.0}), m);
    CHECK(to_vector(u) == std::vector<double>{0.0, 0.25, 1.0});

    const Mesh r({0.0, 0.3, 0.7, 1.0});
    const auto id = interpolate(FunctionSpec::polynomial({0.0, 1.0}), r);
    CHECK(to_vector(id) == std::vector<double>{0.0, 0.3, 0.7, 1.0});

    const auto sampled = interpolate(FunctionSpec::sampled({0.0, 0.3, 0.7, 1.0}, {5.0, 6.0, 7.0, 8.0}), r);
    CHECK(to_vector(sampled) == std::vector<double>{5.0, 6.0, 7.0, 8.0});
    CHECK_THROWS_AS(interpolate(FunctionSpec::sampled({0.0, 0.3, 0.71, 1.0}, {1, 2, 3, 4}), r), Error);
    CHECK_THROWS_AS(interpolate(FunctionSpec::sampled({0.0, 1.0}, {1, 2}), r), Error);
}

TEST_CASE("oblique recovery closed form", "[projection]") {
    SECTION("linear data gives the exact slope everywhere") {
        const auto g = recover_oblique(interpolate(FunctionSpec::polynomial({2.0, 1.0}), uniform(0.0, 1.0, 4)));
        for (double v : g.values()) CHECK_THAT(v, WithinAbs(1.0, 1e-15));
    }
    SECTION("quadratic on a non-uniform mesh is exact at the stencil midpoint") {
        const Mesh m({0.0, 0.3, 0.7, 1.0});
        const auto g = recover_oblique(interpolate(FunctionSpec::polynomial({0.0, 0.0, 1.0}), m));
        CHECK_THAT(g[1], WithinAbs(0.7, 1e-15));  // = 0.49 / 0.7 = u'(0.35)
    }
    SECTION("endpoint error equals h for x^2") {
        for (std::size_t n : {4u, 10u, 64u}) {
            const Mesh m = uniform(0.0, 1.0, n);
            const auto g = recover_oblique(interpolate(FunctionSpec::polynomial({0.0, 0.0, 1.0}), m));
            CHECK_THAT(g[0] - 0.0, WithinRel(1.0 / static_cast<double>(n), 1e-12));
        }
    }
    SECTION("x^2 on uniform:4") {
        const auto g = recover_oblique(interpolate(FunctionSpec::polynomial({0.0, 0.0, 1.0}), uniform(0.0, 1.0, 4)));
        const std::vector<double> expected{0.25, 0.5, 1.0, 1.5, 1.75};
        for (std::size_t i = 0; i < 5; ++i) CHECK_THAT(g[i], WithinAbs(expected[i], 1e-15));
    }
}

TEST_CASE("assembled oblique recovery", "[projection]") {
    const Mesh m = uniform(0.0, 1.0, 4);
    const auto u = interpolate(FunctionSpec::polynomial({0.0, 0.0, 1.0}), m);
    const auto f = load_vector(u);
    CHECK_THAT(f[2], WithinAbs(0.25, 1e-16));  // (0.5625 - 0.0625) / 2
    CHECK_THAT(pairing_integral(2, 2, m), WithinAbs(0.25, 1e-16));
    CHECK_THAT(recover_oblique_assembled(u)[2], WithinAbs(1.0, 1e-15));

    const auto flat = recover_oblique_assembled(NodalFunction(m, std::vector<double>(5, 3.25)));
    for (double v : flat.values()) CHECK(v == 0.0);
}

TEST_CASE("closed-form and assembled oblique recovery agree", "[projection][property]") {
    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const Mesh m = random_mesh(rng.uniform(-2.0, 0.0), rng.uniform(0.5, 3.0),
                                   static_cast<std::size_t>(rng.uniform_int(2, 80)), rng);
        const auto u = random_values(m, rng);
        const auto a = recover_oblique(u);
        const auto b = recover_oblique_assembled(u);
        for (std::size_t i = 0; i < u.size(); ++i) {
            CHECK(std::abs(a[i] - b[i]) <= 1e-14 * std::abs(a[i]));
        }
    }
}

TEST_CASE("orthogonal recovery", "[projection]") {
    SECTION("reproduces the slope of linear data") {
        Rng rng(4);
        const Mesh m = random_mesh(0.0, 1.0, 17, rng);
        const auto g = recover_orthogonal(interpolate(FunctionSpec::polynomial({-1.0, 2.5}), m));
        for (double v : g.values()) CHECK_THAT(v, WithinAbs(2.5, 1e-13));
    }
    SECTION("|x - 1/2| on uniform:2 is antisymmetric about the midpoint") {
        const Mesh m = uniform(0.0, 1.0, 2);
        const NodalFunction u(m, {0.5, 0.0, 0.5});
        const auto f = load_vector(u);
        CHECK_THAT(f[0], WithinAbs(-0.25, 1e-16));
        CHECK_THAT(f[1], WithinAbs(0.0, 1e-16));
        CHECK_THAT(f[2], WithinAbs(0.25, 1e-16));
        const auto g = recover_orthogonal(u);
        CHECK_THAT(g[1], WithinAbs(0.0, 1e-15));
        CHECK_THAT(g[0], WithinAbs(-g[2], 1e-15));
    }
    SECTION("Thomas solve matches the dense oracle") {
        Rng rng(8);
        for (std::size_t n : {4u, 16u, 64u}) {
            for (int trial = 0; trial < 5; ++trial) {
                const Mesh m = trial == 0 ? uniform(0.0, 1.0, n) : random_mesh(0.0, 1.0, n, rng);
                const auto u = random_values(m, rng);
                const auto dense = oracle::orthogonal_projection_dense(m, to_vector(u));
                CHECK(oracle::relative_max_diff(to_vector(recover_orthogonal(u)), dense) < 1e-10);
            }
        }
    }
}

TEST_CASE("both operators are linear", "[projection][property]") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const Mesh m = random_mesh(0.0, 1.0, static_cast<std::size_t>(rng.uniform_int(2, 50)), rng);
        const auto u = random_values(m, rng);
        const auto v = random_values(m, rng);
        const double a = rng.uniform(-3.0, 3.0);
        const double b = rng.uniform(-3.0, 3.0);
        std::vector<double> w(m.node_count());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = a * u[i] + b * v[i];
        const NodalFunction combo(m, w);
        for (const auto method : {Method::oblique, Method::orthogonal}) {
            const auto gu = recover(u, method);
            const auto gv = recover(v, method);
            const auto gw = recover(combo, method);
            double scale = 1.0;
            for (std::size_t i = 0; i < w.size(); ++i)
                scale = std::max(scale, std::abs(a * gu[i]) + std::abs(b * gv[i]));
            for (std::size_t i = 0; i < w.size(); ++i)
                CHECK_THAT(gw[i], WithinAbs(a * gu[i] + b * gv[i], 1e-13 * scale));
        }
    }
}

TEST_CASE("affine data yields the constant slope", "[projection][property]") {
    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const Mesh m = random_mesh(0.0, 1.0, static_cast<std::size_t>(rng.uniform_int(2, 50)), rng);
        const double slope = rng.uniform(-4.0, 4.0);
        const auto u = interpolate(FunctionSpec::polynomial({rng.uniform(-1.0, 1.0), slope}), m);
        // Rounding in u_i is amplified by 1 / h when differenced.
        double umax = 0.0;
        double hmin = m.length();
        for (double v : u.values()) umax = std::max(umax, std::abs(v));
        for (std::size_t e = 0; e < m.elements(); ++e) hmin = std::min(hmin, m.element_length(e));
        const double tol = 16.0 * std::numeric_limits<double>::epsilon() * (umax / hmin + std::abs(slope));
        for (const auto method : {Method::oblique, Method::orthogonal}) {
            const auto recovered = recover(u, method);
            for (double g : recovered.values()) {
                CHECK_THAT(g, WithinAbs(slope, tol));
            }
        }
    }
}

TEST_CASE("oblique recovery is local", "[projection][property]") {
    Rng rng(19);
    const Mesh m = random_mesh(0.0, 1.0, 12, rng);
    const auto base = random_values(m, rng);
    const auto g0 = recover_oblique(base);
    for (std::size_t k = 0; k <= m.elements(); ++k) {
        std::vector<double> w(base.values().begin(), base.values().end());
        w[k] += 1.0;
        const auto g1 = recover_oblique(NodalFunction(m, w));
        for (std::size_t i = 0; i <= m.elements(); ++i) {
            const bool neighbour = i + 1 >= k && i <= k + 1;
            if (!neighbour) CHECK(g1[i] == g0[i]);
        }
    }
}

TEST_CASE("recovered field evaluation", "[projection]") {
    const Mesh m({0.0, 0.2, 0.5, 1.0});
    const auto u = interpolate(FunctionSpec::polynomial({0.0, 0.0, 1.0}), m);
    const auto g = recover_oblique(u);
    for (std::size_t i = 0; i < 4; ++i) CHECK(eval_recovered(g, m[i]) == g[i]);
    for (std::size_t e = 0; e < 3; ++e) {
        CHECK_THAT(eval_recovered(g, 0.5 * (m[e] + m[e + 1])), WithinAbs(0.5 * (g[e] + g[e + 1]), 1e-15));
    }
    // g_1 for x^2 equals u'(x~_1) = 2 * 0.25.
    CHECK_THAT(g[1], WithinAbs(0.5, 1e-15));
    CHECK_THROWS_AS(eval_recovered(g, 1.5), Error);
}

TEST_CASE("nodal function validates its size", "[projection][errors]") {
    CHECK_THROWS_AS(NodalFunction(uniform(0.0, 1.0, 2), {1.0, 2.0}), Error);
}
