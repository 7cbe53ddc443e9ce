#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "gradrec/analysis.hpp"
#include "gradrec/basis.hpp"
#include "gradrec/inf_sup.hpp"
#include "gradrec/mesh.hpp"
#include "gradrec/projection.hpp"
#include "gradrec/quadrature.hpp"
#include "gradrec/rng.hpp"

namespace gradrec {

/// Identity-suite tolerances. "Mixed" tolerances are relative for
/// references above one and absolute below: |d| <= tol * max(1, |ref|).
namespace tolerance {
inline constexpr double quadratic_tilde = 1e-11;       // absolute
inline constexpr double quadratic_signed = 1e-11;      // absolute
inline constexpr double uniform_endpoint = 1e-12;      // mixed
inline constexpr double uniform_interior = 1e-12;      // absolute
inline constexpr double cubic = 1e-10;                 // mixed
inline constexpr double biorthogonal_offdiag = 1e-14;  // absolute
inline constexpr double biorthogonal_diag = 1e-14;     // relative
inline constexpr double inf_sup_spread = 0.05;         // relative spread across levels
inline constexpr double inf_sup_floor = 0.1;
inline constexpr double inf_sup_robustness = 0.5;  // fraction of the uniform value
}  // namespace tolerance

enum class Relation {
    within,   // |measured - predicted| <= tolerance
    at_least  // measured >= predicted
};

struct CheckResult {
    std::string suite;
    std::string name;
    Relation relation = Relation::within;
    double measured = 0.0;
    double predicted = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    std::size_t mesh_count = 50;
    std::size_t functions_per_mesh = 20;
    std::size_t biorthogonality_meshes = 20;
    double coefficient_bound = 10.0;
    /// Multiplies every "within" tolerance.
    double tolerance_scale = 1.0;
    double alpha = 0.0;
    double beta = 1.0;
};

enum class Suite { quadratic, cubic, biorthogonality, infsup, all };

inline bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

namespace detail {

// Keeps the case closest to (or furthest past) its tolerance.
class WorstCase {
public:
    WorstCase(double base_tolerance, bool mixed) : base_(base_tolerance), mixed_(mixed) {}

    void add(double measured, double predicted) {
        const double tol = mixed_ ? base_ * std::max(1.0, std::abs(predicted)) : base_;
        const double ratio = std::abs(measured - predicted) / tol;
        if (!seen_ || ratio > ratio_ || std::isnan(ratio)) {
            seen_ = true;
            ratio_ = ratio;
            measured_ = measured;
            predicted_ = predicted;
            tolerance_ = tol;
        }
    }

    CheckResult result(std::string suite, std::string name) const {
        return CheckResult{std::move(suite), std::move(name),   Relation::within, measured_,
                           predicted_,       tolerance_,        seen_ && ratio_ <= 1.0};
    }

private:
    double base_;
    bool mixed_;
    bool seen_ = false;
    double ratio_ = 0.0;
    double measured_ = 0.0;
    double predicted_ = 0.0;
    double tolerance_ = 0.0;
};

inline std::string mesh_label(std::size_t k, const Mesh& m) {
    return "mesh-" + std::to_string(k) + "(n=" + std::to_string(m.elements()) + ")";
}

// Suites draw from independent streams so that running one alone or as part
// of "all" gives identical checks.
inline Rng suite_rng(std::uint64_t seed, std::uint64_t salt) {
    return Rng(seed * 0x9E3779B97F4A7C15ULL + salt);
}

inline Mesh random_suite_mesh(const VerifyOptions& opts, Rng& rng) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(3, 64));
    return random_mesh(opts.alpha, opts.beta, n, rng);
}

}  // namespace detail

/// Quadratic data: exactness at x~_i, the signed nodal error formula, and the
/// endpoint error |a| h on uniform grids.
inline std::vector<CheckResult> verify_quadratic(const VerifyOptions& opts) {
    const double s = opts.tolerance_scale;
    const double bound = opts.coefficient_bound;
    auto rng = detail::suite_rng(opts.seed, 1);
    std::vector<CheckResult> out;

    for (std::size_t k = 0; k < opts.mesh_count; ++k) {
        const Mesh m = detail::random_suite_mesh(opts, rng);
        detail::WorstCase tilde(tolerance::quadratic_tilde * s, false);
        detail::WorstCase signed_node(tolerance::quadratic_signed * s, false);
        for (std::size_t f = 0; f < opts.functions_per_mesh; ++f) {
            const double a = rng.uniform(-bound, bound);
            const double b = rng.uniform(-bound, bound);
            const double c = rng.uniform(-bound, bound);
            const auto u = FunctionSpec::polynomial({c, b, a});
            const auto g = recover_oblique(interpolate(u, m));
            for (std::size_t i = 0; i <= m.elements(); ++i) {
                tilde.add(g[i] - u.derivative(x_tilde(m, i)), 0.0);
                signed_node.add(g[i] - u.derivative(m[i]), predicted_error_quadratic(a, m, i));
            }
        }
        const auto label = detail::mesh_label(k, m);
        out.push_back(tilde.result("quadratic", label + "/exact-at-x-tilde"));
        out.push_back(signed_node.result("quadratic", label + "/signed-nodal-error"));
    }

    for (const std::size_t n : {4u, 16u, 64u}) {
        const Mesh m = uniform(opts.alpha, opts.beta, n);
        const double h = mesh_size(m);
        detail::WorstCase endpoint(tolerance::uniform_endpoint * s, true);
        detail::WorstCase interior(tolerance::uniform_interior * s, false);
        for (std::size_t f = 0; f < opts.functions_per_mesh; ++f) {
            const double a = rng.uniform(-bound, bound);
            const double b = rng.uniform(-bound, bound);
            const double c = rng.uniform(-bound, bound);
            const auto u = FunctionSpec::polynomial({c, b, a});
            const auto g = recover_oblique(interpolate(u, m));
            endpoint.add(std::abs(g[0] - u.derivative(m[0])), std::abs(a) * h);
            endpoint.add(std::abs(g[n] - u.derivative(m[n])), std::abs(a) * h);
            for (std::size_t i = 1; i < n; ++i) {
                interior.add(std::abs(g[i] - u.derivative(m[i])), 0.0);
            }
        }
        const auto label = "uniform(n=" + std::to_string(n) + ")";
        out.push_back(endpoint.result("quadratic", label + "/endpoint-error-a-h"));
        out.push_back(interior.result("quadratic", label + "/interior-exact"));
    }
    return out;
}

/// Cubic data: |g_i - u'(x~_i)| = (a/4)(x_{i-1} - x_{i+1})^2 and the signed
/// nodal error formula, endpoints included.
inline std::vector<CheckResult> verify_cubic(const VerifyOptions& opts) {
    const double s = opts.tolerance_scale;
    const double bound = opts.coefficient_bound;
    auto rng = detail::suite_rng(opts.seed, 2);
    std::vector<CheckResult> out;

    for (std::size_t k = 0; k < opts.mesh_count; ++k) {
        const Mesh m = detail::random_suite_mesh(opts, rng);
        detail::WorstCase tilde(tolerance::cubic * s, true);
        detail::WorstCase node(tolerance::cubic * s, true);
        for (std::size_t f = 0; f < opts.functions_per_mesh; ++f) {
            const double a = rng.uniform(-bound, bound);
            const double b = rng.uniform(-bound, bound);
            const double c = rng.uniform(-bound, bound);
            const double d = rng.uniform(-bound, bound);
            const auto u = FunctionSpec::polynomial({d, c, b, a});
            const auto g = recover_oblique(interpolate(u, m));
            for (std::size_t i = 0; i <= m.elements(); ++i) {
                tilde.add(std::abs(g[i] - u.derivative(x_tilde(m, i))),
                          std::abs(predicted_error_cubic_at_tilde(a, m, i)));
                node.add(g[i] - u.derivative(m[i]), predicted_error_cubic_at_node(a, b, m, i));
            }
        }
        const auto label = detail::mesh_label(k, m);
        out.push_back(tilde.result("cubic", label + "/error-at-x-tilde"));
        out.push_back(node.result("cubic", label + "/signed-nodal-error"));
    }
    return out;
}

/// Quadrature-verified int lambda_i phi_j dx = c_j delta_ij. Two-point Gauss
/// is exact for the elementwise quadratic integrand; it is applied in local
/// coordinates so that short elements keep full relative accuracy.
inline std::vector<CheckResult> verify_biorthogonality(const VerifyOptions& opts) {
    const double s = opts.tolerance_scale;
    auto rng = detail::suite_rng(opts.seed, 3);
    const auto rule = gauss_rule(2);
    std::vector<CheckResult> out;

    for (std::size_t k = 0; k < opts.biorthogonality_meshes; ++k) {
        const Mesh m = detail::random_suite_mesh(opts, rng);
        const HatBasis hats(m);
        const DualBasis duals(m);
        const std::size_t size = m.node_count();
        std::vector<double> pairing(size * size, 0.0);
        for (std::size_t e = 0; e < m.elements(); ++e) {
            for (const std::size_t i : {e, e + 1}) {
                for (const std::size_t j : {e, e + 1}) {
                    double sum = 0.0;
                    for (std::size_t q = 0; q < rule.points.size(); ++q) {
                        const double t = 0.5 * (1.0 + rule.points[q]);
                        sum += rule.weights[q] * duals.eval_reference(i, e, t) * hats.eval_reference(j, e, t);
                    }
                    pairing[i * size + j] += 0.5 * m.element_length(e) * sum;
                }
            }
        }
        detail::WorstCase offdiag(tolerance::biorthogonal_offdiag * s, false);
        CheckResult diag{"biorthogonality", "", Relation::within, 0.0, 0.0, 0.0, true};
        double worst_ratio = -1.0;
        for (std::size_t i = 0; i < size; ++i) {
            for (std::size_t j = 0; j < size; ++j) {
                if (i != j) {
                    offdiag.add(pairing[i * size + j], 0.0);
                    continue;
                }
                const double c = pairing_integral(j, j, m);
                const double tol = tolerance::biorthogonal_diag * s * std::abs(c);
                const double dev = std::abs(pairing[i * size + j] - c);
                const double ratio = dev / tol;
                if (ratio > worst_ratio || std::isnan(ratio)) {
                    worst_ratio = ratio;
                    diag.measured = pairing[i * size + j];
                    diag.predicted = c;
                    diag.tolerance = tol;
                    diag.passed = c > 0.0 && dev <= tol;
                }
            }
        }
        const auto label = detail::mesh_label(k, m);
        out.push_back(offdiag.result("biorthogonality", label + "/off-diagonal"));
        diag.name = label + "/diagonal-c_j";
        out.push_back(diag);
    }
    return out;
}

/// Levels used by the inf-sup suite.
inline constexpr std::array<std::size_t, 5> inf_sup_levels{8, 16, 32, 64, 128};

/// Mesh-independence of the discrete inf-sup constant, and its robustness on
/// graded and perturbed meshes.
inline std::vector<CheckResult> verify_inf_sup(const VerifyOptions& opts) {
    const double s = opts.tolerance_scale;
    std::vector<CheckResult> out;

    std::vector<double> uniform_values;
    for (const auto n : inf_sup_levels) {
        uniform_values.push_back(estimate_inf_sup(uniform(opts.alpha, opts.beta, n)));
    }
    const auto [lo, hi] = std::minmax_element(uniform_values.begin(), uniform_values.end());
    const double spread = (*hi - *lo) / *hi;
    out.push_back(CheckResult{"infsup", "uniform/relative-spread", Relation::within, spread, 0.0,
                              tolerance::inf_sup_spread * s,
                              spread <= tolerance::inf_sup_spread * s});
    out.push_back(CheckResult{"infsup", "uniform/lower-bound", Relation::at_least, *lo,
                              tolerance::inf_sup_floor, 0.0, *lo >= tolerance::inf_sup_floor});

    const double floor = tolerance::inf_sup_robustness * *lo;
    const std::array<MeshFamily, 2> families{
        MeshFamily{MeshFamily::Kind::graded, opts.alpha, opts.beta, 0.2, 0.0, opts.seed},
        MeshFamily{MeshFamily::Kind::perturbed, opts.alpha, opts.beta, 0.0, 0.4, opts.seed}};
    const std::array<const char*, 2> names{"graded(delta=0.2)", "perturbed(rho=0.4)"};
    for (std::size_t f = 0; f < families.size(); ++f) {
        double worst = std::numeric_limits<double>::infinity();
        for (const auto n : inf_sup_levels) {
            worst = std::min(worst, estimate_inf_sup(families[f].make(n)));
        }
        out.push_back(CheckResult{"infsup", std::string(names[f]) + "/half-uniform-bound",
                                  Relation::at_least, worst, floor, 0.0, worst >= floor});
    }
    return out;
}

inline std::vector<CheckResult> run_verify(Suite suite, const VerifyOptions& opts) {
    std::vector<CheckResult> out;
    auto append = [&out](std::vector<CheckResult> more) {
        out.insert(out.end(), std::make_move_iterator(more.begin()),
                   std::make_move_iterator(more.end()));
    };
    if (suite == Suite::quadratic || suite == Suite::all) append(verify_quadratic(opts));
    if (suite == Suite::cubic || suite == Suite::all) append(verify_cubic(opts));
    if (suite == Suite::biorthogonality || suite == Suite::all) append(verify_biorthogonality(opts));
    if (suite == Suite::infsup || suite == Suite::all) append(verify_inf_sup(opts));
    return out;
}

}  // namespace gradrec
