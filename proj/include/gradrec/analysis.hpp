#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gradrec/basis.hpp"
#include "gradrec/error.hpp"
#include "gradrec/function_spec.hpp"
#include "gradrec/mesh.hpp"
#include "gradrec/projection.hpp"
#include "gradrec/quadrature.hpp"

namespace gradrec {

/// Points per element for error norms.
inline constexpr std::size_t error_quadrature_points = 5;

namespace detail {

inline double squared_error(const FunctionSpec& spec, const NodalFunction& g, std::size_t first,
                            std::size_t last) {
    const Mesh& m = g.mesh();
    const auto rule = gauss_rule(error_quadrature_points);
    double sum = 0.0;
    for (std::size_t e = first; e < last; ++e) {
        const double left = m[e];
        const double h = m[e + 1] - left;
        const double g0 = g[e];
        const double g1 = g[e + 1];
        sum += integrate_element(
            [&](double x) {
                const double t = (x - left) / h;
                const double diff = spec.derivative(x) - ((1.0 - t) * g0 + t * g1);
                return diff * diff;
            },
            m, e, rule);
    }
    return sum;
}

}  // namespace detail

/// ||u' - g_h||_{L2(alpha, beta)}.
inline double error_l2(const FunctionSpec& spec, const NodalFunction& g) {
    spec.require_exact_derivative();
    return std::sqrt(detail::squared_error(spec, g, 0, g.mesh().elements()));
}

/// ||u' - g_h||_{L2(x_1, x_{n-1})}.
inline double error_l2_interior(const FunctionSpec& spec, const NodalFunction& g) {
    spec.require_exact_derivative();
    const std::size_t n = g.mesh().elements();
    if (n < 3) {
        throw Error(ErrorCode::too_coarse,
                    "interior norm needs at least 3 elements, got " + std::to_string(n));
    }
    return std::sqrt(detail::squared_error(spec, g, 1, n - 1));
}

enum class NodeSet { all, interior, endpoints };

/// max |g_i - u'(x_i)| over the selected nodes.
inline double error_max_nodal(const FunctionSpec& spec, const NodalFunction& g, NodeSet where) {
    spec.require_exact_derivative();
    const Mesh& m = g.mesh();
    const std::size_t n = m.elements();
    double worst = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const bool endpoint = i == 0 || i == n;
        if ((where == NodeSet::interior && endpoint) || (where == NodeSet::endpoints && !endpoint)) {
            continue;
        }
        worst = std::max(worst, std::abs(g[i] - spec.derivative(m[i])));
    }
    return worst;
}

// Closed-form error identities for polynomial data. Each returns the signed
// difference g_i - u'(.) so that it can be compared with or without abs().

/// Point at which the recovered gradient of a quadratic is exact: the
/// midpoint of the support of phi_i.
inline double x_tilde(const Mesh& m, std::size_t i) {
    detail::check_node_index(m, i);
    const std::size_t n = m.elements();
    if (i == 0) return 0.5 * (m[0] + m[1]);
    if (i == n) return 0.5 * (m[n - 1] + m[n]);
    return 0.5 * (m[i - 1] + m[i + 1]);
}

namespace detail {

// Neighbours (p, q) whose difference quotient defines g_i.
inline std::pair<double, double> stencil(const Mesh& m, std::size_t i) {
    check_node_index(m, i);
    const std::size_t n = m.elements();
    if (i == 0) return {m[0], m[1]};
    if (i == n) return {m[n - 1], m[n]};
    return {m[i - 1], m[i + 1]};
}

}  // namespace detail

/// g_i - u'(x_i) for u = a x^2 + b x + c.
inline double predicted_error_quadratic(double a, const Mesh& m, std::size_t i) {
    const auto [p, q] = detail::stencil(m, i);
    return a * (p + q - 2.0 * m[i]);
}

/// g_i - u'(x~_i) for u = a x^3 + b x^2 + c x + d.
inline double predicted_error_cubic_at_tilde(double a, const Mesh& m, std::size_t i) {
    const auto [p, q] = detail::stencil(m, i);
    return 0.25 * a * (p - q) * (p - q);
}

/// g_i - u'(x_i) for u = a x^3 + b x^2 + c x + d.
inline double predicted_error_cubic_at_node(double a, double b, const Mesh& m, std::size_t i) {
    const auto [p, q] = detail::stencil(m, i);
    const double x = m[i];
    return a * (p * p + p * q + q * q - 3.0 * x * x) + b * (p + q - 2.0 * x);
}

enum class Norm { l2, l2_interior, max_nodal, max_nodal_interior };

inline double error_norm(const FunctionSpec& spec, const NodalFunction& g, Norm norm) {
    switch (norm) {
        case Norm::l2: return error_l2(spec, g);
        case Norm::l2_interior: return error_l2_interior(spec, g);
        case Norm::max_nodal: return error_max_nodal(spec, g, NodeSet::all);
        case Norm::max_nodal_interior: return error_max_nodal(spec, g, NodeSet::interior);
    }
    return error_l2(spec, g);
}

struct ConvergenceRecord {
    std::size_t n = 0;
    double h = 0.0;
    double error = 0.0;
    std::optional<double> rate;
};

struct ConvergenceStudy {
    std::vector<ConvergenceRecord> records;
    /// Least-squares slope of log(error) against log(h) over all levels with
    /// a positive error; empty when fewer than two such levels exist.
    std::optional<double> slope;
};

/// Least-squares slope of log(y) against log(x); pairs with y <= 0 are skipped.
inline std::optional<double> log_log_slope(std::span<const double> x, std::span<const double> y) {
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t k = 0; k < x.size() && k < y.size(); ++k) {
        if (x[k] > 0.0 && y[k] > 0.0) {
            lx.push_back(std::log(x[k]));
            ly.push_back(std::log(y[k]));
        }
    }
    if (lx.size() < 2) return std::nullopt;
    const double count = static_cast<double>(lx.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        mx += lx[k];
        my += ly[k];
    }
    mx /= count;
    my /= count;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        sxy += (lx[k] - mx) * (ly[k] - my);
        sxx += (lx[k] - mx) * (lx[k] - mx);
    }
    if (sxx == 0.0) return std::nullopt;
    return sxy / sxx;
}

/// Refine through `levels`, recover the gradient on each mesh and measure
/// the error. Levels run concurrently; records come back in level order.
inline ConvergenceStudy convergence_study(const FunctionSpec& spec, const MeshFamily& family,
                                          std::span<const std::size_t> levels, Method method,
                                          Norm norm) {
    spec.require_exact_derivative();
    if (levels.empty()) {
        throw Error(ErrorCode::parse_error, "convergence study needs at least one level");
    }
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (levels[k] < 3) {
            throw Error(ErrorCode::too_coarse,
                        "study levels need n >= 3, got " + std::to_string(levels[k]));
        }
        if (k > 0 && levels[k] <= levels[k - 1]) {
            throw Error(ErrorCode::parse_error, "study levels must be strictly increasing");
        }
    }

    std::vector<std::future<ConvergenceRecord>> pending;
    pending.reserve(levels.size());
    for (const std::size_t n : levels) {
        pending.push_back(std::async(std::launch::async, [&spec, &family, n, method, norm] {
            const Mesh m = family.make(n);
            const auto g = recover(interpolate(spec, m), method);
            return ConvergenceRecord{n, mesh_size(m), error_norm(spec, g, norm), std::nullopt};
        }));
    }

    ConvergenceStudy study;
    for (auto& f : pending) {
        study.records.push_back(f.get());
    }
    std::vector<double> hs;
    std::vector<double> errors;
    for (std::size_t k = 0; k < study.records.size(); ++k) {
        auto& r = study.records[k];
        if (k > 0) {
            const auto& prev = study.records[k - 1];
            if (prev.error > 0.0 && r.error > 0.0) {
                r.rate = std::log(prev.error / r.error) / std::log(prev.h / r.h);
            }
        }
        hs.push_back(r.h);
        errors.push_back(r.error);
    }
    study.slope = log_log_slope(hs, errors);
    return study;
}

}  // namespace gradrec
