#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gradrec/basis.hpp"
#include "gradrec/error.hpp"
#include "gradrec/function_spec.hpp"
#include "gradrec/mesh.hpp"
#include "gradrec/tridiagonal.hpp"

namespace gradrec {

/// Element sum_i values[i] phi_i of V_h. Holds both interpolants I_h u and
/// recovered gradients g_h.
class NodalFunction {
public:
    NodalFunction(Mesh mesh, std::vector<double> values)
        : mesh_(std::move(mesh)), values_(std::move(values)) {
        if (values_.size() != mesh_.node_count()) {
            throw Error(ErrorCode::node_mismatch, "nodal function has " +
                                                      std::to_string(values_.size()) +
                                                      " values for " +
                                                      std::to_string(mesh_.node_count()) +
                                                      " nodes");
        }
    }

    const Mesh& mesh() const noexcept { return mesh_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }

    /// Piecewise-linear evaluation sum_i values[i] phi_i(x).
    double operator()(double x) const {
        const std::size_t e = mesh_.locate(x);
        const double t = (x - mesh_[e]) / (mesh_[e + 1] - mesh_[e]);
        return (1.0 - t) * values_[e] + t * values_[e + 1];
    }

    /// Constant slope of the interpolant on element e.
    double slope(std::size_t e) const {
        return (values_.at(e + 1) - values_.at(e)) / mesh_.element_length(e);
    }

private:
    Mesh mesh_;
    std::vector<double> values_;
};

/// I_h u: nodal values of u. Sampled input must list exactly the mesh nodes.
inline NodalFunction interpolate(const FunctionSpec& spec, const Mesh& m) {
    if (const auto* s = std::get_if<Sampled>(&spec.kind())) {
        if (s->x.size() != m.node_count()) {
            throw Error(ErrorCode::node_mismatch, "sample table has " + std::to_string(s->x.size()) +
                                                      " rows, mesh has " +
                                                      std::to_string(m.node_count()) + " nodes");
        }
        for (std::size_t i = 0; i < m.node_count(); ++i) {
            if (std::abs(s->x[i] - m[i]) > sample_match_tolerance) {
                throw Error(ErrorCode::node_mismatch, "sample row " + std::to_string(i) +
                                                          " does not match node x = " +
                                                          std::to_string(m[i]));
            }
        }
        return NodalFunction(m, s->u);
    }
    std::vector<double> u(m.node_count());
    for (std::size_t i = 0; i < m.node_count(); ++i) {
        u[i] = spec.value(m[i]);
    }
    return NodalFunction(m, std::move(u));
}

/// Evaluate a recovered gradient field at x.
inline double eval_recovered(const NodalFunction& g, double x) { return g(x); }

/**
 * Load vector f_j = int (du_h/dx) lambda_j dx.
 *
 * du_h/dx is constant on each element and lambda_j integrates to h_e / 2 on
 * both elements of its support, so f_j = (u_{j+1} - u_{j-1}) / 2 with the
 * one-sided versions at the ends. The same vector is the right-hand side
 * of the orthogonal projection, since int phi_j over an element is also h_e / 2.
 */
inline std::vector<double> load_vector(const NodalFunction& u) {
    const Mesh& m = u.mesh();
    const std::size_t n = m.elements();
    std::vector<double> f(n + 1);
    f[0] = 0.5 * (u[1] - u[0]);
    for (std::size_t i = 1; i < n; ++i) {
        f[i] = 0.5 * (u[i + 1] - u[i - 1]);
    }
    f[n] = 0.5 * (u[n] - u[n - 1]);
    return f;
}

/// Q_h(du_h/dx) from the closed form: centred differences at interior nodes,
/// one-sided differences at the two ends.
inline NodalFunction recover_oblique(const NodalFunction& u) {
    const Mesh& m = u.mesh();
    const std::size_t n = m.elements();
    std::vector<double> g(n + 1);
    g[0] = (u[1] - u[0]) / (m[1] - m[0]);
    for (std::size_t i = 1; i < n; ++i) {
        g[i] = (u[i + 1] - u[i - 1]) / (m[i + 1] - m[i - 1]);
    }
    g[n] = (u[n] - u[n - 1]) / (m[n] - m[n - 1]);
    return NodalFunction(m, std::move(g));
}

/// Q_h(du_h/dx) as g = D^{-1} f with D_ii = int phi_i lambda_i dx.
inline NodalFunction recover_oblique_assembled(const NodalFunction& u) {
    const Mesh& m = u.mesh();
    auto g = load_vector(u);
    for (std::size_t i = 0; i < g.size(); ++i) {
        g[i] /= pairing_integral(i, i, m);
    }
    return NodalFunction(m, std::move(g));
}

/// Consistent mass matrix M_ij = int phi_i phi_j dx of the hat basis.
inline TridiagonalMatrix mass_matrix(const Mesh& m) {
    const std::size_t n = m.elements();
    TridiagonalMatrix a{std::vector<double>(n), std::vector<double>(n + 1, 0.0),
                        std::vector<double>(n)};
    for (std::size_t e = 0; e < n; ++e) {
        const double h = m.element_length(e);
        a.diag[e] += h / 3.0;
        a.diag[e + 1] += h / 3.0;
        a.sub[e] = h / 6.0;
        a.super[e] = h / 6.0;
    }
    return a;
}

/// P_h(du_h/dx): L2-orthogonal projection, M g = f solved by the Thomas algorithm.
inline NodalFunction recover_orthogonal(const NodalFunction& u) {
    const Mesh& m = u.mesh();
    const auto f = load_vector(u);
    return NodalFunction(m, solve_thomas(mass_matrix(m), f));
}

enum class Method { oblique, orthogonal };

inline NodalFunction recover(const NodalFunction& u, Method method) {
    return method == Method::oblique ? recover_oblique(u) : recover_orthogonal(u);
}

}  // namespace gradrec
