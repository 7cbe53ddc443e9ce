#pragma once

#include <cstddef>
#include <string>

#include "gradrec/error.hpp"
#include "gradrec/mesh.hpp"

namespace gradrec {

namespace detail {

inline void check_node_index(const Mesh& m, std::size_t i) {
    if (i > m.elements()) {
        throw Error(ErrorCode::index_out_of_range, "node index " + std::to_string(i) +
                                                       " outside 0.." +
                                                       std::to_string(m.elements()));
    }
}

inline void check_element_index(const Mesh& m, std::size_t e) {
    if (e >= m.elements()) {
        throw Error(ErrorCode::index_out_of_range, "element index " + std::to_string(e) +
                                                       " outside 0.." +
                                                       std::to_string(m.elements() - 1));
    }
}

}  // namespace detail

/// Standard piecewise-linear hat functions phi_0..phi_n spanning V_h.
class HatBasis {
public:
    explicit HatBasis(const Mesh& mesh) : mesh_(mesh) {}

    const Mesh& mesh() const noexcept { return mesh_; }

    double eval(std::size_t i, double x) const {
        detail::check_node_index(mesh_, i);
        return eval_local(i, mesh_.locate(x), x);
    }

    /// phi_i restricted to element e (its affine piece there, zero if e is
    /// outside the support).
    double eval_local(std::size_t i, std::size_t e, double x) const {
        detail::check_node_index(mesh_, i);
        detail::check_element_index(mesh_, e);
        const double h = mesh_[e + 1] - mesh_[e];
        if (i == e) return (mesh_[e + 1] - x) / h;
        if (i == e + 1) return (x - mesh_[e]) / h;
        return 0.0;
    }

    /// phi_i on element e in the local coordinate t = (x - x_e) / h_e.
    double eval_reference(std::size_t i, std::size_t e, double t) const {
        detail::check_node_index(mesh_, i);
        detail::check_element_index(mesh_, e);
        if (i == e) return 1.0 - t;
        if (i == e + 1) return t;
        return 0.0;
    }

    /// d(phi_i)/dx, taken from the element owning x.
    double derivative(std::size_t i, double x) const {
        detail::check_node_index(mesh_, i);
        const std::size_t e = mesh_.locate(x);
        const double h = mesh_[e + 1] - mesh_[e];
        if (i == e) return -1.0 / h;
        if (i == e + 1) return 1.0 / h;
        return 0.0;
    }

private:
    const Mesh& mesh_;
};

/**
 * Dual basis lambda_0..lambda_n, biorthogonal to the hat functions:
 * int lambda_i phi_j dx = c_j delta_ij with c_j > 0.
 *
 * On element [x_e, x_{e+1}] with local coordinate t = (x - x_e) / h_e the
 * two nonzero members are lambda_e = 2 - 3t and lambda_{e+1} = 3t - 1, so
 * lambda_i is discontinuous at the outer ends of its support. eval() uses
 * the element that owns x (left-endpoint convention); eval_local() gives the
 * one-sided value from a chosen element.
 */
class DualBasis {
public:
    explicit DualBasis(const Mesh& mesh) : mesh_(mesh) {}

    const Mesh& mesh() const noexcept { return mesh_; }

    double eval(std::size_t i, double x) const {
        detail::check_node_index(mesh_, i);
        return eval_local(i, mesh_.locate(x), x);
    }

    double eval_local(std::size_t i, std::size_t e, double x) const {
        detail::check_node_index(mesh_, i);
        detail::check_element_index(mesh_, e);
        const double left = mesh_[e];
        const double right = mesh_[e + 1];
        if (i == e) return (2.0 * (x - right) + (x - left)) / (left - right);
        if (i == e + 1) return (2.0 * (x - left) + (x - right)) / (right - left);
        return 0.0;
    }

    /// lambda_i on element e in the local coordinate t = (x - x_e) / h_e.
    /// Prefer this to eval_local() on small elements far from the origin,
    /// where x - x_e cancels.
    double eval_reference(std::size_t i, std::size_t e, double t) const {
        detail::check_node_index(mesh_, i);
        detail::check_element_index(mesh_, e);
        if (i == e) return 2.0 - 3.0 * t;
        if (i == e + 1) return 3.0 * t - 1.0;
        return 0.0;
    }

private:
    const Mesh& mesh_;
};

/// c_i = int lambda_i phi_i dx: half the length of the support of phi_i.
inline double dual_weight(std::size_t i, const Mesh& m) {
    detail::check_node_index(m, i);
    const std::size_t n = m.elements();
    if (i == 0) return 0.5 * (m[1] - m[0]);
    if (i == n) return 0.5 * (m[n] - m[n - 1]);
    return 0.5 * (m[i + 1] - m[i - 1]);
}

/// int lambda_i phi_j dx in closed form.
inline double pairing_integral(std::size_t i, std::size_t j, const Mesh& m) {
    detail::check_node_index(m, i);
    detail::check_node_index(m, j);
    return i == j ? dual_weight(i, m) : 0.0;
}

}  // namespace gradrec
