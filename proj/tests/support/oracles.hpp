#pragma once

// Independent reference computations for tests. Nothing here calls the
// library routine it is used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gradrec/basis.hpp"
#include "gradrec/mesh.hpp"

namespace gradrec::oracle {

/// Dense row-major square matrix.
struct Dense {
    std::size_t n = 0;
    std::vector<double> a;

    explicit Dense(std::size_t size) : n(size), a(size * size, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

/// Gaussian elimination with partial pivoting.
inline std::vector<double> solve_dense(Dense m, std::vector<double> b) {
    const std::size_t n = m.n;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(m(r, k)) > std::abs(m(piv, k))) piv = r;
        }
        if (m(piv, k) == 0.0) throw std::runtime_error("singular dense system");
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(piv, c));
            std::swap(b[k], b[piv]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = m(r, k) / m(k, k);
            for (std::size_t c = k; c < n; ++c) m(r, c) -= f * m(k, c);
            b[r] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t c = k + 1; c < n; ++c) s -= m(k, c) * x[c];
        x[k] = s / m(k, k);
    }
    return x;
}

// Hand-coded 2-point Gauss rule on [a, b].
template <typename F>
double gauss2(F&& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = a + half;
    const double r = half / std::sqrt(3.0);
    return half * (f(mid - r) + f(mid + r));
}

inline double hat(const Mesh& m, std::size_t i, double x) {
    const std::size_t n = m.elements();
    if (i > 0 && x >= m[i - 1] && x <= m[i]) return (x - m[i - 1]) / (m[i] - m[i - 1]);
    if (i < n && x >= m[i] && x <= m[i + 1]) return (m[i + 1] - x) / (m[i + 1] - m[i]);
    return 0.0;
}

/// Orthogonal projection of du_h/dx by dense assembly: M_ij = int phi_i phi_j,
/// f_j = int (du_h/dx) phi_j, both by per-element quadrature over the
/// whole mesh, then dense elimination.
inline std::vector<double> orthogonal_projection_dense(const Mesh& m, const std::vector<double>& u) {
    const std::size_t size = m.node_count();
    Dense mass(size);
    std::vector<double> rhs(size, 0.0);
    for (std::size_t e = 0; e < m.elements(); ++e) {
        const double a = m[e];
        const double b = m[e + 1];
        const double slope = (u[e + 1] - u[e]) / (b - a);
        for (std::size_t i = 0; i < size; ++i) {
            rhs[i] += gauss2([&](double x) { return slope * hat(m, i, x); }, a, b);
            for (std::size_t j = 0; j < size; ++j) {
                mass(i, j) += gauss2([&](double x) { return hat(m, i, x) * hat(m, j, x); }, a, b);
            }
        }
    }
    return solve_dense(std::move(mass), std::move(rhs));
}

/// int lambda_i phi_j over the whole mesh by brute-force quadrature, one
/// element at a time on [0, 1] scaled by h_e.
inline double pairing_by_quadrature(const Mesh& m, std::size_t i, std::size_t j) {
    const DualBasis duals(m);
    const HatBasis hats(m);
    double s = 0.0;
    for (std::size_t e = 0; e < m.elements(); ++e) {
        s += m.element_length(e) *
             gauss2([&](double t) { return duals.eval_reference(i, e, t) * hats.eval_reference(j, e, t); }, 0.0, 1.0);
    }
    return s;
}

/// Max |a_k - b_k| / max(max|b_k|, floor).
inline double relative_max_diff(const std::vector<double>& a, const std::vector<double>& b,
                                double floor = 1e-300) {
    double diff = 0.0;
    double scale = floor;
    for (std::size_t k = 0; k < a.size(); ++k) {
        diff = std::max(diff, std::abs(a[k] - b[k]));
        scale = std::max(scale, std::abs(b[k]));
    }
    return diff / scale;
}

}  // namespace gradrec::oracle
