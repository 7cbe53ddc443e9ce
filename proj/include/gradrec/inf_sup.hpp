#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gradrec/basis.hpp"
#include "gradrec/error.hpp"
#include "gradrec/mesh.hpp"

namespace gradrec {

/// Largest element count accepted by the dense inf-sup estimate.
inline constexpr std::size_t inf_sup_max_elements = 512;

/// Gram matrix int phi_i phi_j dx of the hat basis.
inline Eigen::MatrixXd hat_gram_matrix(const Mesh& m) {
    const auto n = static_cast<Eigen::Index>(m.elements());
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (Eigen::Index e = 0; e < n; ++e) {
        const double h = m.element_length(static_cast<std::size_t>(e));
        g(e, e) += h / 3.0;
        g(e + 1, e + 1) += h / 3.0;
        g(e, e + 1) += h / 6.0;
        g(e + 1, e) += h / 6.0;
    }
    return g;
}

/// Gram matrix int lambda_i lambda_j dx of the dual basis. On each element
/// the local pair (2 - 3t, 3t - 1) has Gram matrix h [[1, -1/2], [-1/2, 1]].
inline Eigen::MatrixXd dual_gram_matrix(const Mesh& m) {
    const auto n = static_cast<Eigen::Index>(m.elements());
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (Eigen::Index e = 0; e < n; ++e) {
        const double h = m.element_length(static_cast<std::size_t>(e));
        g(e, e) += h;
        g(e + 1, e + 1) += h;
        g(e, e + 1) -= 0.5 * h;
        g(e + 1, e) -= 0.5 * h;
    }
    return g;
}

/// B_ij = int lambda_i phi_j dx (diagonal by biorthogonality).
inline Eigen::MatrixXd pairing_matrix(const Mesh& m) {
    const auto size = static_cast<Eigen::Index>(m.node_count());
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
        b(i, i) = pairing_integral(static_cast<std::size_t>(i), static_cast<std::size_t>(i), m);
    }
    return b;
}

struct JacobiOptions {
    double tolerance = 1e-12;
    int max_sweeps = 100;
};

/**
 * Eigenvalues of a symmetric matrix by the cyclic Jacobi method, ascending.
 *
 * Sweeps stop once the off-diagonal Frobenius norm falls below
 * tolerance * ||A||_F; exceeding max_sweeps raises no-convergence.
 */
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a, const JacobiOptions& opts = {}) {
    const Eigen::Index n = a.rows();
    const double scale = a.norm();
    auto off_norm = [&] {
        double s = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = 0; q < n; ++q)
                if (p != q) s += a(p, q) * a(p, q);
        return std::sqrt(s);
    };

    int sweep = 0;
    while (off_norm() > opts.tolerance * scale) {
        if (++sweep > opts.max_sweeps) {
            throw Error(ErrorCode::no_convergence,
                        "Jacobi eigensolver did not converge in " +
                            std::to_string(opts.max_sweeps) + " sweeps");
        }
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (Eigen::Index r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a(r, p);
                    const double arq = a(r, q);
                    a(r, p) = arp - s * (arq + tau * arp);
                    a(r, q) = arq + s * (arp - tau * arq);
                    a(p, r) = a(r, p);
                    a(q, r) = a(r, q);
                }
            }
        }
    }

    std::vector<double> eig(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

/**
 * Discrete inf-sup constant of the pairing between V_h and the dual space:
 *
 *   min_{phi in V_h} sup_{mu in M_h} (mu, phi) / (||mu|| ||phi||)
 *
 * i.e. the square root of the smallest eigenvalue of
 * M_V^{-1} B^T M_M^{-1} B, computed on the congruent symmetric matrix
 * L^{-1} B^T M_M^{-1} B L^{-T} with M_V = L L^T.
 */
inline double estimate_inf_sup(const Mesh& m) {
    if (m.elements() > inf_sup_max_elements) {
        throw Error(ErrorCode::too_large, "inf-sup estimate is dense; n must be <= " +
                                              std::to_string(inf_sup_max_elements) + ", got " +
                                              std::to_string(m.elements()));
    }
    const Eigen::MatrixXd b = pairing_matrix(m);
    const Eigen::LLT<Eigen::MatrixXd> hat_chol(hat_gram_matrix(m));
    const Eigen::LLT<Eigen::MatrixXd> dual_chol(dual_gram_matrix(m));
    if (hat_chol.info() != Eigen::Success || dual_chol.info() != Eigen::Success) {
        throw Error(ErrorCode::singular_system, "Gram matrix is not positive definite");
    }

    Eigen::MatrixXd s = b.transpose() * dual_chol.solve(b);
    s = 0.5 * (s + s.transpose()).eval();
    const auto lower = hat_chol.matrixL();
    const Eigen::MatrixXd left = lower.solve(s);
    Eigen::MatrixXd c = lower.solve(left.transpose()).transpose();
    c = 0.5 * (c + c.transpose()).eval();

    const auto eig = jacobi_eigenvalues(std::move(c));
    return std::sqrt(std::max(eig.front(), 0.0));
}

}  // namespace gradrec
