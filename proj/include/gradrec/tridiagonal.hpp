#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gradrec/error.hpp"

namespace gradrec {

/// Three-band matrix of order N: sub[k] = A(k+1, k), super[k] = A(k, k+1).
struct TridiagonalMatrix {
    std::vector<double> sub;
    std::vector<double> diag;
    std::vector<double> super;

    std::size_t size() const noexcept { return diag.size(); }

    bool is_symmetric() const { return sub == super; }

    /// |diag_k| > |off-diagonal row sum| on every row.
    bool is_strictly_diagonally_dominant() const {
        const std::size_t n = size();
        for (std::size_t k = 0; k < n; ++k) {
            double off = 0.0;
            if (k > 0) off += std::abs(sub[k - 1]);
            if (k + 1 < n) off += std::abs(super[k]);
            if (!(std::abs(diag[k]) > off)) return false;
        }
        return true;
    }

    std::vector<double> multiply(std::span<const double> x) const {
        const std::size_t n = size();
        std::vector<double> y(n);
        for (std::size_t k = 0; k < n; ++k) {
            double s = diag[k] * x[k];
            if (k > 0) s += sub[k - 1] * x[k - 1];
            if (k + 1 < n) s += super[k] * x[k + 1];
            y[k] = s;
        }
        return y;
    }
};

/// Thomas algorithm (no pivoting). Stable for diagonally dominant systems;
/// a vanishing pivot raises singular-system.
inline std::vector<double> solve_thomas(const TridiagonalMatrix& a, std::span<const double> rhs) {
    const std::size_t n = a.size();
    if (n == 0 || rhs.size() != n || a.sub.size() + 1 != n || a.super.size() + 1 != n) {
        throw Error(ErrorCode::singular_system, "tridiagonal system has inconsistent band sizes");
    }
    std::vector<double> c(n, 0.0);
    std::vector<double> d(n, 0.0);

    double pivot = a.diag[0];
    if (pivot == 0.0 || !std::isfinite(pivot)) {
        throw Error(ErrorCode::singular_system, "zero pivot in row 0");
    }
    if (n > 1) c[0] = a.super[0] / pivot;
    d[0] = rhs[0] / pivot;
    for (std::size_t k = 1; k < n; ++k) {
        pivot = a.diag[k] - a.sub[k - 1] * c[k - 1];
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            throw Error(ErrorCode::singular_system, "zero pivot in row " + std::to_string(k));
        }
        if (k + 1 < n) c[k] = a.super[k] / pivot;
        d[k] = (rhs[k] - a.sub[k - 1] * d[k - 1]) / pivot;
    }

    std::vector<double> x(n);
    x[n - 1] = d[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) {
        x[k] = d[k] - c[k] * x[k + 1];
    }
    return x;
}

}  // namespace gradrec
