#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gradrec/error.hpp"
#include "gradrec/rng.hpp"

namespace gradrec {

/**
 * Partition alpha = x_0 < x_1 < ... < x_n = beta of a bounded interval.
 *
 * Nodes are indexed 0..n and element e is [x_e, x_{e+1}). The last element
 * is closed on the right so that every point of [alpha, beta] belongs to
 * exactly one element. At least two elements are required so that the
 * mesh has an interior node.
 */
class Mesh {
public:
    explicit Mesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
        if (nodes_.size() < 3) {
            throw Error(ErrorCode::too_coarse, "mesh needs at least 2 elements, got " +
                                                   std::to_string(nodes_.size() ? nodes_.size() - 1 : 0));
        }
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (!std::isfinite(nodes_[i])) {
                throw Error(ErrorCode::invalid_mesh, "non-finite node at index " + std::to_string(i));
            }
            if (i > 0 && !(nodes_[i] > nodes_[i - 1])) {
                throw Error(ErrorCode::invalid_mesh,
                            "nodes not strictly increasing at index " + std::to_string(i));
            }
        }
    }

    /// Element count n.
    std::size_t elements() const noexcept { return nodes_.size() - 1; }
    std::size_t node_count() const noexcept { return nodes_.size(); }

    double alpha() const noexcept { return nodes_.front(); }
    double beta() const noexcept { return nodes_.back(); }
    double length() const noexcept { return beta() - alpha(); }

    double node(std::size_t i) const { return nodes_.at(i); }
    double operator[](std::size_t i) const noexcept { return nodes_[i]; }
    std::span<const double> nodes() const noexcept { return nodes_; }

    /// h_e = x_{e+1} - x_e.
    double element_length(std::size_t e) const { return nodes_.at(e + 1) - nodes_.at(e); }

    bool contains(double x) const noexcept { return x >= alpha() && x <= beta(); }

    /// Element owning x under the left-endpoint convention; beta maps to the
    /// last element.
    std::size_t locate(double x) const {
        if (!contains(x)) {
            throw Error(ErrorCode::out_of_domain, "point " + std::to_string(x) + " outside [" +
                                                      std::to_string(alpha()) + ", " +
                                                      std::to_string(beta()) + "]");
        }
        const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
        const auto e = static_cast<std::size_t>(it - nodes_.begin());
        return e == 0 ? 0 : std::min(e - 1, elements() - 1);
    }

    friend bool operator==(const Mesh&, const Mesh&) = default;

private:
    std::vector<double> nodes_;
};

namespace detail {

inline void check_interval(double alpha, double beta) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !(beta > alpha)) {
        throw Error(ErrorCode::invalid_interval, "interval requires alpha < beta, got (" +
                                                     std::to_string(alpha) + ", " +
                                                     std::to_string(beta) + ")");
    }
}

inline void check_elements(std::size_t n) {
    if (n < 2) {
        throw Error(ErrorCode::too_coarse, "need at least 2 elements, got " + std::to_string(n));
    }
}

// x_i = alpha + (beta - alpha) * map(i / n), endpoints pinned exactly.
template <typename Map>
std::vector<double> mapped_nodes(double alpha, double beta, std::size_t n, Map&& map) {
    std::vector<double> x(n + 1);
    const double len = beta - alpha;
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n);
        x[i] = alpha + len * map(t);
    }
    x.front() = alpha;
    x.back() = beta;
    return x;
}

}  // namespace detail

inline Mesh uniform(double alpha, double beta, std::size_t n) {
    detail::check_interval(alpha, beta);
    detail::check_elements(n);
    return Mesh(detail::mapped_nodes(alpha, beta, n, [](double t) { return t; }));
}

/// Smoothly graded mesh through t -> t + delta sin(pi t) / pi. The map has
/// derivative 1 + delta cos(pi t) > 0, so neighbouring element lengths differ
/// by O(h^2).
inline Mesh graded(double alpha, double beta, std::size_t n, double delta) {
    detail::check_interval(alpha, beta);
    detail::check_elements(n);
    if (!(delta >= 0.0 && delta < std::numbers::inv_pi)) {
        throw Error(ErrorCode::invalid_delta,
                    "grading amplitude must lie in [0, 1/pi), got " + std::to_string(delta));
    }
    return Mesh(detail::mapped_nodes(alpha, beta, n, [delta](double t) {
        return t + delta * std::sin(std::numbers::pi * t) / std::numbers::pi;
    }));
}

/// Uniform mesh with each interior node shifted by rho * h * eta_i,
/// eta_i ~ U[-1, 1). Neighbouring element lengths differ by O(h).
inline Mesh perturbed(double alpha, double beta, std::size_t n, double rho, std::uint64_t seed) {
    detail::check_interval(alpha, beta);
    detail::check_elements(n);
    if (!(rho >= 0.0 && rho < 0.5)) {
        throw Error(ErrorCode::invalid_rho,
                    "perturbation fraction must lie in [0, 0.5), got " + std::to_string(rho));
    }
    auto x = detail::mapped_nodes(alpha, beta, n, [](double t) { return t; });
    const double h = (beta - alpha) / static_cast<double>(n);
    Rng rng(seed);
    for (std::size_t i = 1; i < n; ++i) {
        x[i] += rho * h * rng.uniform(-1.0, 1.0);
    }
    return Mesh(std::move(x));
}

/// Random non-uniform mesh: element lengths drawn from U[0.5, 1.5) and
/// rescaled to the interval, so neighbouring lengths differ by at most 3x.
inline Mesh random_mesh(double alpha, double beta, std::size_t n, Rng& rng) {
    detail::check_interval(alpha, beta);
    detail::check_elements(n);
    std::vector<double> cumulative(n + 1, 0.0);
    for (std::size_t e = 0; e < n; ++e) {
        cumulative[e + 1] = cumulative[e] + rng.uniform(0.5, 1.5);
    }
    const double total = cumulative.back();
    std::vector<double> x(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        x[i] = alpha + (beta - alpha) * (cumulative[i] / total);
    }
    x.front() = alpha;
    x.back() = beta;
    return Mesh(std::move(x));
}

/// h = max_e h_e.
inline double mesh_size(const Mesh& m) {
    double h = 0.0;
    for (std::size_t e = 0; e < m.elements(); ++e) {
        h = std::max(h, m.element_length(e));
    }
    return h;
}

/// max_e |h_{e+1} - h_e|, the quantity the superconvergence hypothesis bounds.
inline double max_spacing_jump(const Mesh& m) {
    double jump = 0.0;
    for (std::size_t e = 0; e + 1 < m.elements(); ++e) {
        jump = std::max(jump, std::abs(m.element_length(e + 1) - m.element_length(e)));
    }
    return jump;
}

/// A refinement family: everything needed to build a mesh except n.
struct MeshFamily {
    enum class Kind { uniform, graded, perturbed };

    Kind kind = Kind::uniform;
    double alpha = 0.0;
    double beta = 1.0;
    double delta = 0.0;
    double rho = 0.0;
    std::uint64_t seed = 1;

    Mesh make(std::size_t n) const {
        switch (kind) {
            case Kind::uniform: return uniform(alpha, beta, n);
            case Kind::graded: return graded(alpha, beta, n, delta);
            case Kind::perturbed: return perturbed(alpha, beta, n, rho, seed);
        }
        return uniform(alpha, beta, n);
    }
};

}  // namespace gradrec
