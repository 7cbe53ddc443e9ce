#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "gradrec/error.hpp"
#include "gradrec/mesh.hpp"

namespace gradrec {

/// Gauss-Legendre rule on the reference interval [-1, 1]. A p-point rule
/// integrates polynomials of degree 2p-1 exactly.
struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;

    std::size_t order() const noexcept { return points.size(); }
};

namespace detail {

struct GaussTable {
    std::array<double, 10> points;
    std::array<double, 10> weights;
};

// Nodes and weights to 20 significant digits, ascending abscissae.
inline constexpr std::array<GaussTable, 10> gauss_tables{{
    {{0.0}, {2.0}},
    {{-0.57735026918962576451, 0.57735026918962576451}, {1.0, 1.0}},
    {{-0.77459666924148337704, 0.0, 0.77459666924148337704},
     {0.55555555555555555556, 0.88888888888888888889, 0.55555555555555555556}},
    {{-0.86113631159405257522, -0.33998104358485626480, 0.33998104358485626480,
      0.86113631159405257522},
     {0.34785484513745385737, 0.65214515486254614263, 0.65214515486254614263,
      0.34785484513745385737}},
    {{-0.90617984593866399280, -0.53846931010568309104, 0.0, 0.53846931010568309104,
      0.90617984593866399280},
     {0.23692688505618908751, 0.47862867049936646804, 0.56888888888888888889,
      0.47862867049936646804, 0.23692688505618908751}},
    {{-0.93246951420315202781, -0.66120938646626451366, -0.23861918608319690863,
      0.23861918608319690863, 0.66120938646626451366, 0.93246951420315202781},
     {0.17132449237917034504, 0.36076157304813860757, 0.46791393457269104739,
      0.46791393457269104739, 0.36076157304813860757, 0.17132449237917034504}},
    {{-0.94910791234275852453, -0.74153118559939443986, -0.40584515137739716691, 0.0,
      0.40584515137739716691, 0.74153118559939443986, 0.94910791234275852453},
     {0.12948496616886969327, 0.27970539148927666790, 0.38183005050511894495,
      0.41795918367346938776, 0.38183005050511894495, 0.27970539148927666790,
      0.12948496616886969327}},
    {{-0.96028985649753623168, -0.79666647741362673959, -0.52553240991632898582,
      -0.18343464249564980494, 0.18343464249564980494, 0.52553240991632898582,
      0.79666647741362673959, 0.96028985649753623168},
     {0.10122853629037625915, 0.22238103445337447054, 0.31370664587788728734,
      0.36268378337836198297, 0.36268378337836198297, 0.31370664587788728734,
      0.22238103445337447054, 0.10122853629037625915}},
    {{-0.96816023950762608984, -0.83603110732663579430, -0.61337143270059039731,
      -0.32425342340380892904, 0.0, 0.32425342340380892904, 0.61337143270059039731,
      0.83603110732663579430, 0.96816023950762608984},
     {0.081274388361574411972, 0.18064816069485740406, 0.26061069640293546232,
      0.31234707704000284007, 0.33023935500125976316, 0.31234707704000284007,
      0.26061069640293546232, 0.18064816069485740406, 0.081274388361574411972}},
    {{-0.97390652851717172008, -0.86506336668898451073, -0.67940956829902440623,
      -0.43339539412924719080, -0.14887433898163121088, 0.14887433898163121088,
      0.43339539412924719080, 0.67940956829902440623, 0.86506336668898451073,
      0.97390652851717172008},
     {0.066671344308688137594, 0.14945134915058059315, 0.21908636251598204400,
      0.26926671930999635509, 0.29552422471475287017, 0.29552422471475287017,
      0.26926671930999635509, 0.21908636251598204400, 0.14945134915058059315,
      0.066671344308688137594}},
}};

}  // namespace detail

inline QuadratureRule gauss_rule(std::size_t p) {
    if (p < 1 || p > detail::gauss_tables.size()) {
        throw Error(ErrorCode::unsupported_order,
                    "Gauss-Legendre rules exist for 1..10 points, requested " + std::to_string(p));
    }
    const auto& table = detail::gauss_tables[p - 1];
    return QuadratureRule{{table.points.begin(), table.points.begin() + static_cast<std::ptrdiff_t>(p)},
                          {table.weights.begin(), table.weights.begin() + static_cast<std::ptrdiff_t>(p)}};
}

/// Integral of f over element e of m.
template <typename F>
double integrate_element(F&& f, const Mesh& m, std::size_t e, const QuadratureRule& rule) {
    const double a = m[e];
    const double half = 0.5 * (m[e + 1] - a);
    const double mid = a + half;
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.order(); ++q) {
        sum += rule.weights[q] * f(mid + half * rule.points[q]);
    }
    return half * sum;
}

/// Sum of element integrals over elements [first, last).
template <typename F>
double integrate_elements(F&& f, const Mesh& m, const QuadratureRule& rule, std::size_t first,
                          std::size_t last) {
    double sum = 0.0;
    for (std::size_t e = first; e < last; ++e) {
        sum += integrate_element(f, m, e, rule);
    }
    return sum;
}

template <typename F>
double integrate(F&& f, const Mesh& m, const QuadratureRule& rule) {
    return integrate_elements(f, m, rule, 0, m.elements());
}

/// Integral over the interior subdomain (x_1, x_{n-1}), i.e. elements 1..n-2.
template <typename F>
double integrate_interior(F&& f, const Mesh& m, const QuadratureRule& rule) {
    if (m.elements() < 3) {
        throw Error(ErrorCode::too_coarse, "interior subdomain needs at least 3 elements, got " +
                                               std::to_string(m.elements()));
    }
    return integrate_elements(f, m, rule, 1, m.elements() - 1);
}

}  // namespace gradrec
