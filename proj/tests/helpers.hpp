#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <pursuit/pursuit.hpp>

namespace fixtures {

// Unit equilateral cell with the evader at the centroid; pursuers are the
// exact edge reflections (doubles rounded from 30-digit values).
inline pursuit::PlayerSet equilateral() {
  pursuit::PlayerSet ps;
  ps.evader = {0.5, 0.28867513459481287};
  ps.pursuers = {{{0.5, -0.28867513459481287},
                  {1.0, 0.57735026918962576},
                  {0.0, 0.57735026918962576}}};
  return ps;
}

inline std::array<pursuit::Point, 3> equilateral_cell_vertices() {
  return {{{0.0, 0.0}, {0.5, 0.8660254037844386}, {1.0, 0.0}}};
}

// 3-4-5 right-triangle cell (legs on x = 4 and y = 0), evader at (3, 1/2).
// All pursuer coordinates are exact reflections with terminating decimals.
inline pursuit::PlayerSet right345() {
  pursuit::PlayerSet ps;
  ps.evader = {3.0, 0.5};
  ps.pursuers = {{{5.0, 0.5}, {3.0, -0.5}, {1.32, 2.74}}};
  return ps;
}

inline constexpr double kRight345MD = 53.0 / 12.0;
inline constexpr double kRight345B = 4.0331595378547775;
inline constexpr double kRight345Phi1 = 0.6435011087932844;  // atan2(3, 4)
inline constexpr double kRight345Phi2 = 0.9272952180016122;  // atan2(4, 3)

}  // namespace fixtures

namespace testutil {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

inline bool near(pursuit::Point a, pursuit::Point b, double tol) {
  return pursuit::dist(a, b) <= tol;
}

// Sum of distances between matching labeled vertices.
inline double vertex_gap(const pursuit::VoronoiCell& a, const pursuit::VoronoiCell& b) {
  return pursuit::dist(a.V1, b.V1) + pursuit::dist(a.V2, b.V2) + pursuit::dist(a.V3, b.V3);
}

}  // namespace testutil
