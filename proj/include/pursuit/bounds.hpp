#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "pursuit/geometry.hpp"

namespace pursuit {

// Guaranteed evader survival time under the anchor-chord strategy: the length
// of the polyline S -> Q -> V1 traversed at unit speed (the two chord legs
// plus the edge-m leg; the legwise travel order is E->Q, Q->V1, then back
// along the chord direction).
inline double game_length_MD(const PlayerSet& ps) {
  const VoronoiCell cell = voronoi_cell(ps);
  const AnchorPoints a = anchor_points(cell, ps.evader);
  return dist(a.S, a.Q) + dist(a.Q, cell.V1);
}

// Largest over cell vertices of (distance from assigned pursuer + distance
// from evader) / 2: no strategy of the pursuers can force capture sooner.
// Returns the bound and the 1-based index of the maximizing vertex (first
// maximum wins on ties).
inline std::pair<double, int> lower_bound_B(const PlayerSet& ps) {
  const VoronoiCell cell = voronoi_cell(ps);
  const std::array<Point, 3> V = cell.vertices();
  double best = -1.0;
  int arg = 0;
  for (int i = 0; i < 3; ++i) {
    const Point p = ps.pursuers[cell.pursuer_assignment[i]];
    const double cand = 0.5 * (dist(V[i], p) + dist(V[i], ps.evader));
    if (cand > best) {
      best = cand;
      arg = i + 1;
    }
  }
  return {best, arg};
}

// Guarantee level of the direction set {u_i}: the largest g such that some
// unit heading p keeps min-max projection max_i dot(p, u_i) <= -g... stated
// positively, delta0 = min over unit p of max_i dot(p, u_i). The minimum is
// attained either opposite one direction or opposite an angular-gap bisector,
// so checking -u_i and -unit(u_i + u_j) is exact. May be negative when the
// directions leave an open half-plane uncovered.
inline double delta0_of_directions(const std::array<Vec2, 3>& u) {
  double best = std::numeric_limits<double>::infinity();
  const auto consider = [&](Vec2 p) {
    const double worst = std::max({dot(p, u[0]), dot(p, u[1]), dot(p, u[2])});
    best = std::min(best, worst);
  };
  for (int i = 0; i < 3; ++i) consider(-unit(u[i]));
  // Two-constraint ties sit on the bisector line of a pair, on either side:
  // fleeing opposite a tight cluster uses the far bisector, while slipping
  // through the widest gap between two directions uses the near one.
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const Vec2 sum = unit(u[i]) + unit(u[j]);
      if (norm(sum) > 1e-12) {
        consider(-unit(sum));
        consider(unit(sum));
      }
    }
  return best;
}

// Classical uniform-pursuit guarantee: capture within max_i |P_i - E| /
// delta0, where delta0 is the guarantee level of the evader->pursuer
// directions. Requires delta0 > 0, i.e. the pursuer directions positively
// span the plane.
inline std::pair<double, double> pshenichnyi_bound(const PlayerSet& ps) {
  std::array<Vec2, 3> u{};
  double far = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Vec2 z = ps.pursuers[i] - ps.evader;
    const double n = norm(z);
    if (!(n > 0.0)) throw DegenerateDirections("pshenichnyi_bound(): pursuer coincides with evader");
    u[i] = z / n;
    far = std::max(far, n);
  }
  const double delta0 = delta0_of_directions(u);
  if (!(delta0 > 1e-12))
    throw DegenerateDirections("pshenichnyi_bound(): direction set has no positive guarantee level");
  return {far / delta0, delta0};
}

// Instantaneous decay rate of the guaranteed survival time when the evader
// commits to the fixed heading theta measured counterclockwise from the
// chord direction v_QE, and every pursuer plays the bisector-preserving
// response. Six closed-form regimes over one revolution, half-open on the
// left so the value at a regime boundary belongs to the regime it opens (the
// expressions agree at the seams, so this is a labeling choice only).
struct DerivativeCase {
  double theta = 0.0;  // normalized to [0, 2*pi)
  int case_index = 0;  // 1..6
  double value = 0.0;
};

inline DerivativeCase dMD_dt_case(double theta, double phi1, double phi2) {
  constexpr double pi = std::numbers::pi;
  if (!(phi1 > 0.0) || !(phi2 > 0.0) || !(phi1 + phi2 < pi) || !std::isfinite(theta))
    throw std::invalid_argument("dMD_dt_case(): need 0 < phi1, 0 < phi2, phi1 + phi2 < pi");
  theta = std::fmod(theta, 2.0 * pi);
  if (theta < 0.0) theta += 2.0 * pi;
  const double s1 = std::sin(phi1), s2 = std::sin(phi2);
  DerivativeCase r;
  r.theta = theta;
  if (theta < phi2) {
    r.case_index = 1;
    r.value = -std::sin(theta + phi1) / s1;
  } else if (theta < pi - phi1) {
    r.case_index = 2;
    r.value = -std::sin(theta + phi1) / s1 - std::sin(theta - phi2) / s2;
  } else if (theta < pi) {
    r.case_index = 3;
    r.value = -std::sin(theta - phi2) / s2;
  } else if (theta < pi + phi2) {
    r.case_index = 4;
    r.value = -std::sin(theta - phi2) / s2 + std::sin(theta) / s1;
  } else if (theta < 2.0 * pi - phi1) {
    r.case_index = 5;
    r.value = std::sin(theta) / s1;
  } else {
    r.case_index = 6;
    r.value = std::sin(theta) / s1 - std::sin(theta + phi1) / s1;
  }
  return r;
}

inline double dMD_dt(double theta, double phi1, double phi2) {
  return dMD_dt_case(theta, phi1, phi2).value;
}

// Performance ratio of the vertex bound against the guaranteed game length;
// always in [1/2, 1].
inline double delta_ratio(const PlayerSet& ps) {
  return lower_bound_B(ps).first / game_length_MD(ps);
}

// Everything above for one game, in one pass over the cell.
struct BoundsReport {
  double M_D = 0.0;         // guaranteed survival time
  double B_lower = 0.0;     // vertex lower bound on capture time
  double B_P = 0.0;         // uniform-pursuit upper bound
  double delta_lower = 0.0; // B_lower / M_D
  double delta0 = 0.0;      // guarantee level of the pursuit directions
  double l = 0.0, m = 0.0, s = 0.0;
  int i_star = 0;           // vertex achieving B_lower (1-based)
};

inline BoundsReport bounds_report(const PlayerSet& ps) {
  const VoronoiCell cell = voronoi_cell(ps);
  const AnchorPoints a = anchor_points(cell, ps.evader);
  BoundsReport r;
  r.M_D = dist(a.S, a.Q) + dist(a.Q, cell.V1);
  const auto [b, i] = lower_bound_B(ps);
  r.B_lower = b;
  r.i_star = i;
  const auto [bp, d0] = pshenichnyi_bound(ps);
  r.B_P = bp;
  r.delta0 = d0;
  r.delta_lower = r.B_lower / r.M_D;
  r.l = cell.l;
  r.m = cell.m;
  r.s = cell.s;
  return r;
}

}  // namespace pursuit
