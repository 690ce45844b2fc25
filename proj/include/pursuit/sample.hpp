#pragma once

#include <algorithm>
#include <array>
#include <utility>

#include "pursuit/geometry.hpp"
#include "pursuit/rng.hpp"
#include "pursuit/strategy.hpp"

namespace pursuit {

namespace detail {

// Uniform point inside a triangle (reflected-parallelogram trick).
inline Point uniform_in_triangle(SplitMix64& rng, const std::array<Point, 3>& tri) {
  double u = rng.uniform01(), v = rng.uniform01();
  if (u + v > 1.0) {
    u = 1.0 - u;
    v = 1.0 - v;
  }
  return tri[0] + u * (tri[1] - tri[0]) + v * (tri[2] - tri[0]);
}

inline double min_angle_of(const VoronoiCell& c) { return c.phi1; }

}  // namespace detail

// Unconstrained games: pursuers uniform in a box, evader uniform in their
// hull. Only outright degeneracies are rejected (hull margin below
// margin_frac of the hull diameter, or a cell angle below min_angle, where
// double-precision bisector intersections stop being trustworthy). The
// surviving distribution keeps the long thin cells that make the bound
// ratios large.
struct BoxSampler {
  double lo = 0.0, hi = 10.0;
  double margin_frac = 1e-6;   // of hull diameter
  double min_angle = 1e-4;     // radians
  int max_tries = 100000;
};

inline PlayerSet sample_box_game(SplitMix64& rng, const BoxSampler& cfg) {
  for (int t = 0; t < cfg.max_tries; ++t) {
    PlayerSet ps;
    for (Point& p : ps.pursuers) p = {rng.uniform(cfg.lo, cfg.hi), rng.uniform(cfg.lo, cfg.hi)};
    const double diam = detail::max_pairwise_distance(ps.pursuers);
    if (!(diam > 0.0)) continue;
    ps.evader = detail::uniform_in_triangle(rng, ps.pursuers);
    if (!assert_admissible(ps, cfg.margin_frac)) continue;
    try {
      const VoronoiCell cell = voronoi_cell(ps);
      if (detail::min_angle_of(cell) < cfg.min_angle) continue;
    } catch (const PursuitError&) {
      continue;
    }
    return ps;
  }
  throw SamplerExhausted("sample_box_game(): retry cap reached");
}

// Well-conditioned games built cell-first: a triangle with all angles above
// min_angle and no near-tied edge lengths, an evader with prescribed
// clearance from every edge (and optionally no short plan leg), pursuers
// placed by reflection. Used by experiments whose error budgets need
// quantitative room between the evader and the cell boundary.
struct ConditionedSampler {
  double scale = 1.0;            // vertices drawn in [0, scale]^2
  double min_angle = 0.35;       // radians, over all three cell angles
  double min_clearance_frac = 0.05;  // evader-to-edge-line distance, of cell diameter
  double min_leg_frac = 0.0;     // each plan leg at least this fraction of the total
  double edge_gap_frac = 1e-6;   // reject near-tied edge lengths (labeling stability)
  int max_tries = 200000;
};

inline PlayerSet sample_conditioned_game(SplitMix64& rng, const ConditionedSampler& cfg) {
  for (int t = 0; t < cfg.max_tries; ++t) {
    std::array<Point, 3> tri;
    for (Point& p : tri) p = {rng.uniform(0.0, cfg.scale), rng.uniform(0.0, cfg.scale)};
    VoronoiCell cell;
    try {
      cell = label_triangle(tri);
    } catch (const PursuitError&) {
      continue;
    }
    if (cell.phi1 < cfg.min_angle) continue;
    if (cell.l - cell.m < cfg.edge_gap_frac * cell.l) continue;
    if (cell.m - cell.s < cfg.edge_gap_frac * cell.l) continue;
    const Point evader = detail::uniform_in_triangle(rng, cell.vertices());
    const auto clear = clearances_lms(cell, evader);
    const double need = cfg.min_clearance_frac * cell.diameter();
    if (clear[0] < need || clear[1] < need || clear[2] < need) continue;
    PlayerSet ps;
    try {
      ps = pursuers_from_cell(cell, evader);
    } catch (const PursuitError&) {
      continue;
    }
    if (cfg.min_leg_frac > 0.0) {
      const EvaderPlan plan = e_strategy_plan(ps);
      const double need_leg = cfg.min_leg_frac * plan.total_duration();
      if (plan.leg_durations[0] < need_leg || plan.leg_durations[1] < need_leg ||
          plan.leg_durations[2] < need_leg)
        continue;
    }
    return ps;
  }
  throw SamplerExhausted("sample_conditioned_game(): retry cap reached");
}

// Bare triangle plus strictly interior point, for cell <-> players round-trip
// checks. min_angle keeps the triangle away from collinearity, where the
// reflection construction loses all its precision. margin_frac keeps the
// point away from the edges: reflecting a point at clearance c across an
// edge and intersecting the bisectors back loses roughly eps * diam / c
// digits, so the clearance floor decides how well the round trip can close.
struct TriangleSampler {
  double scale = 1.0;
  double min_angle = 1e-3;   // radians
  double margin_frac = 1e-4; // interior clearance, fraction of the diameter
  int max_tries = 100000;
};

inline std::pair<std::array<Point, 3>, Point> sample_triangle_and_point(
    SplitMix64& rng, const TriangleSampler& cfg) {
  for (int t = 0; t < cfg.max_tries; ++t) {
    std::array<Point, 3> tri;
    for (Point& p : tri) p = {rng.uniform(0.0, cfg.scale), rng.uniform(0.0, cfg.scale)};
    VoronoiCell cell;
    try {
      cell = label_triangle(tri);
    } catch (const PursuitError&) {
      continue;
    }
    if (cell.phi1 < cfg.min_angle) continue;
    const Point p = detail::uniform_in_triangle(rng, tri);
    const auto d = detail::signed_interior_distances(tri, p);
    const double diam = detail::max_pairwise_distance(tri);
    if (!(*std::min_element(d.begin(), d.end()) > cfg.margin_frac * diam)) continue;
    return {tri, p};
  }
  throw SamplerExhausted("sample_triangle_and_point(): retry cap reached");
}

}  // namespace pursuit
