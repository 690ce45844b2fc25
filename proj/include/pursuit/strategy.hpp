#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <string>

#include "pursuit/engine.hpp"
#include "pursuit/geometry.hpp"
#include "pursuit/state.hpp"

namespace pursuit {

// ---------------------------------------------------------------------------
// Pursuer side: the bisector-preserving response.
// ---------------------------------------------------------------------------

// One pursuer's move against an evader at `evader` committing to unit heading
// `evader_heading`:
//
//   * if the evader's heading has no component toward the pursuer
//     (dot(z, e) <= 0 with z = own - evader), copy the move; the pair
//     translates rigidly and their bisector translates along with it.
//   * otherwise aim at the point B where the evader's ray crosses the current
//     bisector, B = evader + e * |z|^2 / (2 dot(z, e)); both agents are at
//     distance |z|^2 / (2 dot(z, e)) >= |z|/2 from B, reach it simultaneously,
//     and the bisector stays put in the world frame.
//
// Both branches move at the evader's speed |e|. For a full-speed evader that
// is the usual unit response; when the evader slows (parking steps emit
// |e| < 1) the aim point B is unchanged (it depends only on the ray of e) and
// matching the speed is what actually keeps the bisector frozen -- a
// full-speed step toward a nearby B would overshoot the simultaneous-arrival
// geometry and swing the bisector through the evader's safety margin.
//
// Decentralized: depends only on (own, evader, evader_heading).
inline Direction d_strategy_move(const PursuerObservation& obs) {
  const Vec2 z = obs.own - obs.evader;
  if (!(norm2(z) > 0.0))
    throw std::invalid_argument("d_strategy_move(): pursuer coincides with evader");
  const Vec2 e = obs.evader_heading;
  const double ze = dot(z, e);
  if (ze <= 0.0) return e;
  const Point B = obs.evader + e * (norm2(z) / (2.0 * ze));
  if (!is_finite(B)) throw ParallelLines("d_strategy_move(): aim point overflowed");
  const Vec2 to_B = B - obs.own;
  return to_B * (norm(e) / norm(to_B));  // |B - own| >= |z|/2 > 0, so this is safe
}

inline std::array<PursuerPolicy, 3> make_d_strategy_pursuers() {
  const PursuerPolicy p = [](const PursuerObservation& obs) { return d_strategy_move(obs); };
  return {p, p, p};
}

// ---------------------------------------------------------------------------
// Evader side: the three-leg chord plan.
// ---------------------------------------------------------------------------

// Travel E -> Q -> V1 -> (back along the chord direction), all at unit speed.
// The final leg lasts |S - E|, so the total duration equals
// |S - Q| + |Q - V1|: the guaranteed game length of this cell.
struct EvaderPlan {
  std::array<Point, 3> waypoints;        // Q, V1, and the terminal point
  std::array<Direction, 3> leg_directions;  // v_QE, v_V1Q, v_SE
  std::array<double, 3> leg_durations;      // tau1, tau2, tau3

  double total_duration() const {
    return leg_durations[0] + leg_durations[1] + leg_durations[2];
  }
};

inline EvaderPlan e_strategy_plan(const PlayerSet& ps) {
  const VoronoiCell cell = voronoi_cell(ps);
  const AnchorPoints a = anchor_points(cell, ps.evader);
  EvaderPlan plan;
  plan.leg_directions = {a.v_QE, a.v_V1Q, a.v_SE};
  plan.leg_durations = {dist(ps.evader, a.Q), dist(a.Q, cell.V1), dist(a.S, ps.evader)};
  plan.waypoints = {a.Q, cell.V1, cell.V1 + plan.leg_durations[2] * a.v_SE};
  return plan;
}

// Heading prescribed by a plan at elapsed time t (legs are half-open on the
// right, so t = tau1 already belongs to the second leg).
inline Direction e_strategy_direction(const EvaderPlan& plan, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("e_strategy_direction(): negative time");
  if (t >= plan.total_duration())
    throw GameOver("e_strategy_direction(): plan exhausted");
  if (t < plan.leg_durations[0]) return plan.leg_directions[0];
  if (t < plan.leg_durations[0] + plan.leg_durations[1]) return plan.leg_directions[1];
  return plan.leg_directions[2];
}

// ---------------------------------------------------------------------------
// Engine-facing evader policies.
// ---------------------------------------------------------------------------

struct PlanFollowOptions {
  // Extra rotation (radians, counterclockwise) applied to each leg's heading;
  // used by experiments probing how suboptimal headings lose guaranteed time.
  std::array<double, 3> leg_rotation{0.0, 0.0, 0.0};
  // Clearance margin the follower keeps to the cell edges it would otherwise
  // touch; 0 picks max(1e-6 * diameter, capture_radius/2 + 0.2 * dt), which
  // clears the capture circle at every grid time.
  double margin = 0.0;
};

// The chord plan drives the evader exactly onto cell edges (Q and V1 lie on
// them), which a positive capture radius would read as capture. This follower
// plays the plan against live opponents instead: it recomputes the cell every
// step, holds the current leg's heading, and advances to the next leg with
// one exact parking step when the next move would take its target-edge
// clearance below the margin. Under bisector-preserving pursuit the
// recomputed headings coincide with the initial plan's and the realized
// survival time is the plan duration minus an O(margin/sin phi1) tail.
inline EvaderPolicy make_e_strategy_evader(const PlayerSet& ps0, const SimParams& sp,
                                           const PlanFollowOptions& opts = {}) {
  const VoronoiCell cell0 = voronoi_cell(ps0);
  const double margin = opts.margin > 0.0
                            ? opts.margin
                            : std::max(1e-6 * cell0.diameter(),
                                       0.5 * sp.capture_radius + 0.2 * sp.dt);
  struct State {
    int leg = 0;
    bool advance_pending = false;
  };
  auto state = std::make_shared<State>();
  const double dt = sp.dt;
  const auto rotations = opts.leg_rotation;

  return [state, margin, dt, rotations](const GameState& st) -> Direction {
    if (state->advance_pending) {
      state->leg = std::min(state->leg + 1, 2);
      state->advance_pending = false;
    }
    const VoronoiCell cell = voronoi_cell(PlayerSet{st.E, st.P});
    const AnchorPoints a = anchor_points(cell, st.E);
    const std::array<Direction, 3> dirs{a.v_QE, a.v_V1Q, a.v_SE};
    Direction e = dirs[state->leg];
    if (rotations[state->leg] != 0.0) e = rotate(e, rotations[state->leg]);
    if (state->leg == 2) return e;

    // Legs 1 and 2 end where the heading would cross the margin band around
    // edge m (leg 1) or edge l (leg 2).
    const Line target = state->leg == 0 ? edge_line_m(cell) : edge_line_l(cell);
    const double c = distance_to_line(st.E, target);
    const double rate = std::abs(dot(e, perp(unit(target.d))));
    if (c - dt * rate < margin) {
      state->advance_pending = true;
      if (!(rate > 1e-12)) return e;  // drifting parallel: switch without parking
      const double alpha = std::clamp((c - margin) / (dt * rate), 0.0, 1.0);
      return alpha * e;
    }
    return e;
  };
}

// Constant heading at angle theta from the initial chord direction v_QE,
// measured in the initial cell's chirality (see chord_heading). Any finite
// theta is accepted (angles wrap).
inline EvaderPolicy make_fixed_heading_evader(const PlayerSet& ps0, double theta) {
  if (!std::isfinite(theta))
    throw std::invalid_argument("make_fixed_heading_evader(): non-finite angle");
  const VoronoiCell cell0 = voronoi_cell(ps0);
  const AnchorPoints a0 = anchor_points(cell0, ps0.evader);
  const Direction heading = chord_heading(cell0, a0, theta);
  return [heading](const GameState&) { return heading; };
}

// Evader that runs for the cell vertex with the best lower-bound value
// (largest mean of pursuer distance and evader distance), then turns head-on
// into its assigned pursuer. It aims at a point inset from the vertex along
// the angle bisector so that the corner's two edges stay outside the capture
// circle during the approach; only the assigned pursuer can then end the
// game, and no sooner than the vertex bound minus the inset allows.
inline EvaderPolicy make_greedy_vertex_evader(const PlayerSet& ps0, const SimParams& sp) {
  const VoronoiCell cell0 = voronoi_cell(ps0);
  const std::array<Point, 3> V = cell0.vertices();
  const std::array<double, 3> phis = cell0.angles();
  double best = -1.0;
  int arg = 0;
  for (int i = 0; i < 3; ++i) {
    const Point p = ps0.pursuers[cell0.pursuer_assignment[i]];
    const double cand = 0.5 * (dist(V[i], p) + dist(V[i], ps0.evader));
    if (cand > best) {
      best = cand;
      arg = i;
    }
  }
  const Point vstar = V[arg];
  const Point va = V[(arg + 1) % 3], vb = V[(arg + 2) % 3];
  const Vec2 bisector = unit(unit(va - vstar) + unit(vb - vstar));
  const double h = 0.5 * sp.capture_radius + 1.2 * sp.dt;
  const double inset = h / std::sin(0.5 * phis[arg]);
  const Point target = vstar + inset * bisector;
  const int pstar = cell0.pursuer_assignment[arg];

  struct State {
    int phase = 1;
    double prev_d = std::numeric_limits<double>::infinity();
  };
  auto state = std::make_shared<State>();
  const double dt = sp.dt;
  const double scale = cell0.diameter();

  return [state, target, pstar, dt, scale](const GameState& st) -> Direction {
    if (state->phase == 1) {
      const Vec2 d = target - st.E;
      const double nd = norm(d);
      if (nd <= 1e-12 * scale) {
        state->phase = 2;
      } else if (nd <= dt) {
        state->phase = 2;  // park exactly on the target, then turn in
        return d / dt;
      } else if (nd > state->prev_d) {
        state->phase = 2;  // nearest approach passed (can happen off-grid)
      } else {
        state->prev_d = nd;
        return d / nd;
      }
    }
    return unit(st.P[pstar] - st.E);
  };
}

// ---------------------------------------------------------------------------
// The flat isosceles family and its tailored pursuer controller.
// ---------------------------------------------------------------------------

// Cells of base l and small height eps, with the evader on the altitude
// segment between apex V3 and its foot H:
//
//   V1 = (0,0), V2 = (l,0), V3 = (l/2, eps), H = (l/2, 0),
//   E = H + offset * (V3 - H),  offset in (0,1).
//
// K is the point reflection of E through V3; the pursuer assigned to V1
// starts within 2*eps of it. T1 and T2 are the feet of the perpendiculars
// from that pursuer and from the V2-assigned pursuer onto the base line.
struct FlatIsoscelesFamily {
  double l = 0.0, eps = 0.0, offset = 0.0;
  Point V1, V2, V3, H, E, K, T1, T2;

  PlayerSet players() const { return pursuers_from_cell(std::array<Point, 3>{V1, V2, V3}, E); }
};

inline FlatIsoscelesFamily make_flat_isosceles(double l, double eps, double offset) {
  if (!(l > 0.0) || !std::isfinite(l) || !(eps > 0.0) || !std::isfinite(eps) ||
      !(offset > 0.0) || !(offset < 1.0))
    throw OutOfFamily("make_flat_isosceles(): need l > 0, eps > 0, offset in (0,1)");
  if (!(eps < 0.5 * std::numbers::sqrt3 * l))
    throw OutOfFamily("make_flat_isosceles(): eps too large, base is no longer the long edge");
  FlatIsoscelesFamily f;
  f.l = l;
  f.eps = eps;
  f.offset = offset;
  f.V1 = {0.0, 0.0};
  f.V2 = {l, 0.0};
  f.V3 = {0.5 * l, eps};
  f.H = {0.5 * l, 0.0};
  f.E = f.H + offset * (f.V3 - f.H);
  f.K = f.E + 2.0 * (f.V3 - f.E);
  const PlayerSet ps = f.players();
  f.T1 = {ps.pursuers[0].x, 0.0};
  f.T2 = {ps.pursuers[1].x, 0.0};
  return f;
}

// Shared phase of the coupled controller, exposed read-only so experiments
// can record when the regime change happened.
struct CHatState {
  int phase = 1;
  double switch_time = std::numeric_limits<double>::quiet_NaN();
  double prev_gamma = std::numeric_limits<double>::quiet_NaN();
  double last_seen_t = std::numeric_limits<double>::quiet_NaN();
  bool validated = false;
};

struct CHatPolicies {
  std::array<PursuerPolicy, 3> policies;
  std::shared_ptr<const CHatState> state;
};

// Two-phase coupled pursuit for flat isosceles cells. While the evader runs
// its first chord leg (phase 1):
//
//   * the V1-assigned pursuer descends straight to its base-line foot,
//   * the other two mirror the evader's heading across the initial edge-m and
//     edge-l lines, freezing those edges (and with them V1 and both leg
//     directions) in place.
//
// The moment the V1-pursuer-to-evader segment turns parallel to the base --
// detected by tolerance or by the signed angle changing sign within a step --
// everyone switches to the bisector-preserving response (phase 2). The
// controller needs the full state (it reads the lead pursuer's position and
// the clock), so it throws unless the engine provides it, and it refuses to
// run on a game the family did not generate. During phase 1 the evader must
// not move into the half-plane behind the chord start; that violates the
// regime this controller is built for and raises AssumptionViolated.
//
// `park_step` is the integration step used to land the descending pursuer
// exactly on its foot instead of oscillating across it (0 keeps full speed).
inline CHatPolicies c_hat_strategy(const FlatIsoscelesFamily& fam, double park_step = 0.0,
                                   double angle_tol = 1e-6) {
  auto state = std::make_shared<CHatState>();
  const PlayerSet ps0 = fam.players();
  const Vec2 base_dir = unit(fam.V2 - fam.V1);
  const Vec2 v_qe0 = -base_dir;  // chord direction of the family's first leg
  const Line line_m{fam.V1, fam.V3 - fam.V1};
  const Line line_l{fam.V1, fam.V2 - fam.V1};

  const auto bookkeeping = [state, ps0, base_dir, v_qe0, angle_tol,
                            scale = fam.l](const PursuerObservation& obs) {
    const GameState* st = obs.full_state;
    if (st == nullptr)
      throw OutOfFamily("c_hat_strategy(): controller requires the full game state");
    if (!state->validated) {
      bool match = dist(st->E, ps0.evader) <= 1e-9 * scale;
      for (int i = 0; i < 3 && match; ++i)
        match = dist(st->P[i], ps0.pursuers[i]) <= 1e-9 * scale;
      if (!match)
        throw OutOfFamily("c_hat_strategy(): game was not generated by this family");
      state->validated = true;
    }
    if (state->phase == 1 && st->t != state->last_seen_t) {
      if (dot(obs.evader_heading, v_qe0) < -1e-9)
        throw AssumptionViolated(
            "c_hat_strategy(): evader left the forward half-plane during phase 1");
      const Vec2 z1 = st->P[0] - st->E;
      double gamma = angle_between(base_dir, z1);
      if (gamma > 0.5 * std::numbers::pi) gamma -= std::numbers::pi;
      if (gamma <= -0.5 * std::numbers::pi) gamma += std::numbers::pi;
      const bool parallel = std::abs(gamma) <= angle_tol;
      const bool overshot = std::isfinite(state->prev_gamma) &&
                            gamma * state->prev_gamma < 0.0 &&
                            std::abs(gamma) < 0.25 * std::numbers::pi &&
                            std::abs(state->prev_gamma) < 0.25 * std::numbers::pi;
      if (parallel || overshot) {
        state->phase = 2;
        state->switch_time = st->t;
      }
      state->prev_gamma = gamma;
      state->last_seen_t = st->t;
    }
  };

  CHatPolicies out;
  out.state = state;

  out.policies[0] = [state, bookkeeping, line_l, park_step](const PursuerObservation& obs) -> Direction {
    bookkeeping(obs);
    if (state->phase == 2) return d_strategy_move(obs);
    const Vec2 n = perp(unit(line_l.d));
    const Vec2 d = -dot(obs.own - line_l.p, n) * n;  // straight to the base foot
    const double nd = norm(d);
    if (!(nd > 0.0)) return {0.0, 0.0};
    if (park_step > 0.0 && nd < park_step) return d / park_step;
    return d / nd;
  };
  out.policies[1] = [state, bookkeeping, line_m](const PursuerObservation& obs) -> Direction {
    bookkeeping(obs);
    if (state->phase == 2) return d_strategy_move(obs);
    return reflect_direction(obs.evader_heading, line_m);
  };
  out.policies[2] = [state, bookkeeping, line_l](const PursuerObservation& obs) -> Direction {
    bookkeeping(obs);
    if (state->phase == 2) return d_strategy_move(obs);
    return reflect_direction(obs.evader_heading, line_l);
  };
  return out;
}

}  // namespace pursuit
