#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "pursuit/bounds.hpp"
#include "pursuit/geometry.hpp"
#include "pursuit/state.hpp"

namespace pursuit {

// Integration and termination parameters. In continuous mode every agent
// moves dt * heading per step; discrete mode is the same loop with unit steps
// (the evader commits its heading first, the pursuers respond to it within
// the same round).
struct SimParams {
  double dt = 1e-3;
  double capture_radius = 2e-3;
  double max_time = 1.0;
  enum class Mode { continuous, discrete } mode = Mode::continuous;
};

// Scale-aware defaults for a given game: dt of one thousandth of the cell
// diameter, capture radius of two steps, and a time horizon of four
// guaranteed game lengths.
inline SimParams default_sim_params(const PlayerSet& ps) {
  const VoronoiCell cell = voronoi_cell(ps);
  SimParams sp;
  sp.dt = 1e-3 * cell.diameter();
  sp.capture_radius = 2.0 * sp.dt;
  sp.max_time = 4.0 * game_length_MD(ps);
  return sp;
}

// Capture is declared at grid times only, with a closed condition so that a
// pursuer exactly on the capture circle counts.
inline bool capture_check(const GameState& st, double capture_radius) {
  for (const Point& p : st.P)
    if (dist(p, st.E) <= capture_radius) return true;
  return false;
}

struct GameTrace {
  std::vector<GameState> samples;  // first entry is t = 0; last is final state
  bool captured = false;
  std::optional<double> capture_time;
  std::optional<int> capturing_pursuer;  // 0-based index into PlayerSet::pursuers

  const GameState& final_state() const { return samples.back(); }
};

struct RunOptions {
  // When false only the initial and final states are kept, which bounds
  // memory for long Monte Carlo runs.
  bool record_samples = true;
};

namespace detail {

inline Vec2 validated_heading(Vec2 w, const char* who) {
  if (!is_finite(w) || norm(w) > 1.0 + 1e-9)
    throw PolicyError(std::string(who) + " returned a malformed heading (non-finite or norm > 1)");
  return w;
}

}  // namespace detail

// Fixed-step simulation of one game. All four agents move simultaneously;
// time advances on the exact grid t_k = k * step so traces are bitwise
// reproducible. Policies are taken by reference and called in place, so
// stateful controllers see every step exactly once. If the horizon elapses
// without capture the trace is returned with captured = false; policy
// exceptions propagate to the caller.
inline GameTrace run_game(const PlayerSet& ps, const EvaderPolicy& evader,
                          const std::array<PursuerPolicy, 3>& pursuers, const SimParams& sp,
                          const RunOptions& opts = {}) {
  if (!(sp.dt > 0.0) || !(sp.capture_radius >= 0.0) || !(sp.max_time > 0.0))
    throw std::invalid_argument("run_game(): dt and max_time must be positive");
  const double step = sp.mode == SimParams::Mode::discrete ? 1.0 : sp.dt;

  GameTrace tr;
  GameState st{0.0, ps.evader, ps.pursuers};
  tr.samples.push_back(st);

  const auto note_capture = [&](const GameState& s) {
    tr.captured = true;
    tr.capture_time = s.t;
    int arg = 0;
    double best = dist(s.P[0], s.E);
    for (int i = 1; i < 3; ++i) {
      const double d = dist(s.P[i], s.E);
      if (d < best) {
        best = d;
        arg = i;
      }
    }
    tr.capturing_pursuer = arg;
  };

  if (capture_check(st, sp.capture_radius)) {
    note_capture(st);
    return tr;
  }

  const long long max_steps = static_cast<long long>(std::ceil(sp.max_time / step - 1e-9));
  for (long long k = 1; k <= max_steps; ++k) {
    const Vec2 e = detail::validated_heading(evader(st), "evader policy");
    std::array<Vec2, 3> w{};
    for (int i = 0; i < 3; ++i) {
      const PursuerObservation obs{st.P[i], st.E, e, &st, i};
      w[i] = detail::validated_heading(pursuers[i](obs), "pursuer policy");
    }
    st.E += step * e;
    for (int i = 0; i < 3; ++i) st.P[i] += step * w[i];
    st.t = static_cast<double>(k) * step;

    if (opts.record_samples || tr.samples.size() < 2)
      tr.samples.push_back(st);
    else
      tr.samples.back() = st;

    if (capture_check(st, sp.capture_radius)) {
      note_capture(st);
      break;
    }
  }
  return tr;
}

}  // namespace pursuit
