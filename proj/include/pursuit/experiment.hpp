#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <thread>
#include <vector>

#include "pursuit/bounds.hpp"
#include "pursuit/engine.hpp"
#include "pursuit/io.hpp"
#include "pursuit/rng.hpp"
#include "pursuit/sample.hpp"
#include "pursuit/strategy.hpp"

namespace pursuit {

// ---------------------------------------------------------------------------
// Monte Carlo over random games: bound values and their chain invariants.
// ---------------------------------------------------------------------------

struct GameRecord {
  int index = 0;
  BoundsReport bounds;
  double BP_over_MD = 0.0;
  double MD_over_B = 0.0;
  // Chain checked per sample with relative slack 1e-9:
  //   B <= M_D <= 2B,  m <= M_D <= l,  B >= l/2,  B_P >= B.
  bool chain_ok = true;
};

struct MonteCarloConfig {
  std::uint64_t seed = 1;
  int n_games = 10000;
  BoxSampler sampler;
  int n_threads = 0;  // 0 = automatic
};

namespace detail {

inline bool chain_holds(const BoundsReport& r) {
  constexpr double rel = 1e-9;
  const bool order = r.B_lower <= r.M_D * (1.0 + rel) && r.M_D <= 2.0 * r.B_lower * (1.0 + rel);
  const bool edges = r.m <= r.M_D * (1.0 + rel) && r.M_D <= r.l * (1.0 + rel);
  const bool half = r.B_lower >= 0.5 * r.l * (1.0 - rel);
  const bool classical = r.B_P >= r.B_lower * (1.0 - rel);
  return order && edges && half && classical;
}

}  // namespace detail

// Deterministic regardless of thread count: game i always draws from
// game_stream(seed, i) and lands in slot i.
inline std::vector<GameRecord> run_montecarlo(const MonteCarloConfig& cfg) {
  std::vector<GameRecord> out(static_cast<std::size_t>(cfg.n_games));
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 4;
  const int n_threads =
      cfg.n_threads > 0 ? cfg.n_threads : static_cast<int>(std::min<unsigned>(hw, 8));
  const auto worker = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      SplitMix64 rng = game_stream(cfg.seed, static_cast<std::uint64_t>(i));
      const PlayerSet ps = sample_box_game(rng, cfg.sampler);
      GameRecord rec;
      rec.index = i;
      rec.bounds = bounds_report(ps);
      rec.BP_over_MD = rec.bounds.B_P / rec.bounds.M_D;
      rec.MD_over_B = rec.bounds.M_D / rec.bounds.B_lower;
      rec.chain_ok = detail::chain_holds(rec.bounds);
      out[static_cast<std::size_t>(i)] = rec;
    }
  };
  if (n_threads <= 1 || cfg.n_games < 2 * n_threads) {
    worker(0, cfg.n_games);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (cfg.n_games + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const int lo = t * chunk, hi = std::min(cfg.n_games, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

struct MonteCarloSummary {
  int n = 0;
  int chain_violations = 0;
  double min_BP_over_MD = 0.0, med_BP_over_MD = 0.0, max_BP_over_MD = 0.0;
  double min_MD_over_B = 0.0, med_MD_over_B = 0.0, max_MD_over_B = 0.0;
  double min_delta_lower = 0.0, med_delta_lower = 0.0, max_delta_lower = 0.0;
};

inline MonteCarloSummary summarize(const std::vector<GameRecord>& recs) {
  MonteCarloSummary s;
  s.n = static_cast<int>(recs.size());
  if (recs.empty()) return s;
  const auto stats = [&](auto get, double& mn, double& md, double& mx) {
    std::vector<double> v;
    v.reserve(recs.size());
    for (const auto& r : recs) v.push_back(get(r));
    std::sort(v.begin(), v.end());
    mn = v.front();
    mx = v.back();
    md = v[v.size() / 2];
  };
  stats([](const GameRecord& r) { return r.BP_over_MD; }, s.min_BP_over_MD, s.med_BP_over_MD,
        s.max_BP_over_MD);
  stats([](const GameRecord& r) { return r.MD_over_B; }, s.min_MD_over_B, s.med_MD_over_B,
        s.max_MD_over_B);
  stats([](const GameRecord& r) { return r.bounds.delta_lower; }, s.min_delta_lower,
        s.med_delta_lower, s.max_delta_lower);
  for (const auto& r : recs)
    if (!r.chain_ok) ++s.chain_violations;
  return s;
}

inline void write_records_csv(const std::vector<GameRecord>& recs, std::ostream& os) {
  os << "index,M_D,B_lower,B_P,delta0,delta_lower,l,m,s,i_star,BP_over_MD,MD_over_B\n";
  for (const auto& r : recs) {
    os << r.index << ',' << fmt_double(r.bounds.M_D) << ',' << fmt_double(r.bounds.B_lower)
       << ',' << fmt_double(r.bounds.B_P) << ',' << fmt_double(r.bounds.delta0) << ','
       << fmt_double(r.bounds.delta_lower) << ',' << fmt_double(r.bounds.l) << ','
       << fmt_double(r.bounds.m) << ',' << fmt_double(r.bounds.s) << ',' << r.bounds.i_star
       << ',' << fmt_double(r.BP_over_MD) << ',' << fmt_double(r.MD_over_B) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Parameterized family sweeps.
// ---------------------------------------------------------------------------

// Right triangles with legs 1 and s (right angle at the short corner), evader
// at the centroid. As s -> 0 the vertex bound closes in on the guaranteed
// game length; closed forms make this family an independent cross-check:
//   M_D = (2/3) sqrt(1 + s^2) + 1/3
//   B   = (sqrt(16 + s^2) + sqrt(4 + s^2)) / 6
struct RightTriangleRow {
  double s = 0.0;
  double M_D = 0.0;
  double B_lower = 0.0;
  double ratio = 0.0;  // M_D / B
};

inline std::vector<RightTriangleRow> sweep_right_triangle(const std::vector<double>& s_grid) {
  std::vector<RightTriangleRow> rows;
  rows.reserve(s_grid.size());
  for (const double s : s_grid) {
    if (!(s > 0.0) || !(s < 1.0))
      throw std::invalid_argument("sweep_right_triangle(): need 0 < s < 1");
    const std::array<Point, 3> tri{{{0.0, 0.0}, {1.0, 0.0}, {0.0, s}}};
    const Point centroid = (tri[0] + tri[1] + tri[2]) / 3.0;
    const PlayerSet ps = pursuers_from_cell(tri, centroid);
    RightTriangleRow row;
    row.s = s;
    row.M_D = game_length_MD(ps);
    row.B_lower = lower_bound_B(ps).first;
    row.ratio = row.M_D / row.B_lower;
    rows.push_back(row);
  }
  return rows;
}

// Flat isosceles cells: simulate the evader's chord plan against plain
// bisector-preserving pursuit (denominator) and against the coupled two-phase
// controller (numerator). As eps -> 0 the controller's capture time drops to
// about half the guaranteed length.
struct FlatIsoscelesRow {
  double eps = 0.0;
  double T_d_strategy = 0.0;   // capture time under plain pursuit
  double T_c_hat = 0.0;        // capture time under the coupled controller
  double ratio = 0.0;          // T_c_hat / T_d_strategy
  double M_D_closed = 0.0;     // l - offset * (l - sqrt(l^2/4 + eps^2))
  double switch_time = 0.0;    // when the coupled controller changed phase
  bool both_captured = false;
};

inline std::vector<FlatIsoscelesRow> sweep_flat_isosceles(double l,
                                                          const std::vector<double>& eps_grid,
                                                          double offset) {
  std::vector<FlatIsoscelesRow> rows;
  rows.reserve(eps_grid.size());
  for (const double eps : eps_grid) {
    const FlatIsoscelesFamily fam = make_flat_isosceles(l, eps, offset);
    const PlayerSet ps = fam.players();

    SimParams sp;
    sp.dt = offset * eps * l / 25.0;  // resolves both the apex height and the phase switch
    sp.capture_radius = 2.0 * sp.dt;
    sp.max_time = 3.0 * l;

    FlatIsoscelesRow row;
    row.eps = eps;
    row.M_D_closed = l - offset * (l - std::sqrt(0.25 * l * l + eps * eps));

    const RunOptions light{false};
    {
      const EvaderPolicy ev = make_e_strategy_evader(ps, sp);
      const auto dd = make_d_strategy_pursuers();
      const GameTrace tr = run_game(ps, ev, dd, sp, light);
      row.both_captured = tr.captured;
      row.T_d_strategy = tr.capture_time.value_or(sp.max_time);
    }
    {
      const EvaderPolicy ev = make_e_strategy_evader(ps, sp);
      const CHatPolicies chat = c_hat_strategy(fam, sp.dt);
      const GameTrace tr = run_game(ps, ev, chat.policies, sp, light);
      row.both_captured = row.both_captured && tr.captured;
      row.T_c_hat = tr.capture_time.value_or(sp.max_time);
      row.switch_time = chat.state->switch_time;
    }
    row.ratio = row.T_c_hat / row.T_d_strategy;
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Derivative-table verification.
// ---------------------------------------------------------------------------

// For random well-conditioned games and a full circle of headings, compare
// the closed-form decay rate of the guaranteed game length against a
// simulation probe: advance every agent one Euler step (the evader on the
// fixed heading, pursuers by their bisector-preserving response) and take the
// forward difference. Under constant headings all four agents move along
// straight lines, so a single step of any size sits exactly on the true
// trajectory and the probe is exact up to rounding.
struct Table2GameResult {
  double phi1 = 0.0, phi2 = 0.0;
  double max_residual = 0.0;       // worst |closed-form - forward difference|
  bool maxima_ok = true;           // -1 attained at, and only near, the three headings
  double value_at_10deg = 0.0;     // closed form at theta = 10 degrees (off-policy probe)
  double fd_at_10deg = 0.0;
};

struct Table2Config {
  std::uint64_t seed = 2;
  int n_games = 100;
  int n_theta = 360;
  double dtau = 1e-4;
  ConditionedSampler sampler{1.0, 0.35, 0.05, 0.0, 1e-3, 200000};
};

inline Table2GameResult table2_check_one(const PlayerSet& ps, int n_theta, double dtau) {
  constexpr double pi = std::numbers::pi;
  const VoronoiCell cell = voronoi_cell(ps);
  const AnchorPoints a = anchor_points(cell, ps.evader);
  const double M0 = game_length_MD(ps);

  Table2GameResult res;
  res.phi1 = cell.phi1;
  res.phi2 = cell.phi2;

  const auto probe = [&](double theta) {
    const Direction e = chord_heading(cell, a, theta);
    PlayerSet next;
    next.evader = ps.evader + dtau * e;
    for (int i = 0; i < 3; ++i) {
      const PursuerObservation obs{ps.pursuers[i], ps.evader, e, nullptr, i};
      next.pursuers[i] = ps.pursuers[i] + dtau * d_strategy_move(obs);
    }
    return (game_length_MD(next) - M0) / dtau;
  };

  std::vector<double> values(static_cast<std::size_t>(n_theta));
  for (int j = 0; j < n_theta; ++j) {
    const double theta = 2.0 * pi * j / n_theta;
    const double closed = dMD_dt(theta, cell.phi1, cell.phi2);
    values[static_cast<std::size_t>(j)] = closed;
    res.max_residual = std::max(res.max_residual, std::abs(closed - probe(theta)));
  }
  res.value_at_10deg = dMD_dt(pi / 18.0, cell.phi1, cell.phi2);
  res.fd_at_10deg = probe(pi / 18.0);

  // The decay rate peaks at exactly -1, attained at the three plan headings
  // (chord forward, chord backward, edge-m inward) and nowhere else.
  const std::array<double, 3> maxima{0.0, pi, 2.0 * pi - cell.phi1};
  for (const double th : maxima)
    if (std::abs(dMD_dt(th, cell.phi1, cell.phi2) + 1.0) > 1e-9) res.maxima_ok = false;
  const double step = 2.0 * pi / n_theta;
  for (int j = 0; j < n_theta; ++j) {
    const double v = values[static_cast<std::size_t>(j)];
    if (v > -1.0 + 1e-9) res.maxima_ok = false;  // nothing may beat the plan headings
    if (v >= -1.0 - 1e-6) {
      const double theta = step * j;
      double near = std::numeric_limits<double>::infinity();
      for (const double th : maxima) {
        double d = std::abs(theta - th);
        d = std::min(d, 2.0 * pi - d);
        near = std::min(near, d);
      }
      if (near > 1.5 * step) res.maxima_ok = false;
    }
  }
  return res;
}

inline std::vector<Table2GameResult> run_table2_check(const Table2Config& cfg) {
  std::vector<Table2GameResult> out;
  out.reserve(static_cast<std::size_t>(cfg.n_games));
  for (int i = 0; i < cfg.n_games; ++i) {
    SplitMix64 rng = game_stream(cfg.seed, static_cast<std::uint64_t>(i));
    const PlayerSet ps = sample_conditioned_game(rng, cfg.sampler);
    out.push_back(table2_check_one(ps, cfg.n_theta, cfg.dtau));
  }
  return out;
}

}  // namespace pursuit
