// Command-line driver: single-game simulation with trace export, bounds
// reports, Monte Carlo studies, tightness-family sweeps and decay-rate table
// validation.
//
// Exit codes: 0 all embedded assertions passed; 1 a named invariant failed
// (printed to stderr); 2 configuration or input validation error.
//
// Every option can also be supplied through the environment with the PURSUIT_
// prefix (PURSUIT_SEED, PURSUIT_OUT_DIR, ...); explicit flags win over the
// environment, which wins over the config file, which wins over defaults.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <numbers>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <pursuit/pursuit.hpp>

namespace {

using json = nlohmann::json;
using namespace pursuit;

int fail_invariant(const std::string& name, const std::string& detail) {
  std::cerr << "FAILED invariant: " << name << " - " << detail << "\n";
  return 1;
}

int fail_config(const std::string& detail) {
  std::cerr << "configuration error: " << detail << "\n";
  return 2;
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  in >> j;
  if (!j.is_object()) throw std::runtime_error("config root must be a JSON object: " + path);
  return j;
}

// The geometric entry condition for every analysis in the toolkit.
constexpr const char* kAdmissibility =
    "the three pursuers must be pairwise distinct, non-collinear, and the "
    "evader must start strictly inside their triangle";

PlayerSet players_from_config(const json& cfg) {
  if (!cfg.contains("players"))
    throw std::runtime_error("config needs a \"players\" object with \"evader\" and \"pursuers\"");
  return cfg.at("players").get<PlayerSet>();
}

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path p = dir / name;
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  return os;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::runtime_error("bad grid value: " + item);
    grid.push_back(v);
  }
  if (grid.empty()) throw std::runtime_error("empty grid");
  return grid;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string config_path;
  std::string out_dir = ".";
  double dt = 0.0;           // 0: keep config / defaults
  double capture_radius = -1.0;
  bool dt_set = false, radius_set = false;
};

int cmd_simulate(const SimulateArgs& args) {
  const json cfg = load_config(args.config_path);
  const PlayerSet ps = players_from_config(cfg);

  BoundsReport rep;
  try {
    rep = bounds_report(ps);
  } catch (const PursuitError& e) {
    std::cerr << "invalid game (" << e.what() << "): " << kAdmissibility << "\n";
    return 2;
  }

  SimParams sp = default_sim_params(ps);
  if (cfg.contains("sim")) cfg.at("sim").get_to(sp);
  if (args.dt_set) sp.dt = args.dt;
  if (args.radius_set) sp.capture_radius = args.capture_radius;

  const std::string policy = cfg.value("policy", std::string("e_strategy"));
  EvaderPolicy evader;
  if (policy == "e_strategy") {
    evader = make_e_strategy_evader(ps, sp);
  } else if (policy == "fixed_heading") {
    evader = make_fixed_heading_evader(ps, cfg.value("heading", 0.0));
  } else if (policy == "greedy_vertex") {
    evader = make_greedy_vertex_evader(ps, sp);
  } else {
    return fail_config("unknown evader policy \"" + policy +
                       "\" (known: e_strategy, fixed_heading, greedy_vertex)");
  }

  const GameTrace tr = run_game(ps, evader, make_d_strategy_pursuers(), sp);

  std::printf("policy          %s vs d_strategy\n", policy.c_str());
  std::printf("dt              %.6g\n", sp.dt);
  std::printf("capture radius  %.6g\n", sp.capture_radius);
  if (tr.captured) {
    std::printf("capture time    %.6g  (pursuer %d)\n", tr.capture_time.value(),
                tr.capturing_pursuer.value() + 1);
  } else {
    std::printf("capture time    none within max_time = %.6g\n", sp.max_time);
  }
  std::printf("M_D             %.6g\n", rep.M_D);
  std::printf("B               %.6g\n", rep.B_lower);
  std::printf("B/M_D           %.6g\n", rep.delta_lower);

  {
    auto csv = open_output(args.out_dir, "trace.csv");
    write_trace_csv(tr, csv);
    auto js = open_output(args.out_dir, "trace.json");
    write_trace_json(tr, sp, js);
    std::printf("trace           %s/trace.{csv,json} (%zu samples)\n", args.out_dir.c_str(),
                tr.samples.size());
  }

  if (!detail::chain_holds(rep))
    return fail_invariant("bound-chain", "B <= M_D <= 2B / m <= M_D <= l violated on input game");
  if (tr.captured && tr.capture_time.value() > sp.max_time + 1e-12)
    return fail_invariant("trace-consistency", "capture time exceeds max_time");
  if (tr.samples.empty() || tr.samples.front().t != 0.0)
    return fail_invariant("trace-consistency", "trace must start at t = 0");
  return 0;
}

// ---------------------------------------------------------------------------
// bounds

int cmd_bounds(const std::string& config_path) {
  const json cfg = load_config(config_path);
  const PlayerSet ps = players_from_config(cfg);
  BoundsReport r;
  try {
    r = bounds_report(ps);
  } catch (const PursuitError& e) {
    std::cerr << "invalid game (" << e.what() << "): " << kAdmissibility << "\n";
    return 2;
  }
  std::printf("edges (l, m, s)     %.6g  %.6g  %.6g\n", r.l, r.m, r.s);
  std::printf("M_D                 %.6g\n", r.M_D);
  std::printf("B                   %.6g  (vertex %d)\n", r.B_lower, r.i_star);
  std::printf("B_P                 %.6g  (delta0 = %.6g)\n", r.B_P, r.delta0);
  std::printf("B/M_D               %.6g\n", r.delta_lower);
  if (!detail::chain_holds(r))
    return fail_invariant("bound-chain", "B <= M_D <= 2B / m <= M_D <= l / B_P >= B violated");
  return 0;
}

// ---------------------------------------------------------------------------
// montecarlo

struct MonteCarloArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int n_games = 10000;
  bool seed_set = false, n_games_set = false;
};

int cmd_montecarlo(const MonteCarloArgs& args) {
  const json cfg = load_config(args.config_path);
  MonteCarloConfig mc;
  mc.seed = cfg.value("seed", mc.seed);
  mc.n_games = cfg.value("n_games", mc.n_games);
  mc.n_threads = cfg.value("n_threads", mc.n_threads);
  if (cfg.contains("sampler")) {
    const json& s = cfg.at("sampler");
    mc.sampler.lo = s.value("lo", mc.sampler.lo);
    mc.sampler.hi = s.value("hi", mc.sampler.hi);
    mc.sampler.margin_frac = s.value("margin_frac", mc.sampler.margin_frac);
    mc.sampler.min_angle = s.value("min_angle", mc.sampler.min_angle);
  }
  if (args.seed_set) mc.seed = args.seed;
  if (args.n_games_set) mc.n_games = args.n_games;
  if (mc.n_games < 1) return fail_config("n_games must be >= 1");

  const std::vector<GameRecord> recs = run_montecarlo(mc);
  const MonteCarloSummary sum = summarize(recs);

  std::printf("games           %d   (seed %llu)\n", sum.n,
              static_cast<unsigned long long>(mc.seed));
  std::printf("%-12s %12s %12s %12s\n", "", "min", "median", "max");
  std::printf("%-12s %12.6g %12.6g %12.6g\n", "B_P/M_D", sum.min_BP_over_MD, sum.med_BP_over_MD,
              sum.max_BP_over_MD);
  std::printf("%-12s %12.6g %12.6g %12.6g\n", "M_D/B", sum.min_MD_over_B, sum.med_MD_over_B,
              sum.max_MD_over_B);
  std::printf("%-12s %12.6g %12.6g %12.6g\n", "B/M_D", sum.min_delta_lower, sum.med_delta_lower,
              sum.max_delta_lower);
  std::printf("bound chain     %d violations\n", sum.chain_violations);

  // Re-validate every row before it is written out.
  if (sum.chain_violations != 0)
    return fail_invariant("bound-chain",
                          std::to_string(sum.chain_violations) + " games broke the bound chain");

  auto csv = open_output(args.out_dir, "montecarlo.csv");
  write_records_csv(recs, csv);
  std::printf("records         %s/montecarlo.csv\n", args.out_dir.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::string family = "right_triangle";
  std::string grid_text;
  bool family_set = false;
};

int cmd_sweep(const SweepArgs& args) {
  const json cfg = load_config(args.config_path);
  std::string family = cfg.value("family", args.family);
  if (args.family_set) family = args.family;
  std::vector<double> grid = {0.1, 0.01, 0.001};
  if (cfg.contains("grid")) grid = cfg.at("grid").get<std::vector<double>>();
  if (!args.grid_text.empty()) grid = parse_grid(args.grid_text);

  if (family == "right_triangle") {
    const std::vector<RightTriangleRow> rows = sweep_right_triangle(grid);
    std::printf("%-12s %-12s %-12s %-12s\n", "s", "M_D", "B", "M_D/B");
    for (const RightTriangleRow& r : rows)
      std::printf("%-12.6g %-12.6g %-12.6g %-12.6g\n", r.s, r.M_D, r.B_lower, r.ratio);

    auto csv = open_output(args.out_dir, "sweep.csv");
    csv << "s,M_D,B_lower,ratio\n";
    for (const RightTriangleRow& r : rows)
      csv << fmt_double(r.s) << ',' << fmt_double(r.M_D) << ',' << fmt_double(r.B_lower) << ','
          << fmt_double(r.ratio) << '\n';

    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].ratio < 1.0 - 1e-12)
        return fail_invariant("monotone-approach-to-1", "ratio dipped below 1");
      if (i > 0 && rows[i].ratio >= rows[i - 1].ratio)
        return fail_invariant("monotone-approach-to-1", "ratio not strictly decreasing");
    }
    return 0;
  }

  if (family == "flat_isosceles") {
    const double l = cfg.value("l", 2.0);
    const double offset = cfg.value("offset", 0.02);
    const std::vector<FlatIsoscelesRow> rows = sweep_flat_isosceles(l, grid, offset);
    std::printf("%-10s %-12s %-12s %-12s %-12s %-12s\n", "eps", "T_coupled", "T_plain",
                "ratio", "M_D_closed", "switch_t");
    for (const FlatIsoscelesRow& r : rows)
      std::printf("%-10.6g %-12.6g %-12.6g %-12.6g %-12.6g %-12.6g\n", r.eps, r.T_c_hat,
                  r.T_d_strategy, r.ratio, r.M_D_closed, r.switch_time);

    auto csv = open_output(args.out_dir, "sweep.csv");
    csv << "eps,T_c_hat,T_d_strategy,ratio,M_D_closed,switch_time\n";
    for (const FlatIsoscelesRow& r : rows)
      csv << fmt_double(r.eps) << ',' << fmt_double(r.T_c_hat) << ','
          << fmt_double(r.T_d_strategy) << ',' << fmt_double(r.ratio) << ','
          << fmt_double(r.M_D_closed) << ',' << fmt_double(r.switch_time) << '\n';

    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].both_captured)
        return fail_invariant("family-capture", "a family game did not end in capture");
      if (rows[i].ratio < 0.45 || rows[i].ratio > 1.0)
        return fail_invariant("approach-to-half", "coupled/plain ratio left (0.45, 1.0)");
      if (i > 0 && rows[i].ratio >= rows[i - 1].ratio)
        return fail_invariant("approach-to-half", "ratio not strictly decreasing");
    }
    return 0;
  }

  return fail_config("unknown family \"" + family +
                     "\" (known: right_triangle, flat_isosceles)");
}

// ---------------------------------------------------------------------------
// table2

struct Table2Args {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 2;
  int n_games = 100;
  bool seed_set = false, n_games_set = false;
};

int cmd_table2(const Table2Args& args) {
  const json cfg = load_config(args.config_path);
  Table2Config tc;
  tc.seed = cfg.value("seed", tc.seed);
  tc.n_games = cfg.value("n_games", tc.n_games);
  tc.n_theta = cfg.value("n_theta", tc.n_theta);
  tc.dtau = cfg.value("dtau", tc.dtau);
  if (args.seed_set) tc.seed = args.seed;
  if (args.n_games_set) tc.n_games = args.n_games;
  if (tc.n_games < 1 || tc.n_theta < 8) return fail_config("need n_games >= 1, n_theta >= 8");

  const std::vector<Table2GameResult> results = run_table2_check(tc);
  double worst = 0.0, worst10 = 0.0;
  bool maxima = true;
  for (const Table2GameResult& r : results) {
    worst = std::max(worst, r.max_residual);
    worst10 = std::max(worst10, std::abs(r.value_at_10deg - r.fd_at_10deg));
    maxima = maxima && r.maxima_ok;
  }

  std::printf("games           %d   thetas %d   probe step %.6g   (seed %llu)\n", tc.n_games,
              tc.n_theta, tc.dtau, static_cast<unsigned long long>(tc.seed));
  std::printf("max |closed - probe|   %.6g   (tolerance 1e-3)\n", worst);
  std::printf("off-policy 10 deg      %.6g   worst closed-vs-probe gap\n", worst10);
  std::printf("-1 maxima at {0, pi, 2pi - phi1} only: %s\n", maxima ? "yes" : "NO");

  auto csv = open_output(args.out_dir, "table2.csv");
  csv << "game,phi1,phi2,max_residual,maxima_ok,value_at_10deg,fd_at_10deg\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const Table2GameResult& r = results[i];
    csv << i << ',' << fmt_double(r.phi1) << ',' << fmt_double(r.phi2) << ','
        << fmt_double(r.max_residual) << ',' << (r.maxima_ok ? 1 : 0) << ','
        << fmt_double(r.value_at_10deg) << ',' << fmt_double(r.fd_at_10deg) << '\n';
  }

  if (worst > 1e-3)
    return fail_invariant("table2-residual", "closed form vs probe residual exceeds 1e-3");
  if (!maxima)
    return fail_invariant("table2-maxima", "a decay-rate maximum is off the three plan headings");

  // Strictness spot check: rotating leg 1 by 10 degrees must lose survival
  // time against the same pursuers.
  SplitMix64 rng = game_stream(tc.seed, 0);
  const PlayerSet ps = sample_conditioned_game(rng, tc.sampler);
  const double md = game_length_MD(ps);
  SimParams sp;
  sp.dt = 1e-3 * voronoi_cell(ps).diameter();
  sp.capture_radius = sp.dt;
  sp.max_time = 4.0 * md;
  PlanFollowOptions opts;
  opts.leg_rotation[0] = std::numbers::pi / 18.0;
  const GameTrace tr = run_game(ps, make_e_strategy_evader(ps, sp, opts),
                                make_d_strategy_pursuers(), sp, RunOptions{false});
  if (!tr.captured || !(tr.capture_time.value() < md))
    return fail_invariant("off-policy-strict-loss",
                          "10 degree heading error on leg 1 did not shorten the game");
  std::printf("off-policy leg 1 run   T = %.6g < M_D = %.6g\n", tr.capture_time.value(), md);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pursuit-evasion game toolkit: simulation, bounds, and validation studies"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* c_sim = app.add_subcommand("simulate", "run one game and export its trace");
  c_sim->add_option("--config", sim.config_path, "JSON config with players, sim, policy")
      ->envname("PURSUIT_CONFIG")
      ->required();
  c_sim->add_option("--out-dir", sim.out_dir, "directory for trace.csv / trace.json")
      ->envname("PURSUIT_OUT_DIR");
  CLI::Option* o_dt = c_sim->add_option("--dt", sim.dt, "integrator step override")
                          ->envname("PURSUIT_DT");
  CLI::Option* o_rho =
      c_sim->add_option("--capture-radius", sim.capture_radius, "capture radius override")
          ->envname("PURSUIT_CAPTURE_RADIUS");

  std::string bounds_config;
  CLI::App* c_bounds = app.add_subcommand("bounds", "closed-form report for one game");
  c_bounds->add_option("--config", bounds_config, "JSON config with players")
      ->envname("PURSUIT_CONFIG")
      ->required();

  MonteCarloArgs mc;
  CLI::App* c_mc = app.add_subcommand("montecarlo", "bound statistics over random games");
  c_mc->add_option("--config", mc.config_path, "JSON config (seed, n_games, sampler)")
      ->envname("PURSUIT_CONFIG");
  CLI::Option* o_mc_seed =
      c_mc->add_option("--seed", mc.seed, "stream seed")->envname("PURSUIT_SEED");
  CLI::Option* o_mc_n =
      c_mc->add_option("--n-games", mc.n_games, "number of games")->envname("PURSUIT_N_GAMES");
  c_mc->add_option("--out-dir", mc.out_dir, "directory for montecarlo.csv")
      ->envname("PURSUIT_OUT_DIR");

  SweepArgs sw;
  CLI::App* c_sw = app.add_subcommand("sweep", "tightness family convergence table");
  c_sw->add_option("--config", sw.config_path, "JSON config (family, grid, l, offset)")
      ->envname("PURSUIT_CONFIG");
  CLI::Option* o_family =
      c_sw->add_option("--family", sw.family, "right_triangle | flat_isosceles")
          ->envname("PURSUIT_FAMILY");
  c_sw->add_option("--grid", sw.grid_text, "comma-separated family parameter values")
      ->envname("PURSUIT_GRID");
  c_sw->add_option("--out-dir", sw.out_dir, "directory for sweep.csv")
      ->envname("PURSUIT_OUT_DIR");

  Table2Args t2;
  CLI::App* c_t2 = app.add_subcommand("table2", "decay-rate closed form vs simulation probe");
  c_t2->add_option("--config", t2.config_path, "JSON config (seed, n_games, n_theta, dtau)")
      ->envname("PURSUIT_CONFIG");
  CLI::Option* o_t2_seed =
      c_t2->add_option("--seed", t2.seed, "stream seed")->envname("PURSUIT_SEED");
  CLI::Option* o_t2_n =
      c_t2->add_option("--n-games", t2.n_games, "number of games")->envname("PURSUIT_N_GAMES");
  c_t2->add_option("--out-dir", t2.out_dir, "directory for table2.csv")
      ->envname("PURSUIT_OUT_DIR");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_sim->parsed()) {
      sim.dt_set = o_dt->count() > 0;
      sim.radius_set = o_rho->count() > 0;
      return cmd_simulate(sim);
    }
    if (c_bounds->parsed()) return cmd_bounds(bounds_config);
    if (c_mc->parsed()) {
      mc.seed_set = o_mc_seed->count() > 0;
      mc.n_games_set = o_mc_n->count() > 0;
      return cmd_montecarlo(mc);
    }
    if (c_sw->parsed()) {
      sw.family_set = o_family->count() > 0;
      return cmd_sweep(sw);
    }
    if (c_t2->parsed()) {
      t2.seed_set = o_t2_seed->count() > 0;
      t2.n_games_set = o_t2_n->count() > 0;
      return cmd_table2(t2);
    }
  } catch (const PursuitError& e) {
    std::cerr << "invalid game (" << e.what() << "): " << kAdmissibility << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
