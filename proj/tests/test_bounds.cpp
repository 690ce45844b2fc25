#include "helpers.hpp"

using namespace pursuit;

TEST_CASE("guaranteed game length on the fixtures", "[bounds]") {
  CHECK(std::abs(game_length_MD(fixtures::right345()) - fixtures::kRight345MD) < 1e-12);

  // On a unit equilateral cell the three edge clearances always sum to the
  // triangle height, so the guaranteed length is 1 wherever the evader sits.
  SplitMix64 rng(11u);
  const auto tri = fixtures::equilateral_cell_vertices();
  for (int k = 0; k < 200; ++k) {
    const Point e = detail::uniform_in_triangle(rng, tri);
    const auto d = detail::signed_interior_distances(tri, e);
    if (*std::min_element(d.begin(), d.end()) < 1e-6) continue;
    const PlayerSet ps = pursuers_from_cell(tri, e);
    CHECK(std::abs(game_length_MD(ps) - 1.0) < 1e-9);
  }
}

TEST_CASE("game length equals the clearance decomposition", "[bounds]") {
  // Independent route to the same number: the chord length is
  // (c_l + c_m)/sin(phi1) and the edge leg is c_s/sin(phi2), where c_x is the
  // evader's distance to edge line x.
  SplitMix64 rng(12u);
  ConditionedSampler cfg;
  for (int k = 0; k < 500; ++k) {
    const PlayerSet ps = sample_conditioned_game(rng, cfg);
    const VoronoiCell cell = voronoi_cell(ps);
    const auto c = clearances_lms(cell, ps.evader);
    const double decomposed =
        (c[0] + c[1]) / std::sin(cell.phi1) + c[2] / std::sin(cell.phi2);
    REQUIRE(testutil::rel_err(game_length_MD(ps), decomposed) < 1e-9);
  }

  // Concrete instance: clearances 1.4, 0.5, 1.0 with sines 0.6 and 0.8.
  CHECK(std::abs((1.4 + 0.5) / 0.6 + 1.0 / 0.8 - fixtures::kRight345MD) < 1e-12);
}

TEST_CASE("vertex lower bound on the fixtures", "[bounds]") {
  SECTION("3-4-5: value, winning vertex, and the two losing candidates") {
    const PlayerSet ps = fixtures::right345();
    const auto [B, istar] = lower_bound_B(ps);
    CHECK(std::abs(B - fixtures::kRight345B) < 1e-12);
    CHECK(istar == 1);

    const VoronoiCell cell = voronoi_cell(ps);
    const auto V = cell.vertices();
    std::array<double, 3> cand{};
    for (int i = 0; i < 3; ++i) {
      const Point p = ps.pursuers[cell.pursuer_assignment[i]];
      cand[i] = 0.5 * (dist(V[i], p) + dist(V[i], ps.evader));
    }
    CHECK(std::abs(cand[0] - fixtures::kRight345B) < 1e-12);
    CHECK(std::abs(cand[1] - 3.1663186741037556) < 1e-12);
    CHECK(std::abs(cand[2] - 2.4753937840486274) < 1e-12);
  }
  SECTION("equilateral: three-way tie resolved to the first vertex") {
    const auto [B, istar] = lower_bound_B(fixtures::equilateral());
    CHECK(std::abs(B - 0.8660254037844386) < 1e-9);
    CHECK(istar == 1);
  }
}

TEST_CASE("vertex bound dominates the easy geometric floors", "[bounds]") {
  SplitMix64 rng(13u);
  BoxSampler cfg;
  for (int k = 0; k < 500; ++k) {
    const PlayerSet ps = sample_box_game(rng, cfg);
    const VoronoiCell cell = voronoi_cell(ps);
    const auto [B, istar] = lower_bound_B(ps);
    const double M = game_length_MD(ps);
    const auto V = cell.vertices();
    const double far_vertex =
        std::max({dist(V[0], ps.evader), dist(V[1], ps.evader), dist(V[2], ps.evader)});
    REQUIRE(B >= far_vertex * (1.0 - 1e-12));
    REQUIRE(B >= 0.5 * cell.l * (1.0 - 1e-12));
    REQUIRE(B <= M * (1.0 + 1e-12));
    REQUIRE(M <= 2.0 * B * (1.0 + 1e-12));
    REQUIRE((istar >= 1 && istar <= 3));
  }
}

TEST_CASE("guarantee level of a raw direction set", "[bounds]") {
  const double r = std::sqrt(0.5);
  // All three directions in one quadrant: the opposite half-plane is open, so
  // the level is negative and equals -cos(pi/4) (attained opposite the middle
  // direction).
  const std::array<Vec2, 3> u{{{1.0, 0.0}, {0.0, 1.0}, {r, r}}};
  CHECK(std::abs(delta0_of_directions(u) - (-0.70710678118654752)) < 1e-15);

  // Symmetric spanning set: level 1/2.
  const std::array<Vec2, 3> v{{{1.0, 0.0},
                               {-0.5, 0.8660254037844386},
                               {-0.5, -0.8660254037844386}}};
  CHECK(std::abs(delta0_of_directions(v) - 0.5) < 1e-12);

  // Scaling the inputs must not matter (they are normalized internally).
  const std::array<Vec2, 3> w{{{3.0, 0.0},
                               {-1.5, 3.0 * 0.8660254037844386},
                               {-0.25, -0.5 * 0.8660254037844386}}};
  CHECK(std::abs(delta0_of_directions(w) - 0.5) < 1e-12);
}

TEST_CASE("uniform-pursuit bound on the equilateral fixture", "[bounds]") {
  const auto [BP, d0] = pshenichnyi_bound(fixtures::equilateral());
  CHECK(std::abs(d0 - 0.5) < 1e-12);
  CHECK(std::abs(BP - 1.1547005383792515) < 1e-12);
}

TEST_CASE("guarantee level equals sin(phi1/2) for admissible games", "[bounds]") {
  // The evader->pursuer directions are the outward normals of the cell edges;
  // the widest angular gap between them is pi - phi1, so the min-max
  // projection is cos((pi - phi1)/2).
  SplitMix64 rng(14u);
  BoxSampler cfg;
  for (int k = 0; k < 300; ++k) {
    const PlayerSet ps = sample_box_game(rng, cfg);
    const VoronoiCell cell = voronoi_cell(ps);
    const auto [BP, d0] = pshenichnyi_bound(ps);
    REQUIRE(std::abs(d0 - std::sin(0.5 * cell.phi1)) < 1e-12);
    REQUIRE(BP > 0.0);
  }
}

TEST_CASE("candidate minimizers match a dense angular sweep", "[bounds]") {
  SplitMix64 rng(15u);
  BoxSampler cfg;
  constexpr int n_angles = 100000;
  for (int k = 0; k < 50; ++k) {
    const PlayerSet ps = sample_box_game(rng, cfg);
    std::array<Vec2, 3> u{};
    for (int i = 0; i < 3; ++i) u[i] = unit(ps.pursuers[i] - ps.evader);
    const double d0 = delta0_of_directions(u);
    double swept = std::numeric_limits<double>::infinity();
    for (int a = 0; a < n_angles; ++a) {
      const double th = 2.0 * std::numbers::pi * a / n_angles;
      const Vec2 p{std::cos(th), std::sin(th)};
      swept = std::min(swept, std::max({dot(p, u[0]), dot(p, u[1]), dot(p, u[2])}));
    }
    REQUIRE(swept >= d0 - 1e-12);  // the candidate set finds the true minimum
    // The max-of-cosines has a kink at the tie point, so the sweep converges
    // linearly in the grid step.
    REQUIRE(swept - d0 <= 2.0 * std::numbers::pi / n_angles);
  }
}

TEST_CASE("degenerate direction sets are rejected", "[bounds]") {
  PlayerSet ps;
  ps.pursuers = {{{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}}};
  ps.evader = {0.0, 0.0};  // midpoint of the first two pursuers
  CHECK_THROWS_AS(pshenichnyi_bound(ps), DegenerateDirections);

  ps.evader = ps.pursuers[2];  // coincides with a pursuer
  CHECK_THROWS_AS(pshenichnyi_bound(ps), DegenerateDirections);
}

namespace {

// The six closed-form regimes, written out independently of the shipping
// dispatcher so seam agreement is a real two-sided check.
struct Regimes {
  double s1, s2;
  double f1(double t, double p1) const { return -std::sin(t + p1) / s1; }
  double f2(double t, double p1, double p2) const {
    return -std::sin(t + p1) / s1 - std::sin(t - p2) / s2;
  }
  double f3(double t, double p2) const { return -std::sin(t - p2) / s2; }
  double f4(double t, double p2) const { return -std::sin(t - p2) / s2 + std::sin(t) / s1; }
  double f5(double t) const { return std::sin(t) / s1; }
  double f6(double t, double p1) const { return std::sin(t) / s1 - std::sin(t + p1) / s1; }
};

}  // namespace

TEST_CASE("decay-rate regimes: values, labels, seams", "[bounds]") {
  constexpr double pi = std::numbers::pi;
  const double p1 = fixtures::kRight345Phi1;
  const double p2 = fixtures::kRight345Phi2;

  SECTION("frozen values") {
    CHECK(dMD_dt(0.0, p1, p2) == -1.0);  // sin(0 + p1)/sin(p1) exactly
    CHECK(std::abs(dMD_dt(pi, p1, p2) - (-1.0)) < 1e-12);
    CHECK(std::abs(dMD_dt(2.0 * pi - p1, p1, p2) - (-1.0)) < 1e-12);
    CHECK(std::abs(dMD_dt(0.3, p1, p2) - (-1.3493634313407255)) < 1e-12);
  }

  SECTION("half-open regime boundaries") {
    CHECK(dMD_dt_case(0.0, p1, p2).case_index == 1);
    CHECK(dMD_dt_case(p2, p1, p2).case_index == 2);
    CHECK(dMD_dt_case(pi - p1, p1, p2).case_index == 3);
    CHECK(dMD_dt_case(pi, p1, p2).case_index == 4);
    CHECK(dMD_dt_case(pi + p2, p1, p2).case_index == 5);
    CHECK(dMD_dt_case(2.0 * pi - p1, p1, p2).case_index == 6);
  }

  SECTION("angle wrapping") {
    CHECK(std::abs(dMD_dt(0.3 + 2.0 * pi, p1, p2) - dMD_dt(0.3, p1, p2)) < 1e-9);
    CHECK(std::abs(dMD_dt(-0.2, p1, p2) - dMD_dt(2.0 * pi - 0.2, p1, p2)) < 1e-9);
    CHECK(dMD_dt_case(-0.2, p1, p2).case_index == 6);
    CHECK(dMD_dt_case(-0.2, p1, p2).theta >= 0.0);
    CHECK(dMD_dt_case(-0.2, p1, p2).theta < 2.0 * pi);
  }

  SECTION("adjacent formulas agree at every seam") {
    const Regimes g{std::sin(p1), std::sin(p2)};
    CHECK(std::abs(g.f1(p2, p1) - g.f2(p2, p1, p2)) < 1e-12);
    CHECK(std::abs(g.f2(pi - p1, p1, p2) - g.f3(pi - p1, p2)) < 1e-12);
    CHECK(std::abs(g.f3(pi, p2) - g.f4(pi, p2)) < 1e-12);
    CHECK(std::abs(g.f4(pi + p2, p2) - g.f5(pi + p2)) < 1e-12);
    CHECK(std::abs(g.f5(2.0 * pi - p1) - g.f6(2.0 * pi - p1, p1)) < 1e-12);
    CHECK(std::abs(g.f6(2.0 * pi, p1) - g.f1(0.0, p1)) < 1e-12);
  }

  SECTION("invalid angle parameters") {
    CHECK_THROWS_AS(dMD_dt_case(0.1, -0.1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(dMD_dt_case(0.1, 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(dMD_dt_case(0.1, 2.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(dMD_dt_case(std::numeric_limits<double>::quiet_NaN(), 0.5, 0.6),
                    std::invalid_argument);
  }
}

TEST_CASE("decay rate is pinned between -1 and the two-term floor", "[bounds]") {
  SplitMix64 rng(16u);
  ConditionedSampler cfg;
  for (int k = 0; k < 40; ++k) {
    const PlayerSet ps = sample_conditioned_game(rng, cfg);
    const VoronoiCell cell = voronoi_cell(ps);
    const double floor = -(1.0 / std::sin(cell.phi1) + 1.0 / std::sin(cell.phi2));
    for (int a = 0; a < 720; ++a) {
      const double th = 2.0 * std::numbers::pi * a / 720.0;
      const double v = dMD_dt(th, cell.phi1, cell.phi2);
      REQUIRE(v <= -1.0 + 1e-9);
      REQUIRE(v >= floor - 1e-9);
    }
  }
}

TEST_CASE("bound ratio on fixtures and families", "[bounds]") {
  CHECK(std::abs(delta_ratio(fixtures::right345()) - 0.91316819725013830) < 1e-12);

  // Squashed isosceles cells drive the ratio to its 1/2 floor.
  const PlayerSet flat = make_flat_isosceles(2.0, 1e-3, 0.02).players();
  const double r = delta_ratio(flat);
  CHECK(r >= 0.5);
  CHECK(r <= 0.52);

  SplitMix64 rng(17u);
  BoxSampler cfg;
  for (int k = 0; k < 500; ++k) {
    const double ratio = delta_ratio(sample_box_game(rng, cfg));
    REQUIRE(ratio >= 0.5 - 1e-9);
    REQUIRE(ratio <= 1.0 + 1e-9);
  }
}

TEST_CASE("bounds scale with the configuration", "[bounds]") {
  const PlayerSet base = fixtures::right345();
  const double k = 137.0;
  PlayerSet scaled;
  scaled.evader = k * base.evader;
  for (int i = 0; i < 3; ++i) scaled.pursuers[i] = k * base.pursuers[i];

  const BoundsReport a = bounds_report(base);
  const BoundsReport b = bounds_report(scaled);
  CHECK(testutil::rel_err(b.M_D, k * a.M_D) < 1e-12);
  CHECK(testutil::rel_err(b.B_lower, k * a.B_lower) < 1e-12);
  CHECK(testutil::rel_err(b.B_P, k * a.B_P) < 1e-12);
  CHECK(std::abs(b.delta0 - a.delta0) < 1e-12);
  CHECK(std::abs(b.delta_lower - a.delta_lower) < 1e-12);
  CHECK(b.i_star == a.i_star);
}

TEST_CASE("report fields match the standalone functions", "[bounds]") {
  const PlayerSet ps = fixtures::right345();
  const BoundsReport r = bounds_report(ps);
  CHECK(r.M_D == game_length_MD(ps));
  const auto [B, istar] = lower_bound_B(ps);
  CHECK(r.B_lower == B);
  CHECK(r.i_star == istar);
  const auto [BP, d0] = pshenichnyi_bound(ps);
  CHECK(r.B_P == BP);
  CHECK(r.delta0 == d0);
  CHECK(r.delta_lower == r.B_lower / r.M_D);
  const VoronoiCell cell = voronoi_cell(ps);
  CHECK(r.l == cell.l);
  CHECK(r.m == cell.m);
  CHECK(r.s == cell.s);
}
