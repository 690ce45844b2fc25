#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "pursuit/error.hpp"
#include "pursuit/vec.hpp"

namespace pursuit {

// One evader against three pursuers, all with unit speed. Pursuer order is
// whatever the caller supplied; nothing below depends on it.
struct PlayerSet {
  Point evader;
  std::array<Point, 3> pursuers;
};

// Infinite line through `p` with direction `d` (need not be unit length).
struct Line {
  Point p;
  Vec2 d;
};

inline double distance_to_line(Point q, const Line& ln) {
  return std::abs(cross(unit(ln.d), q - ln.p));
}

// Intersection parameter t with q = a.p + t * a.d, or throws if the lines are
// numerically parallel.
inline double intersect_param(const Line& a, const Line& b) {
  const double den = cross(a.d, b.d);
  if (std::abs(den) <= 1e-15 * norm(a.d) * norm(b.d))
    throw ParallelLines("intersect_param(): lines numerically parallel");
  return cross(b.p - a.p, b.d) / den;
}

inline Point intersect(const Line& a, const Line& b) {
  return a.p + a.d * intersect_param(a, b);
}

inline Point reflect_across(Point q, const Line& ln) {
  const Vec2 n = perp(unit(ln.d));
  return q - 2.0 * dot(q - ln.p, n) * n;
}

// Mirror a direction vector across the direction of `ln` (used by controllers
// that keep a bisector edge frozen by copying the evader's move in the
// reflected frame).
inline Vec2 reflect_direction(Vec2 v, const Line& ln) {
  const Vec2 d = unit(ln.d);
  return 2.0 * dot(v, d) * d - v;
}

namespace detail {

// Signed distances from q to each edge line of the triangle, positive on the
// interior side. Entry i is the edge opposite vertex i.
inline std::array<double, 3> signed_interior_distances(const std::array<Point, 3>& tri, Point q) {
  const double orient = cross(tri[1] - tri[0], tri[2] - tri[0]);
  const double sign = orient >= 0.0 ? 1.0 : -1.0;
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) {
    const Point a = tri[(i + 1) % 3], b = tri[(i + 2) % 3];
    const double len = dist(a, b);
    if (!(len > 0.0)) {
      out = {-std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity()};
      return out;
    }
    out[i] = sign * cross(b - a, q - a) / len;
  }
  return out;
}

inline double max_pairwise_distance(const std::array<Point, 3>& pts) {
  return std::max({dist(pts[0], pts[1]), dist(pts[0], pts[2]), dist(pts[1], pts[2])});
}

}  // namespace detail

// True iff the pursuers span a proper triangle, all four points are pairwise
// distinct, and the evader lies strictly inside the pursuer hull. Strictness
// is relative: every margin must exceed `tol` times the hull diameter, so the
// test is invariant under scaling and translation.
inline bool assert_admissible(const PlayerSet& ps, double tol = 1e-12) {
  const auto& P = ps.pursuers;
  for (const Point& q : {P[0], P[1], P[2], ps.evader})
    if (!is_finite(q)) return false;
  const double diam = detail::max_pairwise_distance(P);
  if (!(diam > 0.0)) return false;
  const double eps = tol * diam;
  if (dist(P[0], P[1]) <= eps || dist(P[0], P[2]) <= eps || dist(P[1], P[2]) <= eps)
    return false;
  for (const Point& p : P)
    if (dist(ps.evader, p) <= eps) return false;
  const auto d = detail::signed_interior_distances(P, ps.evader);
  return d[0] > eps && d[1] > eps && d[2] > eps;
}

// The evader's dominance region: the triangle cut out by the three
// evader/pursuer perpendicular bisectors, labeled by edge length.
//
//   V1 joins the longest and the median edge:  |V1-V2| = l >= |V1-V3| = m >= |V2-V3| = s
//   phi1 <= phi2 <= phi3 are the interior angles at V1, V2, V3.
//
// pursuer_assignment[i] is the index (into PlayerSet::pursuers) of the pursuer
// farthest from vertex V(i+1); equivalently, the one whose bisector forms the
// edge opposite that vertex.
struct VoronoiCell {
  Point V1, V2, V3;
  double l = 0.0, m = 0.0, s = 0.0;
  double phi1 = 0.0, phi2 = 0.0, phi3 = 0.0;
  std::array<int, 3> pursuer_assignment{0, 1, 2};

  std::array<Point, 3> vertices() const { return {V1, V2, V3}; }
  std::array<double, 3> angles() const { return {phi1, phi2, phi3}; }
  double diameter() const { return l; }
};

// Edge lines in label order. Edge l joins V1V2, edge m joins V1V3, edge s
// joins V2V3 (each is the bisector of the evader and its assigned pursuer).
inline Line edge_line_l(const VoronoiCell& c) { return {c.V1, c.V2 - c.V1}; }
inline Line edge_line_m(const VoronoiCell& c) { return {c.V1, c.V3 - c.V1}; }
inline Line edge_line_s(const VoronoiCell& c) { return {c.V2, c.V3 - c.V2}; }

// Distances from q to the three edge lines, in the order {l, m, s}.
inline std::array<double, 3> clearances_lms(const VoronoiCell& c, Point q) {
  return {distance_to_line(q, edge_line_l(c)), distance_to_line(q, edge_line_m(c)),
          distance_to_line(q, edge_line_s(c))};
}

namespace detail {

inline double interior_angle(Point at, Point a, Point b) {
  const Vec2 u = a - at, v = b - at;
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

struct Labeling {
  std::array<int, 3> order;  // positions of V1, V2, V3 in the input array
};

// Choose the vertex labeling with |V1-V2| >= |V1-V3| >= |V2-V3|. Length
// comparisons use a relative tolerance so exact ties (isosceles, equilateral)
// admit several labelings; the lexicographically smallest (V1, V2, V3)
// coordinate tuple is then picked, which makes the choice deterministic and
// independent of input order.
inline Labeling choose_labeling(const std::array<Point, 3>& pts) {
  static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                      {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  const double longest = max_pairwise_distance(pts);
  const double tol = 1e-9 * longest;
  const auto lex_less = [](const std::array<Point, 3>& a, const std::array<Point, 3>& b) {
    for (int i = 0; i < 3; ++i) {
      if (a[i].x != b[i].x) return a[i].x < b[i].x;
      if (a[i].y != b[i].y) return a[i].y < b[i].y;
    }
    return false;
  };
  bool found = false;
  Labeling best{};
  std::array<Point, 3> best_pts{};
  for (const auto& p : perms) {
    const Point a = pts[p[0]], b = pts[p[1]], c = pts[p[2]];
    const double l = dist(a, b), m = dist(a, c), s = dist(b, c);
    if (l + tol < m || m + tol < s) continue;
    const std::array<Point, 3> cand{a, b, c};
    if (!found || lex_less(cand, best_pts)) {
      found = true;
      best = {{p[0], p[1], p[2]}};
      best_pts = cand;
    }
  }
  if (!found) throw NumericalDegeneracy("choose_labeling(): no edge ordering satisfied l >= m >= s");
  return best;
}

inline VoronoiCell labeled_cell(const std::array<Point, 3>& pts,
                                const std::array<int, 3>& farthest) {
  const Labeling lab = choose_labeling(pts);
  VoronoiCell c;
  c.V1 = pts[lab.order[0]];
  c.V2 = pts[lab.order[1]];
  c.V3 = pts[lab.order[2]];
  c.l = dist(c.V1, c.V2);
  c.m = dist(c.V1, c.V3);
  c.s = dist(c.V2, c.V3);
  if (!(c.s > 0.0)) throw DegenerateCell("labeled_cell(): zero-length edge");
  c.phi1 = interior_angle(c.V1, c.V2, c.V3);
  c.phi2 = interior_angle(c.V2, c.V1, c.V3);
  c.phi3 = interior_angle(c.V3, c.V1, c.V2);
  for (int i = 0; i < 3; ++i) c.pursuer_assignment[i] = farthest[lab.order[i]];
  return c;
}

}  // namespace detail

// Construct the evader's cell from player positions.
//
// Vertex k of the unlabeled cell is the meet of the two bisectors not
// involving pursuer k, which makes pursuer k the one assigned to (farthest
// from) that vertex. The farthest-pursuer property is re-derived from
// distances afterwards as a cross-check; disagreement means the positions are
// too ill-conditioned to trust and raises NumericalDegeneracy.
inline VoronoiCell voronoi_cell(const PlayerSet& ps) {
  if (!assert_admissible(ps))
    throw NotATriangle(
        "voronoi_cell(): players are not admissible (evader must lie strictly inside the "
        "pursuer triangle and all points must be distinct)");
  const Point E = ps.evader;
  std::array<Line, 3> bis{};
  for (int i = 0; i < 3; ++i)
    bis[i] = Line{(ps.pursuers[i] + E) / 2.0, perp(ps.pursuers[i] - E)};

  std::array<Point, 3> W{};
  std::array<int, 3> farthest{};
  const double diam = detail::max_pairwise_distance(ps.pursuers);
  for (int k = 0; k < 3; ++k) {
    const Line& a = bis[(k + 1) % 3];
    const Line& b = bis[(k + 2) % 3];
    Point v;
    try {
      v = intersect(a, b);
    } catch (const ParallelLines&) {
      throw NumericalDegeneracy("voronoi_cell(): bisectors numerically parallel");
    }
    if (!is_finite(v)) throw NumericalDegeneracy("voronoi_cell(): non-finite cell vertex");
    // Cross-check: pursuer k must be strictly farther from this vertex than
    // the two pursuers whose bisectors meet here (those are equidistant with
    // the evader by construction).
    const double dk = dist(v, ps.pursuers[k]);
    const double de = dist(v, E);
    if (!(dk > de * (1.0 + 1e-12) - 1e-12 * diam))
      throw NumericalDegeneracy("voronoi_cell(): farthest-pursuer cross-check failed");
    W[k] = v;
    farthest[k] = k;
  }
  return detail::labeled_cell(W, farthest);
}

// Label a bare triangle with the same edge-ordering convention. The
// pursuer_assignment is the identity, matching the canonical reflected
// pursuers of pursuers_from_cell().
inline VoronoiCell label_triangle(const std::array<Point, 3>& tri) {
  for (const Point& p : tri)
    if (!is_finite(p)) throw NotATriangle("label_triangle(): non-finite vertex");
  const double longest = detail::max_pairwise_distance(tri);
  if (!(longest > 0.0) ||
      std::abs(cross(tri[1] - tri[0], tri[2] - tri[0])) <= 1e-15 * longest * longest)
    throw NotATriangle("label_triangle(): vertices are (near-)collinear");
  return detail::labeled_cell(tri, {0, 1, 2});
}

// Invert the cell construction: place pursuer i at the reflection of `evader`
// across the edge line opposite tri[i]. The resulting players are admissible
// and reproduce `tri` as the evader's cell.
inline PlayerSet pursuers_from_cell(const std::array<Point, 3>& tri, Point evader) {
  const auto d = detail::signed_interior_distances(tri, evader);
  const double diam = detail::max_pairwise_distance(tri);
  if (!(diam > 0.0) || !(*std::min_element(d.begin(), d.end()) > 1e-12 * diam))
    throw EvaderOutsideCell("pursuers_from_cell(): point not strictly inside the triangle");
  PlayerSet ps;
  ps.evader = evader;
  for (int i = 0; i < 3; ++i) {
    const Line edge{tri[(i + 1) % 3], tri[(i + 2) % 3] - tri[(i + 1) % 3]};
    ps.pursuers[i] = reflect_across(evader, edge);
  }
  return ps;
}

inline PlayerSet pursuers_from_cell(const VoronoiCell& cell, Point evader) {
  return pursuers_from_cell(std::array<Point, 3>{cell.V1, cell.V2, cell.V3}, evader);
}

// The evader-side construction on a cell: the chord through E parallel to
// edge l, its endpoints on the other two edges, and the three travel
// directions built from them.
//
//   S = chord  v  edge s (V2V3 side),  Q = chord  v  edge m (V1V3 side)
//   v_QE = (Q - E)/|Q - E|,  v_SE = (S - E)/|S - E|,  v_V1Q = (V1 - Q)/|V1 - Q|
//
// Because the chord is parallel to V1 - V2 and Q sits on edge m, these
// normalized directions equal unit(V1 - V2), unit(V2 - V1) and unit(V1 - V3)
// exactly; they are computed from the vertices, which stays well-conditioned
// even when E is within rounding distance of an edge.
struct AnchorPoints {
  Point S, Q;
  Direction v_QE, v_SE, v_V1Q;
};

inline AnchorPoints anchor_points(const VoronoiCell& cell, Point evader) {
  const std::array<Point, 3> tri{cell.V1, cell.V2, cell.V3};
  const auto d = detail::signed_interior_distances(tri, evader);
  if (!(*std::min_element(d.begin(), d.end()) > 0.0))
    throw DegenerateCell("anchor_points(): evader not strictly inside the cell");
  const Line chord{evader, cell.V1 - cell.V2};
  AnchorPoints a;
  try {
    a.Q = intersect(chord, edge_line_m(cell));
    a.S = intersect(chord, edge_line_s(cell));
  } catch (const ParallelLines&) {
    throw DegenerateCell("anchor_points(): chord parallel to a cell edge");
  }
  a.v_QE = unit(cell.V1 - cell.V2);
  a.v_SE = -a.v_QE;
  a.v_V1Q = unit(cell.V1 - cell.V3);
  return a;
}

// Unit heading at angle `theta` from the chord direction v_QE, measured in
// the cell's own chirality: theta = 0, pi and 2*pi - phi1 give v_QE, v_SE and
// v_V1Q no matter which way the labeled vertices wind. Mirrored cells get
// mirrored headings, so every angle-indexed quantity (such as the decay-rate
// regimes keyed by {phi2, pi - phi1, pi, pi + phi2, 2*pi - phi1}) is
// independent of the cell's orientation in the plane.
inline Direction chord_heading(const VoronoiCell& cell, const AnchorPoints& a, double theta) {
  const double winding = cross(cell.V2 - cell.V1, cell.V3 - cell.V1);
  return rotate(a.v_QE, winding < 0.0 ? theta : -theta);
}

}  // namespace pursuit
