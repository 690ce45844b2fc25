#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "pursuit/bounds.hpp"
#include "pursuit/engine.hpp"
#include "pursuit/geometry.hpp"

namespace pursuit {

// All exported doubles use %.17g: the shortest form that survives a
// text -> double -> text round trip bit-exactly.
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void to_json(nlohmann::json& j, const Vec2& v) { j = nlohmann::json{v.x, v.y}; }

inline void from_json(const nlohmann::json& j, Vec2& v) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("expected a point as a two-element array [x, y]");
  v.x = j.at(0).get<double>();
  v.y = j.at(1).get<double>();
}

inline void to_json(nlohmann::json& j, const PlayerSet& ps) {
  j = nlohmann::json{{"evader", ps.evader},
                     {"pursuers", {ps.pursuers[0], ps.pursuers[1], ps.pursuers[2]}}};
}

inline void from_json(const nlohmann::json& j, PlayerSet& ps) {
  j.at("evader").get_to(ps.evader);
  const auto& arr = j.at("pursuers");
  if (!arr.is_array() || arr.size() != 3)
    throw std::invalid_argument("expected exactly three pursuers");
  for (int i = 0; i < 3; ++i) arr.at(i).get_to(ps.pursuers[i]);
}

inline void to_json(nlohmann::json& j, const SimParams& sp) {
  j = nlohmann::json{{"dt", sp.dt},
                     {"capture_radius", sp.capture_radius},
                     {"max_time", sp.max_time},
                     {"mode", sp.mode == SimParams::Mode::discrete ? "discrete" : "continuous"}};
}

inline void from_json(const nlohmann::json& j, SimParams& sp) {
  if (j.contains("dt")) j.at("dt").get_to(sp.dt);
  if (j.contains("capture_radius")) j.at("capture_radius").get_to(sp.capture_radius);
  if (j.contains("max_time")) j.at("max_time").get_to(sp.max_time);
  if (j.contains("mode")) {
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "continuous")
      sp.mode = SimParams::Mode::continuous;
    else if (mode == "discrete")
      sp.mode = SimParams::Mode::discrete;
    else
      throw std::invalid_argument("mode must be \"continuous\" or \"discrete\"");
  }
}

inline void to_json(nlohmann::json& j, const BoundsReport& r) {
  j = nlohmann::json{{"M_D", r.M_D},       {"B_lower", r.B_lower},
                     {"B_P", r.B_P},       {"delta_lower", r.delta_lower},
                     {"delta0", r.delta0}, {"l", r.l},
                     {"m", r.m},           {"s", r.s},
                     {"i_star", r.i_star}};
}

// CSV trace: fixed header, one row per recorded sample.
inline void write_trace_csv(const GameTrace& tr, std::ostream& os) {
  os << "t,Ex,Ey,P1x,P1y,P2x,P2y,P3x,P3y\n";
  for (const GameState& s : tr.samples) {
    os << fmt_double(s.t) << ',' << fmt_double(s.E.x) << ',' << fmt_double(s.E.y);
    for (const Point& p : s.P) os << ',' << fmt_double(p.x) << ',' << fmt_double(p.y);
    os << '\n';
  }
}

inline nlohmann::json trace_to_json(const GameTrace& tr, const SimParams& sp) {
  nlohmann::json j;
  j["params"] = sp;
  j["captured"] = tr.captured;
  if (tr.capture_time) j["capture_time"] = *tr.capture_time;
  if (tr.capturing_pursuer) j["capturing_pursuer"] = *tr.capturing_pursuer;
  auto& samples = j["samples"] = nlohmann::json::array();
  for (const GameState& s : tr.samples)
    samples.push_back({s.t, s.E.x, s.E.y, s.P[0].x, s.P[0].y, s.P[1].x, s.P[1].y, s.P[2].x,
                       s.P[2].y});
  return j;
}

inline void write_trace_json(const GameTrace& tr, const SimParams& sp, std::ostream& os) {
  os << trace_to_json(tr, sp).dump(2) << '\n';
}

}  // namespace pursuit
