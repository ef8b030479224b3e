#pragma once

// JSON forms of the library's values (nlohmann::json, ADL hooks).

#include <json.hpp>

#include "tbp/closure.hpp"
#include "tbp/periodic.hpp"
#include "tbp/search.hpp"

namespace tbp {

using json = nlohmann::json;

namespace detail {

inline Int json_int(const json& j) {
  if (!j.is_number_integer()) throw Error(Errc::ParseError, "expected an integer, got " + j.dump());
  return j.get<Int>();
}

}  // namespace detail

inline void to_json(json& j, const LatticePoint& p) { j = json::array({p.x, p.y}); }

inline void from_json(const json& j, LatticePoint& p) {
  if (!j.is_array() || j.size() != 2) throw Error(Errc::ParseError, "point must be [x, y], got " + j.dump());
  p = {detail::json_int(j[0]), detail::json_int(j[1])};
}

inline void to_json(json& j, const LatticeVector& v) { j = json::array({v.dx, v.dy}); }

inline void from_json(const json& j, LatticeVector& v) {
  LatticePoint p;
  from_json(j, p);
  v = {p.x, p.y};
}

inline void to_json(json& j, const ClassifiedTriangle& t) {
  j = json{{"vertices", t.vertices},
           {"kind", to_string(t.kind)},
           {"fourth", t.fourth ? json(*t.fourth) : json(nullptr)},
           {"area2", t.area2},
           {"boundary_count", t.boundary_count},
           {"interior_count", t.interior_count}};
}

inline void from_json(const json& j, ClassifiedTriangle& t) {
  t.vertices = j.at("vertices").get<std::array<LatticePoint, 3>>();
  auto k = triangle_kind_from_string(j.at("kind").get<std::string>());
  if (!k) throw Error(Errc::ParseError, "unknown triangle kind");
  t.kind = *k;
  t.fourth = j.at("fourth").is_null() ? std::nullopt : std::optional(j.at("fourth").get<LatticePoint>());
  t.area2 = j.value("area2", Int{0});
  t.boundary_count = j.value("boundary_count", Int{0});
  t.interior_count = j.value("interior_count", Int{0});
}

inline void to_json(json& j, const TriplePattern& t) {
  j = json{{"kind", to_string(t.kind)}, {"points", t.points}, {"step", t.step ? json(*t.step) : json(nullptr)}};
}

inline void from_json(const json& j, TriplePattern& t) {
  auto k = pattern_kind_from_string(j.at("kind").get<std::string>());
  if (!k) throw Error(Errc::ParseError, "unknown pattern kind");
  t.kind = *k;
  t.points = j.at("points").get<std::array<LatticePoint, 3>>();
  t.step = j.at("step").is_null() ? std::nullopt : std::optional(j.at("step").get<LatticeVector>());
}

inline void to_json(json& j, const ClosureStep& s) { j = json{{"pattern", s.pattern}, {"added", s.added}}; }

inline void from_json(const json& j, ClosureStep& s) {
  s.pattern = j.at("pattern").get<TriplePattern>();
  s.added = j.at("added").get<LatticePoint>();
}

/// Rectangles as {"x0","x1","y0","y1"}, anything else as {"points": [...]}.
inline json window_to_json(const Window& w) {
  if (w.is_rect()) {
    const Box& b = w.bounds();
    return json{{"x0", b.x0}, {"x1", b.x1}, {"y0", b.y0}, {"y1", b.y1}};
  }
  return json{{"points", w.points()}};
}

inline WindowPtr window_from_json(const json& j) {
  if (j.contains("points")) return Window::from_points(j.at("points").get<PointSet>());
  return Window::rect(detail::json_int(j.at("x0")), detail::json_int(j.at("x1")), detail::json_int(j.at("y0")),
                      detail::json_int(j.at("y1")));
}

inline json cellset_to_json(const CellSet& s) {
  return json{{"window", window_to_json(*s.window())}, {"points", s.points()}};
}

inline CellSet cellset_from_json(const json& j) {
  auto w = window_from_json(j.at("window"));
  const auto pts = j.at("points").get<PointSet>();
  for (const auto& p : pts)
    if (!w->contains(p)) throw Error(Errc::ParseError, "point " + to_string(p) + " outside the window");
  return CellSet::from_points(w, pts);
}

inline void to_json(json& j, const PeriodicSet& p) { j = json{{"m", p.period()}, {"residues", p.residues()}}; }

inline void from_json(const json& j, PeriodicSet& p) {
  p = PeriodicSet(detail::json_int(j.at("m")), j.at("residues").get<PointSet>());
}

inline void to_json(json& j, const DetCoset& c) {
  j = json{{"base", c.base}, {"stride", c.stride}, {"modulus", c.modulus}};
}

inline void from_json(const json& j, DetCoset& c) {
  c.base = detail::json_int(j.at("base"));
  c.stride = detail::json_int(j.at("stride"));
  c.modulus = detail::json_int(j.at("modulus"));
}

inline void to_json(json& j, const RefutedPattern& r) {
  j = json{{"kind", to_string(r.kind)}, {"residues", r.residues}, {"obstruction", to_string(r.obstruction)}};
  if (r.vector) j["vector"] = *r.vector;
  if (r.target) j["target"] = *r.target;
  if (r.reachable) j["reachable"] = *r.reachable;
  if (r.obstruction == Obstruction::FourthPointPresent) j["fourth"] = r.fourth;
}

inline void from_json(const json& j, RefutedPattern& r) {
  auto k = pattern_kind_from_string(j.at("kind").get<std::string>());
  if (!k) throw Error(Errc::ParseError, "unknown pattern kind");
  r.kind = *k;
  r.residues = j.at("residues").get<std::array<LatticePoint, 3>>();
  const auto o = j.at("obstruction").get<std::string>();
  if (o == "NoPrimitiveLift") r.obstruction = Obstruction::NoPrimitiveLift;
  else if (o == "DetUnreachable") r.obstruction = Obstruction::DetUnreachable;
  else if (o == "FourthPointPresent") r.obstruction = Obstruction::FourthPointPresent;
  else throw Error(Errc::ParseError, "unknown obstruction " + o);
  r.vector = j.contains("vector") ? std::optional(j["vector"].get<LatticeVector>()) : std::nullopt;
  r.target = j.contains("target") ? std::optional(detail::json_int(j["target"])) : std::nullopt;
  r.reachable = j.contains("reachable") ? std::optional(j["reachable"].get<DetCoset>()) : std::nullopt;
  r.fourth = j.contains("fourth") ? j["fourth"].get<std::vector<LatticePoint>>() : std::vector<LatticePoint>{};
}

inline void to_json(json& j, const Witness& w) { j = json{{"triangle", w.triangle}, {"missing", w.missing}}; }

inline void from_json(const json& j, Witness& w) {
  w.triangle = j.at("triangle").get<ClassifiedTriangle>();
  w.missing = j.at("missing").get<LatticePoint>();
}

inline void to_json(json& j, const StabilityVerdict& v) {
  j = json{{"status", to_string(v.status)}, {"method", v.method}, {"certificate", v.certificate}};
  j["witness"] = v.witness ? json(*v.witness) : json(nullptr);
}

inline void from_json(const json& j, StabilityVerdict& v) {
  const auto s = j.at("status").get<std::string>();
  if (s == "Stable") v.status = Verdict::Stable;
  else if (s == "Unstable") v.status = Verdict::Unstable;
  else if (s == "Unknown") v.status = Verdict::Unknown;
  else throw Error(Errc::ParseError, "unknown status " + s);
  v.method = j.at("method").get<std::string>();
  v.certificate = j.at("certificate").get<std::vector<RefutedPattern>>();
  v.witness = j.at("witness").is_null() ? std::nullopt : std::optional(j.at("witness").get<Witness>());
}

/// Timing-dependent fields are left out unless asked for, so equal
/// searches serialise identically.
inline json search_result_to_json(const SearchResult& r, bool diagnostics = false) {
  json reps = json::array();
  for (const auto& s : r.representatives) reps.push_back(s.points());
  json j{{"max_size", r.max_size}, {"witness_count", r.witness_count}, {"representatives", reps}};
  if (diagnostics) {
    j["nodes_explored"] = r.nodes_explored;
    j["elapsed_seconds"] = r.elapsed.count();
  }
  return j;
}

inline json rational_to_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_string(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "bad rational " + s);
  }
}

}  // namespace tbp
