#pragma once

// Three-point subsets of minimal triangles, and the points they force.
//
// A border triangle is {p, p+u, p+2u, r} with u primitive and
// det2(u, r-p) = +-1; an internal triangle is three vertices plus their
// centroid. Their 3-subsets fall into exactly four kinds, distinguished by
// |det2| of the triple: 0 (consecutive collinear), 1 (unimodular),
// 2 (border vertices), 3 (internal vertices).

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "tbp/lattice.hpp"

namespace tbp {

enum class Rule { B, I, BI };

inline const char* to_string(Rule r) {
  switch (r) {
    case Rule::B: return "B";
    case Rule::I: return "I";
    case Rule::BI: return "BI";
  }
  return "?";
}

inline std::optional<Rule> rule_from_string(const std::string& s) {
  if (s == "B" || s == "b") return Rule::B;
  if (s == "I" || s == "i") return Rule::I;
  if (s == "BI" || s == "bi") return Rule::BI;
  return std::nullopt;
}

inline bool uses_border(Rule r) { return r != Rule::I; }
inline bool uses_internal(Rule r) { return r != Rule::B; }

enum class PatternKind { ConsecutiveCollinear, UnimodularTriple, BorderVertexTriple, InternalVertexTriple };

inline const char* to_string(PatternKind k) {
  switch (k) {
    case PatternKind::ConsecutiveCollinear: return "ConsecutiveCollinear";
    case PatternKind::UnimodularTriple: return "UnimodularTriple";
    case PatternKind::BorderVertexTriple: return "BorderVertexTriple";
    case PatternKind::InternalVertexTriple: return "InternalVertexTriple";
  }
  return "?";
}

inline std::optional<PatternKind> pattern_kind_from_string(const std::string& s) {
  for (auto k : {PatternKind::ConsecutiveCollinear, PatternKind::UnimodularTriple,
                 PatternKind::BorderVertexTriple, PatternKind::InternalVertexTriple})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

/// Whether a pattern kind is a 3-subset of some hyperedge of the rule.
inline bool kind_applies(PatternKind k, Rule rule) {
  switch (k) {
    case PatternKind::ConsecutiveCollinear:
    case PatternKind::BorderVertexTriple: return uses_border(rule);
    case PatternKind::UnimodularTriple: return true;
    case PatternKind::InternalVertexTriple: return uses_internal(rule);
  }
  return false;
}

struct TriplePattern {
  PatternKind kind = PatternKind::UnimodularTriple;
  // ConsecutiveCollinear: {p, p+u, p+2u}. BorderVertexTriple: {p, p+2u, r}.
  // Otherwise sorted.
  std::array<LatticePoint, 3> points;
  std::optional<LatticeVector> step;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

/// {r : det2(u, r - p) = +-1}: the fourth points of every border triangle
/// containing {p, p+u, p+2u}. Never materialised without a window.
struct CompletionFamily {
  LatticePoint p;
  LatticeVector u;

  friend bool operator==(const CompletionFamily&, const CompletionFamily&) = default;

  bool contains(const LatticePoint& r) const {
    const Int d = det2(u, r - p);
    return d == 1 || d == -1;
  }

  template <class F>
  void for_each_in(const Box& box, F&& f) const {
    const LatticeVector s = det_one_partner(u);
    for_each_on_line(p + s, u, box, f);
    for_each_on_line(p - s, u, box, f);
  }
};

struct CompletionSet {
  std::vector<LatticePoint> finite;  // sorted, deduplicated
  std::optional<CompletionFamily> family;

  friend bool operator==(const CompletionSet&, const CompletionSet&) = default;
};

namespace detail {

inline bool consecutive(const LatticePoint& a, const LatticePoint& mid, const LatticePoint& b) {
  return a.x + b.x == 2 * mid.x && a.y + b.y == 2 * mid.y && (mid - a).is_primitive();
}

inline bool even(const LatticeVector& v) { return v.dx % 2 == 0 && v.dy % 2 == 0; }

}  // namespace detail

/// Classifies a triple of distinct points as a 3-subset of a hyperedge of
/// the given rule, or returns nothing.
inline std::optional<TriplePattern> match_triple(const LatticePoint& a, const LatticePoint& b,
                                                 const LatticePoint& c, Rule rule) {
  if (a == b || b == c || a == c) throw Error(Errc::DuplicatePoints, to_string(a) + to_string(b) + to_string(c));
  const Int d = det2(b - a, c - a);
  TriplePattern t;
  if (d == 0) {
    if (!uses_border(rule)) return std::nullopt;
    const std::array<std::array<LatticePoint, 3>, 3> orders{{{a, b, c}, {b, a, c}, {a, c, b}}};
    for (const auto& o : orders) {
      if (detail::consecutive(o[0], o[1], o[2])) {
        LatticePoint lo = std::min(o[0], o[2]), hi = std::max(o[0], o[2]);
        t.kind = PatternKind::ConsecutiveCollinear;
        t.points = {lo, o[1], hi};
        t.step = o[1] - lo;
        return t;
      }
    }
    return std::nullopt;
  }
  if (d == 1 || d == -1) {
    t.kind = PatternKind::UnimodularTriple;
    t.points = {a, b, c};
    std::sort(t.points.begin(), t.points.end());
    return t;
  }
  if (d == 2 || d == -2) {
    if (!uses_border(rule)) return std::nullopt;
    const std::array<std::array<LatticePoint, 3>, 3> roles{{{a, b, c}, {a, c, b}, {b, c, a}}};
    for (const auto& o : roles) {
      const LatticeVector e = o[1] - o[0];
      if (!detail::even(e)) continue;
      const LatticeVector u{e.dx / 2, e.dy / 2};
      const Int du = det2(u, o[2] - o[0]);
      if (u.is_primitive() && (du == 1 || du == -1)) {
        LatticePoint lo = std::min(o[0], o[1]), hi = std::max(o[0], o[1]);
        t.kind = PatternKind::BorderVertexTriple;
        t.points = {lo, hi, o[2]};
        t.step = LatticeVector{(hi.x - lo.x) / 2, (hi.y - lo.y) / 2};
        return t;
      }
    }
    return std::nullopt;
  }
  if (d == 3 || d == -3) {
    if (!uses_internal(rule)) return std::nullopt;
    if (!(b - a).is_primitive() || !(c - a).is_primitive() || !(c - b).is_primitive()) return std::nullopt;
    t.kind = PatternKind::InternalVertexTriple;
    t.points = {a, b, c};
    std::sort(t.points.begin(), t.points.end());
    return t;
  }
  return std::nullopt;
}

/// The points each completing a hyperedge of the rule together with t.
inline CompletionSet completions(const TriplePattern& t, Rule rule) {
  if (!kind_applies(t.kind, rule))
    throw Error(Errc::RuleMismatch, std::string(to_string(t.kind)) + " under rule " + to_string(rule));
  CompletionSet out;
  const auto& [x, y, z] = t.points;
  auto reflect = [](const LatticePoint& about, const LatticePoint& q) { return about + (about - q); };
  switch (t.kind) {
    case PatternKind::ConsecutiveCollinear:
      out.family = CompletionFamily{t.points[0], *t.step};
      break;
    case PatternKind::UnimodularTriple:
      if (uses_border(rule)) {
        out.finite.insert(out.finite.end(), {reflect(x, y), reflect(y, x), reflect(x, z), reflect(z, x),
                                             reflect(y, z), reflect(z, y)});
      }
      if (uses_internal(rule)) {
        // each vertex in turn as the centroid: w = 3x - y - z
        auto opposite = [](const LatticePoint& g, const LatticePoint& q, const LatticePoint& r) {
          return g + (g - q) + (g - r);
        };
        out.finite.insert(out.finite.end(), {opposite(x, y, z), opposite(y, x, z), opposite(z, x, y)});
      }
      break;
    case PatternKind::BorderVertexTriple:
      out.finite.push_back(t.points[0] + *t.step);
      break;
    case PatternKind::InternalVertexTriple:
      out.finite.push_back(LatticePoint{(x.x + y.x + z.x) / 3, (x.y + y.y + z.y) / 3});
      break;
  }
  std::sort(out.finite.begin(), out.finite.end());
  out.finite.erase(std::unique(out.finite.begin(), out.finite.end()), out.finite.end());
  return out;
}

/// Enumerates every r in box that could form a pattern triple with p and q
/// (a superset; callers confirm with match_triple). Returns false when the
/// pair cannot occur in any pattern.
///
/// Every pair inside a pattern differs by a primitive vector or twice one,
/// and the triple has |det2| <= 3, so r lies on a few lines parallel to q-p.
template <class F>
bool for_each_candidate_third(const LatticePoint& p, const LatticePoint& q, const Box& box, Rule rule, F&& f) {
  const LatticeVector v = q - p;
  const Int g = v.content();
  if (g != 1 && g != 2) return false;
  const LatticeVector w{v.dx / g, v.dy / g};
  auto emit = [&](const LatticePoint& r) {
    if (box.contains(r)) f(r);
  };
  if (uses_border(rule)) {
    if (g == 1) {
      emit(p - w);
      emit(q + w);
    } else {
      emit(p + w);
    }
  }
  const LatticeVector s = det_one_partner(w);
  // det2(v, r - p) = g * k must lie in {+-1, +-2, +-3}
  for (Int k = -3; k <= 3; ++k) {
    if (k == 0) continue;
    const Int dv = g * k;
    if (dv < -3 || dv > 3) continue;
    if (!uses_border(rule) && (dv == 2 || dv == -2)) continue;
    if (!uses_internal(rule) && (dv == 3 || dv == -3)) continue;
    for_each_on_line(p + s * k, w, box, emit);
  }
  return true;
}

}  // namespace tbp
