#pragma once

// Doubly periodic sets R + mZ^2 and a three-valued stability verifier.
//
// The verifier works on residue patterns: a pattern triple reduced mod m
// stands for all of its lifts. A pattern is refuted when no lift can have
// the primitivity or determinant the pattern needs (det2 of lifts is known
// exactly mod m^2), or, for the I rule, when every fourth point a lift
// could force is already in the set. Anything left over goes to a bounded
// search for an explicit violating triangle.

#include <boost/rational.hpp>

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "tbp/patterns.hpp"

namespace tbp {

using Rational = boost::rational<Int>;

inline std::string to_string(const Rational& q) {
  return q.denominator() == 1 ? std::to_string(q.numerator())
                              : std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

class PeriodicSet {
 public:
  PeriodicSet() = default;

  /// Residues are reduced mod m; m must be positive.
  PeriodicSet(Int m, const PointSet& residues) : m_(m) {
    if (m < 1) throw Error(Errc::BadParameter, "period must be at least 1");
    if (Wide(m) * m > Wide(1) << 24) throw Error(Errc::BadParameter, "period too large");
    for (const auto& p : residues) r_.insert(reduce(p));
  }

  Int period() const { return m_; }
  const PointSet& residues() const { return r_; }

  LatticePoint reduce(const LatticePoint& p) const { return {mod(p.x, m_), mod(p.y, m_)}; }
  LatticeVector reduce(const LatticeVector& v) const { return {mod(v.dx, m_), mod(v.dy, m_)}; }

  bool contains(const LatticePoint& p) const { return r_.count(reduce(p)) != 0; }

  bool is_full() const { return Wide(r_.size()) == Wide(m_) * m_; }

  friend bool operator==(const PeriodicSet&, const PeriodicSet&) = default;

 private:
  Int m_ = 1;
  PointSet r_;
};

inline Rational density(const PeriodicSet& p) {
  return Rational(static_cast<Int>(p.residues().size()), p.period() * p.period());
}

/// Density of points whose right neighbour is also in the set.
inline Rational gamma(const PeriodicSet& p) {
  Int n = 0;
  for (const auto& r : p.residues())
    if (p.contains(r + LatticeVector{1, 0})) ++n;
  return Rational(n, p.period() * p.period());
}

/// {det2(d1, d2) mod modulus : d1, d2 lifts of the residues} as the coset
/// base + stride * Z. stride always divides modulus.
struct DetCoset {
  Int base = 0;
  Int stride = 1;
  Int modulus = 1;

  bool contains(Int t) const { return mod(t - base, stride) == 0; }

  std::vector<Int> values() const {
    std::vector<Int> v;
    for (Int t = mod(base, stride); t < modulus; t += stride) v.push_back(t);
    return v;
  }

  friend bool operator==(const DetCoset&, const DetCoset&) = default;
};

inline DetCoset det_reachable_mod_m2(const LatticeVector& d1, const LatticeVector& d2, Int m) {
  if (m < 1) throw Error(Errc::BadParameter, "modulus must be at least 1");
  // det2(d1 + m a, d2 + m b) = det2(d1, d2) + m (det2(a, d2) + det2(d1, b)) mod m^2
  const Int g = gcd(gcd(gcd(d1.dx, d1.dy), gcd(d2.dx, d2.dy)), m);
  DetCoset c;
  c.modulus = detail::checked_mul(m, m);
  c.stride = m * g;
  c.base = mod(det2(d1, d2), c.stride);
  return c;
}

/// Some v with v = d (mod m) is primitive.
inline bool has_primitive_lift(const LatticeVector& d, Int m) {
  if (m < 1) throw Error(Errc::BadParameter, "modulus must be at least 1");
  return gcd(gcd(d.dx, d.dy), m) == 1;
}

enum class Verdict { Stable, Unstable, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "Stable";
    case Verdict::Unstable: return "Unstable";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

enum class Obstruction { NoPrimitiveLift, DetUnreachable, FourthPointPresent };

inline const char* to_string(Obstruction o) {
  switch (o) {
    case Obstruction::NoPrimitiveLift: return "NoPrimitiveLift";
    case Obstruction::DetUnreachable: return "DetUnreachable";
    case Obstruction::FourthPointPresent: return "FourthPointPresent";
  }
  return "?";
}

/// One residue pattern and why no lift of it violates stability.
struct RefutedPattern {
  PatternKind kind = PatternKind::UnimodularTriple;
  // Residues of the three points. ConsecutiveCollinear: p, p+u, p+2u.
  // BorderVertexTriple: the doubled edge first, then the apex.
  std::array<LatticePoint, 3> residues;
  Obstruction obstruction = Obstruction::NoPrimitiveLift;
  // NoPrimitiveLift: the residue vector that has no primitive lift. For a
  // BorderVertexTriple this may instead be the doubled edge b - a, meaning no
  // lift of it is twice a primitive vector.
  std::optional<LatticeVector> vector;
  // DetUnreachable: the |det2| required and the reachable coset.
  std::optional<Int> target;
  std::optional<DetCoset> reachable;
  // FourthPointPresent: every residue a lift could force (all in the set).
  std::vector<LatticePoint> fourth;

  friend bool operator==(const RefutedPattern&, const RefutedPattern&) = default;
};

/// A minimal triangle with exactly three of its four points in the set.
struct Witness {
  ClassifiedTriangle triangle;
  LatticePoint missing;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct StabilityVerdict {
  Verdict status = Verdict::Unknown;
  // "full", "obstruction", "closure", "witness" or "exhausted".
  std::string method;
  std::vector<RefutedPattern> certificate;
  std::optional<Witness> witness;
};

struct VerifyOptions {
  // The witness search scans windows of half-width m, 2m, 4m, ... up to
  // cap_factor * m.
  Int cap_factor = 8;
};

/// The triangle spanned by a 4-point hyperedge, or nothing.
inline std::optional<ClassifiedTriangle> hyperedge_triangle(const std::array<LatticePoint, 4>& pts) {
  for (int skip = 0; skip < 4; ++skip) {
    std::array<LatticePoint, 3> v;
    int k = 0;
    for (int i = 0; i < 4; ++i)
      if (i != skip) v[k++] = pts[i];
    auto t = classify_triangle(v[0], v[1], v[2]);
    if (t.is_minimal() && t.fourth == pts[skip]) return t;
  }
  return std::nullopt;
}

inline bool triangle_applies(TriangleKind k, Rule rule) {
  return (k == TriangleKind::Border && uses_border(rule)) || (k == TriangleKind::Internal && uses_internal(rule));
}

/// Independent re-check of a witness against the set.
inline bool validate_witness(const PeriodicSet& p, Rule rule, const Witness& w) {
  const auto& t = w.triangle;
  const auto re = classify_triangle(t.vertices[0], t.vertices[1], t.vertices[2]);
  if (!re.is_minimal() || !triangle_applies(re.kind, rule) || re.fourth != t.fourth) return false;
  int present = 0;
  bool missing_is_member = false;
  for (const auto& q : {t.vertices[0], t.vertices[1], t.vertices[2], *t.fourth}) {
    if (p.contains(q)) ++present;
    else if (q != w.missing) return false;
    if (q == w.missing) missing_is_member = true;
  }
  return present == 3 && missing_is_member;
}

namespace detail {

inline bool even_vec(const LatticeVector& v) { return v.dx % 2 == 0 && v.dy % 2 == 0; }

inline bool reachable_pm(const DetCoset& c, Int t) { return c.contains(t) || c.contains(-t); }

// Strategy 1 on one residue triple (a, b, c) read as kind k. For border
// vertices, a and b span the doubled edge and c is the apex. Returns the
// obstruction, or nothing when some lift may realise the pattern.
inline std::optional<RefutedPattern> obstruct(PatternKind k, const LatticePoint& a, const LatticePoint& b,
                                              const LatticePoint& c, Int m) {
  RefutedPattern rp;
  rp.kind = k;
  rp.residues = {a, b, c};
  auto no_lift = [&](const LatticeVector& v) -> std::optional<RefutedPattern> {
    if (has_primitive_lift(v, m)) return std::nullopt;
    rp.obstruction = Obstruction::NoPrimitiveLift;
    rp.vector = LatticeVector{mod(v.dx, m), mod(v.dy, m)};
    return rp;
  };
  auto no_det = [&](const LatticeVector& d1, const LatticeVector& d2, Int t) -> std::optional<RefutedPattern> {
    const DetCoset cs = det_reachable_mod_m2(d1, d2, m);
    if (reachable_pm(cs, t)) return std::nullopt;
    rp.obstruction = Obstruction::DetUnreachable;
    rp.target = t;
    rp.reachable = cs;
    return rp;
  };
  const LatticeVector d1 = b - a, d2 = c - a;
  switch (k) {
    case PatternKind::ConsecutiveCollinear:
      return no_lift(d1);
    case PatternKind::UnimodularTriple:
      return no_det(d1, d2, 1);
    case PatternKind::BorderVertexTriple: {
      // b - a lifts to 2u with u primitive; c - a is primitive; det2(2u, c - a) = +-2.
      if (m % 2 == 0 && !even_vec(LatticeVector{mod(d1.dx, m), mod(d1.dy, m)})) {
        rp.obstruction = Obstruction::NoPrimitiveLift;
        rp.vector = LatticeVector{mod(d1.dx, m), mod(d1.dy, m)};
        return rp;
      }
      if (auto r = no_lift(d2)) return r;
      if (auto r = no_lift(c - b)) return r;
      if (auto r = no_det(d1, d2, 2)) return r;
      // Halve the doubled edge: u is determined mod m (m odd) or mod m/2.
      const Int mh = m % 2 == 0 ? m / 2 : m;
      LatticeVector u;
      if (m % 2 == 0) {
        u = LatticeVector{mod(d1.dx, m) / 2, mod(d1.dy, m) / 2};
      } else {
        const Int inv2 = (m + 1) / 2;
        u = LatticeVector{mod(d1.dx * inv2, m), mod(d1.dy * inv2, m)};
      }
      if (!has_primitive_lift(u, mh)) {
        rp.obstruction = Obstruction::NoPrimitiveLift;
        rp.vector = LatticeVector{mod(d1.dx, m), mod(d1.dy, m)};
        return rp;
      }
      const DetCoset cs = det_reachable_mod_m2(u, d2, mh);
      if (!reachable_pm(cs, 1)) {
        rp.obstruction = Obstruction::DetUnreachable;
        rp.target = 1;
        rp.reachable = cs;
        return rp;
      }
      return std::nullopt;
    }
    case PatternKind::InternalVertexTriple:
      if (auto r = no_lift(d1)) return r;
      if (auto r = no_lift(d2)) return r;
      if (auto r = no_lift(c - b)) return r;
      return no_det(d1, d2, 3);
  }
  return std::nullopt;
}

// All g mod m with 3 g = s (mod m), per coordinate.
inline std::vector<Int> third_roots(Int s, Int m) {
  std::vector<Int> out;
  for (Int g = 0; g < m; ++g)
    if (mod(3 * g - s, m) == 0) out.push_back(g);
  return out;
}

struct Key {
  LatticePoint missing;
  Int spread;
  std::array<LatticePoint, 3> present;
  friend auto operator<=>(const Key&, const Key&) = default;
};

}  // namespace detail

/// Searches windows [-L, L+m)^2, L = m, 2m, 4m, ... up to the cap, for a
/// triangle of the rule with exactly three points in the set. Within the
/// first window that has any, returns the one whose missing point, moved
/// into [0, m)^2 by a period translation, is least; ties go to the most
/// compact triangle.
inline std::optional<Witness> find_witness(const PeriodicSet& p, Rule rule, const VerifyOptions& opt = {}) {
  const Int m = p.period();
  if (p.is_full() || p.residues().empty()) return std::nullopt;
  for (Int L = m;; L *= 2) {
    const Int cap = opt.cap_factor * m;
    if (L > cap) L = cap;
    const Box box{-L, L + m - 1, -L, L + m - 1};
    std::vector<LatticePoint> members;
    for (Int y = box.y0; y <= box.y1; ++y)
      for (Int x = box.x0; x <= box.x1; ++x)
        if (p.contains({x, y})) members.push_back({x, y});
    std::optional<detail::Key> best;
    auto consider = [&](const TriplePattern& t, const LatticePoint& r) {
      if (p.contains(r)) return;
      const LatticeVector shift{r.x - mod(r.x, m), r.y - mod(r.y, m)};
      detail::Key k;
      k.missing = r - shift;
      k.spread = 0;
      for (int i = 0; i < 3; ++i) {
        k.present[i] = t.points[i] - shift;
        const LatticeVector d = k.present[i] - k.missing;
        k.spread += d.dx * d.dx + d.dy * d.dy;
      }
      std::sort(k.present.begin(), k.present.end());
      if (!best || k < *best) best = k;
    };
    for (const auto& a : p.residues()) {
      for (const auto& b : members) {
        if (b == a) continue;
        for_each_candidate_third(a, b, box, rule, [&](const LatticePoint& c) {
          if (c == a || c == b || !p.contains(c)) return;
          auto t = match_triple(a, b, c, rule);
          if (!t) return;
          const CompletionSet cs = completions(*t, rule);
          for (const auto& r : cs.finite) consider(*t, r);
          if (cs.family) cs.family->for_each_in(box, [&](const LatticePoint& r) { consider(*t, r); });
        });
      }
    }
    if (best) {
      const auto& k = *best;
      auto tri = hyperedge_triangle({k.present[0], k.present[1], k.present[2], k.missing});
      if (!tri) throw Error(Errc::DegenerateInput, "witness is not a minimal triangle");
      return Witness{*tri, k.missing};
    }
    if (L >= cap) return std::nullopt;
  }
}

namespace detail {

struct Attempt {
  std::vector<RefutedPattern> refuted;
  bool open = false;  // some pattern was neither obstructed nor closed
};

// Residue multisets a <= b <= c drawn from R.
template <class F>
void for_each_multiset(const PeriodicSet& p, F&& f) {
  const std::vector<LatticePoint> r(p.residues().begin(), p.residues().end());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i; j < r.size(); ++j)
      for (std::size_t k = j; k < r.size(); ++k) f(r[i], r[j], r[k]);
}

inline Attempt attempt(const PeriodicSet& p, Rule rule) {
  const Int m = p.period();
  Attempt out;
  auto note = [&](std::optional<RefutedPattern> rp) {
    if (rp) out.refuted.push_back(std::move(*rp));
    else out.open = true;
  };
  if (uses_border(rule)) {
    for (const auto& a : p.residues())
      for (Int ux = 0; ux < m; ++ux)
        for (Int uy = 0; uy < m; ++uy) {
          const LatticeVector u{ux, uy};
          const LatticePoint b = p.reduce(a + u), c = p.reduce(b + u);
          if (!p.contains(b) || !p.contains(c)) continue;
          note(obstruct(PatternKind::ConsecutiveCollinear, a, b, c, m));
        }
  }
  for_each_multiset(p, [&](const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
    if (auto rp = obstruct(PatternKind::UnimodularTriple, a, b, c, m)) {
      out.refuted.push_back(std::move(*rp));
    } else if (rule == Rule::I) {
      // 3x - y - z for each choice of x; lift-independent mod m.
      std::set<LatticePoint> fourth;
      for (const auto& [x, y, z] : {std::tuple{a, b, c}, std::tuple{b, a, c}, std::tuple{c, a, b}})
        fourth.insert(p.reduce(LatticePoint{3 * x.x - y.x - z.x, 3 * x.y - y.y - z.y}));
      bool all_in = true;
      for (const auto& f : fourth) all_in = all_in && p.contains(f);
      if (all_in) {
        RefutedPattern rp2;
        rp2.kind = PatternKind::UnimodularTriple;
        rp2.residues = {a, b, c};
        rp2.obstruction = Obstruction::FourthPointPresent;
        rp2.fourth.assign(fourth.begin(), fourth.end());
        out.refuted.push_back(std::move(rp2));
      } else {
        out.open = true;
      }
    } else {
      out.open = true;
    }
    if (uses_border(rule)) {
      for (const auto& [e0, e1, apex] : {std::tuple{a, b, c}, std::tuple{a, c, b}, std::tuple{b, c, a}})
        note(obstruct(PatternKind::BorderVertexTriple, e0, e1, apex, m));
    }
    if (uses_internal(rule)) {
      if (auto rp = obstruct(PatternKind::InternalVertexTriple, a, b, c, m)) {
        out.refuted.push_back(std::move(*rp));
      } else if (rule == Rule::I) {
        const auto gx = third_roots(a.x + b.x + c.x, m);
        const auto gy = third_roots(a.y + b.y + c.y, m);
        RefutedPattern rp2;
        rp2.kind = PatternKind::InternalVertexTriple;
        rp2.residues = {a, b, c};
        rp2.obstruction = Obstruction::FourthPointPresent;
        bool all_in = true;
        for (Int x : gx)
          for (Int y : gy) {
            rp2.fourth.push_back({x, y});
            all_in = all_in && p.contains({x, y});
          }
        if (all_in) out.refuted.push_back(std::move(rp2));
        else out.open = true;
      } else {
        out.open = true;
      }
    }
  });
  return out;
}

inline StabilityVerdict verify_single(const PeriodicSet& p, Rule rule, const VerifyOptions& opt) {
  StabilityVerdict v;
  if (p.is_full() || p.residues().empty()) {
    // No triangle has exactly three points in Z^2 or in the empty set.
    v.status = Verdict::Stable;
    v.method = "full";
    return v;
  }
  Attempt at = attempt(p, rule);
  if (!at.open) {
    v.status = Verdict::Stable;
    bool closed = false;
    for (const auto& r : at.refuted) closed = closed || r.obstruction == Obstruction::FourthPointPresent;
    v.method = closed ? "closure" : "obstruction";
    v.certificate = std::move(at.refuted);
    return v;
  }
  if (auto w = find_witness(p, rule, opt)) {
    v.status = Verdict::Unstable;
    v.method = "witness";
    v.witness = std::move(w);
    return v;
  }
  v.status = Verdict::Unknown;
  v.method = "exhausted";
  return v;
}

}  // namespace detail

/// BI-stability is B-stability together with I-stability, so BI merges the
/// two single-rule verdicts.
inline StabilityVerdict verify_stability(const PeriodicSet& p, Rule rule, const VerifyOptions& opt = {}) {
  if (rule != Rule::BI) return detail::verify_single(p, rule, opt);
  StabilityVerdict b = detail::verify_single(p, Rule::B, opt);
  StabilityVerdict i = detail::verify_single(p, Rule::I, opt);
  for (auto* v : {&b, &i})
    if (v->status == Verdict::Unstable) return *v;
  if (b.status == Verdict::Stable && i.status == Verdict::Stable) {
    StabilityVerdict out;
    out.status = Verdict::Stable;
    out.method = b.method == i.method ? b.method : b.method + "+" + i.method;
    out.certificate = std::move(b.certificate);
    out.certificate.insert(out.certificate.end(), i.certificate.begin(), i.certificate.end());
    return out;
  }
  StabilityVerdict out;
  out.status = Verdict::Unknown;
  out.method = "exhausted";
  return out;
}

struct TheoremCheck {
  std::string inequality;
  Rational lhs;
  Rational rhs;
  bool holds = false;
};

/// Density inequalities that apply to a proper set given its verdicts.
/// Unknown verdicts make nothing applicable.
inline std::vector<TheoremCheck> check_density_theorems(const PeriodicSet& p, const std::map<Rule, Verdict>& verdicts) {
  std::vector<TheoremCheck> out;
  if (p.is_full()) return out;
  auto stable = [&](Rule r) {
    auto it = verdicts.find(r);
    if (it != verdicts.end() && it->second == Verdict::Stable) return true;
    auto bi = verdicts.find(Rule::BI);
    return bi != verdicts.end() && bi->second == Verdict::Stable;
  };
  const Rational d = density(p), g = gamma(p);
  if (stable(Rule::B)) {
    out.push_back({"delta <= 1/4", d, Rational(1, 4), d <= Rational(1, 4)});
    out.push_back({"gamma <= 1/9", g, Rational(1, 9), g <= Rational(1, 9)});
    const Rational r = (Rational(1) - g) / 4;
    out.push_back({"delta <= (1 - gamma)/4", d, r, d <= r});
  }
  if (stable(Rule::I)) out.push_back({"delta <= 1/2", d, Rational(1, 2), d <= Rational(1, 2)});
  return out;
}

}  // namespace tbp
