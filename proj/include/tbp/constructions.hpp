#pragma once

// Named periodic constructions, maximality witnesses, and the windowed
// aperiodic seeds.

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <regex>

#include "tbp/closure.hpp"
#include "tbp/periodic.hpp"

namespace tbp {

struct ExpectedValues {
  Rational density;
  Rational gamma;
  std::map<Rule, Verdict> verdicts;
};

struct NamedConstruction {
  std::string name;
  PeriodicSet set;
  ExpectedValues expected;
};

inline PeriodicSet nz2(Int n) {
  if (n < 2) throw Error(Errc::BadParameter, "NZ2 needs n >= 2");
  return PeriodicSet(n, {{0, 0}});
}

inline PeriodicSet s29() { return PeriodicSet(3, {{0, 0}, {1, 0}}); }

inline PeriodicSet b112() { return PeriodicSet(6, {{1, 0}, {0, 1}, {5, 5}}); }

/// Z x nZ.
inline PeriodicSet i_n(Int n) {
  if (n < 2) throw Error(Errc::BadParameter, "In needs n >= 2");
  PointSet r;
  for (Int x = 0; x < n; ++x) r.insert({x, 0});
  return PeriodicSet(n, r);
}

inline PeriodicSet j14() { return PeriodicSet(4, {{0, 0}, {1, 0}, {0, 1}, {3, 3}}); }

inline PeriodicSet j12() {
  const PeriodicSet j = j14();
  PointSet r = j.residues();
  for (const auto& p : j.residues()) r.insert({(p.x + 2) % 4, (p.y + 2) % 4});
  return PeriodicSet(4, r);
}

/// Names: NZ2(n), S29, B112, In(n), J14, J12, I2.
inline NamedConstruction build(const std::string& name) {
  using V = Verdict;
  std::smatch mt;
  NamedConstruction c;
  c.name = name;
  if (std::regex_match(name, mt, std::regex(R"(NZ2\((\d+)\))"))) {
    const Int n = std::stoll(mt[1]);
    c.set = nz2(n);
    c.expected = {Rational(1, n * n), Rational(0), {{Rule::B, V::Stable}, {Rule::I, V::Stable}, {Rule::BI, V::Stable}}};
  } else if (name == "S29") {
    c.set = s29();
    c.expected = {Rational(2, 9), Rational(1, 9), {{Rule::B, V::Stable}, {Rule::I, V::Stable}, {Rule::BI, V::Stable}}};
  } else if (name == "B112") {
    c.set = b112();
    c.expected = {Rational(1, 12), Rational(0), {{Rule::B, V::Stable}, {Rule::I, V::Unstable}, {Rule::BI, V::Unstable}}};
  } else if (std::regex_match(name, mt, std::regex(R"(In\((\d+)\))")) || name == "I2") {
    const Int n = name == "I2" ? 2 : std::stoll(mt[1]);
    c.set = i_n(n);
    const V iv = n == 3 ? V::Unstable : V::Stable;
    c.expected = {Rational(1, n), Rational(1, n), {{Rule::B, V::Unstable}, {Rule::I, iv}, {Rule::BI, V::Unstable}}};
  } else if (name == "J14") {
    c.set = j14();
    c.expected = {Rational(1, 4), Rational(1, 16), {{Rule::B, V::Unstable}, {Rule::I, V::Stable}, {Rule::BI, V::Unstable}}};
  } else if (name == "J12") {
    c.set = j12();
    c.expected = {Rational(1, 2), Rational(1, 4), {{Rule::B, V::Unstable}, {Rule::I, V::Stable}, {Rule::BI, V::Unstable}}};
  } else {
    throw Error(Errc::BadParameter, "unknown construction " + name);
  }
  return c;
}

/// The unimodular triangle (t1, 0), (t1 - t2, n), (0, a) with n t1 - a t2 = 1
/// and t1 the least positive solution.
inline ClassifiedTriangle in_maximality_witness(Int n, Int a) {
  if (n < 2 || a < 1 || a > n - 1) throw Error(Errc::BadParameter, "need 1 <= a <= n - 1");
  if (gcd(n, a) != 1) throw Error(Errc::NotCoprime, "gcd(" + std::to_string(n) + ", " + std::to_string(a) + ") != 1");
  // n t1 = 1 (mod a)
  auto [g, s, t] = ext_gcd(n, a);
  (void)g;
  (void)t;
  Int t1 = a == 1 ? 1 : mod(s, a);
  if (t1 == 0) t1 = a;
  const Int t2 = (detail::checked_mul(n, t1) - 1) / a;
  return classify_triangle({t1, 0}, {t1 - t2, n}, {0, a});
}

struct CascadeReport {
  WindowPtr window;
  WindowPtr core;
  ClosureTrace trace;
  bool percolates = false;
};

inline CellSet periodic_in_window(const PeriodicSet& p, WindowPtr w) {
  CellSet s(w);
  for (std::size_t i = 0; i < w->size(); ++i)
    if (p.contains(w->point(i))) s.set_index(i);
  return s;
}

/// I-closure of I9 plus (0, a) for a in {3, 6}, in [-12, 13]^2.
inline CascadeReport in_maximality_cascade(Int n, Int a, Int margin = kDefaultMargin) {
  if (n != 9 || (a != 3 && a != 6)) throw Error(Errc::BadParameter, "cascade is defined for n = 9, a in {3, 6}");
  CascadeReport rep;
  rep.window = Window::square(-12, 13);
  rep.core = shrink(*rep.window, margin);
  CellSet seed = periodic_in_window(i_n(n), rep.window);
  seed.insert({0, a});
  auto res = close(seed, Rule::I);
  rep.trace = std::move(res.trace);
  rep.percolates = res.set.covers(*rep.core);
  return rep;
}

struct S29Report {
  LatticePoint extra;
  std::optional<std::array<LatticePoint, 5>> five_in_row;
  std::optional<std::array<LatticePoint, 3>> unimodular;
  bool percolates_b = false;
  bool percolates_i = false;
};

/// What S29 plus one point contains, and whether a windowed instance
/// percolates under B and under I.
inline S29Report s29_maximality_check(const LatticePoint& extra, Int margin = kDefaultMargin) {
  const PeriodicSet s = s29();
  if (s.contains(extra)) throw Error(Errc::PointInSet, to_string(extra) + " is in S29");
  S29Report rep;
  rep.extra = extra;
  auto member = [&](const LatticePoint& p) { return p == extra || s.contains(p); };
  for (Int x0 = extra.x - 4; x0 <= extra.x && !rep.five_in_row; ++x0) {
    bool all = true;
    for (Int k = 0; k < 5; ++k) all = all && member({x0 + k, extra.y});
    if (all) rep.five_in_row = std::array<LatticePoint, 5>{{{x0, extra.y}, {x0 + 1, extra.y}, {x0 + 2, extra.y},
                                                             {x0 + 3, extra.y}, {x0 + 4, extra.y}}};
  }
  std::vector<LatticePoint> near;
  for (Int x = extra.x - 6; x <= extra.x + 6; ++x)
    for (Int y = extra.y - 6; y <= extra.y + 6; ++y)
      if (s.contains({x, y})) near.push_back({x, y});
  // the most compact unimodular triangle through extra
  Int best = 0;
  auto norm = [&](const LatticePoint& p) { return (p.x - extra.x) * (p.x - extra.x) + (p.y - extra.y) * (p.y - extra.y); };
  for (std::size_t i = 0; i < near.size(); ++i)
    for (std::size_t j = i + 1; j < near.size(); ++j) {
      const Int d = det2(near[i] - extra, near[j] - extra);
      const Int spread = norm(near[i]) + norm(near[j]);
      if ((d == 1 || d == -1) && (!rep.unimodular || spread < best)) {
        rep.unimodular = std::array<LatticePoint, 3>{extra, near[i], near[j]};
        best = spread;
      }
    }
  const LatticeVector shift{extra.x - mod(extra.x, 3), extra.y - mod(extra.y, 3)};
  const Box b{-12 + shift.dx, 13 + shift.dx, -12 + shift.dy, 13 + shift.dy};
  auto w = Window::rect(b.x0, b.x1, b.y0, b.y1);
  auto core = shrink(*w, margin);
  CellSet seed = periodic_in_window(s, w);
  seed.insert(extra);
  rep.percolates_b = percolates(seed, Rule::B, *core);
  rep.percolates_i = percolates(seed, Rule::I, *core);
  return rep;
}

/// Pulls the next binary digit.
using DigitStream = std::function<int()>;

inline DigitStream fixed_digits(std::vector<int> digits) {
  auto pos = std::make_shared<std::size_t>(0);
  return [digits = std::move(digits), pos]() {
    if (*pos >= digits.size()) throw Error(Errc::HorizonTooSmall, "digit prefix exhausted");
    return digits[(*pos)++];
  };
}

/// The first count binary digits of sqrt(2) - 1 after the point.
inline std::vector<int> sqrt2_minus_1_digits(std::size_t count) {
  using boost::multiprecision::cpp_int;
  const cpp_int scaled = cpp_int(2) << (2 * count);  // 2 * 4^count
  const cpp_int root = boost::multiprecision::sqrt(scaled);  // floor(sqrt(2) * 2^count)
  std::vector<int> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = static_cast<int>(bit_test(root, static_cast<unsigned>(count - 1 - i)));
  return out;
}

struct AperiodicSeed {
  std::vector<int> digits;  // b_0 .. b_{k-1}
  std::vector<Int> xs;      // x_0 .. x_k
  std::vector<Int> points;  // X within [-x_k, x_k], sorted
  Int interior_lo = 0, interior_hi = -1;
  bool no_three_consecutive = false;
  bool saturated = false;
};

/// x_0 = 1, x_{i+1} = x_i + 2 + b_i; X' = {x_i} plus x_i + 1 where b_i = 1;
/// X = X' and -X'. Checks both integer conditions on the generated prefix.
inline AperiodicSeed aperiodic_seed_1d(const DigitStream& stream, int horizon) {
  if (horizon < 1) throw Error(Errc::HorizonTooSmall, "safe interior is empty");
  AperiodicSeed s;
  s.xs.push_back(1);
  for (int i = 0; i < horizon; ++i) {
    const int b = stream();
    if (b != 0 && b != 1) throw Error(Errc::BadParameter, "digits must be 0 or 1");
    s.digits.push_back(b);
    s.xs.push_back(s.xs.back() + 2 + b);
  }
  std::set<Int> xp;
  for (std::size_t i = 0; i < s.xs.size(); ++i) {
    xp.insert(s.xs[i]);
    if (i < s.digits.size() && s.digits[i] == 1) xp.insert(s.xs[i] + 1);
  }
  std::set<Int> all;
  for (Int v : xp) {
    all.insert(v);
    all.insert(-v);
  }
  s.points.assign(all.begin(), all.end());
  const Int xk = s.xs.back();
  s.interior_lo = -xk + 2;
  s.interior_hi = xk - 2;
  auto in = [&](Int v) { return all.count(v) != 0; };
  s.no_three_consecutive = true;
  for (Int v = -xk; v + 2 <= xk; ++v)
    if (in(v) && in(v + 1) && in(v + 2)) s.no_three_consecutive = false;
  s.saturated = true;
  for (Int t = s.interior_lo; t <= s.interior_hi; ++t) {
    if (in(t)) continue;
    auto m = [&](Int v) { return v == t || in(v); };
    const bool three = (m(t - 2) && m(t - 1)) || (m(t - 1) && m(t + 1)) || (m(t + 1) && m(t + 2));
    s.saturated = s.saturated && three;
  }
  return s;
}

struct AxesRayReport {
  CellSet set;
  Int min_area2 = 0;  // 0 when fewer than three non-collinear points
  bool stable_i = false;
  bool stable_b = false;
};

/// {(x, 0) : x >= 10} and {(0, y) : y >= 10} inside the window.
inline AxesRayReport axes_ray_seed(WindowPtr window) {
  AxesRayReport rep{CellSet(window)};
  for (const auto& p : window->points())
    if ((p.y == 0 && p.x >= 10) || (p.x == 0 && p.y >= 10)) rep.set.insert(p);
  const auto pts = rep.set.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        const Int a = abs_checked(det2(pts[j] - pts[i], pts[k] - pts[i]));
        if (a != 0 && (rep.min_area2 == 0 || a < rep.min_area2)) rep.min_area2 = a;
      }
  rep.stable_i = is_stable_in_window(rep.set, Rule::I);
  rep.stable_b = is_stable_in_window(rep.set, Rule::B);
  return rep;
}

/// Nested X^(j) in 2Z^2 ∩ [-j, j]^2 with min(floor(delta (2j+1)^2), |2Z^2 ∩ [-j, j]^2|)
/// points for j = 1..n; returns X^(n) on the window [-n, n]^2.
inline CellSet density_achieving_subset(const Rational& delta, Int n) {
  if (delta < Rational(0) || delta > Rational(1, 4)) throw Error(Errc::DensityOutOfRange, to_string(delta));
  if (n < 0) throw Error(Errc::BadParameter, "n must be nonnegative");
  auto w = Window::square(-n, n);
  CellSet x(w);
  std::size_t have = 0;
  for (Int j = 1; j <= n; ++j) {
    const Int side = 2 * j + 1;
    const Int even = (2 * (j / 2) + 1) * (2 * (j / 2) + 1);  // |2Z ∩ [-j, j]|^2
    const Rational target_q = delta * Rational(side * side);
    const Int target = std::min(target_q.numerator() / target_q.denominator(), even);
    for (Int y = -j; y <= j && static_cast<Int>(have) < target; ++y)
      for (Int xx = -j; xx <= j && static_cast<Int>(have) < target; ++xx)
        if (mod(xx, 2) == 0 && mod(y, 2) == 0 && x.insert({xx, y})) ++have;
  }
  return x;
}

}  // namespace tbp
