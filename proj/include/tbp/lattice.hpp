#pragma once

// Exact integer geometry of lattice triangles in Z^2.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "tbp/error.hpp"

namespace tbp {

using Int = std::int64_t;
using Wide = __int128;

namespace detail {

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::Overflow, "integer addition");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(Errc::Overflow, "integer subtraction");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::Overflow, "integer multiplication");
  return r;
}

inline Int narrow(Wide v) {
  if (v > Wide(INT64_MAX) || v < Wide(INT64_MIN)) throw Error(Errc::Overflow, "128-bit intermediate");
  return static_cast<Int>(v);
}

}  // namespace detail

/// Mathematical modulus, always in [0, m).
inline Int mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

inline Int gcd(Int a, Int b) { return std::gcd(a, b); }

inline Int abs_checked(Int a) {
  if (a == INT64_MIN) throw Error(Errc::Overflow, "abs of INT64_MIN");
  return a < 0 ? -a : a;
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
inline std::tuple<Int, Int, Int> ext_gcd(Int a, Int b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
    std::tie(old_s, s) = std::make_tuple(s, old_s - q * s);
    std::tie(old_t, t) = std::make_tuple(t, old_t - q * t);
  }
  if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
  return {old_r, old_s, old_t};
}

struct LatticeVector {
  Int dx = 0;
  Int dy = 0;

  friend constexpr auto operator<=>(const LatticeVector&, const LatticeVector&) = default;

  LatticeVector operator-() const { return {detail::checked_sub(0, dx), detail::checked_sub(0, dy)}; }
  LatticeVector operator+(const LatticeVector& o) const {
    return {detail::checked_add(dx, o.dx), detail::checked_add(dy, o.dy)};
  }
  LatticeVector operator-(const LatticeVector& o) const {
    return {detail::checked_sub(dx, o.dx), detail::checked_sub(dy, o.dy)};
  }
  LatticeVector operator*(Int k) const { return {detail::checked_mul(dx, k), detail::checked_mul(dy, k)}; }

  Int content() const { return gcd(dx, dy); }
  bool is_primitive() const { return content() == 1; }
  bool is_zero() const { return dx == 0 && dy == 0; }
};

struct LatticePoint {
  Int x = 0;
  Int y = 0;

  // Ordering is lexicographic on (x, y).
  friend constexpr auto operator<=>(const LatticePoint&, const LatticePoint&) = default;

  LatticePoint operator+(const LatticeVector& v) const {
    return {detail::checked_add(x, v.dx), detail::checked_add(y, v.dy)};
  }
  LatticePoint operator-(const LatticeVector& v) const {
    return {detail::checked_sub(x, v.dx), detail::checked_sub(y, v.dy)};
  }
  LatticeVector operator-(const LatticePoint& o) const {
    return {detail::checked_sub(x, o.x), detail::checked_sub(y, o.y)};
  }
};

using PointSet = std::set<LatticePoint>;

inline std::string to_string(const LatticePoint& p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

/// u.dx * v.dy - u.dy * v.dx, computed in 128 bits and checked back into 64.
inline Int det2(const LatticeVector& u, const LatticeVector& v) {
  return detail::narrow(Wide(u.dx) * v.dy - Wide(u.dy) * v.dx);
}

/// Lattice points on the closed segment pq, endpoints included.
inline Int segment_point_count(const LatticePoint& p, const LatticePoint& q) {
  return (q - p).content() + 1;
}

enum class TriangleKind { Degenerate, Unimodular, Border, Internal, Other };

inline const char* to_string(TriangleKind k) {
  switch (k) {
    case TriangleKind::Degenerate: return "Degenerate";
    case TriangleKind::Unimodular: return "Unimodular";
    case TriangleKind::Border: return "Border";
    case TriangleKind::Internal: return "Internal";
    case TriangleKind::Other: return "Other";
  }
  return "?";
}

inline std::optional<TriangleKind> triangle_kind_from_string(const std::string& s) {
  for (auto k : {TriangleKind::Degenerate, TriangleKind::Unimodular, TriangleKind::Border,
                 TriangleKind::Internal, TriangleKind::Other})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

struct ClassifiedTriangle {
  std::array<LatticePoint, 3> vertices;
  TriangleKind kind = TriangleKind::Degenerate;
  std::optional<LatticePoint> fourth;
  Int area2 = 0;          // twice the Euclidean area
  Int boundary_count = 0;  // b in Pick's formula
  Int interior_count = 0;  // i in Pick's formula

  friend bool operator==(const ClassifiedTriangle&, const ClassifiedTriangle&) = default;

  bool is_minimal() const { return kind == TriangleKind::Border || kind == TriangleKind::Internal; }
};

/// Classifies the triangle with vertices p, q, r via Pick's formula.
///
/// Border triangles are recognised by area2 == 2 together with exactly one
/// edge difference that is 0 mod 2; the fourth point is that edge's
/// midpoint. Internal triangles have area2 == 3 and three primitive edges;
/// the fourth point is the centroid. Collinear input is classified
/// Degenerate rather than rejected.
inline ClassifiedTriangle classify_triangle(const LatticePoint& p, const LatticePoint& q,
                                            const LatticePoint& r) {
  ClassifiedTriangle t;
  t.vertices = {p, q, r};
  const LatticeVector e1 = q - p, e2 = r - p, e3 = r - q;
  const Int d = det2(e1, e2);
  if (d == 0) {
    t.kind = TriangleKind::Degenerate;
    return t;
  }
  t.area2 = abs_checked(d);
  t.boundary_count = detail::checked_add(detail::checked_add(e1.content(), e2.content()), e3.content());
  // Pick: area2 = 2i + b - 2
  t.interior_count = (t.area2 - t.boundary_count + 2) / 2;

  auto even = [](const LatticeVector& v) { return v.dx % 2 == 0 && v.dy % 2 == 0; };
  if (t.area2 == 1) {
    t.kind = TriangleKind::Unimodular;
  } else if (t.area2 == 2 && (int(even(e1)) + int(even(e2)) + int(even(e3))) == 1) {
    t.kind = TriangleKind::Border;
    if (even(e1)) t.fourth = LatticePoint{p.x + e1.dx / 2, p.y + e1.dy / 2};
    else if (even(e2)) t.fourth = LatticePoint{p.x + e2.dx / 2, p.y + e2.dy / 2};
    else t.fourth = LatticePoint{q.x + e3.dx / 2, q.y + e3.dy / 2};
  } else if (t.area2 == 3 && e1.is_primitive() && e2.is_primitive() && e3.is_primitive()) {
    t.kind = TriangleKind::Internal;
    const Wide sx = Wide(p.x) + q.x + r.x, sy = Wide(p.y) + q.y + r.y;
    if (sx % 3 != 0 || sy % 3 != 0) throw Error(Errc::DegenerateInput, "internal triangle centroid not integral");
    t.fourth = LatticePoint{detail::narrow(sx / 3), detail::narrow(sy / 3)};
  } else {
    t.kind = TriangleKind::Other;
  }
  return t;
}

/// Brute-force scan of the closed triangle pqr: bounding box plus
/// orientation tests. Oracle for the Pick's-formula code paths.
inline PointSet lattice_points_in_triangle(const LatticePoint& p, const LatticePoint& q,
                                           const LatticePoint& r) {
  const Int d = det2(q - p, r - p);
  if (d == 0) throw Error(Errc::DegenerateInput, "collinear vertices");
  const Int sign = d > 0 ? 1 : -1;
  const Int x0 = std::min({p.x, q.x, r.x}), x1 = std::max({p.x, q.x, r.x});
  const Int y0 = std::min({p.y, q.y, r.y}), y1 = std::max({p.y, q.y, r.y});
  PointSet out;
  for (Int x = x0; x <= x1; ++x) {
    for (Int y = y0; y <= y1; ++y) {
      const LatticePoint s{x, y};
      if (sign * det2(q - p, s - p) >= 0 && sign * det2(r - q, s - q) >= 0 && sign * det2(p - r, s - r) >= 0)
        out.insert(s);
    }
  }
  return out;
}

/// x -> M x + b with det M = +-1.
struct UnimodularMap {
  std::array<std::array<Int, 2>, 2> m{{{1, 0}, {0, 1}}};
  LatticeVector b{};

  friend bool operator==(const UnimodularMap&, const UnimodularMap&) = default;

  Int determinant() const {
    return detail::narrow(Wide(m[0][0]) * m[1][1] - Wide(m[0][1]) * m[1][0]);
  }

  static UnimodularMap identity() { return {}; }

  static UnimodularMap make(Int a, Int b_, Int c, Int d, LatticeVector shift = {}) {
    UnimodularMap f;
    f.m = {{{a, b_}, {c, d}}};
    f.b = shift;
    const Int det = f.determinant();
    if (det != 1 && det != -1) throw Error(Errc::NotUnimodular, "det = " + std::to_string(det));
    return f;
  }

  LatticeVector linear(const LatticeVector& v) const {
    return {detail::narrow(Wide(m[0][0]) * v.dx + Wide(m[0][1]) * v.dy),
            detail::narrow(Wide(m[1][0]) * v.dx + Wide(m[1][1]) * v.dy)};
  }

  LatticePoint operator()(const LatticePoint& p) const {
    const LatticeVector v = linear(LatticeVector{p.x, p.y});
    return LatticePoint{0, 0} + v + b;
  }
};

inline PointSet apply_map(const UnimodularMap& f, const PointSet& xs) {
  const Int det = f.determinant();
  if (det != 1 && det != -1) throw Error(Errc::NotUnimodular, "det = " + std::to_string(det));
  PointSet out;
  for (const auto& p : xs) out.insert(f(p));
  return out;
}

/// Inclusive axis-aligned box [x0, x1] x [y0, y1].
struct Box {
  Int x0 = 0, x1 = -1, y0 = 0, y1 = -1;

  friend bool operator==(const Box&, const Box&) = default;

  bool empty() const { return x1 < x0 || y1 < y0; }
  bool contains(const LatticePoint& p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  Int width() const { return empty() ? 0 : x1 - x0 + 1; }
  Int height() const { return empty() ? 0 : y1 - y0 + 1; }
};

inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

/// Calls f(origin + t*w) for every t with the point inside box, t ascending.
template <class F>
void for_each_on_line(const LatticePoint& origin, const LatticeVector& w, const Box& box, F&& f) {
  if (box.empty() || w.is_zero()) return;
  Int lo = INT64_MIN / 4, hi = INT64_MAX / 4;
  auto clip = [&](Int o, Int d, Int a, Int b) {
    if (d == 0) {
      if (o < a || o > b) { lo = 1; hi = 0; }
      return;
    }
    Int t0, t1;
    if (d > 0) { t0 = ceil_div(a - o, d); t1 = floor_div(b - o, d); }
    else { t0 = ceil_div(b - o, d); t1 = floor_div(a - o, d); }
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
  };
  clip(origin.x, w.dx, box.x0, box.x1);
  clip(origin.y, w.dy, box.y0, box.y1);
  for (Int t = lo; t <= hi; ++t) f(LatticePoint{origin.x + t * w.dx, origin.y + t * w.dy});
}

/// A particular s with det2(w, s) == 1 for primitive w.
inline LatticeVector det_one_partner(const LatticeVector& w) {
  // det2(w, s) = w.dx * s.dy - w.dy * s.dx = 1
  auto [g, a, b] = ext_gcd(w.dx, -w.dy);
  if (g != 1) throw Error(Errc::BadParameter, "vector is not primitive");
  return LatticeVector{b, a};
}

}  // namespace tbp
