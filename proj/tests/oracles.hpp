#pragma once

// Brute-force reference implementations for the tests. Nothing here uses
// the pattern predicates or Pick's-formula classification: minimal
// triangles are found by counting lattice points directly.

#include <map>
#include <random>
#include <set>

#include "tbp/tbp.hpp"

namespace oracle {

using namespace tbp;

/// Classification from the exact lattice-point set of the closed triangle.
inline TriangleKind kind_by_count(const LatticePoint& p, const LatticePoint& q, const LatticePoint& r) {
  if (det2(q - p, r - p) == 0) return TriangleKind::Degenerate;
  const auto pts = lattice_points_in_triangle(p, q, r);
  if (pts.size() == 3) return TriangleKind::Unimodular;
  if (pts.size() != 4) return TriangleKind::Other;
  for (const auto& x : pts) {
    if (x == p || x == q || x == r) continue;
    const bool on_edge = det2(q - p, x - p) == 0 || det2(r - q, x - q) == 0 || det2(p - r, x - r) == 0;
    return on_edge ? TriangleKind::Border : TriangleKind::Internal;
  }
  return TriangleKind::Other;
}

/// Points on the closed segment, by scanning its bounding box.
inline Int segment_count_scan(const LatticePoint& p, const LatticePoint& q) {
  Int n = 0;
  for (Int x = std::min(p.x, q.x); x <= std::max(p.x, q.x); ++x)
    for (Int y = std::min(p.y, q.y); y <= std::max(p.y, q.y); ++y)
      if (det2(q - p, LatticePoint{x, y} - p) == 0) ++n;
  return n;
}

using Quad = std::array<LatticePoint, 4>;

/// Kind of the 4-point set as a hyperedge (Border or Internal), or nothing.
inline std::optional<TriangleKind> hyperedge_kind(const Quad& s) {
  for (int skip = 0; skip < 4; ++skip) {
    std::array<LatticePoint, 3> v;
    int k = 0;
    for (int i = 0; i < 4; ++i)
      if (i != skip) v[k++] = s[i];
    const Int d = det2(v[1] - v[0], v[2] - v[0]);
    if (d != 2 && d != -2 && d != 3 && d != -3) continue;
    const auto pts = lattice_points_in_triangle(v[0], v[1], v[2]);
    if (pts.size() != 4 || !pts.count(s[skip])) continue;
    const auto kind = kind_by_count(v[0], v[1], v[2]);
    if (kind == TriangleKind::Border || kind == TriangleKind::Internal) return kind;
  }
  return std::nullopt;
}

inline bool kind_in_rule(TriangleKind k, Rule r) {
  return (k == TriangleKind::Border && uses_border(r)) || (k == TriangleKind::Internal && uses_internal(r));
}

/// Every hyperedge of the rule with all four points in the window.
inline std::vector<Quad> hyperedges(const Window& w, Rule rule) {
  std::vector<Quad> out;
  const auto& pts = w.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        const Int d = det2(pts[j] - pts[i], pts[k] - pts[i]);
        if (d != 2 && d != -2 && d != 3 && d != -3) continue;
        const auto inside = lattice_points_in_triangle(pts[i], pts[j], pts[k]);
        if (inside.size() != 4) continue;
        const auto kind = kind_by_count(pts[i], pts[j], pts[k]);
        if (!kind_in_rule(kind, rule)) continue;
        Quad q;
        int n = 0;
        for (const auto& x : inside) q[n++] = x;
        bool all_in = true;
        for (const auto& x : q) all_in = all_in && w.contains(x);
        if (all_in) out.push_back(q);
      }
  return out;
}

/// Naive fixpoint: add the missing point of any hyperedge with exactly
/// three points present, until nothing changes.
inline PointSet closure(const PointSet& seed, const Window& w, Rule rule) {
  const auto edges = hyperedges(w, rule);
  PointSet s;
  for (const auto& p : seed)
    if (w.contains(p)) s.insert(p);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : edges) {
      int present = 0;
      const LatticePoint* missing = nullptr;
      for (const auto& x : e) {
        if (s.count(x)) ++present;
        else missing = &x;
      }
      if (present == 3) {
        s.insert(*missing);
        changed = true;
      }
    }
  }
  return s;
}

/// Whether {a, b, c} lies in some hyperedge of the rule whose fourth point
/// is within radius of the triple's bounding box.
inline bool is_pattern(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c, Rule rule, Int radius = 4) {
  const Int x0 = std::min({a.x, b.x, c.x}) - radius, x1 = std::max({a.x, b.x, c.x}) + radius;
  const Int y0 = std::min({a.y, b.y, c.y}) - radius, y1 = std::max({a.y, b.y, c.y}) + radius;
  for (Int x = x0; x <= x1; ++x)
    for (Int y = y0; y <= y1; ++y) {
      const LatticePoint r{x, y};
      if (r == a || r == b || r == c) continue;
      if (auto k = hyperedge_kind({a, b, c, r}); k && kind_in_rule(*k, rule)) return true;
    }
  return false;
}

/// Sorted 3-subsets, inside the inner box, of hyperedges with at least two
/// vertices in the inner box and the third vertex in the outer box.
inline std::set<std::array<LatticePoint, 3>> pattern_triples(const Box& inner, const Box& outer, Rule rule) {
  std::vector<LatticePoint> in_pts, out_pts;
  for (Int x = inner.x0; x <= inner.x1; ++x)
    for (Int y = inner.y0; y <= inner.y1; ++y) in_pts.push_back({x, y});
  for (Int x = outer.x0; x <= outer.x1; ++x)
    for (Int y = outer.y0; y <= outer.y1; ++y) out_pts.push_back({x, y});
  std::set<std::array<LatticePoint, 3>> out;
  for (std::size_t i = 0; i < in_pts.size(); ++i)
    for (std::size_t j = i + 1; j < in_pts.size(); ++j)
      for (const auto& v : out_pts) {
        const auto& p = in_pts[i];
        const auto& q = in_pts[j];
        const Int d = det2(q - p, v - p);
        if (d != 2 && d != -2 && d != 3 && d != -3) continue;
        const auto inside = lattice_points_in_triangle(p, q, v);
        if (inside.size() != 4) continue;
        if (!kind_in_rule(kind_by_count(p, q, v), rule)) continue;
        const std::vector<LatticePoint> four(inside.begin(), inside.end());
        for (int s = 0; s < 4; ++s) {
          std::array<LatticePoint, 3> t;
          int n = 0;
          bool ok = true;
          for (int k = 0; k < 4; ++k)
            if (k != s) {
              ok = ok && inner.contains(four[k]);
              t[n++] = four[k];
            }
          if (ok) {
            std::sort(t.begin(), t.end());
            out.insert(t);
          }
        }
      }
  return out;
}

/// {det2(d1 + m a, d2 + m b) mod m^2 : a, b in [0, m)^2}.
inline std::set<Int> det_reachable(const LatticeVector& d1, const LatticeVector& d2, Int m) {
  std::set<Int> out;
  for (Int ax = 0; ax < m; ++ax)
    for (Int ay = 0; ay < m; ++ay)
      for (Int bx = 0; bx < m; ++bx)
        for (Int by = 0; by < m; ++by) {
          const LatticeVector u{d1.dx + m * ax, d1.dy + m * ay}, v{d2.dx + m * bx, d2.dy + m * by};
          out.insert(mod(det2(u, v), m * m));
        }
  return out;
}

inline bool primitive_lift_exists(const LatticeVector& d, Int m) {
  for (Int ax = 0; ax < 4 * m; ++ax)
    for (Int ay = 0; ay < 4 * m; ++ay) {
      const LatticeVector v{d.dx + m * ax, d.dy + m * ay};
      if (std::gcd(v.dx, v.dy) == 1) return true;
    }
  return false;
}

/// Some lift of d (mod m) equals 2u with u primitive.
inline bool doubled_primitive_lift_exists(const LatticeVector& d, Int m) {
  for (Int ax = 0; ax < 8 * m; ++ax)
    for (Int ay = 0; ay < 8 * m; ++ay) {
      const LatticeVector v{d.dx + m * ax, d.dy + m * ay};
      if (v.dx % 2 == 0 && v.dy % 2 == 0 && std::gcd(v.dx / 2, v.dy / 2) == 1) return true;
    }
  return false;
}

/// Minimal triangles with a vertex in [0, m)^2, the others in
/// [-2m, 3m)^2, and exactly three of four points in the set.
inline std::optional<Quad> periodic_falsifier(const PeriodicSet& p, Rule rule, Int reach = 2) {
  const Int m = p.period();
  std::vector<LatticePoint> box;
  for (Int x = -reach * m; x < (reach + 1) * m; ++x)
    for (Int y = -reach * m; y < (reach + 1) * m; ++y) box.push_back({x, y});
  for (Int ax = 0; ax < m; ++ax)
    for (Int ay = 0; ay < m; ++ay) {
      const LatticePoint a{ax, ay};
      for (std::size_t i = 0; i < box.size(); ++i)
        for (std::size_t j = i + 1; j < box.size(); ++j) {
          const Int d = det2(box[i] - a, box[j] - a);
          if (d != 2 && d != -2 && d != 3 && d != -3) continue;
          if (box[i] == a || box[j] == a) continue;
          const auto inside = lattice_points_in_triangle(a, box[i], box[j]);
          if (inside.size() != 4 || !kind_in_rule(kind_by_count(a, box[i], box[j]), rule)) continue;
          int present = 0;
          for (const auto& x : inside) present += p.contains(x) ? 1 : 0;
          if (present == 3) {
            Quad q;
            int n = 0;
            for (const auto& x : inside) q[n++] = x;
            return q;
          }
        }
    }
  return std::nullopt;
}

/// All subsets of a small domain that are free under the rule, by brute
/// force over 2^n masks with the counting-based pattern test.
inline std::vector<std::uint32_t> free_subsets(const Window& w, Rule rule) {
  const std::size_t n = w.size();
  std::vector<std::vector<bool>> bad(n * n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        if (is_pattern(w.point(a), w.point(b), w.point(c), rule)) bad[a * n + b][c] = true;
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      if (m >> a & 1)
        for (std::size_t b = a + 1; b < n && ok; ++b)
          if (m >> b & 1)
            for (std::size_t c = b + 1; c < n && ok; ++c)
              if ((m >> c & 1) && bad[a * n + b][c]) ok = false;
    if (ok) out.push_back(m);
  }
  return out;
}

inline LatticePoint random_point(std::mt19937_64& rng, Int lo, Int hi) {
  std::uniform_int_distribution<Int> d(lo, hi);
  return {d(rng), d(rng)};
}

inline UnimodularMap random_unimodular(std::mt19937_64& rng) {
  // products of elementary shears and a sign flip
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_int_distribution<Int> shift(-5, 5);
  Int a = 1, b = 0, c = 0, d = 1;
  for (int k = 0; k < 4; ++k) {
    switch (pick(rng)) {
      case 0: b += a; d += c; break;        // column op
      case 1: a += b; c += d; break;
      case 2: std::swap(a, b); std::swap(c, d); break;
      case 3: a = -a; c = -c; break;
    }
  }
  return UnimodularMap::make(a, b, c, d, {shift(rng), shift(rng)});
}

}  // namespace oracle
