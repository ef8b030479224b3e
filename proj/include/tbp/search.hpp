#pragma once

// Exhaustive branch-and-bound over pattern-free subsets of a small domain.
//
// A subset is free when no three of its points match a pattern of the
// rule. Cells are visited in the window's row-major order, "in" before
// "out", with a forbidden mask of cells that would complete a pattern with
// two chosen cells. The bound is min(remaining allowed cells, rd[i]) where
// rd[i] is the largest free subset of cells >= i (Russian doll search).

#include <atomic>
#include <chrono>
#include <map>
#include <set>
#include <thread>
#include <variant>

#include "tbp/closure.hpp"

namespace tbp {

using Mask = unsigned __int128;

inline constexpr std::size_t kMaxSearchCells = 128;

namespace detail {

inline Mask bit(std::size_t i) { return Mask(1) << i; }

inline int popcount(Mask m) {
  return std::popcount(static_cast<std::uint64_t>(m)) + std::popcount(static_cast<std::uint64_t>(m >> 64));
}

inline std::size_t lowest(Mask m) {
  const auto lo = static_cast<std::uint64_t>(m);
  if (lo) return static_cast<std::size_t>(std::countr_zero(lo));
  return 64 + static_cast<std::size_t>(std::countr_zero(static_cast<std::uint64_t>(m >> 64)));
}

template <class F>
void for_each_bit(Mask m, F&& f) {
  while (m) {
    const std::size_t i = lowest(m);
    f(i);
    m &= m - 1;
  }
}

inline Mask low_bits(std::size_t n) { return n >= 128 ? ~Mask(0) : bit(n) - 1; }

}  // namespace detail

/// conflicts(a, b) = cells c such that {a, b, c} matches a pattern.
class ConflictTable {
 public:
  ConflictTable() = default;
  ConflictTable(std::size_t n) : n_(n), table_(n * n, 0) {}

  std::size_t size() const { return n_; }
  Mask operator()(std::size_t a, std::size_t b) const { return table_[a * n_ + b]; }
  Mask& at(std::size_t a, std::size_t b) { return table_[a * n_ + b]; }

 private:
  std::size_t n_ = 0;
  std::vector<Mask> table_;
};

inline ConflictTable precompute_conflicts(const Window& domain, Rule rule) {
  const std::size_t n = domain.size();
  if (n > kMaxSearchCells)
    throw Error(Errc::DomainTooLarge, std::to_string(n) + " cells (limit " + std::to_string(kMaxSearchCells) + ")");
  ConflictTable t(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto& pa = domain.point(a);
      const auto& pb = domain.point(b);
      for_each_candidate_third(pa, pb, domain.bounds(), rule, [&](const LatticePoint& r) {
        auto c = domain.index_of(r);
        if (!c || *c == a || *c == b) return;
        if (match_triple(pa, pb, r, rule)) {
          t.at(a, b) |= detail::bit(*c);
          t.at(b, a) |= detail::bit(*c);
        }
      });
    }
  }
  return t;
}

enum class Direction { Horizontal, Vertical };

inline LatticeVector step_of(Direction d) { return d == Direction::Horizontal ? LatticeVector{1, 0} : LatticeVector{0, 1}; }

/// The line x - y = c (Diagonal) or x + y = c (Antidiagonal).
struct DiagonalLine {
  enum Kind { Diagonal, Antidiagonal } kind = Diagonal;
  Int c = 0;

  bool contains(const LatticePoint& p) const { return kind == Diagonal ? p.x - p.y == c : p.x + p.y == c; }
  friend bool operator==(const DiagonalLine&, const DiagonalLine&) = default;
};

/// Some pair p, p + direction with both points in the set and the domain.
struct RequireConsecutivePair {
  Direction direction = Direction::Horizontal;
};

/// No two chosen points at squared distance dist2, optionally only pairs
/// with both points on the given line.
struct ForbidPairsAtDistance {
  Int dist2 = 1;
  std::optional<DiagonalLine> scope;
};

struct PinIn {
  PointSet points;
};

struct PinOut {
  PointSet points;
};

using SideConstraint = std::variant<RequireConsecutivePair, ForbidPairsAtDistance, PinIn, PinOut>;

struct MaxSize {};
struct EnumerateSize {
  int k = 0;
};
struct CountAll {};

using Objective = std::variant<MaxSize, EnumerateSize, CountAll>;

struct SearchProblem {
  WindowPtr domain;
  Rule rule = Rule::B;
  std::vector<SideConstraint> constraints;
  Objective objective = MaxSize{};
};

struct SearchOptions {
  unsigned workers = 1;
  int split_depth = 8;
  bool russian_doll = true;
};

struct SearchResult {
  int max_size = 0;
  // MaxSize: number of optimal sets; EnumerateSize: number of sets of that
  // size; CountAll: number of feasible sets.
  std::uint64_t witness_count = 0;
  std::vector<CellSet> representatives;
  // Diagnostics. Both depend on thread timing.
  std::uint64_t nodes_explored = 0;
  std::chrono::duration<double> elapsed{0};
};

/// The dihedral symmetries of the domain's bounding box that map the domain
/// onto itself, as index permutations. The identity comes first.
inline std::vector<std::vector<std::size_t>> symmetry_group(const Window& domain) {
  const Box& b = domain.bounds();
  const Int w = b.width() - 1, h = b.height() - 1;
  std::vector<std::vector<std::size_t>> group;
  for (int e = 0; e < 8; ++e) {
    const bool swap = e & 4;
    if (swap && w != h) continue;
    std::vector<std::size_t> perm(domain.size());
    bool ok = true;
    for (std::size_t i = 0; i < domain.size() && ok; ++i) {
      Int x = domain.point(i).x - b.x0, y = domain.point(i).y - b.y0;
      if (swap) std::swap(x, y);
      if (e & 1) x = w - x;
      if (e & 2) y = h - y;
      auto j = domain.index_of({x + b.x0, y + b.y0});
      if (!j) ok = false;
      else perm[i] = *j;
    }
    if (ok) group.push_back(std::move(perm));
  }
  return group;
}

namespace detail {

inline std::vector<std::size_t> indices_of(Mask m) {
  std::vector<std::size_t> v;
  for_each_bit(m, [&](std::size_t i) { v.push_back(i); });
  return v;
}

inline Mask apply_perm(const std::vector<std::size_t>& perm, Mask m) {
  Mask out = 0;
  for_each_bit(m, [&](std::size_t i) { out |= bit(perm[i]); });
  return out;
}

// Lexicographic order on sorted index lists.
inline bool index_less(Mask a, Mask b) { return indices_of(a) < indices_of(b); }

inline Mask canonical_mask(const std::vector<std::vector<std::size_t>>& group, Mask m) {
  Mask best = m;
  for (const auto& g : group) {
    const Mask im = apply_perm(g, m);
    if (index_less(im, best)) best = im;
  }
  return best;
}

struct Case {
  Mask pins = 0;
  std::vector<std::pair<std::size_t, std::size_t>> excluded_pairs;
};

class Engine {
 public:
  enum class Mode { Max, Enumerate, Count };

  Engine(const SearchProblem& p, const SearchOptions& opt) : problem_(p), opt_(opt), dom_(*p.domain) {
    n_ = dom_.size();
    conf_ = precompute_conflicts(dom_, p.rule);
    group_ = symmetry_group(dom_);
    base_pf_.assign(n_, 0);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pair_lists;
    for (const auto& c : p.constraints) {
      if (auto* f = std::get_if<ForbidPairsAtDistance>(&c)) {
        for (std::size_t a = 0; a < n_; ++a)
          for (std::size_t b = 0; b < n_; ++b) {
            if (a == b) continue;
            const auto& pa = dom_.point(a);
            const auto& pb = dom_.point(b);
            const Int dx = pa.x - pb.x, dy = pa.y - pb.y;
            if (dx * dx + dy * dy != f->dist2) continue;
            if (f->scope && !(f->scope->contains(pa) && f->scope->contains(pb))) continue;
            base_pf_[a] |= bit(b);
          }
      } else if (auto* in = std::get_if<PinIn>(&c)) {
        for (const auto& q : in->points) {
          auto i = dom_.index_of(q);
          if (!i) throw Error(Errc::InconsistentPins, "pinned point " + to_string(q) + " outside the domain");
          pin_in_ |= bit(*i);
        }
      } else if (auto* out = std::get_if<PinOut>(&c)) {
        for (const auto& q : out->points)
          if (auto i = dom_.index_of(q)) pin_out_ |= bit(*i);
      } else if (auto* rp = std::get_if<RequireConsecutivePair>(&c)) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t a = 0; a < n_; ++a)
          if (auto b = dom_.index_of(dom_.point(a) + step_of(rp->direction))) pairs.emplace_back(a, *b);
        pair_lists.push_back(std::move(pairs));
      }
    }
    if (pin_in_ & pin_out_) throw Error(Errc::InconsistentPins, "point pinned both in and out");
    {
      Mask c = 0, f = 0;
      bool ok = true;
      for_each_bit(pin_in_, [&](std::size_t i) {
        if (f & bit(i)) ok = false;
        add_to(c, f, i, base_pf_);
      });
      if (!ok) throw Error(Errc::InconsistentPins, "pinned points contain a pattern or forbidden pair");
    }
    // One case per choice of first satisfied pair for each requirement.
    cases_.push_back(Case{});
    for (const auto& pairs : pair_lists) {
      std::vector<Case> next;
      for (const auto& base : cases_)
        for (std::size_t k = 0; k < pairs.size(); ++k) {
          Case c = base;
          c.pins |= bit(pairs[k].first) | bit(pairs[k].second);
          c.excluded_pairs.insert(c.excluded_pairs.end(), pairs.begin(), pairs.begin() + static_cast<long>(k));
          next.push_back(std::move(c));
        }
      cases_ = std::move(next);
    }
    rd_.assign(n_ + 1, static_cast<int>(n_));
    if (opt_.russian_doll) compute_russian_doll();
  }

  SearchResult run() {
    const auto t0 = std::chrono::steady_clock::now();
    SearchResult res;
    if (std::holds_alternative<MaxSize>(problem_.objective)) {
      mode_ = Mode::Max;
      best_.store(-1);
      auto r1 = run_tasks();
      const int m = best_.load();
      res.nodes_explored += r1.nodes;
      if (m < 0) {
        res.max_size = -1;  // nothing feasible
      } else {
        mode_ = Mode::Enumerate;
        target_ = m;
        auto r2 = run_tasks();
        res.nodes_explored += r2.nodes;
        res.max_size = m;
        res.witness_count = r2.count;
        res.representatives = representatives(r2.keys);
      }
    } else if (auto* e = std::get_if<EnumerateSize>(&problem_.objective)) {
      if (e->k < 0) throw Error(Errc::BadParameter, "negative enumeration size");
      mode_ = Mode::Enumerate;
      target_ = e->k;
      auto r = run_tasks();
      res.nodes_explored = r.nodes;
      res.witness_count = r.count;
      res.max_size = r.count ? e->k : -1;
      res.representatives = representatives(r.keys);
    } else {
      mode_ = Mode::Count;
      auto r = run_tasks();
      res.nodes_explored = r.nodes;
      res.witness_count = r.count;
      res.max_size = r.count ? r.max_seen : -1;
    }
    res.elapsed = std::chrono::steady_clock::now() - t0;
    return res;
  }

  bool satisfies(Mask m) const {
    if ((m & pin_in_) != pin_in_ || (m & pin_out_)) return false;
    bool ok = true;
    for_each_bit(m, [&](std::size_t i) {
      if (base_pf_[i] & m) ok = false;
    });
    for (const auto& c : problem_.constraints)
      if (auto* rp = std::get_if<RequireConsecutivePair>(&c)) {
        bool any = false;
        for_each_bit(m, [&](std::size_t i) {
          auto j = dom_.index_of(dom_.point(i) + step_of(rp->direction));
          if (j && (m & bit(*j))) any = true;
        });
        ok = ok && any;
      }
    return ok && is_free(m);
  }

  bool is_free(Mask m) const {
    const auto v = indices_of(m);
    for (std::size_t a = 0; a < v.size(); ++a)
      for (std::size_t b = a + 1; b < v.size(); ++b)
        if (conf_(v[a], v[b]) & m) return false;
    return true;
  }

  const std::vector<int>& russian_doll() const { return rd_; }

 private:
  struct Node {
    std::size_t next = 0;
    Mask chosen = 0;
    Mask forbidden = 0;
    int count = 0;
    bool fresh = true;
  };

  struct Task {
    const Case* cs;
    Mask undecided;
    const std::vector<Mask>* pf;
    Node node;
  };

  struct Partial {
    std::uint64_t nodes = 0;
    std::uint64_t count = 0;
    int max_seen = 0;
    std::set<std::vector<std::size_t>> keys;

    void merge(Partial&& o) {
      nodes += o.nodes;
      count += o.count;
      max_seen = std::max(max_seen, o.max_seen);
      keys.merge(o.keys);
    }
  };

  void add_to(Mask& chosen, Mask& forbidden, std::size_t i, const std::vector<Mask>& pf) const {
    forbidden |= pf[i];
    for_each_bit(chosen, [&](std::size_t c) { forbidden |= conf_(i, c); });
    chosen |= bit(i);
  }

  int need() const {
    switch (mode_) {
      case Mode::Max: return best_.load(std::memory_order_relaxed) + 1;
      case Mode::Enumerate: return target_;
      case Mode::Count: return 0;
    }
    return 0;
  }

  void record(const Node& nd, Partial& out) const {
    switch (mode_) {
      case Mode::Max: {
        int b = best_.load(std::memory_order_relaxed);
        while (nd.count > b && !best_.compare_exchange_weak(b, nd.count)) {
        }
        break;
      }
      case Mode::Enumerate:
        if (nd.count == target_) {
          ++out.count;
          out.keys.insert(indices_of(canonical_mask(group_, nd.chosen)));
        }
        break;
      case Mode::Count:
        ++out.count;
        out.max_seen = std::max(out.max_seen, nd.count);
        break;
    }
  }

  // Runs the subtree at nd. When tasks is non-null, nodes at depth
  // split_depth are deferred into it instead.
  void dfs(const Node& nd, Mask undecided, const std::vector<Mask>& pf, int depth, Partial& out,
           std::vector<Node>* tasks) const {
    if (tasks && depth == opt_.split_depth) {
      tasks->push_back(nd);
      return;
    }
    ++out.nodes;
    if (nd.fresh) record(nd, out);
    if (mode_ == Mode::Enumerate && nd.count >= target_) return;
    const Mask avail = undecided & ~nd.forbidden & ~low_bits(nd.next);
    if (!avail) return;
    const std::size_t i = lowest(avail);
    const int ub = std::min(popcount(avail), rd_[i]);
    if (nd.count + ub < need()) return;

    Node in = nd;
    add_to(in.chosen, in.forbidden, i, pf);
    in.count += 1;
    in.next = i + 1;
    in.fresh = true;
    dfs(in, undecided, pf, depth + 1, out, tasks);

    Node skip = nd;
    skip.next = i + 1;
    skip.fresh = false;
    dfs(skip, undecided, pf, depth + 1, out, tasks);
  }

  Partial run_tasks() {
    Partial total;
    // Case-specific pair tables must outlive the tasks.
    std::vector<std::vector<Mask>> case_pf;
    case_pf.reserve(cases_.size());
    std::vector<Task> tasks;
    for (const auto& cs : cases_) {
      std::vector<Mask> pf = base_pf_;
      bool ok = true;
      for (auto [a, b] : cs.excluded_pairs) {
        pf[a] |= bit(b);
        pf[b] |= bit(a);
      }
      Node root;
      const Mask pins = pin_in_ | cs.pins;
      if (pins & pin_out_) continue;
      for_each_bit(pins, [&](std::size_t i) {
        if (root.forbidden & bit(i)) ok = false;
        add_to(root.chosen, root.forbidden, i, pf);
        root.count += 1;
      });
      if (!ok) continue;
      case_pf.push_back(std::move(pf));
      const Mask undecided = low_bits(n_) & ~pins & ~pin_out_;
      std::vector<Node> frontier;
      dfs(root, undecided, case_pf.back(), 0, total, &frontier);
      for (auto& nd : frontier) tasks.push_back(Task{&cs, undecided, &case_pf.back(), nd});
    }

    std::vector<Partial> parts(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t k; (k = next.fetch_add(1)) < tasks.size();)
        dfs(tasks[k].node, tasks[k].undecided, *tasks[k].pf, 0, parts[k], nullptr);
    };
    const unsigned w = std::max(1u, opt_.workers);
    if (w == 1 || tasks.size() <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < std::min<std::size_t>(w, tasks.size()); ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    for (auto& p : parts) total.merge(std::move(p));
    return total;
  }

  // rd_[i] = size of the largest free subset of cells i..n-1 under the
  // pattern conflicts and distance constraints alone.
  void compute_russian_doll() {
    rd_.assign(n_ + 1, 0);
    for (std::size_t i = n_; i-- > 0;) {
      Mask chosen = 0, forbidden = 0;
      add_to(chosen, forbidden, i, base_pf_);
      const Mask rest = low_bits(n_) & ~low_bits(i + 1);
      rd_[i] = rd_exists(chosen, forbidden, 1, rest, rd_[i + 1] + 1) ? rd_[i + 1] + 1 : rd_[i + 1];
    }
  }

  bool rd_exists(Mask chosen, Mask forbidden, int count, Mask undecided, int target) const {
    if (count >= target) return true;
    const Mask avail = undecided & ~forbidden;
    if (!avail) return false;
    const std::size_t i = lowest(avail);
    if (count + std::min(popcount(avail), rd_[i]) < target) return false;
    Mask c = chosen, f = forbidden;
    add_to(c, f, i, base_pf_);
    const Mask rest = undecided & ~low_bits(i + 1);
    return rd_exists(c, f, count + 1, rest, target) || rd_exists(chosen, forbidden, count, rest, target);
  }

  std::vector<CellSet> representatives(const std::set<std::vector<std::size_t>>& keys) const {
    std::vector<CellSet> out;
    for (const auto& key : keys) {
      Mask m = 0;
      for (auto i : key) m |= bit(i);
      std::optional<Mask> pick;
      for (const auto& g : group_) {
        const Mask im = apply_perm(g, m);
        if (satisfies(im) && (!pick || index_less(im, *pick))) pick = im;
      }
      CellSet s(problem_.domain);
      for_each_bit(*pick, [&](std::size_t i) { s.set_index(i); });
      out.push_back(std::move(s));
    }
    return out;
  }

  const SearchProblem& problem_;
  SearchOptions opt_;
  const Window& dom_;
  std::size_t n_ = 0;
  ConflictTable conf_;
  std::vector<std::vector<std::size_t>> group_;
  std::vector<Mask> base_pf_;
  Mask pin_in_ = 0, pin_out_ = 0;
  std::vector<Case> cases_;
  std::vector<int> rd_;
  Mode mode_ = Mode::Max;
  int target_ = 0;
  mutable std::atomic<int> best_{-1};
};

}  // namespace detail

inline SearchResult search(const SearchProblem& p, const SearchOptions& opt = {}) {
  if (!p.domain) throw Error(Errc::BadParameter, "search without a domain");
  detail::Engine e(p, opt);
  return e.run();
}

/// Whether no three points of the set match a pattern of the rule.
inline bool is_pattern_free(const CellSet& t, Rule rule) {
  const auto pts = t.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      bool hit = false;
      for_each_candidate_third(pts[i], pts[j], t.window()->bounds(), rule, [&](const LatticePoint& r) {
        if (!hit && r != pts[i] && r != pts[j] && t.contains(r) && match_triple(pts[i], pts[j], r, rule)) hit = true;
      });
      if (hit) return false;
    }
  return true;
}

/// Greedily adds cells in row-major order while the set stays pattern-free.
/// One pass suffices: a rejected cell conflicts with a subset of the final set.
inline CellSet extend_to_maximal_in_window(const CellSet& t, Rule rule) {
  if (!is_pattern_free(t, rule)) throw Error(Errc::SeedNotFree, "seed contains a pattern triple");
  const Window& w = *t.window();
  CellSet out = t;
  std::vector<LatticePoint> chosen = out.points();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (out.test_index(i)) continue;
    const LatticePoint& p = w.point(i);
    bool hit = false;
    for (std::size_t a = 0; a < chosen.size() && !hit; ++a)
      for_each_candidate_third(p, chosen[a], w.bounds(), rule, [&](const LatticePoint& r) {
        if (!hit && r != p && r != chosen[a] && out.contains(r) && match_triple(p, chosen[a], r, rule)) hit = true;
      });
    if (!hit) {
      out.set_index(i);
      chosen.push_back(p);
    }
  }
  return out;
}

/// Largest number of left endpoints p in the box with p and p + (1,0) both
/// in a pattern-free set, over sets in the box widened by one column.
/// Extra points never help (freeness is hereditary), so the search ranges
/// over sets of endpoints whose pairs jointly stay free.
inline int gamma_bound_search(const Box& box, Rule rule = Rule::B) {
  if (box.empty()) return 0;
  auto big = Window::rect(box.x0, box.x1 + 1, box.y0, box.y1);
  const ConflictTable conf = precompute_conflicts(*big, rule);
  std::vector<std::size_t> left, right;
  for (Int y = box.y0; y <= box.y1; ++y)
    for (Int x = box.x0; x <= box.x1; ++x) {
      left.push_back(*big->index_of({x, y}));
      right.push_back(*big->index_of({x + 1, y}));
    }
  const std::size_t n = left.size();
  int best = 0;

  auto add = [&](Mask& chosen, Mask& forbidden, std::size_t c) {
    if (chosen & detail::bit(c)) return true;
    if (forbidden & detail::bit(c)) return false;
    detail::for_each_bit(chosen, [&](std::size_t o) { forbidden |= conf(c, o); });
    chosen |= detail::bit(c);
    return true;
  };
  auto usable = [&](Mask chosen, Mask forbidden, std::size_t k) {
    auto ok = [&](std::size_t c) { return (chosen & detail::bit(c)) || !(forbidden & detail::bit(c)); };
    return ok(left[k]) && ok(right[k]);
  };

  auto dfs = [&](auto&& self, std::size_t k, Mask chosen, Mask forbidden, int count) -> void {
    best = std::max(best, count);
    int potential = 0;
    for (std::size_t j = k; j < n; ++j)
      if (usable(chosen, forbidden, j)) ++potential;
    if (count + potential <= best) return;
    for (std::size_t j = k; j < n; ++j) {
      if (!usable(chosen, forbidden, j)) continue;
      Mask c = chosen, f = forbidden;
      if (add(c, f, left[j]) && add(c, f, right[j])) self(self, j + 1, c, f, count + 1);
      // remaining candidates after j
      int rest = 0;
      for (std::size_t q = j + 1; q < n; ++q)
        if (usable(chosen, forbidden, q)) ++rest;
      if (count + rest <= best) return;
    }
  };
  dfs(dfs, 0, 0, 0, 0);
  return best;
}

}  // namespace tbp
