#pragma once

// Percolation closure of a finite seed inside a finite window.
//
// A hyperedge is a border or internal triangle with all four points in the
// window. The closure repeatedly adds the fourth point of any hyperedge
// with exactly three points present. Inferences whose completion falls
// outside the window are dropped, so the result is a lower bound on
// (true closure) ∩ window; compare only on a core shrunk by a margin.

#include <deque>
#include <optional>
#include <random>
#include <vector>

#include "tbp/patterns.hpp"
#include "tbp/window.hpp"

namespace tbp {

struct ClosureStep {
  TriplePattern pattern;
  LatticePoint added;

  friend bool operator==(const ClosureStep&, const ClosureStep&) = default;
};

using ClosureTrace = std::vector<ClosureStep>;

struct ClosureResult {
  CellSet set;
  ClosureTrace trace;
};

struct CloseOptions {
  /// When set, seed points and newly derived points are processed in a
  /// pseudo-random order. The fixpoint does not depend on it.
  std::optional<std::uint64_t> shuffle_seed;
  bool record_trace = true;
};

inline constexpr Int kDefaultMargin = 8;

/// The rectangle shrunk by margin on every side.
inline WindowPtr shrink(const Window& w, Int margin) {
  const Box& b = w.bounds();
  return Window::rect(b.x0 + margin, b.x1 - margin, b.y0 + margin, b.y1 - margin);
}

namespace detail {

// Visits every (pattern, completion) pair where the pattern's points are p,
// q and some r with flag(r) set, and the completion lies in the window.
// Stops early when f returns false.
template <class Member, class F>
bool visit_inferences(const Window& win, const LatticePoint& p, const LatticePoint& q, Rule rule,
                      Member&& member, F&& f) {
  bool go = true;
  for_each_candidate_third(p, q, win.bounds(), rule, [&](const LatticePoint& r) {
    if (!go || r == p || r == q || !member(r)) return;
    auto t = match_triple(p, q, r, rule);
    if (!t) return;
    const CompletionSet cs = completions(*t, rule);
    for (const auto& c : cs.finite) {
      if (!go) return;
      if (win.contains(c) && !f(*t, c)) go = false;
    }
    if (cs.family) {
      cs.family->for_each_in(win.bounds(), [&](const LatticePoint& c) {
        if (go && win.contains(c) && !f(*t, c)) go = false;
      });
    }
  });
  return go;
}

}  // namespace detail

/// Least superset of X closed under the rule's inferences inside X's window.
inline ClosureResult close(const CellSet& seed, Rule rule, const CloseOptions& opt = {}) {
  const Window& win = *seed.window();
  ClosureResult res{seed, {}};
  CellSet processed(seed.window());
  std::vector<LatticePoint> done;
  std::deque<LatticePoint> queue;
  for (const auto& p : seed.points()) queue.push_back(p);

  std::optional<std::mt19937_64> rng;
  if (opt.shuffle_seed) {
    rng.emplace(*opt.shuffle_seed);
    std::shuffle(queue.begin(), queue.end(), *rng);
  }

  while (!queue.empty()) {
    LatticePoint p;
    if (rng) {
      std::uniform_int_distribution<std::size_t> pick(0, queue.size() - 1);
      const std::size_t k = pick(*rng);
      std::swap(queue[k], queue.back());
      p = queue.back();
      queue.pop_back();
    } else {
      p = queue.front();
      queue.pop_front();
    }
    for (const auto& q : done) {
      detail::visit_inferences(
          win, p, q, rule, [&](const LatticePoint& r) { return processed.contains(r); },
          [&](const TriplePattern& t, const LatticePoint& c) {
            if (res.set.insert(c)) {
              queue.push_back(c);
              if (opt.record_trace) res.trace.push_back({t, c});
            }
            return true;
          });
    }
    processed.insert(p);
    done.push_back(p);
  }
  return res;
}

/// Convenience overload for a seed given as points (those outside the
/// window are dropped).
inline ClosureResult close(const PointSet& seed, WindowPtr window, Rule rule, const CloseOptions& opt = {}) {
  return close(CellSet::from_points(std::move(window), seed), rule, opt);
}

/// Some inference of X whose completion is in the window but not in X.
inline std::optional<ClosureStep> find_violation(const CellSet& x, Rule rule) {
  const Window& win = *x.window();
  const auto pts = x.points();
  std::optional<ClosureStep> found;
  for (std::size_t i = 0; i < pts.size() && !found; ++i) {
    for (std::size_t j = 0; j < i && !found; ++j) {
      detail::visit_inferences(
          win, pts[i], pts[j], rule, [&](const LatticePoint& r) { return x.contains(r); },
          [&](const TriplePattern& t, const LatticePoint& c) {
            if (x.contains(c)) return true;
            found = ClosureStep{t, c};
            return false;
          });
    }
  }
  return found;
}

/// No hyperedge inside the window meets X in exactly three points.
inline bool is_stable_in_window(const CellSet& x, Rule rule) { return !find_violation(x, rule).has_value(); }

/// Whether the closure of X covers the core.
inline bool percolates(const CellSet& x, Rule rule, const Window& core) {
  if (!x.window()->contains_all(core)) throw Error(Errc::CoreNotContained, "core is not inside the window");
  CloseOptions opt;
  opt.record_trace = false;
  return close(x, rule, opt).set.covers(core);
}

inline bool percolates(const PointSet& seed, Rule rule, WindowPtr window, const Window& core) {
  if (!window->contains_all(core)) throw Error(Errc::CoreNotContained, "core is not inside the window");
  return percolates(CellSet::from_points(std::move(window), seed), rule, core);
}

}  // namespace tbp
