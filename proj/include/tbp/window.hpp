#pragma once

// Finite domains of Z^2 and bit-indexed subsets of them.

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "tbp/lattice.hpp"

namespace tbp {

/// A finite nonempty set of lattice points with a row-major indexing
/// (rows by ascending y, then ascending x).
class Window {
 public:
  /// Rectangle [x0, x1] x [y0, y1], inclusive.
  static std::shared_ptr<const Window> rect(Int x0, Int x1, Int y0, Int y1) {
    if (x1 < x0 || y1 < y0) throw Error(Errc::BadParameter, "empty window");
    PointSet pts;
    for (Int y = y0; y <= y1; ++y)
      for (Int x = x0; x <= x1; ++x) pts.insert({x, y});
    return std::shared_ptr<const Window>(new Window(pts, true));
  }

  /// Square [lo, hi]^2.
  static std::shared_ptr<const Window> square(Int lo, Int hi) { return rect(lo, hi, lo, hi); }

  static std::shared_ptr<const Window> from_points(const PointSet& pts) {
    if (pts.empty()) throw Error(Errc::BadParameter, "empty window");
    const bool is_rect = [&] {
      Int x0 = INT64_MAX, x1 = INT64_MIN, y0 = INT64_MAX, y1 = INT64_MIN;
      for (const auto& p : pts) {
        x0 = std::min(x0, p.x); x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y); y1 = std::max(y1, p.y);
      }
      return Wide(x1 - x0 + 1) * (y1 - y0 + 1) == Wide(pts.size());
    }();
    return std::shared_ptr<const Window>(new Window(pts, is_rect));
  }

  std::size_t size() const { return points_.size(); }
  const Box& bounds() const { return box_; }
  bool is_rect() const { return is_rect_; }
  const std::vector<LatticePoint>& points() const { return points_; }
  const LatticePoint& point(std::size_t i) const { return points_[i]; }

  std::optional<std::size_t> index_of(const LatticePoint& p) const {
    if (!box_.contains(p)) return std::nullopt;
    const std::int32_t i = grid_[static_cast<std::size_t>((p.y - box_.y0) * box_.width() + (p.x - box_.x0))];
    if (i < 0) return std::nullopt;
    return static_cast<std::size_t>(i);
  }

  bool contains(const LatticePoint& p) const { return index_of(p).has_value(); }

  bool contains_all(const Window& other) const {
    for (const auto& p : other.points_)
      if (!contains(p)) return false;
    return true;
  }

  friend bool operator==(const Window& a, const Window& b) { return a.points_ == b.points_; }

 private:
  Window(const PointSet& pts, bool is_rect) : is_rect_(is_rect) {
    points_.assign(pts.begin(), pts.end());
    std::sort(points_.begin(), points_.end(), [](const LatticePoint& a, const LatticePoint& b) {
      return a.y != b.y ? a.y < b.y : a.x < b.x;
    });
    box_ = Box{INT64_MAX, INT64_MIN, INT64_MAX, INT64_MIN};
    for (const auto& p : points_) {
      box_.x0 = std::min(box_.x0, p.x); box_.x1 = std::max(box_.x1, p.x);
      box_.y0 = std::min(box_.y0, p.y); box_.y1 = std::max(box_.y1, p.y);
    }
    if (Wide(box_.width()) * box_.height() > Wide(1) << 26) throw Error(Errc::WindowTooLarge, "window bounding box");
    grid_.assign(static_cast<std::size_t>(box_.width() * box_.height()), -1);
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const auto& p = points_[i];
      grid_[static_cast<std::size_t>((p.y - box_.y0) * box_.width() + (p.x - box_.x0))] = static_cast<std::int32_t>(i);
    }
  }

  std::vector<LatticePoint> points_;
  std::vector<std::int32_t> grid_;
  Box box_;
  bool is_rect_ = false;
};

using WindowPtr = std::shared_ptr<const Window>;

/// A subset of a window. Bits beyond the window size are always zero.
class CellSet {
 public:
  explicit CellSet(WindowPtr w) : window_(std::move(w)), bits_((window_->size() + 63) / 64, 0) {}

  /// Points outside the window are dropped.
  static CellSet from_points(WindowPtr w, const PointSet& pts) {
    CellSet s(std::move(w));
    for (const auto& p : pts) s.insert(p);
    return s;
  }

  static CellSet full(WindowPtr w) {
    CellSet s(std::move(w));
    for (std::size_t i = 0; i < s.window_->size(); ++i) s.set_index(i);
    return s;
  }

  const WindowPtr& window() const { return window_; }

  bool test_index(std::size_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1u; }
  void set_index(std::size_t i) { bits_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset_index(std::size_t i) { bits_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  bool contains(const LatticePoint& p) const {
    auto i = window_->index_of(p);
    return i && test_index(*i);
  }

  /// Returns true if the point was newly added; false if present or outside.
  bool insert(const LatticePoint& p) {
    auto i = window_->index_of(p);
    if (!i || test_index(*i)) return false;
    set_index(*i);
    return true;
  }

  void erase(const LatticePoint& p) {
    if (auto i = window_->index_of(p)) reset_index(*i);
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (auto w : bits_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool empty() const { return size() == 0; }

  std::vector<LatticePoint> points() const {
    std::vector<LatticePoint> out;
    for (std::size_t i = 0; i < window_->size(); ++i)
      if (test_index(i)) out.push_back(window_->point(i));
    return out;
  }

  PointSet point_set() const {
    auto v = points();
    return PointSet(v.begin(), v.end());
  }

  bool is_subset_of(const CellSet& o) const {
    for (std::size_t k = 0; k < bits_.size(); ++k)
      if (bits_[k] & ~o.bits_[k]) return false;
    return true;
  }

  /// Every point of the other window lies in this set.
  bool covers(const Window& core) const {
    for (const auto& p : core.points())
      if (!contains(p)) return false;
    return true;
  }

  const std::vector<std::uint64_t>& words() const { return bits_; }

  friend bool operator==(const CellSet& a, const CellSet& b) {
    return *a.window_ == *b.window_ && a.bits_ == b.bits_;
  }

 private:
  WindowPtr window_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace tbp
