#pragma once

// Text and SVG pictures of point sets, y axis pointing up.

#include <functional>
#include <sstream>

#include "tbp/periodic.hpp"
#include "tbp/window.hpp"

namespace tbp {

enum class RenderFormat { Ascii, Svg };

inline constexpr Int kMaxAsciiSide = 200;
inline constexpr int kSvgCell = 20;

using Membership = std::function<bool(const LatticePoint&)>;

/// One row per y from top to bottom; "●" member, "·" otherwise, cells
/// separated by a space. Cells outside the domain print as a space.
inline std::string render_ascii(const Box& box, const Membership& member, const Membership& in_domain = nullptr) {
  if (box.width() > kMaxAsciiSide || box.height() > kMaxAsciiSide)
    throw Error(Errc::WindowTooLarge, std::to_string(box.width()) + "x" + std::to_string(box.height()));
  std::string out;
  for (Int y = box.y1; y >= box.y0; --y) {
    for (Int x = box.x0; x <= box.x1; ++x) {
      if (x != box.x0) out += ' ';
      const LatticePoint p{x, y};
      if (in_domain && !in_domain(p)) out += ' ';
      else out += member(p) ? "●" : "·";
    }
    out += '\n';
  }
  return out;
}

/// Grid lines through lattice points, axes where they cross the box, and
/// filled discs for members.
inline std::string render_svg(const Box& box, const Membership& member, const Membership& in_domain = nullptr) {
  if (box.empty()) throw Error(Errc::BadParameter, "empty box");
  const Int w = box.width(), h = box.height();
  const Int pw = w * kSvgCell, ph = h * kSvgCell;
  auto cx = [&](Int x) { return (x - box.x0) * kSvgCell + kSvgCell / 2; };
  auto cy = [&](Int y) { return (box.y1 - y) * kSvgCell + kSvgCell / 2; };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pw << "\" height=\"" << ph << "\" viewBox=\"0 0 " << pw
    << ' ' << ph << "\">\n";
  s << "<rect width=\"" << pw << "\" height=\"" << ph << "\" fill=\"white\"/>\n";
  s << "<g stroke=\"#cccccc\" stroke-width=\"1\">\n";
  for (Int x = box.x0; x <= box.x1; ++x)
    s << "<line x1=\"" << cx(x) << "\" y1=\"0\" x2=\"" << cx(x) << "\" y2=\"" << ph << "\"/>\n";
  for (Int y = box.y0; y <= box.y1; ++y)
    s << "<line x1=\"0\" y1=\"" << cy(y) << "\" x2=\"" << pw << "\" y2=\"" << cy(y) << "\"/>\n";
  s << "</g>\n<g stroke=\"black\" stroke-width=\"2\">\n";
  if (box.x0 <= 0 && 0 <= box.x1) s << "<line x1=\"" << cx(0) << "\" y1=\"0\" x2=\"" << cx(0) << "\" y2=\"" << ph << "\"/>\n";
  if (box.y0 <= 0 && 0 <= box.y1) s << "<line x1=\"0\" y1=\"" << cy(0) << "\" x2=\"" << pw << "\" y2=\"" << cy(0) << "\"/>\n";
  s << "</g>\n<g fill=\"black\">\n";
  for (Int y = box.y1; y >= box.y0; --y)
    for (Int x = box.x0; x <= box.x1; ++x) {
      const LatticePoint p{x, y};
      if (in_domain && !in_domain(p)) continue;
      if (member(p)) s << "<circle cx=\"" << cx(x) << "\" cy=\"" << cy(y) << "\" r=\"" << kSvgCell / 4 << "\"/>\n";
    }
  s << "</g>\n</svg>\n";
  return s.str();
}

inline std::string render(const Box& box, const Membership& member, RenderFormat f, const Membership& in_domain = nullptr) {
  return f == RenderFormat::Ascii ? render_ascii(box, member, in_domain) : render_svg(box, member, in_domain);
}

inline std::string render(const CellSet& s, RenderFormat f) {
  const Window& w = *s.window();
  return render(
      w.bounds(), [&](const LatticePoint& p) { return s.contains(p); }, f,
      [&](const LatticePoint& p) { return w.contains(p); });
}

inline std::string render(const PeriodicSet& p, const Box& box, RenderFormat f) {
  return render(box, [&](const LatticePoint& q) { return p.contains(q); }, f);
}

}  // namespace tbp
