#include "tropos/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tropos {

namespace {

constexpr double kHalf = 3.5;
constexpr double kScale = 40.0;
constexpr double kRadius = 2.0;
constexpr double kPi = 3.14159265358979323846;
const char *kInk = "#1f4fbf";

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000")
    s = "0.000";
  return s;
}

std::string px(double x) { return num((x + kHalf) * kScale); }
std::string py(double y) { return num((kHalf - y) * kScale); }

struct Pt {
  double x, y;
};

std::vector<Pt> clipped_vertices(const Polyhedron &cell, std::size_t n, int &dim) {
  Polyhedron q(2);
  for (const auto &c : cell.constraints()) {
    Vec a = c.a;
    if (n == 1)
      a.push_back(Rational(0));
    if (c.equality)
      q.add_eq(a, c.b);
    else
      q.add_ge(a, c.b);
  }
  if (n == 1)
    q.add_eq({Rational(0), Rational(1)}, Rational(0));
  const Rational h(7, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    Vec e(2, Rational(0));
    e[i] = 1;
    q.add_ge(e, -h);
    q.add_le(e, h);
  }
  dim = q.dimension();
  std::vector<Pt> out;
  if (dim < 0)
    return out;
  for (const auto &v : q.generators().vertices)
    out.push_back({v[0].get_d(), v[1].get_d()});
  if (dim == 2) {
    double cx = 0, cy = 0;
    for (const auto &p : out) {
      cx += p.x;
      cy += p.y;
    }
    cx /= static_cast<double>(out.size());
    cy /= static_cast<double>(out.size());
    std::sort(out.begin(), out.end(), [&](const Pt &a, const Pt &b) {
      return std::atan2(a.y - cy, a.x - cx) < std::atan2(b.y - cy, b.x - cx);
    });
  }
  return out;
}

void dot(std::ostream &os, double x, double y, bool filled) {
  os << "  <circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"4\" ";
  if (filled)
    os << "fill=\"" << kInk << "\" stroke=\"none\"/>\n";
  else
    os << "fill=\"white\" stroke=\"" << kInk << "\" stroke-width=\"2\"/>\n";
}

double angle_of(const Vec &d) { return std::atan2(d[1].get_d(), d[0].get_d()); }

void arc_path(std::ostream &os, double a0, double span) {
  // Split long arcs so each SVG arc command covers at most half a turn.
  int pieces = span > kPi ? 2 : 1;
  double step = span / pieces;
  os << "  <path d=\"M " << px(kRadius * std::cos(a0)) << " " << py(kRadius * std::sin(a0));
  for (int k = 1; k <= pieces; ++k) {
    double a = a0 + step * k;
    os << " A " << num(kRadius * kScale) << " " << num(kRadius * kScale) << " 0 0 0 " << px(kRadius * std::cos(a))
       << " " << py(kRadius * std::sin(a));
  }
  os << "\" fill=\"none\" stroke=\"" << kInk << "\" stroke-width=\"2.5\"/>\n";
}

} // namespace

std::string render_svg(const SvgScene &scene) {
  for (const auto &r : scene.regions)
    if (r.ambient_dim() > 2)
      throw Error("cannot draw a region in dimension " + std::to_string(r.ambient_dim()) + "; only n <= 2");
  for (const auto &s : scene.spheres)
    if (s.ambient_dim() > 2)
      throw Error("cannot draw a sphere set in dimension " + std::to_string(s.ambient_dim()) + "; only n <= 2");

  const std::string size = num(2 * kHalf * kScale);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
     << size << " " << size << "\">\n";
  if (!scene.title.empty())
    os << "  <title>" << scene.title << "</title>\n";
  os << "  <rect x=\"0\" y=\"0\" width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";
  os << "  <g stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"6 4\">\n";
  os << "    <line x1=\"" << px(-3) << "\" y1=\"" << py(0) << "\" x2=\"" << px(3) << "\" y2=\"" << py(0) << "\"/>\n";
  os << "    <line x1=\"" << px(0) << "\" y1=\"" << py(-3) << "\" x2=\"" << px(0) << "\" y2=\"" << py(3) << "\"/>\n";
  os << "  </g>\n";

  for (const auto &r : scene.regions) {
    std::vector<std::vector<Pt>> by_dim[3];
    for (const auto &c : r.cells()) {
      int dim = -1;
      auto pts = clipped_vertices(c.polyhedron, r.ambient_dim(), dim);
      if (dim >= 0 && dim <= 2)
        by_dim[dim].push_back(pts);
    }
    for (const auto &poly : by_dim[2]) {
      os << "  <polygon points=\"";
      for (std::size_t i = 0; i < poly.size(); ++i)
        os << (i ? " " : "") << px(poly[i].x) << "," << py(poly[i].y);
      os << "\" fill=\"" << kInk << "\" fill-opacity=\"0.25\" stroke=\"none\"/>\n";
    }
    for (const auto &seg : by_dim[1])
      if (seg.size() == 2)
        os << "  <line x1=\"" << px(seg[0].x) << "\" y1=\"" << py(seg[0].y) << "\" x2=\"" << px(seg[1].x)
           << "\" y2=\"" << py(seg[1].y) << "\" stroke=\"" << kInk << "\" stroke-width=\"2.5\"/>\n";
    for (const auto &pt : by_dim[0])
      if (pt.size() == 1)
        dot(os, pt[0].x, pt[0].y, true);
  }

  if (!scene.spheres.empty())
    os << "  <circle cx=\"" << px(0) << "\" cy=\"" << py(0) << "\" r=\"" << num(kRadius * kScale)
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (const auto &s : scene.spheres) {
    if (s.ambient_dim() == 1) {
      if (s.has_plus())
        dot(os, kRadius, 0, true);
      if (s.has_minus())
        dot(os, -kRadius, 0, true);
      continue;
    }
    for (const auto &a : s.arcs()) {
      if (a.full) {
        os << "  <circle cx=\"" << px(0) << "\" cy=\"" << py(0) << "\" r=\"" << num(kRadius * kScale)
           << "\" fill=\"none\" stroke=\"" << kInk << "\" stroke-width=\"2.5\"/>\n";
        continue;
      }
      double a0 = angle_of(a.from);
      if (a.is_point()) {
        dot(os, kRadius * std::cos(a0), kRadius * std::sin(a0), true);
        continue;
      }
      double a1 = angle_of(a.to);
      double span = a1 - a0;
      while (span <= 0)
        span += 2 * kPi;
      arc_path(os, a0, span);
      dot(os, kRadius * std::cos(a0), kRadius * std::sin(a0), a.from_closed);
      dot(os, kRadius * std::cos(a1), kRadius * std::sin(a1), a.to_closed);
    }
  }
  os << "</svg>\n";
  return os.str();
}

} // namespace tropos
