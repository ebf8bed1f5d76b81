#include "render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <vector>

#include "hahn/errors.hpp"

namespace hahn::cli {

namespace {

constexpr double kEdge = 20.0;
constexpr double kMargin = 10.0;

struct Point {
  double x = 0;
  double y = 0;
};

// Lozenge geometry: time advances along e_f = L(cos 30, -sin 30), height
// along the vertical unit; an up step is then e_u = L(cos 30, sin 30).
Point lozenge_point(double t, double x) {
  const double c = std::sqrt(3.0) / 2.0;
  return {t * kEdge * c, -t * kEdge * 0.5 + x * kEdge};
}

Point lattice_point(double t, double x) { return {t * kEdge, x * kEdge}; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

class SvgCanvas {
 public:
  void line(Point a, Point b, const char* cls) {
    track(a);
    track(b);
    body_ << "<line class=\"" << cls << "\" x1=\"" << fmt(a.x) << "\" y1=\""
          << fmt(-a.y) << "\" x2=\"" << fmt(b.x) << "\" y2=\"" << fmt(-b.y)
          << "\"/>\n";
  }

  void polygon(const std::vector<Point>& pts, const char* cls) {
    body_ << "<polygon class=\"" << cls << "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      track(pts[i]);
      body_ << (i ? " " : "") << fmt(pts[i].x) << "," << fmt(-pts[i].y);
    }
    body_ << "\"/>\n";
  }

  std::string finish(const std::string& title) const {
    std::ostringstream os;
    const double w = max_x_ - min_x_ + 2 * kMargin;
    const double h = max_y_ - min_y_ + 2 * kMargin;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
       << fmt(min_x_ - kMargin) << " " << fmt(-max_y_ - kMargin) << " "
       << fmt(w) << " " << fmt(h) << "\" width=\"" << fmt(w) << "\" height=\""
       << fmt(h) << "\">\n"
       << "<title>" << title << "</title>\n"
       << "<style>"
       << ".up{fill:#e4572e;stroke:#e4572e;stroke-width:2}"
       << ".flat{fill:#29335c;stroke:#29335c;stroke-width:2}"
       << ".gap{fill:#f3a712;stroke:#222;stroke-width:0.5}"
       << "polygon.up,polygon.flat{stroke:#222;stroke-width:0.5}"
       << ".outline{fill:none;stroke:#000;stroke-width:1}"
       << "</style>\n"
       << body_.str() << "</svg>\n";
    return os.str();
  }

 private:
  void track(Point p) {
    min_x_ = std::min(min_x_, p.x);
    max_x_ = std::max(max_x_, p.x);
    min_y_ = std::min(min_y_, p.y);
    max_y_ = std::max(max_y_, p.y);
  }

  std::ostringstream body_;
  double min_x_ = std::numeric_limits<double>::max();
  double max_x_ = std::numeric_limits<double>::lowest();
  double min_y_ = std::numeric_limits<double>::max();
  double max_y_ = std::numeric_limits<double>::lowest();
};

const char* step_class(Step s) { return s == Step::Up ? "up" : "flat"; }

}  // namespace

RenderStyle parse_style(const std::string& text) {
  if (text == "paths") return RenderStyle::Paths;
  if (text == "surface") return RenderStyle::Surface;
  if (text == "rhombi") return RenderStyle::Rhombi;
  throw InputError("--style must be paths, surface or rhombi");
}

RenderCounts expected_counts(const ModelParams& m) {
  return {static_cast<long>(m.N) * m.S, static_cast<long>(m.N) * (m.T - m.S),
          static_cast<long>(m.S) * (m.T - m.S)};
}

std::string render_svg(const PathFamily& family, RenderStyle style,
                       RenderCounts* counts) {
  validate(family);
  const ModelParams& m = family.model;
  RenderCounts n;
  SvgCanvas svg;
  auto P = style == RenderStyle::Paths ? lattice_point : lozenge_point;

  if (style != RenderStyle::Paths) {
    // Hexagon with sides a = N, b = S, c = T - S.
    const double N = m.N, S = m.S, T = m.T;
    svg.polygon({P(0, 0), P(T - S, 0), P(T, S), P(T, S + N), P(S, S + N), P(0, N)},
                "outline");
  }

  for (int i = 0; i < m.N; ++i) {
    for (int t = 0; t < m.T; ++t) {
      const Step s = family.moves[i][t];
      const int x = family.height(i, t);
      const int y = x + (s == Step::Up ? 1 : 0);
      (s == Step::Up ? n.up : n.flat)++;
      if (style == RenderStyle::Rhombi) {
        svg.polygon({P(t, x), P(t + 1, y), P(t + 1, y + 1), P(t, x + 1)},
                    step_class(s));
      } else {
        svg.line(P(t, x), P(t + 1, y), step_class(s));
      }
    }
  }

  if (style == RenderStyle::Rhombi) {
    // Third lozenge type fills every unoccupied height of an interior column.
    for (int t = 1; t < m.T; ++t) {
      const auto pos = family.positions(t);
      const int lo = std::max(0, t - (m.T - m.S));
      const int hi = std::min(t, m.S) + m.N - 1;
      for (int x = lo; x <= hi; ++x) {
        if (std::binary_search(pos.begin(), pos.end(), x)) continue;
        svg.polygon({P(t - 1, x), P(t, x), P(t + 1, x + 1), P(t, x + 1)}, "gap");
        ++n.gap;
      }
    }
  }

  if (counts) *counts = n;
  return svg.finish("path family " + m.str());
}

}  // namespace hahn::cli
