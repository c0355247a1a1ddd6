#include "pwlham/svg.hpp"

#include <algorithm>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "pwlham/io.hpp"

namespace pwlham {

Window::Window(double x0_, double x1_, double y0_, double y1_) : x0(x0_), x1(x1_), y0(y0_), y1(y1_) {
  if (!(std::isfinite(x0) && std::isfinite(x1) && std::isfinite(y0) && std::isfinite(y1)) ||
      !(x0 < x1) || !(y0 < y1)) {
    throw Error(ErrorKind::InvalidInput, "plot window must satisfy x0 < x1 and y0 < y1");
  }
}

Window parse_window(const std::string& text) {
  std::vector<double> v;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    v.push_back(parse_rational(text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (v.size() != 4) throw Error(ErrorKind::InvalidInput, "window needs four values x0,x1,y0,y1");
  return Window(v[0], v[1], v[2], v[3]);
}

Window default_window(const PiecewiseSystem& system, const std::vector<Point>& points) {
  double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
  for (LineId line : system.lines()) {
    xlo = std::min(xlo, abscissa(line));
    xhi = std::max(xhi, abscissa(line));
  }
  for (Point p : points) {
    xlo = std::min(xlo, p.x);
    xhi = std::max(xhi, p.x);
    ylo = std::min(ylo, p.y);
    yhi = std::max(yhi, p.y);
  }
  if (!(ylo <= yhi)) ylo = -1.0, yhi = 1.0;
  if (xhi - xlo < 1e-9) xlo -= 1.0, xhi += 1.0;
  if (yhi - ylo < 1e-9) ylo -= 1.0, yhi += 1.0;
  const double mx = 0.1 * (xhi - xlo);
  const double my = 0.1 * (yhi - ylo);
  return Window(xlo - mx, xhi + mx, ylo - my, yhi + my);
}

namespace {

constexpr double kPad = 40.0;

class Canvas {
 public:
  explicit Canvas(const Window& w) : w_(w) {}

  double sx(double x) const { return kPad + (x - w_.x0) / (w_.x1 - w_.x0) * (kCanvasWidth - 2 * kPad); }
  double sy(double y) const { return kCanvasHeight - kPad - (y - w_.y0) / (w_.y1 - w_.y0) * (kCanvasHeight - 2 * kPad); }
  bool inside(Point p) const { return p.x >= w_.x0 && p.x <= w_.x1 && p.y >= w_.y0 && p.y <= w_.y1; }

  void line(const char* fmt, ...) __attribute__((format(printf, 2, 3)));
  std::string str() const { return out_.str(); }

  std::string polyline_data(const std::vector<Point>& pts, bool closed) const {
    std::string d;
    char buf[64];
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%s%.3f %.3f", i == 0 ? "M" : " L", sx(pts[i].x), sy(pts[i].y));
      d += buf;
    }
    if (closed) d += " Z";
    return d;
  }

  const Window& window() const { return w_; }

 private:
  Window w_;
  std::ostringstream out_;
};

void Canvas::line(const char* fmt, ...) {
  va_list args;
  va_start(args, fmt);
  va_list copy;
  va_copy(copy, args);
  const int n = std::vsnprintf(nullptr, 0, fmt, copy);
  va_end(copy);
  std::string buf(static_cast<std::size_t>(n) + 1, '\0');
  std::vsnprintf(buf.data(), buf.size(), fmt, args);
  va_end(args);
  buf.resize(static_cast<std::size_t>(n));
  out_ << buf << '\n';
}

const char* line_label(LineId line) {
  switch (line) {
    case LineId::SigmaL: return "\xCE\xA3_L";
    case LineId::SigmaC: return "\xCE\xA3_C";
    case LineId::SigmaR: return "\xCE\xA3_R";
  }
  return "";
}

void header(Canvas& c, const PiecewiseSystem& system) {
  const Window& w = c.window();
  c.line("<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
  c.line("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">",
         kCanvasWidth, kCanvasHeight, kCanvasWidth, kCanvasHeight);
  c.line("<defs><clipPath id=\"plot\"><rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\"/></clipPath></defs>",
         kPad, kPad, kCanvasWidth - 2 * kPad, kCanvasHeight - 2 * kPad);
  c.line("<rect x=\"0\" y=\"0\" width=\"%d\" height=\"%d\" fill=\"white\"/>", kCanvasWidth, kCanvasHeight);
  c.line("<rect class=\"frame\" x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>",
         kPad, kPad, kCanvasWidth - 2 * kPad, kCanvasHeight - 2 * kPad);
  c.line("<text x=\"%.3f\" y=\"%.3f\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#555555\">x in [%.4g, %.4g], y in [%.4g, %.4g]</text>",
         kPad, kCanvasHeight - 12.0, w.x0, w.x1, w.y0, w.y1);

  for (LineId line : system.lines()) {
    const double x = abscissa(line);
    if (x < w.x0 || x > w.x1) continue;
    c.line("<line class=\"switching\" x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" stroke=\"#3366cc\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>",
           c.sx(x), kPad, c.sx(x), kCanvasHeight - kPad);
    c.line("<text x=\"%.3f\" y=\"%.3f\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#3366cc\">%s</text>",
           c.sx(x) + 4.0, kPad + 16.0, line_label(line));
  }

  for (const auto& zs : singular_points_in_zone(system)) {
    const Point p = zs.singularity.location;
    if (!c.inside(p)) continue;
    c.line("<circle class=\"singular\" cx=\"%.3f\" cy=\"%.3f\" r=\"4\" fill=\"%s\" stroke=\"#aa3300\" stroke-width=\"1.5\"/>",
           c.sx(p.x), c.sy(p.y), zs.in_zone ? "#aa3300" : "none");
    c.line("<text x=\"%.3f\" y=\"%.3f\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#aa3300\">%s %s</text>",
           c.sx(p.x) + 6.0, c.sy(p.y) + 12.0, to_string(zs.zone),
           zs.singularity.kind == SingularType::Center ? "center" : "saddle");
  }
}

}  // namespace

std::string render_cycle_svg(const PiecewiseSystem& system, const CycleCertificate& cert,
                             const std::optional<Window>& window) {
  if (cert.polyline.empty()) throw Error(ErrorKind::InvalidInput, "certificate has no polyline to draw");
  Canvas c(window ? *window : default_window(system, cert.polyline));
  header(c, system);
  // The last sample repeats the first one up to rounding; Z closes the loop instead.
  std::vector<Point> pts = cert.polyline;
  if (pts.size() > 1 && norm(pts.front() - pts.back()) <= kClosureTol) pts.pop_back();
  c.line("<path class=\"cycle\" d=\"%s\" fill=\"none\" stroke=\"#cc0000\" stroke-width=\"2\" clip-path=\"url(#plot)\"/>",
         c.polyline_data(pts, true).c_str());
  for (std::size_t k = 0; k < cert.corners.size(); ++k) {
    const Point p = cert.corners[k];
    if (!c.inside(p)) continue;
    c.line("<circle class=\"corner\" cx=\"%.3f\" cy=\"%.3f\" r=\"3.5\" fill=\"black\"/>", c.sx(p.x), c.sy(p.y));
    c.line("<text x=\"%.3f\" y=\"%.3f\" font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">(%g, y%zu = %.6f)</text>",
           c.sx(p.x) + (p.x > 0 ? 6.0 : -130.0), c.sy(p.y) - 6.0, p.x, k, p.y);
  }
  c.line("</svg>");
  return c.str();
}

std::string render_trajectory_svg(const PiecewiseSystem& system, const std::vector<Point>& points,
                                  const std::optional<Window>& window) {
  if (points.empty()) throw Error(ErrorKind::InvalidInput, "trajectory is empty");
  Canvas c(window ? *window : default_window(system, points));
  header(c, system);
  c.line("<path class=\"trajectory\" d=\"%s\" fill=\"none\" stroke=\"#008844\" stroke-width=\"1.5\" clip-path=\"url(#plot)\"/>",
         c.polyline_data(points, false).c_str());
  const Point s = points.front();
  if (c.inside(s)) {
    c.line("<circle class=\"start\" cx=\"%.3f\" cy=\"%.3f\" r=\"3.5\" fill=\"#008844\"/>", c.sx(s.x), c.sy(s.y));
  }
  c.line("</svg>");
  return c.str();
}

}  // namespace pwlham
