#include "polyproj/svg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "polyproj/bench.hpp"

namespace polyproj {

namespace {

constexpr int kCanvas = 800;
constexpr int kMargin = 40;
constexpr int kEllipseSegments = 180;

std::vector<Vector> ellipse_outline(const Ellipsoid& e) {
  // Boundary points c + eta * sum_j v_j * u_j / sqrt(lambda_j) for unit u.
  std::vector<Vector> pts;
  pts.reserve(kEllipseSegments);
  const Vector& lambda = e.eigenvalues();
  const Matrix& v = e.eigenvectors();
  for (int k = 0; k < kEllipseSegments; ++k) {
    const double t = 2.0 * std::numbers::pi * k / kEllipseSegments;
    const double a = e.radius() * std::cos(t) / std::sqrt(lambda[0]);
    const double b = e.radius() * std::sin(t) / std::sqrt(lambda[1]);
    pts.push_back(e.center() + a * v.col(0) + b * v.col(1));
  }
  return pts;
}

std::string pair(const Vector& p) {
  return bench::format_double(p[0]) + "," + bench::format_double(p[1]);
}

}  // namespace

std::string render_trace_svg(const Instance& instance, const Trace& trace, std::string_view title) {
  std::vector<std::vector<Vector>> outlines;
  for (const auto& e : instance.ellipsoids) outlines.push_back(ellipse_outline(e));

  double lo_x = -1.0, hi_x = 1.0, lo_y = -1.0, hi_y = 1.0;
  auto extend = [&](const Vector& p) {
    lo_x = std::min(lo_x, p[0]);
    hi_x = std::max(hi_x, p[0]);
    lo_y = std::min(lo_y, p[1]);
    hi_y = std::max(hi_y, p[1]);
  };
  for (const auto& outline : outlines) std::for_each(outline.begin(), outline.end(), extend);
  std::for_each(trace.iterates.begin(), trace.iterates.end(), extend);

  const double span = std::max(hi_x - lo_x, hi_y - lo_y);
  const double scale = (kCanvas - 2.0 * kMargin) / span;
  const double tx = kMargin - lo_x * scale + 0.5 * (span - (hi_x - lo_x)) * scale;
  const double ty = kCanvas - kMargin + lo_y * scale - 0.5 * (span - (hi_y - lo_y)) * scale;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\"" << kCanvas
     << "\" viewBox=\"0 0 " << kCanvas << ' ' << kCanvas << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<g transform=\"matrix(" << bench::format_double(scale) << " 0 0 " << bench::format_double(-scale) << ' '
     << bench::format_double(tx) << ' ' << bench::format_double(ty) << ")\" fill=\"none\">\n";
  os << "<circle class=\"unit-ball\" cx=\"0\" cy=\"0\" r=\"1\" stroke=\"#888888\" stroke-dasharray=\"4 3\" "
        "vector-effect=\"non-scaling-stroke\"/>\n";

  static constexpr const char* kColors[] = {"#1f77b4", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2"};
  for (std::size_t i = 0; i < outlines.size(); ++i) {
    os << "<path class=\"ellipse\" stroke=\"" << kColors[i % std::size(kColors)]
       << "\" vector-effect=\"non-scaling-stroke\" d=\"";
    for (std::size_t k = 0; k < outlines[i].size(); ++k) os << (k ? " L" : "M") << pair(outlines[i][k]);
    os << " Z\"/>\n";
  }

  os << "<polyline class=\"iterates\" stroke=\"black\" vector-effect=\"non-scaling-stroke\" points=\"";
  for (std::size_t k = 0; k < trace.iterates.size(); ++k) os << (k ? " " : "") << pair(trace.iterates[k]);
  os << "\"/>\n";
  os << "</g>\n";
  os << "<text x=\"" << kMargin << "\" y=\"" << kMargin / 2 << "\" font-family=\"sans-serif\" font-size=\"14\">"
     << title << ": " << trace.iterations() << " iterations, " << to_string(trace.termination) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace polyproj
