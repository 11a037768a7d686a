#include "diracflow/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "diracflow/io.hpp"

namespace diracflow {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

}  // namespace

void write_line_plot_svg(const std::string& path, const std::string& title,
                         const std::vector<double>& x,
                         const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty())
    throw std::invalid_argument("line plot: mismatched or empty series");
  const double width = 640, height = 400;
  const double ml = 70, mr = 20, mt = 40, mb = 40;
  double xmin = *std::min_element(x.begin(), x.end());
  double xmax = *std::max_element(x.begin(), x.end());
  double ymin = *std::min_element(y.begin(), y.end());
  double ymax = *std::max_element(y.begin(), y.end());
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;

  auto px = [&](double v) {
    return ml + (v - xmin) / (xmax - xmin) * (width - ml - mr);
  };
  auto py = [&](double v) {
    return height - mb - (v - ymin) / (ymax - ymin) * (height - mt - mb);
  };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
    << "\" height=\"" << height << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
    << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";
  s << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\""
    << width - mr << "\" y2=\"" << height - mb
    << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
    << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
  s << "<text x=\"" << ml << "\" y=\"" << height - mb + 18
    << "\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(xmin)
    << "</text>\n";
  s << "<text x=\"" << width - mr << "\" y=\"" << height - mb + 18
    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
    << fmt(xmax) << "</text>\n";
  s << "<text x=\"" << ml - 6 << "\" y=\"" << height - mb
    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
    << fmt(ymin) << "</text>\n";
  s << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 4
    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
    << fmt(ymax) << "</text>\n";
  s << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" "
       "points=\"";
  for (std::size_t i = 0; i < x.size(); ++i)
    s << fmt(px(x[i])) << "," << fmt(py(y[i])) << " ";
  s << "\"/>\n</svg>\n";
  write_text_file(path, s.str());
}

void write_heatmap_svg(const std::string& path, const std::string& title,
                       const Eigen::MatrixXd& values) {
  const Eigen::Index n_rows = values.rows(), n_cols = values.cols();
  if (n_rows == 0 || n_cols == 0)
    throw std::invalid_argument("heatmap: empty matrix");
  const double cell = std::max(1.0, std::min(12.0, 480.0 / n_rows));
  const double mt = 36;
  const double width = n_cols * cell, height = n_rows * cell + mt;
  const double scale = std::max(values.cwiseAbs().maxCoeff(), 1e-300);

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
    << "\" height=\"" << height << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
    << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    for (Eigen::Index c = 0; c < n_cols; ++c) {
      const double v = values(r, c) / scale;  // in [-1, 1]
      // Diverging palette: blue for negative, red for positive.
      const int other = static_cast<int>(255 * (1.0 - std::min(1.0, std::abs(v))));
      int red = 255, green = other, blue = other;
      if (v < 0) {
        red = other;
        green = other;
        blue = 255;
      }
      s << "<rect x=\"" << c * cell << "\" y=\"" << mt + r * cell
        << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\"rgb("
        << red << "," << green << "," << blue << ")\"/>\n";
    }
  }
  s << "</svg>\n";
  write_text_file(path, s.str());
}

}  // namespace diracflow
