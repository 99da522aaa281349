#include "paracomm/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "paracomm/csv.hpp"

namespace paracomm {

namespace {
const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
}

void emit_plot(const std::string& path, const std::string& title, const std::string& xlabel,
               const std::string& ylabel, const std::vector<PlotSeries>& series) {
  if (series.empty()) throw std::invalid_argument("emit_plot: no series");
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series) {
    int good = 0;
    for (const auto& [x, y] : s.points) {
      if (!(x > 0.0) || !(y > 0.0)) continue;
      ++good;
      xmin = std::min(xmin, std::log10(x));
      xmax = std::max(xmax, std::log10(x));
      ymin = std::min(ymin, std::log10(y));
      ymax = std::max(ymax, std::log10(y));
    }
    if (good < 2) throw std::invalid_argument("emit_plot: series needs >= 2 positive points");
  }
  if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-12) ymax = ymin + 1.0;

  const double W = 640, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
  auto px = [&](double lx) { return ml + (lx - xmin) / (xmax - xmin) * (W - ml - mr); };
  auto py = [&](double ly) { return H - mb - (ly - ymin) / (ymax - ymin) * (H - mt - mb); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
  svg += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" + title + "</text>\n";
  svg += "<text x=\"320\" y=\"470\" text-anchor=\"middle\" font-size=\"12\">" + xlabel +
         " (log10)</text>\n";
  svg += "<text x=\"16\" y=\"240\" text-anchor=\"middle\" font-size=\"12\" "
         "transform=\"rotate(-90 16 240)\">" + ylabel + " (log10)</text>\n";
  // frame and corner ticks
  svg += "<rect x=\"" + format_double(ml) + "\" y=\"" + format_double(mt) + "\" width=\"" +
         format_double(W - ml - mr) + "\" height=\"" + format_double(H - mt - mb) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + format_double(ml) + "\" y=\"" + format_double(H - mb + 16) +
         "\" font-size=\"10\">" + format_double(xmin) + "</text>\n";
  svg += "<text x=\"" + format_double(W - mr) + "\" y=\"" + format_double(H - mb + 16) +
         "\" text-anchor=\"end\" font-size=\"10\">" + format_double(xmax) + "</text>\n";
  svg += "<text x=\"" + format_double(ml - 6) + "\" y=\"" + format_double(H - mb) +
         "\" text-anchor=\"end\" font-size=\"10\">" + format_double(ymin) + "</text>\n";
  svg += "<text x=\"" + format_double(ml - 6) + "\" y=\"" + format_double(mt + 10) +
         "\" text-anchor=\"end\" font-size=\"10\">" + format_double(ymax) + "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % 8];
    std::string pts;
    for (const auto& [x, y] : series[si].points) {
      if (!(x > 0.0) || !(y > 0.0)) continue;
      pts += format_double(px(std::log10(x))) + "," + format_double(py(std::log10(y))) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" points=\"" + pts +
           "\"/>\n";
    svg += "<text x=\"" + format_double(W - mr - 4) + "\" y=\"" +
           format_double(mt + 14 + 14 * double(si)) + "\" text-anchor=\"end\" font-size=\"11\" "
           "fill=\"" + color + "\">" + series[si].name + "</text>\n";
  }
  svg += "</svg>\n";

  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("emit_plot: cannot open '" + path + "'");
  f << svg;
}

}  // namespace paracomm
