#include "moran/svg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "moran/csv.hpp"

namespace moran {

namespace {

struct PlotPoint {
  double x = 0.0;   // ln N
  double y = 0.0;   // mean rate over replicates
  double sd = 0.0;  // across-replicate standard deviation
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

std::string sweep_svg(const std::vector<SweepCell>& cells) {
  // Aggregate replicates per grid point, then group points into one series
  // per q value.
  std::map<std::size_t, std::vector<const SweepCell*>> by_grid;
  for (const auto& c : cells)
    if (c.ok) by_grid[c.grid_index].push_back(&c);

  std::map<double, std::vector<PlotPoint>> series;  // q -> points
  for (const auto& [gi, reps] : by_grid) {
    (void)gi;
    std::vector<double> rates;
    for (const auto* c : reps) rates.push_back(c->adaptation_rate);
    const MeanSd ms = mean_sd(rates);
    PlotPoint pt;
    pt.x = std::log(static_cast<double>(reps.front()->params.pop_size));
    pt.y = ms.mean;
    pt.sd = ms.sd;
    series[reps.front()->params.q].push_back(pt);
  }
  for (auto& [q, pts] : series) {
    (void)q;
    std::sort(pts.begin(), pts.end(),
              [](const PlotPoint& a, const PlotPoint& b) { return a.x < b.x; });
  }

  const double width = 640.0, height = 440.0;
  const double ml = 70.0, mr = 150.0, mt = 40.0, mb = 50.0;

  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool first = true;
  for (const auto& [q, pts] : series) {
    (void)q;
    for (const auto& p : pts) {
      if (first) {
        x_min = x_max = p.x;
        y_min = p.y - p.sd;
        y_max = p.y + p.sd;
        first = false;
      } else {
        x_min = std::min(x_min, p.x);
        x_max = std::max(x_max, p.x);
        y_min = std::min(y_min, p.y - p.sd);
        y_max = std::max(y_max, p.y + p.sd);
      }
    }
  }
  if (first) {  // no successful cells: emit an empty but valid chart
    x_min = y_min = 0.0;
    x_max = y_max = 1.0;
  }
  const double x_pad = (x_max - x_min) * 0.08 + 1e-9;
  const double y_pad = (y_max - y_min) * 0.08 + 1e-9;
  x_min -= x_pad;
  x_max += x_pad;
  y_min -= y_pad;
  y_max += y_pad;

  auto sx = [&](double v) {
    return ml + (v - x_min) / (x_max - x_min) * (width - ml - mr);
  };
  auto sy = [&](double v) {
    return height - mb - (v - y_min) / (y_max - y_min) * (height - mt - mb);
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
         "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
         num(height) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(width / 2.0) +
         "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\" "
         "font-family=\"sans-serif\">adaptation rate vs ln N</text>\n";

  // Axes.
  svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(height - mb) + "\" x2=\"" +
         num(width - mr) + "\" y2=\"" + num(height - mb) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(ml) +
         "\" y2=\"" + num(height - mb) + "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double fx = x_min + (x_max - x_min) * i / 5.0;
    const double fy = y_min + (y_max - y_min) * i / 5.0;
    svg += "<line x1=\"" + num(sx(fx)) + "\" y1=\"" + num(height - mb) +
           "\" x2=\"" + num(sx(fx)) + "\" y2=\"" + num(height - mb + 5) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(sx(fx)) + "\" y=\"" + num(height - mb + 18) +
           "\" text-anchor=\"middle\" font-size=\"11\" "
           "font-family=\"sans-serif\">" +
           num(fx) + "</text>\n";
    svg += "<line x1=\"" + num(ml - 5) + "\" y1=\"" + num(sy(fy)) + "\" x2=\"" +
           num(ml) + "\" y2=\"" + num(sy(fy)) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(ml - 8) + "\" y=\"" + num(sy(fy) + 4) +
           "\" text-anchor=\"end\" font-size=\"11\" "
           "font-family=\"sans-serif\">" +
           num(fy) + "</text>\n";
  }
  svg += "<text x=\"" + num((ml + width - mr) / 2.0) + "\" y=\"" +
         num(height - 10) +
         "\" text-anchor=\"middle\" font-size=\"13\" "
         "font-family=\"sans-serif\">ln N</text>\n";
  svg += "<text x=\"16\" y=\"" + num((mt + height - mb) / 2.0) +
         "\" text-anchor=\"middle\" font-size=\"13\" "
         "font-family=\"sans-serif\" transform=\"rotate(-90 16 " +
         num((mt + height - mb) / 2.0) +
         ")\">adaptation rate (fitness/generation)</text>\n";

  // Series, highest q first to mirror a top-to-bottom legend ordering.
  std::size_t color_idx = 0;
  for (auto it = series.rbegin(); it != series.rend(); ++it, ++color_idx) {
    const char* color = kPalette[color_idx % 8];
    const auto& pts = it->second;
    for (const auto& p : pts) {
      if (p.sd > 0.0) {
        svg += "<line x1=\"" + num(sx(p.x)) + "\" y1=\"" + num(sy(p.y - p.sd)) +
               "\" x2=\"" + num(sx(p.x)) + "\" y2=\"" + num(sy(p.y + p.sd)) +
               "\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n";
        for (double end : {p.y - p.sd, p.y + p.sd})
          svg += "<line x1=\"" + num(sx(p.x) - 4) + "\" y1=\"" + num(sy(end)) +
                 "\" x2=\"" + num(sx(p.x) + 4) + "\" y2=\"" + num(sy(end)) +
                 "\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n";
      }
      svg += "<circle cx=\"" + num(sx(p.x)) + "\" cy=\"" + num(sy(p.y)) +
             "\" r=\"3.5\" fill=\"" + color + "\"/>\n";
    }
    const double ly = mt + 16.0 * static_cast<double>(color_idx);
    svg += "<rect x=\"" + num(width - mr + 12) + "\" y=\"" + num(ly - 8) +
           "\" width=\"10\" height=\"10\" fill=\"" + std::string(color) +
           "\"/>\n";
    svg += "<text x=\"" + num(width - mr + 28) + "\" y=\"" + num(ly + 1) +
           "\" font-size=\"12\" font-family=\"sans-serif\">q=" +
           format_real(it->first) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace moran
