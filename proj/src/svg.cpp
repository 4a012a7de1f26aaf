#include "sepsim/svg.hpp"

#include <algorithm>
#include <stdexcept>

#include "sepsim/report.hpp"

namespace sepsim {

namespace {

constexpr double kWidth = 800, kHeight = 500;
constexpr double kLeft = 70, kRight = 20, kTop = 20, kBottom = 55;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

std::string num(double v) { return format_double(v); }

void escape_into(std::string& out, const std::string& text) {
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
}

}  // namespace

std::string render_sweep_svg(const std::vector<EstimateRow>& rows,
                             const std::string& axis_label,
                             const std::vector<double>& markers) {
  if (rows.empty()) throw std::invalid_argument("nothing to plot: no rows");

  double x_min = rows.front().param, x_max = rows.front().param;
  for (const EstimateRow& row : rows) {
    x_min = std::min(x_min, row.param);
    x_max = std::max(x_max, row.param);
  }
  for (double m : markers) {
    x_min = std::min(x_min, m);
    x_max = std::max(x_max, m);
  }
  if (x_max <= x_min) {
    double pad = x_min == 0.0 ? 1.0 : std::abs(x_min) * 0.5;
    x_min -= pad;
    x_max += pad;
  }

  auto sx = [&](double v) {
    return kLeft + (v - x_min) / (x_max - x_min) * kPlotW;
  };
  auto sy = [&](double p) { return kTop + (1.0 - p) * kPlotH; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
         "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) +
         " " + num(kHeight) + "\">\n";
  svg += "<rect width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
         "\" fill=\"white\"/>\n";

  for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    double y = sy(p);
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" +
           num(kLeft + kPlotW) + "\" y2=\"" + num(y) +
           "\" stroke=\"#d0d0d0\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
           num(p) + "</text>\n";
  }

  const int x_ticks = 5;
  for (int i = 0; i <= x_ticks; ++i) {
    double v = x_min + (x_max - x_min) * i / x_ticks;
    double x = sx(v);
    svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop + kPlotH) + "\" x2=\"" +
           num(x) + "\" y2=\"" + num(kTop + kPlotH + 5) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + kPlotH + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           num(v) + "</text>\n";
  }

  if (rows.size() > 1) {
    std::string band = "<polygon points=\"";
    for (const EstimateRow& row : rows)
      band += num(sx(row.param)) + "," + num(sy(row.ci_high)) + " ";
    for (auto it = rows.rbegin(); it != rows.rend(); ++it)
      band += num(sx(it->param)) + "," + num(sy(it->ci_low)) + " ";
    band.pop_back();
    band += "\" fill=\"#9ec5e8\" fill-opacity=\"0.45\" stroke=\"none\"/>\n";
    svg += band;
  }

  for (double m : markers) {
    double x = sx(m);
    svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(x) +
           "\" y2=\"" + num(kTop + kPlotH) +
           "\" stroke=\"#b03030\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
  }

  if (rows.size() > 1) {
    std::string line = "<polyline points=\"";
    for (const EstimateRow& row : rows)
      line += num(sx(row.param)) + "," + num(sy(row.estimate)) + " ";
    line.pop_back();
    line += "\" fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"2\"/>\n";
    svg += line;
  }
  for (const EstimateRow& row : rows) {
    svg += "<circle cx=\"" + num(sx(row.param)) + "\" cy=\"" +
           num(sy(row.estimate)) + "\" r=\"3\" fill=\"#1f5fa8\"/>\n";
  }

  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" +
         num(kPlotW) + "\" height=\"" + num(kPlotH) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

  svg += "<text x=\"" + num(kLeft + kPlotW / 2) + "\" y=\"" + num(kHeight - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">";
  escape_into(svg, axis_label);
  svg += "</text>\n";
  svg += "<text x=\"18\" y=\"" + num(kTop + kPlotH / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
         "transform=\"rotate(-90 18 " +
         num(kTop + kPlotH / 2) + ")\">success probability</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace sepsim
