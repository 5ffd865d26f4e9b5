#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "panelwave/errors.hpp"

namespace panelwave {

// Minimal SVG line plot: one curve, framed axes, five ticks per axis.
inline void write_svg_curve(const std::string& path,
                            const std::vector<double>& x,
                            const std::vector<double>& y,
                            const std::string& x_label,
                            const std::string& title) {
  if (x.empty() || x.size() != y.size())
    throw ConfigError("plot needs matching non-empty coordinate arrays");
  const double W = 800, H = 520, ml = 70, mr = 20, mt = 40, mb = 50;
  double x0 = *std::min_element(x.begin(), x.end());
  double x1 = *std::max_element(x.begin(), x.end());
  double y0 = *std::min_element(y.begin(), y.end());
  double y1 = *std::max_element(y.begin(), y.end());
  if (x1 - x0 <= 0) x1 = x0 + 1;
  double pad = 0.05 * (y1 - y0 > 0 ? y1 - y0 : 1.0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double v) { return ml + (v - x0) / (x1 - x0) * (W - ml - mr); };
  auto py = [&](double v) { return H - mb - (v - y0) / (y1 - y0) * (H - mt - mb); };

  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open plot file '" + path + "'");
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-size=\"16\" font-family=\"sans-serif\">" << title << "</text>\n";

  char buf[256];
  for (int i = 0; i <= 4; ++i) {
    double vx = x0 + (x1 - x0) * i / 4.0;
    double vy = y0 + (y1 - y0) * i / 4.0;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"#ddd\"/>\n",
                  px(vx), py(y0), px(vx), py(y1));
    os << buf;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"#ddd\"/>\n",
                  px(x0), py(vy), px(x1), py(vy));
    os << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" "
                  "font-size=\"12\" font-family=\"sans-serif\">%.3g</text>\n",
                  px(vx), H - mb + 18, vx);
    os << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" "
                  "font-size=\"12\" font-family=\"sans-serif\">%.3g</text>\n",
                  ml - 6, py(vy) + 4, vy);
    os << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                "fill=\"none\" stroke=\"black\"/>\n",
                ml, mt, W - ml - mr, H - mt - mb);
  os << buf;
  os << "<text x=\"" << (ml + (W - ml - mr) / 2) << "\" y=\"" << H - 12
     << "\" text-anchor=\"middle\" font-size=\"13\" "
        "font-family=\"sans-serif\">" << x_label << "</text>\n";
  os << "<text x=\"18\" y=\"" << (mt + (H - mt - mb) / 2)
     << "\" text-anchor=\"middle\" font-size=\"13\" "
        "font-family=\"sans-serif\" transform=\"rotate(-90 18 "
     << (mt + (H - mt - mb) / 2) << ")\">P</text>\n";

  os << "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.5\" "
        "points=\"";
  for (size_t i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(x[i]), py(y[i]));
    os << buf;
  }
  os << "\"/>\n</svg>\n";
}

}  // namespace panelwave
