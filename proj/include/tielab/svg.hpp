#pragma once

#include <algorithm>
#include <fstream>
#include <string>
#include <vector>

#include "tielab/distribution.hpp"
#include "tielab/errors.hpp"

namespace tielab {

// Minimal CDF overlay plot: reference curves as polylines, empirical data as
// a step function.  Batch output only.
struct SvgPlot {
  struct Curve {
    std::vector<double> x, y;
    std::string color;
    bool step = false;
  };
  std::vector<Curve> curves;

  void add_table(const DistributionTable& t, const std::string& color) {
    curves.push_back({t.arg, t.cdf, color, t.integer_arg});
  }

  void add_steps(const std::vector<double>& sorted_x, const std::string& color) {
    Curve c;
    c.color = color;
    c.step = true;
    std::size_t n = sorted_x.size();
    for (std::size_t i = 0; i < n; ++i) {
      c.x.push_back(sorted_x[i]);
      c.y.push_back(static_cast<double>(i + 1) / static_cast<double>(n));
    }
    curves.push_back(std::move(c));
  }

  void write(const std::string& path) const {
    require(!curves.empty(), "nothing to plot");
    double xlo = 1e300, xhi = -1e300;
    for (const auto& c : curves)
      for (double v : c.x) {
        xlo = std::min(xlo, v);
        xhi = std::max(xhi, v);
      }
    if (xhi <= xlo) xhi = xlo + 1.0;
    const double W = 640, H = 420, ml = 50, mr = 15, mt = 15, mb = 35;
    auto px = [&](double x) { return ml + (x - xlo) / (xhi - xlo) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - y * (H - mt - mb); };

    std::ofstream out(path, std::ios::binary);
    require(out.good(), "cannot open output file: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // frame and the 0/1 level lines
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << (W - ml - mr)
        << "\" height=\"" << (H - mt - mb)
        << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    for (double lvl : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      out << "<line x1=\"" << ml << "\" y1=\"" << py(lvl) << "\" x2=\"" << (W - mr) << "\" y2=\""
          << py(lvl) << "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
      out << "<text x=\"8\" y=\"" << (py(lvl) + 4) << "\" font-size=\"11\">" << lvl
          << "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
      double x = xlo + (xhi - xlo) * i / 4.0;
      out << "<text x=\"" << (px(x) - 12) << "\" y=\"" << (H - 12) << "\" font-size=\"11\">"
          << format_g17(std::round(x * 100) / 100) << "</text>\n";
    }
    for (const auto& c : curves) {
      out << "<polyline fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1.5\" points=\"";
      double prev_y = 0.0;
      for (std::size_t i = 0; i < c.x.size(); ++i) {
        if (c.step && i > 0) out << px(c.x[i]) << "," << py(prev_y) << " ";
        out << px(c.x[i]) << "," << py(c.y[i]) << " ";
        prev_y = c.y[i];
      }
      out << "\"/>\n";
    }
    out << "</svg>\n";
    require(out.good(), "write failed: " + path);
  }
};

}  // namespace tielab
