// Copyright 2026 The fpdual Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fpdual/plot.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <cstdlib>
#include <map>
#include <sstream>
#include <vector>

#include "fpdual/errors.hpp"
#include "fpdual/trace.hpp"

namespace fpdual {

namespace {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};

// std::stod raises out_of_range on subnormal magnitudes; metric series that
// decay to exact zero pass through them, so parse with strtod and accept the
// gradual-underflow result.
double parse_value(const std::string& s, const std::string& row) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) {
    throw ParseError("plot: bad number '" + s + "' in row '" + row + "'");
  }
  return v;
}

std::string svg_polyline(const Series& s, const std::string& color,
                         bool dashed, double x0, double x1, double ly0,
                         double ly1, int w, int h) {
  // 60px margins for axes and labels.
  const double mx = 60, my = 40;
  std::ostringstream out;
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
  if (dashed) out << " stroke-dasharray=\"6,4\"";
  out << " points=\"";
  for (size_t i = 0; i < s.x.size(); ++i) {
    if (s.y[i] <= 0.0) continue;  // log scale skips exact zeros
    const double fx = (s.x[i] - x0) / std::max(1e-300, x1 - x0);
    const double fy = (std::log10(s.y[i]) - ly0) / std::max(1e-12, ly1 - ly0);
    out << mx + fx * (w - 2 * mx) << "," << (h - my) - fy * (h - 2 * my) << " ";
  }
  out << "\"/>\n";
  return out.str();
}

}  // namespace

std::vector<std::string> plot_csv(const std::string& csv_path,
                                  const std::string& out_dir,
                                  const PlotOptions& options) {
  std::ifstream in(csv_path);
  if (!in) throw ParseError("plot: cannot open '" + csv_path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ParseError("plot: empty csv");
  if (line != "method,iter,metric,value") {
    throw ParseError("plot: unexpected csv header '" + line + "'");
  }
  // metric -> method -> series
  std::map<std::string, std::map<std::string, Series>> data;
  std::vector<std::string> method_order;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string method, iter, metric, value;
    if (!std::getline(row, method, ',') || !std::getline(row, iter, ',') ||
        !std::getline(row, metric, ',') || !std::getline(row, value)) {
      throw ParseError("plot: malformed row '" + line + "'");
    }
    auto& series = data[metric][method];
    series.x.push_back(parse_value(iter, line));
    series.y.push_back(parse_value(value, line));
    if (std::find(method_order.begin(), method_order.end(), method) ==
        method_order.end()) {
      method_order.push_back(method);
    }
  }
  if (data.empty()) throw ParseError("plot: csv has no data rows");

  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;
  const int w = options.width, h = options.height;
  for (const auto& [metric, by_method] : data) {
    double x0 = 1e300, x1 = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& [_, s] : by_method) {
      for (size_t i = 0; i < s.x.size(); ++i) {
        x0 = std::min(x0, s.x[i]);
        x1 = std::max(x1, s.x[i]);
        if (s.y[i] > 0.0) {
          ymin = std::min(ymin, s.y[i]);
          ymax = std::max(ymax, s.y[i]);
        }
      }
    }
    if (ymin > ymax) {  // all-zero series; give the log axis a band
      ymin = 1e-16;
      ymax = 1.0;
    }
    const double ly0 = std::floor(std::log10(ymin));
    const double ly1 = std::ceil(std::log10(ymax) + 1e-9);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
        << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
        << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    svg << "<line x1=\"60\" y1=\"" << h - 40 << "\" x2=\"" << w - 60
        << "\" y2=\"" << h - 40 << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"60\" y1=\"40\" x2=\"60\" y2=\"" << h - 40
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << w / 2 << "\" y=\"20\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"14\">" << metric
        << "</text>\n";
    svg << "<text x=\"" << w / 2 << "\" y=\"" << h - 8
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">iteration</text>\n";
    svg << "<text x=\"60\" y=\"" << h - 24
        << "\" font-family=\"sans-serif\" font-size=\"10\">" << x0
        << "</text>\n";
    svg << "<text x=\"" << w - 60 << "\" y=\"" << h - 24
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"10\">"
        << x1 << "</text>\n";
    svg << "<text x=\"8\" y=\"" << h - 44
        << "\" font-family=\"sans-serif\" font-size=\"10\">1e"
        << static_cast<int>(ly0) << "</text>\n";
    svg << "<text x=\"8\" y=\"52\" font-family=\"sans-serif\" "
           "font-size=\"10\">1e"
        << static_cast<int>(ly1) << "</text>\n";

    int color_idx = 0;
    int legend_y = 56;
    for (const auto& method : method_order) {
      const auto it = by_method.find(method);
      if (it == by_method.end()) continue;
      const bool dashed = method == "bound";
      const std::string color =
          dashed ? "#000000" : kPalette[color_idx++ % 6];
      svg << svg_polyline(it->second, color, dashed, x0, x1, ly0, ly1, w, h);
      svg << "<line x1=\"" << w - 180 << "\" y1=\"" << legend_y << "\" x2=\""
          << w - 150 << "\" y2=\"" << legend_y << "\" stroke=\"" << color
          << "\"" << (dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
      svg << "<text x=\"" << w - 144 << "\" y=\"" << legend_y + 4
          << "\" font-family=\"sans-serif\" font-size=\"12\">" << method
          << "</text>\n";
      legend_y += 18;
    }
    svg << "</svg>\n";

    const std::string path =
        (std::filesystem::path(out_dir) / (metric + ".svg")).string();
    std::ofstream out(path);
    out << svg.str();
    written.push_back(path);
  }
  return written;
}

}  // namespace fpdual
