// SPDX-License-Identifier: Apache-2.0
#include "kfem/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace kfem {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
                          "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string xlabel, std::string ylabel, bool logx, bool logy)
    : title_(std::move(title)), xlabel_(std::move(xlabel)), ylabel_(std::move(ylabel)),
      logx_(logx), logy_(logy) {}

void SvgPlot::add_series(const std::string& label, const std::vector<double>& x,
                         const std::vector<double>& y, bool dashed) {
  if (x.size() != y.size()) throw std::invalid_argument("SvgPlot: size mismatch");
  series_.push_back({label, x, y, dashed});
}

std::string SvgPlot::render() const {
  const double width = 640, height = 480;
  const double ml = 80, mr = 160, mt = 50, mb = 60;
  const double pw = width - ml - mr, ph = height - mt - mb;

  double xmin = std::numeric_limits<double>::max(), xmax = std::numeric_limits<double>::lowest();
  double ymin = xmin, ymax = xmax;
  for (const Series& s : series_)
    for (size_t i = 0; i < s.x.size(); ++i) {
      const double xv = logx_ ? std::log10(s.x[i]) : s.x[i];
      const double yv = logy_ ? std::log10(s.y[i]) : s.y[i];
      if (!std::isfinite(xv) || !std::isfinite(yv)) continue;
      xmin = std::min(xmin, xv);
      xmax = std::max(xmax, xv);
      ymin = std::min(ymin, yv);
      ymax = std::max(ymax, yv);
    }
  if (xmin > xmax) {
    xmin = 0;
    xmax = 1;
    ymin = 0;
    ymax = 1;
  }
  if (xmax - xmin < 1e-12) xmax = xmin + 1;
  if (ymax - ymin < 1e-12) ymax = ymin + 1;
  const double padx = 0.04 * (xmax - xmin), pady = 0.06 * (ymax - ymin);
  xmin -= padx;
  xmax += padx;
  ymin -= pady;
  ymax += pady;

  auto px = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double v) { return mt + ph - (v - ymin) / (ymax - ymin) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  if (!description_.empty()) svg << "<desc>" << description_ << "</desc>\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\" "
      << "font-family=\"sans-serif\">" << title_ << "</text>\n";

  // frame
  svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  // ticks: decades on log axes, 5 even steps on linear ones
  auto emit_xtick = [&](double v, const std::string& label) {
    const double X = px(v);
    svg << "<line x1=\"" << X << "\" y1=\"" << mt + ph << "\" x2=\"" << X << "\" y2=\""
        << mt + ph + 5 << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << X << "\" y1=\"" << mt << "\" x2=\"" << X << "\" y2=\"" << mt + ph
        << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << X << "\" y=\"" << mt + ph + 20
        << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" << label
        << "</text>\n";
  };
  auto emit_ytick = [&](double v, const std::string& label) {
    const double Y = py(v);
    svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << Y << "\" x2=\"" << ml << "\" y2=\"" << Y
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << Y << "\" x2=\"" << ml + pw << "\" y2=\"" << Y
        << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << ml - 8 << "\" y=\"" << Y + 4
        << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << label
        << "</text>\n";
  };
  if (logx_) {
    for (int d = static_cast<int>(std::floor(xmin)); d <= static_cast<int>(std::ceil(xmax)); ++d)
      if (d >= xmin && d <= xmax) emit_xtick(d, "1e" + std::to_string(d));
  } else {
    for (int i = 0; i <= 5; ++i) {
      const double v = xmin + (xmax - xmin) * i / 5.0;
      emit_xtick(v, fmt(v));
    }
  }
  if (logy_) {
    for (int d = static_cast<int>(std::floor(ymin)); d <= static_cast<int>(std::ceil(ymax)); ++d)
      if (d >= ymin && d <= ymax) emit_ytick(d, "1e" + std::to_string(d));
  } else {
    for (int i = 0; i <= 5; ++i) {
      const double v = ymin + (ymax - ymin) * i / 5.0;
      emit_ytick(v, fmt(v));
    }
  }

  svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 15
      << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" << xlabel_
      << "</text>\n";
  svg << "<text x=\"20\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" transform=\"rotate(-90 20 "
      << mt + ph / 2 << ")\">" << ylabel_ << "</text>\n";

  for (size_t si = 0; si < series_.size(); ++si) {
    const Series& s = series_[si];
    const char* color = kPalette[si % 8];
    std::ostringstream pts;
    for (size_t i = 0; i < s.x.size(); ++i) {
      const double xv = logx_ ? std::log10(s.x[i]) : s.x[i];
      const double yv = logy_ ? std::log10(s.y[i]) : s.y[i];
      if (!std::isfinite(xv) || !std::isfinite(yv)) continue;
      pts << px(xv) << ',' << py(yv) << ' ';
    }
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" "
        << (s.dashed ? "stroke-dasharray=\"6 4\" " : "") << "points=\"" << pts.str() << "\"/>\n";
    for (size_t i = 0; i < s.x.size(); ++i) {
      const double xv = logx_ ? std::log10(s.x[i]) : s.x[i];
      const double yv = logy_ ? std::log10(s.y[i]) : s.y[i];
      if (!std::isfinite(xv) || !std::isfinite(yv)) continue;
      svg << "<circle cx=\"" << px(xv) << "\" cy=\"" << py(yv) << "\" r=\"3\" fill=\"" << color
          << "\"/>\n";
    }
    const double ly = mt + 16 + 18 * static_cast<double>(si);
    svg << "<line x1=\"" << ml + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw + 34
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"1.6\""
        << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
    svg << "<text x=\"" << ml + pw + 40 << "\" y=\"" << ly + 4
        << "\" font-size=\"11\" font-family=\"sans-serif\">" << s.label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void SvgPlot::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("SvgPlot: cannot write " + path);
  out << render();
}

}  // namespace kfem
