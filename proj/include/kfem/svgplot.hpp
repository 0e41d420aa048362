// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace kfem {

/// Minimal SVG line plot with log or linear axes; enough for the
/// convergence and decay figures. CSV stays the canonical artifact.
class SvgPlot {
public:
  SvgPlot(std::string title, std::string xlabel, std::string ylabel, bool logx, bool logy);

  void add_series(const std::string& label, const std::vector<double>& x,
                  const std::vector<double>& y, bool dashed = false);
  void set_description(const std::string& text) { description_ = text; }
  std::string render() const;
  void save(const std::string& path) const;

private:
  struct Series {
    std::string label;
    std::vector<double> x, y;
    bool dashed;
  };
  std::string title_, xlabel_, ylabel_, description_;
  bool logx_, logy_;
  std::vector<Series> series_;
};

}  // namespace kfem
