#pragma once

#include <string>
#include <vector>

#include "qpj/spectrum.hpp"

namespace qpj::svg {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
};

// Line plot of one or more series sharing the axes. Self-contained SVG text.
std::string line_plot(const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<Series>& series);

// Energy axis with the DS region shaded, the NO_DS intervals drawn as bars, UNDET
// energies ticked, and L(B) overlaid.
std::string band_plot(const std::string& title, const std::vector<ScanRow>& rows,
                      const ScanSummary& summary);

}  // namespace qpj::svg
