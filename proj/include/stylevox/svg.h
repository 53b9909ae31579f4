#pragma once

#include <string>
#include <vector>

namespace stylevox {

struct BarSeries {
  std::string label;
  std::vector<double> values;  // one per category
};

// Static SVG 1.1 grouped bar chart with value labels on every bar.
std::string grouped_bar_svg(const std::string& title, const std::vector<std::string>& categories,
                            const std::vector<BarSeries>& series);

}  // namespace stylevox
