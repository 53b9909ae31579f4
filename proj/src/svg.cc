#include "stylevox/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "stylevox/error.h"

namespace stylevox {
namespace {

constexpr const char* kColors[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string grouped_bar_svg(const std::string& title, const std::vector<std::string>& categories,
                            const std::vector<BarSeries>& series) {
  for (const BarSeries& s : series) {
    if (s.values.size() != categories.size()) {
      throw Error(ErrorCode::kLengthMismatch, "series '" + s.label + "' does not match the categories");
    }
  }
  const double bar_w = 14.0;
  const double gap = 18.0;
  const double left = 50.0;
  const double top = 50.0;
  const double plot_h = 260.0;
  const double group_w = bar_w * static_cast<double>(std::max<std::size_t>(series.size(), 1)) + gap;
  const double width = left + group_w * static_cast<double>(categories.size()) + 30.0;
  const double height = top + plot_h + 150.0;

  double max_v = 0.0;
  for (const BarSeries& s : series) {
    for (double v : s.values) max_v = std::max(max_v, v);
  }
  if (max_v <= 0.0) max_v = 1.0;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fixed(width, 0) +
         "\" height=\"" + fixed(height, 0) + "\" font-family=\"sans-serif\" font-size=\"10\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fixed(width / 2, 1) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(title) + "</text>\n";
  const double base = top + plot_h;
  out += "<line x1=\"" + fixed(left, 1) + "\" y1=\"" + fixed(base, 1) + "\" x2=\"" + fixed(width - 20, 1) +
         "\" y2=\"" + fixed(base, 1) + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + fixed(left, 1) + "\" y1=\"" + fixed(top, 1) + "\" x2=\"" + fixed(left, 1) +
         "\" y2=\"" + fixed(base, 1) + "\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double v = max_v * tick / 4.0;
    const double y = base - plot_h * tick / 4.0;
    out += "<text x=\"" + fixed(left - 4, 1) + "\" y=\"" + fixed(y + 3, 1) + "\" text-anchor=\"end\">" +
           fixed(v, 2) + "</text>\n";
  }

  for (std::size_t c = 0; c < categories.size(); ++c) {
    const double gx = left + gap / 2 + group_w * static_cast<double>(c);
    for (std::size_t s = 0; s < series.size(); ++s) {
      const double v = series[s].values[c];
      const double h = plot_h * std::max(v, 0.0) / max_v;
      const double x = gx + bar_w * static_cast<double>(s);
      out += "<rect x=\"" + fixed(x, 1) + "\" y=\"" + fixed(base - h, 1) + "\" width=\"" + fixed(bar_w - 1, 1) +
             "\" height=\"" + fixed(h, 1) + "\" fill=\"" + kColors[s % std::size(kColors)] + "\"/>\n";
      out += "<text x=\"" + fixed(x + bar_w / 2, 1) + "\" y=\"" + fixed(base - h - 3, 1) +
             "\" text-anchor=\"middle\" font-size=\"7\">" + fixed(v, 2) + "</text>\n";
    }
    const double lx = gx + bar_w * static_cast<double>(series.size()) / 2;
    out += "<text x=\"" + fixed(lx, 1) + "\" y=\"" + fixed(base + 10, 1) + "\" text-anchor=\"end\" transform=\"rotate(-45 " +
           fixed(lx, 1) + " " + fixed(base + 10, 1) + ")\">" + escape(categories[c]) + "</text>\n";
  }

  for (std::size_t s = 0; s < series.size(); ++s) {
    const double y = 32.0;
    const double x = left + 110.0 * static_cast<double>(s);
    out += "<rect x=\"" + fixed(x, 1) + "\" y=\"" + fixed(y, 1) + "\" width=\"10\" height=\"10\" fill=\"" +
           kColors[s % std::size(kColors)] + "\"/>\n";
    out += "<text x=\"" + fixed(x + 14, 1) + "\" y=\"" + fixed(y + 9, 1) + "\">" + escape(series[s].label) +
           "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace stylevox
