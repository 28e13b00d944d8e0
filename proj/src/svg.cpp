#include "mobistress/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>

namespace mobistress {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string render_subset_comparison(std::span<const ReportRow> rows) {
  std::map<std::string, Prf> mean, stddev;
  std::vector<std::string> order;
  for (const ReportRow& r : rows) {
    if (r.fold == "mean") {
      mean[r.subset] = r.metrics;
      if (r.subset != "mode") order.push_back(r.subset);
    } else if (r.fold == "std") {
      stddev[r.subset] = r.metrics;
    }
  }

  constexpr double kWidth = 520, kHeight = 320, kLeft = 50, kBottom = 280, kTop = 20;
  constexpr double kPlotH = kBottom - kTop;
  const std::array<const char*, 3> colors{"black", "red", "blue"};
  const std::array<const char*, 3> names{"F1", "precision", "recall"};
  auto y_of = [&](double v) { return kBottom - std::clamp(v, 0.0, 1.0) * kPlotH; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
         fmt(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kBottom) + "\" x2=\"" + fmt(kWidth - 10) +
         "\" y2=\"" + fmt(kBottom) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(kLeft) +
         "\" y2=\"" + fmt(kBottom) + "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double v = t * 0.2;
    svg += "<text x=\"" + fmt(kLeft - 30) + "\" y=\"" + fmt(y_of(v) + 4) + "\">" + fmt(v) +
           "</text>\n";
  }

  const double group_w = (kWidth - kLeft - 20) / std::max<std::size_t>(order.size(), 1);
  const double bar_w = group_w / 5.0;
  for (std::size_t g = 0; g < order.size(); ++g) {
    const Prf& m = mean[order[g]];
    const Prf& s = stddev[order[g]];
    const std::array<double, 3> vals{m.f1, m.precision, m.recall};
    const std::array<double, 3> errs{s.f1, s.precision, s.recall};
    const double x0 = kLeft + g * group_w + bar_w;
    for (std::size_t k = 0; k < 3; ++k) {
      const double x = x0 + k * bar_w;
      svg += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y_of(vals[k])) + "\" width=\"" +
             fmt(bar_w * 0.8) + "\" height=\"" + fmt(kBottom - y_of(vals[k])) + "\" fill=\"" +
             colors[k] + "\" fill-opacity=\"0.6\"><title>" + order[g] + " " + names[k] + " " +
             fmt(vals[k]) + "</title></rect>\n";
      const double cx = x + bar_w * 0.4;
      svg += "<line x1=\"" + fmt(cx) + "\" y1=\"" + fmt(y_of(vals[k] - errs[k])) + "\" x2=\"" +
             fmt(cx) + "\" y2=\"" + fmt(y_of(vals[k] + errs[k])) + "\" stroke=\"" + colors[k] +
             "\"/>\n";
    }
    svg += "<text x=\"" + fmt(x0) + "\" y=\"" + fmt(kBottom + 16) + "\">" + order[g] + "</text>\n";
  }
  if (auto it = mean.find("mode"); it != mean.end()) {
    svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(y_of(it->second.f1)) + "\" x2=\"" +
           fmt(kWidth - 10) + "\" y2=\"" + fmt(y_of(it->second.f1)) +
           "\" stroke=\"gray\" stroke-dasharray=\"4 3\"><title>mode baseline F1</title></line>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace mobistress
