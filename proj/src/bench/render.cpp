#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "safeplan/bench.hpp"

namespace safeplan::bench {

namespace {

constexpr const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kScale = 8;  // pixels per cell

std::string xml_escape(std::string_view text) {
  std::string out;
  for (const char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

void appendf(std::string& out, const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  out += buf;
}

}  // namespace

std::string render_svg(const OccupancyGrid& grid, std::span<const LabeledPath> paths) {
  const int w = grid.width() * kScale;
  const int h = grid.height() * kScale;
  const int legend_h = 16 * static_cast<int>(paths.size()) + 8;
  std::string out;
  appendf(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n",
          w, h + legend_h, w, h + legend_h);
  appendf(out, "<rect width=\"%d\" height=\"%d\" fill=\"#ffffff\"/>\n", w, h);

  // Horizontal runs of obstacle cells become one rect each.
  out += "<g fill=\"#303030\">\n";
  for (int r = 0; r < grid.height(); ++r) {
    int c = 0;
    while (c < grid.width()) {
      if (!grid.occupied({r, c})) {
        ++c;
        continue;
      }
      const int c0 = c;
      while (c < grid.width() && grid.occupied({r, c})) ++c;
      appendf(out, "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\"/>\n", c0 * kScale, r * kScale,
              (c - c0) * kScale, kScale);
    }
  }
  out += "</g>\n";

  const auto centre = [](int v) { return v * kScale + kScale / 2; };
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& lp = paths[i];
    const char* colour = kPalette[i % std::size(kPalette)];
    if (!lp.path.empty()) {
      appendf(out, "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"2\" points=\"", colour);
      for (const auto& cell : lp.path) appendf(out, "%d,%d ", centre(cell.col), centre(cell.row));
      out += "\"/>\n";
      const auto& s = lp.path.front();
      const auto& g = lp.path.back();
      appendf(out, "<circle cx=\"%d\" cy=\"%d\" r=\"%d\" fill=\"#00a000\"/>\n", centre(s.col), centre(s.row),
              kScale / 2 + 1);
      appendf(out, "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"#c00000\"/>\n", g.col * kScale,
              g.row * kScale, kScale, kScale);
    }
    const int y = h + 16 * static_cast<int>(i) + 14;
    appendf(out, "<line x1=\"4\" y1=\"%d\" x2=\"24\" y2=\"%d\" stroke=\"%s\" stroke-width=\"3\"/>\n", y - 4, y - 4,
            colour);
    appendf(out, "<text x=\"30\" y=\"%d\" font-family=\"sans-serif\" font-size=\"12\">", y);
    out += xml_escape(lp.label);
    out += "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string field_to_pgm(const SafetyField& field) {
  const auto& values = field.values();
  const double peak = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
  std::string out = "P5\n" + std::to_string(field.width()) + " " + std::to_string(field.height()) + "\n255\n";
  out.reserve(out.size() + values.size());
  for (const double v : values) {
    const double scaled = peak > 0.0 ? std::round(255.0 * v / peak) : 0.0;
    out += static_cast<char>(static_cast<unsigned char>(std::clamp(scaled, 0.0, 255.0)));
  }
  return out;
}

}  // namespace safeplan::bench
