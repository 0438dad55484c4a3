#include "tatess/chart.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tatess {

namespace {

constexpr std::int64_t kStemPx = 8;
constexpr std::int64_t kFiltPx = 32;
constexpr std::int64_t kPad = 48;

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

const char* page_colour(int page) {
  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"};
  return colours[static_cast<std::size_t>(page) % 6];
}

}  // namespace

ChartDocument build_chart(const SpectralSequence& ss, int r, const std::string& title) {
  ChartDocument chart;
  chart.title = title;
  chart.page = r;
  const auto inner = ss.window().interior();
  chart.s_min = inner.s_min;
  chart.s_max = inner.s_max;
  chart.stem_min = inner.t_min - inner.s_max;
  chart.stem_max = inner.t_max - inner.s_min;

  auto dot = [&](Bidegree b) { return ChartDot{b.stem(), b.s, ss.dimension(r, b)}; };
  for (const auto& b : ss.interior_bidegrees())
    if (ss.dimension(r, b) > 0) chart.dots.push_back(dot(b));
  std::sort(chart.dots.begin(), chart.dots.end(),
            [](const ChartDot& a, const ChartDot& b) { return std::pair(a.s, a.stem) < std::pair(b.s, b.stem); });

  for (const auto& b : ss.interior_bidegrees()) {
    const auto d = ss.differential_matrix(r, b);
    if (!d || d->rows() == 0 || d->cols() == 0) continue;
    const auto rk = rank(*d);
    if (rk == 0) continue;
    // d_r lowers the stem by one and raises s by r.
    const Bidegree target{b.s + r, b.t + r - 1};
    if (!ss.is_interior(target)) continue;
    chart.arrows.push_back({dot(b), dot(target), r, rk});
  }
  std::sort(chart.arrows.begin(), chart.arrows.end(), [](const ChartArrow& a, const ChartArrow& b) {
    return std::pair(a.from.s, a.from.stem) < std::pair(b.from.s, b.from.stem);
  });

  std::size_t total = 0;
  for (const auto& d : chart.dots) total += d.count;
  chart.legend.push_back("x = t - s, y = s");
  chart.legend.push_back("E_" + std::to_string(r) + ": " + std::to_string(chart.dots.size()) + " bidegrees, total dimension " +
                         std::to_string(total));
  if (!chart.arrows.empty()) chart.legend.push_back("arrows: d_" + std::to_string(r));
  return chart;
}

std::string render_svg(const ChartDocument& c) {
  const std::int64_t width = (c.stem_max - c.stem_min) * kStemPx + 2 * kPad;
  const std::int64_t height = (c.s_max - c.s_min) * kFiltPx + 2 * kPad + 16 * static_cast<std::int64_t>(c.legend.size());
  auto x = [&](std::int64_t stem) { return kPad + (stem - c.stem_min) * kStemPx; };
  auto y = [&](std::int64_t s) { return kPad + (c.s_max - s) * kFiltPx; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"monospace\" font-size=\"10\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << kPad << "\" y=\"20\" font-size=\"14\">" << escape(c.title) << "</text>\n";

  os << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (std::int64_t s = c.s_min; s <= c.s_max; ++s)
    os << "<line x1=\"" << x(c.stem_min) << "\" y1=\"" << y(s) << "\" x2=\"" << x(c.stem_max) << "\" y2=\"" << y(s)
       << "\"/>\n";
  os << "</g>\n";
  os << "<g fill=\"#555555\">\n";
  for (std::int64_t s = c.s_min; s <= c.s_max; ++s)
    os << "<text x=\"4\" y=\"" << y(s) + 4 << "\">" << s << "</text>\n";
  for (std::int64_t stem = c.stem_min; stem <= c.stem_max; ++stem)
    if (stem % 10 == 0)
      os << "<text x=\"" << x(stem) - 6 << "\" y=\"" << y(c.s_min) + 20 << "\">" << stem << "</text>\n";
  os << "</g>\n";

  for (const auto& a : c.arrows)
    os << "<line x1=\"" << x(a.from.stem) << "\" y1=\"" << y(a.from.s) << "\" x2=\"" << x(a.to.stem) << "\" y2=\""
       << y(a.to.s) << "\" stroke=\"" << page_colour(a.page) << "\" stroke-width=\"1\"/>\n";

  for (const auto& d : c.dots) {
    os << "<circle cx=\"" << x(d.stem) << "\" cy=\"" << y(d.s) << "\" r=\"3\" fill=\"black\"/>\n";
    if (d.count > 1)
      os << "<text x=\"" << x(d.stem) + 4 << "\" y=\"" << y(d.s) - 4 << "\">" << d.count << "</text>\n";
  }

  std::int64_t ly = y(c.s_min) + 40;
  for (const auto& line : c.legend) {
    os << "<text x=\"" << kPad << "\" y=\"" << ly << "\">" << escape(line) << "</text>\n";
    ly += 16;
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_ascii(const ChartDocument& c) {
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> at;
  for (const auto& d : c.dots) at[{d.s, d.stem}] = d.count;
  std::ostringstream os;
  os << c.title << "\n";
  const auto cols = static_cast<std::size_t>(c.stem_max - c.stem_min + 1);
  for (std::int64_t s = c.s_max; s >= c.s_min; --s) {
    std::string row(cols, '.');
    for (std::int64_t stem = c.stem_min; stem <= c.stem_max; ++stem) {
      auto it = at.find({s, stem});
      if (it == at.end()) continue;
      row[static_cast<std::size_t>(stem - c.stem_min)] = it->second > 9 ? '+' : static_cast<char>('0' + it->second);
    }
    std::string label = std::to_string(s);
    os << std::string(label.size() < 5 ? 5 - label.size() : 0, ' ') << label << " |" << row << "\n";
  }
  os << "stems " << c.stem_min << " .. " << c.stem_max << "\n";
  for (const auto& a : c.arrows)
    os << "d_" << a.page << ": (" << a.from.stem << ", " << a.from.s << ") -> (" << a.to.stem << ", " << a.to.s
       << ") rank " << a.rank << "\n";
  for (const auto& line : c.legend) os << line << "\n";
  return os.str();
}

}  // namespace tatess
