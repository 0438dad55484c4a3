#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tatess/spectral_sequence.hpp"

namespace tatess {

/// Adams-style chart of one page: x = stem t - s, y = s.
struct ChartDot {
  std::int64_t stem = 0;
  std::int64_t s = 0;
  std::size_t count = 0;
};

struct ChartArrow {
  ChartDot from;
  ChartDot to;
  int page = 2;
  std::size_t rank = 0;
};

struct ChartDocument {
  std::string title;
  int page = 2;
  std::int64_t stem_min = 0;
  std::int64_t stem_max = 0;
  std::int64_t s_min = 0;
  std::int64_t s_max = 0;
  std::vector<ChartDot> dots;  // sorted by (s, stem)
  std::vector<ChartArrow> arrows;
  std::vector<std::string> legend;
};

/// Dots for the nonzero page-r groups in the window interior and one arrow per nonzero d_r
/// whose source and target both lie in the interior.
ChartDocument build_chart(const SpectralSequence& ss, int r, const std::string& title);

std::string render_svg(const ChartDocument& chart);
/// One column per stem, one row per filtration (top row = largest s). Digits give the
/// dimension ('+' above 9); arrows are listed below the grid.
std::string render_ascii(const ChartDocument& chart);

}  // namespace tatess
