#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tatess/stabilizer_presets.hpp"

namespace tatess {

/// An additive class at (s, t) and its companion at (s, t + 1) in the Picard spectral sequence.
/// Differentials d_r with r <= max_page transfer between the two.
struct PicardPageClass {
  Bidegree additive;
  Bidegree picard;
  int max_page = 0;
};

/// nullopt when r > t (outside the comparison range). Throws std::invalid_argument for t < 2 or r < 2.
std::optional<PicardPageClass> picard_shift(Bidegree additive, int r);

struct FilterStep {
  std::int64_t t = 0;
  bool kept = false;
  std::string reason;
};

struct PermanentCycleFilter {
  std::uint32_t p = 5;
  Level group = Level::n;
  /// t-values whose diagonal Picard class in (t + 1, t + 1) is not ruled out.
  std::vector<std::int64_t> survivors;
  std::vector<FilterStep> trace;
  LateTargetReport late_targets;
};

/// Screens t in [1, 6pn]: sparsity (2n | t), the degree form above vcd, and, above vcd, the
/// beta-inverted spectral sequence at (t + 1, t) restricted to the differentials the Picard
/// comparison licenses. Throws HypothesisError for p < 5 and std::invalid_argument unless
/// group is N or G.
PermanentCycleFilter permanent_cycle_filter(std::uint32_t p, Level group, unsigned workers = 1);

struct DegreeBound {
  std::int64_t degree = 0;
  /// Exact F_p-dimension of the Tate group containing gr^degree, when degree > vcd.
  std::optional<std::size_t> dimension;
  std::string description;
};

struct PicardFiltrationReport {
  std::uint32_t p = 5;
  Level group = Level::n;
  std::int64_t vcd = 0;
  std::vector<std::int64_t> degrees;
  std::vector<DegreeBound> bounds;
  std::vector<std::string> notes;
};

/// Descent-filtration degrees where the exotic Picard group can be nonzero, with a bound per degree.
PicardFiltrationReport exotic_bound_report(std::uint32_t p, Level group, unsigned workers = 1);

}  // namespace tatess
