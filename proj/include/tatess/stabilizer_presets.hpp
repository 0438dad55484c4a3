#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "tatess/graded_algebra.hpp"
#include "tatess/spectral_sequence.hpp"

namespace tatess {

/// Subgroups of the Morava stabilizer group at height n = p - 1:
/// the cyclic group C_p, a maximal finite subgroup F, the normalizer N of C_p, and G itself.
enum class Level { cp, f, n, g };

Level parse_level(std::string_view text);
std::string_view to_string(Level level) noexcept;

struct HeightContext {
  std::uint32_t p = 3;
  std::int64_t n = 2;

  static HeightContext at(std::uint32_t p);  // throws std::invalid_argument unless p is an odd prime

  /// Virtual cohomological dimension: 0 for the finite groups, n for N, n^2 for G.
  std::int64_t vcd(Level level) const noexcept;
  Bidegree alpha() const noexcept { return {1, 2 * n}; }
  Bidegree beta() const noexcept { return {2, 2 * std::int64_t{p} * n}; }
  Bidegree delta_unit() const noexcept { return {0, 2 * std::int64_t{p} * n * n}; }
  Bidegree exterior(std::int64_t i) const noexcept { return {1, 2 * std::int64_t{p} * p * n * i}; }
  int first_page() const noexcept { return static_cast<int>(2 * n + 1); }
  int second_page() const noexcept { return static_cast<int>(2 * n * n + 1); }
  /// Page at which the beta-inverted spectral sequences vanish.
  int collapse_page() const noexcept { return second_page() + 1; }
  /// Interior s in [2n^2 + 1, 2n^2 + 4n - 1], |t| <= 4pn^2 + 4pn - 2n^2; the window adds
  /// 2n^2 + 1 above and (2n + 1) + (2n^2 + 1) below.
  PageWindow default_window() const noexcept;
};

struct Preset {
  Level level = Level::f;
  bool inverted = false;
  HeightContext height;
  AlgebraPresentation presentation;
  std::vector<DifferentialRule> rules;
};

/// Cp: alpha, beta, delta^{+-1} over F_{p^n}, with d_{2n+1}(delta) = alpha beta^n delta^{1-n^2}
/// and d_{2n^2+1}(alpha delta^{n^3}) = beta^{n^2+1}.
/// F: alpha, beta, Delta^{+-1} with d_{2n+1}(Delta) = alpha beta^n and d_{2n^2+1}(alpha Delta^n) = beta^{n^2+1}.
/// N and G: the F ring tensored with an exterior algebra on permanent cycles a_0 .. a_{n-1}.
/// `inverted` makes beta invertible.
Preset build_preset(std::uint32_t p, Level level, bool inverted);

SpectralSequence run_preset(const Preset& preset, const PageWindow& window, unsigned workers = 1);

/// True iff every bidegree of the window with nonzero E_2 has 2(p-1) | t.
bool sparsity_check(const AlgebraPresentation& pres, const PageWindow& window);

/// True iff every bidegree of the window with s > vcd and nonzero E_2 has t = 2n eps + 2pn l, eps in {0, 1}.
bool degree_form_check(const AlgebraPresentation& pres, std::int64_t vcd, const PageWindow& window);

struct LateTargetRow {
  std::int64_t t = 0;
  /// dim E_{2n^2+1} at (t+1, t) in the beta-inverted N spectral sequence.
  std::size_t classes = 0;
  /// Rank of d_{2n^2+1} into (t+1, t).
  std::size_t hit = 0;
  /// Solutions of the degree equations of the form beta^m Delta^{pk} a_I, the only possible targets.
  std::size_t target_shapes = 0;
};

struct LateTargetReport {
  std::uint32_t p = 5;
  std::vector<LateTargetRow> rows;
  bool holds = false;
};

/// For n^2 <= t <= 4pn with 2n | t: no class in (t+1, t) is hit by d_{2n^2+1}.
/// Checked both by running the spectral sequence and by the degree equations.
/// Throws HypothesisError for p < 5.
LateTargetReport check_no_late_targets(std::uint32_t p, unsigned workers = 1);

/// Binary necklaces of length n with an even number of 0s and of 1s; n even, n <= 24.
std::uint64_t necklace_count(int n);

}  // namespace tatess
