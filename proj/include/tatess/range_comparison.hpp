#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tatess/stabilizer_presets.hpp"

namespace tatess {

/// A lower bound on s. The "everywhere" sentinel plays the role of minus infinity.
class Threshold {
 public:
  static Threshold everywhere() noexcept { return Threshold(); }
  static Threshold at(std::int64_t s) noexcept { return Threshold(s); }

  bool is_everywhere() const noexcept { return !value_; }
  std::int64_t value() const;  // throws std::logic_error for the sentinel
  bool holds_at(std::int64_t s) const noexcept { return !value_ || s >= *value_; }

  Threshold operator+(std::int64_t shift) const noexcept {
    return value_ ? Threshold(*value_ + shift) : Threshold();
  }
  Threshold operator-(std::int64_t shift) const noexcept { return *this + (-shift); }

  friend Threshold max(const Threshold& a, const Threshold& b) noexcept {
    if (!a.value_) return b;
    if (!b.value_) return a;
    return Threshold(std::max(*a.value_, *b.value_));
  }
  friend bool operator==(const Threshold&, const Threshold&) = default;
  /// The sentinel compares below every finite threshold.
  friend std::strong_ordering operator<=>(const Threshold& a, const Threshold& b) noexcept {
    if (!a.value_ || !b.value_) return !!a.value_ <=> !!b.value_;
    return *a.value_ <=> *b.value_;
  }

  std::string to_string() const { return value_ ? std::to_string(*value_) : "-inf"; }

 private:
  Threshold() = default;
  explicit Threshold(std::int64_t s) : value_(s) {}
  std::optional<std::int64_t> value_;
};

/// A map of spectral sequences that, on page `page`, is onto for s >= onto_from
/// and an isomorphism for s >= iso_from.
struct RangeBound {
  int page = 2;
  Threshold onto_from = Threshold::everywhere();
  Threshold iso_from = Threshold::everywhere();

  friend bool operator==(const RangeBound&, const RangeBound&) = default;
};

/// One page later: onto for s >= max(M0, M1 - r), iso for s >= max(M1, M0 + r).
RangeBound propagate(const RangeBound& b);

/// start, propagate(start), ... up to and including `page`.
std::vector<RangeBound> propagate_to(const RangeBound& start, int page);

struct VanishingLine {
  std::uint32_t p = 3;
  Level group = Level::g;
  std::int64_t vcd = 0;
  int page = 0;
  /// E_page^{s,t} = 0 for every s >= line.
  std::int64_t line = 0;
  /// Bounds for cohomology -> Tate cohomology, from (2, vcd, vcd + 1) to `page`.
  std::vector<RangeBound> trace;
};

/// The comparison with the beta-inverted spectral sequence is onto for s >= vcd and an
/// isomorphism for s > vcd on E_2; the inverted side vanishes on page 2n^2 + 2, so the
/// propagated iso threshold is a horizontal vanishing line there.
/// Throws std::invalid_argument for Level::cp.
VanishingLine vanishing_line(std::uint32_t p, Level group);

struct SimulationSizes {
  int s_extent = 6;     // filtrations 0 .. s_extent - 1
  int stem_extent = 6;  // stems 0 .. stem_extent - 1
  int max_dim = 10;     // basis vectors per complex
  std::uint32_t prime = 3;
};

enum class SimulationKind { random, identity, zero_target };

struct ComparisonWitness {
  bool ok = true;
  std::uint64_t seed = 0;
  /// Thresholds measured on E_2, and the bounds propagated from them.
  RangeBound measured;
  std::vector<RangeBound> predicted;
  int pages_checked = 0;
  /// Filled in when a page violates its predicted bound.
  std::string detail;
};

/// Builds a random map of filtered cochain complexes over F_p, measures where the induced map
/// on E_2 is onto / an isomorphism, propagates those thresholds, and checks every later page
/// by direct computation. Test harness for propagate().
ComparisonWitness simulate_comparison(std::uint64_t seed, const SimulationSizes& sizes = {},
                                      SimulationKind kind = SimulationKind::random);

}  // namespace tatess
