#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tatess/fp_linalg.hpp"
#include "tatess/graded_algebra.hpp"

namespace tatess {

/// d_page(source) = target. The source is either a single generator or a monomial containing
/// a positive power of some non-invertible generator; for a monomial source S the rule is
/// applied to any monomial divisible by S (see apply_differential).
struct DifferentialRule {
  int page = 2;
  Monomial source;
  Element target;
};

struct PageWindow {
  std::int64_t s_min = 0;
  std::int64_t s_max = 0;
  std::int64_t t_min = 0;
  std::int64_t t_max = 0;
  /// Longest differential; no page-r class can leave through the top or right edge.
  int margin = 0;
  /// Sum of the differential lengths. Boundaries whose sources lie below the window are
  /// missing there, and the resulting false classes can support later differentials, so
  /// the trusted region starts this far from the bottom and left edges.
  int lower_margin = 0;

  bool contains(Bidegree b) const noexcept {
    return b.s >= s_min && b.s <= s_max && b.t >= t_min && b.t <= t_max;
  }
  /// Where page data is exact: s in [s_min + lower_margin, s_max - margin],
  /// t in [t_min + lower_margin - 1, t_max - (margin - 1)].
  PageWindow interior() const noexcept;
  /// Margins needed by a list of rule pages (longest page, sum of the distinct pages).
  static PageWindow with_margins(std::int64_t s_min, std::int64_t s_max, std::int64_t t_min, std::int64_t t_max,
                                 std::span<const int> rule_pages);
  bool empty() const noexcept { return s_min > s_max || t_min > t_max; }

  friend bool operator==(const PageWindow&, const PageWindow&) = default;
};

/// Leibniz extension of the page-r rules to arbitrary homogeneous elements.
///
/// For each monomial m: if some page-r rule has a non-generator source S dividing m
/// (first such rule in rule order), write S*y = c*m and use
///   d(m) = c^{-1} (d(S) y + (-1)^{|S|} S d(y)).
/// Otherwise the generator rules are extended by the graded Leibniz rule with
/// d(g^k) = k g^{k-1} d(g). Throws std::invalid_argument if x is not homogeneous.
Element apply_differential(const AlgebraPresentation& pres, std::span<const DifferentialRule> rules, int r,
                           const Element& x);

/// Checks the rule list against the presentation; throws std::invalid_argument on a bad rule.
void validate_rules(const AlgebraPresentation& pres, std::span<const DifferentialRule> rules);

/// A multiplicative spectral sequence with E_2 = the presented algebra, computed on a finite
/// window. Pages run from 2 to last_page(); any later page equals last_page().
///
/// Each page stores, per bidegree, the boundary subspace B_r and a canonical basis of
/// Z_r / B_r inside the E_2 monomial coordinates: the reduced row echelon basis of
/// Z_r intersected with the coordinate complement of B_r's pivots.
class SpectralSequence {
 public:
  static SpectralSequence compute(AlgebraPresentation pres, std::vector<DifferentialRule> rules, PageWindow window,
                                  unsigned workers = 1);

  const AlgebraPresentation& presentation() const noexcept { return *pres_; }
  const std::vector<DifferentialRule>& rules() const noexcept { return rules_; }
  const PageWindow& window() const noexcept { return window_; }
  int last_page() const noexcept { return static_cast<int>(pages_.size()) + 1; }
  std::vector<int> rule_pages() const;

  /// Window bidegrees with nonzero E_2, sorted.
  const std::vector<Bidegree>& bidegrees() const noexcept { return bidegrees_; }
  std::vector<Bidegree> interior_bidegrees() const;
  bool is_interior(Bidegree b) const noexcept { return window_.interior().contains(b); }

  std::span<const Monomial> e2_basis(Bidegree b) const;
  std::size_t dimension(int r, Bidegree b) const;
  /// Representatives of the canonical page-r basis, as elements of the algebra.
  std::vector<Element> page_basis(int r, Bidegree b) const;
  /// d_r at b in page-basis coordinates (rows: target basis). nullopt when page r carries no rule.
  std::optional<FpMatrix> differential_matrix(int r, Bidegree b) const;

  /// Z_r and B_r at b as subspaces of E_2 (rows in e2_basis coordinates).
  std::vector<Vector> cycle_space(int r, Bidegree b) const;
  std::vector<Vector> boundary_space(int r, Bidegree b) const;

  /// Page-r coordinates of a cycle x at b. Throws InternalCheckError when x is not in Z_r.
  Vector coordinates(int r, Bidegree b, const Element& x) const;
  /// Whether x lies in B_r at b (x is then zero on page r).
  bool is_boundary(int r, Bidegree b, const Element& x) const;

  Element apply_differential(int r, const Element& x) const {
    return tatess::apply_differential(*pres_, rules_, r, x);
  }

  std::size_t interior_total_dimension(int r) const;
  /// A page is "zero" when every interior bidegree has dimension 0.
  bool interior_zero(int r) const { return interior_total_dimension(r) == 0; }

  /// Assembles the direct sum over exterior masks of shifted copies (see tensor_exterior).
  friend SpectralSequence tensor_exterior(const SpectralSequence& base, std::span<const GeneratorSpec> generators);

 private:
  struct Cell {
    EchelonBasis boundaries;
    EchelonBasis representatives;
  };
  struct Page {
    std::vector<std::shared_ptr<const Cell>> cells;
    /// Present only on pages with a rule; indexed like cells.
    std::vector<FpMatrix> differentials;
  };

  SpectralSequence() = default;
  std::optional<std::size_t> cell_index(Bidegree b) const;
  const Page& page(int r) const;
  Vector monomial_vector(std::size_t cell, const Element& x) const;
  Vector page_coordinates(const Page& page, std::size_t cell, std::span<const Residue> v, bool strict = true) const;
  void build_cells();
  void run(unsigned workers);

  std::shared_ptr<const AlgebraPresentation> pres_;
  std::vector<DifferentialRule> rules_;
  PageWindow window_;
  std::vector<Bidegree> bidegrees_;
  std::map<Bidegree, std::size_t> index_;
  std::vector<std::vector<Monomial>> bases_;
  std::vector<std::map<Monomial, std::size_t>> monomial_index_;
  std::vector<Page> pages_;  // pages_[i] is E_{i+2}
};

/// The same spectral sequence with the generator made invertible (recomputed on the same window).
/// Identity when the generator is already invertible. Throws std::invalid_argument when the
/// generator is exterior or occurs in a rule source.
SpectralSequence invert_class(const SpectralSequence& ss, std::string_view generator, unsigned workers = 1);

/// The map E_r(from) -> E_r(to) at b induced by the inclusion of monomials, in page-basis coordinates.
FpMatrix localization_map(const SpectralSequence& from, const SpectralSequence& to, int r, Bidegree b);

/// Tensor product with an exterior algebra on permanent cycles. The result window is the
/// base window shrunk so that every mask shift stays inside the base window.
/// Throws std::invalid_argument on a name collision or a non-exterior generator.
SpectralSequence tensor_exterior(const SpectralSequence& base, std::span<const GeneratorSpec> generators);

/// The base window whose tensor_exterior result window is exactly `window`.
PageWindow enlarge_for_shifts(const PageWindow& window, std::span<const GeneratorSpec> generators);

}  // namespace tatess
