#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tatess/fp_linalg.hpp"

namespace tatess {

/// (s, t): cohomological filtration and internal degree. The stem is t - s.
struct Bidegree {
  std::int64_t s = 0;
  std::int64_t t = 0;

  constexpr std::int64_t stem() const noexcept { return t - s; }
  /// Parity of s + t, which governs graded-commutativity signs.
  constexpr bool odd() const noexcept { return ((s + t) % 2 + 2) % 2 == 1; }

  constexpr Bidegree operator+(Bidegree o) const noexcept { return {s + o.s, t + o.t}; }
  constexpr Bidegree operator-(Bidegree o) const noexcept { return {s - o.s, t - o.t}; }
  constexpr Bidegree operator*(std::int64_t k) const noexcept { return {s * k, t * k}; }
  constexpr auto operator<=>(const Bidegree&) const = default;
};

std::string to_string(Bidegree b);

enum class Domain { exterior, polynomial, invertible };

std::string_view to_string(Domain d) noexcept;
Domain parse_domain(std::string_view text);

struct GeneratorSpec {
  std::string name;
  Bidegree degree;
  Domain domain = Domain::polynomial;

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// Whether the source ring has coefficients in F_p or in F_{p^n}. Arithmetic is always over F_p.
enum class CoefficientField { prime_field, extension_field };

/// Bigraded-commutative algebra over F_p on exterior, polynomial and Laurent generators.
///
/// Exponents of the non-exterior generators must be pinned down by the two degree
/// equations once the exterior part is fixed, so at most two non-exterior generators
/// are allowed and their bidegrees must be linearly independent.
class AlgebraPresentation {
 public:
  AlgebraPresentation(std::uint32_t prime, std::vector<GeneratorSpec> generators,
                      CoefficientField coefficients = CoefficientField::prime_field,
                      std::optional<std::string> localizing_generator = std::nullopt);

  const PrimeField& field() const noexcept { return field_; }
  std::uint32_t prime() const noexcept { return field_.characteristic(); }
  std::span<const GeneratorSpec> generators() const noexcept { return generators_; }
  std::size_t size() const noexcept { return generators_.size(); }
  const GeneratorSpec& generator(std::size_t i) const { return generators_.at(i); }
  CoefficientField coefficients() const noexcept { return coefficients_; }
  std::optional<std::size_t> localizing_generator() const noexcept { return localizing_; }

  std::optional<std::size_t> find(std::string_view name) const noexcept;
  std::size_t index_of(std::string_view name) const;  // throws std::invalid_argument

  bool odd(std::size_t i) const { return generators_.at(i).degree.odd(); }
  std::span<const std::size_t> exterior_indices() const noexcept { return exterior_; }
  std::span<const std::size_t> free_indices() const noexcept { return free_; }

  AlgebraPresentation with_domain(std::string_view name, Domain domain) const;
  /// Appends generators; throws on a name collision.
  AlgebraPresentation extended(std::span<const GeneratorSpec> extra) const;

  friend bool operator==(const AlgebraPresentation& a, const AlgebraPresentation& b) {
    return a.field_ == b.field_ && a.generators_ == b.generators_ && a.coefficients_ == b.coefficients_ &&
           a.localizing_ == b.localizing_;
  }

 private:
  PrimeField field_;
  std::vector<GeneratorSpec> generators_;
  CoefficientField coefficients_;
  std::optional<std::size_t> localizing_;
  std::vector<std::size_t> exterior_;
  std::vector<std::size_t> free_;
};

/// Exponent per generator, in presentation order.
struct Monomial {
  std::vector<std::int64_t> exponents;

  static Monomial unit(const AlgebraPresentation& pres) { return {std::vector<std::int64_t>(pres.size(), 0)}; }
  static Monomial generator(const AlgebraPresentation& pres, std::string_view name, std::int64_t power = 1);

  auto operator<=>(const Monomial&) const = default;
};

Bidegree degree(const AlgebraPresentation& pres, const Monomial& m);
bool in_domain(const AlgebraPresentation& pres, const Monomial& m);
/// Total parity of the monomial (odd iff s + t is odd).
bool odd(const AlgebraPresentation& pres, const Monomial& m);
std::string to_string(const AlgebraPresentation& pres, const Monomial& m);

/// Product a*b rewritten in presentation order, with the Koszul sign picked up on the way.
/// nullopt when an exterior exponent would exceed 1.
struct SignedMonomial {
  Monomial monomial;
  bool negative = false;
};
std::optional<SignedMonomial> multiply(const AlgebraPresentation& pres, const Monomial& a, const Monomial& b);

/// Sparse F_p-linear combination of monomials; zero coefficients are never stored.
class Element {
 public:
  Element() = default;
  static Element from(const Monomial& m, Residue coefficient = 1);

  const std::map<Monomial, Residue>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Residue coefficient(const Monomial& m) const;

  void add_term(const PrimeField& field, const Monomial& m, Residue c);
  void add(const PrimeField& field, const Element& other, Residue scale = 1);
  Element scaled(const PrimeField& field, Residue c) const;

  /// nullopt for zero; throws std::invalid_argument if the terms have different bidegrees.
  std::optional<Bidegree> bidegree(const AlgebraPresentation& pres) const;

  friend bool operator==(const Element&, const Element&) = default;

 private:
  std::map<Monomial, Residue> terms_;
};

std::string to_string(const AlgebraPresentation& pres, const Element& e);

Element multiply(const AlgebraPresentation& pres, const Element& a, const Element& b);

/// All monomials of bidegree b: exterior masks in increasing order (bit i = i-th exterior
/// generator), each completed by the unique solution of the degree equations, if any.
std::vector<Monomial> basis_in_bidegree(const AlgebraPresentation& pres, Bidegree b);
std::size_t dimension(const AlgebraPresentation& pres, Bidegree b);

/// Exponents of alpha^epsilon beta^m Delta^k a_0^{e_0} ... a_{n-1}^{e_{n-1}} in the
/// Farrell-Tate ring of the normalizer at height n = p - 1.
struct NormalizerExponents {
  std::int64_t k = 0;
  int epsilon = 0;
  std::vector<int> exterior;  // e_0 .. e_{n-1}
  std::int64_t m = 0;

  friend bool operator==(const NormalizerExponents&, const NormalizerExponents&) = default;
};

enum class DeltaPowers {
  any,
  /// Only classes surviving the first differential: beta^m Delta^{pk} and alpha beta^m Delta^{n+pk}.
  survivors,
};

/// Integer solutions of
///   s = epsilon + 2m + sum e_i,
///   t = 2n epsilon + 2pn m + 2pn^2 k + 2p^2 n sum i e_i,
/// solved directly from these closed forms (independently of basis_in_bidegree).
std::vector<NormalizerExponents> solve_degree_equations(std::uint32_t p, Bidegree b,
                                                        DeltaPowers powers = DeltaPowers::any);

}  // namespace tatess
