#include <doctest.h>

#include <random>
#include <stdexcept>

#include "tatess/errors.hpp"
#include "tatess/spectral_sequence.hpp"

using namespace tatess;

namespace {

struct Hand {
  std::int64_t p, n;
  AlgebraPresentation pres;
  std::vector<DifferentialRule> rules;
  PageWindow window;
};

// F ring and its two differentials, written out by hand.
Hand f_sequence(std::uint32_t p, bool inverted) {
  const std::int64_t P = p, n = P - 1;
  AlgebraPresentation pres(p, {{"alpha", {1, 2 * n}, Domain::exterior},
                               {"beta", {2, 2 * P * n}, inverted ? Domain::invertible : Domain::polynomial},
                               {"Delta", {0, 2 * P * n * n}, Domain::invertible}});
  std::vector<DifferentialRule> rules{
      {static_cast<int>(2 * n + 1), Monomial{{0, 0, 1}}, Element::from(Monomial{{1, n, 0}})},
      {static_cast<int>(2 * n * n + 1), Monomial{{1, 0, n}}, Element::from(Monomial{{0, n * n + 1, 0}})}};
  const std::int64_t t = 4 * P * n * n + 4 * P * n;
  const int top = static_cast<int>(2 * n * n + 1), bottom = static_cast<int>(2 * n + 1) + top;
  PageWindow w{-2 * n - 1, 4 * n * n + 4 * n, -t - 2 * n - 1, t, top, bottom};
  return {P, n, std::move(pres), std::move(rules), w};
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

Element random_element(const AlgebraPresentation& pres, Bidegree b, std::mt19937_64& rng) {
  Element e;
  for (const auto& m : basis_in_bidegree(pres, b)) e.add_term(pres.field(), m, static_cast<Residue>(rng() % pres.prime()));
  return e;
}

}  // namespace

TEST_CASE("closed-form differentials on the beta-inverted F ring") {
  for (std::uint32_t p : {3u, 5u}) {
    const auto h = f_sequence(p, true);
    const auto ss = SpectralSequence::compute(h.pres, h.rules, h.window);
    const int r1 = static_cast<int>(2 * h.n + 1), r2 = static_cast<int>(2 * h.n * h.n + 1);
    const auto& f = h.pres.field();
    std::size_t checked = 0;
    for (const auto& b : ss.interior_bidegrees())
      for (const auto& m : ss.e2_basis(b)) {
        const auto e = m.exponents;  // alpha, beta, Delta
        // d_{2n+1}(beta^m Delta^k) = k alpha beta^{m+n} Delta^{k-1}; alpha-multiples are killed.
        Element want1;
        if (e[0] == 0) want1.add_term(f, Monomial{{1, e[1] + h.n, e[2] - 1}}, f.reduce(e[2]));
        CHECK(ss.apply_differential(r1, Element::from(m)) == want1);
        // d_{2n^2+1}(alpha beta^m Delta^{n+pk}) = beta^{m+n^2+1} Delta^{pk}, and on page 2n^2+1 every
        // other surviving monomial is a cycle.
        if (e[0] == 1 && floor_mod(e[2] - h.n, h.p) == 0) {
          const auto d = ss.apply_differential(r2, Element::from(m));
          REQUIRE(d.size() == 1);
          CHECK(d.terms().begin()->first == Monomial{{0, e[1] + h.n * h.n + 1, e[2] - h.n}});
          CHECK(d.terms().begin()->second != 0);
        }
        if (e[0] == 0 && floor_mod(e[2], h.p) == 0) CHECK(ss.apply_differential(r2, Element::from(m)).is_zero());
        ++checked;
      }
    CHECK(checked > 0);
  }
}

TEST_CASE("E_{2n+2} survivors at p = 3 have the expected shape") {
  const auto h = f_sequence(3, true);
  const auto ss = SpectralSequence::compute(h.pres, h.rules, h.window);
  for (const auto& b : ss.interior_bidegrees()) {
    std::size_t expected = 0;
    for (const auto& m : ss.e2_basis(b)) {
      const auto& e = m.exponents;
      if ((e[0] == 0 && floor_mod(e[2], 3) == 0) || (e[0] == 1 && floor_mod(e[2] - 2, 3) == 0)) ++expected;
    }
    CHECK(ss.dimension(6, b) == expected);
    for (const auto& x : ss.page_basis(6, b)) {
      REQUIRE(x.size() == 1);
      const auto& e = x.terms().begin()->first.exponents;
      CHECK(((e[0] == 0 && floor_mod(e[2], 3) == 0) || (e[0] == 1 && floor_mod(e[2] - 2, 3) == 0)));
    }
  }
  CHECK(ss.interior_total_dimension(9) > 0);
  CHECK(ss.interior_zero(10));
}

TEST_CASE("d squares to zero and satisfies Leibniz on random elements") {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {3u, 5u}) {
    const auto h = f_sequence(p, true);
    const auto ss = SpectralSequence::compute(h.pres, h.rules, h.window);
    const auto& f = h.pres.field();
    const auto cells = ss.interior_bidegrees();
    for (int trial = 0; trial < 200; ++trial) {
      const auto b = cells[rng() % cells.size()];
      for (int r : ss.rule_pages()) {
        const auto x = random_element(h.pres, b, rng);
        CHECK(ss.apply_differential(r, ss.apply_differential(r, x)).is_zero());
      }
      // Leibniz for d_{2n+1} on arbitrary elements.
      const auto c = cells[rng() % cells.size()];
      const auto x = random_element(h.pres, b, rng), y = random_element(h.pres, c, rng);
      const int r = static_cast<int>(2 * h.n + 1);
      Element rhs = multiply(h.pres, ss.apply_differential(r, x), y);
      rhs.add(f, multiply(h.pres, x, ss.apply_differential(r, y)), (b.s + b.t) % 2 ? f.neg(1) : 1);
      CHECK(ss.apply_differential(r, multiply(h.pres, x, y)) == rhs);
    }
  }
}

TEST_CASE("Leibniz for the long differential on page representatives") {
  const auto h = f_sequence(5, true);
  const auto ss = SpectralSequence::compute(h.pres, h.rules, h.window);
  const auto& f = h.pres.field();
  const int r = static_cast<int>(2 * h.n * h.n + 1);
  std::size_t checked = 0;
  // y ranges over the whole window: its page-r representatives are d_{2n+1}-cycles anywhere.
  for (const auto& b : ss.interior_bidegrees())
    for (const auto& c : ss.bidegrees()) {
      if (!ss.is_interior(b + c)) continue;
      for (const auto& x : ss.page_basis(r, b))
        for (const auto& y : ss.page_basis(r, c)) {
          Element rhs = multiply(h.pres, ss.apply_differential(r, x), y);
          rhs.add(f, multiply(h.pres, x, ss.apply_differential(r, y)), (b.s + b.t) % 2 ? f.neg(1) : 1);
          CHECK(ss.apply_differential(r, multiply(h.pres, x, y)) == rhs);
          ++checked;
        }
    }
  CHECK(checked > 0);
}

TEST_CASE("localization commutes with the differentials") {
  const auto h = f_sequence(3, false);
  const auto plain = SpectralSequence::compute(h.pres, h.rules, h.window);
  const auto local = invert_class(plain, "beta");
  CHECK(local.presentation().generator(1).domain == Domain::invertible);
  for (int r : plain.rule_pages())
    for (const auto& b : plain.interior_bidegrees()) {
      const Bidegree target = b + Bidegree{r, r - 1};
      if (!plain.is_interior(target)) continue;
      const auto d_plain = plain.differential_matrix(r, b);
      const auto d_local = local.differential_matrix(r, b);
      REQUIRE(d_plain);
      REQUIRE(d_local);
      CHECK(*d_local * localization_map(plain, local, r, b) == localization_map(plain, local, r, target) * *d_plain);
    }
  CHECK(invert_class(local, "beta").interior_total_dimension(2) == local.interior_total_dimension(2));
}

TEST_CASE("invert_class and window errors") {
  const auto h = f_sequence(3, false);
  const auto ss = SpectralSequence::compute(h.pres, h.rules, h.window);
  CHECK_THROWS_AS(invert_class(ss, "alpha"), std::invalid_argument);
  CHECK_THROWS_AS(invert_class(ss, "gamma"), std::invalid_argument);

  auto w = h.window;
  w.margin = 3;
  CHECK_THROWS_AS(SpectralSequence::compute(h.pres, h.rules, w), std::invalid_argument);
  w = h.window;
  w.lower_margin = w.margin;
  CHECK_THROWS_AS(SpectralSequence::compute(h.pres, h.rules, w), std::invalid_argument);
  CHECK_THROWS_AS(SpectralSequence::compute(h.pres, h.rules, PageWindow{5, 1, 0, 0, 9, 14}), std::invalid_argument);
  CHECK_THROWS_AS(SpectralSequence::compute(h.pres, h.rules, PageWindow{0, 20, 0, 20, 9, 14}), std::invalid_argument);

  auto bad = h.rules;
  bad[0].target = Element::from(Monomial{{0, 2, 0}});
  CHECK_THROWS_AS(validate_rules(h.pres, bad), std::invalid_argument);
}

TEST_CASE("tensoring with permanent exterior classes splits the pages") {
  const std::uint32_t p = 3;
  const auto h = f_sequence(p, true);
  std::vector<GeneratorSpec> extra{{"a0", {1, 0}, Domain::exterior}, {"a1", {1, 36}, Domain::exterior}};
  const auto base = SpectralSequence::compute(h.pres, h.rules, enlarge_for_shifts(h.window, extra));
  const auto split = tensor_exterior(base, extra);
  const auto big = h.pres.extended(extra);
  auto rules = h.rules;
  for (auto& rule : rules) {
    rule.source.exponents.resize(big.size(), 0);
    Element target;
    for (const auto& [term, c] : rule.target.terms()) {
      auto m = term;
      m.exponents.resize(big.size(), 0);
      target.add_term(big.field(), m, c);
    }
    rule.target = target;
  }
  const auto direct = SpectralSequence::compute(big, rules, split.window());
  REQUIRE(split.window() == direct.window());
  for (int r = 2; r <= 10; ++r)
    for (const auto& b : direct.interior_bidegrees()) CHECK(split.dimension(r, b) == direct.dimension(r, b));
  CHECK_THROWS_AS(tensor_exterior(base, std::vector<GeneratorSpec>{{"alpha", {1, 2}, Domain::exterior}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(tensor_exterior(base, std::vector<GeneratorSpec>{{"c", {2, 2}, Domain::polynomial}}),
                  std::invalid_argument);
}

TEST_CASE("worker count does not change the pages") {
  const auto h = f_sequence(3, true);
  const auto one = SpectralSequence::compute(h.pres, h.rules, h.window, 1);
  const auto four = SpectralSequence::compute(h.pres, h.rules, h.window, 4);
  for (int r = 2; r <= 10; ++r)
    for (const auto& b : one.bidegrees()) CHECK(one.page_basis(r, b) == four.page_basis(r, b));
}
