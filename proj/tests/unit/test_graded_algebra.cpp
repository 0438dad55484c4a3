#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "tatess/graded_algebra.hpp"

using namespace tatess;

namespace {

// Ring generators written out by hand from the bidegree table, independent of the preset builder.
AlgebraPresentation f_ring(std::uint32_t p) {
  const std::int64_t P = p, n = P - 1;
  return AlgebraPresentation(p, {{"alpha", {1, 2 * n}, Domain::exterior},
                                 {"beta", {2, 2 * P * n}, Domain::invertible},
                                 {"Delta", {0, 2 * P * n * n}, Domain::invertible}});
}

AlgebraPresentation n_ring(std::uint32_t p) {
  const std::int64_t P = p, n = P - 1;
  std::vector<GeneratorSpec> extra;
  for (std::int64_t i = 0; i < n; ++i)
    extra.push_back({"a" + std::to_string(i), {1, 2 * P * P * n * i}, Domain::exterior});
  return f_ring(p).extended(extra);
}

// Exhaustive search over a box of exponents.
std::set<Monomial> brute_basis(const AlgebraPresentation& pres, Bidegree b, std::int64_t box) {
  std::set<Monomial> out;
  const std::size_t g = pres.size();
  std::vector<std::int64_t> lo(g), hi(g);
  for (std::size_t i = 0; i < g; ++i) {
    switch (pres.generator(i).domain) {
      case Domain::exterior: lo[i] = 0, hi[i] = 1; break;
      case Domain::polynomial: lo[i] = 0, hi[i] = box; break;
      case Domain::invertible: lo[i] = -box, hi[i] = box; break;
    }
  }
  Monomial m{lo};
  while (true) {
    if (degree(pres, m) == b) out.insert(m);
    std::size_t i = 0;
    while (i < g && m.exponents[i] == hi[i]) {
      m.exponents[i] = lo[i];
      ++i;
    }
    if (i == g) break;
    ++m.exponents[i];
  }
  return out;
}

Element random_element(const AlgebraPresentation& pres, Bidegree b, std::mt19937_64& rng) {
  Element e;
  for (const auto& m : basis_in_bidegree(pres, b)) e.add_term(pres.field(), m, static_cast<Residue>(rng() % pres.prime()));
  return e;
}

}  // namespace

TEST_CASE("presentation validation") {
  CHECK_THROWS_AS(AlgebraPresentation(3, {{"x", {1, 0}, Domain::exterior}, {"x", {1, 2}, Domain::exterior}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(AlgebraPresentation(3, {{"x", {0, 0}, Domain::polynomial}}), std::invalid_argument);
  CHECK_THROWS_AS(AlgebraPresentation(3, {{"x", {2, 4}, Domain::polynomial}, {"y", {1, 2}, Domain::polynomial}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(AlgebraPresentation(4, {}), std::invalid_argument);
  auto f = f_ring(5);
  CHECK(f.index_of("Delta") == 2);
  CHECK_THROWS_AS(f.index_of("gamma"), std::invalid_argument);
  CHECK_THROWS_AS(f.extended(std::vector<GeneratorSpec>{{"alpha", {1, 0}, Domain::exterior}}), std::invalid_argument);
}

TEST_CASE("multiply basics") {
  auto f = f_ring(5);
  const auto alpha = Element::from(Monomial::generator(f, "alpha"));
  CHECK(multiply(f, alpha, alpha).is_zero());
  const auto one = Element::from(Monomial::unit(f));
  auto x = Element::from(Monomial{{1, 3, -2}}, 4);
  CHECK(multiply(f, one, x) == x);
  CHECK(multiply(f, x, one) == x);
  auto binv = Element::from(Monomial::generator(f, "beta", -1));
  auto bd = Element::from(Monomial{{0, 1, 1}});
  CHECK(multiply(f, binv, bd) == Element::from(Monomial::generator(f, "Delta")));
}

TEST_CASE("exterior signs follow total parity") {
  auto n = n_ring(3);
  const auto a0 = Element::from(Monomial::generator(n, "a0"));
  const auto a1 = Element::from(Monomial::generator(n, "a1"));
  const auto alpha = Element::from(Monomial::generator(n, "alpha"));
  // a1 * a0 reorders to -(a0 a1)
  auto prod = multiply(n, a1, a0);
  CHECK(prod.terms().size() == 1);
  CHECK(prod.terms().begin()->second == 2);
  CHECK(multiply(n, a0, a1).terms().begin()->second == 1);
  CHECK(multiply(n, multiply(n, a1, alpha), a0).terms().begin()->second == 1);
}

TEST_CASE("basis examples") {
  auto f5 = f_ring(5);
  auto b = basis_in_bidegree(f5, {1, 8});
  REQUIRE(b.size() == 1);
  CHECK(b[0] == Monomial::generator(f5, "alpha"));
  for (std::uint32_t p : {3u, 5u, 7u}) {
    auto zero = basis_in_bidegree(f_ring(p), {0, 0});
    REQUIRE(zero.size() == 1);
    CHECK(zero[0] == Monomial::unit(f_ring(p)));
    CHECK(dimension(f_ring(p), {1, 0}) == 0);
  }
  CHECK(dimension(n_ring(5), {9, 8}) == 4);
  CHECK(dimension(n_ring(7), {13, 12}) == 8);
  CHECK(dimension(n_ring(11), {21, 20}) == 56);
}

TEST_CASE("basis matches exhaustive enumeration") {
  std::mt19937_64 rng(3);
  for (std::uint32_t p : {3u, 5u}) {
    const auto pres = n_ring(p);
    const std::int64_t P = p, n = P - 1;
    for (int trial = 0; trial < 60; ++trial) {
      const std::int64_t s = static_cast<std::int64_t>(rng() % 12) - 2;
      // Bias t toward multiples of 2n so that nonempty cases are frequent.
      const std::int64_t t = 2 * n * (static_cast<std::int64_t>(rng() % 200) - 100) + (rng() % 4 == 0 ? 1 : 0);
      auto fast = basis_in_bidegree(pres, {s, t});
      std::set<Monomial> unique(fast.begin(), fast.end());
      CHECK(unique.size() == fast.size());
      for (const auto& m : fast) CHECK(degree(pres, m) == Bidegree{s, t});
      CHECK(unique == brute_basis(pres, {s, t}, 30));
    }
  }
  auto poly = AlgebraPresentation(5, {{"x", {1, 2}, Domain::exterior},
                                      {"b", {2, 8}, Domain::polynomial},
                                      {"d", {0, 8}, Domain::invertible}});
  for (std::int64_t s = -1; s < 6; ++s)
    for (std::int64_t t = -40; t <= 40; t += 2) {
      auto fast = basis_in_bidegree(poly, {s, t});
      CHECK(std::set<Monomial>(fast.begin(), fast.end()) == brute_basis(poly, {s, t}, 12));
    }
}

TEST_CASE("graded commutativity, associativity and additivity on random elements") {
  std::mt19937_64 rng(17);
  for (std::uint32_t p : {3u, 5u}) {
    const auto pres = n_ring(p);
    const std::int64_t P = p, n = P - 1;
    auto random_degree = [&] {
      const std::int64_t s = rng() % 5;
      const std::int64_t t = 2 * n * (static_cast<std::int64_t>(rng() % 40) - 20);
      return Bidegree{s, t};
    };
    int nonzero = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const auto da = random_degree(), db = random_degree(), dc = random_degree();
      const auto a = random_element(pres, da, rng), b = random_element(pres, db, rng),
                 c = random_element(pres, dc, rng);
      const auto ab = multiply(pres, a, b), ba = multiply(pres, b, a);
      const bool sign = da.odd() && db.odd();
      CHECK(ab == (sign ? ba.scaled(pres.field(), P - 1) : ba));
      CHECK(multiply(pres, ab, c) == multiply(pres, a, multiply(pres, b, c)));
      if (!ab.is_zero()) {
        ++nonzero;
        CHECK(*ab.bidegree(pres) == da + db);
      }
    }
    CHECK(nonzero > 10);
  }
}

TEST_CASE("sparsity and degree form on the normalizer ring") {
  for (std::uint32_t p : {3u, 5u}) {
    const auto pres = n_ring(p);
    const std::int64_t P = p, n = P - 1;
    for (std::int64_t s = 0; s <= 12; ++s)
      for (std::int64_t t = -4 * P * n * n; t <= 4 * P * n * n; ++t) {
        const auto d = dimension(pres, {s, t});
        if (d == 0) continue;
        CHECK(t % (2 * n) == 0);
        if (s > n) {
          const auto r = ((t % (2 * P * n)) + 2 * P * n) % (2 * P * n);
          CHECK((r == 0 || r == 2 * n));
        }
      }
    CHECK(dimension(pres, {n + 1, 4 * n}) == 0);
  }
}

TEST_CASE("degree equations agree with the basis of the normalizer ring") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto pres = n_ring(p);
    const std::int64_t P = p, n = P - 1;
    for (std::int64_t s = -1; s <= 2 * n + 2; ++s)
      for (std::int64_t l = -3 * P; l <= 3 * P; ++l)
        for (std::int64_t eps : {0, 1}) {
          const Bidegree b{s, 2 * n * eps + 2 * P * n * l};
          const auto sols = solve_degree_equations(p, b);
          const auto basis = basis_in_bidegree(pres, b);
          REQUIRE(sols.size() == basis.size());
          for (std::size_t i = 0; i < sols.size(); ++i) {
            std::vector<std::int64_t> e{sols[i].epsilon, sols[i].m, sols[i].k};
            for (int x : sols[i].exterior) e.push_back(x);
            CHECK(basis[i].exponents == e);
          }
        }
  }
  CHECK(solve_degree_equations(5, {9, 8}).size() == 4);
  // With beta invertible, a0 a1 beta^-1 Delta^-1 also sits in degree (0, 0) at p = 3.
  auto zero = solve_degree_equations(3, {0, 0});
  REQUIRE(zero.size() == 2);
  CHECK(zero[0] == NormalizerExponents{0, 0, {0, 0}, 0});
  CHECK(zero[1] == NormalizerExponents{-1, 0, {1, 1}, -1});
  CHECK(solve_degree_equations(5, {41, 40}, DeltaPowers::survivors).empty());
  CHECK(!solve_degree_equations(5, {41, 40}).empty());
}
