#include <doctest.h>

#include <random>
#include <stdexcept>

#include "tatess/fp_linalg.hpp"

using namespace tatess;

namespace {

FpMatrix random_matrix(PrimeField f, std::size_t r, std::size_t c, std::mt19937_64& rng, int zero_bias = 0) {
  FpMatrix m(f, r, c);
  std::uniform_int_distribution<std::int64_t> d(-zero_bias, f.characteristic() - 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, std::max<std::int64_t>(0, d(rng)));
  return m;
}

// Counts kernel vectors by enumerating all of F_p^cols.
std::size_t brute_kernel_size(const FpMatrix& m) {
  const std::size_t p = m.field().characteristic();
  std::size_t total = 1;
  for (std::size_t j = 0; j < m.cols(); ++j) total *= p;
  std::size_t count = 0;
  Vector v(m.cols(), 0);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t x = code;
    for (auto& e : v) {
      e = static_cast<Residue>(x % p);
      x /= p;
    }
    if (is_zero(m.apply(v))) ++count;
  }
  return count;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  PrimeField f(7);
  CHECK(f.reduce(-1) == 6);
  CHECK(f.mul(3, 5) == 1);
  for (Residue a = 1; a < 7; ++a) CHECK(f.mul(a, f.inverse(a)) == 1);
  CHECK(f.centered(6) == -1);
  CHECK_THROWS_AS(PrimeField(2), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(9), std::invalid_argument);
  CHECK_THROWS_AS(f.inverse(0), std::domain_error);
}

TEST_CASE("rref small cases") {
  PrimeField f5(5), f3(3);
  auto id = FpMatrix::identity(f5, 2);
  auto r = rref(id);
  CHECK(r.reduced == id);
  CHECK(r.pivots == std::vector<std::size_t>{0, 1});

  FpMatrix zero(f3, 3, 3);
  auto rz = rref(zero);
  CHECK(rz.reduced == zero);
  CHECK(rz.pivots.empty());

  FpMatrix m(f5, {{1, 2}, {2, 4}});
  auto rm = rref(m);
  CHECK(rm.reduced == FpMatrix(f5, {{1, 2}, {0, 0}}));
  CHECK(rm.pivots == std::vector<std::size_t>{0});
}

TEST_CASE("kernel small cases") {
  PrimeField f5(5), f3(3);
  CHECK(kernel_basis(FpMatrix::identity(f5, 3)).empty());
  auto k = kernel_basis(FpMatrix(f3, 2, 3));
  CHECK(k.size() == 3);
  auto k2 = kernel_basis(FpMatrix(f5, {{1, 2}, {2, 4}}));
  REQUIRE(k2.size() == 1);
  CHECK(k2[0] == Vector{3, 1});
}

TEST_CASE("quotient basis small cases") {
  PrimeField f3(3);
  auto q = quotient_basis(f3, 2, std::vector<Vector>{{1, 0}});
  CHECK(q.representatives == std::vector<std::size_t>{1});
  auto all = quotient_basis(f3, 3, std::vector<Vector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(all.representatives.empty());
  auto diag = quotient_basis(f3, 2, std::vector<Vector>{{1, 1}});
  REQUIRE(diag.representatives.size() == 1);
  CHECK(is_zero(diag.projection.apply(Vector{1, 1})));
  CHECK(diag.projection.apply(Vector{0, 1}) == Vector{1});
  CHECK_THROWS_AS(quotient_basis(f3, 2, std::vector<Vector>{{1, 0, 0}}), std::invalid_argument);
}

TEST_CASE("rank-nullity and kernel size agree with exhaustive enumeration") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    PrimeField f(p);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
      auto m = random_matrix(f, r, c, rng, static_cast<int>(p));
      const auto k = kernel_basis(m);
      CHECK(rank(m) + k.size() == c);
      CHECK(rank(m) <= std::min(r, c));
      for (const auto& v : k) CHECK(is_zero(m.apply(v)));
      CHECK(brute_kernel_size(m) == ipow(p, k.size()));
      const auto once = rref(m).reduced;
      CHECK(rref(once).reduced == once);
    }
  }
}

TEST_CASE("quotient projection is idempotent on representatives and kills the subspace") {
  std::mt19937_64 rng(5);
  PrimeField f(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 1 + rng() % 6, k = rng() % 5;
    std::vector<Vector> sub;
    for (std::size_t i = 0; i < k; ++i) {
      Vector v(dim);
      for (auto& x : v) x = static_cast<Residue>(rng() % 5);
      sub.push_back(v);
    }
    auto q = quotient_basis(f, dim, sub);
    EchelonBasis e(f, dim);
    for (const auto& v : sub) e.insert(v);
    CHECK(e.rank() + q.representatives.size() == dim);
    for (const auto& v : sub) CHECK(is_zero(q.projection.apply(v)));
    for (std::size_t j = 0; j < q.representatives.size(); ++j) {
      Vector unit(dim, 0);
      unit[q.representatives[j]] = 1;
      auto image = q.projection.apply(unit);
      for (std::size_t i = 0; i < image.size(); ++i) CHECK(image[i] == (i == j ? 1u : 0u));
    }
  }
}

TEST_CASE("echelon basis is independent of insertion order") {
  std::mt19937_64 rng(9);
  PrimeField f(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Vector> vs;
    for (int i = 0; i < 4; ++i) {
      Vector v(5);
      for (auto& x : v) x = static_cast<Residue>(rng() % 3);
      vs.push_back(v);
    }
    EchelonBasis a(f, 5), b(f, 5);
    for (const auto& v : vs) a.insert(v);
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) b.insert(*it);
    CHECK(a.rows() == b.rows());
    CHECK(a.pivots() == b.pivots());
  }
}

TEST_CASE("inverse") {
  PrimeField f(7);
  FpMatrix m(f, {{1, 2, 0}, {0, 1, 3}, {4, 0, 1}});
  auto inv = inverse(m);
  CHECK(m * inv == FpMatrix::identity(f, 3));
  CHECK_THROWS_AS(inverse(FpMatrix(f, {{1, 2}, {2, 4}})), std::invalid_argument);
}
