#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tatess {

using Residue = std::uint32_t;
using Vector = std::vector<Residue>;

/// Arithmetic in Z/p for an odd prime p.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t characteristic() const noexcept { return p_; }

  Residue reduce(std::int64_t v) const noexcept {
    const auto p = static_cast<std::int64_t>(p_);
    auto r = v % p;
    return static_cast<Residue>(r < 0 ? r + p : r);
  }
  Residue add(Residue a, Residue b) const noexcept {
    const auto s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Residue inverse(Residue a) const;
  /// Symmetric representative in (-p/2, p/2], used for printing signs.
  std::int64_t centered(Residue a) const noexcept {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

bool is_odd_prime(std::uint64_t p) noexcept;

/// Dense row-major matrix over F_p.
class FpMatrix {
 public:
  FpMatrix(PrimeField field, std::size_t rows, std::size_t cols);
  FpMatrix(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows);

  static FpMatrix identity(PrimeField field, std::size_t n);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Residue at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t v) { data_[r * cols_ + c] = field_.reduce(v); }

  std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  Vector column(std::size_t c) const;

  bool is_zero() const noexcept;
  FpMatrix operator*(const FpMatrix& rhs) const;
  Vector apply(std::span<const Residue> v) const;

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> data_;
};

struct RrefResult {
  FpMatrix reduced;
  std::vector<std::size_t> pivots;

  std::size_t rank() const noexcept { return pivots.size(); }
};

RrefResult rref(const FpMatrix& m);
std::size_t rank(const FpMatrix& m);

/// Basis of {v : m v = 0}. One vector per non-pivot column, with a 1 in that column.
std::vector<Vector> kernel_basis(const FpMatrix& m);

/// Throws std::invalid_argument if m is singular or not square.
FpMatrix inverse(const FpMatrix& m);

struct QuotientBasis {
  /// Coordinates not hit by a pivot of the subspace's echelon form, ascending.
  std::vector<std::size_t> representatives;
  /// representatives.size() x space_dim; maps a vector to its class in representative coordinates.
  FpMatrix projection;
};

QuotientBasis quotient_basis(PrimeField field, std::size_t space_dim, std::span<const Vector> subspace);

/// Incrementally maintained reduced row echelon basis of a subspace of F_p^dim.
/// Rows stay sorted by pivot column and fully reduced, so the stored basis is the
/// unique RREF of the span regardless of insertion order.
class EchelonBasis {
 public:
  EchelonBasis(PrimeField field, std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  const PrimeField& field() const noexcept { return field_; }
  const std::vector<Vector>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Returns true if v enlarged the span.
  bool insert(std::span<const Residue> v);
  /// v minus its component in the span, zero on every pivot column.
  Vector reduce(std::span<const Residue> v) const;
  bool contains(std::span<const Residue> v) const;

 private:
  PrimeField field_;
  std::size_t dim_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

bool is_zero(std::span<const Residue> v) noexcept;

}  // namespace tatess
