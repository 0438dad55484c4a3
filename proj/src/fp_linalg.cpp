#include "tatess/fp_linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tatess {

bool is_odd_prime(std::uint64_t p) noexcept {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_odd_prime(p)) throw std::invalid_argument("characteristic must be an odd prime, got " + std::to_string(p));
}

Residue PrimeField::inverse(Residue a) const {
  if (a % p_ == 0) throw std::domain_error("zero has no inverse in F_p");
  // Fermat: a^(p-2)
  std::uint64_t base = a % p_, result = 1, e = p_ - 2;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<Residue>(result);
}

bool is_zero(std::span<const Residue> v) noexcept {
  return std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; });
}

FpMatrix::FpMatrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FpMatrix::FpMatrix(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows)
    : field_(field), rows_(rows.size()), cols_(rows.empty() ? 0 : rows.front().size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix rows");
    for (auto v : r) data_.push_back(field_.reduce(v));
  }
}

FpMatrix FpMatrix::identity(PrimeField field, std::size_t n) {
  FpMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Vector FpMatrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

bool FpMatrix::is_zero() const noexcept { return tatess::is_zero(data_); }

FpMatrix FpMatrix::operator*(const FpMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  if (field_ != rhs.field_) throw std::invalid_argument("matrix product: field mismatch");
  FpMatrix out(field_, rows_, rhs.cols_);
  const std::uint64_t p = field_.characteristic();
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < rhs.cols_; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < cols_; ++k) acc = (acc + static_cast<std::uint64_t>(at(i, k)) * rhs.at(k, j)) % p;
      out.data_[i * out.cols_ + j] = static_cast<Residue>(acc);
    }
  }
  return out;
}

Vector FpMatrix::apply(std::span<const Residue> v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector product: dimension mismatch");
  Vector out(rows_, 0);
  const std::uint64_t p = field_.characteristic();
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < cols_; ++k) acc = (acc + static_cast<std::uint64_t>(at(i, k)) * v[k]) % p;
    out[i] = static_cast<Residue>(acc);
  }
  return out;
}

RrefResult rref(const FpMatrix& m) {
  FpMatrix a = m;
  const auto& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < a.cols() && lead < a.rows(); ++c) {
    std::size_t r = lead;
    while (r < a.rows() && a.at(r, c) == 0) ++r;
    if (r == a.rows()) continue;
    if (r != lead) {
      auto x = a.row(r), y = a.row(lead);
      std::swap_ranges(x.begin(), x.end(), y.begin());
    }
    const Residue inv = f.inverse(a.at(lead, c));
    for (auto& v : a.row(lead)) v = f.mul(v, inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == lead || a.at(i, c) == 0) continue;
      const Residue factor = a.at(i, c);
      auto target = a.row(i);
      auto source = a.row(lead);
      for (std::size_t j = c; j < a.cols(); ++j) target[j] = f.sub(target[j], f.mul(factor, source[j]));
    }
    pivots.push_back(c);
    ++lead;
  }
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const FpMatrix& m) { return rref(m).rank(); }

std::vector<Vector> kernel_basis(const FpMatrix& m) {
  const auto [reduced, pivots] = rref(m);
  const auto& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(reduced.at(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

FpMatrix inverse(const FpMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix is not square");
  const std::size_t n = m.rows();
  FpMatrix augmented(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) augmented.set(i, j, m.at(i, j));
    augmented.set(i, n + i, 1);
  }
  const auto [reduced, pivots] = rref(augmented);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) throw std::invalid_argument("inverse: matrix is singular");
  FpMatrix out(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.set(i, j, reduced.at(i, n + j));
  return out;
}

QuotientBasis quotient_basis(PrimeField field, std::size_t space_dim, std::span<const Vector> subspace) {
  EchelonBasis echelon(field, space_dim);
  for (const auto& v : subspace) {
    if (v.size() != space_dim)
      throw std::invalid_argument("quotient_basis: subspace vector has length " + std::to_string(v.size()) +
                                  ", expected " + std::to_string(space_dim));
    echelon.insert(v);
  }
  std::vector<bool> is_pivot(space_dim, false);
  for (auto c : echelon.pivots()) is_pivot[c] = true;
  std::vector<std::size_t> reps;
  for (std::size_t c = 0; c < space_dim; ++c)
    if (!is_pivot[c]) reps.push_back(c);

  // v mod span = v - sum_i v[piv_i] R_i; read off the non-pivot coordinates.
  FpMatrix projection(field, reps.size(), space_dim);
  for (std::size_t j = 0; j < reps.size(); ++j) {
    projection.set(j, reps[j], 1);
    for (std::size_t i = 0; i < echelon.rank(); ++i) {
      const Residue coeff = echelon.rows()[i][reps[j]];
      if (coeff != 0) projection.set(j, echelon.pivots()[i], field.neg(coeff));
    }
  }
  return {std::move(reps), std::move(projection)};
}

EchelonBasis::EchelonBasis(PrimeField field, std::size_t dim) : field_(field), dim_(dim) {}

Vector EchelonBasis::reduce(std::span<const Residue> v) const {
  if (v.size() != dim_) throw std::invalid_argument("EchelonBasis::reduce: dimension mismatch");
  Vector out(v.begin(), v.end());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Residue c = out[pivots_[i]];
    if (c == 0) continue;
    const auto& r = rows_[i];
    for (std::size_t j = pivots_[i]; j < dim_; ++j)
      if (r[j] != 0) out[j] = field_.sub(out[j], field_.mul(c, r[j]));
  }
  return out;
}

bool EchelonBasis::contains(std::span<const Residue> v) const { return is_zero(reduce(v)); }

bool EchelonBasis::insert(std::span<const Residue> v) {
  Vector w = reduce(v);
  auto lead = std::find_if(w.begin(), w.end(), [](Residue x) { return x != 0; });
  if (lead == w.end()) return false;
  const auto pivot = static_cast<std::size_t>(lead - w.begin());
  const Residue inv = field_.inverse(*lead);
  for (auto& x : w) x = field_.mul(x, inv);
  for (auto& r : rows_) {
    const Residue c = r[pivot];
    if (c == 0) continue;
    for (std::size_t j = pivot; j < dim_; ++j)
      if (w[j] != 0) r[j] = field_.sub(r[j], field_.mul(c, w[j]));
  }
  const auto pos = static_cast<std::size_t>(std::lower_bound(pivots_.begin(), pivots_.end(), pivot) - pivots_.begin());
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), pivot);
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(w));
  return true;
}

}  // namespace tatess
