#include <algorithm>
#include <random>
#include <sstream>

#include "tatess/fp_linalg.hpp"
#include "tatess/range_comparison.hpp"

namespace tatess {

namespace {

// A cochain complex with a decreasing filtration: basis vector i sits in filtration s[i]
// and stem stem[i]; D lowers the stem by one and strictly raises the filtration.
struct FilteredComplex {
  std::vector<int> s;
  std::vector<int> stem;
  FpMatrix d;
};

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

FilteredComplex random_complex(Rng& rng, const SimulationSizes& sz, int dim) {
  PrimeField f(sz.prime);
  FilteredComplex c{{}, {}, FpMatrix(f, 0, 0)};
  std::vector<std::pair<int, int>> pairs;
  while (static_cast<int>(c.s.size()) + 2 <= dim && uniform(rng, 0, 2) != 0 && sz.s_extent >= 2 &&
         sz.stem_extent >= 2) {
    const int s0 = uniform(rng, 0, sz.s_extent - 2);
    const int k = uniform(rng, 1, sz.stem_extent - 1);
    const int s1 = uniform(rng, s0 + 1, sz.s_extent - 1);
    pairs.emplace_back(static_cast<int>(c.s.size()), static_cast<int>(c.s.size()) + 1);
    c.s.push_back(s0), c.stem.push_back(k);
    c.s.push_back(s1), c.stem.push_back(k - 1);
  }
  while (static_cast<int>(c.s.size()) < dim) {
    c.s.push_back(uniform(rng, 0, sz.s_extent - 1));
    c.stem.push_back(uniform(rng, 0, sz.stem_extent - 1));
  }
  const std::size_t n = c.s.size();
  FpMatrix d(f, n, n);
  for (auto [x, y] : pairs) d.set(static_cast<std::size_t>(y), static_cast<std::size_t>(x), uniform(rng, 1, sz.prime - 1));

  // Conjugate by a random unipotent filtration- and stem-preserving change of basis.
  FpMatrix p = FpMatrix::identity(f, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || c.stem[i] != c.stem[j]) continue;
      const bool below = c.s[i] > c.s[j] || (c.s[i] == c.s[j] && i > j);
      if (below && uniform(rng, 0, 1)) p.set(i, j, uniform(rng, 0, sz.prime - 1));
    }
  c.d = p * d * inverse(p);
  return c;
}

FilteredComplex direct_sum(const FilteredComplex& a, const FilteredComplex& b) {
  const std::size_t na = a.s.size(), nb = b.s.size();
  FilteredComplex c{a.s, a.stem, FpMatrix(a.d.field(), na + nb, na + nb)};
  c.s.insert(c.s.end(), b.s.begin(), b.s.end());
  c.stem.insert(c.stem.end(), b.stem.begin(), b.stem.end());
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) c.d.set(i, j, a.d.at(i, j));
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) c.d.set(na + i, na + j, b.d.at(i, j));
  return c;
}

// All filtration-preserving, stem-preserving chain maps from a to b.
std::vector<FpMatrix> chain_maps(const FilteredComplex& a, const FilteredComplex& b) {
  const auto& f = a.d.field();
  const std::size_t na = a.s.size(), nb = b.s.size();
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;  // (row in b, column in a)
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < na; ++j)
      if (b.stem[i] == a.stem[j] && b.s[i] >= a.s[j]) unknowns.emplace_back(i, j);
  // (f D_a - D_b f)(i, j) = sum_k f(i,k) D_a(k,j) - sum_k D_b(i,k) f(k,j)
  FpMatrix eq(f, nb * na, unknowns.size());
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const auto [i, k] = unknowns[u];
    for (std::size_t j = 0; j < na; ++j)
      if (a.d.at(k, j)) eq.set(i * na + j, u, eq.at(i * na + j, u) + a.d.at(k, j));
    for (std::size_t r = 0; r < nb; ++r)
      if (b.d.at(r, i)) eq.set(r * na + k, u, static_cast<std::int64_t>(eq.at(r * na + k, u)) - b.d.at(r, i));
  }
  std::vector<FpMatrix> out;
  for (const auto& v : kernel_basis(eq)) {
    FpMatrix m(f, nb, na);
    for (std::size_t u = 0; u < unknowns.size(); ++u) m.set(unknowns[u].first, unknowns[u].second, v[u]);
    out.push_back(std::move(m));
  }
  return out;
}

// Z_r^{s} in stem k: x in F^s with D x in F^{s+r}.
std::vector<Vector> cycles(const FilteredComplex& c, int r, int s, int k) {
  const std::size_t n = c.s.size();
  std::vector<std::size_t> vars, rows;
  for (std::size_t i = 0; i < n; ++i) {
    if (c.stem[i] == k && c.s[i] >= s) vars.push_back(i);
    if (c.s[i] < s + r) rows.push_back(i);
  }
  FpMatrix m(c.d.field(), rows.size(), vars.size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < vars.size(); ++b) m.set(a, b, c.d.at(rows[a], vars[b]));
  std::vector<Vector> out;
  for (const auto& v : kernel_basis(m)) {
    Vector x(n, 0);
    for (std::size_t b = 0; b < vars.size(); ++b) x[vars[b]] = v[b];
    out.push_back(std::move(x));
  }
  return out;
}

// B_r^{s} in stem k: Z_{r-1}^{s+1} + D Z_{r-1}^{s-r+1}.
std::vector<Vector> boundaries(const FilteredComplex& c, int r, int s, int k) {
  auto out = cycles(c, r - 1, s + 1, k);
  for (const auto& x : cycles(c, r - 1, s - r + 1, k + 1)) out.push_back(c.d.apply(x));
  return out;
}

std::size_t span_rank(PrimeField f, std::size_t dim, std::initializer_list<const std::vector<Vector>*> sets) {
  EchelonBasis e(f, dim);
  for (const auto* set : sets)
    for (const auto& v : *set) e.insert(v);
  return e.rank();
}

struct PageComparison {
  bool onto = true;
  bool injective = true;
};

PageComparison compare(const FilteredComplex& a, const FilteredComplex& b, const FpMatrix& map, int r, int s, int k) {
  const auto& f = a.d.field();
  const std::size_t na = a.s.size(), nb = b.s.size();
  const auto za = cycles(a, r, s, k), ba = boundaries(a, r, s, k);
  const auto zb = cycles(b, r, s, k), bb = boundaries(b, r, s, k);
  std::vector<Vector> fz;
  for (const auto& x : za) fz.push_back(map.apply(x));
  const std::size_t dim_a = span_rank(f, na, {&za}) - span_rank(f, na, {&ba});
  const std::size_t dim_b = span_rank(f, nb, {&zb}) - span_rank(f, nb, {&bb});
  const std::size_t rank_b = span_rank(f, nb, {&bb});
  const std::size_t image = span_rank(f, nb, {&fz, &bb}) - rank_b;
  return {image == dim_b, image == dim_a};
}

struct Measured {
  Threshold onto = Threshold::everywhere();
  Threshold iso = Threshold::everywhere();
};

Measured measure(const FilteredComplex& a, const FilteredComplex& b, const FpMatrix& map, int r,
                 const SimulationSizes& sz) {
  Measured m;
  for (int s = 0; s < sz.s_extent; ++s)
    for (int k = -1; k <= sz.stem_extent; ++k) {
      const auto c = compare(a, b, map, r, s, k);
      if (!c.onto) m.onto = max(m.onto, Threshold::at(s + 1));
      if (!c.onto || !c.injective) m.iso = max(m.iso, Threshold::at(s + 1));
    }
  return m;
}

}  // namespace

ComparisonWitness simulate_comparison(std::uint64_t seed, const SimulationSizes& sizes, SimulationKind kind) {
  Rng rng(seed);
  PrimeField f(sizes.prime);
  FilteredComplex a = random_complex(rng, sizes, uniform(rng, 1, sizes.max_dim));
  FilteredComplex b{{}, {}, FpMatrix(f, 0, 0)};
  FpMatrix map(f, 0, a.s.size());

  switch (kind) {
    case SimulationKind::identity:
      b = a;
      map = FpMatrix::identity(f, a.s.size());
      break;
    case SimulationKind::zero_target: break;
    case SimulationKind::random: {
      // Mix structured maps (inclusions, projections) with random chain maps so that
      // the measured thresholds vary.
      const int shape = uniform(rng, 0, 2);
      if (shape == 0) {
        b = random_complex(rng, sizes, uniform(rng, 1, sizes.max_dim));
      } else {
        auto extra = random_complex(rng, sizes, uniform(rng, 0, sizes.max_dim / 2));
        if (shape == 1) b = direct_sum(a, extra);  // a includes into b
        else {
          b = a;
          a = direct_sum(a, extra);  // a projects onto b
        }
      }
      map = FpMatrix(f, b.s.size(), a.s.size());
      if (shape != 0)
        for (std::size_t i = 0; i < std::min(a.s.size(), b.s.size()); ++i) map.set(i, i, 1);
      const auto basis = chain_maps(a, b);
      for (const auto& g : basis) {
        if (shape != 0 && uniform(rng, 0, 2) != 0) continue;
        const int c = uniform(rng, 0, sizes.prime - 1);
        if (c == 0) continue;
        for (std::size_t i = 0; i < map.rows(); ++i)
          for (std::size_t j = 0; j < map.cols(); ++j)
            map.set(i, j, map.at(i, j) + static_cast<std::int64_t>(c) * g.at(i, j));
      }
      break;
    }
  }

  ComparisonWitness w;
  w.seed = seed;
  const int last = sizes.s_extent + 2;
  const auto start = measure(a, b, map, 2, sizes);
  w.measured = {2, start.onto, start.iso};
  w.predicted = propagate_to(w.measured, last);

  for (int r = 2; r <= last; ++r) {
    const auto& predicted = w.predicted[static_cast<std::size_t>(r - 2)];
    // Also propagate one step from the thresholds measured on the previous page.
    std::optional<RangeBound> local;
    if (r > 2) {
      const auto prev = measure(a, b, map, r - 1, sizes);
      local = propagate({r - 1, prev.onto, prev.iso});
    }
    for (int s = 0; s < sizes.s_extent && w.ok; ++s)
      for (int k = -1; k <= sizes.stem_extent && w.ok; ++k) {
        const auto c = compare(a, b, map, r, s, k);
        auto fail = [&](const RangeBound& bound, const char* which) {
          if (bound.onto_from.holds_at(s) && !c.onto) {
            std::ostringstream os;
            os << which << " bound: page " << r << ", s = " << s << ", stem " << k << " not onto (predicted for s >= "
               << bound.onto_from.to_string() << ")";
            w.detail = os.str();
            w.ok = false;
          } else if (bound.iso_from.holds_at(s) && !(c.onto && c.injective)) {
            std::ostringstream os;
            os << which << " bound: page " << r << ", s = " << s << ", stem " << k << " not iso (predicted for s >= "
               << bound.iso_from.to_string() << ")";
            w.detail = os.str();
            w.ok = false;
          }
        };
        fail(predicted, "propagated");
        if (w.ok && local) fail(*local, "one-step");
      }
    ++w.pages_checked;
    if (!w.ok) break;
  }
  return w;
}

}  // namespace tatess
