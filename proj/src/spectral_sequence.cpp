#include "tatess/spectral_sequence.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "tatess/errors.hpp"
#include "tatess/parallel.hpp"

namespace tatess {

namespace {

std::optional<std::size_t> generator_source(const Monomial& m) {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < m.exponents.size(); ++i) {
    if (m.exponents[i] == 0) continue;
    if (m.exponents[i] != 1 || found) return std::nullopt;
    found = i;
  }
  return found;
}

bool divides(const AlgebraPresentation& pres, const Monomial& s, const Monomial& m) {
  for (std::size_t i = 0; i < pres.size(); ++i) {
    if (pres.generator(i).domain == Domain::invertible) continue;
    if (s.exponents[i] > m.exponents[i]) return false;
  }
  return true;
}

Element d_monomial(const AlgebraPresentation& pres, std::span<const DifferentialRule> rules, int r,
                   const Monomial& m) {
  const auto& f = pres.field();
  for (const auto& rule : rules) {
    if (rule.page != r || generator_source(rule.source) || !divides(pres, rule.source, m)) continue;
    Monomial y = m;
    for (std::size_t i = 0; i < pres.size(); ++i) y.exponents[i] -= rule.source.exponents[i];
    const auto sy = multiply(pres, rule.source, y);
    if (!sy || sy->monomial != m) throw InternalCheckError("monomial division failed for " + to_string(pres, m));
    Element out = multiply(pres, rule.target, Element::from(y));
    const auto dy = d_monomial(pres, rules, r, y);
    const Residue sign = odd(pres, rule.source) ? f.neg(1) : 1;
    out.add(f, multiply(pres, Element::from(rule.source), dy), sign);
    return sy->negative ? out.scaled(f, f.neg(1)) : out;
  }

  Element out;
  for (std::size_t i = 0; i < pres.size(); ++i) {
    const auto e = m.exponents[i];
    if (e == 0) continue;
    const DifferentialRule* rule = nullptr;
    for (const auto& candidate : rules) {
      if (candidate.page != r) continue;
      if (auto g = generator_source(candidate.source); g && *g == i) {
        rule = &candidate;
        break;
      }
    }
    if (!rule) continue;
    const Residue coeff = f.reduce(e);
    if (coeff == 0) continue;
    Monomial prefix = Monomial::unit(pres), middle = Monomial::unit(pres), suffix = Monomial::unit(pres);
    for (std::size_t j = 0; j < i; ++j) prefix.exponents[j] = m.exponents[j];
    for (std::size_t j = i + 1; j < pres.size(); ++j) suffix.exponents[j] = m.exponents[j];
    middle.exponents[i] = e - 1;
    auto term = multiply(pres, Element::from(prefix), multiply(pres, Element::from(middle), rule->target));
    term = multiply(pres, term, Element::from(suffix));
    out.add(f, term, odd(pres, prefix) ? f.neg(coeff) : coeff);
  }
  return out;
}

}  // namespace

PageWindow PageWindow::interior() const noexcept {
  const std::int64_t top = margin, bottom = lower_margin;
  return {s_min + bottom, s_max - top, t_min + std::max<std::int64_t>(bottom - 1, 0),
          t_max - std::max<std::int64_t>(top - 1, 0), margin, lower_margin};
}

PageWindow PageWindow::with_margins(std::int64_t s_min, std::int64_t s_max, std::int64_t t_min, std::int64_t t_max,
                                   std::span<const int> rule_pages) {
  std::set<int> pages(rule_pages.begin(), rule_pages.end());
  const int longest = pages.empty() ? 0 : *pages.rbegin();
  return {s_min, s_max, t_min, t_max, longest, std::accumulate(pages.begin(), pages.end(), 0)};
}

Element apply_differential(const AlgebraPresentation& pres, std::span<const DifferentialRule> rules, int r,
                           const Element& x) {
  x.bidegree(pres);
  Element out;
  for (const auto& [m, c] : x.terms()) out.add(pres.field(), d_monomial(pres, rules, r, m), c);
  return out;
}

void validate_rules(const AlgebraPresentation& pres, std::span<const DifferentialRule> rules) {
  std::set<std::pair<int, Monomial>> seen;
  for (const auto& rule : rules) {
    const auto where = "rule d_" + std::to_string(rule.page);
    if (rule.page < 2) throw std::invalid_argument(where + ": page must be at least 2");
    if (rule.source.exponents.size() != pres.size() || !in_domain(pres, rule.source))
      throw std::invalid_argument(where + ": source is not a monomial of the presentation");
    if (rule.source == Monomial::unit(pres)) throw std::invalid_argument(where + ": source must not be 1");
    if (!generator_source(rule.source)) {
      bool anchored = false;
      for (std::size_t i = 0; i < pres.size(); ++i)
        if (pres.generator(i).domain != Domain::invertible && rule.source.exponents[i] > 0) anchored = true;
      if (!anchored)
        throw std::invalid_argument(where + ": a monomial source needs a positive power of a non-invertible generator");
    }
    for (const auto& [m, c] : rule.target.terms()) {
      if (m.exponents.size() != pres.size() || !in_domain(pres, m))
        throw std::invalid_argument(where + ": target term outside the presentation");
      (void)c;
    }
    if (auto b = rule.target.bidegree(pres);
        b && *b != degree(pres, rule.source) + Bidegree{rule.page, rule.page - 1})
      throw std::invalid_argument(where + " on " + to_string(pres, rule.source) + ": target has bidegree " +
                                  to_string(*b) + ", expected source bidegree + (" + std::to_string(rule.page) + ", " +
                                  std::to_string(rule.page - 1) + ")");
    if (!seen.emplace(rule.page, rule.source).second)
      throw std::invalid_argument(where + ": duplicate rule for " + to_string(pres, rule.source));
  }
}

SpectralSequence SpectralSequence::compute(AlgebraPresentation pres, std::vector<DifferentialRule> rules,
                                           PageWindow window, unsigned workers) {
  validate_rules(pres, rules);
  std::set<int> pages;
  for (const auto& rule : rules) pages.insert(rule.page);
  const int longest = pages.empty() ? 0 : *pages.rbegin();
  const int total = std::accumulate(pages.begin(), pages.end(), 0);
  if (window.empty()) throw std::invalid_argument("empty window");
  if (window.margin < longest)
    throw std::invalid_argument("window margin " + std::to_string(window.margin) +
                                " is shorter than the longest differential d_" + std::to_string(longest));
  if (window.lower_margin < total)
    throw std::invalid_argument("window lower margin " + std::to_string(window.lower_margin) +
                                " is shorter than the total differential length " + std::to_string(total));
  if (window.interior().empty()) throw std::invalid_argument("window too small for margin");

  SpectralSequence ss;
  ss.pres_ = std::make_shared<const AlgebraPresentation>(std::move(pres));
  ss.rules_ = std::move(rules);
  ss.window_ = window;
  ss.build_cells();
  ss.run(workers);
  return ss;
}

void SpectralSequence::build_cells() {
  const auto& pres = *pres_;
  // Every monomial degree is an integer combination of generator degrees.
  std::int64_t gs = 0, gt = 0;
  for (const auto& g : pres.generators()) {
    gs = std::gcd(gs, g.degree.s);
    gt = std::gcd(gt, g.degree.t);
  }
  auto on_lattice = [](std::int64_t v, std::int64_t g) { return g == 0 ? v == 0 : v % g == 0; };
  for (std::int64_t s = window_.s_min; s <= window_.s_max; ++s) {
    if (!on_lattice(s, gs)) continue;
    for (std::int64_t t = window_.t_min; t <= window_.t_max; ++t) {
      if (!on_lattice(t, gt)) continue;
      auto basis = basis_in_bidegree(pres, {s, t});
      if (basis.empty()) continue;
      index_.emplace(Bidegree{s, t}, bidegrees_.size());
      bidegrees_.push_back({s, t});
      std::map<Monomial, std::size_t> lookup;
      for (std::size_t i = 0; i < basis.size(); ++i) lookup.emplace(basis[i], i);
      monomial_index_.push_back(std::move(lookup));
      bases_.push_back(std::move(basis));
    }
  }
}

std::optional<std::size_t> SpectralSequence::cell_index(Bidegree b) const {
  auto it = index_.find(b);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const SpectralSequence::Page& SpectralSequence::page(int r) const {
  if (r < 2) throw std::invalid_argument("pages start at E_2");
  const auto i = static_cast<std::size_t>(r - 2);
  return i < pages_.size() ? pages_[i] : pages_.back();
}

Vector SpectralSequence::monomial_vector(std::size_t cell, const Element& x) const {
  Vector v(bases_[cell].size(), 0);
  for (const auto& [m, c] : x.terms()) {
    auto it = monomial_index_[cell].find(m);
    if (it == monomial_index_[cell].end())
      throw std::invalid_argument("element term " + to_string(*pres_, m) + " is not in bidegree " +
                                  to_string(bidegrees_[cell]));
    v[it->second] = c;
  }
  return v;
}

Vector SpectralSequence::page_coordinates(const Page& pg, std::size_t cell, std::span<const Residue> v,
                                          bool strict) const {
  const auto& c = *pg.cells[cell];
  auto residual = c.boundaries.reduce(v);
  const auto& f = pres_->field();
  const auto& rows = c.representatives.rows();
  const auto& pivots = c.representatives.pivots();
  Vector coords(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    coords[i] = residual[pivots[i]];
    if (coords[i] == 0) continue;
    for (std::size_t j = 0; j < residual.size(); ++j)
      residual[j] = f.sub(residual[j], f.mul(coords[i], rows[i][j]));
  }
  if (strict && !is_zero(residual))
    throw InternalCheckError("element at " + to_string(bidegrees_[cell]) + " is not a cycle on this page");
  return coords;
}

void SpectralSequence::run(unsigned workers) {
  const auto& f = pres_->field();
  const std::size_t cells = bidegrees_.size();

  Page first;
  first.cells.resize(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const std::size_t dim = bases_[i].size();
    auto cell = std::make_shared<Cell>(Cell{EchelonBasis(f, dim), EchelonBasis(f, dim)});
    for (std::size_t j = 0; j < dim; ++j) {
      Vector e(dim, 0);
      e[j] = 1;
      cell->representatives.insert(e);
    }
    first.cells[i] = std::move(cell);
  }
  pages_.push_back(std::move(first));

  std::set<int> rule_pages;
  for (const auto& rule : rules_) rule_pages.insert(rule.page);
  const int last = rule_pages.empty() ? 2 : *rule_pages.rbegin() + 1;

  for (int r = 2; r < last; ++r) {
    Page& cur = pages_.back();
    Page next;
    if (!rule_pages.count(r)) {
      next.cells = cur.cells;
      pages_.push_back(std::move(next));
      continue;
    }
    const Bidegree step{r, r - 1};
    const auto inside = window_.interior();
    std::vector<std::vector<Vector>> images(cells);
    cur.differentials.assign(cells, FpMatrix(f, 0, 0));

    parallel_for(cells, workers, [&](std::size_t i) {
      const auto& reps = cur.cells[i]->representatives.rows();
      const auto target = cell_index(bidegrees_[i] + step);
      if (!target) {
        cur.differentials[i] = FpMatrix(f, 0, reps.size());
        return;
      }
      std::vector<Vector> dm;
      dm.reserve(bases_[i].size());
      for (const auto& m : bases_[i]) dm.push_back(monomial_vector(*target, apply_differential(r, Element::from(m))));
      const std::size_t target_dim = bases_[*target].size();
      const auto& target_reps = cur.cells[*target]->representatives.rows();
      const bool trusted = inside.contains(bidegrees_[i]);
      FpMatrix d(f, target_reps.size(), reps.size());
      for (std::size_t k = 0; k < reps.size(); ++k) {
        Vector y(target_dim, 0);
        for (std::size_t j = 0; j < reps[k].size(); ++j) {
          if (reps[k][j] == 0) continue;
          for (std::size_t q = 0; q < target_dim; ++q)
            if (dm[j][q] != 0) y[q] = f.add(y[q], f.mul(reps[k][j], dm[j][q]));
        }
        // Near the bottom edge a false class can map outside Z_r; keep only the part
        // that is a page-r class so that B stays inside Z at the edges too.
        const auto coords = page_coordinates(cur, *target, y, trusted);
        Vector image(target_dim, 0);
        for (std::size_t q = 0; q < coords.size(); ++q) {
          d.set(q, k, coords[q]);
          if (coords[q] == 0) continue;
          const auto& row = target_reps[q];
          for (std::size_t j = 0; j < target_dim; ++j) image[j] = f.add(image[j], f.mul(coords[q], row[j]));
        }
        if (!is_zero(image)) images[i].push_back(std::move(image));
      }
      cur.differentials[i] = std::move(d);
    });

    next.cells.resize(cells);
    parallel_for(cells, workers, [&](std::size_t i) {
      const auto source = cell_index(bidegrees_[i] - step);
      const auto& d = cur.differentials[i];
      const bool incoming = source && !images[*source].empty();
      if (!incoming && d.is_zero()) {
        next.cells[i] = cur.cells[i];
        return;
      }
      if (source) {
        const auto& d_in = cur.differentials[*source];
        if (inside.contains(bidegrees_[i]) && d.rows() > 0 && d_in.cols() > 0 && !(d * d_in).is_zero())
          throw InternalCheckError("d_" + std::to_string(r) + " does not square to zero at " +
                                   to_string(bidegrees_[i]));
      }
      const auto& old = *cur.cells[i];
      auto cell = std::make_shared<Cell>(Cell{old.boundaries, EchelonBasis(f, bases_[i].size())});
      if (source)
        for (const auto& y : images[*source]) cell->boundaries.insert(y);
      const auto& reps = old.representatives.rows();
      for (const auto& k : kernel_basis(d)) {
        Vector z(bases_[i].size(), 0);
        for (std::size_t q = 0; q < k.size(); ++q) {
          if (k[q] == 0) continue;
          for (std::size_t j = 0; j < z.size(); ++j) z[j] = f.add(z[j], f.mul(k[q], reps[q][j]));
        }
        cell->representatives.insert(cell->boundaries.reduce(z));
      }
      next.cells[i] = std::move(cell);
    });
    pages_.push_back(std::move(next));
  }
}

std::vector<int> SpectralSequence::rule_pages() const {
  std::set<int> pages;
  for (const auto& rule : rules_) pages.insert(rule.page);
  return {pages.begin(), pages.end()};
}

std::vector<Bidegree> SpectralSequence::interior_bidegrees() const {
  std::vector<Bidegree> out;
  const auto in = window_.interior();
  for (const auto& b : bidegrees_)
    if (in.contains(b)) out.push_back(b);
  return out;
}

std::span<const Monomial> SpectralSequence::e2_basis(Bidegree b) const {
  if (auto i = cell_index(b)) return bases_[*i];
  return {};
}

std::size_t SpectralSequence::dimension(int r, Bidegree b) const {
  const auto i = cell_index(b);
  return i ? page(r).cells[*i]->representatives.rank() : 0;
}

std::vector<Element> SpectralSequence::page_basis(int r, Bidegree b) const {
  std::vector<Element> out;
  const auto i = cell_index(b);
  if (!i) return out;
  for (const auto& row : page(r).cells[*i]->representatives.rows()) {
    Element e;
    for (std::size_t j = 0; j < row.size(); ++j) e.add_term(pres_->field(), bases_[*i][j], row[j]);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Vector> SpectralSequence::cycle_space(int r, Bidegree b) const {
  const auto i = cell_index(b);
  if (!i) return {};
  const auto& c = *page(r).cells[*i];
  auto out = c.boundaries.rows();
  out.insert(out.end(), c.representatives.rows().begin(), c.representatives.rows().end());
  return out;
}

std::vector<Vector> SpectralSequence::boundary_space(int r, Bidegree b) const {
  const auto i = cell_index(b);
  if (!i) return {};
  return page(r).cells[*i]->boundaries.rows();
}

std::optional<FpMatrix> SpectralSequence::differential_matrix(int r, Bidegree b) const {
  const auto& pg = page(r);
  if (r > static_cast<int>(pages_.size()) + 1 || pg.differentials.empty()) return std::nullopt;
  if (auto i = cell_index(b)) return pg.differentials[*i];
  const auto target = cell_index(b + Bidegree{r, r - 1});
  return FpMatrix(pres_->field(), target ? dimension(r, b + Bidegree{r, r - 1}) : 0, 0);
}

Vector SpectralSequence::coordinates(int r, Bidegree b, const Element& x) const {
  const auto i = cell_index(b);
  if (!i) {
    if (!x.is_zero()) throw std::invalid_argument("no classes in bidegree " + to_string(b));
    return {};
  }
  return page_coordinates(page(r), *i, monomial_vector(*i, x));
}

bool SpectralSequence::is_boundary(int r, Bidegree b, const Element& x) const {
  const auto i = cell_index(b);
  if (!i) return x.is_zero();
  return page(r).cells[*i]->boundaries.contains(monomial_vector(*i, x));
}

std::size_t SpectralSequence::interior_total_dimension(int r) const {
  std::size_t total = 0;
  for (const auto& b : interior_bidegrees()) total += dimension(r, b);
  return total;
}

SpectralSequence invert_class(const SpectralSequence& ss, std::string_view generator, unsigned workers) {
  const auto& pres = ss.presentation();
  const auto i = pres.index_of(generator);
  switch (pres.generator(i).domain) {
    case Domain::invertible: return ss;
    case Domain::exterior:
      throw std::invalid_argument("cannot invert exterior generator '" + std::string(generator) + "'");
    case Domain::polynomial: break;
  }
  for (const auto& rule : ss.rules())
    if (rule.source.exponents[i] != 0)
      throw std::invalid_argument("cannot invert '" + std::string(generator) + "': it occurs in the source of d_" +
                                  std::to_string(rule.page));
  return SpectralSequence::compute(pres.with_domain(generator, Domain::invertible), ss.rules(), ss.window(), workers);
}

FpMatrix localization_map(const SpectralSequence& from, const SpectralSequence& to, int r, Bidegree b) {
  const auto& a = from.presentation();
  const auto& c = to.presentation();
  bool same_names = a.size() == c.size() && a.prime() == c.prime();
  for (std::size_t i = 0; same_names && i < a.size(); ++i)
    same_names = a.generator(i).name == c.generator(i).name && a.generator(i).degree == c.generator(i).degree;
  if (!same_names) throw std::invalid_argument("localization_map: presentations have different generators");
  const auto classes = from.page_basis(r, b);
  FpMatrix out(c.field(), to.dimension(r, b), classes.size());
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto coords = to.coordinates(r, b, classes[k]);
    for (std::size_t q = 0; q < coords.size(); ++q) out.set(q, k, coords[q]);
  }
  return out;
}

namespace {

std::vector<Bidegree> mask_shifts(std::span<const GeneratorSpec> generators) {
  if (generators.size() > 20) throw std::invalid_argument("too many exterior generators");
  std::vector<Bidegree> shifts(std::size_t{1} << generators.size());
  for (std::size_t mask = 0; mask < shifts.size(); ++mask)
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (mask >> i & 1) shifts[mask] = shifts[mask] + generators[i].degree;
  return shifts;
}

struct ShiftRange {
  Bidegree lo, hi;
};

ShiftRange shift_range(std::span<const GeneratorSpec> generators) {
  const auto shifts = mask_shifts(generators);
  ShiftRange r{shifts.front(), shifts.front()};
  for (const auto& sh : shifts) {
    r.lo = {std::min(r.lo.s, sh.s), std::min(r.lo.t, sh.t)};
    r.hi = {std::max(r.hi.s, sh.s), std::max(r.hi.t, sh.t)};
  }
  return r;
}

Monomial padded(const Monomial& m, std::size_t size) {
  Monomial out = m;
  out.exponents.resize(size, 0);
  return out;
}

Element padded(const PrimeField& f, const Element& e, std::size_t size) {
  Element out;
  for (const auto& [m, c] : e.terms()) out.add_term(f, padded(m, size), c);
  return out;
}

}  // namespace

PageWindow enlarge_for_shifts(const PageWindow& window, std::span<const GeneratorSpec> generators) {
  const auto range = shift_range(generators);
  return {window.s_min - range.hi.s, window.s_max - range.lo.s, window.t_min - range.hi.t, window.t_max - range.lo.t,
          window.margin, window.lower_margin};
}

SpectralSequence tensor_exterior(const SpectralSequence& base, std::span<const GeneratorSpec> generators) {
  if (generators.empty()) return base;
  for (const auto& g : generators)
    if (g.domain != Domain::exterior)
      throw std::invalid_argument("tensor_exterior: generator '" + g.name + "' is not exterior");

  SpectralSequence out;
  out.pres_ = std::make_shared<const AlgebraPresentation>(base.presentation().extended(generators));
  const auto& pres = *out.pres_;
  const auto& f = pres.field();
  for (const auto& rule : base.rules())
    out.rules_.push_back({rule.page, padded(rule.source, pres.size()), padded(f, rule.target, pres.size())});

  const auto shifts = mask_shifts(generators);
  const auto range = shift_range(generators);
  const auto& w = base.window();
  out.window_ = {w.s_min + range.hi.s, w.s_max + range.lo.s, w.t_min + range.hi.t, w.t_max + range.lo.t,
                 w.margin, w.lower_margin};
  if (out.window_.empty() || out.window_.interior().empty())
    throw std::invalid_argument("window too small for margin after exterior shifts");
  out.build_cells();

  // blocks[i][mask] = base cell at bidegree(i) - shift(mask), if any.
  const std::size_t cells = out.bidegrees_.size();
  const std::size_t base_size = base.presentation().size();
  std::vector<std::vector<std::optional<std::size_t>>> blocks(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    std::vector<Monomial> expected;
    for (std::size_t mask = 0; mask < shifts.size(); ++mask) {
      const auto k = base.cell_index(out.bidegrees_[i] - shifts[mask]);
      blocks[i].push_back(k);
      if (!k) continue;
      for (const auto& m : base.bases_[*k]) {
        auto e = padded(m, pres.size());
        for (std::size_t g = 0; g < generators.size(); ++g) e.exponents[base_size + g] = mask >> g & 1;
        expected.push_back(std::move(e));
      }
    }
    if (expected != out.bases_[i])
      throw InternalCheckError("exterior splitting does not match the monomial basis at " +
                               to_string(out.bidegrees_[i]));
  }

  using Cell = SpectralSequence::Cell;
  using Page = SpectralSequence::Page;
  auto embed = [&](std::size_t i, bool boundaries, const Page& bp) {
    EchelonBasis e(f, out.bases_[i].size());
    std::size_t offset = 0;
    for (const auto& k : blocks[i]) {
      if (!k) continue;
      const auto& cell = *bp.cells[*k];
      for (const auto& row : (boundaries ? cell.boundaries : cell.representatives).rows()) {
        Vector v(out.bases_[i].size(), 0);
        std::copy(row.begin(), row.end(), v.begin() + static_cast<std::ptrdiff_t>(offset));
        e.insert(v);
      }
      offset += base.bases_[*k].size();
    }
    return e;
  };

  for (std::size_t pi = 0; pi < base.pages_.size(); ++pi) {
    const auto& bp = base.pages_[pi];
    Page page;
    page.cells.resize(cells);
    for (std::size_t i = 0; i < cells; ++i) {
      bool unchanged = pi > 0;
      for (const auto& k : blocks[i])
        if (k && unchanged) unchanged = bp.cells[*k] == base.pages_[pi - 1].cells[*k];
      if (unchanged) {
        page.cells[i] = out.pages_[pi - 1].cells[i];
        continue;
      }
      page.cells[i] = std::make_shared<Cell>(Cell{embed(i, true, bp), embed(i, false, bp)});
    }
    out.pages_.push_back(std::move(page));
  }

  // Differentials are block diagonal: d(x a_mask) = d(x) a_mask.
  for (std::size_t pi = 0; pi < base.pages_.size(); ++pi) {
    const auto& bp = base.pages_[pi];
    if (bp.differentials.empty()) continue;
    const int r = static_cast<int>(pi) + 2;
    auto& page = out.pages_[pi];
    page.differentials.assign(cells, FpMatrix(f, 0, 0));
    for (std::size_t i = 0; i < cells; ++i) {
      const auto target = out.cell_index(out.bidegrees_[i] + Bidegree{r, r - 1});
      const std::size_t cols = page.cells[i]->representatives.rank();
      const std::size_t rows = target ? page.cells[*target]->representatives.rank() : 0;
      FpMatrix d(f, rows, cols);
      if (target) {
        std::size_t row0 = 0, col0 = 0;
        for (std::size_t mask = 0; mask < shifts.size(); ++mask) {
          const auto k = blocks[i][mask];
          const auto kt = blocks[*target][mask];
          const std::size_t c = k ? bp.cells[*k]->representatives.rank() : 0;
          const std::size_t rr = kt ? bp.cells[*kt]->representatives.rank() : 0;
          if (k && kt) {
            const auto& bd = bp.differentials[*k];
            if (bd.rows() != rr || bd.cols() != c)
              throw InternalCheckError("differential block shape mismatch at " + to_string(out.bidegrees_[i]));
            for (std::size_t a = 0; a < rr; ++a)
              for (std::size_t b = 0; b < c; ++b) d.set(row0 + a, col0 + b, bd.at(a, b));
          }
          row0 += rr;
          col0 += c;
        }
      }
      page.differentials[i] = std::move(d);
    }
  }
  return out;
}

}  // namespace tatess
