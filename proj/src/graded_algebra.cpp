#include "tatess/graded_algebra.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tatess {

std::string to_string(Bidegree b) { return "(" + std::to_string(b.s) + ", " + std::to_string(b.t) + ")"; }

std::string_view to_string(Domain d) noexcept {
  switch (d) {
    case Domain::exterior: return "exterior";
    case Domain::polynomial: return "polynomial";
    case Domain::invertible: return "invertible";
  }
  return "unknown";
}

Domain parse_domain(std::string_view text) {
  if (text == "exterior") return Domain::exterior;
  if (text == "polynomial") return Domain::polynomial;
  if (text == "invertible" || text == "laurent") return Domain::invertible;
  throw std::invalid_argument("unknown generator domain '" + std::string(text) + "'");
}

AlgebraPresentation::AlgebraPresentation(std::uint32_t prime, std::vector<GeneratorSpec> generators,
                                         CoefficientField coefficients, std::optional<std::string> localizing_generator)
    : field_(prime), generators_(std::move(generators)), coefficients_(coefficients) {
  std::set<std::string, std::less<>> names;
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    if (g.name.empty()) throw std::invalid_argument("generator names must be nonempty");
    if (!names.insert(g.name).second) throw std::invalid_argument("duplicate generator name '" + g.name + "'");
    if (g.domain == Domain::exterior) {
      exterior_.push_back(i);
    } else {
      if (g.degree.odd())
        throw std::invalid_argument("generator '" + g.name + "' has odd total degree and must be exterior");
      if (g.degree == Bidegree{})
        throw std::invalid_argument("non-exterior generator '" + g.name + "' in bidegree (0, 0)");
      free_.push_back(i);
    }
  }
  if (exterior_.size() > 20) throw std::invalid_argument("too many exterior generators (at most 20)");
  if (free_.size() > 2)
    throw std::invalid_argument("at most two polynomial/invertible generators are supported");
  if (free_.size() == 2) {
    const auto a = generators_[free_[0]].degree, b = generators_[free_[1]].degree;
    if (a.s * b.t - a.t * b.s == 0)
      throw std::invalid_argument("bidegrees of '" + generators_[free_[0]].name + "' and '" +
                                  generators_[free_[1]].name + "' are linearly dependent");
  }
  if (localizing_generator) localizing_ = index_of(*localizing_generator);
}

std::optional<std::size_t> AlgebraPresentation::find(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return i;
  return std::nullopt;
}

std::size_t AlgebraPresentation::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
}

AlgebraPresentation AlgebraPresentation::with_domain(std::string_view name, Domain domain) const {
  auto gens = generators_;
  gens[index_of(name)].domain = domain;
  std::optional<std::string> loc;
  if (localizing_) loc = generators_[*localizing_].name;
  return AlgebraPresentation(prime(), std::move(gens), coefficients_, loc);
}

AlgebraPresentation AlgebraPresentation::extended(std::span<const GeneratorSpec> extra) const {
  auto gens = generators_;
  for (const auto& g : extra) {
    if (find(g.name)) throw std::invalid_argument("generator name collision: '" + g.name + "'");
    gens.push_back(g);
  }
  std::optional<std::string> loc;
  if (localizing_) loc = generators_[*localizing_].name;
  return AlgebraPresentation(prime(), std::move(gens), coefficients_, loc);
}

Monomial Monomial::generator(const AlgebraPresentation& pres, std::string_view name, std::int64_t power) {
  auto m = unit(pres);
  m.exponents[pres.index_of(name)] = power;
  return m;
}

Bidegree degree(const AlgebraPresentation& pres, const Monomial& m) {
  Bidegree b;
  for (std::size_t i = 0; i < pres.size(); ++i) b = b + pres.generator(i).degree * m.exponents[i];
  return b;
}

bool in_domain(const AlgebraPresentation& pres, const Monomial& m) {
  if (m.exponents.size() != pres.size()) return false;
  for (std::size_t i = 0; i < pres.size(); ++i) {
    const auto e = m.exponents[i];
    switch (pres.generator(i).domain) {
      case Domain::exterior:
        if (e != 0 && e != 1) return false;
        break;
      case Domain::polynomial:
        if (e < 0) return false;
        break;
      case Domain::invertible: break;
    }
  }
  return true;
}

bool odd(const AlgebraPresentation& pres, const Monomial& m) {
  bool parity = false;
  for (std::size_t i = 0; i < pres.size(); ++i)
    if (pres.odd(i) && (m.exponents[i] % 2 != 0)) parity = !parity;
  return parity;
}

std::string to_string(const AlgebraPresentation& pres, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < pres.size(); ++i) {
    const auto e = m.exponents[i];
    if (e == 0) continue;
    if (!out.empty()) out += ' ';
    out += pres.generator(i).name;
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

std::optional<SignedMonomial> multiply(const AlgebraPresentation& pres, const Monomial& a, const Monomial& b) {
  const std::size_t n = pres.size();
  if (a.exponents.size() != n || b.exponents.size() != n)
    throw std::invalid_argument("monomial does not match presentation");
  SignedMonomial out{Monomial{std::vector<std::int64_t>(n)}, false};
  // Moving each odd factor of b leftwards past the odd factors of a with larger index.
  int odd_in_a_after = 0;
  for (std::size_t k = n; k-- > 0;) {
    const auto e = a.exponents[k] + b.exponents[k];
    if (pres.generator(k).domain == Domain::exterior && e > 1) return std::nullopt;
    if (pres.generator(k).domain == Domain::polynomial && e < 0)
      throw std::invalid_argument("negative exponent for polynomial generator '" + pres.generator(k).name + "'");
    out.monomial.exponents[k] = e;
    if (pres.odd(k)) {
      if ((b.exponents[k] % 2 != 0) && (odd_in_a_after % 2 != 0)) out.negative = !out.negative;
      if (a.exponents[k] % 2 != 0) ++odd_in_a_after;
    }
  }
  return out;
}

Element Element::from(const Monomial& m, Residue coefficient) {
  Element e;
  if (coefficient != 0) e.terms_.emplace(m, coefficient);
  return e;
}

Residue Element::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void Element::add_term(const PrimeField& field, const Monomial& m, Residue c) {
  c = c % field.characteristic();
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second = field.add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

void Element::add(const PrimeField& field, const Element& other, Residue scale) {
  for (const auto& [m, c] : other.terms_) add_term(field, m, field.mul(c, scale));
}

Element Element::scaled(const PrimeField& field, Residue c) const {
  Element out;
  for (const auto& [m, x] : terms_) out.add_term(field, m, field.mul(x, c));
  return out;
}

std::optional<Bidegree> Element::bidegree(const AlgebraPresentation& pres) const {
  std::optional<Bidegree> b;
  for (const auto& [m, c] : terms_) {
    const auto d = degree(pres, m);
    if (b && *b != d) throw std::invalid_argument("element is not homogeneous");
    b = d;
  }
  return b;
}

std::string to_string(const AlgebraPresentation& pres, const Element& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    const auto sc = pres.field().centered(c);
    if (!first) out += sc < 0 ? " - " : " + ";
    else if (sc < 0) out += "-";
    first = false;
    const auto mag = sc < 0 ? -sc : sc;
    const auto mon = to_string(pres, m);
    if (mag != 1) out += std::to_string(mag) + (mon == "1" ? "" : " " + mon);
    else out += mon;
  }
  return out;
}

Element multiply(const AlgebraPresentation& pres, const Element& a, const Element& b) {
  a.bidegree(pres);
  b.bidegree(pres);
  const auto& f = pres.field();
  Element out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      auto prod = multiply(pres, ma, mb);
      if (!prod) continue;
      Residue c = f.mul(ca, cb);
      if (prod->negative) c = f.neg(c);
      out.add_term(f, prod->monomial, c);
    }
  }
  return out;
}

namespace {

// floor-safe exact division; nullopt when b does not divide a.
std::optional<std::int64_t> exact_div(std::int64_t a, std::int64_t b) {
  if (b == 0 || a % b != 0) return std::nullopt;
  return a / b;
}

}  // namespace

std::vector<Monomial> basis_in_bidegree(const AlgebraPresentation& pres, Bidegree b) {
  std::vector<Monomial> out;
  const auto ext = pres.exterior_indices();
  const auto free = pres.free_indices();
  const std::uint64_t masks = std::uint64_t{1} << ext.size();
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    auto m = Monomial::unit(pres);
    Bidegree rest = b;
    for (std::size_t i = 0; i < ext.size(); ++i) {
      if (mask >> i & 1) {
        m.exponents[ext[i]] = 1;
        rest = rest - pres.generator(ext[i]).degree;
      }
    }
    if (free.empty()) {
      if (rest != Bidegree{}) continue;
    } else if (free.size() == 1) {
      const auto g = pres.generator(free[0]).degree;
      std::optional<std::int64_t> e = g.s != 0 ? exact_div(rest.s, g.s) : exact_div(rest.t, g.t);
      if (!e || g * *e != rest) continue;
      m.exponents[free[0]] = *e;
    } else {
      const auto g1 = pres.generator(free[0]).degree, g2 = pres.generator(free[1]).degree;
      const auto det = g1.s * g2.t - g2.s * g1.t;
      const auto e1 = exact_div(rest.s * g2.t - g2.s * rest.t, det);
      const auto e2 = exact_div(g1.s * rest.t - rest.s * g1.t, det);
      if (!e1 || !e2) continue;
      m.exponents[free[0]] = *e1;
      m.exponents[free[1]] = *e2;
    }
    if (!in_domain(pres, m)) continue;
    out.push_back(std::move(m));
  }
  return out;
}

std::size_t dimension(const AlgebraPresentation& pres, Bidegree b) { return basis_in_bidegree(pres, b).size(); }

std::vector<NormalizerExponents> solve_degree_equations(std::uint32_t p, Bidegree b, DeltaPowers powers) {
  if (!is_odd_prime(p)) throw std::invalid_argument("solve_degree_equations: p must be an odd prime");
  const std::int64_t P = p, n = P - 1;
  std::vector<NormalizerExponents> out;
  // Combined mask: bit 0 is alpha, bit i+1 is a_i (the presentation order of the N-ring).
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n + 1)); ++mask) {
    NormalizerExponents x;
    x.epsilon = static_cast<int>(mask & 1);
    x.exterior.resize(static_cast<std::size_t>(n));
    std::int64_t count = 0, weighted = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      const int e = static_cast<int>(mask >> (i + 1) & 1);
      x.exterior[static_cast<std::size_t>(i)] = e;
      count += e;
      weighted += i * e;
    }
    const auto twice_m = b.s - x.epsilon - count;
    if (twice_m % 2 != 0) continue;
    x.m = twice_m / 2;
    const auto rest = b.t - 2 * n * x.epsilon - 2 * P * n * x.m - 2 * P * P * n * weighted;
    if (rest % (2 * P * n * n) != 0) continue;
    x.k = rest / (2 * P * n * n);
    if (powers == DeltaPowers::survivors) {
      const auto residue = ((x.k % P) + P) % P;
      if (x.epsilon == 0 && residue != 0) continue;
      if (x.epsilon == 1 && residue != n % P) continue;
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace tatess
