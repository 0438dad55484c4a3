#include "tatess/stabilizer_presets.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tatess/errors.hpp"

namespace tatess {

Level parse_level(std::string_view text) {
  if (text == "cp" || text == "Cp") return Level::cp;
  if (text == "f" || text == "F") return Level::f;
  if (text == "n" || text == "N") return Level::n;
  if (text == "g" || text == "G") return Level::g;
  throw std::invalid_argument("unknown level '" + std::string(text) + "' (expected cp, f, n or g)");
}

std::string_view to_string(Level level) noexcept {
  switch (level) {
    case Level::cp: return "cp";
    case Level::f: return "f";
    case Level::n: return "n";
    case Level::g: return "g";
  }
  return "?";
}

HeightContext HeightContext::at(std::uint32_t p) {
  if (!is_odd_prime(p)) throw std::invalid_argument("prime must be an odd prime, got " + std::to_string(p));
  return {p, static_cast<std::int64_t>(p) - 1};
}

std::int64_t HeightContext::vcd(Level level) const noexcept {
  switch (level) {
    case Level::cp:
    case Level::f: return 0;
    case Level::n: return n;
    case Level::g: return n * n;
  }
  return 0;
}

PageWindow HeightContext::default_window() const noexcept {
  const std::int64_t P = p;
  const std::int64_t t = 4 * P * n * n + 4 * P * n;
  return {-2 * n - 1, 4 * n * n + 4 * n, -t - 2 * n - 1, t, second_page(), first_page() + second_page()};
}

Preset build_preset(std::uint32_t p, Level level, bool inverted) {
  const auto h = HeightContext::at(p);
  const std::int64_t n = h.n;
  const Domain beta_domain = inverted ? Domain::invertible : Domain::polynomial;

  if (level == Level::cp) {
    const Bidegree delta{0, 2 * static_cast<std::int64_t>(p)};
    AlgebraPresentation pres(p,
                             {{"alpha", h.alpha(), Domain::exterior},
                              {"beta", h.beta(), beta_domain},
                              {"delta", delta, Domain::invertible}},
                             CoefficientField::extension_field, "beta");
    std::vector<DifferentialRule> rules;
    rules.push_back({h.first_page(), Monomial::generator(pres, "delta"), Element::from(Monomial{{1, n, 1 - n * n}})});
    rules.push_back({h.second_page(), Monomial{{1, 0, n * n * n}}, Element::from(Monomial::generator(pres, "beta", n * n + 1))});
    return {level, inverted, h, std::move(pres), std::move(rules)};
  }

  std::vector<GeneratorSpec> gens{{"alpha", h.alpha(), Domain::exterior},
                                  {"beta", h.beta(), beta_domain},
                                  {"Delta", h.delta_unit(), Domain::invertible}};
  if (level == Level::n || level == Level::g)
    for (std::int64_t i = 0; i < n; ++i) gens.push_back({"a" + std::to_string(i), h.exterior(i), Domain::exterior});
  AlgebraPresentation pres(p, std::move(gens), CoefficientField::prime_field, "beta");

  auto mono = [&](std::int64_t a, std::int64_t b, std::int64_t d) {
    auto m = Monomial::unit(pres);
    m.exponents[0] = a;
    m.exponents[1] = b;
    m.exponents[2] = d;
    return m;
  };
  std::vector<DifferentialRule> rules;
  rules.push_back({h.first_page(), mono(0, 0, 1), Element::from(mono(1, n, 0))});
  rules.push_back({h.second_page(), mono(1, 0, n), Element::from(mono(0, n * n + 1, 0))});
  return {level, inverted, h, std::move(pres), std::move(rules)};
}

SpectralSequence run_preset(const Preset& preset, const PageWindow& window, unsigned workers) {
  return SpectralSequence::compute(preset.presentation, preset.rules, window, workers);
}

namespace {

template <class Fn>
void for_each_nonzero(const AlgebraPresentation& pres, const PageWindow& window, Fn&& fn) {
  std::int64_t gs = 0, gt = 0;
  for (const auto& g : pres.generators()) {
    gs = std::gcd(gs, g.degree.s);
    gt = std::gcd(gt, g.degree.t);
  }
  for (std::int64_t s = window.s_min; s <= window.s_max; ++s) {
    if (gs == 0 ? s != 0 : s % gs != 0) continue;
    for (std::int64_t t = window.t_min; t <= window.t_max; ++t) {
      if (gt == 0 ? t != 0 : t % gt != 0) continue;
      if (dimension(pres, {s, t}) != 0 && !fn(Bidegree{s, t})) return;
    }
  }
}

}  // namespace

bool sparsity_check(const AlgebraPresentation& pres, const PageWindow& window) {
  const std::int64_t two_n = 2 * (static_cast<std::int64_t>(pres.prime()) - 1);
  bool ok = true;
  for_each_nonzero(pres, window, [&](Bidegree b) { return ok = (b.t % two_n == 0); });
  return ok;
}

bool degree_form_check(const AlgebraPresentation& pres, std::int64_t vcd, const PageWindow& window) {
  const std::int64_t P = pres.prime(), n = P - 1, period = 2 * P * n;
  bool ok = true;
  for_each_nonzero(pres, window, [&](Bidegree b) {
    if (b.s <= vcd) return true;
    const auto r = ((b.t % period) + period) % period;
    return ok = (r == 0 || r == 2 * n);
  });
  return ok;
}

LateTargetReport check_no_late_targets(std::uint32_t p, unsigned workers) {
  if (p < 5) throw HypothesisError("theorem hypotheses require p >= 5 (so that n^2 > 2n + 1), got p = " +
                                   std::to_string(p));
  const auto h = HeightContext::at(p);
  const std::int64_t P = p, n = h.n;
  const int r = h.second_page();
  const std::int64_t t_lo = n * n, t_hi = 4 * P * n;

  const auto preset = build_preset(p, Level::n, true);
  const int lower = h.first_page() + r;
  const PageWindow window{t_lo + 1 - r - lower, t_hi + 1 + r, t_lo - r + 1 - (lower - 1), t_hi + (r - 1), r, lower};
  const auto ss = run_preset(preset, window, workers);

  LateTargetReport report{p, {}, true};
  for (std::int64_t t = t_lo; t <= t_hi; ++t) {
    if (t % (2 * n) != 0) continue;
    const Bidegree b{t + 1, t};
    const Bidegree source = b - Bidegree{r, r - 1};
    if (!ss.is_interior(b) || !ss.is_interior(source))
      throw InternalCheckError("late-target window does not cover " + to_string(b));
    LateTargetRow row{t, ss.dimension(r, b), 0, 0};
    if (auto d = ss.differential_matrix(r, source)) row.hit = rank(*d);
    for (const auto& x : solve_degree_equations(p, b, DeltaPowers::survivors))
      if (x.epsilon == 0) ++row.target_shapes;
    if ((row.hit == 0) != (row.target_shapes == 0))
      throw InternalCheckError("degree equations and page computation disagree at " + to_string(b));
    if (row.hit != 0) report.holds = false;
    report.rows.push_back(row);
  }
  return report;
}

std::uint64_t necklace_count(int n) {
  if (n < 0 || n % 2 != 0) throw std::invalid_argument("necklace_count: n must be even and nonnegative");
  if (n > 24) throw std::invalid_argument("necklace_count: n must be at most 24");
  if (n == 0) return 1;
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::uint64_t count = 0;
  for (std::uint32_t x = 0; x <= full; ++x) {
    if (std::popcount(x) % 2 != 0) continue;
    bool canonical = true;
    std::uint32_t y = x;
    for (int k = 1; k < n && canonical; ++k) {
      y = ((y >> 1) | (y << (n - 1))) & full;
      canonical = x <= y;
    }
    if (canonical) ++count;
  }
  return count;
}

}  // namespace tatess
