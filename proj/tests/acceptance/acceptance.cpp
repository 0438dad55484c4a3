// Acceptance suite: one [PASS]/[FAIL] line per criterion, with wall time.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "tatess/chart.hpp"
#include "tatess/commands.hpp"
#include "tatess/picard_bounds.hpp"
#include "tatess/range_comparison.hpp"
#include "tatess/stabilizer_presets.hpp"

using namespace tatess;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::int64_t floor_mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome dimension_counts() {
  Outcome o;
  const std::uint32_t primes[] = {5, 7, 11};
  const std::size_t want[] = {4, 8, 56};
  for (int i = 0; i < 3; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::int64_t n = primes[i] - 1;
    const auto d = dimension(build_preset(primes[i], Level::n, true).presentation, {2 * n + 1, 2 * n});
    o.require(d == want[i], "p=" + std::to_string(primes[i]) + " gave " + std::to_string(d));
    o.require(seconds_since(t0) < 1.0, "p=" + std::to_string(primes[i]) + " took over 1 s");
  }
  return o;
}

Outcome necklaces() {
  Outcome o;
  const std::uint32_t primes[] = {5, 7, 11};
  for (auto p : primes) {
    const std::int64_t n = p - 1;
    const auto d = dimension(build_preset(p, Level::n, true).presentation, {2 * n + 1, 2 * n});
    o.require(necklace_count(static_cast<int>(n)) == d, "n=" + std::to_string(n));
  }
  return o;
}

Outcome collapse() {
  Outcome o;
  for (std::uint32_t p : {3u, 5u})
    for (auto level : {Level::f, Level::n, Level::g}) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto preset = build_preset(p, level, true);
      const auto ss = run_preset(preset, preset.height.default_window(), 4);
      const std::string tag = "p=" + std::to_string(p) + " " + std::string(to_string(level));
      o.require(ss.interior_zero(preset.height.collapse_page()), tag + ": E_{2n^2+2} nonzero on the interior");
      o.require(!ss.interior_zero(preset.height.second_page()), tag + ": E_{2n^2+1} already zero");
      o.require(seconds_since(t0) < 60.0, tag + ": over 60 s");
    }
  return o;
}

Outcome closed_form() {
  Outcome o;
  std::size_t checked = 0;
  for (std::uint32_t p : {3u, 5u}) {
    const auto preset = build_preset(p, Level::f, true);
    const auto& pres = preset.presentation;
    const auto& f = pres.field();
    const auto ss = run_preset(preset, preset.height.default_window());
    const std::int64_t P = p, n = P - 1;
    const int r1 = preset.height.first_page(), r2 = preset.height.second_page();
    for (const auto& b : ss.interior_bidegrees())
      for (const auto& m : ss.e2_basis(b)) {
        const auto& e = m.exponents;  // alpha, beta, Delta
        const std::string where = to_string(pres, m);
        if (e[0] == 0) {
          Element want;
          want.add_term(f, Monomial{{1, e[1] + n, e[2] - 1}}, f.reduce(e[2]));
          o.require(ss.apply_differential(r1, Element::from(m)) == want, "d_" + std::to_string(r1) + " on " + where);
          ++checked;
        } else if (floor_mod(e[2] - n, P) == 0) {
          const auto d = ss.apply_differential(r2, Element::from(m));
          const bool ok = d.size() == 1 && d.terms().begin()->first == Monomial{{0, e[1] + n * n + 1, e[2] - n}};
          o.require(ok, "d_" + std::to_string(r2) + " on " + where);
          ++checked;
        }
      }
  }
  o.require(checked > 0, "no monomials checked");
  return o;
}

Outcome survivor_shape() {
  Outcome o;
  const auto preset = build_preset(3, Level::f, true);
  const auto ss = run_preset(preset, preset.height.default_window());
  const int page = preset.height.first_page() + 1;
  auto expected = [](const Monomial& m) {
    const auto& e = m.exponents;
    return (e[0] == 0 && floor_mod(e[2], 3) == 0) || (e[0] == 1 && floor_mod(e[2] - 2, 3) == 0);
  };
  for (const auto& b : ss.interior_bidegrees()) {
    std::size_t count = 0;
    for (const auto& m : ss.e2_basis(b)) count += expected(m);
    o.require(ss.dimension(page, b) == count, "dimension at " + to_string(b));
    for (const auto& x : ss.page_basis(page, b))
      o.require(x.size() == 1 && expected(x.terms().begin()->first), "representative at " + to_string(b));
  }
  return o;
}

Outcome vanishing() {
  Outcome o;
  const auto g3 = vanishing_line(3, Level::g);
  o.require(g3.page == 10 && g3.line == 13, "p=3 G gave page " + std::to_string(g3.page) + ", s = " + std::to_string(g3.line));
  for (std::uint32_t p : {3u, 5u, 7u})
    for (auto g : {Level::f, Level::n, Level::g}) {
      const auto v = vanishing_line(p, g);
      const std::int64_t n = p - 1;
      const std::string tag = "p=" + std::to_string(p) + " " + std::string(to_string(g));
      o.require(v.line == 2 * n * n + v.vcd + 1, tag + ": line");
      RangeBound b{2, Threshold::at(v.vcd), Threshold::at(v.vcd + 1)};
      o.require(v.trace.size() == static_cast<std::size_t>(v.page - 1), tag + ": trace length");
      for (std::size_t i = 0; i < v.trace.size() && o.ok; ++i) {
        o.require(v.trace[i] == b, tag + ": trace at page " + std::to_string(b.page));
        b = propagate(b);
      }
    }
  return o;
}

Outcome range_suite() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto w = simulate_comparison(seed);
    o.require(w.ok, "seed " + std::to_string(seed) + ": " + w.detail);
  }
  o.require(seconds_since(t0) < 60.0, "over 60 s");
  return o;
}

Element random_combination(const PrimeField& f, const std::vector<Element>& basis, std::mt19937_64& rng) {
  Element e;
  for (const auto& x : basis) e.add(f, x, static_cast<Residue>(rng() % f.characteristic()));
  return e;
}

Outcome derivation_suite() {
  Outcome o;
  std::mt19937_64 rng(2024);
  for (std::uint32_t p : {3u, 5u, 7u})
    for (auto level : {Level::cp, Level::f, Level::n, Level::g}) {
      const auto preset = build_preset(p, level, true);
      const auto& pres = preset.presentation;
      const auto& f = pres.field();
      const auto ss = run_preset(preset, preset.height.default_window(), 4);
      const auto cells = ss.interior_bidegrees();
      const std::string tag = "p=" + std::to_string(p) + " " + std::string(to_string(level));
      for (int trial = 0; trial < 500 && o.ok; ++trial) {
        const auto b = cells[rng() % cells.size()], c = cells[rng() % cells.size()];
        for (int r : ss.rule_pages()) {
          // d_r o d_r on E_2 elements, Leibniz on page-r classes.
          std::vector<Element> e2;
          for (const auto& m : ss.e2_basis(b)) e2.push_back(Element::from(m));
          const auto z = random_combination(f, e2, rng);
          o.require(ss.apply_differential(r, ss.apply_differential(r, z)).is_zero(), tag + ": d o d at " + to_string(b));
          const auto x = random_combination(f, ss.page_basis(r, b), rng);
          const auto y = random_combination(f, ss.page_basis(r, c), rng);
          Element rhs = multiply(pres, ss.apply_differential(r, x), y);
          rhs.add(f, multiply(pres, x, ss.apply_differential(r, y)), b.odd() ? f.neg(1) : 1);
          o.require(ss.apply_differential(r, multiply(pres, x, y)) == rhs,
                    tag + ": Leibniz for d_" + std::to_string(r) + " at " + to_string(b) + " x " + to_string(c));
        }
      }
    }
  return o;
}

Outcome sparsity() {
  Outcome o;
  for (std::uint32_t p : {3u, 5u, 7u})
    for (auto level : {Level::f, Level::n, Level::g})
      for (bool inverted : {false, true}) {
        const auto preset = build_preset(p, level, inverted);
        const auto w = preset.height.default_window();
        const std::string tag = "p=" + std::to_string(p) + " " + std::string(to_string(level));
        o.require(sparsity_check(preset.presentation, w), tag + ": sparsity");
        o.require(degree_form_check(preset.presentation, preset.height.vcd(level), w), tag + ": degree form");
      }
  for (std::uint32_t p : {5u, 7u}) o.require(check_no_late_targets(p, 4).holds, "late target at p=" + std::to_string(p));
  return o;
}

Outcome picard_reports() {
  Outcome o;
  const auto n5 = exotic_bound_report(5, Level::n, 4);
  o.require(n5.degrees == std::vector<std::int64_t>{9}, "p=5 N degrees");
  o.require(n5.bounds.size() == 1 && n5.bounds[0].dimension == std::optional<std::size_t>{4}, "p=5 N bound");
  const auto g5 = exotic_bound_report(5, Level::g, 4);
  o.require(g5.degrees == std::vector<std::int64_t>{9}, "p=5 G degrees");
  o.require(g5.bounds.size() == 1 && !g5.bounds[0].dimension &&
                g5.bounds[0].description.find("unknown") != std::string::npos,
            "p=5 G bound should be unknown");
  const auto g7 = exotic_bound_report(7, Level::g, 4);
  o.require(g7.degrees == std::vector<std::int64_t>({13, 25}), "p=7 G degrees");
  return o;
}

Outcome determinism() {
  Outcome o;
  std::string first_table, first_svg;
  for (unsigned jobs : {1u, 4u, 1u, 3u}) {
    RunConfig c;
    c.command = "ss-run";
    c.prime = 3;
    c.level = Level::n;
    c.inverted = true;
    c.format = OutputFormat::svg;
    c.jobs = jobs;
    std::ostringstream out, err;
    o.require(run_command(c, out, err) == 0, "ss-run failed: " + err.str());
    // Without --out the chart follows the table on stdout.
    const auto text = out.str();
    const auto split = text.find("<svg");
    o.require(split != std::string::npos, "no svg emitted");
    if (!o.ok) break;
    const auto table = text.substr(0, split), svg = text.substr(split);
    if (first_table.empty()) {
      first_table = table;
      first_svg = svg;
    }
    o.require(table == first_table, "table differs with " + std::to_string(jobs) + " workers");
    o.require(svg == first_svg, "svg differs with " + std::to_string(jobs) + " workers");
  }
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 dimension counts 4, 8, 56 at (2n+1, 2n)", dimension_counts},
      {"2 necklace counts equal the dimensions", necklaces},
      {"3 beta-inverted F, N, G collapse at E_{2n^2+2} for p = 3, 5", collapse},
      {"4 closed-form differentials on the inverted F ring", closed_form},
      {"5 E_{2n+2} survivors at p = 3", survivor_shape},
      {"6 vanishing lines and derivation traces", vanishing},
      {"7 range propagation on 1000 random maps", range_suite},
      {"8 d o d = 0 and Leibniz on 500 random elements per preset", derivation_suite},
      {"9 sparsity, degree form, no late targets", sparsity},
      {"10 exotic Picard reports", picard_reports},
      {"11 ss-run output independent of worker count", determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3f s", seconds_since(t0));
    std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << name << " (" << timing << ")";
    if (!o.ok) std::cout << ": " << o.detail;
    std::cout << "\n";
    failed += !o.ok;
  }
  std::cout << (11 - failed) << "/11 criteria passed\n";
  return failed == 0 ? 0 : 1;
}
