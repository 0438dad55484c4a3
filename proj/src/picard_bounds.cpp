#include "tatess/picard_bounds.hpp"

#include <sstream>
#include <stdexcept>

#include "tatess/errors.hpp"

namespace tatess {

std::optional<PicardPageClass> picard_shift(Bidegree additive, int r) {
  if (additive.t < 2)
    throw std::invalid_argument("Picard companion needs t >= 2, got " + to_string(additive));
  if (r < 2) throw std::invalid_argument("page must be at least 2");
  if (r > additive.t) return std::nullopt;
  return PicardPageClass{additive, {additive.s, additive.t + 1}, static_cast<int>(additive.t)};
}

namespace {

void require_picard_hypotheses(std::uint32_t p, Level group) {
  if (p < 5) throw HypothesisError("theorem hypotheses require p ≥ 5");
  HeightContext::at(p);
  if (group != Level::n && group != Level::g)
    throw std::invalid_argument("Picard bounds are available for groups n and g");
}

std::size_t span_rank(PrimeField f, std::size_t dim, const std::vector<Vector>& a, const std::vector<Vector>& b = {}) {
  EchelonBasis e(f, dim);
  for (const auto& v : a) e.insert(v);
  for (const auto& v : b) e.insert(v);
  return e.rank();
}

std::string pages_text(const std::vector<int>& pages) {
  if (pages.empty()) return "none";
  std::string out;
  for (auto r : pages) out += (out.empty() ? "d_" : ", d_") + std::to_string(r);
  return out;
}

}  // namespace

PermanentCycleFilter permanent_cycle_filter(std::uint32_t p, Level group, unsigned workers) {
  require_picard_hypotheses(p, group);
  const auto h = HeightContext::at(p);
  const std::int64_t P = p, n = h.n, vcd = h.vcd(group);
  const std::int64_t t_max = 6 * P * n;

  PermanentCycleFilter out;
  out.p = p;
  out.group = group;
  out.late_targets = check_no_late_targets(p, workers);
  if (!out.late_targets.holds)
    throw InternalCheckError("a class in (t + 1, t) is hit by d_" + std::to_string(h.second_page()));

  // N and G share the beta-inverted ring; one run covers every (t + 1, t) we need.
  const auto preset = build_preset(p, Level::n, true);
  const int top = h.second_page(), bottom = h.first_page() + h.second_page();
  const PageWindow window{2 * n + 1 - bottom, t_max + 1 + top, 2 * n - (bottom - 1), t_max + (top - 1), top, bottom};
  const auto ss = run_preset(preset, window, workers);
  const auto& f = preset.presentation.field();
  const std::vector<int> rule_pages = ss.rule_pages();

  for (std::int64_t t = 1; t <= t_max; ++t) {
    FilterStep step{t, false, ""};
    const Bidegree b{t + 1, t};
    const std::int64_t r = ((t % (2 * P * n)) + 2 * P * n) % (2 * P * n);
    if (t < 2 * n || t % (2 * n) != 0) {
      step.reason = "sparsity: E_2 vanishes unless 2(p-1) divides t";
    } else if (t + 1 <= vcd) {
      step.kept = true;
      step.reason = "s = " + std::to_string(t + 1) + " <= vcd: not determined by Tate cohomology";
    } else if (r != 0 && r != 2 * n) {
      step.reason = "degree form: t is not 2n eps + 2pn l";
    } else {
      std::vector<int> outgoing, incoming;
      for (int page : rule_pages) {
        if (picard_shift(b, page)) outgoing.push_back(page);
        const Bidegree source{t + 1 - page, t + 1 - page};
        if (source.t >= 2 && picard_shift(source, page)) incoming.push_back(page);
      }
      if (!ss.is_interior(b)) throw InternalCheckError("Picard filter window misses " + to_string(b));
      const int z_page = outgoing.empty() ? 2 : outgoing.back() + 1;
      const int b_page = incoming.empty() ? 2 : incoming.back() + 1;
      const auto z = ss.cycle_space(z_page, b);
      const auto bd = ss.boundary_space(b_page, b);
      const std::size_t dim = ss.e2_basis(b).size();
      const std::size_t left = span_rank(f, dim, z, bd) - span_rank(f, dim, bd);
      std::ostringstream os;
      os << "licensed outgoing " << pages_text(outgoing) << ", incoming " << pages_text(incoming) << ": ";
      if (left == 0) {
        os << "every surviving class at " << to_string(b) << " is hit";
      } else {
        step.kept = true;
        os << left << " classes at " << to_string(b) << " not ruled out";
      }
      step.reason = os.str();
    }
    if (step.kept) out.survivors.push_back(t);
    out.trace.push_back(std::move(step));
  }
  return out;
}

PicardFiltrationReport exotic_bound_report(std::uint32_t p, Level group, unsigned workers) {
  require_picard_hypotheses(p, group);
  const auto filter = permanent_cycle_filter(p, group, workers);
  const auto h = HeightContext::at(p);
  const auto ring = build_preset(p, Level::n, true).presentation;

  PicardFiltrationReport out;
  out.p = p;
  out.group = group;
  out.vcd = h.vcd(group);
  const std::string name = group == Level::n ? "N" : "G";
  for (auto t : filter.survivors) {
    const std::int64_t s = t + 1;
    out.degrees.push_back(s);
    DegreeBound bound{s, std::nullopt, ""};
    std::ostringstream os;
    if (s > out.vcd) {
      const auto dim = dimension(ring, {s, t});
      bound.dimension = dim;
      os << "subquotient of H^" << s << "(" << name << ", E_" << t << ") = F_" << p << "^" << dim
         << "; order at most " << p << "^" << dim << " (simple p-torsion)";
    } else {
      os << "subquotient of H^" << s << "(" << name << ", E_" << t << "); unknown below vcd = " << out.vcd;
    }
    bound.description = os.str();
    out.bounds.push_back(std::move(bound));
  }
  const std::int64_t n = h.n;
  if (n <= 24) {
    const auto necklaces = necklace_count(static_cast<int>(n));
    const auto dim = dimension(ring, {2 * n + 1, 2 * n});
    std::ostringstream os;
    os << "dim H^" << 2 * n + 1 << "(N, E_" << 2 * n << ") = " << dim << "; binary necklaces of length " << n
       << " with evenly many 0s and 1s: " << necklaces << " (necklace reading of periodic sequences; "
       << (dim == necklaces ? "agree" : "differ") << ")";
    out.notes.push_back(os.str());
  }
  out.notes.push_back("differentials are fixed up to units; units are normalized to 1");
  return out;
}

}  // namespace tatess
