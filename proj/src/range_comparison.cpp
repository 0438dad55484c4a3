#include "tatess/range_comparison.hpp"

#include <stdexcept>

namespace tatess {

std::int64_t Threshold::value() const {
  if (!value_) throw std::logic_error("threshold holds everywhere and has no finite value");
  return *value_;
}

RangeBound propagate(const RangeBound& b) {
  const int r = b.page;
  return {r + 1, max(b.onto_from, b.iso_from - r), max(b.iso_from, b.onto_from + r)};
}

std::vector<RangeBound> propagate_to(const RangeBound& start, int page) {
  std::vector<RangeBound> trace{start};
  while (trace.back().page < page) trace.push_back(propagate(trace.back()));
  return trace;
}

VanishingLine vanishing_line(std::uint32_t p, Level group) {
  if (group == Level::cp) throw std::invalid_argument("vanishing-line supports groups f, n and g");
  const auto h = HeightContext::at(p);
  VanishingLine out;
  out.p = p;
  out.group = group;
  out.vcd = h.vcd(group);
  out.page = h.collapse_page();
  out.trace = propagate_to({2, Threshold::at(out.vcd), Threshold::at(out.vcd + 1)}, out.page);
  out.line = out.trace.back().iso_from.value();
  return out;
}

}  // namespace tatess
