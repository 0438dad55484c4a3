#include "tatess/commands.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tatess/chart.hpp"
#include "tatess/errors.hpp"
#include "tatess/picard_bounds.hpp"
#include "tatess/range_comparison.hpp"

namespace tatess {

OutputFormat parse_format(std::string_view text) {
  if (text == "table") return OutputFormat::table;
  if (text == "ascii" || text == "ascii-chart") return OutputFormat::ascii;
  if (text == "svg") return OutputFormat::svg;
  if (text == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown format '" + std::string(text) + "' (expected table, ascii, svg or json)");
}

std::string_view to_string(OutputFormat f) noexcept {
  switch (f) {
    case OutputFormat::table: return "table";
    case OutputFormat::ascii: return "ascii";
    case OutputFormat::svg: return "svg";
    case OutputFormat::json: return "json";
  }
  return "table";
}

RunConfig config_from_json(const Json& doc, RunConfig c) {
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
  try {
    for (const auto& [key, v] : doc.items()) {
      if (key == "command") c.command = v.get<std::string>();
      else if (key == "prime") {
        const auto p = v.get<std::int64_t>();
        if (p < 0 || p > 1'000'000) throw std::invalid_argument("prime out of range");
        c.prime = static_cast<std::uint32_t>(p);
      } else if (key == "level" || key == "group") c.level = parse_level(v.get<std::string>());
      else if (key == "inverted") c.inverted = v.get<bool>();
      else if (key == "s") c.s = v.get<std::int64_t>();
      else if (key == "t") c.t = v.get<std::int64_t>();
      else if (key == "window") {
        const auto w = v.get<std::vector<std::int64_t>>();
        if (w.size() != 4) throw std::invalid_argument("window needs four integers smin, smax, tmin, tmax");
        c.window = std::array{w[0], w[1], w[2], w[3]};
      } else if (key == "format") c.format = parse_format(v.get<std::string>());
      else if (key == "out") c.out = v.get<std::string>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "page") c.page = v.get<int>();
      else if (key == "jobs") c.jobs = v.get<unsigned>();
      else throw std::invalid_argument("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }
  return c;
}

namespace {

std::string preset_label(const RunConfig& c) {
  std::ostringstream os;
  os << "p=" << c.prime << " level=" << to_string(c.level) << " beta=" << (c.inverted ? "inverted" : "polynomial");
  return os.str();
}

Bidegree requested_bidegree(const RunConfig& c, const char* command) {
  if (!c.s || !c.t) throw std::invalid_argument(std::string(command) + " needs --s and --t");
  return {*c.s, *c.t};
}

PageWindow resolve_window(const RunConfig& c, const Preset& preset) {
  if (!c.window) return preset.height.default_window();
  const auto [s0, s1, t0, t1] = *c.window;
  if (s0 > s1 || t0 > t1) throw std::invalid_argument("empty window");
  std::vector<int> pages;
  for (const auto& r : preset.rules) pages.push_back(r.page);
  const auto w = PageWindow::with_margins(s0, s1, t0, t1, pages);
  if (w.interior().empty())
    throw std::invalid_argument("window is smaller than its margins (" + std::to_string(w.margin) + " above, " +
                                std::to_string(w.lower_margin) + " below)");
  return w;
}

std::string window_text(const PageWindow& w) {
  std::ostringstream os;
  os << "s [" << w.s_min << ", " << w.s_max << "] t [" << w.t_min << ", " << w.t_max << "]";
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file " + path);
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path);
}

struct Output {
  std::string text;   // main report
  std::string chart;  // ss-run chart, empty otherwise
  bool failed = false;
};

Output ring_basis(const RunConfig& c) {
  const Bidegree b = requested_bidegree(c, "ring-basis");
  const auto preset = build_preset(c.prime, c.level, c.inverted);
  const auto& pres = preset.presentation;
  const auto basis = basis_in_bidegree(pres, b);
  if (c.format == OutputFormat::json) {
    Json rows = Json::array();
    for (const auto& m : basis) rows.push_back(to_string(pres, m));
    Json doc{{"prime", c.prime}, {"level", to_string(c.level)}, {"inverted", c.inverted},
             {"s", b.s},         {"t", b.t},                    {"basis", rows},
             {"dimension", basis.size()}};
    return {doc.dump(2) + "\n", ""};
  }
  std::ostringstream os;
  os << "# ring-basis " << preset_label(c) << " at " << to_string(b) << "\n";
  for (const auto& m : basis) os << to_string(pres, m) << "\n";
  os << "# dimension " << basis.size() << "\n";
  return {os.str(), ""};
}

Output ss_run(const RunConfig& c) {
  const auto preset = build_preset(c.prime, c.level, c.inverted);
  const auto window = resolve_window(c, preset);
  const auto ss = run_preset(preset, window, c.jobs);
  const int last = preset.height.collapse_page();
  const auto inner = window.interior();

  std::vector<std::pair<int, std::pair<std::size_t, std::size_t>>> summary;
  for (int r = 2; r <= last; ++r) {
    std::size_t cells = 0;
    for (const auto& b : ss.interior_bidegrees())
      if (ss.dimension(r, b) > 0) ++cells;
    summary.push_back({r, {ss.interior_total_dimension(r), cells}});
  }
  std::vector<std::pair<Bidegree, std::size_t>> final_cells;
  for (const auto& b : ss.interior_bidegrees())
    if (auto d = ss.dimension(last, b)) final_cells.push_back({b, d});

  Output out;
  if (c.format == OutputFormat::json) {
    Json pages = Json::array();
    for (const auto& [r, v] : summary) pages.push_back({{"page", r}, {"dimension", v.first}, {"bidegrees", v.second}});
    Json nonzero = Json::array();
    for (const auto& [b, d] : final_cells) nonzero.push_back({{"s", b.s}, {"t", b.t}, {"dimension", d}});
    Json doc{{"prime", c.prime},       {"level", to_string(c.level)}, {"inverted", c.inverted},
             {"window", to_json(window)}, {"pages", pages},             {"final_page", last},
             {"final_nonzero", nonzero}};
    out.text = doc.dump(2) + "\n";
    return out;
  }
  std::ostringstream os;
  os << "# ss-run " << preset_label(c) << "\n";
  os << "# window " << window_text(window) << ", interior " << window_text(inner) << "\n";
  for (const auto& r : preset.rules)
    os << "# d_" << r.page << "(" << to_string(preset.presentation, r.source)
       << ") = " << to_string(preset.presentation, r.target) << "\n";
  for (const auto& [r, v] : summary)
    os << "E_" << r << "  interior dimension " << v.first << " in " << v.second << " bidegrees\n";
  if (final_cells.empty()) {
    os << "E_" << last << " is zero on the interior\n";
  } else {
    os << "E_" << last << " nonzero interior bidegrees:\n";
    for (const auto& [b, d] : final_cells) os << "  " << to_string(b) << "  " << d << "\n";
  }
  out.text = os.str();

  if (c.format == OutputFormat::ascii || c.format == OutputFormat::svg) {
    const int page = c.page.value_or(preset.height.first_page());
    if (page < 2 || page > last)
      throw std::invalid_argument("chart page must lie in [2, " + std::to_string(last) + "]");
    std::ostringstream title;
    title << "E_" << page << " " << preset_label(c);
    const auto chart = build_chart(ss, page, title.str());
    out.chart = c.format == OutputFormat::svg ? render_svg(chart) : render_ascii(chart);
  }
  return out;
}

Output vanishing(const RunConfig& c) {
  const auto v = vanishing_line(c.prime, c.level);
  if (c.format == OutputFormat::json) return {to_json(v).dump(2) + "\n", ""};
  std::ostringstream os;
  os << "# vanishing-line p=" << c.prime << " group=" << to_string(c.level) << " vcd=" << v.vcd << "\n";
  os << "page " << v.page << ", s = " << v.line << "\n";
  for (const auto& b : v.trace)
    os << "E_" << b.page << "  onto for s >= " << b.onto_from.to_string() << ", iso for s >= " << b.iso_from.to_string()
       << "\n";
  return {os.str(), ""};
}

Output picard(const RunConfig& c) {
  const auto r = exotic_bound_report(c.prime, c.level, c.jobs);
  if (c.format == OutputFormat::json) return {to_json(r).dump(2) + "\n", ""};
  std::ostringstream os;
  os << "# picard-bound p=" << r.p << " group=" << to_string(r.group) << " vcd=" << r.vcd << "\n";
  os << "degrees";
  for (auto d : r.degrees) os << " " << d;
  os << "\n";
  for (const auto& b : r.bounds) {
    os << "  " << b.degree << ": ";
    if (b.dimension) os << "dim-bound " << *b.dimension << "; ";
    else os << "unknown; ";
    os << b.description << "\n";
  }
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  return {os.str(), ""};
}

Output dims(const RunConfig& c) {
  const auto preset = build_preset(c.prime, c.level, c.inverted);
  const auto window = resolve_window(c, preset);
  const auto ss = run_preset(preset, window, c.jobs);
  const int last = preset.height.collapse_page();
  std::ostringstream os;
  Json doc{{"prime", c.prime}, {"level", to_string(c.level)}, {"inverted", c.inverted}};

  if (c.s || c.t) {
    const Bidegree b = requested_bidegree(c, "dims");
    if (!ss.is_interior(b)) throw std::invalid_argument(to_string(b) + " is outside the window interior");
    os << "# dims " << preset_label(c) << " at " << to_string(b) << "\n";
    Json rows = Json::array();
    for (int r = 2; r <= last; ++r) {
      os << "E_" << r << "  " << ss.dimension(r, b) << "\n";
      rows.push_back({{"page", r}, {"dimension", ss.dimension(r, b)}});
    }
    doc["s"] = b.s, doc["t"] = b.t, doc["pages"] = rows;
  } else {
    const int page = c.page.value_or(last);
    if (page < 2) throw std::invalid_argument("page must be at least 2");
    os << "# dims " << preset_label(c) << " E_" << page << " interior " << window_text(window.interior()) << "\n";
    os << "s\tt\tstem\tdim\n";
    Json rows = Json::array();
    for (const auto& b : ss.interior_bidegrees())
      if (auto d = ss.dimension(page, b)) {
        os << b.s << "\t" << b.t << "\t" << b.stem() << "\t" << d << "\n";
        rows.push_back({{"s", b.s}, {"t", b.t}, {"dimension", d}});
      }
    doc["page"] = page, doc["bidegrees"] = rows;
  }
  if (c.format == OutputFormat::json) return {doc.dump(2) + "\n", ""};
  return {os.str(), ""};
}

Output selftest(const RunConfig& c) {
  std::vector<std::pair<std::string, std::function<bool()>>> checks;
  checks.push_back({"N-ring dimensions at (2n+1, 2n) are 4, 8, 56", [] {
                      const std::size_t want[] = {4, 8, 56};
                      const std::uint32_t primes[] = {5, 7, 11};
                      for (int i = 0; i < 3; ++i) {
                        const auto pres = build_preset(primes[i], Level::n, true).presentation;
                        const std::int64_t n = primes[i] - 1;
                        if (dimension(pres, {2 * n + 1, 2 * n}) != want[i]) return false;
                      }
                      return true;
                    }});
  checks.push_back({"necklace counts 4, 8, 56", [] {
                      return necklace_count(4) == 4 && necklace_count(6) == 8 && necklace_count(10) == 56;
                    }});
  checks.push_back({"vanishing lines 2n^2 + vcd + 1", [] {
                      for (std::uint32_t p : {3u, 5u, 7u})
                        for (auto g : {Level::f, Level::n, Level::g}) {
                          const auto h = HeightContext::at(p);
                          if (vanishing_line(p, g).line != 2 * h.n * h.n + h.vcd(g) + 1) return false;
                        }
                      return true;
                    }});
  checks.push_back({"p=3 beta-inverted F collapses at E_10", [&] {
                      const auto preset = build_preset(3, Level::f, true);
                      const auto ss = run_preset(preset, preset.height.default_window(), c.jobs);
                      return ss.interior_zero(10) && !ss.interior_zero(9);
                    }});
  checks.push_back({"sparsity and degree form at p=3", [] {
                      for (auto level : {Level::f, Level::n, Level::g}) {
                        const auto preset = build_preset(3, level, true);
                        const auto w = preset.height.default_window();
                        if (!sparsity_check(preset.presentation, w)) return false;
                        if (!degree_form_check(preset.presentation, preset.height.vcd(level), w)) return false;
                      }
                      return true;
                    }});
  checks.push_back({"range propagation on 100 random maps", [&] {
                      for (std::uint64_t s = c.seed; s < c.seed + 100; ++s)
                        if (!simulate_comparison(s).ok) return false;
                      return true;
                    }});

  std::ostringstream os;
  bool all = true;
  for (const auto& [name, fn] : checks) {
    const bool ok = fn();
    all = all && ok;
    os << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
  }
  return {os.str(), "", !all};
}

}  // namespace

int run_command(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    Output result;
    if (c.command == "ring-basis") result = ring_basis(c);
    else if (c.command == "ss-run") result = ss_run(c);
    else if (c.command == "vanishing-line") result = vanishing(c);
    else if (c.command == "picard-bound") result = picard(c);
    else if (c.command == "dims") result = dims(c);
    else if (c.command == "selftest") result = selftest(c);
    else if (c.command.empty()) throw std::invalid_argument("no command given");
    else throw std::invalid_argument("unknown command '" + c.command + "'");

    if (!result.chart.empty()) {
      out << result.text;
      if (c.out) write_file(*c.out, result.chart);
      else out << result.chart;
    } else if (c.out) {
      write_file(*c.out, result.text);
    } else {
      out << result.text;
    }
    if (result.failed) {
      err << "internal check failed: " << c.command << "\n";
      return exit_internal;
    }
    return exit_ok;
  } catch (const HypothesisError& e) {
    err << "error: " << e.what() << "\n";
    return exit_hypothesis;
  } catch (const InternalCheckError& e) {
    err << "internal check failed: " << e.what() << "\n";
    return exit_internal;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
}

}  // namespace tatess
