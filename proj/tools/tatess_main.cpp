#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "tatess/commands.hpp"

using namespace tatess;

namespace {

std::array<std::int64_t, 4> parse_window(const std::string& text) {
  std::array<std::int64_t, 4> w{};
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    const auto comma = text.find(',', pos);
    if ((i < 3) != (comma != std::string::npos)) throw std::invalid_argument("--window expects smin,smax,tmin,tmax");
    const auto part = text.substr(pos, i < 3 ? comma - pos : std::string::npos);
    std::size_t used = 0;
    try {
      w[static_cast<std::size_t>(i)] = std::stoll(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (part.empty() || used != part.size()) throw std::invalid_argument("--window entry '" + part + "' is not an integer");
    pos = comma + 1;
  }
  return w;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral sequence calculator for Farrell-Tate cohomology at height p - 1"};
  std::string command, level, window, format, out, config_path;
  std::uint32_t prime = 0;
  std::int64_t s = 0, t = 0;
  std::uint64_t seed = 0;
  int page = 0;
  unsigned jobs = 1;
  bool inverted = false;

  app.add_option("command", command, "ring-basis | ss-run | vanishing-line | picard-bound | dims | selftest");
  auto* o_prime = app.add_option("--prime,-p", prime, "odd prime p (height n = p - 1)");
  auto* o_level = app.add_option("--level,--group", level, "cp | f | n | g");
  auto* o_inv = app.add_flag("--inverted", inverted, "make beta invertible");
  auto* o_s = app.add_option("--s", s, "cohomological degree");
  auto* o_t = app.add_option("--t", t, "internal degree");
  auto* o_window = app.add_option("--window", window, "smin,smax,tmin,tmax");
  auto* o_format = app.add_option("--format", format, "table | ascii | svg | json");
  auto* o_out = app.add_option("--out,-o", out, "output file (the chart, for ss-run)");
  app.add_option("--config", config_path, "JSON config file; command-line flags take precedence");
  auto* o_seed = app.add_option("--seed", seed, "first seed for selftest simulations");
  auto* o_page = app.add_option("--page", page, "page for the ss-run chart or the dims table");
  auto* o_jobs = app.add_option("--jobs,-j", jobs, "worker threads")->check(CLI::Range(1u, 256u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }

  RunConfig config;
  try {
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw std::invalid_argument("cannot read config " + config_path);
      Json doc;
      try {
        doc = Json::parse(f);
      } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("malformed config " + config_path + ": " + e.what());
      }
      config = config_from_json(doc, config);
    }
    if (!command.empty()) config.command = command;
    if (o_prime->count()) config.prime = prime;
    if (o_level->count()) config.level = parse_level(level);
    if (o_inv->count()) config.inverted = inverted;
    if (o_s->count()) config.s = s;
    if (o_t->count()) config.t = t;
    if (o_window->count()) config.window = parse_window(window);
    if (o_format->count()) config.format = parse_format(format);
    if (o_out->count()) config.out = out;
    if (o_seed->count()) config.seed = seed;
    if (o_page->count()) config.page = page;
    if (o_jobs->count()) config.jobs = jobs;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return run_command(config, std::cout, std::cerr);
}
