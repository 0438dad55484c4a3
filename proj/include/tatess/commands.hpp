#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "tatess/serialization.hpp"
#include "tatess/stabilizer_presets.hpp"

namespace tatess {

enum class OutputFormat { table, ascii, svg, json };

OutputFormat parse_format(std::string_view text);
std::string_view to_string(OutputFormat f) noexcept;

struct RunConfig {
  std::string command;
  std::uint32_t prime = 3;
  Level level = Level::f;
  bool inverted = false;
  std::optional<std::int64_t> s;
  std::optional<std::int64_t> t;
  /// smin, smax, tmin, tmax; margins come from the preset's rules.
  std::optional<std::array<std::int64_t, 4>> window;
  OutputFormat format = OutputFormat::table;
  std::optional<std::string> out;
  std::uint64_t seed = 0;
  /// Chart page for ss-run and the page for dims; defaults to 2n + 1 and the last page.
  std::optional<int> page;
  unsigned jobs = 1;
};

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_hypothesis = 2, exit_internal = 3 };

/// Reads fields of a JSON config object into `base`. Unknown keys are rejected.
/// Keys: command, prime, level (or group), inverted, s, t, window [4 ints], format, out, seed, page, jobs.
RunConfig config_from_json(const Json& doc, RunConfig base = {});

/// Runs one command. Text output goes to `out` unless config.out names a file; the one-line
/// diagnostic for a failure goes to `err`. Returns an ExitCode.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace tatess
