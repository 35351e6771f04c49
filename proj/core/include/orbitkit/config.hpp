#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbitkit/corpus.hpp"
#include "orbitkit/rational.hpp"
#include "orbitkit/set_map.hpp"

namespace orbitkit {

enum class Command { analyze, orbit, transition, density, sensitivity, report };

std::string_view command_name(Command c) noexcept;
/// Throws ValidationError for an unknown command.
Command parse_command(std::string_view text);

/// Properties accepted by `assert` lines and --assert. A run exits with 2
/// when one of them is certified false.
const std::vector<std::string>& assertable_properties();

/// Everything a run needs. Defaults:
///   eps 1/8, depth 4, horizon 40, sens_eps 2/5, z 0, p = z,
///   eta 1/4, window 1..64, sens_horizon 64, out ".".
struct RunConfig {
  // Map source: a builtin, or an explicit piece list.
  std::string builtin;
  Params builtin_params;
  std::vector<MapPiece> pieces;
  std::string map_name = "custom";

  Command command = Command::report;
  Scalar eps{1, 8};
  unsigned depth = 4;
  unsigned horizon = 40;
  Scalar sens_eps{2, 5};
  Scalar z{0};
  std::optional<Scalar> p;
  Scalar eta{1, 4};
  unsigned window_lo = 1;
  unsigned window_hi = 64;
  unsigned sens_horizon = 64;
  std::string out = ".";
  std::vector<std::string> assertions;

  bool has_map() const { return !builtin.empty() || !pieces.empty(); }
  Scalar base_point() const { return p ? *p : z; }
};

/// Line grammar, one directive per line, '#' starts a comment:
///   map builtin <name> [key=value ...]
///   name <text>
///   segment|band|rect|point ...      (piece lines, see parse_piece)
///   cmd <command>
///   param <key> <value>               eps depth horizon sens_eps sens_horizon z p eta
///                                     window_lo window_hi
///   out <dir>
///   assert <property>
/// Throws ParseError with the line number, ValidationError naming the field.
RunConfig parse_config(std::string_view text);

/// Sets one `param` key. Shared by the config parser and the CLI flags.
void set_param(RunConfig& cfg, std::string_view key, std::string_view value);

/// Cross-field checks; throws ValidationError naming the field.
void validate(const RunConfig& cfg);

}  // namespace orbitkit
