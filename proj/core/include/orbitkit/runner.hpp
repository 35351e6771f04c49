#pragma once

#include <map>
#include <string>
#include <vector>

#include "orbitkit/config.hpp"

namespace orbitkit {

/// Exit codes of a run.
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitRefuted = 2;

struct RunResult {
  std::map<std::string, std::string> files;  ///< file name -> contents
  int exit_code = kExitOk;
  std::vector<std::string> refuted;  ///< assertions certified false
};

/// Runs cfg.command and returns the documents it produces: always
/// report.json, plus graph.svg, orbit.svg, transition.dot, transition.svg
/// depending on the command. Errors propagate as orbitkit::Error.
RunResult run(const RunConfig& cfg);

/// Writes every file into `dir`, creating it if needed. Throws IoError.
void write_files(const RunResult& result, const std::string& dir);

/// Machine-readable catalog: name, kind, parameters with defaults, anchor.
std::string list_builtins_json();

}  // namespace orbitkit
