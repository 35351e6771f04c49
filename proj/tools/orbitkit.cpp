// orbitkit command-line front end.
//
//   orbitkit <command> --map <builtin|file> [--eps q] [--depth n] [--horizon k]
//            [--sens-eps q] [--z q] [--p q] [--assert prop]... [--out dir]
//   orbitkit <command> --config file [overrides...]
//   orbitkit list-builtins

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "orbitkit/corpus.hpp"
#include "orbitkit/error.hpp"
#include "orbitkit/runner.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw orbitkit::Error(orbitkit::Errc::io_error, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_builtin(const std::string& name) {
  for (const auto& e : orbitkit::catalog()) {
    if (e.name == name) return true;
  }
  return false;
}

struct Flags {
  std::string map;
  std::string config;
  std::string out;
  std::vector<std::string> assertions;
  std::vector<std::pair<std::string, std::string>> params;  // in the order given
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of set-valued maps on [0,1]"};
  app.require_subcommand(1);

  Flags flags;
  const std::vector<std::pair<std::string, std::string>> param_flags{
      {"--eps", "eps"},         {"--depth", "depth"}, {"--horizon", "horizon"}, {"--sens-eps", "sens_eps"},
      {"--sens-horizon", "sens_horizon"}, {"--z", "z"}, {"--p", "p"}, {"--eta", "eta"},
      {"--window-lo", "window_lo"}, {"--window-hi", "window_hi"}};
  std::vector<std::string> param_values(param_flags.size());

  const std::vector<std::string> commands{"analyze", "orbit", "transition", "density", "sensitivity", "report"};
  for (const auto& name : commands) {
    auto* sub = app.add_subcommand(name, "run the " + name + " command");
    sub->add_option("--map", flags.map, "builtin name[:key=value;...] or piece-list file");
    sub->add_option("--config", flags.config, "config file in the line grammar");
    for (std::size_t i = 0; i < param_flags.size(); ++i) {
      sub->add_option(param_flags[i].first, param_values[i], "param " + param_flags[i].second);
    }
    sub->add_option("--out", flags.out, "output directory (default: config 'out' or .)");
    sub->add_option("--assert", flags.assertions, "property that must not be certified false");
  }
  app.add_subcommand("list-builtins", "print the builtin catalog as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    const CLI::App* sub = app.get_subcommands().front();
    if (sub->get_name() == "list-builtins") {
      std::cout << orbitkit::list_builtins_json();
      return orbitkit::kExitOk;
    }

    orbitkit::RunConfig cfg;
    if (!flags.config.empty()) cfg = orbitkit::parse_config(slurp(flags.config));
    if (!flags.map.empty()) {
      // "name" or "name:key=value,key=value" selects a builtin; anything
      // else is read as a piece-list file.
      const auto colon = flags.map.find(':');
      const std::string head = flags.map.substr(0, colon);
      if (is_builtin(head)) {
        cfg.pieces.clear();
        cfg.builtin = head;
        cfg.builtin_params.clear();
        if (colon != std::string::npos) {
          std::stringstream list(flags.map.substr(colon + 1));
          for (std::string kv; std::getline(list, kv, ';');) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) {
              throw orbitkit::Error(orbitkit::Errc::bad_params, "'" + kv + "' is not key=value");
            }
            cfg.builtin_params[kv.substr(0, eq)] = kv.substr(eq + 1);
          }
        }
      } else if (std::filesystem::exists(flags.map)) {
        const orbitkit::RunConfig file = orbitkit::parse_config(slurp(flags.map));
        cfg.builtin = file.builtin;
        cfg.builtin_params = file.builtin_params;
        cfg.pieces = file.pieces;
        cfg.map_name = file.map_name == "custom" ? std::filesystem::path(flags.map).stem().string() : file.map_name;
      } else {
        throw orbitkit::Error(orbitkit::Errc::unknown_name, "'" + flags.map + "' is neither a builtin nor a file");
      }
    }
    cfg.command = orbitkit::parse_command(sub->get_name());
    for (std::size_t i = 0; i < param_flags.size(); ++i) {
      if (!param_values[i].empty()) orbitkit::set_param(cfg, param_flags[i].second, param_values[i]);
    }
    for (const auto& a : flags.assertions) cfg.assertions.push_back(a);
    if (!flags.out.empty()) cfg.out = flags.out;

    const orbitkit::RunResult result = orbitkit::run(cfg);
    orbitkit::write_files(result, cfg.out);
    for (const auto& [name, _] : result.files) std::cout << (std::filesystem::path(cfg.out) / name).string() << '\n';
    for (const auto& r : result.refuted) std::cerr << "assertion refuted: " << r << '\n';
    return result.exit_code;
  } catch (const orbitkit::Error& e) {
    std::cerr << "orbitkit: " << e.what() << '\n';
    return orbitkit::kExitError;
  }
}
