#include "orbitkit/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

#include "orbitkit/error.hpp"

namespace orbitkit {

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 6> kCommands{{
    {Command::analyze, "analyze"},
    {Command::orbit, "orbit"},
    {Command::transition, "transition"},
    {Command::density, "density"},
    {Command::sensitivity, "sensitivity"},
    {Command::report, "report"},
}};

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

unsigned parse_count(std::string_view field, std::string_view value) {
  unsigned out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw Error(Errc::validation_error, std::string(field) + ": '" + std::string(value) + "' is not a count");
  }
  return out;
}

Scalar parse_field(std::string_view field, std::string_view value) {
  try {
    return parse_scalar(value);
  } catch (const Error&) {
    throw Error(Errc::validation_error, std::string(field) + ": '" + std::string(value) + "' is not a rational");
  }
}

// what() without the leading "errc: " tag.
std::string bare(const Error& e) {
  std::string m = e.what();
  const std::string tag = std::string(errc_name(e.code())) + ": ";
  return m.rfind(tag, 0) == 0 ? m.substr(tag.size()) : m;
}

void require_unit(std::string_view field, const Scalar& v) {
  if (v < 0 || v > 1) throw Error(Errc::validation_error, std::string(field) + " must lie in [0,1]");
}

}  // namespace

std::string_view command_name(Command c) noexcept {
  for (const auto& [cmd, name] : kCommands) {
    if (cmd == c) return name;
  }
  return "?";
}

Command parse_command(std::string_view text) {
  for (const auto& [cmd, name] : kCommands) {
    if (name == text) return cmd;
  }
  throw Error(Errc::validation_error, "cmd: unknown command '" + std::string(text) + "'");
}

const std::vector<std::string>& assertable_properties() {
  static const std::vector<std::string> props{"usc",        "lsc",    "values_connected", "transitive",
                                              "weak_dense", "strong", "sensitive",        "weak",
                                              "liyorke"};
  return props;
}

void set_param(RunConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "eps") {
    cfg.eps = parse_field(key, value);
    if (cfg.eps <= 0) throw Error(Errc::validation_error, "eps must be positive");
    const Scalar m = 1 / cfg.eps;
    if (m.get_den() != 1 || m < 2) throw Error(Errc::validation_error, "eps must be 1/m for an integer m >= 2");
  } else if (key == "depth") {
    cfg.depth = parse_count(key, value);
    if (cfg.depth < 1 || cfg.depth > 64) throw Error(Errc::validation_error, "depth must lie in 1..64");
  } else if (key == "horizon") {
    cfg.horizon = parse_count(key, value);
    if (cfg.horizon < 1 || cfg.horizon > 4096) throw Error(Errc::validation_error, "horizon must lie in 1..4096");
  } else if (key == "sens_eps") {
    cfg.sens_eps = parse_field(key, value);
    if (cfg.sens_eps <= 0 || cfg.sens_eps > 1) throw Error(Errc::validation_error, "sens_eps must lie in (0,1]");
  } else if (key == "sens_horizon") {
    cfg.sens_horizon = parse_count(key, value);
    if (cfg.sens_horizon < 1 || cfg.sens_horizon > 4096) {
      throw Error(Errc::validation_error, "sens_horizon must lie in 1..4096");
    }
  } else if (key == "z") {
    cfg.z = parse_field(key, value);
    require_unit(key, cfg.z);
  } else if (key == "p") {
    cfg.p = parse_field(key, value);
    require_unit(key, *cfg.p);
  } else if (key == "eta") {
    cfg.eta = parse_field(key, value);
    if (cfg.eta <= 0 || cfg.eta > 1) throw Error(Errc::validation_error, "eta must lie in (0,1]");
  } else if (key == "window_lo") {
    cfg.window_lo = parse_count(key, value);
  } else if (key == "window_hi") {
    cfg.window_hi = parse_count(key, value);
  } else {
    throw Error(Errc::validation_error, "unknown param '" + std::string(key) + "'");
  }
}

void validate(const RunConfig& cfg) {
  if (!cfg.has_map()) throw Error(Errc::validation_error, "map: no map given");
  if (!cfg.builtin.empty() && !cfg.pieces.empty()) {
    throw Error(Errc::validation_error, "map: both a builtin and piece lines given");
  }
  if (!cfg.pieces.empty()) {
    try {
      SetValuedMap(cfg.map_name, cfg.pieces);
    } catch (const Error& e) {
      throw Error(Errc::validation_error, "map: " + bare(e));
    }
  }
  if (cfg.window_lo < 1 || cfg.window_lo > cfg.window_hi || cfg.window_hi > 4096) {
    throw Error(Errc::validation_error, "window_lo/window_hi must satisfy 1 <= lo <= hi <= 4096");
  }
  for (const auto& a : cfg.assertions) {
    const auto& props = assertable_properties();
    if (std::find(props.begin(), props.end(), a) == props.end()) {
      throw Error(Errc::validation_error, "assert: unknown property '" + a + "'");
    }
  }
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto at = [&](const std::string& msg) {
      return Error(Errc::parse_error, "line " + std::to_string(line_no) + ": " + msg);
    };
    const auto words = split_words(line);
    const std::string& head = words.front();
    try {
      if (head == "map") {
        if (words.size() < 3 || words[1] != "builtin") throw at("expected 'map builtin <name> [key=value ...]'");
        cfg.builtin = words[2];
        for (std::size_t i = 3; i < words.size(); ++i) {
          const auto eq = words[i].find('=');
          if (eq == std::string::npos || eq == 0) throw at("builtin parameter '" + words[i] + "' is not key=value");
          cfg.builtin_params[words[i].substr(0, eq)] = words[i].substr(eq + 1);
        }
      } else if (head == "name") {
        cfg.map_name = std::string(trim(line.substr(4)));
      } else if (head == "segment" || head == "band" || head == "rect" || head == "point") {
        try {
          cfg.pieces.push_back(parse_piece(line));
        } catch (const Error& e) {
          throw at(bare(e));
        }
      } else if (head == "cmd") {
        if (words.size() != 2) throw at("expected 'cmd <command>'");
        cfg.command = parse_command(words[1]);
      } else if (head == "param") {
        if (words.size() != 3) throw at("expected 'param <key> <value>'");
        set_param(cfg, words[1], words[2]);
      } else if (head == "out") {
        if (words.size() != 2) throw at("expected 'out <dir>'");
        cfg.out = words[1];
      } else if (head == "assert") {
        if (words.size() != 2) throw at("expected 'assert <property>'");
        cfg.assertions.push_back(words[1]);
      } else {
        throw at("unknown directive '" + head + "'");
      }
    } catch (const Error& e) {
      if (e.code() == Errc::validation_error) {
        throw Error(Errc::validation_error, "line " + std::to_string(line_no) + ": " + bare(e));
      }
      throw;
    }
  }
  validate(cfg);
  return cfg;
}

}  // namespace orbitkit
