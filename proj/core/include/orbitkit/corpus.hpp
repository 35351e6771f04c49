#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orbitkit/finite_system.hpp"
#include "orbitkit/interval_map.hpp"
#include "orbitkit/set_map.hpp"

namespace orbitkit {

struct BuiltinSpec;

/// An executable claim about a builtin: `actual(spec)` must render to
/// `expected`.
struct Expectation {
  std::string property;
  std::string expected;
  std::string anchor;
  std::function<std::string(const BuiltinSpec&)> actual;
};

struct BuiltinSpec {
  std::string name;  ///< includes non-default parameters, e.g. devil_pair[level=4]
  std::vector<std::pair<std::string, std::string>> params;
  std::variant<SetValuedMap, FiniteSystem> object;
  std::vector<Expectation> expectations;
  std::string caveat;  ///< set when a rational proxy or approximation stands in

  bool is_map() const { return std::holds_alternative<SetValuedMap>(object); }
  const SetValuedMap& map() const;
  const FiniteSystem& system() const;
};

using Params = std::map<std::string, std::string>;

/// Throws UnknownName or BadParams.
BuiltinSpec builtin(const std::string& name, const Params& params = {});

struct CatalogEntry {
  std::string name;
  std::vector<std::pair<std::string, std::string>> defaults;
  std::string kind;  ///< "map" or "finite"
  std::string anchor;
};

const std::vector<CatalogEntry>& catalog();

struct ExpectationResult {
  std::string property;
  std::string expected;
  std::string actual;
  bool passed = false;
};

std::vector<ExpectationResult> check_expectations(const BuiltinSpec& spec);

/// Level-m piecewise-linear approximation of the Cantor function.
IntervalMap cantor_approximation(unsigned level);

/// The double-tent map h: pieces 1/2 -> 0, 0 -> 1, 1 -> 1/2 over
/// [0,1/4], [1/4,3/4], [3/4,1].
IntervalMap double_tent_map();

}  // namespace orbitkit
