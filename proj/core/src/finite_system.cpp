#include "orbitkit/finite_system.hpp"

#include <bit>

#include "orbitkit/error.hpp"

namespace orbitkit {

namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("s" + std::to_string(i));
  return out;
}

}  // namespace

FiniteSystem::FiniteSystem(std::string name, std::vector<std::string> labels, std::vector<StateSet> table)
    : name_(std::move(name)), labels_(std::move(labels)), table_(std::move(table)) {
  if (table_.empty()) throw Error(Errc::empty_input, "finite system '" + name_ + "' has no states");
  if (table_.size() > kMaxStates) throw Error(Errc::too_large, "finite system '" + name_ + "' exceeds 64 states");
  if (labels_.size() != table_.size()) {
    throw Error(Errc::length_mismatch, "finite system '" + name_ + "' has " + std::to_string(labels_.size()) +
                                           " labels for " + std::to_string(table_.size()) + " states");
  }
  for (std::size_t s = 0; s < table_.size(); ++s) {
    if (table_[s] == 0) throw Error(Errc::empty_input, "F(" + labels_[s] + ") is empty");
    if ((table_[s] & ~all()) != 0) throw Error(Errc::out_of_range, "F(" + labels_[s] + ") names an unknown state");
  }
}

FiniteSystem::FiniteSystem(std::string name, std::vector<StateSet> table)
    : FiniteSystem(std::move(name), default_labels(table.size()), table) {}

StateSet FiniteSystem::evaluate(unsigned s) const {
  if (s >= size()) throw Error(Errc::index_out_of_range, "state " + std::to_string(s));
  return table_[s];
}

StateSet FiniteSystem::image(StateSet set) const {
  StateSet out = 0;
  while (set) {
    unsigned s = static_cast<unsigned>(std::countr_zero(set));
    set &= set - 1;
    out |= table_[s];
  }
  return out;
}

StateSet FiniteSystem::iterate(unsigned s, unsigned n) const {
  if (n == 0) throw Error(Errc::invalid_argument, "iterate needs n >= 1");
  StateSet cur = evaluate(s);
  for (unsigned i = 1; i < n; ++i) cur = image(cur);
  return cur;
}

std::string FiniteSystem::format(StateSet set) const {
  std::string out = "{";
  bool first = true;
  for (unsigned s = 0; s < size(); ++s) {
    if (!has_state(set, s)) continue;
    if (!first) out += ",";
    out += labels_[s];
    first = false;
  }
  return out + "}";
}

std::vector<FiniteSystem> all_finite_systems(unsigned n) {
  if (n == 0 || n > 4) throw Error(Errc::too_large, "exhaustive enumeration supports 1..4 states");
  const StateSet choices = (StateSet{1} << n) - 1;  // nonempty subsets are 1..choices
  std::vector<FiniteSystem> out;
  std::vector<StateSet> table(n, 1);
  while (true) {
    out.emplace_back("enum", table);
    unsigned i = 0;
    while (i < n && table[i] == choices) table[i++] = 1;
    if (i == n) break;
    ++table[i];
  }
  return out;
}

}  // namespace orbitkit
