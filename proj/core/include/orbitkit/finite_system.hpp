#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace orbitkit {

/// Bit i set <=> state i is in the set.
using StateSet = std::uint64_t;

inline StateSet singleton_state(unsigned s) { return StateSet{1} << s; }
inline bool has_state(StateSet set, unsigned s) { return (set >> s) & 1u; }

/// Multivalued map on a finite discrete space of at most 64 states.
class FiniteSystem {
 public:
  static constexpr unsigned kMaxStates = 64;

  /// table[s] is F(s); every entry must be nonempty and refer to valid states.
  FiniteSystem(std::string name, std::vector<std::string> labels, std::vector<StateSet> table);
  /// Unlabelled states named s0, s1, ...
  FiniteSystem(std::string name, std::vector<StateSet> table);

  const std::string& name() const { return name_; }
  unsigned size() const { return static_cast<unsigned>(table_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  StateSet all() const { return size() == 64 ? ~StateSet{0} : (StateSet{1} << size()) - 1; }

  StateSet evaluate(unsigned s) const;
  StateSet image(StateSet set) const;
  /// F^n(s), n >= 1.
  StateSet iterate(unsigned s, unsigned n) const;

  std::string format(StateSet set) const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<StateSet> table_;
};

/// Every multivalued map on n states (n <= 4), in a fixed order.
std::vector<FiniteSystem> all_finite_systems(unsigned n);

}  // namespace orbitkit
