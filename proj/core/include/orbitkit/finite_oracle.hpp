#pragma once

#include <vector>

#include "orbitkit/finite_system.hpp"

namespace orbitkit {

/// Exhaustive decisions for a finite system with the discrete metric. All
/// entries are computed by brute force and serve as ground truth for the
/// probes in analysis and sensitivity.
struct FiniteReport {
  unsigned states = 0;
  bool transitive = false;
  /// Some orbit starting at p visits every state.
  std::vector<bool> dense_orbit;
  /// Some orbit starting at p visits every state infinitely often. This is
  /// the finite stand-in for a dense orbit in a space without isolated points.
  std::vector<bool> recurrent_dense_orbit;
  /// The sets F^k(p), k >= 1, together cover every state.
  std::vector<bool> weak_dense_orbit;
  bool dense_minimal = false;
  bool weak_dense_minimal = false;

  unsigned horizon = 0;
  /// Per-state sensitivity conditions over iterates 1..horizon. With the
  /// discrete metric only y = x lies within delta < 1 of x.
  std::vector<bool> strong_at, sensitive_at, weak_at, liyorke_at;
  bool strong = false, sensitive = false, weak = false, liyorke = false;
};

constexpr unsigned kOracleMaxStates = 12;

/// Throws TooLarge above 12 states.
FiniteReport finite_oracle(const FiniteSystem& s, unsigned horizon = 12);

}  // namespace orbitkit
