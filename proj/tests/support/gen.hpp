#pragma once

// Fixed-seed generators for property tests. Every test builds its own Gen
// with a literal seed so failures reproduce exactly.

#include <cstdint>
#include <random>
#include <vector>

#include "orbitkit/closed_set.hpp"
#include "orbitkit/finite_system.hpp"

namespace orbitkit::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }
  bool coin() { return below(2) == 1; }

  /// k/d with d in 1..max_den and 0 <= k <= d.
  Scalar unit_rational(unsigned max_den = 24) {
    const long d = static_cast<long>(1 + below(max_den));
    Scalar v(static_cast<long>(below(static_cast<std::uint64_t>(d) + 1)), d);
    v.canonicalize();
    return v;
  }

  /// Union of 1..max_parts random intervals and points.
  ClosedSet closed_set(unsigned max_parts = 5, unsigned max_den = 24) {
    std::vector<Interval> parts;
    const auto n = 1 + below(max_parts);
    for (std::uint64_t i = 0; i < n; ++i) {
      Scalar a = unit_rational(max_den);
      if (coin()) {
        parts.push_back(Interval::point(a));
      } else {
        Scalar b = unit_rational(max_den);
        if (b < a) std::swap(a, b);
        parts.push_back({a, b});
      }
    }
    return ClosedSet::canonicalize(parts);
  }

  /// Finite set of 1..max_points points.
  ClosedSet point_set(unsigned max_points = 6, unsigned max_den = 24) {
    std::vector<Scalar> xs;
    const auto n = 1 + below(max_points);
    for (std::uint64_t i = 0; i < n; ++i) xs.push_back(unit_rational(max_den));
    return ClosedSet::points(xs);
  }

  /// Uniform over all multivalued maps on n states.
  FiniteSystem finite_system(unsigned n) {
    std::vector<StateSet> table(n);
    const StateSet full = (StateSet{1} << n) - 1;
    for (auto& row : table) row = 1 + below(full);
    return FiniteSystem("random", table);
  }

  /// Sparse variant: each row has one or two successors, which makes
  /// non-transitive and non-minimal systems common.
  FiniteSystem sparse_system(unsigned n) {
    std::vector<StateSet> table(n);
    for (auto& row : table) {
      row = singleton_state(static_cast<unsigned>(below(n)));
      if (coin()) row |= singleton_state(static_cast<unsigned>(below(n)));
    }
    return FiniteSystem("sparse", table);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace orbitkit::testing
