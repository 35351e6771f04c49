#pragma once

// Brute-force reference implementations. They share no code with the
// library beyond the ClosedSet container and are slow on purpose.

#include <algorithm>
#include <set>
#include <vector>

#include "orbitkit/closed_set.hpp"
#include "orbitkit/finite_system.hpp"
#include "orbitkit/set_map.hpp"

namespace orbitkit::testing {

inline Scalar absq(const Scalar& a) { return a < 0 ? Scalar(-a) : a; }

/// Points of A on a uniform grid of `steps` cells, plus its component
/// endpoints. For finite A this is exactly A.
inline std::vector<Scalar> sample(const ClosedSet& a, unsigned steps) {
  std::vector<Scalar> out;
  for (const auto& c : a.components()) {
    out.push_back(c.lo);
    if (c.is_point()) continue;
    out.push_back(c.hi);
    for (unsigned i = 1; i < steps; ++i) {
      const Scalar x = ratio(static_cast<long>(i), static_cast<long>(steps));
      if (c.lo < x && x < c.hi) out.push_back(x);
    }
  }
  return out;
}

inline Scalar brute_dist(const Scalar& x, const std::vector<Scalar>& b) {
  Scalar best(1);
  for (const auto& y : b) best = std::min(best, absq(x - y));
  return best;
}

/// Directed excess over grid samples of A, measured against the exact B.
inline Scalar brute_excess(const ClosedSet& a, const ClosedSet& b, unsigned steps) {
  Scalar worst(0);
  for (const auto& x : sample(a, steps)) {
    Scalar d(1);
    for (const auto& c : b.components()) {
      const Scalar here = x < c.lo ? Scalar(c.lo - x) : x > c.hi ? Scalar(x - c.hi) : Scalar(0);
      d = std::min(d, here);
    }
    worst = std::max(worst, d);
  }
  return worst;
}

inline Scalar brute_hausdorff(const ClosedSet& a, const ClosedSet& b, unsigned steps) {
  return std::max(brute_excess(a, b, steps), brute_excess(b, a, steps));
}

inline Scalar brute_maxdist(const ClosedSet& a, const ClosedSet& b) {
  Scalar best(0);
  for (const auto& x : sample(a, 1)) {
    for (const auto& y : sample(b, 1)) best = std::max(best, absq(x - y));
  }
  return best;
}

/// F^n(x) for a finite-valued map by applying evaluate to every point.
inline ClosedSet brute_iterate_points(const SetValuedMap& f, const Scalar& x, unsigned n) {
  std::set<Scalar> cur{x};
  for (unsigned k = 0; k < n; ++k) {
    std::set<Scalar> next;
    for (const auto& y : cur) {
      for (const auto& v : evaluate(f, y).point_values()) next.insert(v);
    }
    cur = std::move(next);
  }
  return ClosedSet::points(std::vector<Scalar>(cur.begin(), cur.end()));
}

/// States reachable from s in exactly n steps, one state at a time.
inline StateSet brute_iterate(const FiniteSystem& s, unsigned x, unsigned n) {
  std::set<unsigned> cur{x};
  for (unsigned k = 0; k < n; ++k) {
    std::set<unsigned> next;
    for (unsigned y : cur) {
      for (unsigned t = 0; t < s.size(); ++t) {
        if (has_state(s.evaluate(y), t)) next.insert(t);
      }
    }
    cur = std::move(next);
  }
  StateSet out = 0;
  for (unsigned t : cur) out |= singleton_state(t);
  return out;
}

}  // namespace orbitkit::testing
