#include "orbitkit/finite_oracle.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <optional>
#include <set>
#include <utility>

#include "orbitkit/error.hpp"

namespace orbitkit {

namespace {

// Union of F^k(p) over 1 <= k <= 2^n. The sequence of sets is eventually
// periodic within 2^n steps, so this is every state ever reached.
StateSet iterated_union(const FiniteSystem& s, unsigned p) {
  const unsigned long steps = 1ul << s.size();
  StateSet cur = s.evaluate(p);
  StateSet acc = cur;
  for (unsigned long k = 1; k < steps; ++k) {
    cur = s.image(cur);
    acc |= cur;
  }
  return acc;
}

// Search over (state, visited mask): is there a walk from `from` (taking at
// least one step) that ends at `to` having visited every state?
bool covering_walk(const FiniteSystem& s, unsigned from, std::optional<unsigned> to, StateSet initial) {
  const StateSet all = s.all();
  std::set<std::pair<unsigned, StateSet>> seen;
  std::deque<std::pair<unsigned, StateSet>> queue;
  auto push = [&](unsigned st, StateSet mask) {
    if (seen.emplace(st, mask).second) queue.emplace_back(st, mask);
  };
  for (unsigned t = 0; t < s.size(); ++t) {
    if (has_state(s.evaluate(from), t)) push(t, initial | singleton_state(t));
  }
  if (!to && initial == all) return true;
  while (!queue.empty()) {
    auto [st, mask] = queue.front();
    queue.pop_front();
    if (mask == all && (!to || st == *to)) return true;
    for (unsigned t = 0; t < s.size(); ++t) {
      if (has_state(s.evaluate(st), t)) push(t, mask | singleton_state(t));
    }
  }
  return false;
}

std::vector<StateSet> power_sequence(const FiniteSystem& s, unsigned x, unsigned horizon) {
  std::vector<StateSet> out;
  StateSet cur = s.evaluate(x);
  for (unsigned k = 1; k <= horizon; ++k) {
    if (k > 1) cur = s.image(cur);
    out.push_back(cur);
  }
  return out;
}

// Discrete Hausdorff distance: 0 for equal sets, 1 otherwise.
unsigned discrete_hausdorff(StateSet a, StateSet b) { return a == b ? 0 : 1; }

}  // namespace

FiniteReport finite_oracle(const FiniteSystem& s, unsigned horizon) {
  if (s.size() > kOracleMaxStates) {
    throw Error(Errc::too_large, "oracle supports at most 12 states, got " + std::to_string(s.size()));
  }
  const unsigned n = s.size();
  FiniteReport r;
  r.states = n;
  r.horizon = horizon;

  std::vector<StateSet> reach(n);
  for (unsigned p = 0; p < n; ++p) reach[p] = iterated_union(s, p);

  r.transitive = true;
  for (unsigned u = 0; u < n; ++u) {
    for (unsigned v = 0; v < n; ++v) {
      if (!has_state(reach[u], v)) r.transitive = false;
    }
  }

  for (unsigned p = 0; p < n; ++p) {
    r.dense_orbit.push_back(covering_walk(s, p, std::nullopt, singleton_state(p)));
    r.weak_dense_orbit.push_back(reach[p] == s.all());
    bool recurrent = false;
    for (unsigned q = 0; q < n && !recurrent; ++q) {
      if (q == p || has_state(reach[p], q)) recurrent = covering_walk(s, q, q, singleton_state(q));
    }
    r.recurrent_dense_orbit.push_back(recurrent);
  }
  r.dense_minimal = std::all_of(r.dense_orbit.begin(), r.dense_orbit.end(), [](bool b) { return b; });
  r.weak_dense_minimal = std::all_of(r.weak_dense_orbit.begin(), r.weak_dense_orbit.end(), [](bool b) { return b; });

  // Sensitivity with the discrete metric, eps = 1 and any delta <= 1: the
  // delta-ball around x is {x}.
  for (unsigned x = 0; x < n; ++x) {
    const auto fx = power_sequence(s, x, horizon);
    bool strong = false, sensitive = false, liyorke = false;
    for (unsigned y = 0; y < n; ++y) {
      if (y != x) continue;  // d(x, y) = 1 >= delta
      const auto fy = power_sequence(s, y, horizon);
      unsigned zeros = 0, ones = 0;
      for (unsigned k = 0; k < horizon; ++k) {
        if ((fy[k] & ~fx[k]) != 0) strong = true;
        if (discrete_hausdorff(fx[k], fy[k]) >= 1) {
          sensitive = true;
          ++ones;
        } else {
          ++zeros;
        }
      }
      if (zeros > 0 && ones > 0) liyorke = true;
    }
    r.strong_at.push_back(strong);
    r.sensitive_at.push_back(sensitive);
    r.liyorke_at.push_back(liyorke);

    // Weak: two orbits from x that differ at some index <= horizon + 1.
    std::set<std::pair<unsigned, unsigned>> level{{x, x}};
    bool split = false;
    for (unsigned k = 0; k < horizon && !split; ++k) {
      std::set<std::pair<unsigned, unsigned>> next;
      for (auto [a, b] : level) {
        for (unsigned a2 = 0; a2 < n; ++a2) {
          if (!has_state(s.evaluate(a), a2)) continue;
          for (unsigned b2 = 0; b2 < n; ++b2) {
            if (has_state(s.evaluate(b), b2)) next.emplace(a2, b2);
          }
        }
      }
      split = std::any_of(next.begin(), next.end(), [](const auto& pr) { return pr.first != pr.second; });
      level = std::move(next);
    }
    r.weak_at.push_back(split);
  }
  auto every = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
  r.strong = every(r.strong_at);
  r.sensitive = every(r.sensitive_at);
  r.weak = every(r.weak_at);
  r.liyorke = every(r.liyorke_at);
  return r;
}

}  // namespace orbitkit
