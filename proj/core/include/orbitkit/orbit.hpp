#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "orbitkit/interval_map.hpp"
#include "orbitkit/set_map.hpp"

namespace orbitkit {

/// All orbit prefixes (x_1, ..., x_n) with x_1 = z and x_{i+1} in F(x_i), for
/// a map whose reachable values are finite. Level k holds the values x_k.
struct OrbitTree {
  struct Node {
    Scalar value;
    std::int64_t parent;  ///< -1 for the root
  };

  Scalar root;
  unsigned depth = 0;
  std::vector<Node> nodes;
  std::vector<std::vector<std::size_t>> children;
  /// levels[k-1] lists the node indices at level k.
  std::vector<std::vector<std::size_t>> levels;
};

constexpr std::size_t kNodeBudget = 1'000'000;

/// Throws NotFiniteValued when some reachable F(x) has an interval component,
/// BudgetExceeded past `budget` nodes.
OrbitTree orbit_tree(const SetValuedMap& f, const Scalar& z, unsigned n, std::size_t budget = kNodeBudget);

/// Level-k values, which equal F^{k-1}(z) (and {z} for k = 1).
ClosedSet project_k(const OrbitTree& t, unsigned k);

/// Root-to-leaf value sequences in tree order.
std::vector<SeqPrefix> branches(const OrbitTree& t);

/// A different branch agreeing with `branch` up to index N, where N >= 1 is
/// least with 2^-N < eps, so that its rho-distance is below eps whatever the
/// continuation. Throws NoSibling when F(x_N) is a singleton, InvalidArgument
/// if `branch` is not a branch of t or the tree is shallower than N + 1.
SeqPrefix sibling_within(const OrbitTree& t, const SeqPrefix& branch, const Scalar& eps);

/// Least N >= 1 with 2^-N < eps.
unsigned sibling_index(const Scalar& eps);

/// Grid-cell outer approximation of the truncated orbit set: every exact
/// orbit prefix of length n lies cellwise inside some path.
struct OrbitCover {
  Scalar eps;
  unsigned m = 0;
  unsigned depth = 0;
  std::vector<std::vector<std::uint32_t>> paths;  ///< sorted, distinct
  bool outer = true;
  Tri values_connected = Tri::unknown;
};

constexpr std::size_t kPathBudget = 1'000'000;

OrbitCover orbit_cover(const SetValuedMap& f, const Scalar& z, unsigned n, const Scalar& eps,
                       std::size_t budget = kPathBudget);

/// Cells occurring at position k of some path.
std::vector<unsigned> project_k(const OrbitCover& c, unsigned k);

/// Whether some path of the cover contains the prefix cellwise.
bool cover_contains(const OrbitCover& c, const SeqPrefix& prefix);

struct DepthConnectivity {
  bool connected = true;
  std::optional<unsigned> failing_level;
  std::size_t tubes_at_failure = 0;
};

/// Connectivity of the truncated path sets, level by level. Two tubes are
/// adjacent when their cells are equal or neighbours at every coordinate.
/// Throws HypothesisNotChecked unless the map's values are known connected.
DepthConnectivity depth_connectivity(const OrbitCover& c);

/// Union over p in {1..k}^{n-1} of the prefixes (x_1, ..., x_n) with x_1 = z
/// and x_i = f_{p_i}(x_{i+1}), enumerated from the factors alone. Sorted and
/// distinct.
std::vector<SeqPrefix> inverse_limit_prefixes(const std::vector<IntervalMap>& fs, const Scalar& z, unsigned n);

}  // namespace orbitkit
