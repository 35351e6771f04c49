#pragma once

#include <string>
#include <vector>

#include "orbitkit/set_map.hpp"

namespace orbitkit {

/// m for eps = 1/m; throws InvalidArgument unless m is an integer >= 2.
unsigned grid_cells(const Scalar& eps);

/// Closed cell [i/m, (i+1)/m].
Interval grid_cell(unsigned m, unsigned i);

/// Indices of the closed cells meeting s, ascending.
std::vector<unsigned> cells_meeting(const ClosedSet& s, unsigned m);

/// Cells [i/m, (i+1)/m] with an edge c -> c' iff F(c) meets c'. Shared
/// endpoints create edges between neighbouring cells; this keeps the graph
/// an outer approximation.
struct TransitionGraph {
  Scalar eps;
  unsigned m = 0;
  std::vector<std::vector<unsigned>> succ;

  unsigned size() const { return m; }
  bool has_edge(unsigned from, unsigned to) const;
};

TransitionGraph transition_graph(const SetValuedMap& f, const Scalar& eps);

/// Nodes reachable from `starts` by walks of length >= 1.
std::vector<bool> reachable(const std::vector<std::vector<unsigned>>& succ, const std::vector<unsigned>& starts);

std::string to_dot(const TransitionGraph& g, const std::string& name);

/// Partition of [0,1] into the grid points j/m and the open cells
/// (i/m, (i+1)/m). Atom 2j is the point j/m, atom 2i+1 the open cell i.
/// Edges over-approximate F on each atom, so a missing walk between two
/// open cells refutes transitivity.
struct AtomGraph {
  Scalar eps;
  unsigned m = 0;
  std::vector<std::vector<unsigned>> succ;

  static unsigned open_cell(unsigned i) { return 2 * i + 1; }
  static unsigned grid_point(unsigned j) { return 2 * j; }
  Span atom(unsigned a) const;
};

AtomGraph atom_graph(const SetValuedMap& f, const Scalar& eps);

/// Atoms meeting s, ascending.
std::vector<unsigned> atoms_meeting(const ClosedSet& s, unsigned m);

}  // namespace orbitkit
