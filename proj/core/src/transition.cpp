#include "orbitkit/transition.hpp"

#include <algorithm>
#include <deque>

#include "orbitkit/error.hpp"
#include "orbitkit/parallel.hpp"

namespace orbitkit {

unsigned grid_cells(const Scalar& eps) {
  if (eps <= 0 || eps.get_num() != 1 || eps.get_den() < 2 || !eps.get_den().fits_uint_p()) {
    throw Error(Errc::invalid_argument, "resolution must be 1/m with integer m >= 2, got " + to_string(eps));
  }
  return static_cast<unsigned>(eps.get_den().get_ui());
}

Interval grid_cell(unsigned m, unsigned i) {
  return {ratio(static_cast<long>(i), static_cast<long>(m)), ratio(static_cast<long>(i) + 1, static_cast<long>(m))};
}

std::vector<unsigned> cells_meeting(const ClosedSet& s, unsigned m) {
  std::vector<unsigned> out;
  const Scalar sm(m);
  for (const auto& c : s.components()) {
    // [j/m, (j+1)/m] meets [lo, hi] iff lo*m - 1 <= j <= hi*m.
    mpz_class first = ceil_of(Scalar(c.lo * sm)) - 1;
    mpz_class last = floor_of(Scalar(c.hi * sm));
    if (first < 0) first = 0;
    if (last > m - 1) last = m - 1;
    for (unsigned long j = first.get_ui(); j <= last.get_ui(); ++j) {
      if (out.empty() || out.back() < j) out.push_back(static_cast<unsigned>(j));
    }
  }
  return out;
}

bool TransitionGraph::has_edge(unsigned from, unsigned to) const {
  return std::binary_search(succ.at(from).begin(), succ.at(from).end(), to);
}

TransitionGraph transition_graph(const SetValuedMap& f, const Scalar& eps) {
  TransitionGraph g{eps, grid_cells(eps), {}};
  g.succ.resize(g.m);
  parallel_for(g.m, [&](std::size_t i) {
    const Interval c = grid_cell(g.m, static_cast<unsigned>(i));
    g.succ[i] = cells_meeting(image(f, ClosedSet::interval(c.lo, c.hi)), g.m);
  });
  return g;
}

std::vector<bool> reachable(const std::vector<std::vector<unsigned>>& succ, const std::vector<unsigned>& starts) {
  std::vector<bool> seen(succ.size(), false);
  std::deque<unsigned> queue;
  for (unsigned s : starts) {
    for (unsigned t : succ.at(s)) {
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  while (!queue.empty()) {
    unsigned u = queue.front();
    queue.pop_front();
    for (unsigned t : succ[u]) {
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  return seen;
}

std::string to_dot(const TransitionGraph& g, const std::string& name) {
  std::string out = "digraph \"" + name + "\" {\n  rankdir=LR;\n";
  for (unsigned i = 0; i < g.m; ++i) {
    const Interval c = grid_cell(g.m, i);
    out += "  c" + std::to_string(i) + " [label=\"[" + to_string(c.lo) + "," + to_string(c.hi) + "]\"];\n";
  }
  for (unsigned i = 0; i < g.m; ++i) {
    for (unsigned j : g.succ[i]) out += "  c" + std::to_string(i) + " -> c" + std::to_string(j) + ";\n";
  }
  return out + "}\n";
}

Span AtomGraph::atom(unsigned a) const {
  if (a % 2 == 0) {
    Scalar x(a / 2, m);
    x.canonicalize();
    return Span{x, x, true, true};
  }
  const Interval c = grid_cell(m, a / 2);
  return Span{c.lo, c.hi, false, false};
}

std::vector<unsigned> atoms_meeting(const ClosedSet& s, unsigned m) {
  std::vector<unsigned> out;
  const Scalar sm(m);
  for (const auto& c : s.components()) {
    const Scalar lo = c.lo * sm;
    const Scalar hi = c.hi * sm;
    // Open cell i meets [lo, hi] iff i < hi and i + 1 > lo (in grid units).
    mpz_class first_cell = floor_of(lo);
    mpz_class last_cell = ceil_of(hi) - 1;
    if (first_cell > m - 1) first_cell = m - 1;
    for (mpz_class j = ceil_of(lo); j <= floor_of(hi); ++j) out.push_back(2 * static_cast<unsigned>(j.get_ui()));
    if (c.lo != c.hi || lo != floor_of(lo)) {
      for (mpz_class i = first_cell; i <= last_cell; ++i) out.push_back(2 * static_cast<unsigned>(i.get_ui()) + 1);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

AtomGraph atom_graph(const SetValuedMap& f, const Scalar& eps) {
  AtomGraph g{eps, grid_cells(eps), {}};
  g.succ.resize(2 * g.m + 1);
  parallel_for(g.succ.size(), [&](std::size_t a) {
    g.succ[a] = atoms_meeting(image_closure(f, g.atom(static_cast<unsigned>(a))), g.m);
  });
  return g;
}

}  // namespace orbitkit
