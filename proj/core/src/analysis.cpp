#include "orbitkit/analysis.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <unordered_map>

#include "orbitkit/error.hpp"
#include "orbitkit/parallel.hpp"

namespace orbitkit {

std::string_view status_name(Status s) noexcept {
  switch (s) {
    case Status::certified_yes: return "certified_yes";
    case Status::certified_no: return "certified_no";
    case Status::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string_view trap_kind_name(TrapCertificate::Kind k) noexcept {
  return k == TrapCertificate::Kind::orbit_cycle ? "orbit_cycle" : "cell_union";
}

namespace {

constexpr unsigned kSpecialDepth = 6;
constexpr std::size_t kSpecialBudget = 4096;

ClosedSet cell_set(unsigned m, unsigned i) {
  const Interval c = grid_cell(m, i);
  return ClosedSet::interval(c.lo, c.hi);
}

// Point-rule locations and their backward images, which is where set-valued
// maps branch and where single-valued sampling would miss the branching.
std::vector<Scalar> special_points(const SetValuedMap& f) {
  std::vector<Scalar> frontier;
  for (const auto& piece : f.pieces()) {
    if (const auto* p = std::get_if<PointPiece>(&piece)) frontier.push_back(p->at);
  }
  std::vector<Scalar> all = frontier;
  for (unsigned d = 0; d < kSpecialDepth && !frontier.empty() && all.size() < kSpecialBudget; ++d) {
    std::vector<Scalar> next;
    for (const auto& y : frontier) {
      auto pre = preimage(f, y);
      if (!pre) continue;
      for (const auto& c : pre->components()) {
        next.push_back(c.lo);
        if (!c.is_point()) next.push_back(c.hi);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    std::vector<Scalar> fresh;
    for (auto& x : next) {
      if (!std::binary_search(all.begin(), all.end(), x)) fresh.push_back(x);
    }
    all.insert(all.end(), fresh.begin(), fresh.end());
    std::sort(all.begin(), all.end());
    frontier = std::move(fresh);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

constexpr unsigned kBackwardDepth = 12;
constexpr std::size_t kBackwardWidth = 4096;

std::vector<Scalar> candidates_in_cell(const SetValuedMap& f, const std::vector<Scalar>& specials, unsigned m,
                                       unsigned i) {
  const Interval c = grid_cell(m, i);
  std::vector<Scalar> out{c.lo, (c.lo + c.hi) / 2, c.hi};
  for (const auto& b : f.breakpoints()) {
    if (c.contains(b)) out.push_back(b);
  }
  for (const auto& s : specials) {
    if (c.contains(s)) out.push_back(s);
  }
  // Keep the fixed order (endpoints and midpoint first) but drop repeats.
  std::vector<Scalar> dedup;
  for (auto& x : out) {
    if (std::find(dedup.begin(), dedup.end(), x) == dedup.end()) dedup.push_back(std::move(x));
  }
  return dedup;
}

}  // namespace

std::vector<Scalar> witness_candidates(const SetValuedMap& f, unsigned m, unsigned i) {
  return candidates_in_cell(f, special_points(f), m, i);
}

TransitivityVerdict transitivity_probe(const SetValuedMap& f, const Scalar& eps, unsigned horizon) {
  TransitivityVerdict out;
  out.budget = {eps, horizon};
  const unsigned m = grid_cells(eps);

  const AtomGraph atoms = atom_graph(f, eps);
  for (unsigned u = 0; u < m && !out.refutation; ++u) {
    const auto reach = reachable(atoms.succ, {AtomGraph::open_cell(u)});
    for (unsigned v = 0; v < m; ++v) {
      if (!reach[AtomGraph::open_cell(v)]) {
        TransitivityRefutation r{u, v, {}};
        for (unsigned a = 0; a < reach.size(); ++a) {
          if (reach[a]) r.reachable.push_back(a);
        }
        out.refutation = std::move(r);
        break;
      }
    }
  }
  if (out.refutation) {
    out.status = Status::certified_no;
    return out;
  }

  const auto specials = special_points(f);
  std::vector<std::vector<std::optional<TransitivityWitness>>> found(m);
  parallel_for(m, [&](std::size_t ui) {
    const unsigned u = static_cast<unsigned>(ui);
    auto& row = found[u];
    row.assign(m, std::nullopt);
    unsigned missing = m;
    for (const auto& x : candidates_in_cell(f, specials, m, u)) {
      ClosedSet s = evaluate(f, x);
      for (unsigned k = 1; k <= horizon && missing > 0; ++k) {
        if (k > 1) {
          ClosedSet next = image(f, s);
          s = std::move(next);
        }
        for (unsigned v : cells_meeting(s, m)) {
          if (!row[v]) {
            row[v] = TransitivityWitness{u, v, x, k};
            --missing;
          }
        }
      }
      if (missing == 0) break;
    }
  });

  // Pairs the forward samples missed: walk backwards from the midpoint of
  // v. A point x in layer j has the midpoint in F^j(x).
  parallel_for(m, [&](std::size_t vi) {
    const unsigned v = static_cast<unsigned>(vi);
    unsigned missing = 0;
    for (unsigned u = 0; u < m; ++u) missing += found[u][v] ? 0 : 1;
    if (missing == 0) return;
    const Interval cv = grid_cell(m, v);
    std::vector<Scalar> layer{(cv.lo + cv.hi) / 2};
    for (unsigned j = 1; j <= std::min(horizon, kBackwardDepth) && missing > 0 && !layer.empty(); ++j) {
      std::vector<Scalar> next;
      for (const auto& y : layer) {
        const auto pre = preimage(f, y);
        if (!pre) continue;
        for (const auto& c : pre->components()) {
          next.push_back(c.lo);
          if (!c.is_point()) {
            next.push_back((c.lo + c.hi) / 2);
            next.push_back(c.hi);
          }
        }
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      if (next.size() > kBackwardWidth) next.resize(kBackwardWidth);
      for (const auto& x : next) {
        for (unsigned u : cells_meeting(ClosedSet::point(x), m)) {
          if (!found[u][v]) {
            found[u][v] = TransitivityWitness{u, v, x, j};
            --missing;
          }
        }
      }
      layer = std::move(next);
    }
  });

  bool all = true;
  for (unsigned u = 0; u < m; ++u) {
    for (unsigned v = 0; v < m; ++v) {
      if (found[u][v] && recheck(f, eps, *found[u][v])) {
        out.witnesses.push_back(*found[u][v]);
      } else {
        all = false;
      }
    }
  }
  out.pairs_witnessed = out.witnesses.size();
  out.status = all ? Status::certified_yes : Status::inconclusive;
  return out;
}

bool recheck(const SetValuedMap& f, const Scalar& eps, const TransitivityWitness& w) {
  const unsigned m = grid_cells(eps);
  if (w.u >= m || w.v >= m || w.k == 0) return false;
  if (!grid_cell(m, w.u).contains(w.x)) return false;
  return iterate(f, w.x, w.k).intersects(cell_set(m, w.v));
}

bool recheck(const SetValuedMap& f, const Scalar& eps, const TransitivityRefutation& r) {
  const AtomGraph g = atom_graph(f, eps);
  std::vector<bool> in(g.succ.size(), false);
  for (unsigned a : r.reachable) {
    if (a >= in.size()) return false;
    in[a] = true;
  }
  auto closed_from = [&](unsigned a) {
    return std::all_of(g.succ[a].begin(), g.succ[a].end(), [&](unsigned b) { return in[b]; });
  };
  if (!closed_from(AtomGraph::open_cell(r.u))) return false;
  for (unsigned a : r.reachable) {
    if (!closed_from(a)) return false;
  }
  return !in[AtomGraph::open_cell(r.v)];
}

namespace {

// Widest open interval inside [0,1] that misses j.
std::optional<std::pair<Scalar, Scalar>> widest_gap(const ClosedSet& j) {
  std::optional<std::pair<Scalar, Scalar>> best;
  auto consider = [&best](const Scalar& lo, const Scalar& hi) {
    if (lo < hi && (!best || hi - lo > best->second - best->first)) best = std::make_pair(lo, hi);
  };
  const auto parts = j.components();
  consider(Scalar(0), parts.front().lo);
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) consider(parts[i].hi, parts[i + 1].lo);
  consider(parts.back().hi, Scalar(1));
  return best;
}

}  // namespace

DensityReport weak_dense_probe(const SetValuedMap& f, const Scalar& p, const Scalar& eps, unsigned horizon) {
  DensityReport r;
  r.budget = {eps, horizon};
  r.p = p;
  const unsigned m = grid_cells(eps);
  r.first_hit.assign(m, std::nullopt);
  unsigned missing = m;

  std::unordered_map<ClosedSet, unsigned, ClosedSetHash> seen;
  std::vector<ClosedSet> orbit;
  ClosedSet s = evaluate(f, p);
  for (unsigned k = 1; k <= horizon; ++k) {
    if (k > 1) s = image(f, s);
    for (unsigned c : cells_meeting(s, m)) {
      if (!r.first_hit[c]) {
        r.first_hit[c] = k;
        --missing;
      }
    }
    if (missing == 0) {
      r.status = Status::certified_yes;
      return r;
    }
    auto [it, inserted] = seen.emplace(s, k);
    if (!inserted) {
      // F^k(p) = F^j(p): the orbit sets repeat with period k - j from j on,
      // so their union is forward invariant.
      ClosedSet trap = orbit.front();
      for (const auto& o : orbit) trap = set_union(trap, o);
      if (auto gap = widest_gap(trap)) {
        TrapCertificate c{TrapCertificate::Kind::orbit_cycle, trap, gap->first, gap->second, it->second,
                          k - it->second};
        if (recheck(f, p, c)) {
          r.trap = std::move(c);
          r.status = Status::certified_no;
          return r;
        }
      }
      break;
    }
    orbit.push_back(s);
  }

  // Cells reachable from those meeting F(p) in the closed-cell graph.
  const TransitionGraph g = transition_graph(f, eps);
  const auto start = cells_meeting(evaluate(f, p), m);
  auto reach = reachable(g.succ, start);
  for (unsigned c : start) reach[c] = true;
  std::vector<Interval> cells;
  for (unsigned c = 0; c < m; ++c) {
    if (reach[c]) cells.push_back(grid_cell(m, c));
  }
  ClosedSet trap = ClosedSet::canonicalize(cells);
  if (auto gap = widest_gap(trap)) {
    TrapCertificate c{TrapCertificate::Kind::cell_union, trap, gap->first, gap->second, 0, 0};
    if (recheck(f, p, c)) {
      r.trap = std::move(c);
      r.status = Status::certified_no;
    }
  }
  return r;
}

bool recheck(const SetValuedMap& f, const Scalar& p, const TrapCertificate& c) {
  if (!(c.gap_lo < c.gap_hi) || c.gap_hi <= 0 || c.gap_lo >= 1) return false;
  if (!evaluate(f, p).subset_of(c.trap)) return false;
  if (!image(f, c.trap).subset_of(c.trap)) return false;
  for (const auto& part : c.trap.components()) {
    if (part.hi > c.gap_lo && part.lo < c.gap_hi) return false;
  }
  return true;
}

bool is_orbit_prefix(const SetValuedMap& f, const SeqPrefix& xs) {
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (!evaluate(f, xs[i]).contains(xs[i + 1])) return false;
  }
  return !xs.empty();
}

bool is_orbit_prefix(const FiniteSystem& s, const std::vector<unsigned>& xs) {
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (xs[i] >= s.size() || !has_state(s.evaluate(xs[i]), xs[i + 1])) return false;
  }
  return !xs.empty() && xs.back() < s.size();
}

namespace {

std::vector<Scalar> sample_points(const ClosedSet& s) {
  std::vector<Scalar> out;
  for (const auto& c : s.components()) {
    out.push_back(c.lo);
    if (!c.is_point()) {
      out.push_back((c.lo + c.hi) / 2);
      out.push_back(c.hi);
    }
  }
  return out;
}

}  // namespace

SeqPrefix dense_orbit_build(const SetValuedMap& f, const Scalar& p, const Scalar& eps, unsigned horizon) {
  const unsigned m = grid_cells(eps);
  const TransitionGraph g = transition_graph(f, eps);
  std::vector<bool> visited(m, false);
  auto visit = [&](const Scalar& x) {
    for (unsigned c : cells_meeting(ClosedSet::point(x), m)) visited[c] = true;
  };
  SeqPrefix prefix{p};
  visit(p);
  Scalar current = p;

  for (unsigned target = 0; target < m; ++target) {
    if (visited[target]) continue;
    const ClosedSet cell = cell_set(m, target);
    std::vector<ClosedSet> sets{evaluate(f, current)};
    while (!sets.back().intersects(cell)) {
      if (sets.size() >= horizon) {
        throw Error(Errc::not_weak_dense, "cell " + std::to_string(target) + " not reached from " +
                                              to_string(current) + " within " + std::to_string(horizon) + " steps");
      }
      sets.push_back(image(f, sets.back()));
    }
    const auto hit = set_intersection(sets.back(), cell);

    // Prefer a hit point from whose cell every unvisited cell stays reachable.
    std::vector<Scalar> choices = sample_points(*hit);
    Scalar y = choices.front();
    for (const auto& c : choices) {
      auto cells_here = cells_meeting(ClosedSet::point(c), m);
      auto reach = reachable(g.succ, cells_here);
      for (unsigned h : cells_here) reach[h] = true;
      bool ok = true;
      for (unsigned v = 0; v < m && ok; ++v) ok = visited[v] || v == target || reach[v];
      if (ok) {
        y = c;
        break;
      }
    }

    // Back-chain through the forward sets.
    std::vector<Scalar> chain{y};
    for (std::size_t i = sets.size() - 1; i-- > 0;) {
      const Scalar& next = chain.back();
      auto pre = preimage(f, next);
      std::optional<ClosedSet> options = pre ? set_intersection(sets[i], *pre) : std::nullopt;
      if (!options) throw Error(Errc::not_weak_dense, "no predecessor of " + to_string(next) + " in the forward set");
      std::optional<Scalar> pick;
      for (const auto& z : sample_points(*options)) {
        if (evaluate(f, z).contains(next)) {
          pick = z;
          break;
        }
      }
      if (!pick) throw Error(Errc::not_weak_dense, "no exact predecessor of " + to_string(next));
      chain.push_back(*pick);
    }
    if (!evaluate(f, current).contains(chain.back())) {
      throw Error(Errc::not_weak_dense, "chain does not start in F(" + to_string(current) + ")");
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      prefix.push_back(*it);
      visit(*it);
    }
    current = prefix.back();
    target = static_cast<unsigned>(-1);  // restart from the lowest unvisited cell
  }
  return prefix;
}

std::vector<unsigned> dense_orbit_build(const FiniteSystem& s, unsigned start) {
  if (start >= s.size()) throw Error(Errc::index_out_of_range, "state " + std::to_string(start));
  const unsigned n = s.size();
  // reach[u]: states reachable from u in zero or more steps.
  std::vector<StateSet> reach(n);
  for (unsigned u = 0; u < n; ++u) {
    StateSet cur = singleton_state(u);
    for (StateSet next = cur | s.image(cur); next != cur; next = cur | s.image(cur)) cur = next;
    reach[u] = cur;
  }
  std::vector<unsigned> walk{start};
  StateSet visited = singleton_state(start);
  while (visited != s.all()) {
    // Aim only at unvisited states that no other unvisited component can
    // reach: a covering walk has to take the components in that order.
    const StateSet open = s.all() & ~visited;
    StateSet targets = 0;
    for (unsigned v = 0; v < n; ++v) {
      if (!has_state(open, v)) continue;
      bool first = true;
      for (unsigned w = 0; w < n && first; ++w) {
        if (has_state(open, w) && has_state(reach[w], v) && !has_state(reach[v], w)) first = false;
      }
      if (first) targets |= singleton_state(v);
    }
    // Breadth-first search (walks of length >= 1) to the nearest target.
    const unsigned from = walk.back();
    std::vector<int> parent(n, -2);
    std::deque<unsigned> queue;
    for (unsigned t = 0; t < n; ++t) {
      if (has_state(s.evaluate(from), t)) {
        parent[t] = -1;
        queue.push_back(t);
      }
    }
    std::optional<unsigned> goal;
    while (!queue.empty()) {
      unsigned u = queue.front();
      queue.pop_front();
      if (has_state(targets, u)) {
        goal = u;
        break;
      }
      for (unsigned t = 0; t < n; ++t) {
        if (parent[t] == -2 && has_state(s.evaluate(u), t)) {
          parent[t] = static_cast<int>(u);
          queue.push_back(t);
        }
      }
    }
    if (!goal) {
      const unsigned miss = static_cast<unsigned>(std::countr_zero(targets));
      throw Error(Errc::not_weak_dense, "state " + s.labels()[miss] + " unreachable from " + s.labels()[from]);
    }
    std::vector<unsigned> leg;
    for (int u = static_cast<int>(*goal); u != -1; u = parent[u]) leg.push_back(static_cast<unsigned>(u));
    for (auto it = leg.rbegin(); it != leg.rend(); ++it) {
      walk.push_back(*it);
      visited |= singleton_state(*it);
    }
  }
  return walk;
}

namespace {

// reach[s] = states reachable from s by walks of length >= 1.
std::vector<StateSet> forward_reach(const FiniteSystem& s) {
  std::vector<StateSet> reach(s.size());
  for (unsigned i = 0; i < s.size(); ++i) reach[i] = s.evaluate(i);
  for (bool changed = true; changed;) {
    changed = false;
    for (unsigned i = 0; i < s.size(); ++i) {
      StateSet next = reach[i] | s.image(reach[i]);
      if (next != reach[i]) {
        reach[i] = next;
        changed = true;
      }
    }
  }
  return reach;
}

}  // namespace

MinimalityVerdict minimality_check(const FiniteSystem& s) {
  const auto reach = forward_reach(s);
  MinimalityVerdict v;
  const bool weak = std::all_of(reach.begin(), reach.end(), [&](StateSet r) { return r == s.all(); });
  v.weak_dense_minimal = weak ? Status::certified_yes : Status::certified_no;

  // A walk from p covering every state exists iff every state is reachable
  // from p and the strongly connected components are totally ordered by
  // reachability (the condensation is then a path starting at p's component).
  auto reflexive = [&](unsigned i) { return reach[i] | singleton_state(i); };
  bool dense = true;
  for (unsigned p = 0; p < s.size() && dense; ++p) {
    if (reflexive(p) != s.all()) dense = false;
  }
  for (unsigned a = 0; a < s.size() && dense; ++a) {
    for (unsigned b = 0; b < s.size() && dense; ++b) {
      if (!has_state(reflexive(a), b) && !has_state(reflexive(b), a)) dense = false;
    }
  }
  v.dense_minimal = dense ? Status::certified_yes : Status::certified_no;
  return v;
}

MinimalityVerdict minimality_check(const SetValuedMap& f, const Scalar& eps, unsigned horizon,
                                   std::vector<Scalar> sample) {
  const unsigned m = grid_cells(eps);
  if (sample.empty()) {
    for (unsigned i = 0; i <= 2 * m; ++i) sample.emplace_back(i, 2 * m);
    for (auto& x : sample) x.canonicalize();
  }
  std::vector<Status> weak(sample.size());
  std::vector<bool> built(sample.size(), false);
  parallel_for(sample.size(), [&](std::size_t i) {
    weak[i] = weak_dense_probe(f, sample[i], eps, horizon).status;
    if (weak[i] == Status::certified_no) return;
    try {
      dense_orbit_build(f, sample[i], eps, horizon);
      built[i] = true;
    } catch (const Error& e) {
      if (e.code() != Errc::not_weak_dense) throw;
    }
  });
  MinimalityVerdict v;
  v.weak_dense_minimal = Status::certified_yes;
  v.dense_minimal = Status::certified_yes;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (weak[i] == Status::certified_no) {
      v.weak_dense_minimal = v.dense_minimal = Status::certified_no;
      v.refuting_point = sample[i];
      return v;
    }
    if (weak[i] != Status::certified_yes) v.weak_dense_minimal = Status::inconclusive;
    if (!built[i]) v.dense_minimal = Status::inconclusive;
  }
  return v;
}

}  // namespace orbitkit
