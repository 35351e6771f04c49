#include "orbitkit/orbit.hpp"

#include <algorithm>
#include <numeric>

#include "orbitkit/error.hpp"
#include "orbitkit/transition.hpp"

namespace orbitkit {

OrbitTree orbit_tree(const SetValuedMap& f, const Scalar& z, unsigned n, std::size_t budget) {
  if (n == 0) throw Error(Errc::invalid_argument, "orbit tree depth must be >= 1");
  if (z < 0 || z > 1) throw Error(Errc::out_of_range, "z = " + to_string(z) + " outside [0,1]");
  OrbitTree t{z, n, {}, {}, {}};
  t.nodes.push_back({z, -1});
  t.children.emplace_back();
  t.levels.push_back({0});
  for (unsigned level = 1; level < n; ++level) {
    std::vector<std::size_t> next;
    for (std::size_t idx : t.levels.back()) {
      const ClosedSet v = evaluate(f, t.nodes[idx].value);
      if (!v.is_finite()) {
        throw Error(Errc::not_finite_valued, "F(" + to_string(t.nodes[idx].value) + ") = " + format_set(v));
      }
      for (auto& y : v.point_values()) {
        if (t.nodes.size() >= budget) {
          throw Error(Errc::budget_exceeded, "orbit tree exceeds " + std::to_string(budget) + " nodes");
        }
        t.children[idx].push_back(t.nodes.size());
        next.push_back(t.nodes.size());
        t.nodes.push_back({std::move(y), static_cast<std::int64_t>(idx)});
        t.children.emplace_back();
      }
    }
    t.levels.push_back(std::move(next));
  }
  return t;
}

ClosedSet project_k(const OrbitTree& t, unsigned k) {
  if (k < 1 || k > t.depth) {
    throw Error(Errc::index_out_of_range, "k = " + std::to_string(k) + " outside 1.." + std::to_string(t.depth));
  }
  std::vector<Scalar> xs;
  for (std::size_t idx : t.levels[k - 1]) xs.push_back(t.nodes[idx].value);
  return ClosedSet::points(xs);
}

std::vector<SeqPrefix> branches(const OrbitTree& t) {
  std::vector<SeqPrefix> out;
  for (std::size_t leaf : t.levels.back()) {
    SeqPrefix b(t.depth);
    std::int64_t cur = static_cast<std::int64_t>(leaf);
    for (unsigned i = t.depth; i-- > 0;) {
      b[i] = t.nodes[cur].value;
      cur = t.nodes[cur].parent;
    }
    out.push_back(std::move(b));
  }
  return out;
}

unsigned sibling_index(const Scalar& eps) {
  if (eps <= 0) throw Error(Errc::invalid_argument, "eps must be positive");
  unsigned n = 1;
  Scalar p(1, 2);
  while (!(p < eps)) {
    p /= 2;
    ++n;
  }
  return n;
}

SeqPrefix sibling_within(const OrbitTree& t, const SeqPrefix& branch, const Scalar& eps) {
  const unsigned n_idx = sibling_index(eps);
  if (branch.size() != t.depth) throw Error(Errc::invalid_argument, "branch length differs from tree depth");
  if (t.depth < n_idx + 1) {
    throw Error(Errc::invalid_argument, "depth " + std::to_string(t.depth) + " too shallow for index " +
                                            std::to_string(n_idx + 1));
  }
  // Follow the branch down to x_N.
  if (branch[0] != t.root) throw Error(Errc::invalid_argument, "branch does not start at the root");
  std::size_t node = 0;
  std::vector<std::size_t> path{0};
  for (unsigned i = 1; i < t.depth; ++i) {
    const auto& kids = t.children[node];
    auto it = std::find_if(kids.begin(), kids.end(), [&](std::size_t c) { return t.nodes[c].value == branch[i]; });
    if (it == kids.end()) throw Error(Errc::invalid_argument, "branch leaves the tree at index " + std::to_string(i + 1));
    node = *it;
    path.push_back(node);
  }
  const std::size_t at_n = path[n_idx - 1];
  const auto& kids = t.children[at_n];
  auto alt = std::find_if(kids.begin(), kids.end(), [&](std::size_t c) { return t.nodes[c].value != branch[n_idx]; });
  if (alt == kids.end()) {
    throw Error(Errc::no_sibling, "F(" + to_string(t.nodes[at_n].value) + ") is a singleton at index " +
                                      std::to_string(n_idx));
  }
  SeqPrefix out(branch.begin(), branch.begin() + n_idx);
  std::size_t cur = *alt;
  out.push_back(t.nodes[cur].value);
  while (out.size() < t.depth) {
    cur = t.children[cur].front();
    out.push_back(t.nodes[cur].value);
  }
  return out;
}

OrbitCover orbit_cover(const SetValuedMap& f, const Scalar& z, unsigned n, const Scalar& eps, std::size_t budget) {
  if (n == 0) throw Error(Errc::invalid_argument, "cover depth must be >= 1");
  OrbitCover c{eps, grid_cells(eps), n, {}, true, f.values_connected()};
  const auto first = cells_meeting(ClosedSet::point(z), c.m);
  std::vector<std::vector<std::uint32_t>> paths;
  for (unsigned a : first) paths.push_back({a});
  if (n >= 2) {
    const auto second = cells_meeting(evaluate(f, z), c.m);
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& p : paths) {
      for (unsigned b : second) {
        next.push_back(p);
        next.back().push_back(b);
      }
    }
    paths = std::move(next);
  }
  if (n >= 3) {
    const TransitionGraph g = transition_graph(f, eps);
    for (unsigned level = 3; level <= n; ++level) {
      std::vector<std::vector<std::uint32_t>> next;
      for (const auto& p : paths) {
        for (unsigned b : g.succ[p.back()]) {
          if (next.size() >= budget) {
            throw Error(Errc::budget_exceeded, "orbit cover exceeds " + std::to_string(budget) + " paths");
          }
          next.push_back(p);
          next.back().push_back(b);
        }
      }
      paths = std::move(next);
    }
  }
  std::sort(paths.begin(), paths.end());
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
  c.paths = std::move(paths);
  return c;
}

std::vector<unsigned> project_k(const OrbitCover& c, unsigned k) {
  if (k < 1 || k > c.depth) {
    throw Error(Errc::index_out_of_range, "k = " + std::to_string(k) + " outside 1.." + std::to_string(c.depth));
  }
  std::vector<unsigned> out;
  for (const auto& p : c.paths) out.push_back(p[k - 1]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool cover_contains(const OrbitCover& c, const SeqPrefix& prefix) {
  if (prefix.size() != c.depth) throw Error(Errc::length_mismatch, "prefix length differs from cover depth");
  return std::any_of(c.paths.begin(), c.paths.end(), [&](const std::vector<std::uint32_t>& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!grid_cell(c.m, p[i]).contains(prefix[i])) return false;
    }
    return true;
  });
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

DepthConnectivity depth_connectivity(const OrbitCover& c) {
  if (c.values_connected != Tri::yes) {
    throw Error(Errc::hypothesis_not_checked, "values of the map are not known to be connected");
  }
  for (unsigned level = 1; level <= c.depth; ++level) {
    std::vector<std::vector<std::uint32_t>> tubes;
    for (const auto& p : c.paths) tubes.emplace_back(p.begin(), p.begin() + level);
    std::sort(tubes.begin(), tubes.end());
    tubes.erase(std::unique(tubes.begin(), tubes.end()), tubes.end());
    DisjointSets ds(tubes.size());
    for (std::size_t i = 0; i < tubes.size(); ++i) {
      for (std::size_t j = i + 1; j < tubes.size(); ++j) {
        bool adjacent = true;
        for (unsigned k = 0; k < level && adjacent; ++k) {
          const auto a = tubes[i][k], b = tubes[j][k];
          adjacent = (a > b ? a - b : b - a) <= 1;
        }
        if (adjacent) ds.unite(i, j);
      }
    }
    const std::size_t root = ds.find(0);
    for (std::size_t i = 1; i < tubes.size(); ++i) {
      if (ds.find(i) != root) return {false, level, tubes.size()};
    }
  }
  return {};
}

std::vector<SeqPrefix> inverse_limit_prefixes(const std::vector<IntervalMap>& fs, const Scalar& z, unsigned n) {
  if (fs.empty()) throw Error(Errc::empty_input, "no bonding maps");
  if (n == 0) throw Error(Errc::invalid_argument, "prefix length must be >= 1");
  std::vector<SeqPrefix> out;
  std::vector<unsigned> word(n > 0 ? n - 1 : 0, 0);
  while (true) {
    // Extend along this word: x_{i+1} ranges over f_{p_i}^{-1}(x_i).
    std::vector<SeqPrefix> partial{{z}};
    for (unsigned i = 0; i + 1 < n && !partial.empty(); ++i) {
      const IntervalMap& f = fs[word[i]];
      std::vector<SeqPrefix> next;
      for (const auto& p : partial) {
        auto pre = f.preimage(p.back());
        if (!pre) continue;
        if (!pre->is_finite()) throw Error(Errc::not_finite_valued, "preimage under '" + f.name() + "' is an interval");
        for (const auto& x : pre->point_values()) {
          if (f(x) != p.back()) continue;
          next.push_back(p);
          next.back().push_back(x);
        }
      }
      partial = std::move(next);
    }
    out.insert(out.end(), partial.begin(), partial.end());
    unsigned i = 0;
    while (i < word.size() && word[i] + 1 == fs.size()) word[i++] = 0;
    if (i == word.size()) break;
    ++word[i];
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace orbitkit
