#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orbitkit/rational.hpp"

namespace orbitkit {

/// Closed interval [lo, hi] of [0,1]; lo == hi encodes a single point.
struct Interval {
  Scalar lo;
  Scalar hi;

  static Interval point(const Scalar& x) { return {x, x}; }
  bool is_point() const { return lo == hi; }
  bool contains(const Scalar& x) const { return lo <= x && x <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Interval with independent open/closed flags at each end. Used for piece
/// domains and for intermediate results that need not be closed.
struct Span {
  Scalar lo;
  Scalar hi;
  bool lo_closed = true;
  bool hi_closed = true;

  bool empty() const { return hi < lo || (lo == hi && !(lo_closed && hi_closed)); }
  bool contains(const Scalar& x) const {
    if (x < lo || x > hi) return false;
    if (x == lo && !lo_closed) return false;
    if (x == hi && !hi_closed) return false;
    return true;
  }
  bool is_closed() const { return lo_closed && hi_closed; }

  friend bool operator==(const Span&, const Span&) = default;
};

std::optional<Span> intersect(const Span& a, const Span& b);

/// Nonempty compact subset of [0,1] represented as a finite union of closed
/// intervals and points in canonical form: sorted, pairwise disjoint, with a
/// strictly positive gap between consecutive components.
///
/// The `outer` flag marks a set that is a sound superset of the true result
/// (after coarsening, or after closing a non-closed image).
class ClosedSet {
 public:
  /// Component budget; larger results are coarsened to grid cells.
  static constexpr std::size_t kComponentBudget = 4096;
  static constexpr unsigned kCoarseningCells = 4096;

  /// Builds the canonical form of the union of `parts`. Touching or
  /// overlapping parts are merged.
  static ClosedSet canonicalize(std::vector<Interval> parts);

  static ClosedSet point(const Scalar& x);
  static ClosedSet interval(const Scalar& lo, const Scalar& hi);
  static ClosedSet points(std::span<const Scalar> xs);
  static ClosedSet unit();

  std::span<const Interval> components() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  const Scalar& min() const { return parts_.front().lo; }
  const Scalar& max() const { return parts_.back().hi; }

  bool outer() const { return outer_; }
  ClosedSet with_outer(bool outer) const;

  bool contains(const Scalar& x) const;
  bool subset_of(const ClosedSet& other) const;
  bool intersects(const ClosedSet& other) const;
  /// True when every component is a single point.
  bool is_finite() const;
  /// True when the set is a single interval or point.
  bool is_connected() const { return parts_.size() == 1; }
  bool is_unit() const;
  /// Point components, in order. Only meaningful when is_finite().
  std::vector<Scalar> point_values() const;

  std::size_t hash() const noexcept;

  /// Equality of the point sets; the outer flag is metadata and ignored.
  friend bool operator==(const ClosedSet& a, const ClosedSet& b) { return a.parts_ == b.parts_; }

 private:
  explicit ClosedSet(std::vector<Interval> canonical, bool outer)
      : parts_(std::move(canonical)), outer_(outer) {}

  std::vector<Interval> parts_;
  bool outer_ = false;
};

struct ClosedSetHash {
  std::size_t operator()(const ClosedSet& s) const noexcept { return s.hash(); }
};

enum class SetOp { set_union, set_intersection };

/// Union or intersection of canonical sets. An empty intersection returns
/// std::nullopt; that is a normal outcome, not an error.
std::optional<ClosedSet> combine(SetOp op, const ClosedSet& a, const ClosedSet& b);

ClosedSet set_union(const ClosedSet& a, const ClosedSet& b);
std::optional<ClosedSet> set_intersection(const ClosedSet& a, const ClosedSet& b);

/// Coarsens to the union of enclosing grid cells [i/m, (i+1)/m]; the result
/// has outer == true.
ClosedSet coarsen(const ClosedSet& s, unsigned cells);

/// d(x, S) = min over s in S of |x - s|.
Scalar distance_to(const Scalar& x, const ClosedSet& s);

/// Directed excess sup_{a in A} d(a, B). A point of A is at distance >= r
/// from B exactly when excess(A, B) >= r.
Scalar excess(const ClosedSet& a, const ClosedSet& b);

/// Hausdorff distance max(excess(A,B), excess(B,A)).
Scalar hausdorff(const ClosedSet& a, const ClosedSet& b);

/// max over a in A, b in B of |a - b|.
Scalar maxdist(const ClosedSet& a, const ClosedSet& b);

/// Finite prefix of a point of [0,1]^N.
using SeqPrefix = std::vector<Scalar>;

struct RhoPrefix {
  Scalar value;       ///< sum_{i=1..n} |u_i - v_i| / 2^i
  Scalar tail_bound;  ///< 2^{-n}; any extensions lie within [value, value + tail_bound]
};

RhoPrefix rho_prefix(std::span<const Scalar> u, std::span<const Scalar> v, std::size_t n);

/// Set literal: `term ("|" term)*` with `term := "[" q "," q "]" | "{" q "}"`.
ClosedSet parse_set(std::string_view text);
std::string format_set(const ClosedSet& s);

}  // namespace orbitkit
