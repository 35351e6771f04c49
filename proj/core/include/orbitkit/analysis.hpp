#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "orbitkit/finite_system.hpp"
#include "orbitkit/set_map.hpp"
#include "orbitkit/transition.hpp"

namespace orbitkit {

enum class Status { certified_yes, certified_no, inconclusive };

std::string_view status_name(Status s) noexcept;

/// Resolution and horizon a verdict was obtained at.
struct Budget {
  Scalar eps;
  unsigned horizon = 0;
};

// --- transitivity -----------------------------------------------------------

/// x in cell u with F^k(x) meeting cell v.
struct TransitivityWitness {
  unsigned u = 0;
  unsigned v = 0;
  Scalar x;
  unsigned k = 0;
};

/// Open cells u, v such that no walk of the atom graph leads from u to v.
/// `reachable` is the set of atoms reachable from u in >= 1 steps; it is
/// closed under the atom edges and omits v.
struct TransitivityRefutation {
  unsigned u = 0;
  unsigned v = 0;
  std::vector<unsigned> reachable;
};

struct TransitivityVerdict {
  Status status = Status::inconclusive;
  Budget budget;
  std::vector<TransitivityWitness> witnesses;  ///< one per ordered cell pair when certified_yes
  std::optional<TransitivityRefutation> refutation;
  std::size_t pairs_witnessed = 0;
};

/// certified_no: some pair of open cells is mutually unreachable in the
/// over-approximating atom graph. certified_yes: every ordered pair of
/// closed cells (U, V) has an x in U and k <= K with F^k(x) meeting V,
/// re-checked exactly. Candidates x are forward samples of U and backward
/// preimages (depth <= 12) of the midpoint of V. This certifies transitivity for all open sets that
/// contain a grid cell.
TransitivityVerdict transitivity_probe(const SetValuedMap& f, const Scalar& eps, unsigned horizon);

/// Recomputes F^k(x) from scratch and checks that it meets cell v.
bool recheck(const SetValuedMap& f, const Scalar& eps, const TransitivityWitness& w);
/// Checks closure and omission of the refutation against a fresh atom graph.
bool recheck(const SetValuedMap& f, const Scalar& eps, const TransitivityRefutation& r);

/// Sample points of cell i used as transitivity witnesses: endpoints,
/// midpoint, map breakpoints, and backward images (depth <= 6) of the points
/// where the map has point rules.
std::vector<Scalar> witness_candidates(const SetValuedMap& f, unsigned m, unsigned i);

// --- weak density -----------------------------------------------------------

/// Closed J with F(J) inside J and F(p) inside J, plus an open interval
/// (gap_lo, gap_hi) disjoint from J. Then no F^k(p) meets that interval.
struct TrapCertificate {
  enum class Kind { orbit_cycle, cell_union } kind = Kind::orbit_cycle;
  ClosedSet trap = ClosedSet::unit();
  Scalar gap_lo;
  Scalar gap_hi;
  unsigned cycle_start = 0;  ///< for orbit_cycle: F^start(p) = F^(start+period)(p)
  unsigned period = 0;
};

std::string_view trap_kind_name(TrapCertificate::Kind k) noexcept;

struct DensityReport {
  Status status = Status::inconclusive;
  Budget budget;
  Scalar p;
  /// first_hit[i] = least k <= K with F^k(p) meeting cell i.
  std::vector<std::optional<unsigned>> first_hit;
  std::optional<TrapCertificate> trap;
};

DensityReport weak_dense_probe(const SetValuedMap& f, const Scalar& p, const Scalar& eps, unsigned horizon);

bool recheck(const SetValuedMap& f, const Scalar& p, const TrapCertificate& c);

// --- dense orbits -----------------------------------------------------------

/// Exact orbit prefix starting at p that meets every eps-cell. Throws
/// NotWeakDense naming a cell that the current point cannot reach within K.
SeqPrefix dense_orbit_build(const SetValuedMap& f, const Scalar& p, const Scalar& eps, unsigned horizon);

/// Walk starting at `start` that visits every state. Throws NotWeakDense.
std::vector<unsigned> dense_orbit_build(const FiniteSystem& s, unsigned start);

/// x_{i+1} in F(x_i) for every i.
bool is_orbit_prefix(const SetValuedMap& f, const SeqPrefix& xs);
bool is_orbit_prefix(const FiniteSystem& s, const std::vector<unsigned>& xs);

// --- minimality -------------------------------------------------------------

struct MinimalityVerdict {
  Status dense_minimal = Status::inconclusive;
  Status weak_dense_minimal = Status::inconclusive;
  /// For interval maps: the sample point that decided a certified_no.
  std::optional<Scalar> refuting_point;
};

/// Exact for finite systems: weak dense minimality by reachability, dense
/// minimality by constructing a covering walk from every state.
MinimalityVerdict minimality_check(const FiniteSystem& s);

/// Per-sample probes aggregated; an empty sample means cell endpoints and
/// midpoints.
MinimalityVerdict minimality_check(const SetValuedMap& f, const Scalar& eps, unsigned horizon,
                                   std::vector<Scalar> sample = {});

}  // namespace orbitkit
