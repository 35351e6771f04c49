#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "orbitkit/finite_system.hpp"
#include "orbitkit/set_map.hpp"

namespace orbitkit {

enum class SensKind { strong, sensitive, weak, liyorke };
enum class SensStatus { witnessed_yes, no_witness_at_budget };

std::string_view kind_name(SensKind k) noexcept;
std::string_view sens_status_name(SensStatus s) noexcept;

struct ProbeBudget {
  Scalar base_step{1, 16};  ///< base points k * base_step in [0,1]
  std::vector<Scalar> deltas{Scalar(1, 4), Scalar(1, 16), Scalar(1, 64)};
  unsigned horizon = 64;    ///< largest power m tried
  unsigned cells = 16;      ///< candidate y include the points j/cells within delta of x
  /// Candidate y also include x -/+ delta/d for each d. Odd denominators
  /// keep candidates off the dyadic grid, whose orbits under doubling-type
  /// maps collapse onto 0 and 1.
  std::vector<unsigned> divisors{3, 5, 9, 17, 33, 65};
  unsigned separations = 10;  ///< Li-Yorke: required count of separated indices
  /// A candidate's sequence F(y), F^2(y), ... stops at the first set with
  /// more components than this, or the first coarsened set. Only exact
  /// prefixes are measured.
  unsigned max_components = 512;
};

/// Exact evidence for one base point x and one delta. For strong, sensitive
/// and weak, `m` is the power of F compared (for weak the orbit index is
/// m + 1). For Li-Yorke the window statistics are filled in and `m` is the
/// index of the largest separation.
struct SensitivityWitness {
  SensKind kind = SensKind::sensitive;
  Scalar x;
  Scalar y;
  Scalar delta;
  Scalar eps;
  unsigned m = 0;
  Scalar measured;

  // Li-Yorke only.
  unsigned window_lo = 0, window_hi = 0;
  Scalar eta;
  Scalar min_h;
  unsigned argmin = 0;
  unsigned separated_strict = 0;     ///< indices with H > eps
  unsigned separated_nonstrict = 0;  ///< indices with H >= eps
};

/// A proof that the property fails for every eps > 0.
struct ImpossibilityCertificate {
  enum class Kind {
    full_orbit,         ///< F^m(x) = [0,1] for all m, so no F^m(y) leaves V_eps(F^m(x))
    constant_values,    ///< F(x) is the same set for every x
    liyorke_dichotomy,  ///< orbits of y either merge with x's or stay at distance >= bound
  } kind = Kind::full_orbit;
  std::optional<Scalar> x;
  Scalar bound;  ///< liyorke_dichotomy: min over p of H([0,1], {p})
  std::optional<Scalar> observed_min;  ///< smallest H seen among never-merging candidates
};

std::string_view certificate_kind_name(ImpossibilityCertificate::Kind k) noexcept;

struct SensitivityVerdict {
  SensKind kind = SensKind::sensitive;
  SensStatus status = SensStatus::no_witness_at_budget;
  /// True when a certificate refutes the property outright.
  bool refuted = false;
  Scalar eps;
  ProbeBudget budget;
  std::vector<SensitivityWitness> witnesses;
  std::vector<ImpossibilityCertificate> certificates;
  /// First (x, delta) without a witness.
  std::optional<std::pair<Scalar, Scalar>> first_miss;
  /// Sequences cut short by max_components or coarsening, summed over bases.
  unsigned truncated = 0;
};

/// kind must be strong, sensitive or weak.
SensitivityVerdict sensitivity_probe(SensKind kind, const SetValuedMap& f, const Scalar& eps,
                                     const ProbeBudget& budget = {});

/// Windowed surrogate: min over the window below eta and at least
/// budget.separations indices with H > eps.
SensitivityVerdict liyorke_probe(const SetValuedMap& f, const Scalar& eps, const Scalar& eta, unsigned window_lo,
                                 unsigned window_hi, const ProbeBudget& budget = {});

/// Candidate y for base x and radius delta: x -/+ delta/2, x -/+ delta/d for
/// the budget's divisors, grid points j/cells and map breakpoints with
/// |y - x| < delta, excluding x. Sorted.
std::vector<Scalar> candidate_ys(const SetValuedMap& f, const Scalar& x, const Scalar& delta, const ProbeBudget& budget);

/// The exact quantity each kind compares with eps at power m:
/// strong: excess(F^m y, F^m x); sensitive: H(F^m x, F^m y);
/// weak: maxdist(F^m x, F^m y).
Scalar measure(SensKind kind, const SetValuedMap& f, const Scalar& x, const Scalar& y, unsigned m);

/// Recomputes the witness from (F, x, y, m) and checks it.
bool replay(const SetValuedMap& f, const SensitivityWitness& w);

/// Whether the witness also satisfies the weaker property `as` at the same
/// eps: strong -> sensitive -> weak, and Li-Yorke -> sensitive.
bool replay_as(const SetValuedMap& f, const SensitivityWitness& w, SensKind as);

bool recheck(const SetValuedMap& f, const ImpossibilityCertificate& c);

/// Discrete-metric probes on a finite system over powers 1..horizon, one
/// entry per state: does the kind's condition hold at that state?
std::vector<bool> sensitivity_probe_finite(SensKind kind, const FiniteSystem& s, unsigned horizon);

}  // namespace orbitkit
