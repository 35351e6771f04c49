#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "orbitkit/closed_set.hpp"

namespace orbitkit {

enum class Tri { no, yes, unknown };

std::string_view tri_name(Tri t) noexcept;

/// y = slope * x + intercept
struct Affine {
  Scalar slope;
  Scalar intercept;

  static Affine through(const Scalar& x0, const Scalar& y0, const Scalar& x1, const Scalar& y1);
  Scalar operator()(const Scalar& x) const { return slope * x + intercept; }

  friend bool operator==(const Affine&, const Affine&) = default;
};

/// Graph of a single-valued affine map over a domain.
struct SegmentPiece {
  Span domain;
  Affine f;
};

/// F(x) = [lower(x), upper(x)] over a domain; covers graphs bounded by two
/// affine curves such as G(t) = [t, 1].
struct BandPiece {
  Span domain;
  Affine lower;
  Affine upper;
};

/// F(x) = value for every x in the domain.
struct RectanglePiece {
  Span domain;
  ClosedSet value;
};

/// F(at) contains value.
struct PointPiece {
  Scalar at;
  ClosedSet value;
};

using MapPiece = std::variant<SegmentPiece, BandPiece, RectanglePiece, PointPiece>;

Span piece_domain(const MapPiece& piece);

/// Set-valued map F: [0,1] -> 2^[0,1] whose graph is the union of the graphs
/// of its pieces. F(x) is the union of the values of all pieces whose domain
/// contains x.
class SetValuedMap {
 public:
  /// Validates domains (nonempty, inside [0,1]), images (inside [0,1]) and
  /// coverage; throws DomainGap if some x has no piece.
  SetValuedMap(std::string name, std::vector<MapPiece> pieces);

  const std::string& name() const { return name_; }
  const std::vector<MapPiece>& pieces() const { return pieces_; }

  /// Sorted, deduplicated: 0, 1, every domain endpoint and point location.
  const std::vector<Scalar>& breakpoints() const { return breakpoints_; }

  /// Whether every F(x) is connected, decided at construction.
  Tri values_connected() const { return values_connected_; }
  /// Whether Gr(F) is closed, decided at construction.
  bool graph_closed() const { return graph_closed_; }
  /// Whether every F(x) is a single point.
  bool singleton_valued() const { return singleton_valued_; }

 private:
  std::string name_;
  std::vector<MapPiece> pieces_;
  std::vector<Scalar> breakpoints_;
  Tri values_connected_ = Tri::unknown;
  bool graph_closed_ = false;
  bool singleton_valued_ = false;
};

// Piece construction helpers. `flags` is one of "cc", "co", "oc", "oo".
Span make_domain(const Scalar& lo, const Scalar& hi, std::string_view flags = "cc");
MapPiece segment(const Scalar& lo, const Scalar& hi, std::string_view flags, const Scalar& y_lo,
                 const Scalar& y_hi);
MapPiece band(const Scalar& lo, const Scalar& hi, std::string_view flags, const Scalar& lower_lo,
              const Scalar& lower_hi, const Scalar& upper_lo, const Scalar& upper_hi);
MapPiece rectangle(const Scalar& lo, const Scalar& hi, std::string_view flags, ClosedSet value);
MapPiece point_rule(const Scalar& at, ClosedSet value);

/// F(x).
ClosedSet evaluate(const SetValuedMap& f, const Scalar& x);

/// F(A) = union of F(x) over x in A. Exact when Gr(F) is closed; otherwise
/// the closure of F(A) is returned with outer == true.
ClosedSet image(const SetValuedMap& f, const ClosedSet& a);

/// Closure of F(S) for a possibly open span S. Used where a sound
/// over-approximation of the image of an open cell is needed.
ClosedSet image_closure(const SetValuedMap& f, const Span& s);

/// F^n(x), n >= 1.
ClosedSet iterate(const SetValuedMap& f, const Scalar& x, unsigned n);

/// F^1(x), ..., F^n(x).
std::vector<ClosedSet> iterate_sequence(const SetValuedMap& f, const Scalar& x, unsigned n);

/// One-sided limit sets of the piecewise graph at x: the union of the limit
/// values of every piece whose domain contains a left (right) neighbourhood
/// of x. Empty when no piece does (x = 0 on the left, x = 1 on the right).
std::optional<ClosedSet> left_limit(const SetValuedMap& f, const Scalar& x);
std::optional<ClosedSet> right_limit(const SetValuedMap& f, const Scalar& x);

enum class Semicontinuity { upper, lower };

struct SemicontinuityVerdict {
  Semicontinuity kind;
  bool holds = false;
  std::optional<Scalar> witness_x;
  /// For usc: the limit set not contained in F(x). For lsc: the one-sided
  /// limit set that fails to contain F(x).
  std::optional<ClosedSet> witness_limit;
};

/// Decides upper semicontinuity by checking that the graph is closed: at
/// every breakpoint x, L-(x) and L+(x) must lie inside F(x).
SemicontinuityVerdict usc_check(const SetValuedMap& f);

/// Decides lower semicontinuity: at every breakpoint x, F(x) must lie inside
/// L-(x) (when x > 0) and inside L+(x) (when x < 1).
SemicontinuityVerdict lsc_check(const SetValuedMap& f);

/// Re-derives the verdict's claim at its witness point.
bool recheck(const SetValuedMap& f, const SemicontinuityVerdict& v);

/// {x : y in F(x)}; nullopt when empty. Closure is taken for open piece
/// domains, which is exact when the graph is closed.
std::optional<ClosedSet> preimage(const SetValuedMap& f, const Scalar& y);

struct ConnectedValues {
  Tri connected = Tri::unknown;
  std::optional<Scalar> witness;  ///< some x with F(x) disconnected
};

/// Decides whether every F(x) is a single interval. Between consecutive
/// breakpoints the connectivity of F(x) depends only on the order of the
/// component endpoints, which changes only where two endpoint functions
/// cross, so testing breakpoints, crossings and the midpoints between them
/// is exhaustive.
ConnectedValues values_connected_check(const SetValuedMap& f);

/// True when every F(x) is a finite set of points (no interval values).
bool finite_valued(const SetValuedMap& f);

/// Textual piece grammar used by config files:
///   segment <lo> <hi> <flags> -> <f(lo)> <f(hi)>
///   band <lo> <hi> <flags> -> <lower(lo)> <lower(hi)> <upper(lo)> <upper(hi)>
///   rect <lo> <hi> <flags> -> <set-literal>
///   point <x> -> <set-literal>
MapPiece parse_piece(std::string_view line);
std::string format_piece(const MapPiece& piece);

}  // namespace orbitkit
