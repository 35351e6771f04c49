#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitkit/set_map.hpp"

namespace orbitkit {

/// Continuous piecewise-linear self-map of [0,1] given by its knots
/// (x_0, y_0), ..., (x_k, y_k) with 0 = x_0 < ... < x_k = 1.
class IntervalMap {
 public:
  struct Knot {
    Scalar x;
    Scalar y;
  };

  IntervalMap(std::string name, std::vector<Knot> knots);

  const std::string& name() const { return name_; }
  const std::vector<Knot>& knots() const { return knots_; }

  Scalar operator()(const Scalar& x) const;

  /// f^{-1}(y); nullopt when y is not attained. Flat pieces contribute
  /// whole intervals.
  std::optional<ClosedSet> preimage(const Scalar& y) const;

  /// f([0,1]) = [min y_i, max y_i].
  ClosedSet range() const;
  bool onto() const { return range().is_unit(); }

  /// The same map as a singleton-valued SetValuedMap.
  SetValuedMap as_set_map() const;

 private:
  std::string name_;
  std::vector<Knot> knots_;
};

IntervalMap tent_map();
IntervalMap identity_map();
IntervalMap constant_map(const Scalar& c);

/// F(x) = f_1^{-1}(x) u ... u f_k^{-1}(x), together with the factors for
/// inverse-limit cross-checks.
struct PreimageUnion {
  SetValuedMap map;
  std::vector<IntervalMap> factors;
};

/// Throws NotOnto naming the first factor whose image is not [0,1].
PreimageUnion preimage_union_map(std::vector<IntervalMap> fs);

/// f_1^{-1}(x0) n ... n f_k^{-1}(x0); nullopt when empty.
std::optional<ClosedSet> common_preimage(const std::vector<IntervalMap>& fs, const Scalar& x0);

}  // namespace orbitkit
