#include "orbitkit/interval_map.hpp"

#include <algorithm>

#include "orbitkit/error.hpp"

namespace orbitkit {

IntervalMap::IntervalMap(std::string name, std::vector<Knot> knots)
    : name_(std::move(name)), knots_(std::move(knots)) {
  if (knots_.size() < 2) throw Error(Errc::invalid_argument, "map '" + name_ + "' needs at least two knots");
  if (knots_.front().x != 0 || knots_.back().x != 1) {
    throw Error(Errc::invalid_argument, "knots of '" + name_ + "' must start at 0 and end at 1");
  }
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (knots_[i].y < 0 || knots_[i].y > 1) {
      throw Error(Errc::out_of_range, "knot value " + to_string(knots_[i].y) + " outside [0,1]");
    }
    if (i > 0 && knots_[i].x <= knots_[i - 1].x) {
      throw Error(Errc::invalid_argument, "knots of '" + name_ + "' must be strictly increasing");
    }
  }
}

Scalar IntervalMap::operator()(const Scalar& x) const {
  if (x < 0 || x > 1) throw Error(Errc::out_of_range, "x = " + to_string(x) + " outside [0,1]");
  auto it = std::lower_bound(knots_.begin(), knots_.end(), x, [](const Knot& k, const Scalar& v) { return k.x < v; });
  if (it->x == x) return it->y;
  const Knot& b = *it;
  const Knot& a = *std::prev(it);
  return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

std::optional<ClosedSet> IntervalMap::preimage(const Scalar& y) const {
  std::vector<Interval> parts;
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    const Knot& a = knots_[i];
    const Knot& b = knots_[i + 1];
    if (a.y == b.y) {
      if (a.y == y) parts.push_back({a.x, b.x});
      continue;
    }
    if (y < min_of(a.y, b.y) || y > max_of(a.y, b.y)) continue;
    parts.push_back(Interval::point(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y)));
  }
  if (parts.empty()) return std::nullopt;
  return ClosedSet::canonicalize(std::move(parts));
}

ClosedSet IntervalMap::range() const {
  auto [lo, hi] = std::minmax_element(knots_.begin(), knots_.end(),
                                      [](const Knot& a, const Knot& b) { return a.y < b.y; });
  return ClosedSet::interval(lo->y, hi->y);
}

SetValuedMap IntervalMap::as_set_map() const {
  std::vector<MapPiece> pieces;
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    pieces.push_back(segment(knots_[i].x, knots_[i + 1].x, "cc", knots_[i].y, knots_[i + 1].y));
  }
  return SetValuedMap(name_, std::move(pieces));
}

IntervalMap tent_map() {
  return IntervalMap("tent", {{Scalar(0), Scalar(0)}, {Scalar(1, 2), Scalar(1)}, {Scalar(1), Scalar(0)}});
}

IntervalMap identity_map() { return IntervalMap("identity", {{Scalar(0), Scalar(0)}, {Scalar(1), Scalar(1)}}); }

IntervalMap constant_map(const Scalar& c) {
  return IntervalMap("constant(" + to_string(c) + ")", {{Scalar(0), c}, {Scalar(1), c}});
}

PreimageUnion preimage_union_map(std::vector<IntervalMap> fs) {
  if (fs.empty()) throw Error(Errc::empty_input, "preimage union needs at least one map");
  std::vector<MapPiece> pieces;
  std::string name = "preimage_union(";
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const auto& f = fs[k];
    if (!f.onto()) throw Error(Errc::not_onto, "map '" + f.name() + "' has image " + format_set(f.range()));
    name += (k ? "," : "") + f.name();
    // Transpose each linear piece of Gr(f): y -> x.
    const auto& kn = f.knots();
    for (std::size_t i = 0; i + 1 < kn.size(); ++i) {
      const auto& a = kn[i];
      const auto& b = kn[i + 1];
      if (a.y == b.y) {
        pieces.push_back(point_rule(a.y, ClosedSet::interval(a.x, b.x)));
      } else if (a.y < b.y) {
        pieces.push_back(segment(a.y, b.y, "cc", a.x, b.x));
      } else {
        pieces.push_back(segment(b.y, a.y, "cc", b.x, a.x));
      }
    }
  }
  name += ")";
  return PreimageUnion{SetValuedMap(std::move(name), std::move(pieces)), std::move(fs)};
}

std::optional<ClosedSet> common_preimage(const std::vector<IntervalMap>& fs, const Scalar& x0) {
  std::optional<ClosedSet> acc;
  for (const auto& f : fs) {
    auto pre = f.preimage(x0);
    if (!pre) return std::nullopt;
    if (!acc) {
      acc = std::move(pre);
    } else {
      acc = set_intersection(*acc, *pre);
      if (!acc) return std::nullopt;
    }
  }
  return acc;
}

}  // namespace orbitkit
