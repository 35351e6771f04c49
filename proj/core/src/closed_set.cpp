#include "orbitkit/closed_set.hpp"

#include <algorithm>

#include "orbitkit/error.hpp"

namespace orbitkit {

std::optional<Span> intersect(const Span& a, const Span& b) {
  Span r;
  if (a.lo > b.lo) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed;
  } else if (b.lo > a.lo) {
    r.lo = b.lo;
    r.lo_closed = b.lo_closed;
  } else {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi < b.hi) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed;
  } else if (b.hi < a.hi) {
    r.hi = b.hi;
    r.hi_closed = b.hi_closed;
  } else {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed && b.hi_closed;
  }
  if (r.empty()) return std::nullopt;
  return r;
}

namespace {

void check_unit(const Scalar& x) {
  if (x < 0 || x > 1) throw Error(Errc::out_of_range, "endpoint " + to_string(x) + " outside [0,1]");
}

std::vector<Interval> merge_sorted(std::vector<Interval> parts) {
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
  });
  std::vector<Interval> out;
  out.reserve(parts.size());
  for (auto& p : parts) {
    if (!out.empty() && p.lo <= out.back().hi) {
      if (p.hi > out.back().hi) out.back().hi = p.hi;
    } else {
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<Interval> coarsen_parts(std::span<const Interval> parts, unsigned cells) {
  const Scalar m(cells);
  std::vector<Interval> grid;
  grid.reserve(parts.size());
  for (const auto& p : parts) {
    mpz_class lo_cell = floor_of(Scalar(p.lo * m));
    mpz_class hi_cell = ceil_of(Scalar(p.hi * m));
    if (hi_cell == lo_cell) {
      // A point on a grid line: take the cell to its right (left at x = 1).
      if (hi_cell < cells) {
        hi_cell += 1;
      } else {
        lo_cell -= 1;
      }
    }
    grid.push_back({Scalar(lo_cell, cells), Scalar(hi_cell, cells)});
    grid.back().lo.canonicalize();
    grid.back().hi.canonicalize();
  }
  return merge_sorted(std::move(grid));
}

}  // namespace

ClosedSet ClosedSet::canonicalize(std::vector<Interval> parts) {
  if (parts.empty()) throw Error(Errc::empty_input, "no parts to canonicalize");
  for (const auto& p : parts) {
    check_unit(p.lo);
    check_unit(p.hi);
    if (p.hi < p.lo) {
      throw Error(Errc::invalid_argument, "inverted interval [" + to_string(p.lo) + "," + to_string(p.hi) + "]");
    }
  }
  auto merged = merge_sorted(std::move(parts));
  if (merged.size() > kComponentBudget) {
    return ClosedSet(coarsen_parts(merged, kCoarseningCells), true);
  }
  return ClosedSet(std::move(merged), false);
}

ClosedSet ClosedSet::point(const Scalar& x) {
  check_unit(x);
  return ClosedSet({Interval::point(x)}, false);
}

ClosedSet ClosedSet::interval(const Scalar& lo, const Scalar& hi) {
  return canonicalize({Interval{lo, hi}});
}

ClosedSet ClosedSet::points(std::span<const Scalar> xs) {
  std::vector<Interval> parts;
  parts.reserve(xs.size());
  for (const auto& x : xs) parts.push_back(Interval::point(x));
  return canonicalize(std::move(parts));
}

ClosedSet ClosedSet::unit() { return ClosedSet({Interval{Scalar(0), Scalar(1)}}, false); }

ClosedSet ClosedSet::with_outer(bool outer) const {
  ClosedSet copy = *this;
  copy.outer_ = outer;
  return copy;
}

bool ClosedSet::contains(const Scalar& x) const {
  auto it = std::lower_bound(parts_.begin(), parts_.end(), x,
                             [](const Interval& p, const Scalar& v) { return p.hi < v; });
  return it != parts_.end() && it->lo <= x;
}

bool ClosedSet::subset_of(const ClosedSet& other) const {
  // Each component must sit inside a single component of `other`.
  auto it = other.parts_.begin();
  for (const auto& p : parts_) {
    while (it != other.parts_.end() && it->hi < p.lo) ++it;
    if (it == other.parts_.end() || it->lo > p.lo || it->hi < p.hi) return false;
  }
  return true;
}

bool ClosedSet::intersects(const ClosedSet& other) const {
  std::size_t i = 0, j = 0;
  while (i < parts_.size() && j < other.parts_.size()) {
    const auto& a = parts_[i];
    const auto& b = other.parts_[j];
    if (a.hi < b.lo) {
      ++i;
    } else if (b.hi < a.lo) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

bool ClosedSet::is_finite() const {
  return std::all_of(parts_.begin(), parts_.end(), [](const Interval& p) { return p.is_point(); });
}

bool ClosedSet::is_unit() const { return parts_.size() == 1 && parts_[0].lo == 0 && parts_[0].hi == 1; }

std::vector<Scalar> ClosedSet::point_values() const {
  std::vector<Scalar> out;
  out.reserve(parts_.size());
  for (const auto& p : parts_) out.push_back(p.lo);
  return out;
}

std::size_t ClosedSet::hash() const noexcept {
  std::size_t h = parts_.size();
  for (const auto& p : parts_) {
    h = h * 31 + hash_value(p.lo);
    h = h * 31 + hash_value(p.hi);
  }
  return h;
}

std::optional<ClosedSet> combine(SetOp op, const ClosedSet& a, const ClosedSet& b) {
  if (op == SetOp::set_union) return set_union(a, b);
  return set_intersection(a, b);
}

ClosedSet set_union(const ClosedSet& a, const ClosedSet& b) {
  std::vector<Interval> parts(a.components().begin(), a.components().end());
  parts.insert(parts.end(), b.components().begin(), b.components().end());
  ClosedSet out = ClosedSet::canonicalize(std::move(parts));
  return out.with_outer(out.outer() || a.outer() || b.outer());
}

std::optional<ClosedSet> set_intersection(const ClosedSet& a, const ClosedSet& b) {
  std::vector<Interval> parts;
  auto pa = a.components();
  auto pb = b.components();
  std::size_t i = 0, j = 0;
  while (i < pa.size() && j < pb.size()) {
    const Scalar& lo = max_of(pa[i].lo, pb[j].lo);
    const Scalar& hi = min_of(pa[i].hi, pb[j].hi);
    if (lo <= hi) parts.push_back({lo, hi});
    if (pa[i].hi < pb[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  if (parts.empty()) return std::nullopt;
  ClosedSet out = ClosedSet::canonicalize(std::move(parts));
  return out.with_outer(out.outer() || a.outer() || b.outer());
}

ClosedSet coarsen(const ClosedSet& s, unsigned cells) {
  if (cells == 0) throw Error(Errc::invalid_argument, "coarsening grid needs at least one cell");
  return ClosedSet::canonicalize(coarsen_parts(s.components(), cells)).with_outer(true);
}

Scalar distance_to(const Scalar& x, const ClosedSet& s) {
  auto parts = s.components();
  auto it = std::lower_bound(parts.begin(), parts.end(), x,
                             [](const Interval& p, const Scalar& v) { return p.hi < v; });
  Scalar best;
  bool have = false;
  if (it != parts.end()) {
    if (it->lo <= x) return Scalar(0);
    best = it->lo - x;
    have = true;
  }
  if (it != parts.begin()) {
    Scalar d = x - std::prev(it)->hi;
    if (!have || d < best) best = d;
  }
  return best;
}

Scalar excess(const ClosedSet& a, const ClosedSet& b) {
  // d(., B) is piecewise linear; on A its maximum sits at an endpoint of a
  // component of A or at the midpoint of a gap of B lying inside A.
  Scalar best(0);
  for (const auto& p : a.components()) {
    Scalar d = distance_to(p.lo, b);
    if (d > best) best = d;
    if (!p.is_point()) {
      d = distance_to(p.hi, b);
      if (d > best) best = d;
    }
  }
  auto pb = b.components();
  for (std::size_t i = 0; i + 1 < pb.size(); ++i) {
    Scalar mid = (pb[i].hi + pb[i + 1].lo) / 2;
    if (a.contains(mid)) {
      Scalar d = mid - pb[i].hi;
      if (d > best) best = d;
    }
  }
  return best;
}

Scalar hausdorff(const ClosedSet& a, const ClosedSet& b) {
  Scalar ab = excess(a, b);
  Scalar ba = excess(b, a);
  return ab < ba ? ba : ab;
}

Scalar maxdist(const ClosedSet& a, const ClosedSet& b) {
  Scalar d1 = b.max() - a.min();
  Scalar d2 = a.max() - b.min();
  if (d1 < 0) d1 = -d1;
  if (d2 < 0) d2 = -d2;
  return d1 < d2 ? d2 : d1;
}

RhoPrefix rho_prefix(std::span<const Scalar> u, std::span<const Scalar> v, std::size_t n) {
  if (u.size() < n || v.size() < n) {
    throw Error(Errc::length_mismatch, "prefix shorter than n = " + std::to_string(n));
  }
  RhoPrefix r{Scalar(0), Scalar(1)};
  for (std::size_t i = 0; i < n; ++i) {
    check_unit(u[i]);
    check_unit(v[i]);
    r.tail_bound /= 2;
    r.value += abs_diff(u[i], v[i]) * r.tail_bound;
  }
  return r;
}

namespace {

class SetLiteralParser {
 public:
  explicit SetLiteralParser(std::string_view text) : text_(text) {}

  ClosedSet parse() {
    std::vector<Interval> parts;
    skip_ws();
    if (pos_ == text_.size()) fail("empty set literal");
    parts.push_back(term());
    skip_ws();
    while (pos_ < text_.size()) {
      expect('|');
      parts.push_back(term());
      skip_ws();
    }
    return ClosedSet::canonicalize(std::move(parts));
  }

 private:
  Interval term() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected '[' or '{'");
    char open = text_[pos_++];
    if (open == '{') {
      Scalar x = number("}");
      expect('}');
      return Interval::point(x);
    }
    if (open == '[') {
      Scalar lo = number(",");
      expect(',');
      Scalar hi = number("]");
      expect(']');
      return {lo, hi};
    }
    fail(std::string("unexpected '") + open + "'");
  }

  Scalar number(std::string_view terminators) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && terminators.find(text_[pos_]) == std::string_view::npos) ++pos_;
    return parse_scalar(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw Error(Errc::parse_error, what + " at column " + std::to_string(pos_ + 1) + " of '" +
                                       std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ClosedSet parse_set(std::string_view text) { return SetLiteralParser(text).parse(); }

std::string format_set(const ClosedSet& s) {
  std::string out;
  for (const auto& p : s.components()) {
    if (!out.empty()) out += "|";
    if (p.is_point()) {
      out += "{" + to_string(p.lo) + "}";
    } else {
      out += "[" + to_string(p.lo) + "," + to_string(p.hi) + "]";
    }
  }
  return out;
}

}  // namespace orbitkit
