#include "orbitkit/set_map.hpp"

#include <algorithm>
#include <sstream>

#include "orbitkit/error.hpp"

namespace orbitkit {

std::string_view tri_name(Tri t) noexcept {
  switch (t) {
    case Tri::no: return "false";
    case Tri::yes: return "true";
    case Tri::unknown: return "unknown";
  }
  return "unknown";
}

Affine Affine::through(const Scalar& x0, const Scalar& y0, const Scalar& x1, const Scalar& y1) {
  if (x0 == x1) {
    if (y0 != y1) throw Error(Errc::invalid_argument, "vertical segment at x = " + to_string(x0));
    return {Scalar(0), y0};
  }
  Scalar slope = (y1 - y0) / (x1 - x0);
  return {slope, Scalar(y0 - slope * x0)};
}

Span piece_domain(const MapPiece& piece) {
  return std::visit(
      [](const auto& p) -> Span {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PointPiece>) {
          return Span{p.at, p.at, true, true};
        } else {
          return p.domain;
        }
      },
      piece);
}

namespace {

bool in_unit(const Scalar& x) { return x >= 0 && x <= 1; }

// Value of an interval-domain piece at x, extended continuously to the
// closure of its domain. PointPiece has no limit value.
std::optional<Interval> piece_limit_value(const MapPiece& piece, const Scalar& x) {
  if (const auto* s = std::get_if<SegmentPiece>(&piece)) {
    return Interval::point(s->f(x));
  }
  if (const auto* b = std::get_if<BandPiece>(&piece)) {
    return Interval{b->lower(x), b->upper(x)};
  }
  return std::nullopt;
}

void append_value_at(const MapPiece& piece, const Scalar& x, std::vector<Interval>& out) {
  if (const auto* r = std::get_if<RectanglePiece>(&piece)) {
    out.insert(out.end(), r->value.components().begin(), r->value.components().end());
  } else if (const auto* p = std::get_if<PointPiece>(&piece)) {
    out.insert(out.end(), p->value.components().begin(), p->value.components().end());
  } else {
    out.push_back(*piece_limit_value(piece, x));
  }
}

bool value_outer(const MapPiece& piece) {
  if (const auto* r = std::get_if<RectanglePiece>(&piece)) return r->value.outer();
  if (const auto* p = std::get_if<PointPiece>(&piece)) return p->value.outer();
  return false;
}

std::string flags_of(const Span& s) {
  return std::string(1, s.lo_closed ? 'c' : 'o') + std::string(1, s.hi_closed ? 'c' : 'o');
}

// Affine functions whose values bound the components of the piece's value.
void endpoint_functions(const MapPiece& piece, std::vector<Affine>& out) {
  if (const auto* s = std::get_if<SegmentPiece>(&piece)) {
    out.push_back(s->f);
  } else if (const auto* b = std::get_if<BandPiece>(&piece)) {
    out.push_back(b->lower);
    out.push_back(b->upper);
  } else if (const auto* r = std::get_if<RectanglePiece>(&piece)) {
    for (const auto& c : r->value.components()) {
      out.push_back({Scalar(0), c.lo});
      out.push_back({Scalar(0), c.hi});
    }
  }
}

bool covers_open_interval(const MapPiece& piece, const Scalar& a, const Scalar& b) {
  if (std::holds_alternative<PointPiece>(piece)) return false;
  const Span d = piece_domain(piece);
  return d.lo <= a && b <= d.hi;
}

// Sorted points strictly inside (a, b) where two endpoint functions of the
// pieces active on (a, b) coincide.
std::vector<Scalar> crossings(const std::vector<MapPiece>& pieces, const Scalar& a, const Scalar& b) {
  std::vector<Affine> fns;
  for (const auto& p : pieces) {
    if (covers_open_interval(p, a, b)) endpoint_functions(p, fns);
  }
  std::vector<Scalar> xs;
  for (std::size_t i = 0; i < fns.size(); ++i) {
    for (std::size_t j = i + 1; j < fns.size(); ++j) {
      if (fns[i].slope == fns[j].slope) continue;
      Scalar x = (fns[j].intercept - fns[i].intercept) / (fns[i].slope - fns[j].slope);
      if (a < x && x < b) xs.push_back(std::move(x));
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

Span make_domain(const Scalar& lo, const Scalar& hi, std::string_view flags) {
  if (flags.size() != 2 || (flags[0] != 'c' && flags[0] != 'o') || (flags[1] != 'c' && flags[1] != 'o')) {
    throw Error(Errc::parse_error, "domain flags must be one of cc, co, oc, oo; got '" + std::string(flags) + "'");
  }
  return Span{lo, hi, flags[0] == 'c', flags[1] == 'c'};
}

MapPiece segment(const Scalar& lo, const Scalar& hi, std::string_view flags, const Scalar& y_lo,
                 const Scalar& y_hi) {
  return SegmentPiece{make_domain(lo, hi, flags), Affine::through(lo, y_lo, hi, y_hi)};
}

MapPiece band(const Scalar& lo, const Scalar& hi, std::string_view flags, const Scalar& lower_lo,
              const Scalar& lower_hi, const Scalar& upper_lo, const Scalar& upper_hi) {
  return BandPiece{make_domain(lo, hi, flags), Affine::through(lo, lower_lo, hi, lower_hi),
                   Affine::through(lo, upper_lo, hi, upper_hi)};
}

MapPiece rectangle(const Scalar& lo, const Scalar& hi, std::string_view flags, ClosedSet value) {
  return RectanglePiece{make_domain(lo, hi, flags), std::move(value)};
}

MapPiece point_rule(const Scalar& at, ClosedSet value) { return PointPiece{at, std::move(value)}; }

SetValuedMap::SetValuedMap(std::string name, std::vector<MapPiece> pieces)
    : name_(std::move(name)), pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Error(Errc::empty_input, "map '" + name_ + "' has no pieces");

  for (const auto& piece : pieces_) {
    const Span d = piece_domain(piece);
    if (!in_unit(d.lo) || !in_unit(d.hi)) {
      throw Error(Errc::out_of_range, "piece domain [" + to_string(d.lo) + "," + to_string(d.hi) + "] outside [0,1]");
    }
    if (d.empty()) {
      throw Error(Errc::invalid_argument, "empty piece domain at " + to_string(d.lo));
    }
    if (const auto* s = std::get_if<SegmentPiece>(&piece)) {
      if (!in_unit(s->f(d.lo)) || !in_unit(s->f(d.hi))) {
        throw Error(Errc::out_of_range, "segment over [" + to_string(d.lo) + "," + to_string(d.hi) + "] leaves [0,1]");
      }
    } else if (const auto* b = std::get_if<BandPiece>(&piece)) {
      for (const Scalar* x : {&d.lo, &d.hi}) {
        if (!in_unit(b->lower(*x)) || !in_unit(b->upper(*x)) || b->upper(*x) < b->lower(*x)) {
          throw Error(Errc::out_of_range, "band bounds invalid at x = " + to_string(*x));
        }
      }
    }
    breakpoints_.push_back(d.lo);
    breakpoints_.push_back(d.hi);
  }
  breakpoints_.emplace_back(0);
  breakpoints_.emplace_back(1);
  std::sort(breakpoints_.begin(), breakpoints_.end());
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());

  auto covered = [this](const Scalar& x) {
    return std::any_of(pieces_.begin(), pieces_.end(),
                       [&x](const MapPiece& p) { return piece_domain(p).contains(x); });
  };
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!covered(breakpoints_[i])) {
      throw Error(Errc::domain_gap, "map '" + name_ + "' undefined at x = " + to_string(breakpoints_[i]));
    }
    if (i + 1 < breakpoints_.size()) {
      Scalar mid = (breakpoints_[i] + breakpoints_[i + 1]) / 2;
      if (!covered(mid)) {
        throw Error(Errc::domain_gap, "map '" + name_ + "' undefined at x = " + to_string(mid));
      }
    }
  }

  graph_closed_ = usc_check(*this).holds;
  values_connected_ = values_connected_check(*this).connected;

  singleton_valued_ = true;
  for (const auto& x : breakpoints_) {
    ClosedSet v = evaluate(*this, x);
    if (!(v.size() == 1 && v.components()[0].is_point())) {
      singleton_valued_ = false;
      break;
    }
  }
  for (std::size_t i = 0; singleton_valued_ && i + 1 < breakpoints_.size(); ++i) {
    const Scalar& a = breakpoints_[i];
    const Scalar& b = breakpoints_[i + 1];
    std::optional<Affine> value;
    for (const auto& p : pieces_) {
      if (!covers_open_interval(p, a, b)) continue;
      std::optional<Affine> fn;
      if (const auto* s = std::get_if<SegmentPiece>(&p)) {
        fn = s->f;
      } else if (const auto* bp = std::get_if<BandPiece>(&p); bp && bp->lower == bp->upper) {
        fn = bp->lower;
      } else if (const auto* r = std::get_if<RectanglePiece>(&p); r && r->value.size() == 1 && r->value.components()[0].is_point()) {
        fn = Affine{Scalar(0), r->value.min()};
      }
      if (!fn || (value && !(*value == *fn))) {
        singleton_valued_ = false;
        break;
      }
      value = fn;
    }
  }
}

ClosedSet evaluate(const SetValuedMap& f, const Scalar& x) {
  if (!in_unit(x)) throw Error(Errc::out_of_range, "x = " + to_string(x) + " outside [0,1]");
  std::vector<Interval> parts;
  bool outer = false;
  for (const auto& piece : f.pieces()) {
    if (piece_domain(piece).contains(x)) {
      append_value_at(piece, x, parts);
      outer = outer || value_outer(piece);
    }
  }
  if (parts.empty()) throw Error(Errc::domain_gap, "map '" + f.name() + "' undefined at x = " + to_string(x));
  ClosedSet out = ClosedSet::canonicalize(std::move(parts));
  return outer ? out.with_outer(true) : out;
}

ClosedSet image(const SetValuedMap& f, const ClosedSet& a) {
  std::vector<Interval> parts;
  bool limit_used = false;
  bool outer = a.outer();
  for (const auto& piece : f.pieces()) {
    if (const auto* p = std::get_if<PointPiece>(&piece)) {
      if (a.contains(p->at)) {
        parts.insert(parts.end(), p->value.components().begin(), p->value.components().end());
        outer = outer || p->value.outer();
      }
      continue;
    }
    const Span d = piece_domain(piece);
    bool rect_hit = false;
    for (const auto& c : a.components()) {
      if (c.hi < d.lo) continue;
      if (c.lo > d.hi) break;
      auto span = intersect(d, Span{c.lo, c.hi, true, true});
      if (!span) continue;
      if (const auto* s = std::get_if<SegmentPiece>(&piece)) {
        Scalar ya = s->f(span->lo);
        Scalar yb = s->f(span->hi);
        if (yb < ya) std::swap(ya, yb);
        parts.push_back({std::move(ya), std::move(yb)});
        if (!span->is_closed() && s->f.slope != 0) limit_used = true;
      } else if (const auto* b = std::get_if<BandPiece>(&piece)) {
        parts.push_back({min_of(b->lower(span->lo), b->lower(span->hi)),
                         max_of(b->upper(span->lo), b->upper(span->hi))});
        if (!span->is_closed() && (b->lower.slope != 0 || b->upper.slope != 0)) limit_used = true;
      } else {
        rect_hit = true;
        break;
      }
    }
    if (rect_hit) {
      const auto& r = std::get<RectanglePiece>(piece);
      parts.insert(parts.end(), r.value.components().begin(), r.value.components().end());
      outer = outer || r.value.outer();
    }
  }
  if (parts.empty()) {
    throw Error(Errc::domain_gap, "image of " + format_set(a) + " under '" + f.name() + "' is empty");
  }
  ClosedSet out = ClosedSet::canonicalize(std::move(parts));
  outer = outer || out.outer() || (limit_used && !f.graph_closed());
  return outer ? out.with_outer(true) : out;
}

ClosedSet image_closure(const SetValuedMap& f, const Span& s) {
  if (s.empty()) throw Error(Errc::empty_input, "image of an empty span");
  std::vector<Interval> parts;
  for (const auto& piece : f.pieces()) {
    if (const auto* p = std::get_if<PointPiece>(&piece)) {
      if (s.contains(p->at)) parts.insert(parts.end(), p->value.components().begin(), p->value.components().end());
      continue;
    }
    auto span = intersect(piece_domain(piece), s);
    if (!span) continue;
    if (const auto* seg = std::get_if<SegmentPiece>(&piece)) {
      parts.push_back({min_of(seg->f(span->lo), seg->f(span->hi)), max_of(seg->f(span->lo), seg->f(span->hi))});
    } else if (const auto* b = std::get_if<BandPiece>(&piece)) {
      parts.push_back({min_of(b->lower(span->lo), b->lower(span->hi)), max_of(b->upper(span->lo), b->upper(span->hi))});
    } else {
      const auto& r = std::get<RectanglePiece>(piece);
      parts.insert(parts.end(), r.value.components().begin(), r.value.components().end());
    }
  }
  if (parts.empty()) throw Error(Errc::domain_gap, "map '" + f.name() + "' undefined on a span");
  ClosedSet out = ClosedSet::canonicalize(std::move(parts));
  return s.is_closed() ? out : out.with_outer(true);
}

std::vector<ClosedSet> iterate_sequence(const SetValuedMap& f, const Scalar& x, unsigned n) {
  if (n == 0) throw Error(Errc::invalid_argument, "iterate needs n >= 1");
  std::vector<ClosedSet> seq;
  seq.reserve(n);
  seq.push_back(evaluate(f, x));
  while (seq.size() < n) {
    ClosedSet next = image(f, seq.back());
    if (next == seq.back() && next.outer() == seq.back().outer()) {
      // Fixed set: the rest of the sequence is constant.
      seq.resize(n, next);
      break;
    }
    seq.push_back(std::move(next));
  }
  return seq;
}

ClosedSet iterate(const SetValuedMap& f, const Scalar& x, unsigned n) {
  return std::move(iterate_sequence(f, x, n).back());
}

namespace {

std::optional<ClosedSet> one_sided_limit(const SetValuedMap& f, const Scalar& x, bool from_left) {
  std::vector<Interval> parts;
  for (const auto& piece : f.pieces()) {
    if (std::holds_alternative<PointPiece>(piece)) continue;
    const Span d = piece_domain(piece);
    const bool active = from_left ? (d.lo < x && x <= d.hi) : (d.lo <= x && x < d.hi);
    if (!active) continue;
    if (const auto* r = std::get_if<RectanglePiece>(&piece)) {
      parts.insert(parts.end(), r->value.components().begin(), r->value.components().end());
    } else {
      parts.push_back(*piece_limit_value(piece, x));
    }
  }
  if (parts.empty()) return std::nullopt;
  return ClosedSet::canonicalize(std::move(parts));
}

}  // namespace

std::optional<ClosedSet> left_limit(const SetValuedMap& f, const Scalar& x) { return one_sided_limit(f, x, true); }
std::optional<ClosedSet> right_limit(const SetValuedMap& f, const Scalar& x) { return one_sided_limit(f, x, false); }

SemicontinuityVerdict usc_check(const SetValuedMap& f) {
  SemicontinuityVerdict v{Semicontinuity::upper, true, std::nullopt, std::nullopt};
  for (const auto& x : f.breakpoints()) {
    const ClosedSet fx = evaluate(f, x);
    auto lm = left_limit(f, x);
    auto rm = right_limit(f, x);
    std::optional<ClosedSet> limits;
    if (lm && rm) {
      limits = set_union(*lm, *rm);
    } else if (lm) {
      limits = lm;
    } else {
      limits = rm;
    }
    if (limits && !limits->subset_of(fx)) {
      v.holds = false;
      v.witness_x = x;
      v.witness_limit = limits;
      return v;
    }
  }
  return v;
}

SemicontinuityVerdict lsc_check(const SetValuedMap& f) {
  SemicontinuityVerdict v{Semicontinuity::lower, true, std::nullopt, std::nullopt};
  for (const auto& x : f.breakpoints()) {
    const ClosedSet fx = evaluate(f, x);
    for (bool from_left : {true, false}) {
      if (from_left ? x == 0 : x == 1) continue;
      auto lim = one_sided_limit(f, x, from_left);
      if (lim && !fx.subset_of(*lim)) {
        v.holds = false;
        v.witness_x = x;
        v.witness_limit = lim;
        return v;
      }
    }
  }
  return v;
}

bool recheck(const SetValuedMap& f, const SemicontinuityVerdict& v) {
  if (v.holds) return !v.witness_x.has_value();
  if (!v.witness_x || !v.witness_limit) return false;
  const ClosedSet fx = evaluate(f, *v.witness_x);
  if (v.kind == Semicontinuity::upper) return !v.witness_limit->subset_of(fx);
  return !fx.subset_of(*v.witness_limit);
}

std::optional<ClosedSet> preimage(const SetValuedMap& f, const Scalar& y) {
  if (!in_unit(y)) throw Error(Errc::out_of_range, "y = " + to_string(y) + " outside [0,1]");
  std::vector<Interval> parts;
  bool limit_used = false;
  auto add_span = [&](const Span& s) {
    parts.push_back({s.lo, s.hi});
    if (!s.is_closed()) limit_used = true;
  };
  for (const auto& piece : f.pieces()) {
    if (const auto* p = std::get_if<PointPiece>(&piece)) {
      if (p->value.contains(y)) parts.push_back(Interval::point(p->at));
    } else if (const auto* r = std::get_if<RectanglePiece>(&piece)) {
      if (r->value.contains(y)) add_span(r->domain);
    } else if (const auto* s = std::get_if<SegmentPiece>(&piece)) {
      if (s->f.slope != 0) {
        Scalar x = (y - s->f.intercept) / s->f.slope;
        if (s->domain.contains(x)) parts.push_back(Interval::point(x));
      } else if (s->f.intercept == y) {
        add_span(s->domain);
      }
    } else {
      const auto& b = std::get<BandPiece>(piece);
      // lower(x) <= y and upper(x) >= y, each a closed half-line or all/nothing.
      Span feasible{Scalar(0), Scalar(1), true, true};
      bool empty = false;
      auto constrain = [&](const Affine& g, bool want_le) {
        // want_le: g(x) <= y ; otherwise g(x) >= y
        if (g.slope == 0) {
          if (want_le ? g.intercept > y : g.intercept < y) empty = true;
          return;
        }
        Scalar root = (y - g.intercept) / g.slope;
        const bool upper_bound = (g.slope > 0) == want_le;
        if (upper_bound) {
          if (root < feasible.hi) feasible.hi = root;
        } else {
          if (root > feasible.lo) feasible.lo = root;
        }
      };
      constrain(b.lower, true);
      constrain(b.upper, false);
      if (empty || feasible.hi < feasible.lo) continue;
      if (auto s = intersect(b.domain, feasible)) add_span(*s);
    }
  }
  if (parts.empty()) return std::nullopt;
  ClosedSet out = ClosedSet::canonicalize(std::move(parts));
  return (limit_used && !f.graph_closed()) ? out.with_outer(true) : out;
}

ConnectedValues values_connected_check(const SetValuedMap& f) {
  const auto& bps = f.breakpoints();
  auto check = [&f](const Scalar& x) { return evaluate(f, x).is_connected(); };
  for (std::size_t i = 0; i < bps.size(); ++i) {
    if (!check(bps[i])) return {Tri::no, bps[i]};
    if (i + 1 == bps.size()) break;
    const Scalar& a = bps[i];
    const Scalar& b = bps[i + 1];
    std::vector<Scalar> cuts = crossings(f.pieces(), a, b);
    std::vector<Scalar> probes = cuts;
    Scalar prev = a;
    for (const auto& c : cuts) {
      probes.push_back((prev + c) / 2);
      prev = c;
    }
    probes.push_back((prev + b) / 2);
    std::sort(probes.begin(), probes.end());
    for (const auto& x : probes) {
      if (!check(x)) return {Tri::no, x};
    }
  }
  return {Tri::yes, std::nullopt};
}

bool finite_valued(const SetValuedMap& f) {
  return std::all_of(f.pieces().begin(), f.pieces().end(), [](const MapPiece& p) {
    if (const auto* b = std::get_if<BandPiece>(&p)) return b->lower == b->upper;
    if (const auto* r = std::get_if<RectanglePiece>(&p)) return r->value.is_finite();
    if (const auto* q = std::get_if<PointPiece>(&p)) return q->value.is_finite();
    return true;
  });
}

MapPiece parse_piece(std::string_view line) {
  auto arrow = line.find("->");
  if (arrow == std::string_view::npos) throw Error(Errc::parse_error, "piece line lacks '->': '" + std::string(line) + "'");
  std::istringstream lhs{std::string(line.substr(0, arrow))};
  const std::string rhs_text{line.substr(arrow + 2)};
  std::istringstream rhs{rhs_text};
  std::string kind;
  lhs >> kind;
  auto next = [&line](std::istringstream& in, const char* what) {
    std::string tok;
    if (!(in >> tok)) throw Error(Errc::parse_error, std::string("missing ") + what + " in '" + std::string(line) + "'");
    return tok;
  };
  auto no_trailing = [&line](std::istringstream& in) {
    std::string extra;
    if (in >> extra) throw Error(Errc::parse_error, "unexpected '" + extra + "' in '" + std::string(line) + "'");
  };
  if (kind == "point") {
    Scalar at = parse_scalar(next(lhs, "x"));
    no_trailing(lhs);
    return point_rule(at, parse_set(rhs_text));
  }
  if (kind != "segment" && kind != "band" && kind != "rect") {
    throw Error(Errc::parse_error, "unknown piece kind '" + kind + "'");
  }
  Scalar lo = parse_scalar(next(lhs, "domain low"));
  Scalar hi = parse_scalar(next(lhs, "domain high"));
  std::string flags = next(lhs, "flags");
  no_trailing(lhs);
  if (kind == "rect") return rectangle(lo, hi, flags, parse_set(rhs_text));
  if (kind == "segment") {
    Scalar a = parse_scalar(next(rhs, "f(lo)"));
    Scalar b = parse_scalar(next(rhs, "f(hi)"));
    no_trailing(rhs);
    return segment(lo, hi, flags, a, b);
  }
  Scalar l0 = parse_scalar(next(rhs, "lower(lo)"));
  Scalar l1 = parse_scalar(next(rhs, "lower(hi)"));
  Scalar u0 = parse_scalar(next(rhs, "upper(lo)"));
  Scalar u1 = parse_scalar(next(rhs, "upper(hi)"));
  no_trailing(rhs);
  return band(lo, hi, flags, l0, l1, u0, u1);
}

std::string format_piece(const MapPiece& piece) {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PointPiece>) {
          return "point " + to_string(p.at) + " -> " + format_set(p.value);
        } else {
          std::string head = to_string(p.domain.lo) + " " + to_string(p.domain.hi) + " " + flags_of(p.domain) + " -> ";
          if constexpr (std::is_same_v<T, SegmentPiece>) {
            return "segment " + head + to_string(p.f(p.domain.lo)) + " " + to_string(p.f(p.domain.hi));
          } else if constexpr (std::is_same_v<T, BandPiece>) {
            return "band " + head + to_string(p.lower(p.domain.lo)) + " " + to_string(p.lower(p.domain.hi)) + " " +
                   to_string(p.upper(p.domain.lo)) + " " + to_string(p.upper(p.domain.hi));
          } else {
            return "rect " + head + format_set(p.value);
          }
        }
      },
      piece);
}

}  // namespace orbitkit
