#include "orbitkit/sensitivity.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "orbitkit/error.hpp"
#include "orbitkit/parallel.hpp"

namespace orbitkit {

std::string_view kind_name(SensKind k) noexcept {
  switch (k) {
    case SensKind::strong: return "strong";
    case SensKind::sensitive: return "sensitive";
    case SensKind::weak: return "weak";
    case SensKind::liyorke: return "liyorke";
  }
  return "sensitive";
}

std::string_view sens_status_name(SensStatus s) noexcept {
  return s == SensStatus::witnessed_yes ? "witnessed_yes" : "no_witness_at_budget";
}

std::string_view certificate_kind_name(ImpossibilityCertificate::Kind k) noexcept {
  switch (k) {
    case ImpossibilityCertificate::Kind::full_orbit: return "full_orbit";
    case ImpossibilityCertificate::Kind::constant_values: return "constant_values";
    case ImpossibilityCertificate::Kind::liyorke_dichotomy: return "liyorke_dichotomy";
  }
  return "full_orbit";
}

namespace {

Scalar measure_sets(SensKind kind, const ClosedSet& fx, const ClosedSet& fy) {
  switch (kind) {
    case SensKind::strong: return excess(fy, fx);
    case SensKind::weak: return maxdist(fx, fy);
    default: return hausdorff(fx, fy);
  }
}

// Every piece is constant-valued and all values agree, so F(x) is one set.
bool constant_valued(const SetValuedMap& f) {
  for (const auto& piece : f.pieces()) {
    if (const auto* s = std::get_if<SegmentPiece>(&piece); s && s->f.slope != 0) return false;
    if (const auto* b = std::get_if<BandPiece>(&piece); b && (b->lower.slope != 0 || b->upper.slope != 0)) return false;
  }
  const auto& bps = f.breakpoints();
  const ClosedSet first = evaluate(f, bps.front());
  for (std::size_t i = 0; i < bps.size(); ++i) {
    if (!(evaluate(f, bps[i]) == first)) return false;
    if (i + 1 < bps.size() && !(evaluate(f, (bps[i] + bps[i + 1]) / 2) == first)) return false;
  }
  return true;
}

bool full_orbit(const SetValuedMap& f, const Scalar& x) {
  return evaluate(f, x).is_unit() && image(f, ClosedSet::unit()).is_unit();
}

bool singleton_or_unit(const ClosedSet& s) { return s.is_unit() || (s.size() == 1 && s.components()[0].is_point()); }

// Every value F(x) is a single point or all of [0,1], and F([0,1]) = [0,1].
bool dichotomy_map(const SetValuedMap& f) {
  if (!image(f, ClosedSet::unit()).is_unit()) return false;
  const auto& bps = f.breakpoints();
  for (std::size_t i = 0; i < bps.size(); ++i) {
    if (!singleton_or_unit(evaluate(f, bps[i]))) return false;
    if (i + 1 == bps.size()) break;
    const Scalar& a = bps[i];
    const Scalar& b = bps[i + 1];
    bool unit = false;
    std::optional<Affine> fn;
    bool ok = true;
    for (const auto& piece : f.pieces()) {
      if (std::holds_alternative<PointPiece>(piece)) continue;
      const Span d = piece_domain(piece);
      if (!(d.lo <= a && b <= d.hi)) continue;
      if (const auto* s = std::get_if<SegmentPiece>(&piece)) {
        if (fn && !(*fn == s->f)) ok = false;
        fn = s->f;
      } else if (const auto* r = std::get_if<RectanglePiece>(&piece)) {
        if (r->value.is_unit()) {
          unit = true;
        } else if (r->value.size() == 1 && r->value.components()[0].is_point()) {
          Affine c{Scalar(0), r->value.min()};
          if (fn && !(*fn == c)) ok = false;
          fn = c;
        } else {
          ok = false;
        }
      } else {
        const auto& band = std::get<BandPiece>(piece);
        if (band.lower.slope == 0 && band.upper.slope == 0 && band.lower.intercept == 0 && band.upper.intercept == 1) {
          unit = true;
        } else if (band.lower == band.upper) {
          if (fn && !(*fn == band.lower)) ok = false;
          fn = band.lower;
        } else {
          ok = false;
        }
      }
    }
    if (!unit && !ok) return false;
  }
  return true;
}

Scalar dichotomy_bound() { return hausdorff(ClosedSet::unit(), ClosedSet::point(Scalar(1, 2))); }

std::vector<Scalar> base_points(const Scalar& step) {
  if (step <= 0 || step > 1) throw Error(Errc::invalid_argument, "base step must lie in (0,1]");
  std::vector<Scalar> out;
  for (Scalar x(0); x <= 1; x += step) out.push_back(x);
  return out;
}

// Exact prefix of F(x), ..., F^n(x); may be shorter than n.
std::vector<ClosedSet> exact_sequence(const SetValuedMap& f, const Scalar& x, unsigned n, unsigned cap) {
  std::vector<ClosedSet> seq;
  ClosedSet first = evaluate(f, x);
  if (first.outer() || first.size() > cap) return seq;
  seq.push_back(std::move(first));
  while (seq.size() < n) {
    ClosedSet next = image(f, seq.back());
    if (next.outer() || next.size() > cap) break;
    if (next == seq.back()) {
      seq.resize(n, next);
      break;
    }
    seq.push_back(std::move(next));
  }
  return seq;
}

class SequenceCache {
 public:
  SequenceCache(const SetValuedMap& f, unsigned n, unsigned cap) : f_(f), n_(n), cap_(cap) {}
  const std::vector<ClosedSet>& get(const Scalar& x) {
    auto it = cache_.find(x);
    if (it == cache_.end()) it = cache_.emplace(x, exact_sequence(f_, x, n_, cap_)).first;
    return it->second;
  }
  unsigned truncated() const {
    unsigned k = 0;
    for (const auto& [x, seq] : cache_) k += seq.size() < n_;
    return k;
  }

 private:
  const SetValuedMap& f_;
  unsigned n_;
  unsigned cap_;
  std::map<Scalar, std::vector<ClosedSet>> cache_;
};

struct BaseResult {
  std::vector<std::optional<SensitivityWitness>> per_delta;
  std::optional<ImpossibilityCertificate> certificate;
  unsigned truncated = 0;
};

SensitivityVerdict aggregate(SensitivityVerdict v, const std::vector<Scalar>& bases, std::vector<BaseResult> results) {
  bool all = true;
  for (std::size_t b = 0; b < bases.size(); ++b) {
    v.truncated += results[b].truncated;
    if (results[b].certificate) {
      v.certificates.push_back(*results[b].certificate);
      v.refuted = true;
    }
    for (std::size_t d = 0; d < v.budget.deltas.size(); ++d) {
      if (results[b].per_delta[d]) {
        v.witnesses.push_back(*results[b].per_delta[d]);
      } else {
        all = false;
        if (!v.first_miss) v.first_miss = std::make_pair(bases[b], v.budget.deltas[d]);
      }
    }
  }
  v.status = all && !bases.empty() ? SensStatus::witnessed_yes : SensStatus::no_witness_at_budget;
  return v;
}

struct WindowStats {
  Scalar min_h, max_h;
  unsigned argmin = 0, argmax = 0, strict = 0, nonstrict = 0;
};

WindowStats window_stats(const std::vector<ClosedSet>& fx, const std::vector<ClosedSet>& fy, unsigned lo, unsigned hi,
                         const Scalar& eps) {
  WindowStats s;
  for (unsigned n = lo; n <= hi; ++n) {
    Scalar h = hausdorff(fx[n - 1], fy[n - 1]);
    if (n == lo || h < s.min_h) {
      s.min_h = h;
      s.argmin = n;
    }
    if (n == lo || h > s.max_h) {
      s.max_h = h;
      s.argmax = n;
    }
    if (h > eps) ++s.strict;
    if (h >= eps) ++s.nonstrict;
  }
  return s;
}

}  // namespace

std::vector<Scalar> candidate_ys(const SetValuedMap& f, const Scalar& x, const Scalar& delta, const ProbeBudget& budget) {
  const unsigned cells = budget.cells;
  if (delta <= 0) throw Error(Errc::invalid_argument, "delta must be positive");
  std::vector<Scalar> out;
  auto add = [&](const Scalar& y) {
    if (y >= 0 && y <= 1 && y != x && abs_diff(x, y) < delta) out.push_back(y);
  };
  add(x - delta / 2);
  add(x + delta / 2);
  for (unsigned d : budget.divisors) {
    if (d == 0) continue;
    add(x - delta / d);
    add(x + delta / d);
  }
  if (cells > 0) {
    const Scalar sc(cells);
    mpz_class lo = ceil_of(Scalar((x - delta) * sc));
    mpz_class hi = floor_of(Scalar((x + delta) * sc));
    if (lo < 0) lo = 0;
    if (hi > cells) hi = cells;
    for (mpz_class j = lo; j <= hi; ++j) {
      Scalar y(j, cells);
      y.canonicalize();
      add(y);
    }
  }
  for (const auto& b : f.breakpoints()) add(b);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Scalar measure(SensKind kind, const SetValuedMap& f, const Scalar& x, const Scalar& y, unsigned m) {
  if (kind == SensKind::liyorke) kind = SensKind::sensitive;
  return measure_sets(kind, iterate(f, x, m), iterate(f, y, m));
}

SensitivityVerdict sensitivity_probe(SensKind kind, const SetValuedMap& f, const Scalar& eps,
                                     const ProbeBudget& budget) {
  if (kind == SensKind::liyorke) throw Error(Errc::invalid_argument, "use liyorke_probe for Li-Yorke sensitivity");
  if (eps <= 0) throw Error(Errc::invalid_argument, "eps must be positive");
  if (budget.horizon == 0) throw Error(Errc::invalid_argument, "horizon must be >= 1");
  SensitivityVerdict v;
  v.kind = kind;
  v.eps = eps;
  v.budget = budget;
  if (kind != SensKind::weak && constant_valued(f)) {
    v.certificates.push_back({ImpossibilityCertificate::Kind::constant_values, std::nullopt, Scalar(0), std::nullopt});
    v.refuted = true;
  }
  const auto bases = base_points(budget.base_step);
  std::vector<BaseResult> results(bases.size());
  parallel_for(bases.size(), [&](std::size_t b) {
    const Scalar& x = bases[b];
    auto& r = results[b];
    r.per_delta.assign(budget.deltas.size(), std::nullopt);
    if (kind == SensKind::strong && full_orbit(f, x)) {
      r.certificate = ImpossibilityCertificate{ImpossibilityCertificate::Kind::full_orbit, x, Scalar(0), std::nullopt};
      return;
    }
    SequenceCache cache(f, budget.horizon, budget.max_components);
    const auto& fx = cache.get(x);
    for (std::size_t d = 0; d < budget.deltas.size(); ++d) {
      const Scalar& delta = budget.deltas[d];
      for (const auto& y : candidate_ys(f, x, delta, budget)) {
        const auto& fy = cache.get(y);
        const auto reach = std::min(fx.size(), fy.size());
        for (unsigned m = 1; m <= reach; ++m) {
          Scalar val = measure_sets(kind, fx[m - 1], fy[m - 1]);
          if (val >= eps) {
            SensitivityWitness w;
            w.kind = kind;
            w.x = x;
            w.y = y;
            w.delta = delta;
            w.eps = eps;
            w.m = m;
            w.measured = std::move(val);
            r.per_delta[d] = std::move(w);
            break;
          }
        }
        if (r.per_delta[d]) break;
      }
    }
    r.truncated = cache.truncated();
  });
  return aggregate(std::move(v), bases, std::move(results));
}

SensitivityVerdict liyorke_probe(const SetValuedMap& f, const Scalar& eps, const Scalar& eta, unsigned window_lo,
                                 unsigned window_hi, const ProbeBudget& budget) {
  if (eps <= 0 || eta <= 0) throw Error(Errc::invalid_argument, "eps and eta must be positive");
  if (window_lo < 1 || window_lo >= window_hi) throw Error(Errc::invalid_argument, "window must satisfy 1 <= K1 < K2");
  SensitivityVerdict v;
  v.kind = SensKind::liyorke;
  v.eps = eps;
  v.budget = budget;
  if (constant_valued(f)) {
    v.certificates.push_back({ImpossibilityCertificate::Kind::constant_values, std::nullopt, Scalar(0), std::nullopt});
    v.refuted = true;
  }
  const bool dichotomy = dichotomy_map(f);
  const auto bases = base_points(budget.base_step);
  std::vector<BaseResult> results(bases.size());
  parallel_for(bases.size(), [&](std::size_t b) {
    const Scalar& x = bases[b];
    auto& r = results[b];
    r.per_delta.assign(budget.deltas.size(), std::nullopt);
    SequenceCache cache(f, window_hi, budget.max_components);
    const auto& fx = cache.get(x);
    if (dichotomy && evaluate(f, x).is_unit()) {
      ImpossibilityCertificate c{ImpossibilityCertificate::Kind::liyorke_dichotomy, x, dichotomy_bound(), std::nullopt};
      // Record the separation actually seen for candidates that never merge.
      for (const auto& delta : budget.deltas) {
        for (const auto& y : candidate_ys(f, x, delta, budget)) {
          const auto& fy = cache.get(y);
          if (std::any_of(fy.begin(), fy.end(), [](const ClosedSet& s) { return s.is_unit(); })) continue;
          const auto reach = std::min(fx.size(), fy.size());
          for (unsigned n = 1; n <= reach; ++n) {
            Scalar h = hausdorff(fx[n - 1], fy[n - 1]);
            if (!c.observed_min || h < *c.observed_min) c.observed_min = h;
          }
        }
      }
      r.certificate = std::move(c);
      r.truncated = cache.truncated();
      return;
    }
    // The window is replayed in full, so only complete sequences qualify.
    if (fx.size() < window_hi) {
      r.truncated = cache.truncated();
      return;
    }
    for (std::size_t d = 0; d < budget.deltas.size(); ++d) {
      const Scalar& delta = budget.deltas[d];
      for (const auto& y : candidate_ys(f, x, delta, budget)) {
        const auto& fy = cache.get(y);
        if (fy.size() < window_hi) continue;
        const auto s = window_stats(fx, fy, window_lo, window_hi, eps);
        if (s.min_h < eta && s.strict >= budget.separations) {
          SensitivityWitness w;
          w.kind = SensKind::liyorke;
          w.x = x;
          w.y = y;
          w.delta = delta;
          w.eps = eps;
          w.m = s.argmax;
          w.measured = s.max_h;
          w.window_lo = window_lo;
          w.window_hi = window_hi;
          w.eta = eta;
          w.min_h = s.min_h;
          w.argmin = s.argmin;
          w.separated_strict = s.strict;
          w.separated_nonstrict = s.nonstrict;
          r.per_delta[d] = std::move(w);
          break;
        }
      }
    }
    r.truncated = cache.truncated();
  });
  return aggregate(std::move(v), bases, std::move(results));
}

bool replay(const SetValuedMap& f, const SensitivityWitness& w) {
  if (!(abs_diff(w.x, w.y) < w.delta) || w.m == 0) return false;
  if (w.kind != SensKind::liyorke) {
    const Scalar val = measure(w.kind, f, w.x, w.y, w.m);
    return val == w.measured && val >= w.eps;
  }
  const auto fx = iterate_sequence(f, w.x, w.window_hi);
  const auto fy = iterate_sequence(f, w.y, w.window_hi);
  const auto s = window_stats(fx, fy, w.window_lo, w.window_hi, w.eps);
  return s.min_h == w.min_h && s.argmin == w.argmin && s.max_h == w.measured && s.argmax == w.m &&
         s.strict == w.separated_strict && s.nonstrict == w.separated_nonstrict && s.min_h < w.eta;
}

bool replay_as(const SetValuedMap& f, const SensitivityWitness& w, SensKind as) {
  auto rank = [](SensKind k) {
    switch (k) {
      case SensKind::strong: return 3;
      case SensKind::liyorke: return 3;
      case SensKind::sensitive: return 2;
      case SensKind::weak: return 1;
    }
    return 0;
  };
  if (as == w.kind) return replay(f, w);
  if (as == SensKind::strong || as == SensKind::liyorke || rank(as) > rank(w.kind)) {
    throw Error(Errc::invalid_argument, std::string(kind_name(w.kind)) + " does not imply " + std::string(kind_name(as)));
  }
  return measure(as, f, w.x, w.y, w.m) >= w.eps;
}

bool recheck(const SetValuedMap& f, const ImpossibilityCertificate& c) {
  switch (c.kind) {
    case ImpossibilityCertificate::Kind::full_orbit:
      return c.x && full_orbit(f, *c.x);
    case ImpossibilityCertificate::Kind::constant_values:
      return constant_valued(f);
    case ImpossibilityCertificate::Kind::liyorke_dichotomy:
      return c.x && dichotomy_map(f) && evaluate(f, *c.x).is_unit() && c.bound == dichotomy_bound() &&
             (!c.observed_min || *c.observed_min >= c.bound);
  }
  return false;
}

std::vector<bool> sensitivity_probe_finite(SensKind kind, const FiniteSystem& s, unsigned horizon) {
  // Discrete metric, eps = 1, delta = 1/2: the only y within delta of x is x.
  auto powers = [&](unsigned x) {
    std::vector<StateSet> out{s.evaluate(x)};
    while (out.size() < horizon) out.push_back(s.image(out.back()));
    return out;
  };
  std::vector<bool> out;
  for (unsigned x = 0; x < s.size(); ++x) {
    const auto fx = powers(x);
    bool hit = false;
    for (unsigned y = 0; y < s.size() && !hit; ++y) {
      if (y != x) continue;
      const auto fy = powers(y);
      unsigned equal = 0, apart = 0;
      for (unsigned m = 0; m < horizon && !hit; ++m) {
        switch (kind) {
          case SensKind::strong: hit = (fy[m] & ~fx[m]) != 0; break;
          case SensKind::sensitive: hit = fx[m] != fy[m]; break;
          case SensKind::weak: hit = std::popcount(fx[m] | fy[m]) >= 2; break;
          case SensKind::liyorke: (fx[m] == fy[m] ? equal : apart)++; break;
        }
      }
      if (kind == SensKind::liyorke) hit = equal > 0 && apart > 0;
    }
    out.push_back(hit);
  }
  return out;
}

}  // namespace orbitkit
