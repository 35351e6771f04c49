#include <doctest.h>

#include <algorithm>

#include "orbitkit/corpus.hpp"
#include "orbitkit/error.hpp"
#include "orbitkit/finite_oracle.hpp"
#include "orbitkit/sensitivity.hpp"
#include "support/gen.hpp"

using namespace orbitkit;
using orbitkit::testing::Gen;

namespace {

Scalar q(long p, long d) { return ratio(p, d); }

SetValuedMap map_of(const std::string& name) { return builtin(name).map(); }

// Every witness must replay as itself and through each weaker kind.
void check_chain(const SetValuedMap& f, const SensitivityVerdict& v) {
  for (const auto& w : v.witnesses) {
    CHECK(replay(f, w));
    switch (w.kind) {
      case SensKind::strong:
        CHECK(replay_as(f, w, SensKind::sensitive));
        CHECK(replay_as(f, w, SensKind::weak));
        break;
      case SensKind::sensitive:
      case SensKind::liyorke:
        CHECK(replay_as(f, w, SensKind::sensitive));
        CHECK(replay_as(f, w, SensKind::weak));
        break;
      case SensKind::weak:
        break;
    }
  }
}

}  // namespace

TEST_CASE("tent_aug_F is sensitive but not strongly or Li-Yorke sensitive") {
  const SetValuedMap f = map_of("tent_aug_F");

  const auto sens = sensitivity_probe(SensKind::sensitive, f, q(2, 5));
  CHECK(sens.status == SensStatus::witnessed_yes);
  CHECK_FALSE(sens.refuted);
  check_chain(f, sens);

  const auto strong = sensitivity_probe(SensKind::strong, f, q(2, 5));
  CHECK(strong.refuted);
  const auto at0 = std::find_if(strong.certificates.begin(), strong.certificates.end(), [](const auto& c) {
    return c.kind == ImpossibilityCertificate::Kind::full_orbit && c.x && *c.x == 0;
  });
  REQUIRE(at0 != strong.certificates.end());
  CHECK(recheck(f, *at0));
  check_chain(f, strong);

  const auto ly = liyorke_probe(f, q(2, 5), q(1, 4), 1, 64);
  CHECK(ly.refuted);
  const auto dich = std::find_if(ly.certificates.begin(), ly.certificates.end(), [](const auto& c) {
    return c.kind == ImpossibilityCertificate::Kind::liyorke_dichotomy && c.x && *c.x == 0;
  });
  REQUIRE(dich != ly.certificates.end());
  CHECK(dich->bound == q(1, 2));
  REQUIRE(dich->observed_min);
  CHECK(*dich->observed_min >= q(1, 2));
  CHECK(recheck(f, *dich));
}

TEST_CASE("tent_aug_G is weakly sensitive and has no sensitivity witness") {
  const SetValuedMap g = map_of("tent_aug_G");
  const auto weak = sensitivity_probe(SensKind::weak, g, q(1, 4));
  CHECK(weak.status == SensStatus::witnessed_yes);
  check_chain(g, weak);

  const auto sens = sensitivity_probe(SensKind::sensitive, g, q(2, 5));
  CHECK(sens.status == SensStatus::no_witness_at_budget);
  CHECK_FALSE(sens.refuted);
  CHECK(sens.first_miss);
}

TEST_CASE("constant map: weak yes, sensitive refuted") {
  const SetValuedMap f = map_of("constant_full");
  const auto weak = sensitivity_probe(SensKind::weak, f, q(1, 2));
  CHECK(weak.status == SensStatus::witnessed_yes);
  check_chain(f, weak);

  const auto sens = sensitivity_probe(SensKind::sensitive, f, q(1, 2));
  CHECK(sens.status == SensStatus::no_witness_at_budget);
  CHECK(sens.refuted);
  REQUIRE_FALSE(sens.certificates.empty());
  CHECK(sens.certificates.front().kind == ImpossibilityCertificate::Kind::constant_values);
  CHECK(recheck(f, sens.certificates.front()));
  CHECK_FALSE(recheck(map_of("tent"), sens.certificates.front()));
}

TEST_CASE("tent is Li-Yorke sensitive over a long window") {
  const SetValuedMap f = map_of("tent");
  const auto ly = liyorke_probe(f, q(1, 4), q(1, 16), 1, 200);
  CHECK(ly.status == SensStatus::witnessed_yes);
  CHECK_FALSE(ly.refuted);
  for (const auto& w : ly.witnesses) {
    CHECK(w.min_h < q(1, 16));
    CHECK(w.separated_strict >= 10);
    CHECK(w.separated_nonstrict >= w.separated_strict);
  }
  check_chain(f, ly);
}

TEST_CASE("every kind is witnessed for tent and the witnesses replay") {
  const SetValuedMap f = map_of("tent");
  for (auto k : {SensKind::strong, SensKind::sensitive, SensKind::weak}) {
    const auto v = sensitivity_probe(k, f, q(2, 5));
    CHECK(v.status == SensStatus::witnessed_yes);
    CHECK(v.witnesses.size() == 17 * 3);
    check_chain(f, v);
  }
}

TEST_CASE("tampered witnesses fail to replay") {
  const SetValuedMap f = map_of("tent");
  const auto v = sensitivity_probe(SensKind::sensitive, f, q(2, 5));
  REQUIRE_FALSE(v.witnesses.empty());
  auto w = v.witnesses.front();
  w.measured += q(1, 1000);
  CHECK_FALSE(replay(f, w));
  w = v.witnesses.front();
  w.delta = abs_diff(w.x, w.y);
  CHECK_FALSE(replay(f, w));
  CHECK_THROWS_AS(replay_as(f, v.witnesses.front(), SensKind::strong), Error);
}

TEST_CASE("single-valued maps: the three measures coincide") {
  const SetValuedMap f = map_of("tent");
  Gen gen(71);
  for (int i = 0; i < 1000; ++i) {
    const Scalar x = gen.unit_rational(48);
    const Scalar y = gen.unit_rational(48);
    const unsigned m = 1 + gen.below(8);
    const Scalar s = measure(SensKind::sensitive, f, x, y, m);
    CHECK(measure(SensKind::strong, f, x, y, m) == s);
    CHECK(measure(SensKind::weak, f, x, y, m) == s);
    CHECK(s == abs_diff(iterate(f, x, m).min(), iterate(f, y, m).min()));
  }
}

TEST_CASE("measures are ordered: strong <= sensitive <= weak") {
  Gen gen(72);
  for (const char* name : {"tent_aug_F", "tent_aug_G", "devil_pair", "pin", "fan01"}) {
    const SetValuedMap f = map_of(name);
    for (int i = 0; i < 100; ++i) {
      const Scalar x = gen.unit_rational(24);
      const Scalar y = gen.unit_rational(24);
      const unsigned m = 1 + gen.below(5);
      const Scalar st = measure(SensKind::strong, f, x, y, m);
      const Scalar se = measure(SensKind::sensitive, f, x, y, m);
      const Scalar we = measure(SensKind::weak, f, x, y, m);
      CHECK(st <= se);
      CHECK(se <= we);
    }
  }
}

TEST_CASE("candidate points stay inside the delta ball") {
  const SetValuedMap f = map_of("tent_aug_G");
  const ProbeBudget budget;
  Gen gen(73);
  for (int i = 0; i < 200; ++i) {
    const Scalar x = gen.unit_rational(32);
    const Scalar delta = budget.deltas[gen.below(budget.deltas.size())];
    const auto ys = candidate_ys(f, x, delta, budget);
    CHECK(std::is_sorted(ys.begin(), ys.end()));
    CHECK(std::adjacent_find(ys.begin(), ys.end()) == ys.end());
    for (const auto& y : ys) {
      CHECK(y != x);
      CHECK(abs_diff(x, y) < delta);
      CHECK(y >= 0);
      CHECK(y <= 1);
    }
  }
  CHECK_THROWS_AS(candidate_ys(f, q(1, 2), Scalar(0), budget), Error);
}

TEST_CASE("explosive iterates are cut short, witnesses stay exact") {
  const SetValuedMap f = map_of("preimage_union");
  ProbeBudget budget;
  budget.max_components = 64;
  const auto weak = sensitivity_probe(SensKind::weak, f, q(1, 2), budget);
  CHECK(weak.truncated > 0);
  CHECK(weak.status == SensStatus::witnessed_yes);
  for (const auto& w : weak.witnesses) {
    CHECK(iterate(f, w.y, w.m).size() <= 64);
    CHECK(replay(f, w));
  }
}

TEST_CASE("probe argument errors") {
  const SetValuedMap f = map_of("tent");
  CHECK_THROWS_AS(sensitivity_probe(SensKind::sensitive, f, Scalar(0)), Error);
  CHECK_THROWS_AS(sensitivity_probe(SensKind::liyorke, f, q(1, 2)), Error);
  CHECK_THROWS_AS(liyorke_probe(f, q(1, 4), q(1, 16), 5, 5), Error);
  CHECK_THROWS_AS(liyorke_probe(f, q(1, 4), Scalar(0), 1, 8), Error);
  ProbeBudget zero;
  zero.horizon = 0;
  CHECK_THROWS_AS(sensitivity_probe(SensKind::weak, f, q(1, 2), zero), Error);
}

TEST_CASE("finite probes agree with the oracle") {
  Gen gen(74);
  for (int i = 0; i < 500; ++i) {
    const FiniteSystem s = gen.finite_system(2 + gen.below(4));
    const FiniteReport r = finite_oracle(s, 12);
    CHECK(sensitivity_probe_finite(SensKind::strong, s, 12) == r.strong_at);
    CHECK(sensitivity_probe_finite(SensKind::sensitive, s, 12) == r.sensitive_at);
    CHECK(sensitivity_probe_finite(SensKind::weak, s, 12) == r.weak_at);
    CHECK(sensitivity_probe_finite(SensKind::liyorke, s, 12) == r.liyorke_at);
  }
}
