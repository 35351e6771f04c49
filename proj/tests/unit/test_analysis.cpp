#include <doctest.h>

#include "orbitkit/analysis.hpp"
#include "orbitkit/corpus.hpp"
#include "orbitkit/error.hpp"
#include "orbitkit/finite_oracle.hpp"
#include "orbitkit/transition.hpp"
#include "support/gen.hpp"

using namespace orbitkit;
using orbitkit::testing::Gen;

namespace {

Scalar q(long p, long d) { return ratio(p, d); }

SetValuedMap map_of(const std::string& name, const Params& params = {}) { return builtin(name, params).map(); }

FiniteSystem sys(std::vector<StateSet> table) { return FiniteSystem("t", std::move(table)); }

}  // namespace

TEST_CASE("transition graph examples") {
  const TransitionGraph tent = transition_graph(map_of("tent"), q(1, 2));
  CHECK(tent.succ[0] == std::vector<unsigned>{0, 1});
  CHECK(tent.succ[1] == std::vector<unsigned>{0, 1});

  const TransitionGraph id = transition_graph(map_of("identity"), q(1, 4));
  CHECK(id.succ[0] == std::vector<unsigned>{0, 1});
  CHECK(id.succ[2] == std::vector<unsigned>{1, 2, 3});
  CHECK(id.succ[3] == std::vector<unsigned>{2, 3});

  const TransitionGraph slide = transition_graph(map_of("slide"), q(1, 8));
  CHECK(slide.succ[7].size() == 8);
  for (const auto& row : slide.succ) CHECK_FALSE(row.empty());
}

TEST_CASE("transitivity probe verdicts") {
  const auto slide = transitivity_probe(map_of("slide"), q(1, 8), 40);
  CHECK(slide.status == Status::certified_no);
  REQUIRE(slide.refutation);
  CHECK(recheck(map_of("slide"), q(1, 8), *slide.refutation));

  const auto tent = transitivity_probe(map_of("tent"), q(1, 4), 40);
  CHECK(tent.status == Status::certified_yes);
  CHECK(tent.witnesses.size() == 16);
  for (const auto& w : tent.witnesses) CHECK(recheck(map_of("tent"), q(1, 4), w));

  const SetValuedMap dt = map_of("double_tent_F");
  const auto f = transitivity_probe(dt, q(1, 8), 40);
  CHECK(f.status == Status::certified_yes);
  for (const auto& w : f.witnesses) {
    CHECK(w.k <= 40);
    CHECK(recheck(dt, q(1, 8), w));
  }
  // Without the rewiring the two halves never meet.
  CHECK(transitivity_probe(map_of("double_tent_h"), q(1, 8), 40).status == Status::certified_no);
}

TEST_CASE("refutation of the slide map is stable under refinement") {
  for (long m : {2, 4, 8, 16, 32}) {
    const auto v = transitivity_probe(map_of("slide"), q(1, m), 40);
    CHECK(v.status == Status::certified_no);
  }
}

TEST_CASE("a tampered witness fails its recheck") {
  const SetValuedMap tent = map_of("tent");
  auto v = transitivity_probe(tent, q(1, 4), 40);
  REQUIRE_FALSE(v.witnesses.empty());
  TransitivityWitness w = v.witnesses.front();
  w.x = q(1, 4);  // fixed chain 1/4 -> 1/2 -> 1 -> 0
  w.v = 1;
  w.k = 3;
  CHECK_FALSE(recheck(tent, q(1, 4), w));
}

TEST_CASE("weak dense probe") {
  const SetValuedMap slide = map_of("slide");
  const DensityReport one = weak_dense_probe(slide, 1, q(1, 8), 40);
  CHECK(one.status == Status::certified_yes);
  for (const auto& h : one.first_hit) CHECK(h == std::optional<unsigned>(1));

  const DensityReport inner = weak_dense_probe(slide, q(3, 10), q(1, 8), 40);
  CHECK(inner.status == Status::certified_no);
  REQUIRE(inner.trap);
  CHECK(inner.trap->kind == TrapCertificate::Kind::orbit_cycle);
  CHECK(format_set(inner.trap->trap) == "{3/10}");
  CHECK(recheck(slide, q(3, 10), *inner.trap));

  const SetValuedMap dt = map_of("double_tent_F");
  const DensityReport side = weak_dense_probe(dt, q(1, 10), q(1, 8), 40);
  CHECK(side.status == Status::certified_no);
  REQUIRE(side.trap);
  CHECK(recheck(dt, q(1, 10), *side.trap));
  // The certificate's gap is disjoint from every orbit set it covers.
  for (unsigned k = 1; k <= 30; ++k) {
    const ClosedSet s = iterate(dt, q(1, 10), k);
    CHECK(s.subset_of(side.trap->trap));
  }
}

TEST_CASE("a trap certificate that is not invariant fails its recheck") {
  TrapCertificate fake;
  fake.kind = TrapCertificate::Kind::cell_union;
  fake.trap = parse_set("[0,1/2]");
  fake.gap_lo = q(1, 2);
  fake.gap_hi = 1;
  CHECK_FALSE(recheck(map_of("tent"), q(1, 10), fake));
  // [0,1/2] is not invariant for the rewired double tent either: F(1/6) contains s > 1/2.
  CHECK_FALSE(recheck(map_of("double_tent_F"), q(1, 10), fake));
}

TEST_CASE("dense orbit builder") {
  const SetValuedMap tent_f = map_of("tent_aug_F");
  const SeqPrefix xs = dense_orbit_build(tent_f, 0, q(1, 4), 64);
  CHECK(is_orbit_prefix(tent_f, xs));
  std::vector<bool> seen(4, false);
  for (const auto& x : xs) {
    for (unsigned c : cells_meeting(ClosedSet::point(x), 4)) seen[c] = true;
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));

  CHECK_THROWS_WITH_AS(dense_orbit_build(map_of("identity"), q(1, 3), q(1, 4), 64), doctest::Contains("NotWeakDense"),
                       Error);
  // The slide map has a weak dense orbit at 1 but no dense one: once the
  // orbit leaves 1 it is frozen.
  CHECK_THROWS_WITH_AS(dense_orbit_build(map_of("slide"), 1, q(1, 4), 64), doctest::Contains("NotWeakDense"), Error);

  const SetValuedMap tent = map_of("tent");
  const SeqPrefix t = dense_orbit_build(tent, q(37, 107), q(1, 4), 64);
  CHECK(is_orbit_prefix(tent, t));
  CHECK(t.front() == q(37, 107));
}

TEST_CASE("dense orbit builder on random finite systems yields covering walks") {
  Gen g(41);
  int built = 0;
  for (int t = 0; t < 2000; ++t) {
    const FiniteSystem s = g.sparse_system(3 + static_cast<unsigned>(g.below(3)));
    const FiniteReport r = finite_oracle(s);
    for (unsigned p = 0; p < s.size(); ++p) {
      if (r.dense_orbit[p]) {
        const auto walk = dense_orbit_build(s, p);
        CHECK(is_orbit_prefix(s, walk));
        CHECK(walk.front() == p);
        StateSet seen = 0;
        for (unsigned x : walk) seen |= singleton_state(x);
        CHECK(seen == s.all());
        ++built;
      } else {
        CHECK_THROWS_AS(dense_orbit_build(s, p), Error);
      }
    }
  }
  CHECK(built > 100);
}

TEST_CASE("finite oracle examples") {
  const FiniteReport swap = finite_oracle(sys({0b10, 0b01}));
  CHECK(swap.transitive);
  CHECK(swap.dense_orbit == std::vector<bool>{true, true});
  const FiniteReport fixed = finite_oracle(sys({0b01, 0b10}));
  CHECK_FALSE(fixed.transitive);
  CHECK(fixed.dense_orbit == std::vector<bool>{false, false});
  const FiniteReport one_way = finite_oracle(sys({0b10, 0b10}));
  CHECK_FALSE(one_way.transitive);
  CHECK(one_way.dense_orbit[0]);
  CHECK_FALSE(one_way.recurrent_dense_orbit[0]);
  CHECK_THROWS_WITH_AS(finite_oracle(FiniteSystem("big", std::vector<StateSet>(13, 1))), doctest::Contains("TooLarge"),
                       Error);
}

TEST_CASE("minimality") {
  const MinimalityVerdict c3 = minimality_check(builtin("cycle3").system());
  CHECK(c3.dense_minimal == Status::certified_yes);
  CHECK(c3.weak_dense_minimal == Status::certified_yes);

  const MinimalityVerdict fan = minimality_check(map_of("fan0"), q(1, 8), 40, {1});
  CHECK(fan.dense_minimal == Status::certified_no);
  CHECK(fan.refuting_point == std::optional<Scalar>(1));

  const MinimalityVerdict slide = minimality_check(map_of("slide"), q(1, 8), 40);
  CHECK(slide.weak_dense_minimal == Status::certified_no);
}

TEST_CASE("dense minimal iff weak dense minimal on all 3-state systems") {
  for (unsigned n = 1; n <= 3; ++n) {
    for (const auto& s : all_finite_systems(n)) {
      const MinimalityVerdict v = minimality_check(s);
      CHECK(v.dense_minimal == v.weak_dense_minimal);
      const FiniteReport r = finite_oracle(s);
      CHECK(r.dense_minimal == r.weak_dense_minimal);
      CHECK((v.dense_minimal == Status::certified_yes) == r.dense_minimal);
    }
  }
}
