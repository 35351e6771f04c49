#include <doctest.h>

#include "orbitkit/corpus.hpp"
#include "orbitkit/error.hpp"
#include "orbitkit/interval_map.hpp"
#include "orbitkit/set_map.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace orbitkit;
using orbitkit::testing::Gen;

namespace {

Scalar q(long p, long d) { return ratio(p, d); }

SetValuedMap map_of(const std::string& name, const Params& params = {}) { return builtin(name, params).map(); }

std::vector<std::string> map_names() {
  std::vector<std::string> out;
  for (const auto& e : catalog()) {
    if (e.kind == "map") out.push_back(e.name);
  }
  return out;
}

// Largest slope among the pieces, at least 1.
Scalar lipschitz(const SetValuedMap& f) {
  Scalar best(1);
  auto bump = [&](const Scalar& s) {
    const Scalar a = abs(s);
    if (a > best) best = a;
  };
  for (const auto& piece : f.pieces()) {
    if (const auto* s = std::get_if<SegmentPiece>(&piece)) bump(s->f.slope);
    if (const auto* b = std::get_if<BandPiece>(&piece)) {
      bump(b->lower.slope);
      bump(b->upper.slope);
    }
  }
  return best;
}

}  // namespace

TEST_CASE("evaluate examples") {
  CHECK(format_set(evaluate(map_of("tent_aug_F"), 0)) == "[0,1]");
  CHECK(format_set(evaluate(map_of("double_tent_h"), q(1, 4))) == "{0}");
  CHECK(format_set(evaluate(map_of("flip"), q(3, 10))) == "{3/10}|{7/10}");
  CHECK(format_set(evaluate(map_of("sec3_G"), q(1, 2))) == "[1/2,1]");
  CHECK(format_set(evaluate(map_of("sec3_G"), 0)) == "{0}");
}

TEST_CASE("pieces must cover [0,1]") {
  CHECK_THROWS_WITH_AS(SetValuedMap("gap", {segment(0, q(1, 2), "co", 0, 1), segment(q(1, 2), 1, "oc", 0, 1)}),
                       doctest::Contains("DomainGap"), Error);
  CHECK_THROWS_AS(SetValuedMap("escape", {segment(0, 1, "cc", 0, 2)}), Error);
  CHECK_NOTHROW(SetValuedMap("ok", {segment(0, q(1, 2), "co", 0, 1), segment(q(1, 2), 1, "cc", 0, 1)}));
}

TEST_CASE("image examples") {
  CHECK(format_set(image(map_of("tent"), parse_set("[0,1/2]"))) == "[0,1]");
  CHECK(format_set(image(map_of("tent_aug_F"), parse_set("[0,1/4]"))) == "[0,1]");
  CHECK(format_set(image(map_of("ramp"), ClosedSet::point(0))) == "[1/2,1]");
  CHECK(format_set(image(map_of("flip"), parse_set("{1/5}|[2/5,1/2]"))) == "{1/5}|[2/5,3/5]|{4/5}");
}

TEST_CASE("image of an interval matches grid sampling") {
  Gen g(21);
  const unsigned steps = 512;
  for (const auto& name : map_names()) {
    const SetValuedMap f = map_of(name);
    if (!f.graph_closed()) continue;
    for (int t = 0; t < 10; ++t) {
      const ClosedSet a = g.closed_set(2);
      const ClosedSet img = image(f, a);
      // Every sampled value lies in the image, and every image component
      // endpoint is within the sampling resolution of some sampled value.
      ClosedSet sampled = evaluate(f, a.min());
      for (const auto& x : orbitkit::testing::sample(a, steps)) sampled = set_union(sampled, evaluate(f, x));
      // Point rules contribute values that a grid would miss.
      for (const auto& b : f.breakpoints()) {
        if (a.contains(b)) sampled = set_union(sampled, evaluate(f, b));
      }
      CHECK_MESSAGE(sampled.subset_of(img), name);
      CHECK_MESSAGE(excess(img, sampled) <= lipschitz(f) * Scalar(4, steps), name);
    }
  }
}

TEST_CASE("iterate examples") {
  CHECK(format_set(iterate(map_of("flip"), q(3, 10), 3)) == "{3/10}|{7/10}");
  CHECK(format_set(iterate(map_of("tent_aug_F"), 0, 2)) == "[0,1]");
  const Scalar t0 = q(37, 107);
  const Scalar x = q(1, 5);
  const IntervalMap tent = tent_map();
  const ClosedSet expect = ClosedSet::points(std::vector<Scalar>{t0, tent(t0), tent(tent(x))});
  CHECK(iterate(map_of("tent_aug_G"), x, 2) == expect);
}

TEST_CASE("iterate composes: F^(m+n)(x) = F^m(F^n(x))") {
  Gen g(22);
  for (const auto& name : map_names()) {
    const SetValuedMap f = map_of(name);
    if (!f.graph_closed()) continue;
    for (int t = 0; t < 8; ++t) {
      const Scalar x = g.unit_rational();
      const unsigned n = 1 + static_cast<unsigned>(g.below(4));
      const unsigned m = 1 + static_cast<unsigned>(g.below(4));
      const ClosedSet whole = iterate(f, x, m + n);
      ClosedSet split = iterate(f, x, n);
      for (unsigned k = 0; k < m; ++k) split = image(f, split);
      CHECK_FALSE(whole.outer());
      CHECK_MESSAGE(whole == split, name << " x=" << to_string(x) << " n=" << n << " m=" << m);
    }
  }
}

TEST_CASE("iterate matches pointwise expansion on finite-valued maps") {
  Gen g(23);
  for (const char* name : {"flip", "devil_pair", "tent", "double_tent_F", "tent_aug_G"}) {
    const SetValuedMap f = map_of(name);
    for (int t = 0; t < 10; ++t) {
      const Scalar x = g.unit_rational();
      for (unsigned n = 1; n <= 6; ++n) {
        CHECK_MESSAGE(iterate(f, x, n) == orbitkit::testing::brute_iterate_points(f, x, n), name);
      }
    }
  }
}

TEST_CASE("usc check") {
  const auto f = usc_check(map_of("sec3_F"));
  CHECK_FALSE(f.holds);
  REQUIRE(f.witness_x);
  CHECK(*f.witness_x == 0);
  CHECK(format_set(*f.witness_limit) == "[0,1]");
  CHECK(recheck(map_of("sec3_F"), f));
  CHECK_FALSE(usc_check(map_of("sec3_G")).holds);
  CHECK(usc_check(map_of("double_tent_h")).holds);
  CHECK(usc_check(map_of("fan0")).holds);
  // Closed domains imply a closed graph.
  Gen g(24);
  for (int t = 0; t < 200; ++t) {
    std::vector<MapPiece> pieces{rectangle(0, 1, "cc", g.closed_set(2))};
    for (int i = 0; i < 3; ++i) {
      Scalar a = g.unit_rational(), b = g.unit_rational();
      if (b < a) std::swap(a, b);
      if (a != b && g.coin()) {
        pieces.push_back(segment(a, b, "cc", g.unit_rational(), g.unit_rational()));
      } else {
        pieces.push_back(point_rule(a, g.closed_set(2)));
      }
    }
    CHECK(usc_check(SetValuedMap("random", pieces)).holds);
  }
}

TEST_CASE("lsc check") {
  const auto fan = lsc_check(map_of("fan0"));
  CHECK_FALSE(fan.holds);
  REQUIRE(fan.witness_x);
  CHECK(*fan.witness_x == 0);
  CHECK(format_set(*fan.witness_limit) == "{0}");
  CHECK(recheck(map_of("fan0"), fan));
  CHECK(lsc_check(map_of("identity")).holds);
  CHECK(lsc_check(map_of("sec3_G")).holds);
  CHECK(lsc_check(map_of("sec3_F")).holds);
}

TEST_CASE("preimage examples") {
  CHECK(format_set(*preimage(map_of("tent"), q(2, 3))) == "{1/3}|{2/3}");
  CHECK(format_set(*preimage(map_of("double_tent_h"), 0)) == "{1/4}");
  const SetValuedMap rect("rect", {rectangle(0, 1, "cc", parse_set("[1/4,1/2]")), rectangle(0, 1, "cc", ClosedSet::point(1))});
  CHECK(format_set(*preimage(rect, q(1, 3))) == "[0,1]");
  CHECK(format_set(*preimage(map_of("pin"), q(1, 3))) == "{1/2}");
}

TEST_CASE("preimage duality on 1000 probes per map") {
  Gen g(25);
  for (const auto& name : map_names()) {
    const SetValuedMap f = map_of(name);
    for (int t = 0; t < 1000; ++t) {
      const Scalar x = g.unit_rational(), y = g.unit_rational();
      const bool in_value = evaluate(f, x).contains(y);
      const auto pre = preimage(f, y);
      const bool in_pre = pre && pre->contains(x);
      if (f.graph_closed()) {
        CHECK_MESSAGE(in_value == in_pre, name << " x=" << to_string(x) << " y=" << to_string(y));
      } else if (in_value) {
        // Closure is taken for open domains, so only one direction is exact.
        CHECK_MESSAGE(in_pre, name);
      }
    }
  }
}

TEST_CASE("preimage union map") {
  const PreimageUnion pu = preimage_union_map({tent_map(), identity_map()});
  CHECK(format_set(evaluate(pu.map, q(2, 3))) == "{1/3}|{2/3}");
  CHECK(format_set(*common_preimage(pu.factors, q(2, 3))) == "{2/3}");
  CHECK_THROWS_WITH_AS(preimage_union_map({constant_map(q(1, 2))}), doctest::Contains("NotOnto"), Error);
  Gen g(26);
  for (int t = 0; t < 100; ++t) {
    const Scalar x = g.unit_rational(60);
    CHECK(evaluate(pu.map, x) == set_union(*tent_map().preimage(x), *identity_map().preimage(x)));
  }
  CHECK(usc_check(pu.map).holds);
}

TEST_CASE("values connected") {
  CHECK(values_connected_check(map_of("fan0")).connected == Tri::yes);
  const auto flip = values_connected_check(map_of("flip"));
  CHECK(flip.connected == Tri::no);
  REQUIRE(flip.witness);
  CHECK(*flip.witness != q(1, 2));
  CHECK_FALSE(evaluate(map_of("flip"), *flip.witness).is_connected());
  const auto g = values_connected_check(map_of("tent_aug_G"));
  CHECK(g.connected == Tri::no);
  CHECK_FALSE(evaluate(map_of("tent_aug_G"), *g.witness).is_connected());
  // Two overlapping bands whose union is connected only where they cross.
  const SetValuedMap cross("cross", {segment(0, 1, "cc", 0, 1), segment(0, 1, "cc", 1, 0)});
  CHECK(values_connected_check(cross).connected == Tri::no);
  const SetValuedMap bands("bands", {band(0, 1, "cc", 0, q(1, 2), q(1, 2), 1), band(0, 1, "cc", q(1, 4), 0, 1, q(3, 4))});
  CHECK(values_connected_check(bands).connected == Tri::yes);
}

TEST_CASE("piece text round-trips") {
  for (const char* line : {"segment 0 1/2 cc -> 0 1", "band 0 1 oc -> 0 1 1 1", "rect 0 1 co -> {1/2}|[3/4,1]",
                           "point 1/3 -> [0,1]"}) {
    CHECK(format_piece(parse_piece(line)) == line);
  }
  CHECK_THROWS_AS(parse_piece("segment 0 1 xx -> 0 1"), Error);
  CHECK_THROWS_AS(parse_piece("wedge 0 1"), Error);
}

TEST_CASE("finite system iterate agrees with naive expansion") {
  for (unsigned n = 1; n <= 3; ++n) {
    for (const auto& s : all_finite_systems(n)) {
      for (unsigned x = 0; x < n; ++x) {
        for (unsigned k = 1; k <= 12; ++k) CHECK(s.iterate(x, k) == orbitkit::testing::brute_iterate(s, x, k));
      }
    }
  }
  Gen g(27);
  for (int t = 0; t < 300; ++t) {
    const FiniteSystem s = g.finite_system(4 + static_cast<unsigned>(g.below(3)));
    for (unsigned x = 0; x < s.size(); ++x) {
      for (unsigned k = 1; k <= 12; ++k) CHECK(s.iterate(x, k) == orbitkit::testing::brute_iterate(s, x, k));
    }
  }
  CHECK_THROWS_AS(FiniteSystem("bad", {0b01, 0b00}), Error);
  CHECK_THROWS_AS(FiniteSystem("bad", {0b100, 0b01}), Error);
}
