#include <doctest.h>

#include <json.hpp>
#include <set>

#include "orbitkit/analysis.hpp"
#include "orbitkit/corpus.hpp"
#include "orbitkit/error.hpp"
#include "orbitkit/orbit.hpp"
#include "orbitkit/runner.hpp"

using namespace orbitkit;

namespace {

Scalar q(long p, long d) { return ratio(p, d); }

Scalar pow2inv(unsigned k) { return Scalar(mpz_class(1), mpz_class(1) << k); }

Errc code_of(const std::string& name, const Params& params = {}) {
  try {
    builtin(name, params);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error for ", name);
  return Errc::invalid_argument;
}

}  // namespace

TEST_CASE("every builtin meets its own expectations") {
  for (const auto& entry : catalog()) {
    CAPTURE(entry.name);
    const BuiltinSpec spec = builtin(entry.name);
    CHECK(spec.is_map() == (entry.kind == "map"));
    for (const auto& r : check_expectations(spec)) {
      CAPTURE(r.property);
      CHECK(r.actual == r.expected);
      CHECK(r.passed);
    }
  }
}

TEST_CASE("parameterised builtins") {
  const BuiltinSpec dp = builtin("devil_pair", {{"level", "4"}});
  CHECK(dp.name == "devil_pair[level=4]");
  CHECK(builtin("devil_pair").name == "devil_pair[level=6]");
  CHECK_FALSE(dp.caveat.empty());
  for (const auto& r : check_expectations(dp)) CHECK(r.passed);

  const BuiltinSpec pin = builtin("pin", {{"r", "1/5"}});
  CHECK(pin.name == "pin[r=1/5]");
  CHECK(format_set(evaluate(pin.map(), q(1, 5))) == "[0,1]");
  CHECK(format_set(evaluate(pin.map(), q(3, 4))) == "{1/5}");
  for (const auto& r : check_expectations(pin)) CHECK(r.passed);

  CHECK(builtin("pin", {{"r", "1/2"}}).name == "pin");
  CHECK(builtin("convergent_sequence", {{"n", "3"}}).system().size() == 4);

  const BuiltinSpec pu = builtin("preimage_union", {{"maps", "double_tent_h,identity"}});
  for (const auto& r : check_expectations(pu)) CHECK(r.passed);
}

TEST_CASE("builtin errors") {
  CHECK(code_of("nope") == Errc::unknown_name);
  CHECK(code_of("tent", {{"x", "1"}}) == Errc::bad_params);
  CHECK(code_of("pin", {{"r", "half"}}) == Errc::bad_params);
  CHECK(code_of("pin", {{"r", "3/2"}}) == Errc::bad_params);
  CHECK(code_of("devil_pair", {{"level", "3/2"}}) == Errc::bad_params);
  CHECK(code_of("devil_pair", {{"level", "0"}}) == Errc::bad_params);
  CHECK(code_of("preimage_union", {{"maps", "tent,logistic"}}) == Errc::bad_params);
  CHECK(code_of("convergent_sequence", {{"n", "0"}}) == Errc::bad_params);
  CHECK(code_of("preimage_union", {{"maps", "tent,constant(1/2)"}}) == Errc::not_onto);
  CHECK_THROWS_AS(builtin("cycle3").map(), Error);
  CHECK_THROWS_AS(builtin("tent").system(), Error);
}

TEST_CASE("semicontinuity across the catalog") {
  for (const auto& entry : catalog()) {
    if (entry.kind != "map") continue;
    CAPTURE(entry.name);
    const SetValuedMap f = builtin(entry.name).map();
    const auto usc = usc_check(f);
    const bool expect = entry.name != "sec3_F" && entry.name != "sec3_G";
    CHECK(usc.holds == expect);
    CHECK(recheck(f, usc));
  }
  const auto fan = lsc_check(builtin("fan0").map());
  CHECK_FALSE(fan.holds);
  REQUIRE(fan.witness_x);
  CHECK(*fan.witness_x == 0);
}

TEST_CASE("fan0 arms shrink like 2^-k") {
  // Arm k of the orbit of 0: k zeros, then a constant t.
  const SetValuedMap f = builtin("fan0").map();
  const unsigned n = 14;
  const OrbitCover cover = orbit_cover(f, Scalar(0), 6, q(1, 4));
  for (unsigned k = 1; k + 1 < n; ++k) {
    SeqPrefix lo(n, Scalar(0)), hi(n, Scalar(0));
    for (unsigned i = k; i < n; ++i) hi[i] = 1;
    CHECK(is_orbit_prefix(f, lo));
    CHECK(is_orbit_prefix(f, hi));
    const auto r = rho_prefix(lo, hi, n);
    CHECK(r.value == pow2inv(k) - pow2inv(n));
    CHECK(r.value + r.tail_bound == pow2inv(k));
    if (k < 6) {
      CHECK(cover_contains(cover, SeqPrefix(hi.begin(), hi.begin() + 6)));
      CHECK(cover_contains(cover, SeqPrefix(lo.begin(), lo.begin() + 6)));
    }
  }
}

TEST_CASE("fan01 arms have diameter 2^-(k+1)") {
  // Arm (a_1..a_k) of the orbit of 0: 0, a_1, ..., a_k, then a constant t.
  const SetValuedMap f = builtin("fan01").map();
  const unsigned n = 12;
  const OrbitCover cover = orbit_cover(f, Scalar(0), 6, q(1, 4));
  for (unsigned k = 0; k + 2 < n; ++k) {
    for (unsigned bits = 0; bits < (1u << std::min(k, 4u)); ++bits) {
      SeqPrefix lo(n, Scalar(0));
      for (unsigned i = 0; i < k; ++i) lo[1 + i] = (bits >> (i % 4)) & 1u;
      SeqPrefix hi = lo;
      SeqPrefix mid = lo;
      for (unsigned i = k + 1; i < n; ++i) {
        hi[i] = 1;
        mid[i] = q(1, 3);
      }
      CHECK(is_orbit_prefix(f, lo));
      CHECK(is_orbit_prefix(f, hi));
      CHECK(is_orbit_prefix(f, mid));
      const auto r = rho_prefix(lo, hi, n);
      CHECK(r.value == pow2inv(k + 1) - pow2inv(n));
      if (k + 1 < 6) CHECK(cover_contains(cover, SeqPrefix(mid.begin(), mid.begin() + 6)));
    }
  }
  // Leaving an arm is not allowed from an interior value.
  SeqPrefix bad{Scalar(0), q(1, 3), q(1, 2)};
  CHECK_FALSE(is_orbit_prefix(f, bad));
}

TEST_CASE("catalog listing") {
  std::set<std::string> names;
  for (const auto& e : catalog()) {
    CHECK(names.insert(e.name).second);
    CHECK((e.kind == "map" || e.kind == "finite"));
    CHECK_FALSE(e.anchor.empty());
  }
  const auto j = nlohmann::json::parse(list_builtins_json());
  REQUIRE(j.is_array());
  CHECK(j.size() == catalog().size());
  for (const auto& e : j) {
    CHECK(names.count(e.at("name").get<std::string>()) == 1);
    CHECK(e.contains("kind"));
    CHECK(e.contains("params"));
  }
  CHECK(list_builtins_json() == list_builtins_json());
}
