#include "orbitkit/corpus.hpp"

#include <algorithm>
#include <sstream>

#include "orbitkit/analysis.hpp"
#include "orbitkit/error.hpp"

namespace orbitkit {

const SetValuedMap& BuiltinSpec::map() const {
  if (const auto* m = std::get_if<SetValuedMap>(&object)) return *m;
  throw Error(Errc::invalid_argument, "builtin '" + name + "' is a finite system, not an interval map");
}

const FiniteSystem& BuiltinSpec::system() const {
  if (const auto* s = std::get_if<FiniteSystem>(&object)) return *s;
  throw Error(Errc::invalid_argument, "builtin '" + name + "' is an interval map, not a finite system");
}

namespace {

const Scalar kHalf(1, 2);

Scalar q(long p, long r) {
  Scalar v(p, r);
  v.canonicalize();
  return v;
}

const std::vector<CatalogEntry> kCatalog = {
    {"tent", {}, "map", "tent map T(t) = 2t on [0,1/2], 2(1-t) on [1/2,1]"},
    {"identity", {}, "map", "identity map"},
    {"constant_full", {}, "map", "constant map F(x) = [0,1]; weakly sensitive but not sensitive"},
    {"double_tent_h", {}, "map", "double tent h with fixed points 1/6 and 5/6"},
    {"double_tent_F", {{"s", "78/107"}, {"t", "37/107"}}, "map",
     "double tent h rewired at 1/6 -> {1/6, s} and 5/6 -> {5/6, t}; transitive without weak dense orbits"},
    {"flip", {}, "map", "F(t) = {t, 1-t}; orbit sets are Cantor sets except at 1/2"},
    {"devil_pair", {{"level", "6"}}, "map", "F(t) = {t, f(t)} with f a level-m Cantor function approximation"},
    {"fan0", {}, "map", "F(0) = [0,1], F(t) = {t} otherwise; orbit of 0 is the fan F_omega"},
    {"fan01", {}, "map", "F(0) = F(1) = [0,1], F(t) = {t} otherwise; orbit of 0 is a Cantor fan"},
    {"pin", {{"r", "1/2"}}, "map", "F(r) = [0,1], F(t) = {r} otherwise; infinite-dimensional orbit set"},
    {"tent_aug_F", {}, "map", "F(0) = [0,1], F(t) = {T(t)} otherwise; sensitive, not strongly sensitive"},
    {"tent_aug_G", {{"t0", "37/107"}}, "map", "G(t) = {t0, T(t)}; weakly sensitive, not sensitive"},
    {"slide", {}, "map", "F(t) = {t} on [0,1), F(1) = [0,1]; weak dense orbit at 1 but not transitive"},
    {"ramp", {}, "map", "F(0) = [1/2,1], identity on [1/2,1]; orbit of 0 is an arc"},
    {"sec3_F", {}, "map", "F(0) = {0}, F(t) = [0,1] otherwise; graph not closed"},
    {"sec3_G", {}, "map", "G(0) = {0}, G(t) = [t,1] otherwise; graph not closed"},
    {"preimage_union", {{"maps", "tent,identity"}}, "map", "F(x) = f_1^{-1}(x) u ... u f_k^{-1}(x)"},
    {"cycle3", {}, "finite", "a -> {b}, b -> {c}, c -> {a}"},
    {"swap", {}, "finite", "a -> {b}, b -> {a}"},
    {"fixed2", {}, "finite", "a -> {a}, b -> {b}"},
    {"one_way", {}, "finite", "a -> {b}, b -> {b}; dense orbit at a without transitivity"},
    {"convergent_sequence", {{"n", "5"}}, "finite",
     "truncation of {1/n} u {0}: F(1) = all other points, every other point fixed"},
};

std::string yes_no(bool b) { return b ? "true" : "false"; }

Expectation eval_at(Scalar x, const char* expected, std::string anchor) {
  return {"evaluate(" + to_string(x) + ")", expected, std::move(anchor),
          [x](const BuiltinSpec& s) { return format_set(evaluate(s.map(), x)); }};
}

Expectation usc_is(bool expected, std::string anchor) {
  return {"usc", yes_no(expected), std::move(anchor),
          [](const BuiltinSpec& s) { return yes_no(usc_check(s.map()).holds); }};
}

Expectation lsc_is(bool expected, std::string anchor) {
  return {"lsc", yes_no(expected), std::move(anchor),
          [](const BuiltinSpec& s) { return yes_no(lsc_check(s.map()).holds); }};
}

Expectation connected_is(Tri expected, std::string anchor) {
  return {"values_connected", std::string(tri_name(expected)), std::move(anchor),
          [](const BuiltinSpec& s) { return std::string(tri_name(values_connected_check(s.map()).connected)); }};
}

Expectation minimality_is(bool dense, bool weak, std::string anchor) {
  return {"dense_minimal/weak_dense_minimal", yes_no(dense) + "/" + yes_no(weak), std::move(anchor),
          [](const BuiltinSpec& s) {
            auto v = minimality_check(s.system());
            return yes_no(v.dense_minimal == Status::certified_yes) + "/" +
                   yes_no(v.weak_dense_minimal == Status::certified_yes);
          }};
}

class ParamReader {
 public:
  ParamReader(const std::string& name, const Params& given) : name_(name), given_(given) {
    const auto it = std::find_if(kCatalog.begin(), kCatalog.end(), [&](const CatalogEntry& e) { return e.name == name; });
    if (it == kCatalog.end()) throw Error(Errc::unknown_name, "no builtin named '" + name + "'");
    entry_ = &*it;
    for (const auto& [k, v] : given) {
      const bool known = std::any_of(entry_->defaults.begin(), entry_->defaults.end(),
                                     [&](const auto& d) { return d.first == k; });
      if (!known) throw Error(Errc::bad_params, "builtin '" + name + "' has no parameter '" + k + "'");
    }
  }

  std::string raw(const std::string& key) {
    auto it = given_.find(key);
    std::string value;
    if (it != given_.end()) {
      value = it->second;
    } else {
      for (const auto& d : entry_->defaults) {
        if (d.first == key) value = d.second;
      }
    }
    used_.emplace_back(key, value);
    return value;
  }

  Scalar scalar(const std::string& key, const Scalar& lo, const Scalar& hi) {
    const std::string text = raw(key);
    Scalar v;
    try {
      v = parse_scalar(text);
    } catch (const Error&) {
      throw Error(Errc::bad_params, key + " = '" + text + "' is not a rational");
    }
    if (v < lo || v > hi) {
      throw Error(Errc::bad_params, key + " = " + to_string(v) + " outside [" + to_string(lo) + "," + to_string(hi) + "]");
    }
    used_.back().second = to_string(v);
    return v;
  }

  unsigned count(const std::string& key, unsigned lo, unsigned hi) {
    const Scalar v = scalar(key, Scalar(lo), Scalar(hi));
    if (v.get_den() != 1) throw Error(Errc::bad_params, key + " must be an integer");
    return static_cast<unsigned>(v.get_num().get_ui());
  }

  /// Name with every parameter that differs from its default, or always
  /// when `always` is set.
  std::string display_name(bool always = false) const {
    std::string extra;
    for (const auto& [k, v] : used_) {
      std::string def;
      for (const auto& d : entry_->defaults) {
        if (d.first == k) def = d.second;
      }
      if (always || v != def) extra += (extra.empty() ? "" : ",") + k + "=" + v;
    }
    return extra.empty() ? name_ : name_ + "[" + extra + "]";
  }

  const std::vector<std::pair<std::string, std::string>>& used() const { return used_; }

 private:
  std::string name_;
  const Params& given_;
  const CatalogEntry* entry_ = nullptr;
  std::vector<std::pair<std::string, std::string>> used_;
};

std::vector<MapPiece> tent_pieces() {
  return {segment(0, kHalf, "cc", 0, 1), segment(kHalf, 1, "cc", 1, 0)};
}

IntervalMap named_interval_map(const std::string& n) {
  if (n == "tent") return tent_map();
  if (n == "identity") return identity_map();
  if (n == "double_tent_h") return double_tent_map();
  if (n.rfind("constant", 0) == 0) {
    auto open = n.find('(');
    Scalar c = open == std::string::npos ? kHalf : parse_scalar(n.substr(open + 1, n.size() - open - 2));
    return constant_map(c);
  }
  throw Error(Errc::bad_params, "unknown interval map '" + n + "' (tent, identity, double_tent_h, constant(c))");
}

}  // namespace

const std::vector<CatalogEntry>& catalog() { return kCatalog; }

IntervalMap cantor_approximation(unsigned level) {
  // Remaining triadic intervals at this level; f rises by 2^-level across
  // each and is flat across the removed gaps.
  std::vector<std::pair<Scalar, Scalar>> kept{{Scalar(0), Scalar(1)}};
  for (unsigned l = 0; l < level; ++l) {
    std::vector<std::pair<Scalar, Scalar>> next;
    for (const auto& [a, b] : kept) {
      const Scalar third = (b - a) / 3;
      next.emplace_back(a, a + third);
      next.emplace_back(b - third, b);
    }
    kept = std::move(next);
  }
  std::vector<IntervalMap::Knot> knots;
  const Scalar step = Scalar(1) / Scalar(mpz_class(1) << level);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    knots.push_back({kept[i].first, step * static_cast<unsigned long>(i)});
    knots.push_back({kept[i].second, step * static_cast<unsigned long>(i + 1)});
  }
  // Adjacent kept intervals never touch, so all knots are distinct.
  return IntervalMap("cantor[level=" + std::to_string(level) + "]", std::move(knots));
}

IntervalMap double_tent_map() {
  return IntervalMap("double_tent_h", {{Scalar(0), kHalf}, {q(1, 4), Scalar(0)}, {q(3, 4), Scalar(1)}, {Scalar(1), kHalf}});
}

BuiltinSpec builtin(const std::string& name, const Params& params) {
  ParamReader pr(name, params);
  auto make = [&](std::vector<MapPiece> pieces, std::string display) {
    return BuiltinSpec{display, {}, SetValuedMap(display, std::move(pieces)), {}, {}};
  };

  BuiltinSpec spec = [&]() -> BuiltinSpec {
    if (name == "tent") {
      auto s = make(tent_pieces(), "tent");
      s.expectations = {eval_at(kHalf, "{1}", "tent peak T(1/2) = 1"), usc_is(true, "continuous single-valued"),
                        {"preimage(2/3)", "{1/3}|{2/3}", "solve 2x = 2/3 and 2(1-x) = 2/3",
                         [](const BuiltinSpec& b) { return format_set(*preimage(b.map(), q(2, 3))); }}};
      return s;
    }
    if (name == "identity") {
      auto s = make({segment(0, 1, "cc", 0, 1)}, "identity");
      s.expectations = {usc_is(true, "continuous"), lsc_is(true, "continuous")};
      return s;
    }
    if (name == "constant_full") {
      auto s = make({rectangle(0, 1, "cc", ClosedSet::unit())}, "constant_full");
      s.expectations = {eval_at(q(1, 3), "[0,1]", "F(x) = [0,1] everywhere"), usc_is(true, "closed graph")};
      return s;
    }
    if (name == "double_tent_h") {
      auto s = make(double_tent_map().as_set_map().pieces(), "double_tent_h");
      s.expectations = {eval_at(q(1, 4), "{0}", "h(1/4) = 0"), eval_at(q(1, 6), "{1/6}", "fixed point 1/6"),
                        eval_at(q(5, 6), "{5/6}", "fixed point 5/6"),
                        {"preimage(0)", "{1/4}", "only the valley at 1/4 maps to 0",
                         [](const BuiltinSpec& b) { return format_set(*preimage(b.map(), Scalar(0))); }},
                        usc_is(true, "continuous single-valued")};
      return s;
    }
    if (name == "double_tent_F") {
      const Scalar sv = pr.scalar("s", kHalf, Scalar(1));
      const Scalar tv = pr.scalar("t", Scalar(0), kHalf);
      auto pieces = double_tent_map().as_set_map().pieces();
      pieces.push_back(point_rule(q(1, 6), ClosedSet::point(sv)));
      pieces.push_back(point_rule(q(5, 6), ClosedSet::point(tv)));
      auto s = make(std::move(pieces), pr.display_name());
      s.params = pr.used();
      s.caveat = "s and t stand in for points with dense h-orbits in [1/2,1] and [0,1/2]; the defaults have 1/8-dense "
                 "orbits after a few steps but are eventually periodic";
      s.expectations = {eval_at(q(1, 6), ("{1/6}|{" + to_string(sv) + "}").c_str(), "rewiring at 1/6"),
                        eval_at(q(5, 6), ("{" + to_string(tv) + "}|{5/6}").c_str(), "rewiring at 5/6"),
                        usc_is(true, "finitely many extra graph points keep the graph closed")};
      return s;
    }
    if (name == "flip") {
      auto s = make({segment(0, 1, "cc", 0, 1), segment(0, 1, "cc", 1, 0)}, "flip");
      s.expectations = {eval_at(q(3, 10), "{3/10}|{7/10}", "F(t) = {t, 1-t}"), eval_at(kHalf, "{1/2}", "fixed at 1/2"),
                        connected_is(Tri::no, "two-point values"), usc_is(true, "closed graph")};
      return s;
    }
    if (name == "devil_pair") {
      const unsigned level = pr.count("level", 1, 12);
      auto pieces = std::vector<MapPiece>{segment(0, 1, "cc", 0, 1)};
      const auto cantor = cantor_approximation(level).as_set_map();
      for (const auto& p : cantor.pieces()) pieces.push_back(p);
      auto s = make(std::move(pieces), pr.display_name(true));
      s.params = pr.used();
      s.caveat = "piecewise-linear level-" + std::to_string(level) + " approximation of the Cantor function";
      s.expectations = {eval_at(kHalf, "{1/2}", "f(1/2) = 1/2, so 1/2 has a constant orbit"),
                        eval_at(Scalar(0), "{0}", "f(0) = 0"), usc_is(true, "continuous")};
      return s;
    }
    if (name == "fan0") {
      auto s = make({segment(0, 1, "cc", 0, 1), point_rule(0, ClosedSet::unit())}, "fan0");
      s.expectations = {eval_at(Scalar(0), "[0,1]", "F(0) = [0,1]"), usc_is(true, "closed graph"),
                        lsc_is(false, "right limit at 0 is {0}, smaller than F(0)"),
                        connected_is(Tri::yes, "values are points or [0,1]")};
      return s;
    }
    if (name == "fan01") {
      auto s = make({segment(0, 1, "cc", 0, 1), point_rule(0, ClosedSet::unit()), point_rule(1, ClosedSet::unit())},
                    "fan01");
      s.expectations = {eval_at(Scalar(1), "[0,1]", "F(1) = [0,1]"), eval_at(Scalar(0), "[0,1]", "F(0) = [0,1]"),
                        usc_is(true, "closed graph")};
      return s;
    }
    if (name == "pin") {
      const Scalar r = pr.scalar("r", Scalar(0), Scalar(1));
      auto s = make({rectangle(0, 1, "cc", ClosedSet::point(r)), point_rule(r, ClosedSet::unit())}, pr.display_name());
      s.params = pr.used();
      s.expectations = {eval_at(r == q(1, 5) ? q(2, 5) : q(1, 5), ("{" + to_string(r) + "}").c_str(), "F(t) = {r} off r"),
                        eval_at(r, "[0,1]", "F(r) = [0,1]"), usc_is(true, "closed graph"),
                        connected_is(Tri::yes, "values are points or [0,1]")};
      return s;
    }
    if (name == "tent_aug_F") {
      auto s = make({point_rule(0, ClosedSet::unit()), segment(0, kHalf, "oc", 0, 1), segment(kHalf, 1, "cc", 1, 0)},
                    "tent_aug_F");
      s.expectations = {eval_at(Scalar(0), "[0,1]", "F(0) = [0,1]"),
                        eval_at(q(1, 4), "{1/2}", "F(t) = {T(t)} for t > 0"),
                        {"iterate(0,2)", "[0,1]", "F^k(0) = [0,1] for every k",
                         [](const BuiltinSpec& b) { return format_set(iterate(b.map(), Scalar(0), 2)); }},
                        usc_is(true, "the limit of T at 0 lies in F(0)")};
      return s;
    }
    if (name == "tent_aug_G") {
      const Scalar t0 = pr.scalar("t0", Scalar(0), Scalar(1));
      auto pieces = tent_pieces();
      pieces.push_back(rectangle(0, 1, "cc", ClosedSet::point(t0)));
      auto s = make(std::move(pieces), pr.display_name());
      s.params = pr.used();
      s.caveat = "t0 stands in for a point with a dense tent orbit; the default orbit is 1/8-dense after 11 points";
      s.expectations = {eval_at(q(1, 4), ("{" + to_string(min_of(t0, kHalf)) + "}|{" + to_string(max_of(t0, kHalf)) + "}").c_str(),
                                "G(t) = {t0, T(t)}"),
                        connected_is(Tri::no, "two-point values away from T(x) = t0"),
                        usc_is(true, "closed graph")};
      if (t0 == kHalf) s.expectations.erase(s.expectations.begin());
      return s;
    }
    if (name == "slide") {
      auto s = make({segment(0, 1, "cc", 0, 1), point_rule(1, ClosedSet::unit())}, "slide");
      s.expectations = {eval_at(Scalar(1), "[0,1]", "F(1) = [0,1]"), eval_at(q(3, 10), "{3/10}", "F(t) = {t} below 1"),
                        usc_is(true, "closed graph")};
      return s;
    }
    if (name == "ramp") {
      auto s = make({point_rule(0, ClosedSet::interval(kHalf, 1)), segment(0, q(1, 4), "cc", kHalf, 0),
                     segment(q(1, 4), kHalf, "cc", 0, kHalf), segment(kHalf, 1, "cc", kHalf, 1)},
                    "ramp");
      s.expectations = {eval_at(Scalar(0), "[1/2,1]", "F(0) = [1/2,1]"), eval_at(q(3, 4), "{3/4}", "identity on [1/2,1]"),
                        {"image({0})", "[1/2,1]", "image of the point 0",
                         [](const BuiltinSpec& b) { return format_set(image(b.map(), ClosedSet::point(0))); }},
                        usc_is(true, "closed graph")};
      return s;
    }
    if (name == "sec3_F") {
      auto s = make({point_rule(0, ClosedSet::point(0)), rectangle(0, 1, "oc", ClosedSet::unit())}, "sec3_F");
      s.expectations = {usc_is(false, "limit [0,1] at 0 escapes F(0) = {0}"), lsc_is(true, "F(0) = {0} inside [0,1]")};
      return s;
    }
    if (name == "sec3_G") {
      auto s = make({point_rule(0, ClosedSet::point(0)), band(0, 1, "oc", 0, 1, 1, 1)}, "sec3_G");
      s.expectations = {usc_is(false, "limit [0,1] at 0 escapes G(0) = {0}"), lsc_is(true, "G(0) = {0} inside [0,1]"),
                        eval_at(q(1, 3), "[1/3,1]", "G(t) = [t,1]")};
      return s;
    }
    if (name == "preimage_union") {
      std::vector<IntervalMap> fs;
      std::stringstream list(pr.raw("maps"));
      for (std::string item; std::getline(list, item, ',');) fs.push_back(named_interval_map(item));
      auto pu = preimage_union_map(std::move(fs));
      BuiltinSpec s{pr.display_name(), pr.used(), pu.map, {}, {}};
      if (pr.raw("maps") == "tent,identity") {
        s.expectations = {eval_at(q(2, 3), "{1/3}|{2/3}", "tent preimages of 2/3 together with 2/3 itself"),
                          usc_is(true, "preimage maps of onto maps have closed graphs")};
      } else {
        s.expectations = {usc_is(true, "preimage maps of onto maps have closed graphs")};
      }
      return s;
    }
    if (name == "cycle3") {
      BuiltinSpec s{"cycle3", {}, FiniteSystem("cycle3", {"a", "b", "c"}, {0b010, 0b100, 0b001}), {}, {}};
      s.expectations = {minimality_is(true, true, "single cycle through every state")};
      return s;
    }
    if (name == "swap") {
      BuiltinSpec s{"swap", {}, FiniteSystem("swap", {"a", "b"}, {0b10, 0b01}), {}, {}};
      s.expectations = {minimality_is(true, true, "two-cycle")};
      return s;
    }
    if (name == "fixed2") {
      BuiltinSpec s{"fixed2", {}, FiniteSystem("fixed2", {"a", "b"}, {0b01, 0b10}), {}, {}};
      s.expectations = {minimality_is(false, false, "two fixed points")};
      return s;
    }
    if (name == "one_way") {
      BuiltinSpec s{"one_way", {}, FiniteSystem("one_way", {"a", "b"}, {0b10, 0b10}), {}, {}};
      s.expectations = {minimality_is(false, false, "b never returns to a")};
      return s;
    }
    if (name == "convergent_sequence") {
      const unsigned n = pr.count("n", 1, 11);
      std::vector<std::string> labels{"1"};
      for (unsigned i = 2; i <= n; ++i) labels.push_back("1/" + std::to_string(i));
      labels.push_back("0");
      std::vector<StateSet> table;
      const StateSet all = (StateSet{1} << labels.size()) - 1;
      table.push_back(all & ~StateSet{1});
      for (unsigned i = 1; i < labels.size(); ++i) table.push_back(singleton_state(i));
      const std::string display = pr.display_name(true);
      BuiltinSpec s{display, pr.used(), FiniteSystem(display, labels, table), {}, {}};
      s.caveat = "finite truncation of the convergent sequence space";
      s.expectations = {minimality_is(false, false, "every point but 1 is fixed")};
      return s;
    }
    throw Error(Errc::unknown_name, "no builtin named '" + name + "'");
  }();
  if (spec.params.empty()) spec.params = pr.used();
  return spec;
}

std::vector<ExpectationResult> check_expectations(const BuiltinSpec& spec) {
  std::vector<ExpectationResult> out;
  for (const auto& e : spec.expectations) {
    std::string actual = e.actual(spec);
    out.push_back({e.property, e.expected, actual, actual == e.expected});
  }
  return out;
}

}  // namespace orbitkit
