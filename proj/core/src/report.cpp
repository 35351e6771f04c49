#include "report.hpp"

namespace orbitkit::report {

Json number(const Scalar& v) { return Json{{"exact", to_string(v)}, {"decimal", to_double(v)}}; }

Json set(const ClosedSet& s) { return Json{{"exact", format_set(s)}, {"outer", s.outer()}}; }

Json prefix(const SeqPrefix& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(number(x));
  return out;
}

Json map_section(const SetValuedMap& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces()) pieces.push_back(format_piece(p));
  Json breaks = Json::array();
  for (const auto& b : f.breakpoints()) breaks.push_back(number(b));
  return Json{{"name", f.name()},
              {"pieces", pieces},
              {"breakpoints", breaks},
              {"graph_closed", f.graph_closed()},
              {"singleton_valued", f.singleton_valued()},
              {"finite_valued", finite_valued(f)}};
}

Json expectations(const BuiltinSpec& spec) {
  Json out = Json::array();
  std::size_t i = 0;
  for (const auto& r : check_expectations(spec)) {
    out.push_back(Json{{"property", r.property},
                       {"expected", r.expected},
                       {"actual", r.actual},
                       {"passed", r.passed},
                       {"anchor", spec.expectations[i++].anchor}});
  }
  return out;
}

Json semicontinuity(const SemicontinuityVerdict& v) {
  Json out{{"holds", v.holds}};
  if (v.witness_x) out["witness_x"] = number(*v.witness_x);
  if (v.witness_limit) out["witness_limit"] = set(*v.witness_limit);
  return out;
}

Json connected(const ConnectedValues& c) {
  Json out{{"status", std::string(tri_name(c.connected))}};
  if (c.witness) out["witness_x"] = number(*c.witness);
  return out;
}

Json transitivity(const TransitivityVerdict& v, unsigned m) {
  Json out{{"status", std::string(status_name(v.status))},
           {"eps", number(v.budget.eps)},
           {"horizon", v.budget.horizon},
           {"pairs_witnessed", v.pairs_witnessed},
           {"pairs_total", static_cast<std::size_t>(m) * m}};
  if (v.refutation) {
    Json reach = Json::array();
    for (unsigned a : v.refutation->reachable) reach.push_back(a);
    out["refutation"] = Json{{"from_open_cell", v.refutation->u},
                             {"to_open_cell", v.refutation->v},
                             {"reachable_atoms", reach}};
  }
  Json ws = Json::array();
  for (const auto& w : v.witnesses) {
    ws.push_back(Json{{"u", w.u}, {"v", w.v}, {"x", number(w.x)}, {"k", w.k}});
  }
  out["witnesses"] = ws;
  return out;
}

Json density(const DensityReport& r) {
  Json hits = Json::array();
  for (const auto& h : r.first_hit) hits.push_back(h ? Json(*h) : Json(nullptr));
  Json out{{"status", std::string(status_name(r.status))},
           {"p", number(r.p)},
           {"eps", number(r.budget.eps)},
           {"horizon", r.budget.horizon},
           {"first_hit", hits}};
  if (r.trap) {
    const auto& t = *r.trap;
    out["trap"] = Json{{"kind", std::string(trap_kind_name(t.kind))},
                       {"set", set(t.trap)},
                       {"gap_lo", number(t.gap_lo)},
                       {"gap_hi", number(t.gap_hi)},
                       {"cycle_start", t.cycle_start},
                       {"period", t.period}};
  }
  return out;
}

Json tree(const SetValuedMap& f, const OrbitTree& t) {
  Json proj = Json::array();
  for (unsigned k = 1; k <= t.depth; ++k) {
    const ClosedSet pk = project_k(t, k);
    const ClosedSet expect = k == 1 ? ClosedSet::point(t.root) : iterate(f, t.root, k - 1);
    proj.push_back(Json{{"k", k}, {"set", set(pk)}, {"equals_iterate", pk == expect}});
  }
  return Json{{"kind", "tree"},
              {"z", number(t.root)},
              {"depth", t.depth},
              {"nodes", t.nodes.size()},
              {"branches", t.levels.empty() ? 0 : t.levels.back().size()},
              {"project", proj}};
}

Json cover(const OrbitCover& c) {
  Json proj = Json::array();
  for (unsigned k = 1; k <= c.depth; ++k) {
    Json cells = Json::array();
    for (unsigned i : project_k(c, k)) cells.push_back(i);
    proj.push_back(Json{{"k", k}, {"cells", cells}});
  }
  return Json{{"kind", "cover"},
              {"eps", number(c.eps)},
              {"cells", c.m},
              {"depth", c.depth},
              {"paths", c.paths.size()},
              {"outer", c.outer},
              {"values_connected", std::string(tri_name(c.values_connected))},
              {"project", proj}};
}

Json graph(const TransitionGraph& g) {
  Json edges = Json::array();
  for (unsigned a = 0; a < g.m; ++a) {
    for (unsigned b : g.succ[a]) edges.push_back(Json::array({a, b}));
  }
  return Json{{"eps", number(g.eps)}, {"nodes", g.m}, {"edges", edges}};
}

namespace {

Json witness(const SetValuedMap& f, const SensitivityWitness& w) {
  Json out{{"x", number(w.x)}, {"y", number(w.y)}, {"delta", number(w.delta)}, {"m", w.m}, {"measured", number(w.measured)}};
  if (w.kind == SensKind::liyorke) {
    out["window"] = Json::array({w.window_lo, w.window_hi});
    out["eta"] = number(w.eta);
    out["min_h"] = number(w.min_h);
    out["argmin"] = w.argmin;
    out["separated_strict"] = w.separated_strict;
    out["separated_nonstrict"] = w.separated_nonstrict;
  }
  out["replay"] = replay(f, w);
  Json weaker = Json::object();
  auto also = [&](SensKind k) { weaker[std::string(kind_name(k))] = replay_as(f, w, k); };
  switch (w.kind) {
    case SensKind::strong: also(SensKind::sensitive); also(SensKind::weak); break;
    case SensKind::sensitive: also(SensKind::weak); break;
    case SensKind::liyorke: also(SensKind::sensitive); also(SensKind::weak); break;
    case SensKind::weak: break;
  }
  out["replay_weaker"] = weaker;
  return out;
}

}  // namespace

Json sensitivity(const SetValuedMap& f, const SensitivityVerdict& v) {
  Json ws = Json::array();
  for (const auto& w : v.witnesses) ws.push_back(witness(f, w));
  Json cs = Json::array();
  for (const auto& c : v.certificates) {
    Json j{{"kind", std::string(certificate_kind_name(c.kind))}};
    if (c.x) j["x"] = number(*c.x);
    if (c.kind == ImpossibilityCertificate::Kind::liyorke_dichotomy) {
      j["bound"] = number(c.bound);
      if (c.observed_min) j["observed_min"] = number(*c.observed_min);
    }
    j["recheck"] = recheck(f, c);
    cs.push_back(j);
  }
  Json out{{"status", std::string(sens_status_name(v.status))},
           {"refuted", v.refuted},
           {"eps", number(v.eps)},
           {"horizon", v.budget.horizon},
           {"max_components", v.budget.max_components},
           {"truncated_sequences", v.truncated},
           {"witnesses", ws},
           {"certificates", cs}};
  if (v.first_miss) out["first_miss"] = Json{{"x", number(v.first_miss->first)}, {"delta", number(v.first_miss->second)}};
  return out;
}

Json finite(const FiniteSystem& s, const FiniteReport& r) {
  Json table = Json::object();
  for (unsigned i = 0; i < s.size(); ++i) table[s.labels()[i]] = s.format(s.evaluate(i));
  auto per_state = [&](const std::vector<bool>& v) {
    Json o = Json::object();
    for (unsigned i = 0; i < s.size(); ++i) o[s.labels()[i]] = static_cast<bool>(v[i]);
    return o;
  };
  return Json{{"name", s.name()},
              {"states", r.states},
              {"table", table},
              {"transitive", r.transitive},
              {"dense_orbit", per_state(r.dense_orbit)},
              {"recurrent_dense_orbit", per_state(r.recurrent_dense_orbit)},
              {"weak_dense_orbit", per_state(r.weak_dense_orbit)},
              {"dense_minimal", r.dense_minimal},
              {"weak_dense_minimal", r.weak_dense_minimal},
              {"horizon", r.horizon},
              {"strong", r.strong},
              {"sensitive", r.sensitive},
              {"weak", r.weak},
              {"liyorke", r.liyorke}};
}

}  // namespace orbitkit::report
