#include "orbitkit/runner.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>

#include "orbitkit/error.hpp"
#include "orbitkit/render.hpp"
#include "report.hpp"

namespace orbitkit {

namespace {

using report::Json;

enum class Finding { holds, refuted, unknown };

Finding from_bool(bool b) { return b ? Finding::holds : Finding::refuted; }

Finding from_status(Status s) {
  switch (s) {
    case Status::certified_yes: return Finding::holds;
    case Status::certified_no: return Finding::refuted;
    case Status::inconclusive: break;
  }
  return Finding::unknown;
}

Finding from_sens(const SensitivityVerdict& v) {
  if (v.refuted) return Finding::refuted;
  return v.status == SensStatus::witnessed_yes ? Finding::holds : Finding::unknown;
}

std::string finding_name(Finding f) {
  switch (f) {
    case Finding::holds: return "holds";
    case Finding::refuted: return "refuted";
    case Finding::unknown: break;
  }
  return "unknown";
}

template <class T>
class Lazy {
 public:
  explicit Lazy(std::function<T()> make) : make_(std::move(make)) {}
  const T& get() {
    if (!value_) value_ = make_();
    return *value_;
  }

 private:
  std::function<T()> make_;
  std::optional<T> value_;
};

Json config_section(const RunConfig& cfg, const std::string& source) {
  Json j{{"command", std::string(command_name(cfg.command))},
         {"map", source},
         {"eps", report::number(cfg.eps)},
         {"depth", cfg.depth},
         {"horizon", cfg.horizon},
         {"sens_eps", report::number(cfg.sens_eps)},
         {"sens_horizon", cfg.sens_horizon},
         {"z", report::number(cfg.z)},
         {"p", report::number(cfg.base_point())},
         {"eta", report::number(cfg.eta)},
         {"window", Json::array({cfg.window_lo, cfg.window_hi})}};
  Json asserts = Json::array();
  for (const auto& a : cfg.assertions) asserts.push_back(a);
  j["assertions"] = asserts;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Finite systems have no grid: every command reports the exhaustive oracle.
RunResult run_finite(const RunConfig& cfg, const BuiltinSpec& spec, Json doc) {
  const FiniteSystem& s = spec.system();
  const FiniteReport r = finite_oracle(s, cfg.horizon);
  doc["expectations"] = report::expectations(spec);
  doc["finite"] = report::finite(s, r);

  RunResult out;
  Json asserts = Json::array();
  for (const auto& a : cfg.assertions) {
    Finding f = Finding::unknown;
    if (a == "transitive") f = from_bool(r.transitive);
    else if (a == "weak_dense") f = from_bool(r.weak_dense_orbit[0]);
    else if (a == "strong") f = from_bool(r.strong);
    else if (a == "sensitive") f = from_bool(r.sensitive);
    else if (a == "weak") f = from_bool(r.weak);
    else if (a == "liyorke") f = from_bool(r.liyorke);
    else if (a == "usc" || a == "lsc") f = Finding::holds;  // discrete space
    else if (a == "values_connected") f = from_bool(spec.system().size() == 1);
    asserts.push_back(Json{{"property", a}, {"finding", finding_name(f)}});
    if (f == Finding::refuted) out.refuted.push_back(a);
  }
  doc["assertions"] = asserts;
  out.exit_code = out.refuted.empty() ? kExitOk : kExitRefuted;
  out.files["report.json"] = dump(doc);
  return out;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  validate(cfg);
  std::optional<BuiltinSpec> spec;
  std::string source;
  if (!cfg.builtin.empty()) {
    spec = builtin(cfg.builtin, cfg.builtin_params);
    source = "builtin " + spec->name;
  } else {
    source = "pieces " + cfg.map_name;
  }

  Json doc;
  doc["config"] = config_section(cfg, source);
  if (spec && !spec->is_map()) return run_finite(cfg, *spec, std::move(doc));

  const SetValuedMap f = spec ? spec->map() : SetValuedMap(cfg.map_name, cfg.pieces);
  const Scalar p = cfg.base_point();
  const unsigned m = grid_cells(cfg.eps);

  ProbeBudget budget;
  budget.horizon = cfg.sens_horizon;
  Lazy<SemicontinuityVerdict> usc([&] { return usc_check(f); });
  Lazy<SemicontinuityVerdict> lsc([&] { return lsc_check(f); });
  Lazy<ConnectedValues> conn([&] { return values_connected_check(f); });
  Lazy<TransitivityVerdict> trans([&] { return transitivity_probe(f, cfg.eps, cfg.horizon); });
  Lazy<DensityReport> dens([&] { return weak_dense_probe(f, p, cfg.eps, cfg.horizon); });
  auto sens_probe = [&](SensKind k) {
    return Lazy<SensitivityVerdict>([&f, &cfg, budget, k] { return sensitivity_probe(k, f, cfg.sens_eps, budget); });
  };
  Lazy<SensitivityVerdict> strong = sens_probe(SensKind::strong);
  Lazy<SensitivityVerdict> sensitive = sens_probe(SensKind::sensitive);
  Lazy<SensitivityVerdict> weak = sens_probe(SensKind::weak);
  Lazy<SensitivityVerdict> liyorke(
      [&] { return liyorke_probe(f, cfg.sens_eps, cfg.eta, cfg.window_lo, cfg.window_hi, budget); });

  RunResult out;
  doc["map"] = report::map_section(f);
  if (spec) {
    if (!spec->params.empty()) {
      Json params = Json::object();
      for (const auto& [k, v] : spec->params) params[k] = v;
      doc["map"]["params"] = params;
    }
    if (!spec->caveat.empty()) doc["map"]["caveat"] = spec->caveat;
    doc["expectations"] = report::expectations(*spec);
  }

  const Command c = cfg.command;
  const bool all = c == Command::report;

  if (all || c == Command::analyze) {
    Json a;
    a["usc"] = report::semicontinuity(usc.get());
    a["lsc"] = report::semicontinuity(lsc.get());
    a["values_connected"] = report::connected(conn.get());
    a["transitive"] = report::transitivity(trans.get(), m);
    doc["analysis"] = a;
    doc["summary"] = Json{{"usc", usc.get().holds},
                          {"lsc", lsc.get().holds},
                          {"values_connected", std::string(tri_name(conn.get().connected))},
                          {"transitive", std::string(status_name(trans.get().status))}};
    out.files["graph.svg"] = render_svg(f);
  }

  if (all || c == Command::orbit) {
    Json o;
    std::string title = "orbit of " + to_string(cfg.z) + " under " + f.name();
    try {
      const OrbitTree t = orbit_tree(f, cfg.z, cfg.depth);
      o = report::tree(f, t);
      out.files["orbit.svg"] = render_svg(t, title);
    } catch (const Error& e) {
      if (e.code() != Errc::not_finite_valued && e.code() != Errc::budget_exceeded) throw;
      const OrbitCover cv = orbit_cover(f, cfg.z, cfg.depth, cfg.eps);
      o = report::cover(cv);
      o["tree_unavailable"] = e.what();
      if (cv.values_connected == Tri::yes) {
        const DepthConnectivity d = depth_connectivity(cv);
        o["connectivity"] = Json{{"connected", d.connected}};
        if (d.failing_level) {
          o["connectivity"]["failing_level"] = *d.failing_level;
          o["connectivity"]["tubes_at_failure"] = d.tubes_at_failure;
        }
      }
      out.files["orbit.svg"] = render_svg(cv, title);
    }
    doc["orbit"] = o;
  }

  if (all || c == Command::transition) {
    const TransitionGraph g = transition_graph(f, cfg.eps);
    doc["transition"] = report::graph(g);
    out.files["transition.dot"] = to_dot(g, f.name());
    out.files["transition.svg"] = render_svg(g, "transition graph of " + f.name() + " at eps " + to_string(cfg.eps));
  }

  if (all || c == Command::density) {
    Json d;
    d["weak_dense"] = report::density(dens.get());
    try {
      d["dense_orbit"] = Json{{"status", "built"}, {"prefix", report::prefix(dense_orbit_build(f, p, cfg.eps, cfg.horizon))}};
    } catch (const Error& e) {
      d["dense_orbit"] = Json{{"status", std::string(errc_name(e.code()))}, {"message", e.what()}};
    }
    doc["density"] = d;
  }

  if (all || c == Command::sensitivity) {
    Json s;
    s["strong"] = report::sensitivity(f, strong.get());
    s["sensitive"] = report::sensitivity(f, sensitive.get());
    s["weak"] = report::sensitivity(f, weak.get());
    s["liyorke"] = report::sensitivity(f, liyorke.get());
    doc["sensitivity"] = s;
  }

  Json asserts = Json::array();
  for (const auto& a : cfg.assertions) {
    Finding fd = Finding::unknown;
    if (a == "usc") fd = from_bool(usc.get().holds);
    else if (a == "lsc") fd = from_bool(lsc.get().holds);
    else if (a == "values_connected") {
      const Tri t = conn.get().connected;
      fd = t == Tri::yes ? Finding::holds : t == Tri::no ? Finding::refuted : Finding::unknown;
    } else if (a == "transitive") fd = from_status(trans.get().status);
    else if (a == "weak_dense") fd = from_status(dens.get().status);
    else if (a == "strong") fd = from_sens(strong.get());
    else if (a == "sensitive") fd = from_sens(sensitive.get());
    else if (a == "weak") fd = from_sens(weak.get());
    else if (a == "liyorke") fd = from_sens(liyorke.get());
    asserts.push_back(Json{{"property", a}, {"finding", finding_name(fd)}});
    if (fd == Finding::refuted) out.refuted.push_back(a);
  }
  doc["assertions"] = asserts;
  out.exit_code = out.refuted.empty() ? kExitOk : kExitRefuted;
  out.files["report.json"] = dump(doc);
  return out;
}

void write_files(const RunResult& result, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::io_error, "cannot create " + dir + ": " + ec.message());
  for (const auto& [name, content] : result.files) {
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    if (!f) throw Error(Errc::io_error, "cannot write " + path.string());
  }
}

std::string list_builtins_json() {
  Json out = Json::array();
  for (const auto& e : catalog()) {
    Json params = Json::object();
    for (const auto& [k, v] : e.defaults) params[k] = v;
    out.push_back(Json{{"name", e.name}, {"kind", e.kind}, {"params", params}, {"anchor", e.anchor}});
  }
  return dump(out);
}

}  // namespace orbitkit
