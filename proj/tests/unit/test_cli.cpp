#include <doctest.h>

#include <json.hpp>
#include <string>

#include "orbitkit/config.hpp"
#include "orbitkit/error.hpp"
#include "orbitkit/orbit.hpp"
#include "orbitkit/render.hpp"
#include "orbitkit/runner.hpp"
#include "orbitkit/transition.hpp"

using namespace orbitkit;
using Json = nlohmann::json;

namespace {

Scalar q(long p, long d) { return ratio(p, d); }

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + needle.size())) ++n;
  return n;
}

Errc parse_code(const std::string& text) {
  try {
    validate(parse_config(text));
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("accepted: ", text);
  return Errc::invalid_argument;
}

std::string parse_message(const std::string& text) {
  try {
    validate(parse_config(text));
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

Json report_of(const RunResult& r) { return Json::parse(r.files.at("report.json")); }

const char* kSlide =
    "# slide map written out by hand\n"
    "name slide_by_hand\n"
    "segment 0 1 co -> 0 1\n"
    "point 1 -> [0,1]\n"
    "cmd analyze\n";

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig flip = parse_config("map builtin flip\ncmd orbit\nparam depth 4\nparam z 3/10\n");
  CHECK(flip.builtin == "flip");
  CHECK(flip.command == Command::orbit);
  CHECK(flip.depth == 4);
  CHECK(flip.z == q(3, 10));
  CHECK(flip.base_point() == q(3, 10));
  CHECK(flip.eps == q(1, 8));

  const RunConfig slide = parse_config(kSlide);
  CHECK(slide.pieces.size() == 2);
  CHECK(slide.map_name == "slide_by_hand");
  CHECK(slide.command == Command::analyze);

  const RunConfig withp = parse_config("map builtin devil_pair level=4\nparam p 1/3\nassert usc\nout /tmp/x\n");
  CHECK(withp.builtin_params.at("level") == "4");
  CHECK(withp.base_point() == q(1, 3));
  CHECK(withp.assertions == std::vector<std::string>{"usc"});
  CHECK(withp.out == "/tmp/x");
}

TEST_CASE("config errors carry the field and the line") {
  CHECK(parse_code("map builtin tent\nparam eps 0\n") == Errc::validation_error);
  CHECK(parse_message("map builtin tent\nparam eps 0\n").find("line 2") != std::string::npos);
  CHECK(parse_code("map builtin tent\nparam eps 1/3x\n") == Errc::validation_error);
  CHECK(parse_code("map builtin tent\nparam eps 2/5\n") == Errc::validation_error);
  CHECK(parse_code("map builtin tent\nparam colour red\n") == Errc::validation_error);
  CHECK(parse_message("map builtin tent\n\nparam colour red\n").find("line 3") != std::string::npos);
  CHECK(parse_code("map builtin tent\nfrobnicate\n") == Errc::parse_error);
  CHECK(parse_code("map builtin tent\ncmd dance\n") == Errc::validation_error);
  CHECK(parse_code("map builtin tent\nassert happy\n") == Errc::validation_error);
  CHECK(parse_code("map builtin tent\nparam depth 0\n") == Errc::validation_error);
  CHECK(parse_code("map builtin tent\nparam z 3/2\n") == Errc::validation_error);
  CHECK(parse_code("map builtin tent\nparam window_lo 9\nparam window_hi 4\n") == Errc::validation_error);
  CHECK(parse_code("cmd analyze\n") == Errc::validation_error);
  CHECK(parse_code("map builtin tent\nsegment 0 1 cc -> 0 1\n") == Errc::validation_error);
  CHECK(parse_code("segment 0 1 cc -> 0 3\n") == Errc::validation_error);
  CHECK(parse_code("segment 0 1/2 cc -> 0 1\n") == Errc::validation_error);
  CHECK(parse_code("segment 0 1 cc -> 0\n") == Errc::parse_error);
}

TEST_CASE("analyze slide") {
  const RunResult r = run(parse_config(kSlide));
  CHECK(r.exit_code == kExitOk);
  CHECK(r.files.count("graph.svg") == 1);
  const Json j = report_of(r);
  CHECK(j["analysis"]["transitive"]["status"] == "certified_no");
  CHECK(j["analysis"]["usc"]["holds"] == true);
  CHECK(j["analysis"]["lsc"]["holds"] == false);
  CHECK(j["map"]["name"] == "slide_by_hand");
}

TEST_CASE("orbit of flip at 3/10") {
  RunConfig cfg = parse_config("map builtin flip\ncmd orbit\nparam z 3/10\nparam depth 3\n");
  const RunResult r = run(cfg);
  CHECK(r.files.count("orbit.svg") == 1);
  const Json j = report_of(r);
  CHECK(j["orbit"]["kind"] == "tree");
  CHECK(j["orbit"]["project"][2]["set"]["exact"] == "{3/10}|{7/10}");
  for (const auto& p : j["orbit"]["project"]) CHECK(p["equals_iterate"] == true);
}

TEST_CASE("orbit falls back to a cover for interval values") {
  const RunResult r = run(parse_config("map builtin tent_aug_F\ncmd orbit\nparam depth 3\nparam eps 1/4\n"));
  const Json j = report_of(r);
  CHECK(j["orbit"]["kind"] == "cover");
}

TEST_CASE("sensitivity report and assertions") {
  RunConfig cfg = parse_config("map builtin tent_aug_F\ncmd sensitivity\nparam sens_horizon 16\n");
  RunResult r = run(cfg);
  CHECK(r.exit_code == kExitOk);
  const Json j = report_of(r);
  CHECK(j["sensitivity"]["sensitive"]["status"] == "witnessed_yes");
  CHECK(j["sensitivity"]["strong"]["refuted"] == true);
  for (const auto& w : j["sensitivity"]["sensitive"]["witnesses"]) CHECK(w["replay"] == true);

  cfg.assertions = {"strong"};
  r = run(cfg);
  CHECK(r.exit_code == kExitRefuted);
  CHECK(r.refuted == std::vector<std::string>{"strong"});

  cfg.assertions = {"sensitive"};
  CHECK(run(cfg).exit_code == kExitOk);
}

TEST_CASE("finite builtins report the oracle") {
  RunConfig cfg = parse_config("map builtin one_way\ncmd report\nassert transitive\n");
  const RunResult r = run(cfg);
  CHECK(r.exit_code == kExitRefuted);
}

TEST_CASE("rendering") {
  const std::string map_svg = render_svg(builtin("double_tent_h").map());
  CHECK(count(map_svg, "stroke=\"black\" stroke-width=\"2\"") == 3);
  CHECK(map_svg.rfind("</svg>") != std::string::npos);

  const OrbitTree tree = orbit_tree(builtin("flip").map(), q(3, 10), 3);
  const std::string tree_svg = render_svg(tree, "flip");
  CHECK(count(tree_svg, "<circle") == tree.nodes.size());
  CHECK(count(tree_svg, "<line") == tree.nodes.size() - 1);

  const TransitionGraph g = transition_graph(builtin("tent").map(), q(1, 4));
  const std::string graph_svg = render_svg(g, "tent");
  CHECK(count(graph_svg, "r=\"12\"") == 4);
  CHECK(count(graph_svg, "[1/4,1/2]") == 1);

  const OrbitTree big = orbit_tree(builtin("flip").map(), q(3, 10), 17);
  CHECK_THROWS_AS(render_svg(big, "big"), Error);
}

TEST_CASE("runs are deterministic") {
  const RunConfig cfg = parse_config("map builtin double_tent_F\ncmd report\nparam horizon 16\nparam sens_horizon 8\n");
  const RunResult a = run(cfg);
  const RunResult b = run(cfg);
  CHECK(a.files == b.files);
  CHECK(a.files.size() >= 4);
}

TEST_CASE("writing output") {
  RunResult r;
  r.files["report.json"] = "{}\n";
  CHECK_THROWS_AS(write_files(r, "/proc/orbitkit/nope"), Error);
}
