#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "toricob/commands.hpp"

using namespace toricob;
using nlohmann::json;
using th::C;
using th::F;
using th::V;

namespace {

std::string tmp_file(const std::string& name, const std::string& content) {
  std::filesystem::path p =
      std::filesystem::temp_directory_path() / ("toricob_cli_" + name);
  std::ofstream f(p);
  f << content;
  return p.string();
}

const char* orth2_file = "fan\nrank 2\nray 1 0\nray 0 1\ncone 0 1\n";
const char* xy_ideal_file =
    "ideal\nrank 2\nchart\nray 1 0\nray 0 1\ngen 1 0\ngen 0 1\n";
const char* a3_file =
    "fan\nrank 3\nray 1 0 0\nray 0 1 0\nray 0 0 1\ncone 0 1 2\naction 2 3 -1\n";
// four vertical slabs whose dependent walls chase each other in a cycle
const char* pinwheel_file =
    "fan\nrank 3\n"
    "ray 1 0 -1\nray 0 1 -1\nray -1 0 -1\nray 0 -1 -1\n"
    "ray 1 -1 1\nray 1 1 1\nray -1 1 1\nray -1 -1 1\n"
    "cone 0 1 4 5\ncone 1 2 5 6\ncone 2 3 6 7\ncone 3 0 7 4\n"
    "action 0 0 1\n";

}  // namespace

TEST_CASE("fan file round trip") {
  std::istringstream in(a3_file);
  FanFile ff = parse_fan_file(in);
  CHECK(ff.rank == 3);
  CHECK(ff.rays.size() == 3);
  CHECK(ff.cones == std::vector<std::vector<std::size_t>>{{0, 1, 2}});
  REQUIRE(ff.action);
  CHECK(*ff.action == V({2, 3, -1}));

  std::istringstream again(write_fan_file(ff));
  CHECK(parse_fan_file(again) == ff);

  Fan f = to_fan(ff);
  CHECK(fans_equal(f, F(3, {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}})));

  // canonical form round-trips exactly
  Fan blow = F(2, {{{0, 1}, {1, 1}}, {{1, 0}, {1, 1}}});
  FanFile canon = from_fan(blow, V({0, 1}));
  std::istringstream c(write_fan_file(canon));
  CHECK(parse_fan_file(c) == canon);
  CHECK(fans_equal(to_fan(canon), blow));
  CHECK(canon.rays == std::vector<Vec>{V({0, 1}), V({1, 0}), V({1, 1})});
  CHECK(canon.cones == std::vector<std::vector<std::size_t>>{{0, 2}, {1, 2}});

  // a ray in no cone line is its own one-dimensional cone
  std::istringstream loose("fan\nrank 2\nray 1 0\nray -1 3\n");
  CHECK(fans_equal(to_fan(parse_fan_file(loose)), F(2, {{{1, 0}}, {{-1, 3}}})));

  // comments and blank lines are skipped; the zero fan parses
  std::istringstream zero("# empty\nfan\n\nrank 2  # comment\n");
  Fan zf = to_fan(parse_fan_file(zero));
  CHECK(zf.cones.size() == 1);
  CHECK(zf.cones[0] == Cone::zero(2));
}

TEST_CASE("fan file errors") {
  auto bad = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(parse_fan_file(in), ParseError);
  };
  bad("");                                     // no header
  bad("ideal\nrank 2\n");                      // wrong header
  bad("fan\nray 1 0\n");                       // ray before rank
  bad("fan\nrank 2\nray 1 oops\n");            // bad integer
  bad("fan\nrank 2\nray 1\n");                 // wrong width
  bad("fan\nrank 2\nray 1 0\ncone 0 1\n");     // index out of range
  bad("fan\nrank 2\naction 1 0\naction 0 1\n");  // duplicate action
  bad("fan\nrank 2\nrank 3\n");                // duplicate rank
  bad("fan\nrank 2\nwhat 1 2\n");              // unknown keyword
  CHECK_THROWS_AS(read_fan_file("/nonexistent/path.fan"), ParseError);
}

TEST_CASE("ideal file round trip") {
  std::istringstream in(xy_ideal_file);
  IdealFile f = parse_ideal_file(in);
  CHECK(f.rank == 2);
  REQUIRE(f.entries.size() == 1);
  CHECK(f.entries[0].chart == std::vector<Vec>{V({1, 0}), V({0, 1})});
  CHECK(f.entries[0].gens == std::vector<Vec>{V({1, 0}), V({0, 1})});

  std::istringstream again(write_ideal_file(f));
  CHECK(parse_ideal_file(again) == f);

  std::vector<MonomialIdeal> ideals = to_ideals(f);
  REQUIRE(ideals.size() == 1);
  CHECK(ideals[0] == MonomialIdeal::make(C(2, {{1, 0}, {0, 1}}),
                                         {V({1, 0}), V({0, 1})}));

  auto bad = [](const std::string& text) {
    std::istringstream s(text);
    CHECK_THROWS_AS(parse_ideal_file(s), ParseError);
  };
  bad("fan\nrank 2\n");                       // wrong header
  bad("ideal\nrank 2\n");                     // no chart block
  bad("ideal\nrank 2\ngen 1 0\n");            // gen outside a chart
}

TEST_CASE("check command") {
  CmdResult ok = cmd_check(tmp_file("orth2.fan", orth2_file));
  CHECK(ok.code == 0);
  CHECK(ok.report["valid"] == true);
  CHECK(ok.report["smooth"] == true);
  CHECK(ok.report["support"]["convex"] == true);
  CHECK(ok.report["cones"].size() == 1);

  // overlapping non-face cones: invalid with the offending pair in the message
  CmdResult overlap = cmd_check(tmp_file(
      "overlap.fan",
      "fan\nrank 2\nray 1 0\nray 0 1\nray 1 1\ncone 0 2\ncone 1 2\ncone 0 1\n"));
  CHECK(overlap.code == 1);
  CHECK(overlap.report["valid"] == false);
  std::string msg = overlap.report["message"];
  CHECK(msg.find("[(0,1) (1,0)]") != std::string::npos);

  CmdResult parse = cmd_check(tmp_file("bad.fan", "fan\nrank 2\nray x y\n"));
  CHECK(parse.code == 2);

  // the worked-example output fan is valid; two charts are non-simplicial
  Fan torified = F(3, {{{1, 0, 0}, {1, 0, 1}, {1, 1, 0}},
                       {{1, 1, 0}, {1, 0, 1}, {2, 3, 0}, {0, 0, 1}},
                       {{2, 3, 0}, {0, 0, 1}, {1, 2, 0}, {0, 1, 1}},
                       {{1, 2, 0}, {0, 1, 1}, {0, 1, 0}}});
  CmdResult tor = cmd_check(
      tmp_file("torified.fan", write_fan_file(from_fan(torified, std::nullopt))));
  CHECK(tor.code == 0);
  CHECK(tor.report["valid"] == true);
  CHECK(tor.report["simplicial"] == false);
  int nonsimp = 0;
  for (const json& c : tor.report["cones"])
    if (c["simplicial"] == false) ++nonsimp;
  CHECK(nonsimp == 2);

  // a half-space is not strictly convex: flagged invalid, not thrown
  CmdResult line = cmd_check(tmp_file(
      "line.fan", "fan\nrank 2\nray 1 0\nray -1 0\nray 0 1\ncone 0 1 2\n"));
  CHECK(line.code == 1);
  CHECK(line.report["valid"] == false);
}

TEST_CASE("dual command") {
  CmdResult r = cmd_dual(tmp_file("orth2.fan", orth2_file));
  CHECK(r.code == 0);
  CHECK(r.report["involution_ok"] == true);
  REQUIRE(r.report["duals"].size() == 1);
  CHECK(r.report["duals"][0]["dual"]["rays"] == json::array({{0, 1}, {1, 0}}));
}

TEST_CASE("boundary command") {
  CmdResult r = cmd_boundary(tmp_file("a3.fan", a3_file));
  CHECK(r.code == 0);
  CHECK(r.report["trivial"] == false);
  // matches the library result exactly
  BoundaryPair bp =
      boundary_fans(F(3, {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}), V({2, 3, -1}));
  CHECK(r.report["lower_q"] == json_fan(bp.lower_q));
  CHECK(r.report["upper_q"] == json_fan(bp.upper_q));
  CHECK(r.report["lower"] == json_fan(bp.lower));
  CHECK(r.report["upper"] == json_fan(bp.upper));

  CmdResult noact = cmd_boundary(tmp_file("orth2.fan", orth2_file));
  CHECK(noact.code == 1);
}

TEST_CASE("cobordize command") {
  std::string fan_path = tmp_file("orth2.fan", orth2_file);
  std::string ideal_path = tmp_file("xy.ideal", xy_ideal_file);
  std::string out_path = tmp_file("cob.fan", "");
  CmdResult r = cmd_cobordize(fan_path, ideal_path, out_path);
  CHECK(r.code == 0);
  CHECK(r.report["lower_matches_blowup"] == true);
  CHECK(r.report["upper_matches_source"] == true);
  CHECK(r.report["trivial"] == false);
  CHECK(r.report["action"] == json::array({0, 0, 1}));

  // the emitted cobordism file parses back to the expected fan
  FanFile cob = read_fan_file(out_path);
  REQUIRE(cob.action);
  CHECK(*cob.action == V({0, 0, 1}));
  CHECK(fans_equal(to_fan(cob), F(3, {{{1, 0, 0}, {0, 1, 0}, {1, 1, 1}}})));

  // principal ideal: trivial cobordism report
  std::string principal = tmp_file("x.ideal",
                                   "ideal\nrank 2\nchart\nray 1 0\nray 0 1\ngen 1 0\n");
  CmdResult triv = cmd_cobordize(fan_path, principal, std::nullopt);
  CHECK(triv.code == 0);
  CHECK(triv.report["trivial"] == true);

  // non-smooth source fan
  std::string nonsmooth =
      tmp_file("ns.fan", "fan\nrank 2\nray 1 0\nray 1 2\ncone 0 1\n");
  CHECK(cmd_cobordize(nonsmooth, ideal_path, std::nullopt).code == 1);
}

TEST_CASE("chi and pieces commands") {
  CmdResult r = cmd_chi(tmp_file("a3.fan", a3_file));
  CHECK(r.code == 0);
  CHECK(r.report["dependent_cones"].size() == 1);
  CHECK(r.report["order"].empty());
  CHECK(r.report["chi"].size() == 1);
  CHECK(r.report["chi"][0]["label"] == 0);
  CHECK(r.report["component_labels"].size() == 1);

  CmdResult cyc = cmd_chi(tmp_file("pinwheel.fan", pinwheel_file));
  CHECK(cyc.code == 3);
  CHECK(!cyc.report["cycle"].empty());

  // two-component chain: sigma1 = <e1,e2,(1,1,1)> flows into sigma2 = <e1,e2,(1,1,-1)>
  std::string chain = tmp_file(
      "chain.fan",
      "fan\nrank 3\nray 1 0 0\nray 0 1 0\nray 1 1 1\nray 1 1 -1\n"
      "cone 0 1 2\ncone 0 1 3\naction 0 0 1\n");
  CmdResult pieces = cmd_pieces(chain);
  CHECK(pieces.code == 0);
  CHECK(pieces.report["pieces"].size() == 2);
  CHECK(pieces.report["joints_ok"] == true);
  CHECK(pieces.report["outer_ok"] == true);
  CHECK(pieces.report["pieces"][0]["label"] == 0);
  CHECK(pieces.report["pieces"][1]["label"] == 1);

  CHECK(cmd_pieces(tmp_file("pinwheel.fan", pinwheel_file)).code == 3);
}

TEST_CASE("torify command") {
  std::string path = tmp_file("a3.fan", a3_file);
  CmdResult r = cmd_torify(path, {Int(6)}, false);
  CHECK(r.code == 0);
  REQUIRE(r.report["charts"].size() == 1);
  const json& c = r.report["charts"][0];
  CHECK(c["characters"] == json::array({-1, 2, 3, 6}));
  CHECK(c["removed_rays"] == json::array({{0, 1, 0}, {1, 0, 0}}));
  CHECK(c["certified"] == true);
  CHECK(c["fan"]["cones"].size() == 4);

  CmdResult b = cmd_torify(path, {Int(6)}, true);
  CHECK(b.code == 0);
  CHECK(b.report["charts"][0]["characters"] == json::array({-10, -1, 2, 3, 6}));

  // action inside the support: rejected as a cobordism
  std::string inside = tmp_file(
      "inside.fan", "fan\nrank 2\nray 1 0\nray 0 1\ncone 0 1\naction 1 1\n");
  CHECK(cmd_torify(inside, {}, false).code == 1);
}

TEST_CASE("factor command") {
  // blowup-of-a-point cobordism: one-step trace, replay passes
  std::string cob = tmp_file(
      "cob.fan",
      "fan\nrank 3\nray 0 1 0\nray 1 0 0\nray 1 1 1\ncone 0 1 2\naction 0 0 1\n");
  CmdResult r = cmd_factor(cob, {}, false);
  CHECK(r.code == 0);
  CHECK(r.report["replay_ok"] == true);
  REQUIRE(r.report["trace"].size() == 1);
  CHECK(r.report["trace"][0]["type"] == "inverse-star-subdivision");
  CHECK(r.report["trace"][0]["ray"] == json::array({1, 1}));
  REQUIRE(r.report["pieces"].size() == 1);
  CHECK(r.report["pieces"][0]["explicit"] == true);
  // source is the blowup fan, target the orthant
  CHECK(r.report["source"] ==
        json_fan(F(2, {{{0, 1}, {1, 1}}, {{1, 0}, {1, 1}}})));
  CHECK(r.report["target"] == json_fan(F(2, {{{1, 0}, {0, 1}}})));

  // trivial cobordism: empty trace
  std::string triv = tmp_file(
      "triv.fan", "fan\nrank 3\nray 1 0 0\nray 0 1 0\ncone 0 1\naction 0 0 1\n");
  CmdResult t = cmd_factor(triv, {}, false);
  CHECK(t.code == 0);
  CHECK(t.report["trace"].empty());
  CHECK(t.report["replay_ok"] == true);

  // the weighted chart goes through the torified quotient triangle
  CmdResult a3 = cmd_factor(tmp_file("a3.fan", a3_file), {Int(6)}, false);
  CHECK(a3.code == 0);
  CHECK(a3.report["replay_ok"] == true);
  REQUIRE(a3.report["pieces"].size() == 1);
  const json& piece = a3.report["pieces"][0];
  CHECK(piece["explicit"] == false);
  REQUIRE(piece["steps"].size() == 2);
  CHECK(piece["steps"][0]["type"] == "torific-blowup");
  CHECK(piece["steps"][1]["type"] == "quotient-map");
  CHECK(piece["steps"][1]["lower_refined"] == true);
  CHECK(piece["steps"][1]["upper_refined"] == true);
  CHECK(piece["charts"][0]["certified"] == true);

  CHECK(cmd_factor(tmp_file("pinwheel.fan", pinwheel_file), {}, false).code == 3);
}

TEST_CASE("worked example command") {
  CmdResult r = cmd_worked_example(false);
  CHECK(r.code == 0);
  CHECK(r.report["ok"] == true);
  CHECK(r.report["diff"].empty());
  CHECK(r.report["actual"]["witness_m"] == json::array({1, -1, -1}));

  CmdResult b = cmd_worked_example(true);
  CHECK(b.code == 0);
  CHECK(b.report["actual"]["characters"] == json::array({-10, -1, 2, 3, 6}));
  CHECK(b.report["actual"]["character_sum"] == 0);
  CHECK(b.report["actual"]["I_-10"] == json::array({{0, 0, 10}}));

  // corrupting a pinned fixture produces a structured diff
  json corrupt = {{"removed_rays", json::array({{9, 9, 9}})}};
  CmdResult bad = cmd_worked_example(false, corrupt);
  CHECK(bad.code == 1);
  REQUIRE(bad.report["diff"].size() == 1);
  CHECK(bad.report["diff"][0]["field"] == "removed_rays");
  CHECK(bad.report["diff"][0]["expected"] == json::array({{9, 9, 9}}));
  CHECK(bad.report["diff"][0]["actual"] == json::array({{0, 1, 0}, {1, 0, 0}}));
}

TEST_CASE("cli binary") {
  const char* bin = std::getenv("TORICOB_BIN");
  if (!bin) {
    MESSAGE("TORICOB_BIN not set; skipping the subprocess checks");
    return;
  }
  std::string binary(bin);
  auto run = [&](const std::string& args) {
    int status = std::system((binary + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  CHECK(run("worked-example") == 0);
  CHECK(run("worked-example --balanced") == 0);
  CHECK(run("check " + tmp_file("orth2.fan", orth2_file)) == 0);
  CHECK(run("check /nonexistent.fan") == 2);
  CHECK(run("factor " + tmp_file("pinwheel.fan", pinwheel_file)) == 3);
  CHECK(run("torify " + tmp_file("a3.fan", a3_file) + " --characters 6") == 0);

  // --out writes the report as JSON
  std::string report_path = tmp_file("report.json", "");
  CHECK(run("boundary " + tmp_file("a3.fan", a3_file) + " --out " + report_path) == 0);
  std::ifstream in(report_path);
  json report = json::parse(in);
  CHECK(report["command"] == "boundary");
  CHECK(report["trivial"] == false);

  // cobordize --out emits a fan file the other commands accept
  std::string cob_path = tmp_file("cli_cob.fan", "");
  CHECK(run("cobordize " + tmp_file("orth2.fan", orth2_file) + " " +
            tmp_file("xy.ideal", xy_ideal_file) + " --out " + cob_path) == 0);
  CHECK(run("factor " + cob_path) == 0);
}
