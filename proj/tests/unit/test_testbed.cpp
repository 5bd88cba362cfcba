#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "wick/checks.hpp"
#include "wick/error.hpp"
#include "wick/testbed.hpp"

using namespace wick;

namespace {

nlohmann::json raw(const std::string& name) { return wt::testbed(name).raw; }

std::string tmpfile(const std::string& contents) {
  static int counter = 0;
  std::string path = (std::filesystem::temp_directory_path() /
                      ("wick_test_" + std::to_string(getpid()) + "_" + std::to_string(counter++) + ".json"))
                         .string();
  std::ofstream(path) << contents;
  return path;
}

}  // namespace

TEST_CASE("bundled testbeds load with the expected structure") {
  const Testbed& t = wt::testbed("t11");
  CHECK(t.surface.genus == 1);
  CHECK(t.surface.punctures == 1);
  CHECK(t.shear);
  CHECK(t.shear_coords);
  CHECK_FALSE(t.spiral.empty());
  const Testbed& g = wt::testbed("g2");
  CHECK(g.surface.genus == 2);
  CHECK(g.fn->curves.size() == 3);
  CHECK(g.track);
  CHECK(wt::testbed("onesw").track->num_edges() == 3);
  CHECK_THROWS_AS(t.calibrated("no_such_constant"), InputError);
  CHECK_THROWS_AS(wt::testbed("onesw").fn_point(), InputError);
}

TEST_CASE("parse_real accepts numbers and exact decimal strings") {
  CHECK(parse_real(nlohmann::json(0.5)) == 0.5);
  CHECK(parse_real(nlohmann::json("0.1")) == 0.1);
  CHECK(parse_real(nlohmann::json("-2.5e-3")) == -2.5e-3);
  CHECK_THROWS_AS(parse_real(nlohmann::json("0.1x")), InputError);
  CHECK_THROWS_AS(parse_real(nlohmann::json::array()), InputError);
}

TEST_CASE("malformed testbeds: errors name the offending field") {
  auto j = raw("t11");
  j.erase("name");
  CHECK_THROWS_WITH_AS(parse_testbed(j), doctest::Contains("'name'"), InputError);

  j = raw("t11");
  j["coordinates"]["shear"] = {"0.1", "0.2"};
  CHECK_THROWS_WITH_AS(parse_testbed(j), doctest::Contains("coordinates.shear"), InputError);

  j = raw("g2");
  j["coordinates"]["fn"]["lengths"][0] = "-1";
  CHECK_THROWS_WITH_AS(parse_testbed(j), doctest::Contains("coordinates.fn"), InputError);

  j = raw("g2");
  j["fn_chart"]["curves"] = {"c", "a1", "a2"};
  CHECK_THROWS_WITH_AS(parse_testbed(j), doctest::Contains("fn_chart"), InputError);

  j = raw("t11");
  j["word_panel"].push_back("a9");
  CHECK_THROWS_WITH_AS(parse_testbed(j), doctest::Contains("word_panel"), InputError);

  j = raw("t11");
  j["calibration"]["kappa_L"] = "half";
  CHECK_THROWS_WITH_AS(parse_testbed(j), doctest::Contains("calibration"), InputError);
}

TEST_CASE("load_testbed: missing file and invalid JSON are input errors") {
  CHECK_THROWS_AS(load_testbed("/nonexistent/t.json"), InputError);
  std::string p = tmpfile("{\n  \"name\": \"x\",\n  oops\n}\n");
  CHECK_THROWS_WITH_AS(load_testbed(p), doctest::Contains("line 3"), InputError);
  std::remove(p.c_str());
  // a testbed round-trips through its raw JSON
  std::string q = tmpfile(raw("g2").dump(2));
  Testbed back = load_testbed(q);
  CHECK(back.fn_coords->flat() == wt::testbed("g2").fn_coords->flat());
  std::remove(q.c_str());
}

TEST_CASE("checks: registry, determinism and input errors") {
  CHECK(check_names().size() == 10);
  CheckOptions opt;
  opt.seed = 11;
  CheckReport a = run_check("de-factor-2", opt), b = run_check("de-factor-2", opt);
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.pass);
  CHECK(a.summary().find("de-factor-2") != std::string::npos);
  CheckReport alias = run_check("de-linear-identity", opt);
  CHECK(alias.pass);
  CHECK_THROWS_AS(run_check("no-such-check", opt), InputError);
  opt.testbed = "/nonexistent/t.json";
  CHECK_THROWS_AS(run_check("de-factor-2", opt), InputError);
}
