#include "wick/testbed.hpp"

#include <fstream>
#include <sstream>

#include "wick/error.hpp"
#include "wick/flows.hpp"
#include "wick/symplectic.hpp"

namespace wick {

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& field, const std::string& what) {
  throw InputError(path + ": field '" + field + "': " + what);
}

template <class F>
auto with_field(const std::string& path, const std::string& field, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError& e) {
    field_error(path, field, e.what());
  } catch (const nlohmann::json::exception& e) {
    field_error(path, field, e.what());
  }
}

}  // namespace

double parse_real(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) throw InputError("expected a real number or decimal string");
  const std::string s = v.get<std::string>();
  size_t used = 0;
  double x = 0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("bad real literal '" + s + "'");
  }
  if (used != s.size()) throw InputError("bad real literal '" + s + "'");
  return x;
}

double Testbed::calibrated(const std::string& key) const {
  auto it = calibration.find(key);
  if (it == calibration.end()) throw InputError("testbed '" + name + "' records no calibration constant '" + key + "'");
  return it->second;
}

TeichPoint Testbed::shear_point() const {
  if (!shear || !shear_coords) throw InputError("testbed '" + name + "' has no shear chart");
  return make_point(shear, *shear_coords);
}

TeichPoint Testbed::fn_point() const {
  if (!fn || !fn_coords) throw InputError("testbed '" + name + "' has no FN chart");
  return make_point(fn, *fn_coords);
}

std::string default_testbed_dir() {
#ifdef WICK_TESTBED_DIR
  return WICK_TESTBED_DIR;
#else
  return "testbeds";
#endif
}

Testbed parse_testbed(const nlohmann::json& j, const std::string& path) {
  Testbed tb;
  tb.path = path;
  tb.raw = j;
  tb.name = with_field(path, "name", [&] { return j.at("name").get<std::string>(); });
  if (j.contains("surface")) {
    with_field(path, "surface", [&] {
      tb.surface = {j["surface"].at("genus").get<int>(), j["surface"].at("punctures").get<int>()};
      tb.presentation = build_presentation(tb.surface);
      return 0;
    });
  }
  if (j.contains("track")) tb.track = with_field(path, "track", [&] { return track_from_json(j["track"]); });
  if (j.contains("shear_chart")) {
    with_field(path, "shear_chart", [&] {
      const auto& s = j["shear_chart"];
      std::vector<EdgeGluing> gl;
      for (const auto& e : s.at("edges")) {
        const auto& sides = e.at("sides");
        gl.push_back({e.at("name").get<std::string>(), sides.at(0).at(0).get<int>(), sides.at(0).at(1).get<int>(),
                      sides.at(1).at(0).get<int>(), sides.at(1).at(1).get<int>()});
      }
      std::vector<std::vector<int>> paths;
      for (const auto& g : tb.presentation.generators) paths.push_back(s.at("generator_paths").at(g).get<std::vector<int>>());
      tb.shear = make_triangulation_chart(tb.name, tb.surface, s.at("triangles").get<int>(), gl, paths);
      return 0;
    });
  }
  if (j.contains("calibration"))
    with_field(path, "calibration", [&] {
      for (auto it = j["calibration"].begin(); it != j["calibration"].end(); ++it) tb.calibration[it.key()] = parse_real(it.value());
      return 0;
    });
  if (tb.shear && tb.calibration.count("kappa_L_triangulation"))
    tb.shear = with_kappa(tb.shear, tb.calibration["kappa_L_triangulation"]);
  if (j.contains("coordinates") && j["coordinates"].contains("shear")) {
    with_field(path, "coordinates.shear", [&] {
      if (!tb.shear) throw InputError("shear coordinates without a shear chart");
      std::vector<double> v;
      for (const auto& x : j["coordinates"]["shear"]) v.push_back(parse_real(x));
      tb.shear_coords = make_shear_coordinates(*tb.shear, v);
      return 0;
    });
  }
  if (j.contains("fn_chart")) {
    with_field(path, "fn_chart", [&] {
      tb.fn = make_fn_chart(tb.name, tb.surface);
      std::vector<std::string> names;
      for (const auto& c : tb.fn->curves) names.push_back(c.name);
      if (j["fn_chart"].at("curves").get<std::vector<std::string>>() != names)
        throw InputError("pants curves must be listed as the chart defines them");
      return 0;
    });
  }
  if (j.contains("coordinates") && j["coordinates"].contains("fn")) {
    with_field(path, "coordinates.fn", [&] {
      if (!tb.fn) throw InputError("FN coordinates without an FN chart");
      FNCoordinates x;
      for (const auto& v : j["coordinates"]["fn"].at("lengths")) x.lengths.push_back(parse_real(v));
      for (const auto& v : j["coordinates"]["fn"].at("twists")) x.twists.push_back(parse_real(v));
      holonomy_from_fn(*tb.fn, x);  // validates
      tb.fn_coords = x;
      return 0;
    });
  }
  if (j.contains("word_panel"))
    with_field(path, "word_panel", [&] {
      for (const auto& w : j["word_panel"]) tb.panel.push_back(parse_word(w.get<std::string>(), tb.presentation));
      return 0;
    });
  if (j.contains("spiral_charts")) {
    with_field(path, "spiral_charts", [&] {
      if (!tb.shear || !tb.shear_coords) throw InputError("spiral charts are built against the base shear structure");
      Holonomy ref = holonomy_from_shear(*tb.shear, *tb.shear_coords);
      double kappa = tb.calibration.count("kappa_L") ? tb.calibration["kappa_L"] : 1.0;
      for (const auto& s : j["spiral_charts"]) {
        auto ch = make_spiral_chart(s.at("name").get<std::string>(), tb.presentation,
                                    parse_word(s.at("g").get<std::string>(), tb.presentation),
                                    parse_word(s.at("h").get<std::string>(), tb.presentation), ref);
        tb.spiral.push_back(tb.calibration.count("kappa_L") ? with_kappa(ch, kappa) : ch);
      }
      return 0;
    });
  }
  if (j.contains("box")) tb.box = j["box"];
  return tb;
}

Testbed load_testbed(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open testbed file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return parse_testbed(j, path);
}

nlohmann::json holonomy_to_json(const Holonomy& rho) {
  nlohmann::json j;
  j["field"] = rho.real ? "real" : "complex";
  j["generators"] = nlohmann::json::array();
  for (size_t i = 0; i < rho.generators.size(); ++i) {
    const CMat& m = rho.generators[i];
    nlohmann::json entries = nlohmann::json::array();
    for (cplx z : {m.a, m.b, m.c, m.d}) {
      if (rho.real)
        entries.push_back(fmt_real(z.real()));
      else
        entries.push_back({fmt_real(z.real()), fmt_real(z.imag())});
    }
    j["generators"].push_back({{"name", rho.presentation.generators.at(i)}, {"matrix", entries}});
  }
  j["relator_residual"] = fmt_real(rho.relator_residual());
  j["det_error"] = fmt_real(rho.det_error());
  return j;
}

}  // namespace wick
