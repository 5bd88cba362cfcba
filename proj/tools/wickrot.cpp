// wickrot: command-line front end for the wick library.
//
// Every command loads a testbed, performs one job and writes a deterministic JSON report (stdout or --out,
// written atomically).  Exit codes: 0 pass, 1 numerical gate failure, 2 input error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wick/checks.hpp"
#include "wick/error.hpp"
#include "wick/flows.hpp"
#include "wick/lorentz.hpp"
#include "wick/symplectic.hpp"
#include "wick/testbed.hpp"

using nlohmann::json;
using namespace wick;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Args {
  std::string command;
  std::string sub;  // wick flavour or check name
  std::string testbed;
  std::uint64_t seed = 7;
  double h = 1e-5;
  int richardson = 1;
  std::optional<double> tol;
  int trials = 0;
  std::string out;
  std::string chart;  // "shear", "fn" or "spiral:<name>"
  std::string m;      // coordinate override
  std::string l = "empty";
  double t = 1.0;
  std::string side = "L";
  std::vector<std::string> curves;
  std::string kind;
  std::string u, v;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    size_t a = cur.find_first_not_of(" \t"), b = cur.find_last_not_of(" \t");
    parts.push_back(a == std::string::npos ? "" : cur.substr(a, b - a + 1));
  }
  return parts;
}

std::vector<double> parse_reals(const std::string& s, const std::string& flag) {
  std::vector<double> out;
  for (const auto& p : split(s, ',')) {
    try {
      out.push_back(parse_real(json(p)));
    } catch (const InputError& e) {
      throw InputError(flag + ": " + e.what());
    }
  }
  return out;
}

QVector parse_rationals(const std::string& s, const std::string& flag) {
  QVector out;
  for (const auto& p : split(s, ',')) {
    try {
      out.push_back(parse_rational(p));
    } catch (const std::exception& e) {
      throw InputError(flag + ": bad rational '" + p + "'");
    }
  }
  return out;
}

json cplx_json(cplx z) { return json::array({fmt_real(z.real()), fmt_real(z.imag())}); }

json panel_json(const Holonomy& rho, const Testbed& tb) {
  json out = json::array();
  auto tr = trace_panel(rho, tb.panel);
  for (size_t i = 0; i < tr.size(); ++i)
    out.push_back({{"word", format_word(tb.panel[i], rho.presentation)},
                   {"trace", rho.real ? json(fmt_real(tr[i].real())) : cplx_json(tr[i])}});
  return out;
}

json reals_json(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(fmt_real(x));
  return out;
}

// The point the job acts on, in the selected chart.
TeichPoint select_point(const Testbed& tb, const Args& a) {
  std::string chart = a.chart;
  if (chart.empty()) chart = tb.shear ? "shear" : "fn";
  if (chart == "shear") {
    if (!tb.shear) throw InputError("--chart shear: testbed '" + tb.name + "' has no shear chart");
    if (a.m.empty()) return tb.shear_point();
    return make_point(tb.shear, make_shear_coordinates(*tb.shear, parse_reals(a.m, "--m")));
  }
  if (chart == "fn") {
    if (!tb.fn) throw InputError("--chart fn: testbed '" + tb.name + "' has no FN chart");
    if (a.m.empty()) return tb.fn_point();
    auto x = parse_reals(a.m, "--m");
    if (x.size() != 2 * tb.fn->curves.size())
      throw InputError("--m: FN chart needs " + std::to_string(2 * tb.fn->curves.size()) + " values (lengths, twists)");
    return make_point(tb.fn, FNCoordinates::from_flat(x));
  }
  if (chart.starts_with("spiral:")) {
    const std::string name = chart.substr(7);
    for (const auto& sp : tb.spiral)
      if (sp->name == name) {
        if (!a.m.empty()) return make_point(sp, make_shear_coordinates(*sp, parse_reals(a.m, "--m")));
        return make_point(sp, shear_from_holonomy(*sp, tb.shear_point().holonomy).coords);
      }
    throw InputError("--chart: testbed '" + tb.name + "' has no spiral chart '" + name + "'");
  }
  throw InputError("--chart: expected shear, fn or spiral:<name>, got '" + chart + "'");
}

std::vector<double> point_coords(const TeichPoint& m) {
  return m.is_shear() ? m.shear().coords.values : m.fn().coords.flat();
}

json point_json(const TeichPoint& m, const Testbed& tb) {
  json j;
  if (m.is_shear()) {
    j["chart"] = m.shear().chart->name;
    j["coordinates"] = reals_json(m.shear().coords.values);
  } else {
    j["chart"] = m.fn().chart->name;
    j["lengths"] = reals_json(m.fn().coords.lengths);
    j["twists"] = reals_json(m.fn().coords.twists);
  }
  j["trace_panel"] = panel_json(m.holonomy, tb);
  return j;
}

// Lamination syntax: "empty"; FN charts: "curve:weight,..." (weights rational); shear charts: a comma list of
// chart coordinates (a real cocycle).
LaminationData parse_lamination(const TeichPoint& m, const std::string& s) {
  const bool empty = s.empty() || s == "empty";
  if (!m.is_shear()) {
    WeightedMulticurve l;
    l.pants_supported = true;
    if (empty) return l;
    for (const auto& part : split(s, ',')) {
      auto kv = split(part, ':');
      if (kv.size() != 2) throw InputError("--l: expected curve:weight, got '" + part + "'");
      m.fn().chart->index_of(kv[0]);
      Rational w;
      try {
        w = parse_rational(kv[1]);
      } catch (const std::exception&) {
        throw InputError("--l: bad weight '" + kv[1] + "'");
      }
      l.components.push_back({kv[0], w});
    }
    validate_multicurve(l);
    return l;
  }
  const auto& chart = *m.shear().chart;
  if (empty) return RealCocycle{std::vector<double>(chart.ncoords(), 0.0)};
  auto c = parse_reals(s, "--l");
  if (static_cast<int>(c.size()) != chart.ncoords())
    throw InputError("--l: shear chart '" + chart.name + "' needs " + std::to_string(chart.ncoords()) + " values");
  return RealCocycle{c};
}

Side parse_side(const std::string& s) {
  if (s == "L" || s == "left") return Side::L;
  if (s == "R" || s == "right") return Side::R;
  throw InputError("--side: expected L or R, got '" + s + "'");
}

HolonomyBuilder builder_for(const TeichPoint& m) {
  if (m.is_shear()) {
    auto chart = m.shear().chart;
    return [chart](const std::vector<double>& x) {
      return holonomy_from_shear(*chart, make_shear_coordinates(*chart, x, 1e-9));
    };
  }
  auto chart = m.fn().chart;
  return [chart](const std::vector<double>& x) { return holonomy_from_fn(*chart, FNCoordinates::from_flat(x)); };
}

struct Result {
  json report;
  bool pass = true;
};

Result cmd_holonomy(const Testbed& tb, const Args& a) {
  TeichPoint m = select_point(tb, a);
  const double tol = a.tol.value_or(1e-9);
  Result r;
  json& j = r.report;
  j["point"] = point_json(m, tb);
  j["holonomy"] = holonomy_to_json(m.holonomy);
  const double res = m.holonomy.relator_residual(), det = m.holonomy.det_error();
  j["relator_residual"] = {{"value", fmt_real(res)}, {"tol", fmt_real(tol)}};
  j["det_error"] = {{"value", fmt_real(det)}, {"tol", fmt_real(tol)}};
  r.pass = res < tol && det < tol;
  json per = json::array();
  for (const Word& p : m.holonomy.presentation.peripheral) {
    cplx tr = m.holonomy.trace(p);
    double dev = std::abs(std::abs(tr) - 2.0);
    per.push_back({{"word", format_word(p, m.holonomy.presentation)}, {"trace", cplx_json(tr)},
                   {"parabolicity", fmt_real(dev)}, {"tol", fmt_real(1e-10)}});
    r.pass = r.pass && dev < 1e-10;
  }
  j["peripheral"] = per;
  return r;
}

Result cmd_length(const Testbed& tb, const Args& a) {
  TeichPoint m = select_point(tb, a);
  Result r;
  json& j = r.report;
  j["point"] = point_json(m, tb);
  json lengths = json::array();
  std::vector<std::string> curves = a.curves;
  if (curves.empty() && !m.is_shear())
    for (const auto& c : m.fn().chart->curves) curves.push_back(c.name);
  if (curves.empty()) curves = {format_word(tb.panel.at(0), m.holonomy.presentation)};
  for (const auto& c : curves) {
    bool named = m.is_shear() ? c == "leaf" : false;
    if (!m.is_shear())
      for (const auto& fc : m.fn().chart->curves) named = named || fc.name == c;
    CurveRef ref = named ? CurveRef{c} : CurveRef{CurveWord{parse_word(c, m.holonomy.presentation), true}};
    Word w = resolve_curve(m, ref);
    LengthResult lr = trace_length(m.holonomy, CurveWord{w, true});
    lengths.push_back({{"curve", c},
                       {"word", format_word(w, m.holonomy.presentation)},
                       {"length", fmt_real(lr.length)},
                       {"parabolic", lr.parabolic}});
  }
  j["lengths"] = lengths;
  if (!m.is_shear() && a.l != "empty") {
    auto l = std::get<WeightedMulticurve>(parse_lamination(m, a.l));
    j["lamination"] = {{"spec", a.l}, {"length", fmt_real(lamination_length(m, l))}};
  }
  return r;
}

Result cmd_earthquake(const Testbed& tb, const Args& a, bool both) {
  TeichPoint m = select_point(tb, a);
  LaminationData l = parse_lamination(m, a.l);
  Result r;
  json& j = r.report;
  j["source"] = point_json(m, tb);
  FlowWarnings warn;
  if (both) {
    auto [left, right] = double_earthquake(m, l);
    j["left"] = point_json(left, tb);
    j["right"] = point_json(right, tb);
  } else {
    TeichPoint out = earthquake(m, l, a.t, parse_side(a.side), &warn);
    j["result"] = point_json(out, tb);
  }
  j["warnings"] = {{"signed_measure", warn.signed_measure}};
  return r;
}

Holonomy graft_point(const TeichPoint& m, const LaminationData& l, double t) {
  if (m.is_shear()) {
    std::vector<double> beta = std::get<RealCocycle>(l).coords;
    for (double& b : beta) b *= t;
    return holonomy_from_shear(*m.shear().chart, shear_bend(m.shear().coords, beta));
  }
  return graft_fn(*m.fn().chart, m.fn().coords, std::get<WeightedMulticurve>(l), t);
}

Result cmd_graft(const Testbed& tb, const Args& a) {
  TeichPoint m = select_point(tb, a);
  LaminationData l = parse_lamination(m, a.l);
  Holonomy rho = graft_point(m, l, a.t);
  Result r;
  r.report["source"] = point_json(m, tb);
  r.report["grafted"] = {{"holonomy", holonomy_to_json(rho)},
                         {"relator_residual", fmt_real(rho.relator_residual())},
                         {"trace_panel", panel_json(rho, tb)}};
  return r;
}

Result cmd_wick(const Testbed& tb, const Args& a) {
  TeichPoint m = select_point(tb, a);
  LaminationData l = parse_lamination(m, a.l);
  Result r;
  json& j = r.report;
  j["source"] = point_json(m, tb);
  if (a.sub == "ads") {
    AdSPoint p = wick_pleated(m, l);
    j["left"] = point_json(p.left, tb);
    j["right"] = point_json(p.right, tb);
    auto pl = trace_panel(p.left.holonomy, tb.panel), pr = trace_panel(p.right.holonomy, tb.panel);
    const double d = panel_distance(pl, pr);
    j["left_right_panel_distance"] = fmt_real(d);
    j["fuchsian"] = d == 0.0;
  } else if (a.sub == "ds") {
    Holonomy rho = graft_point(m, l, a.t);
    dSPoint p = ds_from_projective(rho);
    j["projective"] = {{"holonomy", holonomy_to_json(rho)}, {"trace_panel", panel_json(rho, tb)}};
    j["fuchsian"] = p.fuchsian;
  } else if (a.sub == "mink") {
    FdOptions fd{a.h, a.richardson};
    const double gate = a.tol.value_or(1e-6);
    MinkPoint p = mink_from_lamination(m, l, fd, gate);
    json vals = json::array();
    for (const CMat& X : p.translation.values) vals.push_back(reals_json({X.a.real(), X.b.real(), X.c.real(), X.d.real()}));
    j["translation_cocycle"] = vals;
    j["provenance"] = p.provenance;
    j["relator_residual"] = {{"value", fmt_real(p.translation.relator_residual)}, {"tol", fmt_real(gate)}};
    r.pass = p.translation.relator_residual < gate;
    if (!m.is_shear()) {
      const auto& mc = std::get<WeightedMulticurve>(l);
      if (mc.components.size() == 1) {
        const auto& comp = mc.components[0];
        Cocycle oracle = single_curve_cocycle(m, std::get<std::string>(comp.curve), to_double(comp.weight));
        OracleComparison cmp = compare_with_oracle(p.translation, oracle);
        j["oracle"] = {{"scale", fmt_real(cmp.scale)}, {"residual", fmt_real(cmp.residual)}};
      }
    }
  } else {
    throw InputError("wick: expected ads, ds or mink, got '" + a.sub + "'");
  }
  return r;
}

Result cmd_form(const Testbed& tb, const Args& a) {
  if (a.kind.empty()) throw InputError("form: --kind is required");
  PairingKind k = parse_pairing_kind(a.kind);
  Result r;
  json& j = r.report;
  j["kind"] = to_string(k);
  switch (k) {
    case PairingKind::thurston: {
      TrackPtr track = tb.track ? tb.track : (tb.shear ? tb.shear->track : nullptr);
      if (!track) throw InputError("form thurston: testbed '" + tb.name + "' has no train track");
      WeightSystem x = validate_weights(track, parse_rationals(a.u, "--u"));
      WeightSystem y = validate_weights(track, parse_rationals(a.v, "--v"));
      Rational w = thurston_form(x, y);
      j["track"] = track->name;
      j["value"] = {{"num", w.get_num().get_str()}, {"den", w.get_den().get_str()}};
      j["exact"] = true;
      break;
    }
    case PairingKind::cotangent: {
      auto x = parse_reals(a.u, "--u"), y = parse_reals(a.v, "--v");
      if (x.size() != y.size() || x.size() % 2) throw InputError("form cotangent: --u/--v need equal even length");
      j["value"] = fmt_real(cotangent_form(x, y));
      break;
    }
    case PairingKind::goldman_killing_real: {
      TeichPoint m = select_point(tb, a);
      auto x = point_coords(m);
      auto du = parse_reals(a.u, "--u"), dv = parse_reals(a.v, "--v");
      if (du.size() != x.size() || dv.size() != x.size())
        throw InputError("form: --u/--v need " + std::to_string(x.size()) + " components");
      CocycleOptions opt{{a.h, a.richardson}, true, a.tol.value_or(1e-6)};
      HolonomyBuilder b = builder_for(m);
      Cocycle cu = cocycle_from_direction(b, x, du, opt), cv = cocycle_from_direction(b, x, dv, opt);
      j["point"] = point_json(m, tb);
      j["value"] = fmt_real(goldman_pairing(m.holonomy, cu, cv, k));
      j["fd"] = {{"h", fmt_real(a.h)}, {"richardson", a.richardson}};
      j["relator_residual"] = {fmt_real(cu.relator_residual), fmt_real(cv.relator_residual)};
      break;
    }
    default:
      throw InputError("form: kind '" + to_string(k) +
                       "' pairs AdS/complex tangent pairs; it is evaluated by `check goldman-gates`");
  }
  return r;
}

Result cmd_check(const Args& a) {
  CheckOptions opt;
  opt.testbed = a.testbed;
  opt.seed = a.seed;
  opt.h = a.h;
  opt.richardson = a.richardson;
  opt.tol = a.tol;
  opt.trials = a.trials;
  CheckReport rep = run_check(a.sub, opt);
  std::cerr << rep.summary() << "\n";
  return {rep.to_json(), rep.pass};
}

void write_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw InputError("--out: cannot write '" + tmp.string() + "'");
    os << text;
    if (!os.flush()) throw InputError("--out: write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw InputError("--out: cannot rename to '" + path + "': " + ec.message());
  }
}

json job_record(const Args& a) {
  json p;
  p["chart"] = a.chart.empty() ? "default" : a.chart;
  if (!a.m.empty()) p["m"] = a.m;
  p["l"] = a.l;
  p["t"] = fmt_real(a.t);
  p["side"] = a.side;
  if (!a.curves.empty()) p["curves"] = a.curves;
  if (!a.kind.empty()) p["kind"] = a.kind;
  if (!a.u.empty()) p["u"] = a.u;
  if (!a.v.empty()) p["v"] = a.v;
  p["h"] = fmt_real(a.h);
  p["richardson"] = a.richardson;
  p["tol"] = a.tol ? json(fmt_real(*a.tol)) : json("default");
  p["trials"] = a.trials;
  json j{{"command", a.sub.empty() ? a.command : a.command + " " + a.sub},
         {"testbed", a.testbed},
         {"seed", std::to_string(a.seed)},
         {"parameters", p},
         {"version", kVersion}};
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  Args a;
  CLI::App app{"wickrot: train tracks, earthquakes, grafting and Wick rotations of surface structures"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // -h would clash with the step flag --h
  app.set_version_flag("--version", kVersion);

  auto common = [&](CLI::App* s, bool needs_testbed) {
    s->set_help_flag("--help", "print help");
    auto* opt = s->add_option("--testbed", a.testbed, "testbed JSON file");
    if (needs_testbed) opt->required();
    s->add_option("--seed", a.seed, "64-bit seed for random samples");
    s->add_option("--h", a.h, "finite-difference step");
    s->add_option("--richardson", a.richardson, "Richardson extrapolation levels");
    s->add_option("--tol", a.tol, "override the primary tolerance");
    s->add_option("--trials", a.trials, "number of random trials (0: default)");
    s->add_option("--out", a.out, "write the JSON report here (atomically) instead of stdout");
  };
  auto point_opts = [&](CLI::App* s) {
    s->add_option("--chart", a.chart, "shear, fn or spiral:<name> (default: shear if present, else fn)");
    s->add_option("--m", a.m, "comma-separated chart coordinates (FN: lengths then twists)");
  };
  auto lam_opts = [&](CLI::App* s) {
    s->add_option("--l", a.l, "lamination: empty | curve:weight,... (FN) | cocycle coordinates (shear)");
  };

  auto* hol = app.add_subcommand("holonomy", "build the holonomy and report residuals");
  common(hol, true);
  point_opts(hol);

  auto* len = app.add_subcommand("length", "trace lengths of curves / lamination length");
  common(len, true);
  point_opts(len);
  lam_opts(len);
  len->add_option("--curve", a.curves, "curve: pants-curve name or word such as \"a b^-1\" (repeatable)");

  auto* eq = app.add_subcommand("earthquake", "apply an earthquake flow");
  common(eq, true);
  point_opts(eq);
  lam_opts(eq);
  eq->add_option("--t", a.t, "flow time");
  eq->add_option("--side", a.side, "L or R");

  auto* deq = app.add_subcommand("double-earthquake", "left and right earthquakes along l");
  common(deq, true);
  point_opts(deq);
  lam_opts(deq);

  auto* gr = app.add_subcommand("graft", "graft (complexified shear/twist) along l");
  common(gr, true);
  point_opts(gr);
  lam_opts(gr);
  gr->add_option("--t", a.t, "grafting time");

  auto* wk = app.add_subcommand("wick", "Wick rotations: ads | ds | mink");
  common(wk, true);
  point_opts(wk);
  lam_opts(wk);
  wk->add_option("flavour", a.sub, "ads, ds or mink")->required()->check(CLI::IsMember({"ads", "ds", "mink"}));
  wk->add_option("--t", a.t, "grafting time (ds)");

  auto* fm = app.add_subcommand("form", "evaluate one pairing");
  common(fm, true);
  point_opts(fm);
  fm->add_option("--kind", a.kind, "thurston | cotangent | goldman-killing-real")->required();
  fm->add_option("--u", a.u, "first vector (comma-separated)")->required();
  fm->add_option("--v", a.v, "second vector (comma-separated)")->required();

  auto* ck = app.add_subcommand("check", "run a named acceptance check");
  common(ck, false);
  ck->add_option("name", a.sub, "check name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (auto* s : app.get_subcommands()) a.command = s->get_name();

  try {
    Result r;
    if (a.command == "check") {
      r = cmd_check(a);
    } else {
      Testbed tb = load_testbed(a.testbed);
      if (a.command == "holonomy") r = cmd_holonomy(tb, a);
      else if (a.command == "length") r = cmd_length(tb, a);
      else if (a.command == "earthquake") r = cmd_earthquake(tb, a, false);
      else if (a.command == "double-earthquake") r = cmd_earthquake(tb, a, true);
      else if (a.command == "graft") r = cmd_graft(tb, a);
      else if (a.command == "wick") r = cmd_wick(tb, a);
      else if (a.command == "form") r = cmd_form(tb, a);
    }
    r.report["job"] = job_record(a);
    r.report["pass"] = r.pass;
    const std::string text = r.report.dump(2) + "\n";
    if (a.out.empty())
      std::cout << text;
    else
      write_atomic(a.out, text);
    return r.pass ? 0 : 1;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const GateError& e) {
    std::cerr << "gate failure: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
}
