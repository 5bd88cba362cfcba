#include "wick/checks.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "wick/error.hpp"
#include "wick/flows.hpp"
#include "wick/lorentz.hpp"
#include "wick/symplectic.hpp"
#include "wick/testbed.hpp"

namespace wick {

nlohmann::json CheckReport::to_json() const {
  nlohmann::json j;
  j["check"] = name;
  j["pass"] = pass;
  j["gates"] = nlohmann::json::array();
  for (const Gate& g : gates)
    j["gates"].push_back({{"name", g.name}, {"value", fmt_real(g.value)}, {"tol", fmt_real(g.tol)}, {"pass", g.pass}});
  j["details"] = details;
  return j;
}

std::string CheckReport::summary() const {
  std::ostringstream os;
  os << (pass ? "PASS " : "FAIL ") << name;
  for (const Gate& g : gates) {
    char buf[160];
    std::snprintf(buf, sizeof buf, " | %s = %.3e (tol %.1e)%s", g.name.c_str(), g.value, g.tol, g.pass ? "" : " FAILED");
    os << buf;
  }
  return os.str();
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "de-identity",       "de-factor-2",   "length-consistency", "flow-property",    "mess-round-trip",
      "mink-cocycles",     "goldman-gates", "grafting-symplectic", "wick-composition", "construction-health"};
  return names;
}

namespace {

// Portable deterministic sampling: raw 64-bit draws from mt19937_64 mapped by
// hand (the standard distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(g_() >> 11) * 0x1.0p-53); }
  long integer(long lo, long hi) { return lo + static_cast<long>(g_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  Rational rational(long maxnum, long maxden) {
    Rational q(integer(-maxnum, maxnum), integer(1, maxden));
    q.canonicalize();
    return q;
  }

 private:
  std::mt19937_64 g_;
};

struct Ctx {
  CheckOptions opt;
  Rng rng;
  CheckReport rep;
  std::map<std::string, Testbed> cache;

  Ctx(const std::string& name, const CheckOptions& o) : opt(o), rng(o.seed) { rep.name = name; }

  FdOptions fd() const { return {opt.h, opt.richardson}; }
  double tol(double d) const { return opt.tol.value_or(d); }
  int trials(int d) const { return opt.trials > 0 ? opt.trials : d; }

  void gate(const std::string& name, double value, double tol) {
    rep.gates.push_back({name, value, tol, value <= tol});
  }

  std::string dir() const {
    if (!opt.testbed_dir.empty()) return opt.testbed_dir;
    if (!opt.testbed.empty()) {
      auto p = std::filesystem::path(opt.testbed).parent_path();
      return p.empty() ? "." : p.string();
    }
    return default_testbed_dir();
  }

  // The primary testbed may be overridden with --testbed; the others are
  // looked up by name next to it.
  const Testbed& load(const std::string& name, bool primary) {
    const std::string key = (primary ? "*" : "") + name;
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::string path = primary && !opt.testbed.empty() ? opt.testbed : (std::filesystem::path(dir()) / (name + ".json")).string();
    return cache.emplace(key, load_testbed(path)).first->second;
  }
};

std::pair<double, double> box_range(const Testbed& tb, const std::string& key) {
  if (!tb.box.contains(key)) throw InputError("testbed '" + tb.name + "' has no sampling box entry '" + key + "'");
  return {parse_real(tb.box[key].at(0)), parse_real(tb.box[key].at(1))};
}

// ------------------------------------------------------------------ helpers

// Complete shear structures near the testbed base point, parametrized by
// coefficients along the complete basis.
struct ShearFrame {
  ShearChartPtr chart;
  std::vector<double> sigma0;
  Eigen::MatrixXd B;  // ncoords x k
  Eigen::MatrixXd W;  // Thurston matrix on the basis
  int k = 0;

  explicit ShearFrame(ShearChartPtr ch, std::vector<double> base) : chart(std::move(ch)), sigma0(std::move(base)) {
    auto basis = complete_basis(*chart);
    k = static_cast<int>(basis.size());
    B.resize(chart->ncoords(), k);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < chart->ncoords(); ++i) B(i, j) = basis[j][i];
    W = thurston_matrix(*chart);
  }
  std::vector<double> coords(const Eigen::VectorXd& s) const {
    std::vector<double> x = sigma0;
    Eigen::VectorXd d = B * s;
    for (int i = 0; i < chart->ncoords(); ++i) x[i] += d(i);
    return x;
  }
  TeichPoint point(const Eigen::VectorXd& s) const {
    return make_point(chart, make_shear_coordinates(*chart, coords(s), 1e-9));
  }
  Eigen::VectorXd coefficients(const std::vector<double>& x, bool relative = true) const {
    Eigen::VectorXd v(chart->ncoords());
    for (int i = 0; i < chart->ncoords(); ++i) v(i) = x[i] - (relative ? sigma0[i] : 0.0);
    return B.colPivHouseholderQr().solve(v);
  }
  Eigen::MatrixXd split_form() const {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * k, 2 * k);
    M.topLeftCorner(k, k) = chart->kappa_L * W;
    M.bottomRightCorner(k, k) = -chart->kappa_L * W;
    return M;
  }
};

Eigen::VectorXd sample_box(Rng& rng, const std::vector<std::pair<double, double>>& ranges) {
  Eigen::VectorXd x(static_cast<int>(ranges.size()));
  for (size_t i = 0; i < ranges.size(); ++i) x(static_cast<int>(i)) = rng.uniform(ranges[i].first, ranges[i].second);
  return x;
}

std::vector<std::pair<double, double>> repeat(std::pair<double, double> r, int n) {
  return std::vector<std::pair<double, double>>(n, r);
}

FNCoordinates random_fn(Rng& rng, const Testbed& tb) {
  auto L = box_range(tb, "lengths"), T = box_range(tb, "twists");
  FNCoordinates x;
  for (size_t i = 0; i < tb.fn->curves.size(); ++i) x.lengths.push_back(rng.uniform(L.first, L.second));
  for (size_t i = 0; i < tb.fn->curves.size(); ++i) x.twists.push_back(rng.uniform(T.first, T.second));
  return x;
}

// Weights k/4 in (0, 2], the testbed's declared weight range.
Rational random_weight(Rng& rng) { return Rational(rng.integer(1, 8), 4); }

WeightedMulticurve random_multicurve(Rng& rng, const FNChart& chart) {
  WeightedMulticurve l;
  l.pants_supported = true;
  const long n = static_cast<long>(chart.curves.size());
  long mask = rng.integer(1, (1L << n) - 1);
  for (long i = 0; i < n; ++i)
    if (mask & (1L << i)) l.components.push_back({CurveRef(chart.curves[i].name), random_weight(rng)});
  return l;
}

WeightedMulticurve single(const std::string& curve, const Rational& w) {
  WeightedMulticurve l;
  l.pants_supported = true;
  l.components.push_back({CurveRef(curve), w});
  return l;
}

double panel_gap(const Holonomy& x, const Holonomy& y, const std::vector<Word>& panel) {
  return panel_distance(trace_panel(x, panel), trace_panel(y, panel));
}

std::string qstr(const Rational& q) { return to_string(q); }

WeightSystem random_combination(Rng& rng, const std::vector<WeightSystem>& basis) {
  WeightSystem w = Rational(0) * basis.at(0);
  for (const auto& b : basis) w = w + rng.rational(20, 9) * b;
  return w;
}

// exp of a traceless 2x2 matrix: X^2 = -det(X) I.
CMat expm_traceless(const CMat& X) {
  cplx d = -X.det();
  cplx r = std::sqrt(d);
  cplx ch = std::cosh(r), sh = std::abs(r) < 1e-300 ? cplx(1.0) : std::sinh(r) / r;
  return CMat{ch + sh * X.a, sh * X.b, sh * X.c, ch + sh * X.d};
}

// Twist deformation applied directly to holonomy: rho(b) -> rho(b) exp(t log(rho(a)) / l(a)).
Holonomy holonomy_twist(const Holonomy& rho, int a_gen, int b_gen, double t) {
  CMat A = rho.generators[a_gen - 1];
  double len = 2.0 * std::acosh(std::abs(A.trace().real()) / 2.0);
  CMat X = cplx(t / len) * matrix_log_sl2(A);
  Holonomy out = rho;
  out.generators[b_gen - 1] = out.generators[b_gen - 1] * expm_traceless(X);
  return out;
}

Eigen::VectorXd flat8(const CMat& m) {
  Eigen::VectorXd v(8);
  int i = 0;
  for (cplx z : {m.a, m.b, m.c, m.d}) {
    v(i++) = z.real();
    v(i++) = z.imag();
  }
  return v;
}

double antisymmetry(const Eigen::MatrixXd& M) { return (M + M.transpose()).cwiseAbs().maxCoeff(); }

// ------------------------------------------------------------------ checks

void de_identity(Ctx& c) {
  const Testbed& t11 = c.load("t11", true);
  const Testbed& on = c.load("onesw", false);
  const Testbed& g2 = c.load("g2", false);
  if (!on.track || !t11.shear || t11.spiral.empty() || !g2.track) throw InputError("de-identity: testbeds lack tracks");
  std::vector<std::pair<std::string, TrackPtr>> tracks = {{"onesw", on.track},
                                                          {"t11-corner", t11.shear->track},
                                                          {"t11-" + t11.spiral[0]->name, t11.spiral[0]->track},
                                                          {"g2-maximal", g2.track}};
  const int n = c.trials(100);
  long failures = 0, total = 0;
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [name, track] : tracks) {
    auto basis = weight_space_basis(track);
    if (basis.empty()) throw InputError("track '" + name + "' has an empty weight space");
    long fails = 0;
    nlohmann::json first;
    for (int i = 0; i < n; ++i) {
      WeightSystem r1 = random_combination(c.rng, basis), t1 = random_combination(c.rng, basis);
      WeightSystem r2 = random_combination(c.rng, basis), t2 = random_combination(c.rng, basis);
      bool ok = true;
      try {
        for (const auto* w : {&r1, &t1, &r2, &t2}) validate_weights(track, w->weights);
      } catch (const InputError&) {
        ok = false;
      }
      auto [lhs, rhs] = de_pullback_identity(r1, t1, r2, t2);
      if (!ok || lhs != rhs) ++fails;
      if (i == 0) first = {{"lhs", qstr(lhs)}, {"rhs", qstr(rhs)}};
    }
    failures += fails;
    total += n;
    per[name] = {{"dimension", basis.size()}, {"quadruples", n}, {"failures", fails}, {"first", first}};
  }
  c.rep.details = {{"tracks", per}, {"quadruples", total}, {"arithmetic", "exact rationals (GMP)"}};
  c.gate("identity failures (exact)", static_cast<double>(failures), 0.0);
}

struct PullbackRun {
  PullbackReport report;
  nlohmann::json extra;
};

// F = E o delta^{-1} on a shear chart: (s, u) -> (left, right) basis coefficients.
// read_back: recover the coordinates of the earthquaked structures from their
// holonomy (spiral charts) instead of from the chart arithmetic.
PullbackReport factor2_on(Ctx& c, const ShearFrame& fr, bool read_back, int samples, const Testbed& tb) {
  const int k = fr.k;
  ChartedMap F;
  F.source = "cotangent(" + fr.chart->name + ")";
  F.target = "left x right (" + fr.chart->name + ")";
  F.n_src = F.n_tgt = 2 * k;
  auto S = box_range(tb, "shear_basis"), U = box_range(tb, "cotangent");
  F.lo.resize(2 * k);
  F.hi.resize(2 * k);
  for (int i = 0; i < k; ++i) {
    F.lo(i) = S.first, F.hi(i) = S.second;
    F.lo(k + i) = U.first, F.hi(k + i) = U.second;
  }
  F.eval = [fr, read_back, k](const Eigen::VectorXd& y) {
    TeichPoint m = fr.point(y.head(k));
    std::vector<double> u(y.data() + k, y.data() + 2 * k);
    RealCocycle tau = delta_inverse(m, u);
    auto [mL, mR] = double_earthquake(m, tau);
    auto read = [&](const TeichPoint& p) {
      if (read_back) return fr.coefficients(shear_from_holonomy(*fr.chart, p.holonomy).coords.values);
      return fr.coefficients(p.shear().coords.values);
    };
    Eigen::VectorXd out(2 * k);
    out << read(mL), read(mR);
    return out;
  };
  std::vector<Eigen::VectorXd> xs;
  std::vector<std::pair<double, double>> ranges = repeat(S, k);
  for (auto r : repeat(U, k)) ranges.push_back(r);
  for (int i = 0; i < samples; ++i) xs.push_back(sample_box(c.rng, ranges));
  FormSpec src = constant_form("cotangent", PairingKind::cotangent, cotangent_matrix(k));
  FormSpec tgt = constant_form("kappa_L (thurston + -thurston)", PairingKind::thurston, fr.split_form());
  return pullback_check(F, src, tgt, 2.0, xs, c.fd());
}

ShearFrame spiral_frame(const Testbed& tb) {
  const ShearChartPtr& sc = tb.spiral.at(0);
  SpiralReading r = shear_from_holonomy(*sc, tb.shear_point().holonomy);
  std::vector<double> base = r.coords.values;
  base[2] = 0.0;  // complete structure: the reading's e is rounding noise
  return ShearFrame(sc, base);
}

PullbackReport de_factor2_report(Ctx& c) {
  const Testbed& t = c.load("t11", true);
  ShearFrame fr(t.shear, t.shear_coords->values);
  return factor2_on(c, fr, false, c.trials(12), t);
}

void de_factor_2(Ctx& c) {
  PullbackReport tri = de_factor2_report(c);
  const Testbed& t = c.load("t11", true);
  PullbackReport sp = factor2_on(c, spiral_frame(t), true, c.trials(12), t);
  c.rep.details = {{"triangulation_chart", tri.to_json()}, {"spiral_chart", sp.to_json()},
                   {"kappa_L_spiral", fmt_real(t.spiral.at(0)->kappa_L)}};
  const double tol = c.tol(1e-6);
  c.gate("max |pullback - 2 cotangent| (triangulation chart)", tri.max_dev, tol);
  c.gate("|fitted c - 2| (triangulation chart)", std::abs(tri.fitted_c - 2.0), tol);
  c.gate("max |pullback - 2 cotangent| (spiral chart, holonomy read-back)", sp.max_dev, tol);
}

void length_consistency(Ctx& c) {
  const Testbed& t = c.load("t11", true);
  if (t.spiral.size() < 5) throw InputError("length-consistency needs at least 5 spiral charts");
  ShearFrame fr(t.shear, t.shear_coords->values);
  const double kappa = t.calibrated("kappa_L");
  auto S = box_range(t, "shear_basis");
  std::vector<TeichPoint> points = {t.shear_point()};
  for (int i = 0; i < c.trials(4); ++i) points.push_back(fr.point(sample_box(c.rng, repeat(S, fr.k))));
  double worst_len = 0, worst_switch = 0, lo = INFINITY, hi = -INFINITY;
  nlohmann::json rows = nlohmann::json::array();
  for (size_t pi = 0; pi < points.size(); ++pi) {
    const Holonomy& rho = points[pi].holonomy;
    for (const auto& sc : t.spiral) {
      SpiralReading r = shear_from_holonomy(*sc, rho);
      WeightSystem core = carried_cocycle(sc->track, {1, 1, 0, 0, 0});
      double omega = cocycle_length(*sc, r.coords, core);
      double len = trace_length(rho, CurveWord{sc->mark_g, true}).length;
      double ratio = len / omega;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      worst_len = std::max(worst_len, std::abs(kappa * omega - len));
      worst_switch = std::max(worst_switch, r.switch_residual);
      rows.push_back({{"point", pi},
                      {"curve", format_word(sc->mark_g, rho.presentation)},
                      {"trace_length", fmt_real(len)},
                      {"thurston_pairing", fmt_real(omega)},
                      {"ratio", fmt_real(ratio)}});
    }
  }
  c.rep.details = {{"kappa_L_recorded", fmt_real(kappa)},
                   {"curves", t.spiral.size()},
                   {"points", points.size()},
                   {"ratio_min", fmt_real(lo)},
                   {"ratio_max", fmt_real(hi)},
                   {"switch_residual", fmt_real(worst_switch)},
                   {"readings", rows}};
  const double tol = c.tol(1e-8);
  c.gate("max |kappa_L * cocycle_length - trace_length|", worst_len, tol);
  c.gate("kappa_L spread across curves", hi - lo, tol);
}

void flow_property(Ctx& c) {
  // exact part: shear chart arithmetic in Q
  const Testbed& t = c.load("t11", false);
  const ShearChart& ch = *t.shear;
  auto basis = complete_weight_basis(ch);
  QVector sigma0;
  for (const auto& v : t.raw.at("coordinates").at("shear")) sigma0.push_back(parse_rational(v.get<std::string>()));
  auto coords_q = [&](const WeightSystem& w) {
    QVector q(ch.ncoords());
    for (int i = 0; i < ch.ncoords(); ++i) q[i] = w.weights[ch.coord_edges[i]];
    return q;
  };
  const int n = c.trials(20);
  long exact_fail = 0;
  for (int i = 0; i < n; ++i) {
    QVector sigma = sigma0, shift = coords_q(random_combination(c.rng, basis));
    for (int j = 0; j < ch.ncoords(); ++j) sigma[j] += shift[j];
    WeightSystem t1 = random_combination(c.rng, basis), t2 = random_combination(c.rng, basis);
    Rational s = c.rng.rational(9, 7), u = c.rng.rational(9, 7);
    auto E = [&](const QVector& x, const WeightSystem& w, const Rational& r, Side sd) {
      return earthquake_shear_exact(ch, x, w, r, sd);
    };
    if (E(E(sigma, t1, s, Side::L), t1, u, Side::L) != E(sigma, t1, s + u, Side::L)) ++exact_fail;
    if (E(E(sigma, t1, 1, Side::L), t2, 1, Side::L) != E(sigma, t1 + t2, 1, Side::L)) ++exact_fail;
    if (E(E(sigma, t1, s, Side::L), t1, s, Side::R) != sigma) ++exact_fail;
  }
  // FN part
  const Testbed& g = c.load("g2", true);
  double worst = 0, worst_direct = 0;
  for (int i = 0; i < n; ++i) {
    TeichPoint m = make_point(g.fn, random_fn(c.rng, g));
    WeightedMulticurve l = random_multicurve(c.rng, *g.fn);
    double s = c.rng.uniform(-1, 1), u = c.rng.uniform(-1, 1);
    TeichPoint a = earthquake(earthquake(m, l, s, Side::L), l, u, Side::L);
    TeichPoint b = earthquake(m, l, s + u, Side::L);
    worst = std::max(worst, panel_gap(a.holonomy, b.holonomy, g.panel));
    // the same flow applied directly to the holonomy (non-separating curves)
    const std::string curve = i % 2 ? "a2" : "a1";
    const int ag = curve == "a1" ? 1 : 3;
    Rational w = random_weight(c.rng);
    double tw = to_double(w) * g.fn->curves[g.fn->index_of(curve)].twist_sign;
    Holonomy direct = holonomy_twist(holonomy_twist(m.holonomy, ag, ag + 1, s * tw), ag, ag + 1, u * tw);
    TeichPoint chart = earthquake(m, single(curve, w), s + u, Side::L);
    worst_direct = std::max(worst_direct, panel_gap(direct, chart.holonomy, g.panel));
  }
  c.rep.details = {{"shear_exact_trials", n}, {"shear_exact_failures", exact_fail}, {"fn_trials", n}};
  const double tol = c.tol(1e-9);
  c.gate("shear chart flow failures (exact)", static_cast<double>(exact_fail), 0.0);
  c.gate("FN panel gap (s then t) vs (s+t)", worst, tol);
  c.gate("FN panel gap, holonomy-level twist flow vs chart", worst_direct, tol);
}

void mess_round_trip(Ctx& c) {
  const Testbed& g = c.load("g2", true);
  const int n = c.trials(20);
  double worst = 0, worst_half = 0, min_split = INFINITY;
  for (int i = 0; i < n; ++i) {
    TeichPoint m = make_point(g.fn, random_fn(c.rng, g));
    WeightedMulticurve l = random_multicurve(c.rng, *g.fn);
    AdSPoint ads = ads_from_plus_boundary(m, l);
    TeichPoint back = earthquake(ads.right, multicurve_scale(l, 2), 1.0, Side::L);
    worst = std::max(worst, panel_gap(back.holonomy, ads.left.holonomy, g.panel));
    min_split = std::min(min_split, panel_gap(ads.left.holonomy, ads.right.holonomy, g.panel));
    WeightedMulticurve half = multicurve_scale(l, Rational(1, 2));
    auto [hl, hr] = double_earthquake(m, half);
    TeichPoint hb = earthquake(hr, multicurve_scale(half, 2), 1.0, Side::L);
    worst_half = std::max(worst_half, panel_gap(hb.holonomy, hl.holonomy, g.panel));
  }
  c.rep.details = {{"trials", n}, {"min_left_right_panel_gap", fmt_real(min_split)}};
  const double tol = c.tol(1e-8);
  c.gate("panel gap E_L(m_R, 2l) vs m_L", worst, tol);
  c.gate("panel gap, half lamination round trip", worst_half, tol);
}

void mink_cocycles(Ctx& c) {
  const Testbed& g = c.load("g2", true);
  const int n = c.trials(10);
  double residual = 0, panel_res = 0, additivity = 0, oracle_res = 0;
  std::vector<double> scales;
  for (int i = 0; i < n; ++i) {
    TeichPoint m = make_point(g.fn, random_fn(c.rng, g));
    Rational w1 = random_weight(c.rng), w2 = random_weight(c.rng);
    WeightedMulticurve l1 = single("a1", w1), l2 = single("a2", w2), l12 = l1;
    l12.components.push_back(l2.components[0]);
    MinkPoint p1 = mink_from_lamination(m, l1, c.fd()), p2 = mink_from_lamination(m, l2, c.fd());
    MinkPoint p12 = mink_from_lamination(m, l12, c.fd());
    for (const auto* p : {&p1, &p2, &p12}) residual = std::max(residual, p->translation.relator_residual);
    for (size_t k = 0; k < p12.translation.values.size(); ++k)
      additivity = std::max(additivity, norm(p12.translation.values[k] - p1.translation.values[k] - p2.translation.values[k]));
    // cocycle condition on the panel: assembled u(w) vs the derivative of rho_t(w) rho(w)^-1
    for (const Word& w : g.panel) {
      auto f = [&](double t) {
        CMat x = earthquake(m, l12, t, Side::L).holonomy.eval(w) * m.holonomy.eval(w).adj();
        return flat8(x);
      };
      // relative: u(w) grows like |rho(w)|^2 along the panel
      Eigen::VectorXd direct = fd_derivative(f, c.fd());
      Eigen::VectorXd assembled = flat8(cocycle_eval(m.holonomy, p12.translation, w));
      panel_res = std::max(panel_res, (direct - assembled).cwiseAbs().maxCoeff() /
                                          std::max(1.0, assembled.cwiseAbs().maxCoeff()));
    }
    OracleComparison oc = compare_with_oracle(p1.translation, single_curve_cocycle(m, "a1", to_double(w1)));
    scales.push_back(oc.scale);
    oracle_res = std::max(oracle_res, oc.residual);
  }
  double mean = 0, var = 0;
  for (double s : scales) mean += s / scales.size();
  for (double s : scales) var += (s - mean) * (s - mean) / scales.size();
  double spread = std::sqrt(var) / std::abs(mean);
  c.rep.details = {{"samples", n},
                   {"oracle_scale_mean", fmt_real(mean)},
                   {"oracle_scale_recorded", g.calibration.count("oracle_scale") ? fmt_real(g.calibration.at("oracle_scale")) : "none"},
                   {"oracle_max_residual", fmt_real(oracle_res)}};
  const double tol = c.tol(1e-6);
  c.gate("cocycle relator residual", residual, tol);
  c.gate("cocycle condition on panel words (relative)", panel_res, tol);
  c.gate("additivity over components", additivity, tol);
  c.gate("oracle scale std/|mean|", spread, 1e-4);
}

void goldman_gates(Ctx& c) {
  const Testbed& g = c.load("g2", true);
  const FNChart& chart = *g.fn;
  const int npts = c.trials(3);
  const CocycleOptions copt{c.fd(), true, 1e-6};
  double anti = 0, cob = 0, defect = 0, wolpert_dev = 0, nondegenerate = INFINITY;
  std::vector<double> kappas;
  for (int p = 0; p < npts; ++p) {
    FNCoordinates x = random_fn(c.rng, g);
    std::vector<double> x0 = x.flat();
    const int n = static_cast<int>(x0.size());
    HolonomyBuilder real = [&](const std::vector<double>& y) { return holonomy_from_fn(chart, FNCoordinates::from_flat(y)); };
    Holonomy rho = real(x0);
    std::vector<Cocycle> cs;
    for (int k = 0; k < n; ++k) {
      std::vector<double> e(n, 0.0);
      e[k] = 1;
      cs.push_back(cocycle_from_direction(real, x0, e, copt));
    }
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) G(i, j) = goldman_pairing(rho, cs[i], cs[j], PairingKind::goldman_killing_real);
    anti = std::max(anti, antisymmetry(G));
    Eigen::MatrixXd Wo = cotangent_matrix(n / 2);
    double kap = (G.cwiseProduct(Wo)).sum() / Wo.squaredNorm();
    kappas.push_back(kap);
    wolpert_dev = std::max(wolpert_dev, (G - kap * Wo).cwiseAbs().maxCoeff());
    // coboundaries pair to zero with cocycles
    for (int k = 0; k < n; ++k) {
      double a = c.rng.uniform(-1, 1), b = c.rng.uniform(-1, 1), d = c.rng.uniform(-1, 1);
      Cocycle db = coboundary(rho, CMat{a, b, d, -a});
      cob = std::max(cob, std::abs(goldman_pairing(rho, db, cs[k], PairingKind::goldman_killing_real)));
    }
    // tr1: complex FN coordinates (lengths, twists + i bending); the bending
    // directions make the imaginary part non-degenerate
    std::vector<double> z0 = x0;
    auto Bd = box_range(c.load("t11", false), "bending");
    for (size_t i = 0; i < chart.curves.size(); ++i) z0.push_back(c.rng.uniform(Bd.first, Bd.second));
    const int nz = static_cast<int>(z0.size());
    HolonomyBuilder cplx_b = [&](const std::vector<double>& y) {
      const size_t m = chart.curves.size();
      std::vector<double> len(y.begin(), y.begin() + m);
      std::vector<cplx> tw;
      for (size_t i = 0; i < m; ++i) tw.emplace_back(y[m + i], y[2 * m + i]);
      return holonomy_from_fn(chart, len, tw);
    };
    Holonomy rc = cplx_b(z0);
    std::vector<Cocycle> cc;
    for (int k = 0; k < nz; ++k) {
      std::vector<double> e(nz, 0.0);
      e[k] = 1;
      cc.push_back(cocycle_from_direction(cplx_b, z0, e, copt));
    }
    Eigen::MatrixXd G1(nz, nz);
    for (int i = 0; i < nz; ++i)
      for (int j = 0; j < nz; ++j) G1(i, j) = goldman_pairing(rc, cc[i], cc[j], PairingKind::goldman_tr1);
    anti = std::max(anti, antisymmetry(G1));
    for (int k = 0; k < nz; ++k) {
      CMat X{cplx(c.rng.uniform(-1, 1), c.rng.uniform(-1, 1)), cplx(c.rng.uniform(-1, 1), c.rng.uniform(-1, 1)),
             cplx(c.rng.uniform(-1, 1), c.rng.uniform(-1, 1)), cplx(0)};
      X.d = -X.a;
      cob = std::max(cob, std::abs(goldman_pairing(rc, coboundary(rc, X), cc[k], PairingKind::goldman_tr1)));
    }
    // tr0: Minkowski point (rho, tau) with tangent pairs
    TeichPoint m = make_point(g.fn, x);
    WeightedMulticurve l = random_multicurve(c.rng, chart);
    Cocycle tau = project_to_cocycles(rho, mink_from_lamination(m, l, c.fd()).translation);
    std::vector<std::pair<Cocycle, Cocycle>> U;
    for (int k = 0; k < n; ++k) U.push_back(project_tr0_tangent(rho, tau, {cs[k], cs[(k + 1) % n]}));
    Eigen::MatrixXd G0(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) G0(i, j) = goldman_pairing_tr0(rho, tau, U[i], U[j]);
    anti = std::max(anti, antisymmetry(G0));
    // tr-1: AdS pair from the double earthquake; left and right tangent
    // directions are independent
    auto [pL, pR] = double_earthquake(m, l);
    const std::vector<double> xL = pL.fn().coords.flat(), xR = pR.fn().coords.flat();
    const Holonomy& rL = pL.holonomy;
    const Holonomy& rR = pR.holonomy;
    std::vector<std::pair<Cocycle, Cocycle>> V;
    for (int k = 0; k < n; ++k) {
      std::vector<double> e(n, 0.0), f(n, 0.0);
      e[k] = 1;
      f[(k + 1) % n] = 1;
      V.push_back({cocycle_from_direction(real, xL, e, copt), cocycle_from_direction(real, xR, f, copt)});
    }
    Eigen::MatrixXd Gm(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Gm(i, j) = goldman_pairing_trm1(rL, rR, V[i], V[j]);
        defect = std::max(defect, std::abs(ads_pairing_decomposition(rL, rR, V[i], V[j]).defect()));
      }
    anti = std::max(anti, antisymmetry(Gm));
    nondegenerate = std::min({nondegenerate, G.cwiseAbs().maxCoeff(), G1.cwiseAbs().maxCoeff(),
                              G0.cwiseAbs().maxCoeff(), Gm.cwiseAbs().maxCoeff()});
  }
  double kmean = 0;
  for (double k : kappas) kmean += k / kappas.size();
  c.rep.details = {{"points", npts},
                   {"kappa_G_wolpert_fit", fmt_real(kmean)},
                   {"kappa_G_wolpert_recorded", g.calibration.count("kappa_G") ? fmt_real(g.calibration.at("kappa_G")) : "none"},
                   {"wolpert_max_deviation", fmt_real(wolpert_dev)},
                   {"smallest_max_pairing_entry", fmt_real(nondegenerate)}};
  c.gate("antisymmetry (killing-real, tr1, tr0, tr-1)", anti, c.tol(1e-10));
  c.gate("coboundary annihilation", cob, 1e-6);
  c.gate("tr-1 decomposition defect", defect, 1e-12);
}

// traces (tr a, tr b, tr ab) of the complex shear structure sigma0 + B(a + i c)
std::function<Eigen::Vector3cd(const Eigen::VectorXd&)> cp_traces(const ShearFrame& fr) {
  return [fr](const Eigen::VectorXd& y) {
    const int k = fr.k;
    Eigen::VectorXd re = fr.B * y.head(k), im = fr.B * y.tail(k);
    ComplexShearCoordinates z;
    for (int i = 0; i < fr.chart->ncoords(); ++i) z.values.emplace_back(fr.sigma0[i] + re(i), im(i));
    Holonomy h = holonomy_from_shear(*fr.chart, z);
    return Eigen::Vector3cd(h.trace({1}), h.trace({2}), h.trace({1, 2}));
  };
}

PullbackReport grafting_report(Ctx& c) {
  const Testbed& t = c.load("t11", true);
  ShearFrame fr(t.shear, t.shear_coords->values);
  const int k = fr.k;
  ChartedMap F;
  F.source = "cotangent(t11)";
  F.target = "CP(t11) shear-bend";
  F.n_src = F.n_tgt = 2 * k;
  auto S = box_range(t, "shear_basis"), U = box_range(t, "cotangent");
  F.lo.resize(2 * k);
  F.hi.resize(2 * k);
  for (int i = 0; i < k; ++i) {
    F.lo(i) = S.first, F.hi(i) = S.second;
    F.lo(k + i) = U.first, F.hi(k + i) = U.second;
  }
  F.eval = [fr, k](const Eigen::VectorXd& y) {
    TeichPoint m = fr.point(y.head(k));
    std::vector<double> u(y.data() + k, y.data() + 2 * k);
    RealCocycle beta = delta_inverse(m, u);
    ComplexShearCoordinates z = shear_bend(m.shear().coords, beta.coords);
    std::vector<double> re, im;
    for (cplx v : z.values) {
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    Eigen::VectorXd out(2 * k);
    out << fr.coefficients(re), fr.coefficients(im, false);
    return out;
  };
  std::vector<std::pair<double, double>> ranges = repeat(S, k);
  for (auto r : repeat(U, k)) ranges.push_back(r);
  std::vector<Eigen::VectorXd> xs;
  for (int i = 0; i < c.trials(12); ++i) xs.push_back(sample_box(c.rng, ranges));
  FormSpec src = constant_form("cotangent", PairingKind::cotangent, cotangent_matrix(k));
  FormSpec tgt{"goldman (Im, trace coordinates)", PairingKind::goldman_tr1, torus_trace_form(cp_traces(fr), true, c.fd())};
  return pullback_check(F, src, tgt, std::nullopt, xs, c.fd());
}

void grafting_symplectic(Ctx& c) {
  PullbackReport r = grafting_report(c);
  const Testbed& t = c.load("t11", true);
  c.rep.details = {{"pullback", r.to_json()},
                   {"kappa_Gr_fit", fmt_real(r.fitted_c)},
                   {"kappa_Gr_recorded", t.calibration.count("kappa_Gr") ? fmt_real(t.calibration.at("kappa_Gr")) : "none"}};
  c.gate("relative residual of the one-constant fit", r.rel_residual, c.tol(1e-4));
}

void wick_composition(Ctx& c) {
  // the two ingredients, each with its own stream from the same seed
  Ctx c2("de-factor-2", c.opt), cg("grafting-symplectic", c.opt);
  PullbackReport e = de_factor2_report(c2);
  PullbackReport gr = grafting_report(cg);
  const Testbed& t = c.load("t11", true);
  ShearFrame fr(t.shear, t.shear_coords->values);
  const int k = fr.k;
  ChartedMap W;
  W.source = "CP(t11) shear-bend";
  W.target = "left x right (t11)";
  W.n_src = W.n_tgt = 2 * k;
  auto S = box_range(t, "shear_basis"), Bd = box_range(t, "bending");
  W.lo.resize(2 * k);
  W.hi.resize(2 * k);
  for (int i = 0; i < k; ++i) {
    W.lo(i) = S.first, W.hi(i) = S.second;
    W.lo(k + i) = Bd.first, W.hi(k + i) = Bd.second;
  }
  W.eval = [fr, k](const Eigen::VectorXd& y) {
    TeichPoint m = fr.point(y.head(k));
    Eigen::VectorXd b = fr.B * y.tail(k);
    RealCocycle beta{std::vector<double>(b.data(), b.data() + b.size())};
    AdSPoint a = wick_pleated(m, beta);
    Eigen::VectorXd out(2 * k);
    out << fr.coefficients(a.left.shear().coords.values), fr.coefficients(a.right.shear().coords.values);
    return out;
  };
  std::vector<std::pair<double, double>> ranges = repeat(S, k);
  for (auto r : repeat(Bd, k)) ranges.push_back(r);
  std::vector<Eigen::VectorXd> xs;
  for (int i = 0; i < c.trials(12); ++i) xs.push_back(sample_box(c.rng, ranges));
  FormSpec src{"goldman (Im, trace coordinates)", PairingKind::goldman_tr1, torus_trace_form(cp_traces(fr), true, c.fd())};
  FormSpec tgt = constant_form("kappa_L (thurston + -thurston)", PairingKind::thurston, fr.split_form());
  PullbackReport w = pullback_check(W, src, tgt, std::nullopt, xs, c.fd());
  const double predicted = e.fitted_c / gr.fitted_c;
  c.rep.details = {{"c_2", fmt_real(e.fitted_c)},
                   {"kappa_Gr", fmt_real(gr.fitted_c)},
                   {"c_W_predicted", fmt_real(predicted)},
                   {"c_W_fitted", fmt_real(w.fitted_c)},
                   {"pullback", w.to_json()}};
  c.gate("|c_W - c_2 / kappa_Gr|", std::abs(w.fitted_c - predicted), c.tol(1e-4));
  c.gate("relative residual of the W pullback fit", w.rel_residual, 1e-4);
}

void construction_health(Ctx& c) {
  const Testbed& g = c.load("g2", true);
  const Testbed& t = c.load("t11", false);
  const int n = c.trials(20);
  double fn_res = 0, para = 0;
  auto Bd = box_range(t, "bending");
  for (int i = 0; i < n; ++i) {
    FNCoordinates x = random_fn(c.rng, g);
    fn_res = std::max(fn_res, holonomy_from_fn(*g.fn, x).relator_residual());
    std::vector<cplx> tw;
    for (double v : x.twists) tw.emplace_back(v, c.rng.uniform(Bd.first, Bd.second));
    fn_res = std::max(fn_res, holonomy_from_fn(*g.fn, x.lengths, tw).relator_residual());
  }
  ShearFrame fr(t.shear, t.shear_coords->values);
  auto S = box_range(t, "shear_basis");
  const Word peripheral = t.presentation.peripheral.at(0);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd s = sample_box(c.rng, repeat(S, fr.k));
    Holonomy h = fr.point(s).holonomy;
    para = std::max(para, std::abs(std::abs(h.trace(peripheral).real()) - 2.0));
    Eigen::VectorXd b = fr.B * sample_box(c.rng, repeat(Bd, fr.k));
    ComplexShearCoordinates z;
    auto xs = fr.coords(s);
    for (int j = 0; j < fr.chart->ncoords(); ++j) z.values.emplace_back(xs[j], b(j));
    cplx pt = holonomy_from_shear(*fr.chart, z).trace(peripheral);
    para = std::max(para, std::min(std::abs(pt - 2.0), std::abs(pt + 2.0)));
  }
  CheckOptions sub = c.opt;
  sub.tol.reset();
  long mismatches = 0;
  for (const std::string name : {"de-factor-2", "mess-round-trip"}) {
    std::string a = run_check(name, sub).to_json().dump(), b = run_check(name, sub).to_json().dump();
    if (a != b) ++mismatches;
  }
  c.rep.details = {{"fn_samples", 2 * n}, {"shear_samples", 2 * n}, {"determinism_checks", {"de-factor-2", "mess-round-trip"}}};
  c.gate("FN relator residual", fn_res, c.tol(1e-9));
  c.gate("shear cusp | |tr| - 2 |", para, 1e-10);
  c.gate("report mismatches between identical runs", static_cast<double>(mismatches), 0.0);
}

}  // namespace

CheckReport run_check(const std::string& name, const CheckOptions& opt) {
  static const std::map<std::string, void (*)(Ctx&)> table = {
      {"de-identity", de_identity},         {"de-linear-identity", de_identity},
      {"de-factor-2", de_factor_2},
      {"length-consistency", length_consistency}, {"flow-property", flow_property},
      {"mess-round-trip", mess_round_trip}, {"mink-cocycles", mink_cocycles},
      {"goldman-gates", goldman_gates},     {"grafting-symplectic", grafting_symplectic},
      {"wick-composition", wick_composition}, {"construction-health", construction_health}};
  auto it = table.find(name);
  if (it == table.end()) {
    std::string known;
    for (const auto& n : check_names()) known += " " + n;
    throw InputError("unknown check '" + name + "'; known:" + known);
  }
  Ctx c(name, opt);
  it->second(c);
  c.rep.details["options"] = {{"seed", std::to_string(opt.seed)},
                              {"h", fmt_real(opt.h)},
                              {"richardson", opt.richardson},
                              {"trials", opt.trials},
                              {"tol", opt.tol ? nlohmann::json(fmt_real(*opt.tol)) : nlohmann::json("default")}};
  c.rep.pass = !c.rep.gates.empty();
  for (const Gate& g : c.rep.gates) c.rep.pass = c.rep.pass && g.pass;
  return std::move(c.rep);
}

}  // namespace wick
