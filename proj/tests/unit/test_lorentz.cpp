#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "wick/error.hpp"
#include "wick/lorentz.hpp"

using namespace wick;

namespace {

const Testbed& t11() { return wt::testbed("t11"); }
const Testbed& g2() { return wt::testbed("g2"); }

WeightedMulticurve multicurve(std::vector<std::pair<std::string, Rational>> comps) {
  WeightedMulticurve l;
  l.pants_supported = true;
  for (auto& [id, w] : comps) l.components.push_back({id, w});
  return l;
}

double cocycle_distance(const Cocycle& a, const Cocycle& b) {
  double d = 0;
  for (size_t i = 0; i < a.values.size(); ++i) d = std::max(d, norm(a.values[i] - b.values[i]));
  return d;
}

TeichPoint random_fn_point(wt::Rng& rng) {
  return make_point(g2().fn, FNCoordinates{wt::random_vector(rng, 3, 1.5, 3.0), wt::random_vector(rng, 3, -1, 1)});
}

}  // namespace

TEST_CASE("ads_from_plus_boundary: Fuchsian case and the shear-chart formula") {
  TeichPoint m = g2().fn_point();
  AdSPoint f = ads_from_plus_boundary(m, WeightedMulticurve{});
  CHECK(panel_distance(trace_panel(f.left.holonomy, g2().panel), trace_panel(f.right.holonomy, g2().panel)) < 1e-12);
  AdSPoint w = wick_pleated(m, WeightedMulticurve{});
  CHECK(panel_distance(trace_panel(w.left.holonomy, g2().panel), trace_panel(m.holonomy, g2().panel)) < 1e-12);

  TeichPoint s = t11().shear_point();
  RealCocycle tau{{0.25, -0.5, 0.25}};
  AdSPoint a = ads_from_plus_boundary(s, tau);
  for (int i = 0; i < 3; ++i) {
    CHECK(a.left.shear().coords.values[i] == doctest::Approx(s.shear().coords.values[i] + tau.coords[i]));
    CHECK(a.right.shear().coords.values[i] == doctest::Approx(s.shear().coords.values[i] - tau.coords[i]));
  }
}

TEST_CASE("ads_holonomy_pair: both factors are genus-2 representations; left = E_L(m, l)") {
  wt::Rng rng(81);
  for (int trial = 0; trial < 5; ++trial) {
    TeichPoint m = random_fn_point(rng);
    auto l = multicurve({{"a1", Rational(1, 2)}, {"c", Rational(3, 4)}});
    AdSPoint a = wick_pleated(m, l);
    auto [hl, hr] = ads_holonomy_pair(a);
    CHECK(hl.relator_residual() < 1e-9);
    CHECK(hr.relator_residual() < 1e-9);
    TeichPoint e = earthquake(m, l, 1.0, Side::L);
    CHECK(panel_distance(trace_panel(hl, g2().panel), trace_panel(e.holonomy, g2().panel)) == 0.0);
  }
}

TEST_CASE("property: Mess round trip E_L(m_R, 2 l) = m_L on trace panels") {
  wt::Rng rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    TeichPoint m = random_fn_point(rng);
    auto l = multicurve({{"a1", Rational(rng.integer(1, 8), 4)}, {"a2", Rational(rng.integer(1, 8), 4)}});
    AdSPoint a = wick_pleated(m, l);
    TeichPoint back = earthquake(a.right, multicurve_scale(l, 2), 1.0, Side::L);
    auto pl = trace_panel(a.left.holonomy, g2().panel);
    CHECK(panel_distance(pl, trace_panel(back.holonomy, g2().panel)) < 1e-8);
  }
  TeichPoint s = t11().shear_point();
  RealCocycle tau{{0.2, 0.1, -0.3}}, tau2{{0.4, 0.2, -0.6}};
  AdSPoint a = wick_pleated(s, tau);
  TeichPoint back = earthquake(a.right, tau2, 1.0, Side::L);
  CHECK(panel_distance(trace_panel(a.left.holonomy, t11().panel), trace_panel(back.holonomy, t11().panel)) < 1e-8);
}

TEST_CASE("mink_from_lamination: zero lamination, tracelessness, provenance") {
  TeichPoint m = g2().fn_point();
  MinkPoint z = mink_from_lamination(m, WeightedMulticurve{});
  for (const CMat& v : z.translation.values) CHECK(norm(v) == 0.0);
  MinkPoint p = mink_from_lamination(m, multicurve({{"a1", Rational(1)}}));
  for (const CMat& v : p.translation.values) CHECK(std::abs(v.trace()) < 1e-12);
  CHECK(p.translation.relator_residual < 1e-6);
  CHECK(p.provenance.at("h") == fmt_real(1e-5));
  CHECK(p.provenance.contains("relator_residual"));
  // the residual gate is enforced
  CHECK_THROWS_AS(mink_from_lamination(m, multicurve({{"a1", Rational(1)}}), FdOptions{}, 0.0), GateError);
}

TEST_CASE("property: Minkowski cocycles are additive over multicurve components") {
  wt::Rng rng(89);
  for (int trial = 0; trial < 5; ++trial) {
    TeichPoint m = random_fn_point(rng);
    Rational w1(rng.integer(1, 8), 4), w2(rng.integer(1, 8), 4), w3(rng.integer(1, 8), 4);
    Cocycle u1 = mink_from_lamination(m, multicurve({{"a1", w1}})).translation;
    Cocycle u2 = mink_from_lamination(m, multicurve({{"a2", w2}})).translation;
    Cocycle u3 = mink_from_lamination(m, multicurve({{"c", w3}})).translation;
    Cocycle all = mink_from_lamination(m, multicurve({{"a1", w1}, {"a2", w2}, {"c", w3}})).translation;
    CHECK(cocycle_distance(all, u1 + u2 + u3) < 1e-6);
    // linear in the weight
    Cocycle twice = mink_from_lamination(m, multicurve({{"a1", 2 * w1}})).translation;
    CHECK(cocycle_distance(twice, 2.0 * u1) < 1e-6);
  }
}

TEST_CASE("single-curve oracle: stable scale constant against the recorded value") {
  wt::Rng rng(97);
  const double recorded = g2().calibrated("oracle_scale");
  std::vector<double> scales;
  for (int trial = 0; trial < 10; ++trial) {
    TeichPoint m = random_fn_point(rng);
    for (const std::string id : {"a1", "a2"}) {
      Cocycle fd = mink_from_lamination(m, multicurve({{id, Rational(1)}}), FdOptions{1e-5, 2}).translation;
      OracleComparison cmp = compare_with_oracle(fd, single_curve_cocycle(m, id, 1.0));
      scales.push_back(cmp.scale);
      CHECK(cmp.residual < 1e-6);
    }
  }
  double mean = 0, var = 0;
  for (double s : scales) mean += s / scales.size();
  for (double s : scales) var += (s - mean) * (s - mean) / scales.size();
  CHECK(std::sqrt(var) / std::abs(mean) < 1e-4);
  CHECK(std::abs(mean - recorded) < 1e-6);
  CHECK_THROWS_AS(single_curve_cocycle(g2().fn_point(), "c", 1.0), InputError);
}

TEST_CASE("ds_from_projective: identity wrapper with a Fuchsian flag") {
  const ShearChart& ch = *t11().shear;
  ComplexShearCoordinates real = shear_bend(*t11().shear_coords, {0, 0, 0});
  dSPoint f = ds_from_projective(real);
  CHECK(f.fuchsian);
  CHECK(std::get<ComplexShearCoordinates>(f.data).values == real.values);
  ComplexShearCoordinates bent = shear_bend(*t11().shear_coords, {0.1, -0.2, 0.1});
  dSPoint b = ds_from_projective(bent);
  CHECK_FALSE(b.fuchsian);
  CHECK(std::get<ComplexShearCoordinates>(b.data).values == bent.values);
  Holonomy h = holonomy_from_shear(ch, bent);
  CHECK_FALSE(ds_from_projective(h).fuchsian);
  CHECK(ds_from_projective(g2().fn_point().holonomy).fuchsian);
}
