#include <doctest.h>

#include "helpers.hpp"
#include "wick/error.hpp"
#include "wick/traintrack.hpp"

using namespace wick;

namespace {

TrackPtr onesw() { return wt::testbed("onesw").track; }
TrackPtr corner() { return wt::testbed("t11").shear->track; }
TrackPtr g2track() { return wt::testbed("g2").track; }

WeightSystem W(const TrackPtr& t, std::initializer_list<long> v) {
  QVector q;
  for (long x : v) q.emplace_back(x);
  return validate_weights(t, q);
}

// Brute-force vertex sum, written out independently of the library: sum over switches of
// a(e+) b(e-) - b(e+) a(e-).
Rational vertex_sum(const TrainTrack& t, const QVector& a, const QVector& b) {
  Rational s = 0;
  for (const auto& v : t.switches) s += a[v.out_plus] * b[v.out_minus] - b[v.out_plus] * a[v.out_minus];
  return s;
}

}  // namespace

TEST_CASE("validate_weights on the one-switch fragment") {
  CHECK_NOTHROW(W(onesw(), {5, 2, 3}));
  CHECK_THROWS_WITH_AS(W(onesw(), {1, 1, 1}), doctest::Contains("switch 0"), InputError);
  CHECK_NOTHROW(W(onesw(), {0, 0, 0}));
  CHECK_THROWS_AS(W(onesw(), {1, 1}), InputError);
  // named form
  CHECK(validate_weights(onesw(), {{"e", Rational(5)}, {"e+", Rational(2)}, {"e-", Rational(3)}}).weights ==
        W(onesw(), {5, 2, 3}).weights);
  CHECK_THROWS_AS(validate_weights(onesw(), {{"e", Rational(5)}, {"e+", Rational(5)}}), InputError);
  CHECK_THROWS_AS(validate_weights(onesw(), {{"x", Rational(0)}}), InputError);
}

TEST_CASE("track validation rejects malformed switches") {
  TrainTrack t;
  t.name = "bad";
  t.edges = {"e", "f"};
  t.switches = {{0, 1, 1}};
  CHECK_THROWS_AS(make_track(t), InputError);
  t.switches = {{0, 1, 5}};
  CHECK_THROWS_AS(make_track(t), InputError);
  TrainTrack three;
  three.name = "three-ends";
  three.edges = {"e", "f", "g", "h", "i", "j", "k"};
  three.switches = {{0, 1, 2}, {3, 0, 4}, {5, 6, 0}};  // edge e meets three switch ends
  CHECK_THROWS_AS(make_track(three), InputError);
}

TEST_CASE("weight_space_basis dimensions") {
  CHECK(weight_space_basis(onesw()).size() == 2);  // rank of the 1x3 switch matrix is 1
  CHECK(weight_space_basis(g2track()).size() == 6);  // 6g - 6 for g = 2
  CHECK(weight_space_basis(corner()).size() == 2);   // complete shears on the punctured torus: 3 edges, 1 cusp row

  TrainTrack t;
  t.name = "forced-zero";
  t.edges = {"e", "f", "g"};
  t.switches = {{0, 1, 2}};
  t.constraints = {{Rational(0), Rational(1), Rational(0)}, {Rational(0), Rational(0), Rational(1)}};
  CHECK(weight_space_basis(make_track(t)).empty());
}

TEST_CASE("thurston_form examples") {
  CHECK(thurston_form(W(onesw(), {5, 2, 3}), W(onesw(), {3, 1, 2})) == 1);  // 2*2 - 1*3
  WeightSystem a = W(onesw(), {5, 2, 3});
  CHECK(thurston_form(a, a) == 0);
  WeightSystem b = W(onesw(), {3, 1, 2}), c = W(onesw(), {-1, 4, -5});
  CHECK(thurston_form(a, b + c) == thurston_form(a, b) + thurston_form(a, c));
  // the floating-point evaluation agrees with the exact one
  CHECK(thurston_form(*onesw(), {5, 2, 3}, {3, 1, 2}) == doctest::Approx(1.0));
  // weight systems on different tracks do not pair
  CHECK_THROWS_AS(thurston_form(a, weight_space_basis(g2track())[0]), InputError);
}

TEST_CASE("corner track: Thurston form is 6 (x dy - y dx) on complete shears") {
  const ShearChart& ch = *wt::testbed("t11").shear;
  auto lift = [&](const QVector& c) {
    QVector w(ch.track->num_edges(), 0);
    for (size_t e = 0; e < w.size(); ++e)
      for (size_t k = 0; k < c.size(); ++k) w[e] += ch.lift[e][k] * c[k];
    return validate_weights(ch.track, w);
  };
  wt::Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Rational x1 = rng.rational(), y1 = rng.rational(), x2 = rng.rational(), y2 = rng.rational();
    QVector s1{x1, y1, -x1 - y1}, s2{x2, y2, -x2 - y2};
    CHECK(thurston_form(lift(s1), lift(s2)) == 6 * (x1 * y2 - y1 * x2));
  }
}

TEST_CASE("double_earthquake_linear examples") {
  auto [l, r] = double_earthquake_linear(W(onesw(), {5, 2, 3}), W(onesw(), {3, 1, 2}));
  CHECK(l.weights == W(onesw(), {8, 3, 5}).weights);
  CHECK(r.weights == W(onesw(), {2, 1, 1}).weights);
  WeightSystem s = W(onesw(), {5, 2, 3}), zero = W(onesw(), {0, 0, 0}), t = W(onesw(), {3, 1, 2});
  auto [l0, r0] = double_earthquake_linear(s, zero);
  CHECK(l0 == s);
  CHECK(r0 == s);
  auto [l1, r1] = double_earthquake_linear(zero, t);
  CHECK(l1 == t);
  CHECK(r1 == Rational(-1) * t);
}

TEST_CASE("de_pullback_identity examples") {
  WeightSystem a = W(onesw(), {5, 2, 3}), b = W(onesw(), {3, 1, 2}), z = W(onesw(), {0, 0, 0});
  auto [l0, r0] = de_pullback_identity(a, z, b, z);
  CHECK(l0 == 0);
  CHECK(r0 == 0);
  auto [lhs, rhs] = de_pullback_identity(a, b, b, a);
  CHECK(lhs == rhs);
  // by hand: Omega(8,3,5 ; 8,3,5) - Omega(2,1,1 ; -2,-1,-1) = 0 and 2*Omega(b,b) - 2*Omega(a,a) = 0
  CHECK(lhs == 0);
}

TEST_CASE("carried_cocycle") {
  WeightSystem one = carried_cocycle(onesw(), {Rational(1), Rational(1), Rational(0)});
  CHECK(one.weights == W(onesw(), {1, 1, 0}).weights);
  CHECK(one.realizable);
  WeightSystem k = carried_cocycle(onesw(), {Rational(3), Rational(3), Rational(0)});
  CHECK(k == Rational(3) * one);
  CHECK_THROWS_AS(carried_cocycle(onesw(), {Rational(1), Rational(1), Rational(1)}), InputError);
  CHECK_THROWS_AS(carried_cocycle(onesw(), {Rational(-1), Rational(-1), Rational(0)}), InputError);
}

TEST_CASE("track and weight JSON round trip") {
  for (const TrackPtr& t : {onesw(), corner(), g2track()}) {
    TrackPtr back = track_from_json(track_to_json(*t));
    CHECK(back->same_as(*t));
    wt::Rng rng(5);
    WeightSystem w = wt::random_weights(t, rng);
    CHECK(weights_from_json(weights_to_json(w)) == w.weights);
  }
  CHECK_THROWS_AS(weights_from_json(nlohmann::json::array({nlohmann::json::array({1, 2, 3})})), InputError);
}

TEST_CASE("property: Thurston form is antisymmetric and bilinear (exact)") {
  wt::Rng rng(17);
  for (const TrackPtr& t : {onesw(), corner(), g2track()}) {
    for (int trial = 0; trial < 40; ++trial) {
      WeightSystem a = wt::random_weights(t, rng), b = wt::random_weights(t, rng), c = wt::random_weights(t, rng);
      Rational s = rng.rational();
      CHECK(thurston_form(a, b) == -thurston_form(b, a));
      CHECK(thurston_form(a, s * b + c) == s * thurston_form(a, b) + thurston_form(a, c));
      CHECK(thurston_form(a, b) == vertex_sum(*t, a.weights, b.weights));
    }
  }
}

TEST_CASE("property: weight-space bases validate and span every weight system") {
  wt::Rng rng(23);
  for (const TrackPtr& t : {onesw(), corner(), g2track()}) {
    auto basis = weight_space_basis(t);
    for (const auto& b : basis) CHECK_NOTHROW(validate_weights(t, b.weights));
    for (int trial = 0; trial < 20; ++trial) {
      WeightSystem w = wt::random_weights(t, rng);
      QVector c = basis_coefficients(basis, w);
      WeightSystem back = validate_weights(t, QVector(t->num_edges(), 0));
      for (size_t i = 0; i < basis.size(); ++i) back = back + c[i] * basis[i];
      CHECK(back == w);
    }
  }
  // a vector violating a switch is not in the span
  QVector bad(onesw()->num_edges(), 0);
  bad[0] = 1;
  CHECK_THROWS_AS(basis_coefficients(weight_space_basis(onesw()), WeightSystem{onesw(), bad}), InputError);
}

TEST_CASE("property: double-earthquake pullback identity holds exactly on random quadruples") {
  wt::Rng rng(29);
  for (const TrackPtr& t : {onesw(), corner(), g2track()}) {
    for (int trial = 0; trial < 100; ++trial) {
      WeightSystem r1 = wt::random_weights(t, rng), t1 = wt::random_weights(t, rng);
      WeightSystem r2 = wt::random_weights(t, rng), t2 = wt::random_weights(t, rng);
      auto [lhs, rhs] = de_pullback_identity(r1, t1, r2, t2);
      CHECK(lhs == rhs);
    }
  }
}
