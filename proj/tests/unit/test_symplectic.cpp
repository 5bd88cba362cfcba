#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "wick/error.hpp"
#include "wick/flows.hpp"
#include "wick/symplectic.hpp"

using namespace wick;

namespace {

const Testbed& t11() { return wt::testbed("t11"); }
const Testbed& g2() { return wt::testbed("g2"); }

HolonomyBuilder fn_builder() {
  FNChartPtr ch = g2().fn;
  return [ch](const std::vector<double>& y) { return holonomy_from_fn(*ch, FNCoordinates::from_flat(y)); };
}

std::vector<double> unit(size_t n, size_t i) {
  std::vector<double> e(n, 0.0);
  e[i] = 1;
  return e;
}

// exp of a traceless 2x2 matrix: cosh(s) I + sinh(s)/s X with s^2 = -det X
CMat expm(const CMat& X) {
  cplx s = std::sqrt(-X.det());
  cplx f = std::abs(s) < 1e-12 ? cplx(1) : std::sinh(s) / s;
  return std::cosh(s) * CMat::identity() + f * X;
}

std::vector<Cocycle> random_cocycles(const std::vector<double>& x, wt::Rng& rng, int n) {
  std::vector<Cocycle> out;
  for (int k = 0; k < n; ++k) out.push_back(cocycle_from_direction(fn_builder(), x, wt::random_vector(rng, x.size(), -1, 1)));
  return out;
}

}  // namespace

TEST_CASE("pairing kinds and number formatting") {
  for (auto k : {PairingKind::thurston, PairingKind::cotangent, PairingKind::goldman_tr0, PairingKind::goldman_trm1,
                 PairingKind::goldman_tr1, PairingKind::goldman_killing_real})
    CHECK(parse_pairing_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_pairing_kind("weil-petersson"), InputError);
  CHECK(fmt_real(0.1) == "0.10000000000000001");
  CHECK(std::stod(fmt_real(M_PI)) == M_PI);
}

TEST_CASE("cocycle_from_direction: zero direction, cocycle condition, FD metadata") {
  std::vector<double> x = g2().fn_coords->flat();
  Cocycle z = cocycle_from_direction(fn_builder(), x, std::vector<double>(6, 0.0));
  for (const CMat& v : z.values) CHECK(norm(v) == 0.0);
  Cocycle u = cocycle_from_direction(fn_builder(), x, unit(6, 3));
  CHECK(u.fd_h == 1e-5);
  CHECK(u.relator_residual < 1e-6);
  CHECK(cocycle_residual(holonomy_from_fn(*g2().fn, *g2().fn_coords), u) < 1e-12);  // projected onto Z^1
  CHECK_THROWS_AS(cocycle_from_direction(fn_builder(), x, {1.0}), InputError);
}

TEST_CASE("property: Goldman pairing is antisymmetric and kills coboundaries") {
  wt::Rng rng(101);
  std::vector<double> x = g2().fn_coords->flat();
  Holonomy rho = holonomy_from_fn(*g2().fn, *g2().fn_coords);
  auto cs = random_cocycles(x, rng, 5);
  for (const auto& u : cs) {
    CHECK(std::abs(goldman_pairing(rho, u, u, PairingKind::goldman_killing_real)) < 1e-10);
    for (const auto& v : cs) {
      double a = goldman_pairing(rho, u, v, PairingKind::goldman_killing_real);
      double b = goldman_pairing(rho, v, u, PairingKind::goldman_killing_real);
      CHECK(std::abs(a + b) < 1e-10);
    }
  }
  // exact coboundaries
  for (int k = 0; k < 5; ++k) {
    CMat X{cplx(rng.uniform(-1, 1)), cplx(rng.uniform(-1, 1)), cplx(rng.uniform(-1, 1)), 0};
    X = traceless_part(X);
    Cocycle db = coboundary(rho, X);
    CHECK(cocycle_residual(rho, db) < 1e-10);
    for (const auto& u : cs) CHECK(std::abs(goldman_pairing(rho, db, u, PairingKind::goldman_killing_real)) < 1e-6);
  }
}

TEST_CASE("a conjugating family gives a cocycle cohomologous to zero") {
  wt::Rng rng(103);
  std::vector<double> x = g2().fn_coords->flat();
  Holonomy rho = holonomy_from_fn(*g2().fn, *g2().fn_coords);
  CMat X = traceless_part(CMat{cplx(0.3), cplx(-0.7), cplx(0.4), cplx(0)});
  HolonomyBuilder conj = [&](const std::vector<double>& t) { return conjugate(rho, expm(cplx(t[0]) * X)); };
  Cocycle u = cocycle_from_direction(conj, {0.0}, {1.0});
  // it is the coboundary of X
  CHECK(std::max(norm(u.values[0] - coboundary(rho, X).values[0]), norm(u.values[1] - coboundary(rho, X).values[1])) <
        1e-8);
  for (const auto& v : random_cocycles(x, rng, 5))
    CHECK(std::abs(goldman_pairing(rho, u, v, PairingKind::goldman_killing_real)) < 1e-6);
}

TEST_CASE("Wolpert: the Goldman trace form is kappa_G * sum dl ^ dtau in FN coordinates") {
  const double kappa = g2().calibrated("kappa_G");
  wt::Rng rng(107);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<double> x = wt::random_vector(rng, 3, 1.5, 3.0);
    for (double t : wt::random_vector(rng, 3, -1, 1)) x.push_back(t);
    Holonomy rho = holonomy_from_fn(*g2().fn, FNCoordinates::from_flat(x));
    std::vector<Cocycle> e;
    for (size_t i = 0; i < 6; ++i) e.push_back(cocycle_from_direction(fn_builder(), x, unit(6, i)));
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        double expected = 0;
        if (i < 3 && j == i + 3) expected = kappa;
        if (j < 3 && i == j + 3) expected = -kappa;
        CHECK(std::abs(goldman_pairing(rho, e[i], e[j], PairingKind::goldman_killing_real) - expected) < 1e-6);
      }
  }
}

TEST_CASE("Sozen-Bonahon on the punctured torus: Goldman = kappa_G * Thurston in shear coordinates") {
  const ShearChart& ch = *t11().shear;
  const double kappa = t11().calibrated("kappa_G");
  auto basis = complete_basis(ch);
  REQUIRE(basis.size() == 2);
  Eigen::MatrixXd W = thurston_matrix(ch);
  const std::vector<double> s0 = t11().shear_coords->values;
  auto traces = [&](const Eigen::VectorXd& y) {
    std::vector<double> s = s0;
    for (int j = 0; j < 2; ++j)
      for (size_t i = 0; i < s.size(); ++i) s[i] += y(j) * basis[j][i];
    Holonomy h = holonomy_from_shear(ch, make_shear_coordinates(ch, s, 1e-9));
    return Eigen::Vector3cd(h.trace({1}), h.trace({2}), h.trace({1, 2}));
  };
  FormField G = torus_trace_form(traces, false, FdOptions{});
  wt::Rng rng(109);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd y(2);
    y << rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5);
    Eigen::MatrixXd g = G(y);
    CHECK(std::abs(g(0, 1) - kappa * W(0, 1)) < 1e-6 * std::abs(kappa * W(0, 1)));
    CHECK(std::abs(g(0, 1) + g(1, 0)) < 1e-10);
  }
}

TEST_CASE("cotangent_form: Darboux pairing") {
  CHECK(cotangent_form({1, 2, 3, 4}, {1, 2, 3, 4}) == 0.0);
  CHECK(cotangent_form({1, 0, 0, 0}, {0, 0, 1, 0}) == 1.0);
  CHECK(cotangent_form({0, 0, 1, 0}, {1, 0, 0, 0}) == -1.0);
  CHECK(cotangent_form({0, 1, 0, 0}, {0, 0, 1, 0}) == 0.0);
  Eigen::MatrixXd M = cotangent_matrix(2);
  Eigen::Vector4d a(1, 2, 3, 4), b(-1, 0.5, 2, 1);
  CHECK(a.dot(M * b) == doctest::Approx(cotangent_form({1, 2, 3, 4}, {-1, 0.5, 2, 1})));
  CHECK_THROWS_AS(cotangent_form({1, 2, 3}, {1, 2, 3}), InputError);
}

TEST_CASE("pullback_check: identity and the linear double-earthquake map") {
  const int n = 2;
  ChartedMap id;
  id.source = id.target = "T*";
  id.n_src = id.n_tgt = 2 * n;
  id.eval = [](const Eigen::VectorXd& x) { return x; };
  id.lo = Eigen::VectorXd::Constant(2 * n, -1);
  id.hi = Eigen::VectorXd::Constant(2 * n, 1);
  FormSpec cot = constant_form("cotangent", PairingKind::cotangent, cotangent_matrix(n));
  std::vector<Eigen::VectorXd> xs;
  wt::Rng rng(113);
  for (int i = 0; i < 10; ++i) {
    Eigen::VectorXd x(2 * n);
    for (int k = 0; k < 2 * n; ++k) x(k) = rng.uniform(-1, 1);
    xs.push_back(x);
  }
  PullbackReport r = pullback_check(id, cot, cot, 1.0, xs, FdOptions{});
  CHECK(r.fitted_c == doctest::Approx(1.0).epsilon(1e-9));  // FD Jacobians: roundoff ~ eps/h
  CHECK(r.max_dev < 1e-9);
  CHECK(r.per_sample.size() == 10);

  // (sigma, tau) -> (sigma + tau, sigma - tau); target Omega (+) -Omega; source pairs sigma with tau through Omega
  Eigen::Matrix2d Om;
  Om << 0, 1, -1, 0;
  ChartedMap de = id;
  de.eval = [](const Eigen::VectorXd& x) {
    Eigen::VectorXd y(4);
    y << x.head(2) + x.tail(2), x.head(2) - x.tail(2);
    return y;
  };
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(4, 4), S = Eigen::MatrixXd::Zero(4, 4);
  T.topLeftCorner(2, 2) = Om;
  T.bottomRightCorner(2, 2) = -Om;
  S.topRightCorner(2, 2) = Om;
  S.bottomLeftCorner(2, 2) = Om;
  PullbackReport d = pullback_check(de, constant_form("src", PairingKind::cotangent, S),
                                    constant_form("tgt", PairingKind::thurston, T), std::nullopt, xs, FdOptions{});
  CHECK(d.fitted_c == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(d.max_dev < 1e-9);
  nlohmann::json j = d.to_json();
  for (const char* key : {"map", "forms", "samples", "h", "fitted_c", "max_dev", "per_sample"}) CHECK(j.contains(key));

  Eigen::VectorXd outside = Eigen::VectorXd::Constant(4, 5.0);
  CHECK_THROWS_AS(pullback_check(id, cot, cot, 1.0, {outside}, FdOptions{}), InputError);
}

TEST_CASE("ads_pairing_decomposition: split cases and the generic identity") {
  wt::Rng rng(127);
  std::vector<double> xL = g2().fn_coords->flat(), xR = xL;
  xR[3] += 0.4;
  xR[5] -= 0.3;
  Holonomy rhoL = holonomy_from_fn(*g2().fn, FNCoordinates::from_flat(xL));
  Holonomy rhoR = holonomy_from_fn(*g2().fn, FNCoordinates::from_flat(xR));
  auto uL = random_cocycles(xL, rng, 2), uR = random_cocycles(xR, rng, 2);
  Cocycle zero = 0.0 * uL[0];
  AdsDecomposition a = ads_pairing_decomposition(rhoL, rhoR, {uL[0], zero}, {uL[1], zero});
  CHECK(std::abs(a.combined - 0.5 * a.left) < 1e-12);
  AdsDecomposition b = ads_pairing_decomposition(rhoL, rhoR, {zero, uR[0]}, {zero, uR[1]});
  CHECK(std::abs(b.combined + 0.5 * b.right) < 1e-12);
  AdsDecomposition c = ads_pairing_decomposition(rhoL, rhoR, {uL[0], uR[0]}, {uL[1], uR[1]});
  CHECK(std::abs(c.defect()) < 1e-12);
  CHECK(std::abs(c.left) > 1e-6);  // non-degenerate test vectors
  // antisymmetry of the tr_{-1} pairing
  double p = goldman_pairing_trm1(rhoL, rhoR, {uL[0], uR[0]}, {uL[1], uR[1]});
  double q = goldman_pairing_trm1(rhoL, rhoR, {uL[1], uR[1]}, {uL[0], uR[0]});
  CHECK(std::abs(p + q) < 1e-10);
}
