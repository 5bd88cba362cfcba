#include "wick/flows.hpp"

#include <cmath>

#include "wick/error.hpp"

namespace wick {

namespace {
double side_sign(Side s) { return s == Side::L ? 1.0 : -1.0; }

bool has_negative(const QVector& w) {
  for (const auto& q : w)
    if (q < 0) return true;
  return false;
}
}  // namespace

ShearCoordinates earthquake_shear(const ShearChart& chart, const ShearCoordinates& sigma,
                                  const std::vector<double>& tau, double t, Side side) {
  if (tau.size() != sigma.values.size()) throw InputError("earthquake_shear: cocycle/coordinate size mismatch");
  std::vector<double> out = sigma.values;
  const double f = side_sign(side) * t;
  for (size_t i = 0; i < out.size(); ++i) out[i] += f * tau[i];
  return make_shear_coordinates(chart, std::move(out), 1e-9);
}

ShearCoordinates earthquake_shear(const ShearChart& chart, const ShearCoordinates& sigma, const WeightSystem& tau,
                                  double t, Side side, FlowWarnings* warn) {
  std::vector<double> c = coordinates_of(chart, tau);
  if (warn && (has_negative(tau.weights) || side_sign(side) * t < 0)) warn->signed_measure = true;
  return earthquake_shear(chart, sigma, c, t, side);
}

QVector earthquake_shear_exact(const ShearChart& chart, const QVector& sigma, const WeightSystem& tau,
                               const Rational& t, Side side) {
  if (static_cast<int>(sigma.size()) != chart.ncoords()) throw InputError("earthquake_shear_exact: size mismatch");
  if (tau.track != chart.track && !tau.track->same_as(*chart.track))
    throw InputError("earthquake_shear_exact: cocycle is not on the chart's track");
  QVector out = sigma;
  Rational f = side == Side::L ? t : Rational(-t);
  for (int i = 0; i < chart.ncoords(); ++i) out[i] += f * tau.weights[chart.coord_edges[i]];
  return out;
}

FNCoordinates earthquake_fn(const FNChart& chart, const FNCoordinates& x, const WeightedMulticurve& l, double t,
                            Side side, FlowWarnings* warn) {
  validate_multicurve(l);
  FNCoordinates out = x;
  for (const auto& comp : l.components) {
    auto id = std::get_if<std::string>(&comp.curve);
    if (!id) throw InputError("earthquake_fn: lamination must be pants-supported (named pants curves)");
    int i = chart.index_of(*id);
    out.twists[i] += side_sign(side) * t * to_double(comp.weight);
  }
  if (warn && side_sign(side) * t < 0) warn->signed_measure = true;
  return out;
}

static std::vector<double> shear_tau(const ShearChart& chart, const LaminationData& l) {
  if (auto w = std::get_if<WeightSystem>(&l)) return coordinates_of(chart, *w);
  if (auto r = std::get_if<RealCocycle>(&l)) {
    if (static_cast<int>(r->coords.size()) != chart.ncoords()) throw InputError("cocycle size mismatch");
    return r->coords;
  }
  throw InputError("shear charts take weight systems or real cocycles, not multicurves");
}

TeichPoint earthquake(const TeichPoint& m, const LaminationData& l, double t, Side side, FlowWarnings* warn) {
  if (m.is_shear()) {
    const auto& sp = m.shear();
    if (auto w = std::get_if<WeightSystem>(&l)) return make_point(sp.chart, earthquake_shear(*sp.chart, sp.coords, *w, t, side, warn));
    if (warn) warn->signed_measure = true;
    return make_point(sp.chart, earthquake_shear(*sp.chart, sp.coords, shear_tau(*sp.chart, l), t, side));
  }
  auto mc = std::get_if<WeightedMulticurve>(&l);
  if (!mc) throw InputError("FN charts take pants-supported multicurves");
  return make_point(m.fn().chart, earthquake_fn(*m.fn().chart, m.fn().coords, *mc, t, side, warn));
}

std::pair<TeichPoint, TeichPoint> double_earthquake(const TeichPoint& m, const LaminationData& l) {
  return {earthquake(m, l, 1.0, Side::L), earthquake(m, l, 1.0, Side::R)};
}

Eigen::MatrixXd thurston_matrix(const ShearChart& chart) {
  auto basis = complete_weight_basis(chart);
  const int n = static_cast<int>(basis.size());
  Eigen::MatrixXd W(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) W(i, j) = thurston_form(basis[i], basis[j]).get_d();
  return W;
}

CotangentPoint delta(const TeichPoint& m, const LaminationData& l, const FdOptions& fd) {
  CotangentPoint out{m, {}, {}, fd, false};
  if (m.is_shear()) {
    const ShearChart& ch = *m.shear().chart;
    std::vector<double> tau = ch.lift_real(shear_tau(ch, l));
    out.basis = complete_basis(ch);
    for (const auto& b : out.basis) out.covector.push_back(ch.kappa_L * thurston_form(*ch.track, ch.lift_real(b), tau));
    out.exact = true;
    return out;
  }
  auto mc = std::get_if<WeightedMulticurve>(&l);
  if (!mc) throw InputError("delta in FN charts needs a multicurve");
  const auto& fp = m.fn();
  std::vector<double> x0 = fp.coords.flat();
  const size_t n = x0.size();
  for (size_t i = 0; i < n; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1;
    out.basis.push_back(e);
    auto f = [&](double t) {
      std::vector<double> x = x0;
      x[i] += t;
      Eigen::VectorXd v(1);
      v(0) = lamination_length(make_point(fp.chart, FNCoordinates::from_flat(x)), *mc);
      return v;
    };
    double d = fd_derivative(f, fd)(0);
    if (!std::isfinite(d)) throw GateError("delta: non-finite finite-difference derivative", d);
    out.covector.push_back(d);
  }
  return out;
}

RealCocycle delta_inverse(const TeichPoint& m, const std::vector<double>& u) {
  if (!m.is_shear()) throw InputError("delta_inverse is implemented for shear charts");
  const ShearChart& ch = *m.shear().chart;
  Eigen::MatrixXd W = ch.kappa_L * thurston_matrix(ch);
  if (static_cast<int>(u.size()) != W.rows()) throw InputError("delta_inverse: covector dimension mismatch");
  Eigen::VectorXd c = W.fullPivLu().solve(Eigen::Map<const Eigen::VectorXd>(u.data(), u.size()));
  auto basis = complete_basis(ch);
  RealCocycle out{std::vector<double>(ch.ncoords(), 0.0)};
  for (size_t j = 0; j < basis.size(); ++j)
    for (int k = 0; k < ch.ncoords(); ++k) out.coords[k] += c(j) * basis[j][k];
  return out;
}

ComplexShearCoordinates shear_bend(const ShearCoordinates& sigma, const std::vector<double>& beta) {
  if (beta.size() != sigma.values.size()) throw InputError("shear_bend: size mismatch");
  ComplexShearCoordinates out;
  for (size_t i = 0; i < beta.size(); ++i) out.values.emplace_back(sigma.values[i], beta[i]);
  return out;
}

ComplexShearCoordinates graft_shearbend(const ShearChart& chart, const ShearCoordinates& sigma,
                                        const WeightSystem& tau, double t) {
  if (has_negative(tau.weights)) throw InputError("graft_shearbend: bending measure has negative entries");
  std::vector<double> c = coordinates_of(chart, tau);
  for (double& v : c) v *= t;
  return shear_bend(sigma, c);
}

Holonomy graft_fn(const FNChart& chart, const FNCoordinates& x, const WeightedMulticurve& l, double t) {
  validate_multicurve(l);
  std::vector<cplx> tw(x.twists.begin(), x.twists.end());
  for (const auto& comp : l.components) {
    auto id = std::get_if<std::string>(&comp.curve);
    if (!id) throw InputError("graft_fn: lamination must be pants-supported");
    tw[chart.index_of(*id)] += cplx(0, t * to_double(comp.weight));
  }
  return holonomy_from_fn(chart, x.lengths, tw);
}

FdConvergence fd_convergence(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& F,
                             const Eigen::VectorXd& x, const Eigen::VectorXd& v, const std::vector<double>& steps) {
  FdConvergence out;
  out.steps = steps;
  for (double h : steps) out.quotients.push_back((F(x + h * v) - F(x - h * v)) / (2 * h));
  for (size_t k = 1; k < steps.size(); ++k) {
    double r = steps[k - 1] / steps[k];
    out.richardson.push_back((r * r * out.quotients[k] - out.quotients[k - 1]) / (r * r - 1));
  }
  for (size_t k = 1; k < out.richardson.size(); ++k)
    out.max_richardson_spread =
        std::max(out.max_richardson_spread, (out.richardson[k] - out.richardson[k - 1]).cwiseAbs().maxCoeff());
  return out;
}

}  // namespace wick
