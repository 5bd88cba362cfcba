// Earthquakes, double earthquakes, the delta map and grafting (shear-bend /
// imaginary twist) in shear and Fenchel-Nielsen charts.
#pragma once
#include <variant>
#include <vector>

#include "wick/numdiff.hpp"
#include "wick/teich.hpp"

namespace wick {

enum class Side { L, R };

// Lamination data: an (integral or rational) weight system on the chart
// track, a pants-supported multicurve, or a real cocycle given on the chart
// coordinates of a shear chart.
struct RealCocycle {
  std::vector<double> coords;
};
using LaminationData = std::variant<WeightSystem, WeightedMulticurve, RealCocycle>;

struct FlowWarnings {
  bool signed_measure = false;  // t * weight < 0 somewhere, or a signed cocycle
};

ShearCoordinates earthquake_shear(const ShearChart& chart, const ShearCoordinates& sigma, const WeightSystem& tau,
                                  double t, Side side, FlowWarnings* warn = nullptr);
ShearCoordinates earthquake_shear(const ShearChart& chart, const ShearCoordinates& sigma,
                                  const std::vector<double>& tau_coords, double t, Side side);
// Exact variant on rational coordinates.
QVector earthquake_shear_exact(const ShearChart& chart, const QVector& sigma, const WeightSystem& tau,
                               const Rational& t, Side side);

FNCoordinates earthquake_fn(const FNChart& chart, const FNCoordinates& x, const WeightedMulticurve& l, double t,
                            Side side, FlowWarnings* warn = nullptr);

TeichPoint earthquake(const TeichPoint& m, const LaminationData& l, double t, Side side,
                      FlowWarnings* warn = nullptr);
std::pair<TeichPoint, TeichPoint> double_earthquake(const TeichPoint& m, const LaminationData& l);

struct CotangentPoint {
  TeichPoint base;
  std::vector<double> covector;  // in reduced chart coordinates
  // reduced coordinates: shear charts use the complete_basis directions,
  // FN charts (lengths, twists)
  std::vector<std::vector<double>> basis;
  FdOptions fd;
  bool exact = false;
};

CotangentPoint delta(const TeichPoint& m, const LaminationData& l, const FdOptions& fd = {});
// Shear charts: the real cocycle tau with delta(m, tau) = u.
RealCocycle delta_inverse(const TeichPoint& m, const std::vector<double>& u);

// Thurston form on the complete basis of a shear chart, W_ij = Omega(b_i, b_j).
Eigen::MatrixXd thurston_matrix(const ShearChart& chart);

ComplexShearCoordinates graft_shearbend(const ShearChart& chart, const ShearCoordinates& sigma,
                                        const WeightSystem& tau, double t);
// Complex shear-bend coordinates sigma + i beta for an arbitrary real bending cocycle.
ComplexShearCoordinates shear_bend(const ShearCoordinates& sigma, const std::vector<double>& beta_coords);
Holonomy graft_fn(const FNChart& chart, const FNCoordinates& x, const WeightedMulticurve& l, double t);

// Directional difference quotients (F(x + h v) - F(x - h v)) / 2h for a
// sequence of steps, plus the Richardson-combined values.
struct FdConvergence {
  std::vector<double> steps;
  std::vector<Eigen::VectorXd> quotients;
  std::vector<Eigen::VectorXd> richardson;
  double max_richardson_spread = 0;
};
FdConvergence fd_convergence(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& F,
                             const Eigen::VectorXd& x, const Eigen::VectorXd& v, const std::vector<double>& steps);

}  // namespace wick
