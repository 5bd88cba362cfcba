// Central finite differences with Richardson extrapolation.
#pragma once
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace wick {

struct FdOptions {
  double h = 1e-5;
  int richardson = 1;  // levels; 0 = plain central difference
};

// Derivative at t = 0 of f: R -> vector space V (anything supporting
// V + V, V - V and double * V).
template <class F>
auto fd_derivative(F&& f, const FdOptions& o) {
  using V = decltype(f(0.0));
  const int levels = o.richardson;
  std::vector<V> table;
  double h = o.h;
  for (int k = 0; k <= levels; ++k) {
    V d = (1.0 / (2.0 * h)) * (f(h) - f(-h));
    table.push_back(d);
    h *= 0.5;
  }
  // table[k] has error c h_k^2 + ...; eliminate successively.
  double factor = 4.0;
  for (int lev = 1; lev <= levels; ++lev) {
    for (int k = levels; k >= lev; --k) table[k] = (1.0 / (factor - 1.0)) * (factor * table[k] - table[k - 1]);
    factor *= 4.0;
  }
  return table[levels];
}

// Jacobian of F: R^n -> R^m at x, column by column.
Eigen::MatrixXd fd_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& F, const Eigen::VectorXd& x,
                            const FdOptions& o);
Eigen::MatrixXcd fd_jacobian_complex(const std::function<Eigen::VectorXcd(const Eigen::VectorXd&)>& F,
                                     const Eigen::VectorXd& x, const FdOptions& o);

}  // namespace wick
