#include "wick/lorentz.hpp"

#include <cmath>

#include "wick/error.hpp"

namespace wick {

AdSPoint ads_from_plus_boundary(const TeichPoint& m_plus, const LaminationData& l_plus) {
  auto [left, right] = double_earthquake(m_plus, l_plus);
  return {std::move(left), std::move(right)};
}

AdSPoint wick_pleated(const TeichPoint& m, const LaminationData& l) { return ads_from_plus_boundary(m, l); }

std::pair<Holonomy, Holonomy> ads_holonomy_pair(const AdSPoint& a) { return {a.left.holonomy, a.right.holonomy}; }

MinkPoint mink_from_lamination(const TeichPoint& m, const LaminationData& l, const FdOptions& fd,
                               double residual_gate) {
  HolonomyBuilder builder = [&](const std::vector<double>& t) { return earthquake(m, l, t[0], Side::L).holonomy; };
  CocycleOptions opt{fd, false, residual_gate};
  MinkPoint p;
  p.base = m.holonomy;
  p.translation = cocycle_from_direction(builder, {0.0}, {1.0}, opt);
  p.provenance = {{"source", m.is_shear() ? m.shear().chart->name : m.fn().chart->name},
                  {"h", fmt_real(fd.h)},
                  {"richardson", fd.richardson},
                  {"relator_residual", fmt_real(p.translation.relator_residual)},
                  {"trace_error", fmt_real(p.translation.trace_error)}};
  return p;
}

Cocycle single_curve_cocycle(const TeichPoint& m, const std::string& curve, double weight) {
  const Holonomy& rho = m.holonomy;
  Word g, b;
  if (m.is_shear()) throw InputError("single_curve_cocycle needs an FN chart point");
  const auto& chart = *m.fn().chart;
  if (curve == "a1" || curve == "a") {
    g = {1};
    b = {2};
  } else if (curve == "a2" && chart.curves.size() == 3) {
    g = {3};
    b = {4};
  } else {
    throw InputError("single-curve oracle supports the non-separating pants curves a1, a2 (or a)");
  }
  int sign = chart.curves[chart.index_of(curve)].twist_sign;
  CMat conj = rho.eval(concat(concat(b, g), inverse(b)));
  double len = 2.0 * std::acosh(std::abs(conj.trace().real()) / 2.0);
  CMat J = cplx(1.0 / len) * matrix_log_sl2(conj);
  Cocycle u;
  u.real = rho.real;
  u.values.assign(rho.generators.size(), CMat::zero());
  u.values[b[0] - 1] = cplx(sign * weight) * J;
  return u;
}

OracleComparison compare_with_oracle(const Cocycle& fd, const Cocycle& oracle) {
  if (fd.values.size() != oracle.values.size()) throw InputError("cocycle size mismatch");
  double num = 0, den = 0;
  auto dot = [](const CMat& x, const CMat& y) {
    return (std::conj(x.a) * y.a + std::conj(x.b) * y.b + std::conj(x.c) * y.c + std::conj(x.d) * y.d).real();
  };
  for (size_t i = 0; i < fd.values.size(); ++i) {
    num += dot(oracle.values[i], fd.values[i]);
    den += dot(oracle.values[i], oracle.values[i]);
  }
  OracleComparison out;
  if (den == 0) throw InputError("oracle cocycle is zero");
  out.scale = num / den;
  for (size_t i = 0; i < fd.values.size(); ++i)
    out.residual = std::max(out.residual, norm(fd.values[i] - cplx(out.scale) * oracle.values[i]));
  return out;
}

dSPoint ds_from_projective(const ComplexShearCoordinates& p) {
  bool fuchsian = true;
  for (const auto& z : p.values) fuchsian = fuchsian && z.imag() == 0.0;
  return {p, fuchsian};
}

dSPoint ds_from_projective(const Holonomy& p) {
  bool fuchsian = p.real;
  if (!fuchsian) {
    fuchsian = true;
    for (const auto& g : p.generators) fuchsian = fuchsian && max_imag(g) == 0.0;
  }
  return {p, fuchsian};
}

}  // namespace wick
