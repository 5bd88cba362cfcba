#include "wick/teich.hpp"

#include <cmath>

#include "wick/error.hpp"

namespace wick {

CMat Holonomy::eval(const Word& w) const {
  CMat m = CMat::identity();
  for (int x : w) {
    if (x == 0 || std::abs(x) > static_cast<int>(generators.size()))
      throw InputError("word letter " + std::to_string(x) + " outside the holonomy's generators");
    const CMat& g = generators[std::abs(x) - 1];
    m = m * (x > 0 ? g : g.adj());
  }
  return m;
}

double Holonomy::relator_residual() const {
  double worst = 0;
  for (const Word& r : presentation.relators) {
    CMat m = eval(r);
    worst = std::max(worst, std::min(norm(m - CMat::identity()), norm(m + CMat::identity())));
  }
  return worst;
}

double Holonomy::det_error() const {
  double worst = 0;
  for (const CMat& g : generators) worst = std::max(worst, std::abs(g.det() - cplx(1)));
  return worst;
}

std::vector<cplx> trace_panel(const Holonomy& rho, const std::vector<Word>& panel) {
  std::vector<cplx> out;
  out.reserve(panel.size());
  for (const Word& w : panel) out.push_back(rho.trace(w));
  return out;
}

double panel_distance(const std::vector<cplx>& x, const std::vector<cplx>& y) {
  if (x.size() != y.size()) throw InputError("trace panels of different sizes");
  double worst = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    // sign-projective: compare up to a global sign of each trace
    double d = std::min(std::abs(x[i] - y[i]), std::abs(x[i] + y[i]));
    worst = std::max(worst, d);
  }
  return worst;
}

Holonomy conjugate(const Holonomy& rho, const CMat& g) {
  Holonomy out = rho;
  for (auto& m : out.generators) m = Ad(g, m);
  return out;
}

FNCoordinates FNCoordinates::from_flat(const std::vector<double>& x) {
  if (x.size() % 2 != 0) throw InputError("FN coordinate vector must have even length");
  size_t n = x.size() / 2;
  return {std::vector<double>(x.begin(), x.begin() + n), std::vector<double>(x.begin() + n, x.end())};
}

std::vector<double> FNCoordinates::flat() const {
  std::vector<double> out = lengths;
  out.insert(out.end(), twists.begin(), twists.end());
  return out;
}

TeichPoint make_point(const ShearChartPtr& chart, const ShearCoordinates& c) {
  return TeichPoint{ShearPoint{chart, c}, holonomy_from_shear(*chart, c)};
}

TeichPoint make_point(const FNChartPtr& chart, const FNCoordinates& c) {
  return TeichPoint{FnPoint{chart, c}, holonomy_from_fn(*chart, c)};
}

LengthResult trace_length_of_trace(double tr, double tol) {
  double a = std::abs(tr);
  if (!std::isfinite(a)) throw InputError("trace_length: non-finite trace");
  if (std::abs(a - 2.0) <= tol) return {0.0, true};
  if (a < 2.0) throw InputError("trace_length: elliptic element (|tr| = " + std::to_string(a) + " < 2)");
  return {2.0 * std::acosh(a / 2.0), false};
}

LengthResult trace_length(const Holonomy& rho, const CurveWord& w, double tol) {
  cplx tr = rho.trace(reduce_word(w).word);
  if (std::abs(tr.imag()) > 1e-9 * std::max(1.0, std::abs(tr)))
    throw InputError("trace_length: holonomy trace is not real");
  return trace_length_of_trace(tr.real(), tol);
}

Word resolve_curve(const TeichPoint& m, const CurveRef& c) {
  if (auto w = std::get_if<CurveWord>(&c)) {
    check_word(w->word, m.holonomy.presentation.rank());
    return reduce_word(*w).word;
  }
  const std::string& id = std::get<std::string>(c);
  if (!m.is_shear()) return m.fn().chart->curves.at(m.fn().chart->index_of(id)).word;
  const ShearChart& ch = *m.shear().chart;
  if (ch.kind == ShearChart::Kind::spiral && id == "leaf") return ch.mark_g;
  throw InputError("cannot resolve curve '" + id + "' in chart '" + ch.name + "'");
}

double lamination_length(const TeichPoint& m, const WeightedMulticurve& l) {
  validate_multicurve(l);
  double total = 0;
  for (const auto& comp : l.components)
    total += to_double(comp.weight) * trace_length(m.holonomy, CurveWord{resolve_curve(m, comp.curve), true}).length;
  return total;
}

double cocycle_length(const ShearChart& chart, const ShearCoordinates& sigma, const std::vector<double>& tau) {
  return thurston_form(*chart.track, chart.lift_real(sigma.values), tau);
}

double cocycle_length(const ShearChart& chart, const ShearCoordinates& sigma, const WeightSystem& tau) {
  if (!tau.track || (tau.track != chart.track && !tau.track->same_as(*chart.track)))
    throw InputError("cocycle_length: cocycle is not on the chart's track");
  return cocycle_length(chart, sigma, to_double(tau.weights));
}

}  // namespace wick
