// Mess's AdS correspondence (pairs of earthquakes), the pleated Wick
// rotation, Minkowski translation cocycles and de Sitter / projective data.
#pragma once
#include <optional>
#include <variant>

#include <nlohmann/json.hpp>

#include "wick/flows.hpp"
#include "wick/symplectic.hpp"

namespace wick {

struct AdSPoint {
  TeichPoint left;
  TeichPoint right;  // carries the opposite orientation
};

AdSPoint ads_from_plus_boundary(const TeichPoint& m_plus, const LaminationData& l_plus);
// Hyperbolic-end boundary data (m, l) -> AdS space-time with the same
// pleated-surface data.
AdSPoint wick_pleated(const TeichPoint& m, const LaminationData& l);
std::pair<Holonomy, Holonomy> ads_holonomy_pair(const AdSPoint& a);

struct MinkPoint {
  Holonomy base;
  Cocycle translation;
  nlohmann::json provenance;
};

MinkPoint mink_from_lamination(const TeichPoint& m, const LaminationData& l, const FdOptions& fd = {},
                               double residual_gate = 1e-6);

// Direct "sum of a J_p" cocycle for a single non-separating pants curve
// (a1 or a2 of the genus-2 chart, a of the punctured torus): the only
// generator crossing the curve is its dual b, and J is the unit-speed
// translation generator along the crossed lift, log(rho(b g b^-1)) / length.
Cocycle single_curve_cocycle(const TeichPoint& m, const std::string& curve, double weight);
struct OracleComparison {
  double scale = 0;     // least-squares factor u_fd = scale * u_oracle
  double residual = 0;  // |u_fd - scale * u_oracle|
};
OracleComparison compare_with_oracle(const Cocycle& fd, const Cocycle& oracle);

struct dSPoint {
  std::variant<ComplexShearCoordinates, Holonomy> data;
  bool fuchsian = false;
};
dSPoint ds_from_projective(const ComplexShearCoordinates& p);
dSPoint ds_from_projective(const Holonomy& p);

}  // namespace wick
