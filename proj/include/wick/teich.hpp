// Teichmueller space charts: ideal-triangulation shear charts, spiral shear
// charts around a closed leaf, Fenchel-Nielsen charts, holonomy and lengths.
#pragma once
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wick/mat2.hpp"
#include "wick/surface.hpp"
#include "wick/traintrack.hpp"

namespace wick {

struct Holonomy {
  GroupPresentation presentation;
  std::vector<CMat> generators;
  bool real = true;

  CMat eval(const Word& w) const;
  cplx trace(const Word& w) const { return eval(w).trace(); }
  // max over relators of min(|R - I|, |R + I|); 0 for free presentations.
  double relator_residual() const;
  double det_error() const;
};

std::vector<cplx> trace_panel(const Holonomy& rho, const std::vector<Word>& panel);
// max_i | |tr_i(x)| - |tr_i(y)| | (sign-projective comparison)
double panel_distance(const std::vector<cplx>& x, const std::vector<cplx>& y);
Holonomy conjugate(const Holonomy& rho, const CMat& g);

// ---------------------------------------------------------------- shear charts

struct EdgeGluing {
  std::string name;
  int t0 = 0, s0 = 0;  // side s0 of triangle t0 ...
  int t1 = 0, s1 = 0;  // ... is glued to side s1 of triangle t1 (orientation reversing along the side)
};

struct ShearChart {
  enum class Kind { triangulation, spiral };
  Kind kind = Kind::triangulation;
  std::string name;
  SurfaceSig surface;
  GroupPresentation presentation;
  TrackPtr track;                  // carrying ("dual") track
  std::vector<int> coord_edges;    // track edges carrying the chart coordinates
  QMatrix lift;                    // track weights = lift * coordinates
  QMatrix puncture_rows;           // linear conditions on coordinates
  double kappa_L = 1.0;            // recorded length calibration
  bool kappa_calibrated = false;

  // triangulation data: side k of a triangle joins corner k to corner k+1
  int triangles = 0;
  std::vector<EdgeGluing> gluings;
  std::vector<std::vector<int>> generator_paths;  // sides crossed from triangle 0

  // spiral data: closed leaf g, partner h with [g,h] peripheral
  Word mark_g, mark_h;
  int spiral_orientation = 0;  // -1/+1: side of axis(g) on which the cusp lift c lies

  int ncoords() const { return static_cast<int>(coord_edges.size()); }
  std::vector<std::string> coord_names() const;
  std::vector<double> lift_real(const std::vector<double>& coords) const;
};

using ShearChartPtr = std::shared_ptr<const ShearChart>;

ShearChartPtr make_triangulation_chart(const std::string& name, const SurfaceSig& sig, int triangles,
                                       const std::vector<EdgeGluing>& gluings,
                                       const std::vector<std::vector<int>>& generator_paths);
// Spiral chart for the closed leaf g with partner h. The switch orders are
// derived from the reference holonomy: out_plus is the branch on the left.
ShearChartPtr make_spiral_chart(const std::string& name, const GroupPresentation& pres, const Word& g,
                                const Word& h, const Holonomy& reference);
ShearChartPtr with_kappa(const ShearChartPtr& chart, double kappa_L);

struct ShearCoordinates {
  std::vector<double> values;
  bool complete = false;
};

struct ComplexShearCoordinates {
  std::vector<cplx> values;
};

ShearCoordinates make_shear_coordinates(const ShearChart& chart, std::vector<double> values, double tol = 1e-12);
// Coordinates (restricted to the coordinate edges) of a weight system on the chart track.
std::vector<double> coordinates_of(const ShearChart& chart, const WeightSystem& w);
// Basis of the complete-structure tangent space, expressed on the chart coordinates.
std::vector<std::vector<double>> complete_basis(const ShearChart& chart);
std::vector<WeightSystem> complete_weight_basis(const ShearChart& chart);

Holonomy holonomy_from_shear(const ShearChart& chart, const ShearCoordinates& sigma);
Holonomy holonomy_from_shear(const ShearChart& chart, const ComplexShearCoordinates& sigma);

struct SpiralReading {
  ShearCoordinates coords;        // (g2, p, e) on the spiral chart
  std::vector<double> branches;   // all track branch values as measured
  double switch_residual = 0;     // max violation of the switch relations
  double leaf_length = 0;
};
// Shear cocycle of the spiral lamination read off a holonomy by cross ratios.
SpiralReading shear_from_holonomy(const ShearChart& chart, const Holonomy& rho);

// ---------------------------------------------------------------- FN charts

struct FNCurve {
  std::string name;
  Word word;
  int twist_sign = 1;
};

struct FNChart {
  std::string name;
  SurfaceSig surface;
  GroupPresentation presentation;
  std::vector<FNCurve> curves;  // pants curves
  std::string gluing;           // "one-holed-torus" or "two-tori-along-c"
  int index_of(const std::string& curve) const;
};

using FNChartPtr = std::shared_ptr<const FNChart>;
FNChartPtr make_fn_chart(const std::string& name, const SurfaceSig& sig);

struct FNCoordinates {
  std::vector<double> lengths;
  std::vector<double> twists;
  std::vector<double> flat() const;
  static FNCoordinates from_flat(const std::vector<double>& x);
};

Holonomy holonomy_from_fn(const FNChart& chart, const FNCoordinates& x);
// Twists may be complex (imaginary part = grafting/bending).
Holonomy holonomy_from_fn(const FNChart& chart, const std::vector<double>& lengths,
                          const std::vector<cplx>& twists);

// ---------------------------------------------------------------- points

struct ShearPoint {
  ShearChartPtr chart;
  ShearCoordinates coords;
};
struct FnPoint {
  FNChartPtr chart;
  FNCoordinates coords;
};

struct TeichPoint {
  std::variant<ShearPoint, FnPoint> data;
  Holonomy holonomy;  // computed at construction

  bool is_shear() const { return std::holds_alternative<ShearPoint>(data); }
  const ShearPoint& shear() const { return std::get<ShearPoint>(data); }
  const FnPoint& fn() const { return std::get<FnPoint>(data); }
};

TeichPoint make_point(const ShearChartPtr& chart, const ShearCoordinates& c);
TeichPoint make_point(const FNChartPtr& chart, const FNCoordinates& c);

struct LengthResult {
  double length = 0;
  bool parabolic = false;
};

LengthResult trace_length(const Holonomy& rho, const CurveWord& w, double parabolic_tol = 1e-10);
LengthResult trace_length_of_trace(double trace, double parabolic_tol = 1e-10);
Word resolve_curve(const TeichPoint& m, const CurveRef& c);
double lamination_length(const TeichPoint& m, const WeightedMulticurve& l);
// Omega_Th(sigma_m, tau) with sigma_m lifted to the chart track (uncalibrated).
double cocycle_length(const ShearChart& chart, const ShearCoordinates& sigma, const WeightSystem& tau);
double cocycle_length(const ShearChart& chart, const ShearCoordinates& sigma, const std::vector<double>& tau_weights);

}  // namespace wick
