// Trivalent train tracks, weight systems, the Thurston form and the exact
// linear algebra of the double-earthquake identity.
//
// Orientation convention for the (+,-) order at a switch: standing on the
// incoming branch and looking towards the two outgoing ones, out_plus is
// the branch on the left.
#pragma once
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wick/rational.hpp"
#include "wick/surface.hpp"

namespace wick {

struct Switch {
  int in = -1;
  int out_plus = -1;
  int out_minus = -1;
};

struct TrainTrack {
  std::string name;
  std::vector<std::string> edges;
  std::vector<Switch> switches;
  SurfaceSig surface;
  bool maximal = false;
  // Extra linear conditions (e.g. puncture rows), one coefficient per edge.
  QMatrix constraints;

  int edge_index(const std::string& id) const;
  int num_edges() const { return static_cast<int>(edges.size()); }
  // Trivalence, distinct slots, at most two switch incidences per edge,
  // constraint row lengths.
  void validate() const;
  // Switch-relation rows followed by the constraint rows.
  QMatrix relation_matrix() const;
  bool same_as(const TrainTrack& other) const;
};

using TrackPtr = std::shared_ptr<const TrainTrack>;
TrackPtr make_track(TrainTrack t);

struct WeightSystem {
  TrackPtr track;
  QVector weights;
  bool realizable = false;  // non-negative carried measure

  const Rational& operator[](int e) const { return weights.at(e); }
};

WeightSystem validate_weights(const TrackPtr& t, const QVector& a);
WeightSystem validate_weights(const TrackPtr& t, const std::vector<std::pair<std::string, Rational>>& a);
std::vector<WeightSystem> weight_space_basis(const TrackPtr& t);
// Exact membership: coefficients of a in the basis returned above.
QVector basis_coefficients(const std::vector<WeightSystem>& basis, const WeightSystem& a);

Rational thurston_form(const WeightSystem& a, const WeightSystem& b);
// Same sum over real-valued weight vectors on the edges of t.
double thurston_form(const TrainTrack& t, const std::vector<double>& a, const std::vector<double>& b);

std::pair<WeightSystem, WeightSystem> double_earthquake_linear(const WeightSystem& sigma, const WeightSystem& tau);
std::pair<Rational, Rational> de_pullback_identity(const WeightSystem& rho1, const WeightSystem& theta1,
                                                   const WeightSystem& rho2, const WeightSystem& theta2);
WeightSystem carried_cocycle(const TrackPtr& t, const QVector& counts);

WeightSystem operator+(const WeightSystem& a, const WeightSystem& b);
WeightSystem operator-(const WeightSystem& a, const WeightSystem& b);
WeightSystem operator*(const Rational& c, const WeightSystem& a);
bool operator==(const WeightSystem& a, const WeightSystem& b);

TrackPtr track_from_json(const nlohmann::json& j);
nlohmann::json track_to_json(const TrainTrack& t);
nlohmann::json weights_to_json(const WeightSystem& w);
QVector weights_from_json(const nlohmann::json& j);

}  // namespace wick
