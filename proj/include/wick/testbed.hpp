// Testbed bundles (JSON): chart definitions, base coordinates, word panel,
// sampling box and recorded calibration constants.
#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wick/teich.hpp"

namespace wick {

struct Testbed {
  std::string name;
  std::string path;
  SurfaceSig surface;
  GroupPresentation presentation;
  TrackPtr track;  // standalone track (may be null)
  ShearChartPtr shear;
  std::optional<ShearCoordinates> shear_coords;
  std::vector<ShearChartPtr> spiral;  // built against the base shear holonomy
  FNChartPtr fn;
  std::optional<FNCoordinates> fn_coords;
  std::vector<Word> panel;
  std::map<std::string, double> calibration;
  nlohmann::json box;
  nlohmann::json raw;

  double calibrated(const std::string& key) const;
  TeichPoint shear_point() const;
  TeichPoint fn_point() const;
};

Testbed load_testbed(const std::string& path);
Testbed parse_testbed(const nlohmann::json& j, const std::string& path = "<memory>");
std::string default_testbed_dir();
nlohmann::json holonomy_to_json(const Holonomy& rho);
double parse_real(const nlohmann::json& v);

}  // namespace wick
