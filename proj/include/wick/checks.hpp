// Named acceptance checks. Each check is deterministic given (testbeds, seed,
// options) and returns a JSON report with one entry per numerical gate.
#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace wick {

struct CheckOptions {
  std::string testbed;      // primary testbed file (empty: the check's default)
  std::string testbed_dir;  // directory holding the other bundled testbeds (empty: default)
  std::uint64_t seed = 7;
  double h = 1e-5;
  int richardson = 1;
  std::optional<double> tol;  // overrides the check's primary tolerance
  int trials = 0;             // 0: the check's default trial/sample count
};

struct Gate {
  std::string name;
  double value = 0;
  double tol = 0;
  bool pass = false;
};

struct CheckReport {
  std::string name;
  bool pass = false;
  std::vector<Gate> gates;
  nlohmann::json details;
  nlohmann::json to_json() const;
  std::string summary() const;  // one line
};

const std::vector<std::string>& check_names();
// Throws InputError for an unknown name or unreadable testbed.
CheckReport run_check(const std::string& name, const CheckOptions& opt);

}  // namespace wick
