// Acceptance suite: runs every named check with the default seed and prints one
// PASS/FAIL line per criterion. Exit status is nonzero if any criterion fails.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "wick/checks.hpp"
#include "wick/error.hpp"

namespace {

struct Criterion {
  int number;
  std::string check;
  std::string description;
  double max_seconds;  // <= 0: no runtime bound
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "de-identity", "double-earthquake factor 2, exact on 3 tracks x 100 rational quadruples", 1.0},
      {2, "de-factor-2", "pullback of the double-earthquake map is 2x the split Thurston form", 60.0},
      {3, "length-consistency", "cocycle length = trace length after one constant kappa_L", 0},
      {4, "flow-property", "earthquake flow property (shear exact, FN panels 1e-9)", 0},
      {5, "mess-round-trip", "E_L(m_R, 2l) reproduces m_L within 1e-8", 0},
      {6, "mink-cocycles", "Minkowski cocycles: residual, additivity, stable oracle scale", 0},
      {7, "goldman-gates", "Goldman pairing: antisymmetry, coboundaries, tr_-1 identity", 0},
      {8, "grafting-symplectic", "grafting chart map fits one constant kappa_Gr", 0},
      {9, "wick-composition", "AdS pipeline constant = composition of criteria 2 and 8", 0},
      {10, "construction-health", "relator residuals, cusp parabolicity, determinism", 0},
  };
  return list;
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  wick::CheckOptions opt;
  opt.seed = 7;
  int failures = 0;
  for (const Criterion& c : criteria()) {
    bool pass = false;
    std::string note;
    double seconds = 0;
    try {
      auto t0 = clock::now();
      wick::CheckReport rep = wick::run_check(c.check, opt);
      seconds = std::chrono::duration<double>(clock::now() - t0).count();
      pass = rep.pass;
      if (c.max_seconds > 0 && seconds >= c.max_seconds) {
        pass = false;
        note = " [runtime bound " + std::to_string(c.max_seconds) + " s exceeded]";
      }
      if (c.check == "construction-health") {
        // determinism across independent runs with identical inputs
        bool same = wick::run_check(c.check, opt).to_json().dump() == rep.to_json().dump();
        if (!same) note += " [reports differ between identical runs]";
        pass = pass && same;
      }
      if (!rep.pass) note += " " + rep.summary();
    } catch (const std::exception& e) {
      note = std::string(" [error: ") + e.what() + "]";
    }
    std::printf("%s criterion %2d  %-20s %-72s (%.3f s)%s\n", pass ? "PASS" : "FAIL", c.number, c.check.c_str(),
                c.description.c_str(), seconds, note.c_str());
    if (!pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria().size()) - failures, criteria().size());
  return failures == 0 ? 0 : 1;
}
