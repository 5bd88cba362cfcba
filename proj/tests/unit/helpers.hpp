#pragma once
// Shared fixtures for the unit tests: bundled testbeds and a reproducible random source.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "wick/rational.hpp"
#include "wick/testbed.hpp"
#include "wick/traintrack.hpp"

namespace wt {

inline const wick::Testbed& testbed(const std::string& name) {
  static std::map<std::string, wick::Testbed> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, wick::load_testbed(wick::default_testbed_dir() + "/" + name + ".json")).first;
  return it->second;
}

// Deterministic draws (raw mt19937_64 output mapped by hand, independent of the standard library's distributions).
struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(g() >> 11) * 0x1.0p-53; }
  long integer(long lo, long hi) { return lo + static_cast<long>(g() % static_cast<std::uint64_t>(hi - lo + 1)); }
  wick::Rational rational(long maxnum = 20, long maxden = 9) {
    wick::Rational q(integer(-maxnum, maxnum), integer(1, maxden));
    q.canonicalize();
    return q;
  }
};

// Random rational element of the weight space of a track: a rational combination of its basis.
inline wick::WeightSystem random_weights(const wick::TrackPtr& t, Rng& rng) {
  auto basis = wick::weight_space_basis(t);
  wick::WeightSystem w = wick::validate_weights(t, wick::QVector(t->num_edges(), 0));
  for (const auto& b : basis) w = w + rng.rational() * b;
  return w;
}

inline std::vector<double> random_vector(Rng& rng, size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

}  // namespace wt
