// Error categories shared by all modules. The CLI maps InputError to exit
// status 2 and GateError (a numerical invariant that failed) to exit status 1.
#pragma once
#include <stdexcept>
#include <string>

namespace wick {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GateError : std::runtime_error {
  double residual;
  GateError(const std::string& what, double r) : std::runtime_error(what), residual(r) {}
};

}  // namespace wick
