// Symplectic pairings: Thurston, cotangent (Liouville) and Goldman cup
// products with the tr_Lambda coefficient pairings, plus the finite-difference
// pullback verifier.
#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "wick/numdiff.hpp"
#include "wick/teich.hpp"

namespace wick {

enum class PairingKind { thurston, cotangent, goldman_tr0, goldman_trm1, goldman_tr1, goldman_killing_real };
std::string to_string(PairingKind k);
PairingKind parse_pairing_kind(const std::string& s);

// Group 1-cocycle with values in sl(2) (real or complex), u(g h) = u(g) + Ad_g u(h).
struct Cocycle {
  std::vector<CMat> values;
  bool real = true;
  double fd_h = 0;               // step used (0: exact/analytic)
  double relator_residual = 0;   // |u(relator)| before projection
  double trace_error = 0;
  double projection_shift = 0;   // size of the correction onto Z^1
};

CMat cocycle_eval(const Holonomy& rho, const Cocycle& u, const Word& w);
double cocycle_residual(const Holonomy& rho, const Cocycle& u);
Cocycle coboundary(const Holonomy& rho, const CMat& X);
Cocycle operator+(const Cocycle& a, const Cocycle& b);
Cocycle operator*(double s, const Cocycle& a);
// Orthogonal projection onto the cocycle space Z^1 (kernel of u -> u(relators)).
Cocycle project_to_cocycles(const Holonomy& rho, const Cocycle& u);

using HolonomyBuilder = std::function<Holonomy(const std::vector<double>&)>;

struct CocycleOptions {
  FdOptions fd;
  bool project = true;
  double residual_gate = 1e-6;
};

Cocycle cocycle_from_direction(const HolonomyBuilder& builder, const std::vector<double>& x,
                               const std::vector<double>& v, const CocycleOptions& opt = {});

// killing_real: sum of tr(XY) terms (trace form) on real holonomies;
// goldman_tr1: Im tr(zw) on complex holonomies.
double goldman_pairing(const Holonomy& rho, const Cocycle& u, const Cocycle& v, PairingKind k);
// tr_0 on Minkowski holonomies (I + e tau) rho0: tangents (x, u), (y, v);
// value tr(xv) + tr(yu) summed by the cup product over dual numbers.
double goldman_pairing_tr0(const Holonomy& rho0, const Cocycle& tau, const std::pair<Cocycle, Cocycle>& U,
                           const std::pair<Cocycle, Cocycle>& V);
// tr_-1 on AdS holonomies (rho_L, rho_R): 1/2 tr(x+ y+) - 1/2 tr(x- y-) over split-complex numbers.
double goldman_pairing_trm1(const Holonomy& rhoL, const Holonomy& rhoR, const std::pair<Cocycle, Cocycle>& U,
                            const std::pair<Cocycle, Cocycle>& V);
// Projection onto cocycles of the Minkowski holonomy (I + e tau) rho0 for a
// tangent pair (x, u).
std::pair<Cocycle, Cocycle> project_tr0_tangent(const Holonomy& rho0, const Cocycle& tau,
                                                const std::pair<Cocycle, Cocycle>& U);

struct AdsDecomposition {
  double combined = 0, left = 0, right = 0;
  double defect() const { return combined - 0.5 * left + 0.5 * right; }
};
AdsDecomposition ads_pairing_decomposition(const Holonomy& rhoL, const Holonomy& rhoR,
                                           const std::pair<Cocycle, Cocycle>& U, const std::pair<Cocycle, Cocycle>& V);

// sum_i (p1_i q2_i - p2_i q1_i) for tangents (p, q) stored as [p..., q...].
double cotangent_form(const std::vector<double>& t1, const std::vector<double>& t2);
Eigen::MatrixXd cotangent_matrix(int n);  // Darboux matrix in (p, q) coordinates

// ------------------------------------------------------------- pullbacks

using FormField = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

struct FormSpec {
  std::string name;
  PairingKind kind;
  FormField field;
};
FormSpec constant_form(const std::string& name, PairingKind kind, const Eigen::MatrixXd& M);

struct ChartedMap {
  std::string source, target;
  int n_src = 0, n_tgt = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> eval;
  Eigen::VectorXd lo, hi;  // declared box domain
};

struct PullbackSample {
  Eigen::VectorXd x;
  double c_local = 0;   // best constant at this sample
  double max_dev = 0;   // max |pullback - c src| over planes (fit or expected c)
  bool finite = true;
};

struct PullbackReport {
  std::string map, src, tgt;
  std::optional<double> c_expected;
  double fitted_c = 0;
  double max_dev = 0;        // absolute, against fitted or expected c
  double rel_residual = 0;   // max_dev / max |c src|
  FdOptions fd;
  std::vector<PullbackSample> per_sample;
  nlohmann::json to_json() const;
};

PullbackReport pullback_check(const ChartedMap& F, const FormSpec& src, const FormSpec& tgt,
                              std::optional<double> c_expected, const std::vector<Eigen::VectorXd>& samples,
                              const FdOptions& fd);

// Goldman form of the relative character variety of the punctured torus in
// trace coordinates x = tr A, y = tr B, z = tr AB: dx ^ dy / (2z - xy).
// The real part is used for real holonomies, the imaginary part (tr_1) for
// complex ones. `traces` returns (x, y, z) at chart coordinates.
FormField torus_trace_form(const std::function<Eigen::Vector3cd(const Eigen::VectorXd&)>& traces, bool imaginary,
                           const FdOptions& fd);

std::string fmt_real(double x);  // >= 17 significant digits

}  // namespace wick
