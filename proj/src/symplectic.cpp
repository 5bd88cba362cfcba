#include "wick/symplectic.hpp"

#include <cmath>
#include <cstdio>

#include "wick/error.hpp"

namespace wick {

// ------------------------------------------------------------- numdiff

Eigen::MatrixXd fd_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& F, const Eigen::VectorXd& x,
                            const FdOptions& o) {
  Eigen::MatrixXd J;
  for (int j = 0; j < x.size(); ++j) {
    auto f = [&](double t) {
      Eigen::VectorXd y = x;
      y(j) += t;
      return Eigen::VectorXd(F(y));
    };
    Eigen::VectorXd col = fd_derivative(f, o);
    if (j == 0) J.resize(col.size(), x.size());
    J.col(j) = col;
  }
  return J;
}

Eigen::MatrixXcd fd_jacobian_complex(const std::function<Eigen::VectorXcd(const Eigen::VectorXd&)>& F,
                                     const Eigen::VectorXd& x, const FdOptions& o) {
  Eigen::MatrixXcd J;
  for (int j = 0; j < x.size(); ++j) {
    auto f = [&](double t) {
      Eigen::VectorXd y = x;
      y(j) += t;
      return Eigen::VectorXcd(F(y));
    };
    Eigen::VectorXcd col = fd_derivative(f, o);
    if (j == 0) J.resize(col.size(), x.size());
    J.col(j) = col;
  }
  return J;
}

// ------------------------------------------------------------- kinds

std::string to_string(PairingKind k) {
  switch (k) {
    case PairingKind::thurston: return "thurston";
    case PairingKind::cotangent: return "cotangent";
    case PairingKind::goldman_tr0: return "goldman-tr0";
    case PairingKind::goldman_trm1: return "goldman-tr-1";
    case PairingKind::goldman_tr1: return "goldman-tr1";
    case PairingKind::goldman_killing_real: return "goldman-killing-real";
  }
  return "?";
}

PairingKind parse_pairing_kind(const std::string& s) {
  for (auto k : {PairingKind::thurston, PairingKind::cotangent, PairingKind::goldman_tr0, PairingKind::goldman_trm1,
                 PairingKind::goldman_tr1, PairingKind::goldman_killing_real})
    if (to_string(k) == s) return k;
  throw InputError("unknown pairing kind '" + s + "'");
}

std::string fmt_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ------------------------------------------------------------- scalar traits

namespace {

template <class S> struct Scalar;
template <> struct Scalar<double> {
  static constexpr int n = 1;
  static void put(double s, double* o) { o[0] = s; }
  static double get(const double* o) { return o[0]; }
};
template <> struct Scalar<cplx> {
  static constexpr int n = 2;
  static void put(cplx s, double* o) { o[0] = s.real(); o[1] = s.imag(); }
  static cplx get(const double* o) { return {o[0], o[1]}; }
};
template <> struct Scalar<Dual> {
  static constexpr int n = 2;
  static void put(Dual s, double* o) { o[0] = s.re; o[1] = s.eps; }
  static Dual get(const double* o) { return {o[0], o[1]}; }
};
template <> struct Scalar<Split> {
  static constexpr int n = 2;
  static void put(Split s, double* o) { o[0] = s.plus; o[1] = s.minus; }
  static Split get(const double* o) { return {o[0], o[1]}; }
};

template <class S>
using MVec = std::vector<Mat2<S>>;

template <class S>
Mat2<S> eval_word(const MVec<S>& gens, const Word& w) {
  Mat2<S> m = Mat2<S>::identity();
  for (int x : w) m = m * (x > 0 ? gens[x - 1] : gens[-x - 1].adj());
  return m;
}

// u(w) by the cocycle rule, with u(g^-1) = -Ad_{g^-1} u(g).
template <class S>
Mat2<S> cocycle_word(const MVec<S>& gens, const MVec<S>& u, const Word& w) {
  Mat2<S> g = Mat2<S>::identity(), val = Mat2<S>::zero();
  for (int x : w) {
    int i = std::abs(x) - 1;
    if (x > 0) {
      val += Ad(g, u[i]);
      g = g * gens[i];
    } else {
      Mat2<S> gi = gens[i].adj();
      g = g * gi;
      val -= Ad(g, u[i]);
    }
  }
  return val;
}

// Cup product of u and v evaluated on the relator's fundamental class
// (Fox-derivative expansion), with coefficient pairing tr(XY) in S.
template <class S>
S cup(const MVec<S>& gens, const Word& rel, const MVec<S>& u, const MVec<S>& v) {
  Mat2<S> g = Mat2<S>::identity(), up = Mat2<S>::zero();
  S total(0);
  for (int x : rel) {
    int i = std::abs(x) - 1;
    if (x > 0) {
      total += (up * Ad(g, v[i])).trace();
      up += Ad(g, u[i]);
      g = g * gens[i];
    } else {
      Mat2<S> gi = gens[i].adj();
      up -= Ad(g * gi, u[i]);
      g = g * gi;
      total -= (up * Ad(g, v[i])).trace();
    }
  }
  return total;
}

template <class S>
Eigen::VectorXd flatten(const MVec<S>& u) {
  const int k = Scalar<S>::n;
  Eigen::VectorXd out(4 * k * u.size());
  for (size_t i = 0; i < u.size(); ++i) {
    const S* e[4] = {&u[i].a, &u[i].b, &u[i].c, &u[i].d};
    for (int j = 0; j < 4; ++j) Scalar<S>::put(*e[j], out.data() + (4 * i + j) * k);
  }
  return out;
}

template <class S>
MVec<S> unflatten(const Eigen::VectorXd& x, size_t n) {
  const int k = Scalar<S>::n;
  MVec<S> u(n);
  for (size_t i = 0; i < n; ++i) {
    S* e[4] = {&u[i].a, &u[i].b, &u[i].c, &u[i].d};
    for (int j = 0; j < 4; ++j) *e[j] = Scalar<S>::get(x.data() + (4 * i + j) * k);
  }
  return u;
}

// Orthogonal projection (flattened Euclidean metric) onto the kernel of
// u -> (u(r))_{r in relators}; returns the size of the correction.
template <class S>
double project(const MVec<S>& gens, const std::vector<Word>& relators, MVec<S>& u) {
  if (relators.empty()) return 0.0;
  const size_t n = gens.size();
  Eigen::VectorXd x = flatten(u);
  const int dim = static_cast<int>(x.size());
  auto relmap = [&](const Eigen::VectorXd& y) {
    MVec<S> w = unflatten<S>(y, n);
    Eigen::VectorXd out(0);
    for (const Word& r : relators) {
      Eigen::VectorXd part = flatten(MVec<S>{cocycle_word(gens, w, r)});
      Eigen::VectorXd joined(out.size() + part.size());
      joined << out, part;
      out = joined;
    }
    return out;
  };
  Eigen::VectorXd r0 = relmap(Eigen::VectorXd::Zero(dim));
  Eigen::MatrixXd L(r0.size(), dim);
  for (int c = 0; c < dim; ++c) L.col(c) = relmap(Eigen::VectorXd::Unit(dim, c));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(L, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  Eigen::VectorXd corr = svd.solve(L * x);
  u = unflatten<S>(x - corr, n);
  return corr.norm();
}

MVec<double> real_mats(const std::vector<CMat>& v) {
  MVec<double> out;
  for (const auto& m : v) out.push_back(real_part(m));
  return out;
}

std::vector<CMat> complex_mats(const MVec<double>& v) {
  std::vector<CMat> out;
  for (const auto& m : v) out.push_back(to_complex(m));
  return out;
}

void check_sizes(const Holonomy& rho, const Cocycle& u) {
  if (u.values.size() != rho.generators.size()) throw InputError("cocycle and holonomy have different generator counts");
}

const Word& single_relator(const Holonomy& rho) {
  if (rho.presentation.relators.size() != 1)
    throw InputError("goldman_pairing needs a closed-surface presentation with a single relator "
                     "(use the Thurston pairing or the trace form on punctured surfaces)");
  return rho.presentation.relators[0];
}

}  // namespace

// ------------------------------------------------------------- cocycles

CMat cocycle_eval(const Holonomy& rho, const Cocycle& u, const Word& w) {
  check_sizes(rho, u);
  return cocycle_word(rho.generators, u.values, w);
}

double cocycle_residual(const Holonomy& rho, const Cocycle& u) {
  double worst = 0;
  for (const Word& r : rho.presentation.relators) worst = std::max(worst, norm(cocycle_eval(rho, u, r)));
  return worst;
}

Cocycle coboundary(const Holonomy& rho, const CMat& X) {
  Cocycle c;
  c.real = rho.real && max_imag(X) == 0.0;
  for (const auto& g : rho.generators) c.values.push_back(X - Ad(g, X));
  return c;
}

Cocycle operator+(const Cocycle& a, const Cocycle& b) {
  if (a.values.size() != b.values.size()) throw InputError("cocycle size mismatch");
  Cocycle c = a;
  c.real = a.real && b.real;
  for (size_t i = 0; i < c.values.size(); ++i) c.values[i] += b.values[i];
  return c;
}

Cocycle operator*(double s, const Cocycle& a) {
  Cocycle c = a;
  for (auto& m : c.values) m = cplx(s) * m;
  return c;
}

Cocycle project_to_cocycles(const Holonomy& rho, const Cocycle& u) {
  check_sizes(rho, u);
  Cocycle out = u;
  for (auto& m : out.values) m = traceless_part(m);
  if (rho.real && u.real) {
    MVec<double> v = real_mats(u.values);
    out.projection_shift = project(real_mats(rho.generators), rho.presentation.relators, v);
    out.values = complex_mats(v);
  } else {
    out.projection_shift = project(rho.generators, rho.presentation.relators, out.values);
  }
  return out;
}

Cocycle cocycle_from_direction(const HolonomyBuilder& builder, const std::vector<double>& x,
                               const std::vector<double>& v, const CocycleOptions& opt) {
  if (x.size() != v.size()) throw InputError("cocycle_from_direction: direction size mismatch");
  Holonomy rho = builder(x);
  const size_t n = rho.generators.size();
  auto f = [&](double t) {
    std::vector<double> y = x;
    for (size_t i = 0; i < y.size(); ++i) y[i] += t * v[i];
    Holonomy r = builder(y);
    Eigen::VectorXd out = flatten(r.generators);
    return out;
  };
  Eigen::VectorXd d = fd_derivative(f, opt.fd);
  std::vector<CMat> dm = unflatten<cplx>(d, n);
  Cocycle u;
  u.real = rho.real;
  u.fd_h = opt.fd.h;
  for (size_t i = 0; i < n; ++i) {
    CMat val = dm[i] * rho.generators[i].adj();
    if (u.real) val = to_complex(real_part(val));
    // cocycles are sl2-valued: the trace is finite-difference error
    u.trace_error = std::max(u.trace_error, std::abs(val.trace()));
    u.values.push_back(traceless_part(val));
  }
  u.relator_residual = cocycle_residual(rho, u);
  if (!std::isfinite(u.relator_residual) || u.relator_residual > opt.residual_gate)
    throw GateError("cocycle_from_direction: cocycle relation residual " + fmt_real(u.relator_residual),
                    u.relator_residual);
  if (opt.project) {
    double res = u.relator_residual, tr = u.trace_error;
    u = project_to_cocycles(rho, u);
    u.relator_residual = res;
    u.trace_error = tr;
  }
  return u;
}

// ------------------------------------------------------------- Goldman

double goldman_pairing(const Holonomy& rho, const Cocycle& u, const Cocycle& v, PairingKind k) {
  const Word& rel = single_relator(rho);
  check_sizes(rho, u);
  check_sizes(rho, v);
  if (k == PairingKind::goldman_killing_real) {
    if (!rho.real) throw InputError("killing-real pairing needs a real holonomy");
    return cup(real_mats(rho.generators), rel, real_mats(u.values), real_mats(v.values));
  }
  if (k == PairingKind::goldman_tr1) return cup(rho.generators, rel, u.values, v.values).imag();
  throw InputError("goldman_pairing: kind " + to_string(k) + " needs the tr0/tr-1 entry points");
}

namespace {
MVec<Dual> dual_gens(const Holonomy& rho0, const Cocycle& tau) {
  MVec<Dual> g;
  for (size_t i = 0; i < rho0.generators.size(); ++i) {
    RMat r = real_part(rho0.generators[i]);
    RMat e = real_part(tau.values[i]) * r;
    g.push_back({{r.a, e.a}, {r.b, e.b}, {r.c, e.c}, {r.d, e.d}});
  }
  return g;
}
MVec<Dual> dual_tangent(const std::pair<Cocycle, Cocycle>& U) {
  MVec<Dual> out;
  for (size_t i = 0; i < U.first.values.size(); ++i) {
    RMat x = real_part(U.first.values[i]), u = real_part(U.second.values[i]);
    out.push_back({{x.a, u.a}, {x.b, u.b}, {x.c, u.c}, {x.d, u.d}});
  }
  return out;
}
MVec<Split> split_pair(const std::vector<CMat>& L, const std::vector<CMat>& R) {
  if (L.size() != R.size()) throw InputError("left/right generator counts differ");
  MVec<Split> out;
  for (size_t i = 0; i < L.size(); ++i) {
    RMat l = real_part(L[i]), r = real_part(R[i]);
    out.push_back({{l.a, r.a}, {l.b, r.b}, {l.c, r.c}, {l.d, r.d}});
  }
  return out;
}
}  // namespace

double goldman_pairing_tr0(const Holonomy& rho0, const Cocycle& tau, const std::pair<Cocycle, Cocycle>& U,
                           const std::pair<Cocycle, Cocycle>& V) {
  const Word& rel = single_relator(rho0);
  Cocycle t = tau;
  for (auto& m : t.values) m = traceless_part(m);
  return cup(dual_gens(rho0, t), rel, dual_tangent(U), dual_tangent(V)).eps;
}

std::pair<Cocycle, Cocycle> project_tr0_tangent(const Holonomy& rho0, const Cocycle& tau,
                                                const std::pair<Cocycle, Cocycle>& U) {
  Cocycle t = tau;
  for (auto& m : t.values) m = traceless_part(m);
  std::pair<Cocycle, Cocycle> V = U;
  for (auto* c : {&V.first, &V.second})
    for (auto& m : c->values) m = traceless_part(m);
  MVec<Dual> g = dual_gens(rho0, t), u = dual_tangent(V);
  project(g, rho0.presentation.relators, u);
  std::pair<Cocycle, Cocycle> out = U;
  for (size_t i = 0; i < u.size(); ++i) {
    out.first.values[i] = CMat{u[i].a.re, u[i].b.re, u[i].c.re, u[i].d.re};
    out.second.values[i] = CMat{u[i].a.eps, u[i].b.eps, u[i].c.eps, u[i].d.eps};
  }
  return out;
}

double goldman_pairing_trm1(const Holonomy& rhoL, const Holonomy& rhoR, const std::pair<Cocycle, Cocycle>& U,
                            const std::pair<Cocycle, Cocycle>& V) {
  if (!rhoL.real || !rhoR.real) throw InputError("tr-1 pairing applies to pairs of real holonomies");
  const Word& rel = single_relator(rhoL);
  Split s = cup(split_pair(rhoL.generators, rhoR.generators), rel, split_pair(U.first.values, U.second.values),
                split_pair(V.first.values, V.second.values));
  return s.j();
}

AdsDecomposition ads_pairing_decomposition(const Holonomy& rhoL, const Holonomy& rhoR,
                                           const std::pair<Cocycle, Cocycle>& U,
                                           const std::pair<Cocycle, Cocycle>& V) {
  AdsDecomposition d;
  d.combined = goldman_pairing_trm1(rhoL, rhoR, U, V);
  d.left = goldman_pairing(rhoL, U.first, V.first, PairingKind::goldman_killing_real);
  d.right = goldman_pairing(rhoR, U.second, V.second, PairingKind::goldman_killing_real);
  return d;
}

// ------------------------------------------------------------- cotangent

double cotangent_form(const std::vector<double>& t1, const std::vector<double>& t2) {
  if (t1.size() != t2.size() || t1.size() % 2 != 0) throw InputError("cotangent_form: dimension mismatch");
  const size_t n = t1.size() / 2;
  double s = 0;
  for (size_t i = 0; i < n; ++i) s += t1[i] * t2[n + i] - t2[i] * t1[n + i];
  return s;
}

Eigen::MatrixXd cotangent_matrix(int n) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    M(i, n + i) = 1;
    M(n + i, i) = -1;
  }
  return M;
}

// ------------------------------------------------------------- pullbacks

FormSpec constant_form(const std::string& name, PairingKind kind, const Eigen::MatrixXd& M) {
  return {name, kind, [M](const Eigen::VectorXd&) { return M; }};
}

PullbackReport pullback_check(const ChartedMap& F, const FormSpec& src, const FormSpec& tgt,
                              std::optional<double> c_expected, const std::vector<Eigen::VectorXd>& samples,
                              const FdOptions& fd) {
  PullbackReport rep;
  rep.map = F.source + " -> " + F.target;
  rep.src = src.name;
  rep.tgt = tgt.name;
  rep.c_expected = c_expected;
  rep.fd = fd;
  std::vector<Eigen::MatrixXd> pulls, srcs;
  double num = 0, den = 0;
  for (const auto& x : samples) {
    if (x.size() != F.n_src) throw InputError("pullback_check: sample dimension mismatch");
    for (int i = 0; i < x.size(); ++i)
      if (x(i) < F.lo(i) || x(i) > F.hi(i)) throw InputError("pullback_check: sample outside the declared domain");
    Eigen::MatrixXd J = fd_jacobian(F.eval, x, fd);
    Eigen::MatrixXd P = J.transpose() * tgt.field(F.eval(x)) * J;
    Eigen::MatrixXd S = src.field(x);
    PullbackSample s;
    s.x = x;
    s.finite = P.allFinite() && S.allFinite();
    double n_loc = 0, d_loc = 0;
    for (int i = 0; i < P.rows(); ++i)
      for (int j = i + 1; j < P.cols(); ++j) {
        n_loc += P(i, j) * S(i, j);
        d_loc += S(i, j) * S(i, j);
      }
    s.c_local = d_loc > 0 ? n_loc / d_loc : 0.0;
    if (s.finite) {
      num += n_loc;
      den += d_loc;
    }
    pulls.push_back(P);
    srcs.push_back(S);
    rep.per_sample.push_back(s);
  }
  rep.fitted_c = den > 0 ? num / den : 0.0;
  const double c = c_expected ? *c_expected : rep.fitted_c;
  double scale = 0;
  for (size_t k = 0; k < samples.size(); ++k) {
    auto& s = rep.per_sample[k];
    if (!s.finite) {
      rep.max_dev = std::numeric_limits<double>::infinity();
      continue;
    }
    for (int i = 0; i < pulls[k].rows(); ++i)
      for (int j = i + 1; j < pulls[k].cols(); ++j) {
        s.max_dev = std::max(s.max_dev, std::abs(pulls[k](i, j) - c * srcs[k](i, j)));
        scale = std::max(scale, std::abs(c * srcs[k](i, j)));
      }
    rep.max_dev = std::max(rep.max_dev, s.max_dev);
  }
  rep.rel_residual = scale > 0 ? rep.max_dev / scale : rep.max_dev;
  return rep;
}

nlohmann::json PullbackReport::to_json() const {
  nlohmann::json j;
  j["map"] = map;
  j["forms"] = {{"source", src}, {"target", tgt}};
  j["samples"] = per_sample.size();
  j["h"] = fmt_real(fd.h);
  j["richardson"] = fd.richardson;
  j["fitted_c"] = fmt_real(fitted_c);
  j["c_expected"] = c_expected ? nlohmann::json(fmt_real(*c_expected)) : nlohmann::json("estimate");
  j["max_dev"] = fmt_real(max_dev);
  j["rel_residual"] = fmt_real(rel_residual);
  j["per_sample"] = nlohmann::json::array();
  for (const auto& s : per_sample) {
    nlohmann::json x = nlohmann::json::array();
    for (int i = 0; i < s.x.size(); ++i) x.push_back(fmt_real(s.x(i)));
    j["per_sample"].push_back({{"x", x}, {"c_local", fmt_real(s.c_local)}, {"max_dev", fmt_real(s.max_dev)}, {"finite", s.finite}});
  }
  return j;
}

FormField torus_trace_form(const std::function<Eigen::Vector3cd(const Eigen::VectorXd&)>& traces, bool imaginary,
                           const FdOptions& fd) {
  return [traces, imaginary, fd](const Eigen::VectorXd& x) {
    auto F = [&](const Eigen::VectorXd& y) { return Eigen::VectorXcd(traces(y)); };
    Eigen::MatrixXcd J = fd_jacobian_complex(F, x, fd);
    Eigen::Vector3cd t = traces(x);
    cplx c = 1.0 / (2.0 * t(2) - t(0) * t(1));
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd W(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        cplx v = c * (J(0, i) * J(1, j) - J(0, j) * J(1, i));
        W(i, j) = imaginary ? v.imag() : v.real();
      }
    return W;
  };
}

}  // namespace wick
