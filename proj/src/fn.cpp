// Fenchel-Nielsen charts.
//
// One-holed torus with boundary length lc (lc = 0: cusp): A = diag(e^{la/2},
// e^{-la/2}), B = B0 T(tw) with B0 = [[p, q], [q, p]], q^2 = cosh^2(lc/4) /
// sinh^2(la/2), p^2 = 1 + q^2, T(s) = diag(e^{s/2}, e^{-s/2}). Then
// tr [A, B] = -2 cosh(lc/2), and tw = 0 is the symmetric (zero-twist) gluing.
//
// Genus 2: two such tori glued along c = [a1, b1]. The second torus is
// conjugated so that its commutator becomes C1^-1, then translated along
// axis(C1) by the c-twist, measured between the feet of the perpendiculars
// from axis(a1) and axis(a2) to axis(c). The result is expressed in a frame
// centred on axis(c) between those feet.
#include <cmath>
#include <cstdio>

#include "wick/error.hpp"
#include "wick/teich.hpp"

namespace wick {

namespace {

CMat translation(cplx s) { return {std::exp(0.5 * s), 0.0, 0.0, std::exp(-0.5 * s)}; }

CMat comm(const CMat& x, const CMat& y) { return x * y * x.adj() * y.adj(); }

// Unimodular frame whose columns are eigenvectors of the hyperbolic (or
// loxodromic) element m, the expanding eigenvalue first. Holomorphic in m.
CMat eigenframe(const CMat& m) {
  const cplx tr = m.trace();
  cplx disc = std::sqrt(tr * tr - 4.0);
  if (std::abs(tr + disc) < std::abs(tr - disc)) disc = -disc;
  const cplx l1 = 0.5 * (tr + disc), l2 = 1.0 / l1;
  auto eigvec = [&](cplx l) {
    CP1 u{m.b, l - m.a}, v{l - m.d, m.c};
    return std::abs(u[0]) + std::abs(u[1]) >= std::abs(v[0]) + std::abs(v[1]) ? u : v;
  };
  CP1 p = eigvec(l1), q = eigvec(l2);
  // unit columns: the frame scale cancels in the final holonomy, balancing
  // it only reduces rounding
  for (CP1* v : {&p, &q}) {
    const double n = std::sqrt(std::norm((*v)[0]) + std::norm((*v)[1]));
    *v = {(*v)[0] / n, (*v)[1] / n};
  }
  cplx det = p[0] * q[1] - q[0] * p[1];
  if (det.real() < 0) {
    q = {-q[0], -q[1]};
    det = -det;
  }
  const cplx s = 1.0 / std::sqrt(det);
  return CMat{s * p[0], s * q[0], s * p[1], s * q[1]};
}

// Position (log height) of the foot of the perpendicular from axis(y) to the
// axis 0-oo: half the log of the product -b/c of the fixed points of y.
cplx foot(const CMat& y) { return 0.5 * std::log(-y.b / y.c); }

void torus(double la, cplx tw, double lc, CMat& A, CMat& B) {
  if (!(la > 0)) throw InputError("FN length must be positive");
  if (!(lc >= 0)) throw InputError("boundary length must be non-negative");
  double ch = std::cosh(lc / 4.0), sh = std::sinh(la / 2.0);
  double qr = ch * ch / (sh * sh);
  double q = std::sqrt(qr), p = std::sqrt(1.0 + qr);
  A = translation(la);
  B = CMat{p, q, q, p} * translation(tw);
}

}  // namespace

Holonomy fn_torus_holonomy(const GroupPresentation& pres, double la, cplx twist, double lc) {
  Holonomy h;
  h.presentation = pres;
  h.real = twist.imag() == 0.0;
  CMat A, B;
  torus(la, twist, lc, A, B);
  h.generators = {A, B};
  return h;
}

int FNChart::index_of(const std::string& curve) const {
  for (size_t i = 0; i < curves.size(); ++i)
    if (curves[i].name == curve) return static_cast<int>(i);
  throw InputError("FN chart '" + name + "' has no pants curve '" + curve + "'");
}

FNChartPtr make_fn_chart(const std::string& name, const SurfaceSig& sig) {
  auto ch = std::make_shared<FNChart>();
  ch->name = name;
  ch->surface = sig;
  ch->presentation = build_presentation(sig);
  if (sig == SurfaceSig{2, 0}) {
    ch->gluing = "two-tori-along-c";
    ch->curves = {{"a1", {1}, 1}, {"a2", {3}, 1}, {"c", commutator({1}, {2}), 1}};
  } else if (sig == SurfaceSig{1, 1}) {
    ch->gluing = "one-holed-torus";
    ch->curves = {{"a", {1}, 1}};
  } else {
    throw InputError("FN charts are implemented for (g,n) = (2,0) and (1,1)");
  }
  return ch;
}

Holonomy holonomy_from_fn(const FNChart& chart, const std::vector<double>& l, const std::vector<cplx>& t) {
  const size_t n = chart.curves.size();
  if (l.size() != n || t.size() != n) throw InputError("FN chart '" + chart.name + "' expects " + std::to_string(n) + " lengths and twists");
  for (double x : l)
    if (!(x > 0) || !std::isfinite(x)) throw InputError("FN lengths must be positive and finite");
  for (cplx x : t)
    if (!std::isfinite(std::abs(x))) throw InputError("FN twists must be finite");
  std::vector<cplx> tw(n);
  for (size_t i = 0; i < n; ++i) tw[i] = double(chart.curves[i].twist_sign) * t[i];
  bool real = true;
  for (cplx x : t) real = real && x.imag() == 0.0;
  if (chart.gluing == "one-holed-torus") {
    Holonomy h = fn_torus_holonomy(chart.presentation, l[0], tw[0], 0.0);
    h.real = real;
    return h;
  }
  CMat A1, B1, A2, B2;
  torus(l[0], tw[0], l[2], A1, B1);
  torus(l[1], tw[1], l[2], A2, B2);
  // Work in the frame of axis(c) (0-oo). V1 conjugates C1 to diagonal; S V2^-1
  // carries C2 onto C1^-1 there (S swaps the expanding and contracting
  // eigenvectors). The c-twist translates the second torus along 0-oo so that
  // the foot of axis(a2) sits tw[2] beyond the foot of axis(a1).
  const CMat V1i = eigenframe(comm(A1, B1)).adj();
  const CMat N = CMat{0.0, 1.0, -1.0, 0.0} * eigenframe(comm(A2, B2)).adj();
  const CMat A1f = Ad(V1i, A1), B1f = Ad(V1i, B1), A2f = Ad(N, A2), B2f = Ad(N, B2);
  const cplx f1 = foot(A1f), f2 = foot(A2f);
  const cplx shift = tw[2] - (f2 - f1);
  // Balanced frame: base point on axis(c) midway between the two feet. The
  // frame is explicit in the coordinates (derivatives stay smooth) and keeps
  // generator norms, hence rounding in long words, small.
  const cplx mid = f1 + 0.5 * tw[2];
  const CMat P1 = translation(-mid), P2 = translation(shift - mid);
  Holonomy h;
  h.presentation = chart.presentation;
  h.real = real;
  h.generators = {Ad(P1, A1f), Ad(P1, B1f), Ad(P2, A2f), Ad(P2, B2f)};
  if (real)
    for (auto& g : h.generators) g = to_complex(real_part(g));
  double res = h.relator_residual();
  if (res > 1e-9) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "FN construction: relator residual %.3e exceeds 1e-9", res);
    throw GateError(buf, res);
  }
  return h;
}

Holonomy holonomy_from_fn(const FNChart& chart, const FNCoordinates& x) {
  std::vector<cplx> t(x.twists.begin(), x.twists.end());
  return holonomy_from_fn(chart, x.lengths, t);
}

}  // namespace wick
