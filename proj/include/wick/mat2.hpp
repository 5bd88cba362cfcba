// 2x2 matrices over the scalar rings used by the holonomy and Goldman code:
// double, std::complex<double>, dual numbers R[e]/(e^2) (Minkowski) and
// split-complex numbers R[j]/(j^2-1) (anti-de Sitter), the latter stored in
// the idempotent basis e+ = (1+j)/2, e- = (1-j)/2 so arithmetic is
// componentwise.
#pragma once
#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace wick {

using cplx = std::complex<double>;

struct Dual {
  double re = 0, eps = 0;
  Dual() = default;
  Dual(double r, double e = 0) : re(r), eps(e) {}
  friend Dual operator+(Dual a, Dual b) { return {a.re + b.re, a.eps + b.eps}; }
  friend Dual operator-(Dual a, Dual b) { return {a.re - b.re, a.eps - b.eps}; }
  friend Dual operator-(Dual a) { return {-a.re, -a.eps}; }
  friend Dual operator*(Dual a, Dual b) { return {a.re * b.re, a.re * b.eps + a.eps * b.re}; }
  friend Dual operator/(Dual a, Dual b) { return {a.re / b.re, (a.eps * b.re - a.re * b.eps) / (b.re * b.re)}; }
  Dual& operator+=(Dual b) { return *this = *this + b; }
  Dual& operator-=(Dual b) { return *this = *this - b; }
};

struct Split {
  double plus = 0, minus = 0;  // components along e+ and e-
  Split() = default;
  Split(double r) : plus(r), minus(r) {}
  Split(double p, double m) : plus(p), minus(m) {}
  friend Split operator+(Split a, Split b) { return {a.plus + b.plus, a.minus + b.minus}; }
  friend Split operator-(Split a, Split b) { return {a.plus - b.plus, a.minus - b.minus}; }
  friend Split operator-(Split a) { return {-a.plus, -a.minus}; }
  friend Split operator*(Split a, Split b) { return {a.plus * b.plus, a.minus * b.minus}; }
  friend Split operator/(Split a, Split b) { return {a.plus / b.plus, a.minus / b.minus}; }
  Split& operator+=(Split b) { return *this = *this + b; }
  Split& operator-=(Split b) { return *this = *this - b; }
  double real() const { return 0.5 * (plus + minus); }
  double j() const { return 0.5 * (plus - minus); }
};

template <class S>
struct Mat2 {
  S a{}, b{}, c{}, d{};

  static Mat2 identity() { return {S(1), S(0), S(0), S(1)}; }
  static Mat2 zero() { return {S(0), S(0), S(0), S(0)}; }

  S det() const { return a * d - b * c; }
  S trace() const { return a + d; }
  // Inverse assuming det = 1 (the adjugate).
  Mat2 adj() const { return {d, -b, -c, a}; }
  Mat2 inverse() const {
    S dt = det();
    return {d / dt, -b / dt, -c / dt, a / dt};
  }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend Mat2 operator+(const Mat2& x, const Mat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
  friend Mat2 operator*(S s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
  Mat2& operator+=(const Mat2& y) { return *this = *this + y; }
  Mat2& operator-=(const Mat2& y) { return *this = *this - y; }
};

using RMat = Mat2<double>;
using CMat = Mat2<cplx>;
using DMat = Mat2<Dual>;
using SMat = Mat2<Split>;

// Frobenius-type norm (sum of absolute squares, then sqrt).
double norm(const CMat& m);
double norm(const RMat& m);
CMat to_complex(const RMat& m);
RMat real_part(const CMat& m);
double max_imag(const CMat& m);
// Rescales to determinant 1 (principal square root of the determinant).
CMat normalize_det(const CMat& m);
// Conjugation action Ad_g x = g x g^-1 (g unimodular).
template <class S>
Mat2<S> Ad(const Mat2<S>& g, const Mat2<S>& x) {
  return g * x * g.adj();
}
CMat traceless_part(const CMat& m);
CMat matrix_log_sl2(const CMat& m);  // principal logarithm of a hyperbolic/loxodromic element

// Points of CP^1 in homogeneous coordinates (z0 : z1); infinity is (1 : 0).
using CP1 = std::array<cplx, 2>;
inline cplx bracket(const CP1& u, const CP1& v) { return u[0] * v[1] - u[1] * v[0]; }
CP1 act(const CMat& m, const CP1& p);
CP1 affine_point(cplx z);
inline CP1 infinity_point() { return {cplx(1), cplx(0)}; }
// Moebius map (unimodular) sending (inf, 0, 1) to (p, q, r).
CMat mobius_from_standard(const CP1& p, const CP1& q, const CP1& r);
// Moebius map sending (p0,p1,p2) to (q0,q1,q2).
CMat mobius_from3(const std::array<CP1, 3>& src, const std::array<CP1, 3>& dst);
// Attracting (|lambda|>1) and repelling fixed points of a loxodromic element.
std::pair<CP1, CP1> fixed_points(const CMat& m);
// Fixed point of a parabolic element.
CP1 parabolic_fixed_point(const CMat& m);

}  // namespace wick
