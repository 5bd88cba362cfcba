#include "wick/mat2.hpp"

#include "wick/error.hpp"

namespace wick {

double norm(const CMat& m) {
  return std::sqrt(std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d));
}

double norm(const RMat& m) { return std::sqrt(m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d); }

CMat to_complex(const RMat& m) { return {m.a, m.b, m.c, m.d}; }

RMat real_part(const CMat& m) { return {m.a.real(), m.b.real(), m.c.real(), m.d.real()}; }

double max_imag(const CMat& m) {
  return std::max({std::abs(m.a.imag()), std::abs(m.b.imag()), std::abs(m.c.imag()), std::abs(m.d.imag())});
}

CMat normalize_det(const CMat& m) {
  cplx s = std::sqrt(m.det());
  if (std::abs(s) == 0.0) throw GateError("normalize_det: singular matrix", 0.0);
  return cplx(1) / s * m;
}

CMat traceless_part(const CMat& m) {
  cplx h = 0.5 * m.trace();
  return {m.a - h, m.b, m.c, m.d - h};
}

CMat matrix_log_sl2(const CMat& m_in) {
  CMat m = m_in.trace().real() < 0 ? cplx(-1) * m_in : m_in;
  cplx ch = 0.5 * m.trace();
  cplx mu = std::acosh(ch);
  if (std::abs(mu) < 1e-300) throw GateError("matrix_log_sl2: element is not loxodromic", 0.0);
  cplx f = mu / std::sinh(mu);
  return f * traceless_part(m);
}

CP1 act(const CMat& m, const CP1& p) { return {m.a * p[0] + m.b * p[1], m.c * p[0] + m.d * p[1]}; }

CP1 affine_point(cplx z) { return {z, cplx(1)}; }

CMat mobius_from_standard(const CP1& p, const CP1& q, const CP1& r) {
  cplx pq = bracket(p, q);
  if (std::abs(pq) == 0.0) throw GateError("mobius_from_standard: coincident points", 0.0);
  cplx alpha = bracket(r, q) / pq;
  cplx beta = bracket(p, r) / pq;
  return normalize_det({alpha * p[0], beta * q[0], alpha * p[1], beta * q[1]});
}

CMat mobius_from3(const std::array<CP1, 3>& src, const std::array<CP1, 3>& dst) {
  CMat s = mobius_from_standard(src[0], src[1], src[2]);
  CMat t = mobius_from_standard(dst[0], dst[1], dst[2]);
  return t * s.adj();
}

static CP1 eigvec(const CMat& m, cplx lambda) {
  CP1 v1{m.b, lambda - m.a};
  CP1 v2{lambda - m.d, m.c};
  double n1 = std::abs(v1[0]) + std::abs(v1[1]);
  double n2 = std::abs(v2[0]) + std::abs(v2[1]);
  return n1 >= n2 ? v1 : v2;
}

std::pair<CP1, CP1> fixed_points(const CMat& m) {
  cplx t = m.trace();
  cplx disc = std::sqrt(t * t - cplx(4) * m.det());
  cplx l1 = 0.5 * (t + disc), l2 = 0.5 * (t - disc);
  if (std::abs(l1) < std::abs(l2)) std::swap(l1, l2);
  if (std::abs(std::abs(l1) - std::abs(l2)) < 1e-14)
    throw GateError("fixed_points: element is not loxodromic", std::abs(l1) - std::abs(l2));
  return {eigvec(m, l1), eigvec(m, l2)};
}

CP1 parabolic_fixed_point(const CMat& m) {
  CMat n = traceless_part(m);
  CP1 v1{n.b, -n.a};
  CP1 v2{n.d, -n.c};
  double n1 = std::abs(v1[0]) + std::abs(v1[1]);
  double n2 = std::abs(v2[0]) + std::abs(v2[1]);
  return n1 >= n2 ? v1 : v2;
}

}  // namespace wick
