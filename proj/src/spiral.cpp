// Spiral shear charts. For a closed curve g with partner h ([g,h] peripheral
// on the punctured torus) the maximal lamination consists of the closed leaf
// g, one leaf on each side spiralling from the cusp onto g, and one
// cusp-to-cusp arc e. Its carrying track has a loop around g with two
// switches (branches g1, g2) and spiral branches p (one side), q (other side);
// e carries the arc. Shears are read from the holonomy by cross ratios.
#include <cmath>

#include "wick/error.hpp"
#include "wick/teich.hpp"

namespace wick {

namespace {

double orient(const CP1& p, const CP1& q, const CP1& r) {
  double v = (bracket(p, q) * bracket(q, r) * bracket(r, p)).real();
  return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0);
}

// Shear across the diagonal (p, q) between the triangles (p, q, r) and
// (q, p, s), independent of the order in which the diagonal is given.
double oriented_shear(CP1 p, CP1 q, const CP1& r, const CP1& s) {
  if (orient(p, q, r) < 0) std::swap(p, q);
  cplx ratio = -(bracket(r, q) * bracket(s, p)) / (bracket(r, p) * bracket(s, q));
  return std::log(std::abs(ratio));
}

double affine_abs(const CP1& p) { return std::abs(p[0] / p[1]); }

bool same_point(const CP1& p, const CP1& q, double tol) {
  double n = std::sqrt(std::norm(p[0]) + std::norm(p[1])) * std::sqrt(std::norm(q[0]) + std::norm(q[1]));
  return std::abs(bracket(p, q)) <= tol * n;
}

struct SpiralGeometry {
  CP1 gp, gm, c, c2;
  double sp = 0, sm = 0, se = 0, twist = 0, length = 0, side = 0;
};

// All readings are taken in the frame of axis(g) (g- -> 0, g+ -> oo), where g
// acts as z -> e^l z; cross ratios are frame independent and
// this avoids the cancellation of reading points crowded near g+.
SpiralGeometry spiral_geometry(const Holonomy& rho, const Word& g, const Word& h) {
  if (!rho.presentation.relators.empty()) throw InputError("spiral charts need a punctured-torus holonomy");
  CMat G = rho.eval(g), H = rho.eval(h);
  CMat K = G * H * G.adj() * H.adj();
  SpiralGeometry s;
  if (std::abs(std::abs(K.trace()) - 2.0) > 1e-8)
    throw InputError("spiral chart: [g,h] is not parabolic (|tr| = " + std::to_string(std::abs(K.trace())) + ")");
  auto fp = fixed_points(G);
  s.gp = fp.first;
  s.gm = fp.second;
  s.c = parabolic_fixed_point(K);
  s.c2 = act(H.adj(), s.c);
  s.side = orient(s.gm, s.gp, s.c);
  if (orient(s.gm, s.gp, s.c2) == s.side)
    throw InputError("spiral chart: h^-1 does not move the cusp across the axis of g");
  // orientation-preserving frame: columns g+, g-
  CMat V{s.gp[0], s.gm[0], s.gp[1], s.gm[1]};
  if (V.det().real() < 0) V = CMat{-s.gp[0], s.gm[0], -s.gp[1], s.gm[1]};
  const CMat Vi = V.inverse();
  const CP1 inf = infinity_point(), zero = affine_point(0.0);
  const CP1 c = act(Vi, s.c), c2 = act(Vi, s.c2);
  s.length = 2.0 * std::acosh(std::abs(G.trace()) / 2.0);
  // g acts in this frame by its multiplier, read off the conjugated holonomy
  // (the off-diagonal entries are rounding noise)
  const CMat Gf = Vi * G * V;
  const cplx mu = Gf.a / Gf.d;
  auto move = [&](const CP1& z) { return CP1{mu * z[0], z[1]}; };
  const CP1 Gc = move(c), GGc = move(Gc);
  const CP1 Gc2 = move(c2), GGc2 = move(Gc2);
  if (orient(zero, inf, c) != s.side) throw GateError("spiral chart: axis frame reverses orientation", 0.0);
  s.sp = oriented_shear(Gc, inf, c, GGc);
  s.sm = oriented_shear(Gc2, inf, c2, GGc2);
  // the arc from c to Gc is crossed into the translate by X = g h g^-1,
  // which maps (c2, G c2) to (c, G c)
  const CMat X = Vi * (G * H * G.adj()) * V;
  if (!same_point(act(X, c2), c, 1e-7) || !same_point(act(X, Gc2), Gc, 1e-7))
    throw GateError("spiral chart: g h g^-1 does not carry the opposite cusp lift onto c", 0.0);
  s.se = oriented_shear(c, Gc, inf, act(X, inf));
  // twist: position of the two cusp lifts in the frame g+ -> inf, g- -> 0
  s.twist = std::log(affine_abs(c) / affine_abs(c2));
  return s;
}

}  // namespace

ShearChartPtr make_spiral_chart(const std::string& name, const GroupPresentation& pres, const Word& g,
                                const Word& h, const Holonomy& reference) {
  if (pres.rank() != 2 || !pres.relators.empty())
    throw InputError("spiral charts are implemented for the punctured torus");
  check_word(g, 2);
  check_word(h, 2);
  SpiralGeometry geo = spiral_geometry(reference, g, h);
  auto ch = std::make_shared<ShearChart>();
  ch->kind = ShearChart::Kind::spiral;
  ch->name = name;
  ch->surface = {1, 1};
  ch->presentation = pres;
  ch->mark_g = g;
  ch->mark_h = h;
  ch->spiral_orientation = static_cast<int>(geo.side);
  // Branches: g1 (loop after the merge of p), g2 (loop after the merge of q),
  // p, q, e. Looking from the incoming loop branch back along the loop, the
  // branch on the left is out_plus; the cusp lift c lies right of the axis
  // g- -> g+ when side < 0, so p is then on the left.
  TrainTrack t;
  t.name = name + "-spiral-track";
  t.surface = {1, 1};
  t.maximal = true;
  t.edges = {"g1", "g2", "p", "q", "e"};
  enum { G1, G2, P, Q, E };
  if (geo.side < 0) {
    t.switches.push_back({G1, P, G2});
    t.switches.push_back({G2, G1, Q});
  } else {
    t.switches.push_back({G1, G2, P});
    t.switches.push_back({G2, Q, G1});
  }
  t.constraints.push_back({Rational(0), Rational(0), Rational(1), Rational(1), Rational(2)});
  ch->track = make_track(std::move(t));
  ch->coord_edges = {G2, P, E};
  ch->puncture_rows.push_back({Rational(0), Rational(0), Rational(2)});
  // g1 = g2 + p, q = -p
  ch->lift = QMatrix(5, QVector(3, Rational(0)));
  ch->lift[G1][0] = 1;
  ch->lift[G1][1] = 1;
  ch->lift[G2][0] = 1;
  ch->lift[P][1] = 1;
  ch->lift[Q][1] = -1;
  ch->lift[E][2] = 1;
  return ch;
}

SpiralReading shear_from_holonomy(const ShearChart& chart, const Holonomy& rho) {
  if (chart.kind != ShearChart::Kind::spiral) throw InputError("shear_from_holonomy needs a spiral chart");
  SpiralGeometry s = spiral_geometry(rho, chart.mark_g, chart.mark_h);
  if (static_cast<int>(s.side) != chart.spiral_orientation)
    throw InputError("holonomy has the opposite orientation to the chart's reference");
  SpiralReading out;
  double g2 = s.twist, g1 = s.twist + s.sp;
  out.branches = {g1, g2, s.sp, s.sm, s.se};
  out.switch_residual = std::max(std::abs(s.sp + s.sm), std::abs(2 * s.se + s.sp + s.sm));
  out.coords = make_shear_coordinates(chart, {g2, s.sp, s.se}, 1e-9);
  out.leaf_length = s.length;
  return out;
}

Holonomy fn_torus_holonomy(const GroupPresentation& pres, double la, cplx twist, double lc);  // fn.cpp

// Inverse of shear_from_holonomy for the identity marking (g, h) = (a, b):
// the structure with leaf length l = -p and twist reading g2.
Holonomy spiral_holonomy(const ShearChart& chart, const ShearCoordinates& sigma) {
  if (chart.mark_g != Word{1} || chart.mark_h != Word{2})
    throw InputError("spiral chart '" + chart.name + "': holonomy construction needs the marking (a, b)");
  if (static_cast<int>(sigma.values.size()) != 3) throw InputError("spiral chart expects (g2, p, e)");
  double T = sigma.values[0], p = sigma.values[1], e = sigma.values[2];
  if (std::abs(e) > 1e-12) throw InputError("spiral chart: only complete structures (e = 0) are constructed");
  double len = -p;
  if (!(len > 0)) throw InputError("spiral chart: leaf length -p must be positive");
  // The FN torus construction has the opposite orientation to the developed
  // triangulation; conjugating by diag(1,-1) mirrors it back.
  auto build = [&](double tw) {
    Holonomy h = fn_torus_holonomy(chart.presentation, len, tw, 0.0);
    for (CMat& m : h.generators) m = CMat{m.a, -m.b, -m.c, m.d};
    return h;
  };
  auto reading = [&](double tw) { return spiral_geometry(build(tw), chart.mark_g, chart.mark_h); };
  SpiralGeometry g0 = reading(0.0), g1 = reading(1.0);
  if (std::abs(g0.sp - p) > 1e-8 * std::max(1.0, len) || static_cast<int>(g0.side) != chart.spiral_orientation)
    throw GateError("spiral chart: reference construction disagrees with the chart orientation", g0.sp - p);
  double slope = g1.twist - g0.twist;  // +-1: twisting shifts the reading exactly
  return build((T - g0.twist) / slope);
}

}  // namespace wick
