// Ideal-triangulation shear charts: corner track, puncture rows and the
// developing-map holonomy.
#include <cmath>
#include <numeric>

#include "wick/error.hpp"
#include "wick/teich.hpp"

namespace wick {

std::vector<std::string> ShearChart::coord_names() const {
  std::vector<std::string> out;
  for (int e : coord_edges) out.push_back(track->edges[e]);
  return out;
}

std::vector<double> ShearChart::lift_real(const std::vector<double>& coords) const {
  if (static_cast<int>(coords.size()) != ncoords()) throw InputError("chart '" + name + "': coordinate count mismatch");
  std::vector<double> out(track->num_edges(), 0.0);
  for (int e = 0; e < track->num_edges(); ++e)
    for (int j = 0; j < ncoords(); ++j)
      if (lift[e][j] != 0) out[e] += lift[e][j].get_d() * coords[j];
  return out;
}

// Solves the switch relations for the non-coordinate edges, one coordinate
// unit vector at a time; the solution must be unique.
static QMatrix compute_lift(const TrainTrack& t, const std::vector<int>& coords) {
  const int E = t.num_edges(), nc = static_cast<int>(coords.size());
  std::vector<int> col_of(E, -1), unknowns;
  std::vector<bool> is_coord(E, false);
  for (int c : coords) is_coord[c] = true;
  for (int e = 0; e < E; ++e)
    if (!is_coord[e]) {
      col_of[e] = static_cast<int>(unknowns.size());
      unknowns.push_back(e);
    }
  const int nu = static_cast<int>(unknowns.size());
  QMatrix lift(E, QVector(nc, Rational(0)));
  for (int j = 0; j < nc; ++j) {
    QMatrix sys;
    for (const Switch& s : t.switches) {
      QVector row(nu + 1, Rational(0));
      auto add = [&](int e, int sign) {
        if (is_coord[e]) {
          if (e == coords[j]) row[nu] -= sign;
        } else {
          row[col_of[e]] += sign;
        }
      };
      add(s.in, 1);
      add(s.out_plus, -1);
      add(s.out_minus, -1);
      sys.push_back(row);
    }
    auto piv = rref(sys, nu + 1);
    if (!piv.empty() && piv.back() == nu)
      throw InputError("track '" + t.name + "': chart coordinates are not independent");
    if (static_cast<int>(piv.size()) != nu)
      throw InputError("track '" + t.name + "': chart coordinates do not determine all branch weights");
    lift[coords[j]][j] = 1;
    for (int r = 0; r < nu; ++r) lift[unknowns[piv[r]]][j] = sys[r][nu];
  }
  return lift;
}

namespace {
struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};
}  // namespace

ShearChartPtr make_triangulation_chart(const std::string& name, const SurfaceSig& sig, int triangles,
                                       const std::vector<EdgeGluing>& gluings,
                                       const std::vector<std::vector<int>>& paths) {
  if (sig.punctures == 0) throw InputError("shear charts need a punctured surface");
  auto ch = std::make_shared<ShearChart>();
  ch->kind = ShearChart::Kind::triangulation;
  ch->name = name;
  ch->surface = sig;
  ch->presentation = build_presentation(sig);
  ch->triangles = triangles;
  ch->gluings = gluings;
  ch->generator_paths = paths;
  if (triangles <= 0 || 3 * triangles != 2 * static_cast<int>(gluings.size()))
    throw InputError("triangulation: 2 * #edges must equal 3 * #triangles");
  if (-2 * sig.euler() != triangles)
    throw InputError("triangulation: #triangles must equal -2 * Euler characteristic");
  std::vector<int> slot_used(3 * triangles, 0);
  for (const auto& g : gluings) {
    for (auto [t, s] : {std::pair{g.t0, g.s0}, std::pair{g.t1, g.s1}}) {
      if (t < 0 || t >= triangles || s < 0 || s > 2)
        throw InputError("triangulation: edge '" + g.name + "' references a missing side");
      ++slot_used[3 * t + s];
    }
  }
  for (int k = 0; k < 3 * triangles; ++k)
    if (slot_used[k] != 1)
      throw InputError("triangulation: side " + std::to_string(k % 3) + " of triangle " + std::to_string(k / 3) +
                       " is glued " + std::to_string(slot_used[k]) + " times");
  if (static_cast<int>(paths.size()) != ch->presentation.rank())
    throw InputError("triangulation: need one generator path per generator");

  // corner track: edge branches, then one corner branch per (triangle, corner)
  TrainTrack t;
  t.name = name + "-corner-track";
  t.surface = sig;
  t.maximal = true;
  std::vector<int> edge_at(3 * triangles);
  for (size_t i = 0; i < gluings.size(); ++i) {
    t.edges.push_back(gluings[i].name);
    edge_at[3 * gluings[i].t0 + gluings[i].s0] = static_cast<int>(i);
    edge_at[3 * gluings[i].t1 + gluings[i].s1] = static_cast<int>(i);
  }
  const int E = static_cast<int>(gluings.size());
  for (int tr = 0; tr < triangles; ++tr)
    for (int c = 0; c < 3; ++c) t.edges.push_back("t" + std::to_string(tr) + "c" + std::to_string(c));
  auto corner = [&](int tr, int c) { return E + 3 * tr + (c % 3); };
  for (int tr = 0; tr < triangles; ++tr)
    for (int k = 0; k < 3; ++k) t.switches.push_back({edge_at[3 * tr + k], corner(tr, k), corner(tr, k + 1)});

  // vertex classes: side k of t joins corners k, k+1; gluing reverses the side
  UnionFind uf(3 * triangles);
  for (const auto& g : gluings) {
    uf.unite(3 * g.t0 + g.s0, 3 * g.t1 + (g.s1 + 1) % 3);
    uf.unite(3 * g.t0 + (g.s0 + 1) % 3, 3 * g.t1 + g.s1);
  }
  std::vector<int> roots;
  for (int k = 0; k < 3 * triangles; ++k)
    if (uf.find(k) == k) roots.push_back(k);
  if (static_cast<int>(roots.size()) != sig.punctures)
    throw InputError("triangulation: " + std::to_string(roots.size()) + " vertex classes for " +
                     std::to_string(sig.punctures) + " punctures");
  for (int root : roots) {
    QVector row(E, Rational(0));
    for (const auto& g : gluings) {
      int i = &g - gluings.data();
      for (int end : {3 * g.t0 + g.s0, 3 * g.t0 + (g.s0 + 1) % 3})
        if (uf.find(end) == root) row[i] += 1;
    }
    ch->puncture_rows.push_back(row);
    QVector trow = row;
    trow.resize(t.num_edges(), Rational(0));
    t.constraints.push_back(trow);
  }
  ch->track = make_track(std::move(t));
  for (int i = 0; i < E; ++i) ch->coord_edges.push_back(i);
  ch->lift = compute_lift(*ch->track, ch->coord_edges);

  // generator paths must be closed loops in the dual graph from triangle 0
  for (const auto& path : paths) {
    int cur = 0;
    for (int side : path) {
      if (side < 0 || side > 2) throw InputError("generator path: side index outside 0..2");
      const auto& g = gluings[edge_at[3 * cur + side]];
      cur = (g.t0 == cur && g.s0 == side) ? g.t1 : g.t0;
    }
    if (cur != 0) throw InputError("generator path does not return to triangle 0");
  }
  return ch;
}

ShearChartPtr with_kappa(const ShearChartPtr& chart, double kappa) {
  auto c = std::make_shared<ShearChart>(*chart);
  c->kappa_L = kappa;
  c->kappa_calibrated = true;
  return c;
}

ShearCoordinates make_shear_coordinates(const ShearChart& chart, std::vector<double> values, double tol) {
  if (static_cast<int>(values.size()) != chart.ncoords())
    throw InputError("chart '" + chart.name + "' expects " + std::to_string(chart.ncoords()) + " coordinates");
  double scale = 1.0;
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError("non-finite shear coordinate");
    scale = std::max(scale, std::abs(v));
  }
  bool complete = true;
  for (const auto& row : chart.puncture_rows) {
    double s = 0;
    for (size_t i = 0; i < values.size(); ++i) s += row[i].get_d() * values[i];
    if (std::abs(s) > tol * scale) complete = false;
  }
  return {std::move(values), complete};
}

std::vector<double> coordinates_of(const ShearChart& chart, const WeightSystem& w) {
  if (!w.track || (w.track != chart.track && !w.track->same_as(*chart.track)))
    throw InputError("weight system is not on the chart's track");
  std::vector<double> out;
  for (int e : chart.coord_edges) out.push_back(w.weights[e].get_d());
  return out;
}

std::vector<WeightSystem> complete_weight_basis(const ShearChart& chart) { return weight_space_basis(chart.track); }

std::vector<std::vector<double>> complete_basis(const ShearChart& chart) {
  std::vector<std::vector<double>> out;
  for (const auto& w : complete_weight_basis(chart)) out.push_back(coordinates_of(chart, w));
  return out;
}

// Development: triangle 0 sits at (inf, 0, 1). Crossing side k of the current
// copy (corners p = c_k, q = c_{k+1}, r = c_{k+2}) with shear x puts the new
// vertex at N^-1(e^x), N = (p, q, r) -> (0, inf, -1), and the glued triangle's
// corners (k', k'+1, k'+2) become (q, p, new).
template <class Shear>
static CMat develop(const ShearChart& ch, const std::vector<int>& path, const std::vector<Shear>& x) {
  const std::array<CP1, 3> ref{infinity_point(), affine_point(0), affine_point(1)};
  const std::array<CP1, 3> norm{affine_point(0), infinity_point(), affine_point(-1)};
  std::array<CP1, 3> cur = ref;
  int tri = 0;
  for (int side : path) {
    int gi = -1;
    for (size_t i = 0; i < ch.gluings.size(); ++i) {
      const auto& g = ch.gluings[i];
      if ((g.t0 == tri && g.s0 == side) || (g.t1 == tri && g.s1 == side)) gi = static_cast<int>(i);
    }
    const auto& g = ch.gluings[gi];
    auto [nt, ns] = (g.t0 == tri && g.s0 == side) ? std::pair{g.t1, g.s1} : std::pair{g.t0, g.s0};
    CP1 p = cur[side], q = cur[(side + 1) % 3], r = cur[(side + 2) % 3];
    CMat n = mobius_from3({p, q, r}, norm);
    CP1 s = act(n.adj(), affine_point(std::exp(cplx(x[gi]))));
    std::array<CP1, 3> next;
    next[ns] = q;
    next[(ns + 1) % 3] = p;
    next[(ns + 2) % 3] = s;
    cur = next;
    tri = nt;
  }
  return mobius_from3(ref, cur);
}

template <class Shear>
static Holonomy shear_holonomy(const ShearChart& ch, const std::vector<Shear>& x, bool real) {
  if (ch.kind != ShearChart::Kind::triangulation)
    throw InputError("chart '" + ch.name + "': complex holonomy is only built on triangulation charts");
  if (static_cast<int>(x.size()) != ch.ncoords()) throw InputError("shear coordinate count mismatch");
  for (const auto& v : x)
    if (!std::isfinite(std::abs(cplx(v)))) throw InputError("non-finite shear coordinate");
  Holonomy h;
  h.presentation = ch.presentation;
  h.real = real;
  for (const auto& path : ch.generator_paths) {
    CMat m = develop(ch, path, x);
    if (real) m = to_complex(real_part(m));
    h.generators.push_back(m);
  }
  return h;
}

Holonomy spiral_holonomy(const ShearChart& chart, const ShearCoordinates& sigma);  // spiral.cpp

Holonomy holonomy_from_shear(const ShearChart& chart, const ShearCoordinates& sigma) {
  if (chart.kind == ShearChart::Kind::spiral) return spiral_holonomy(chart, sigma);
  return shear_holonomy(chart, sigma.values, true);
}

Holonomy holonomy_from_shear(const ShearChart& chart, const ComplexShearCoordinates& sigma) {
  return shear_holonomy(chart, sigma.values, false);
}

}  // namespace wick
