#include "wick/traintrack.hpp"

#include <set>

#include "wick/error.hpp"

namespace wick {

int TrainTrack::edge_index(const std::string& id) const {
  for (int i = 0; i < num_edges(); ++i)
    if (edges[i] == id) return i;
  throw InputError("track '" + name + "': unknown edge '" + id + "'");
}

void TrainTrack::validate() const {
  std::set<std::string> ids(edges.begin(), edges.end());
  if (ids.size() != edges.size()) throw InputError("track '" + name + "': duplicate edge ids");
  std::vector<int> incidences(edges.size(), 0);
  for (size_t v = 0; v < switches.size(); ++v) {
    const Switch& s = switches[v];
    for (int e : {s.in, s.out_plus, s.out_minus}) {
      if (e < 0 || e >= num_edges())
        throw InputError("track '" + name + "': switch " + std::to_string(v) + " references a missing edge");
      ++incidences[e];
    }
    if (s.out_plus == s.out_minus)
      throw InputError("track '" + name + "': switch " + std::to_string(v) + " has equal outgoing branches");
  }
  for (int e = 0; e < num_edges(); ++e)
    if (incidences[e] > 2)
      throw InputError("track '" + name + "': edge '" + edges[e] + "' has more than two ends at switches");
  for (const auto& row : constraints)
    if (static_cast<int>(row.size()) != num_edges())
      throw InputError("track '" + name + "': constraint row length differs from edge count");
}

QMatrix TrainTrack::relation_matrix() const {
  QMatrix m;
  for (const Switch& s : switches) {
    QVector row(edges.size(), Rational(0));
    row[s.in] += 1;
    row[s.out_plus] -= 1;
    row[s.out_minus] -= 1;
    m.push_back(std::move(row));
  }
  for (const auto& r : constraints) m.push_back(r);
  return m;
}

bool TrainTrack::same_as(const TrainTrack& o) const {
  if (edges != o.edges || switches.size() != o.switches.size() || constraints != o.constraints) return false;
  for (size_t i = 0; i < switches.size(); ++i) {
    const auto &a = switches[i], &b = o.switches[i];
    if (a.in != b.in || a.out_plus != b.out_plus || a.out_minus != b.out_minus) return false;
  }
  return true;
}

TrackPtr make_track(TrainTrack t) {
  t.validate();
  return std::make_shared<const TrainTrack>(std::move(t));
}

static void require_same(const WeightSystem& a, const WeightSystem& b) {
  if (!a.track || !b.track) throw InputError("weight system without track");
  if (a.track != b.track && !a.track->same_as(*b.track))
    throw InputError("weight systems live on different tracks ('" + a.track->name + "' vs '" + b.track->name + "')");
}

WeightSystem validate_weights(const TrackPtr& t, const QVector& a) {
  if (static_cast<int>(a.size()) != t->num_edges())
    throw InputError("track '" + t->name + "': expected " + std::to_string(t->num_edges()) + " weights, got " +
                     std::to_string(a.size()));
  for (size_t v = 0; v < t->switches.size(); ++v) {
    const Switch& s = t->switches[v];
    if (a[s.in] != a[s.out_plus] + a[s.out_minus])
      throw InputError("switch relation violated at switch " + std::to_string(v) + " (" + t->edges[s.in] +
                       " = " + t->edges[s.out_plus] + " + " + t->edges[s.out_minus] + "): " + to_string(a[s.in]) +
                       " != " + to_string(a[s.out_plus] + a[s.out_minus]));
  }
  for (size_t k = 0; k < t->constraints.size(); ++k) {
    Rational sum = 0;
    for (int e = 0; e < t->num_edges(); ++e) sum += t->constraints[k][e] * a[e];
    if (sum != 0) throw InputError("constraint row " + std::to_string(k) + " violated: sum " + to_string(sum));
  }
  return WeightSystem{t, a, false};
}

WeightSystem validate_weights(const TrackPtr& t, const std::vector<std::pair<std::string, Rational>>& a) {
  QVector w(t->num_edges(), Rational(0));
  std::vector<bool> set(t->num_edges(), false);
  for (const auto& [id, q] : a) {
    int e = t->edge_index(id);
    w[e] = q;
    set[e] = true;
  }
  for (int e = 0; e < t->num_edges(); ++e)
    if (!set[e]) throw InputError("no weight given for edge '" + t->edges[e] + "'");
  return validate_weights(t, w);
}

std::vector<WeightSystem> weight_space_basis(const TrackPtr& t) {
  std::vector<WeightSystem> out;
  for (auto& v : kernel_basis(t->relation_matrix(), t->num_edges())) out.push_back(WeightSystem{t, std::move(v)});
  return out;
}

QVector basis_coefficients(const std::vector<WeightSystem>& basis, const WeightSystem& a) {
  QMatrix b;
  for (const auto& w : basis) {
    require_same(w, a);
    b.push_back(w.weights);
  }
  QVector c;
  if (!solve_in_span(b, a.weights, c)) throw InputError("weight system is not in the span of the basis");
  return c;
}

Rational thurston_form(const WeightSystem& a, const WeightSystem& b) {
  require_same(a, b);
  Rational sum = 0;
  for (const Switch& s : a.track->switches)
    sum += a[s.out_plus] * b[s.out_minus] - b[s.out_plus] * a[s.out_minus];
  return sum;
}

double thurston_form(const TrainTrack& t, const std::vector<double>& a, const std::vector<double>& b) {
  if (static_cast<int>(a.size()) != t.num_edges() || static_cast<int>(b.size()) != t.num_edges())
    throw InputError("thurston_form: weight vector length mismatch");
  double sum = 0;
  for (const Switch& s : t.switches) sum += a[s.out_plus] * b[s.out_minus] - b[s.out_plus] * a[s.out_minus];
  return sum;
}

WeightSystem operator+(const WeightSystem& a, const WeightSystem& b) {
  require_same(a, b);
  WeightSystem r{a.track, a.weights, false};
  for (size_t i = 0; i < r.weights.size(); ++i) r.weights[i] += b.weights[i];
  return r;
}

WeightSystem operator-(const WeightSystem& a, const WeightSystem& b) {
  require_same(a, b);
  WeightSystem r{a.track, a.weights, false};
  for (size_t i = 0; i < r.weights.size(); ++i) r.weights[i] -= b.weights[i];
  return r;
}

WeightSystem operator*(const Rational& c, const WeightSystem& a) {
  WeightSystem r{a.track, a.weights, a.realizable && c >= 0};
  for (auto& w : r.weights) w *= c;
  return r;
}

bool operator==(const WeightSystem& a, const WeightSystem& b) {
  return (a.track == b.track || a.track->same_as(*b.track)) && a.weights == b.weights;
}

std::pair<WeightSystem, WeightSystem> double_earthquake_linear(const WeightSystem& sigma, const WeightSystem& tau) {
  return {sigma + tau, sigma - tau};
}

std::pair<Rational, Rational> de_pullback_identity(const WeightSystem& rho1, const WeightSystem& theta1,
                                                   const WeightSystem& rho2, const WeightSystem& theta2) {
  require_same(rho1, theta1);
  require_same(rho1, rho2);
  require_same(rho1, theta2);
  Rational lhs = thurston_form(rho1 + theta1, rho2 + theta2) - thurston_form(rho1 - theta1, rho2 - theta2);
  Rational rhs = 2 * thurston_form(theta1, rho2) - 2 * thurston_form(theta2, rho1);
  return {lhs, rhs};
}

WeightSystem carried_cocycle(const TrackPtr& t, const QVector& counts) {
  for (size_t e = 0; e < counts.size(); ++e)
    if (counts[e] < 0) throw InputError("carried_cocycle: negative count on edge '" + t->edges.at(e) + "'");
  WeightSystem w = validate_weights(t, counts);
  w.realizable = true;
  return w;
}

TrackPtr track_from_json(const nlohmann::json& j) {
  TrainTrack t;
  t.name = j.value("name", "track");
  for (const auto& e : j.at("edges")) t.edges.push_back(e.get<std::string>());
  for (const auto& s : j.at("switches"))
    t.switches.push_back({t.edge_index(s.at("in").get<std::string>()),
                          t.edge_index(s.at("out_plus").get<std::string>()),
                          t.edge_index(s.at("out_minus").get<std::string>())});
  if (j.contains("surface")) {
    t.surface.genus = j["surface"].at("genus").get<int>();
    t.surface.punctures = j["surface"].at("punctures").get<int>();
  }
  t.maximal = j.value("maximal", false);
  if (j.contains("constraints"))
    for (const auto& row : j["constraints"]) t.constraints.push_back(weights_from_json(row));
  return make_track(std::move(t));
}

nlohmann::json track_to_json(const TrainTrack& t) {
  nlohmann::json j;
  j["name"] = t.name;
  j["edges"] = t.edges;
  j["switches"] = nlohmann::json::array();
  for (const Switch& s : t.switches)
    j["switches"].push_back({{"in", t.edges[s.in]}, {"out_plus", t.edges[s.out_plus]}, {"out_minus", t.edges[s.out_minus]}});
  j["surface"] = {{"genus", t.surface.genus}, {"punctures", t.surface.punctures}};
  j["maximal"] = t.maximal;
  j["constraints"] = nlohmann::json::array();
  for (const auto& row : t.constraints) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& q : row) r.push_back({q.get_num().get_str(), q.get_den().get_str()});
    j["constraints"].push_back(r);
  }
  return j;
}

nlohmann::json weights_to_json(const WeightSystem& w) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& q : w.weights) j.push_back({q.get_num().get_str(), q.get_den().get_str()});
  return j;
}

// Entries are [num, den] pairs (strings or integers) or single literals.
QVector weights_from_json(const nlohmann::json& j) {
  QVector out;
  for (const auto& x : j) {
    if (x.is_array()) {
      if (x.size() != 2) throw InputError("rational pair must have two entries");
      auto part = [](const nlohmann::json& p) { return p.is_string() ? p.get<std::string>() : p.dump(); };
      out.push_back(parse_rational(part(x[0]) + "/" + part(x[1])));
    } else if (x.is_string()) {
      out.push_back(parse_rational(x.get<std::string>()));
    } else if (x.is_number_integer()) {
      out.push_back(Rational(x.get<long>()));
    } else {
      throw InputError("rational entries must be [num, den] pairs, strings or integers");
    }
  }
  return out;
}

}  // namespace wick
