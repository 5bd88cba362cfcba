#include "wick/surface.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "wick/error.hpp"

namespace wick {

GroupPresentation build_presentation(const SurfaceSig& sig) {
  if (sig.genus < 0 || sig.punctures < 0) throw InputError("surface signature must be non-negative");
  if (sig.euler() >= 0)
    throw InputError("surface (g=" + std::to_string(sig.genus) + ", n=" + std::to_string(sig.punctures) +
                     ") is not hyperbolic: Euler characteristic " + std::to_string(sig.euler()) + " >= 0");
  GroupPresentation p;
  const bool single = sig.genus == 1;
  for (int i = 1; i <= sig.genus; ++i) {
    p.generators.push_back(single ? "a" : "a" + std::to_string(i));
    p.generators.push_back(single ? "b" : "b" + std::to_string(i));
  }
  Word prod;
  for (int i = 0; i < sig.genus; ++i) prod = concat(prod, commutator({2 * i + 1}, {2 * i + 2}));
  if (sig.punctures == 0) {
    p.relators.push_back(prod);
    return p;
  }
  // Free group: p_1..p_{n-1} are extra generators; the last peripheral loop
  // is determined by prod * p_1 * ... * p_{n-1} * p_n = 1.
  const int base = 2 * sig.genus;
  for (int j = 1; j < sig.punctures; ++j) {
    p.generators.push_back("p" + std::to_string(j));
    p.peripheral.push_back({base + j});
  }
  Word last = prod;
  for (int j = 1; j < sig.punctures; ++j) last.push_back(base + j);
  p.peripheral.push_back(free_reduce(last));
  return p;
}

Word free_reduce(const Word& w) {
  Word out;
  for (int x : w) {
    if (x == 0) throw InputError("generator index 0 in word");
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

CurveWord reduce_word(const CurveWord& w) {
  Word r = free_reduce(w.word);
  if (!w.cyclic) return {r, false};
  size_t i = 0, j = r.size();
  while (j - i >= 2 && r[i] == -r[j - 1]) { ++i; --j; }
  return {Word(r.begin() + i, r.begin() + j), true};
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word commutator(const Word& a, const Word& b) {
  return concat(concat(a, b), concat(inverse(a), inverse(b)));
}

void check_word(const Word& w, int rank) {
  for (int x : w)
    if (x == 0 || std::abs(x) > rank)
      throw InputError("generator index " + std::to_string(x) + " outside 1.." + std::to_string(rank));
}

WeightedMulticurve multicurve_scale(const WeightedMulticurve& l, const Rational& c) {
  if (c <= 0) throw InputError("multicurve_scale: factor must be positive");
  WeightedMulticurve out = l;
  for (auto& comp : out.components) comp.weight *= c;
  return out;
}

static std::string curve_key(const CurveRef& c) {
  if (auto s = std::get_if<std::string>(&c)) return "id:" + *s;
  std::ostringstream os;
  os << "w:";
  for (int x : reduce_word(std::get<CurveWord>(c)).word) os << x << ',';
  return os.str();
}

void validate_multicurve(const WeightedMulticurve& l) {
  std::set<std::string> seen;
  for (const auto& comp : l.components) {
    if (comp.weight <= 0) throw InputError("multicurve weights must be positive");
    if (!seen.insert(curve_key(comp.curve)).second) throw InputError("multicurve components must be distinct");
  }
}

Word parse_word(const std::string& text, const GroupPresentation& p) {
  std::istringstream is(text);
  std::string tok;
  Word w;
  while (is >> tok) {
    bool inv = false;
    if (tok.size() > 3 && tok.ends_with("^-1")) {
      inv = true;
      tok.resize(tok.size() - 3);
    }
    int idx = -1;
    for (int i = 0; i < p.rank(); ++i)
      if (p.generators[i] == tok) idx = i;
    if (idx < 0 && tok.size() == 1 && std::isupper(static_cast<unsigned char>(tok[0]))) {
      std::string lower(1, static_cast<char>(std::tolower(static_cast<unsigned char>(tok[0]))));
      for (int i = 0; i < p.rank(); ++i)
        if (p.generators[i] == lower) { idx = i; inv = !inv; }
    }
    if (idx < 0) {
      try {
        size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used == tok.size() && v != 0 && std::abs(v) <= p.rank()) {
          w.push_back(inv ? -v : v);
          continue;
        }
      } catch (const std::exception&) {
      }
      throw InputError("unknown generator '" + tok + "' in word '" + text + "'");
    }
    w.push_back(inv ? -(idx + 1) : idx + 1);
  }
  return w;
}

std::string format_word(const Word& w, const GroupPresentation& p) {
  std::string out;
  for (int x : w) {
    if (!out.empty()) out += ' ';
    out += p.generators.at(std::abs(x) - 1);
    if (x < 0) out += "^-1";
  }
  return out;
}

}  // namespace wick
