// Surfaces, presentations of their fundamental groups, curve words and
// weighted multicurves.
//
// Marking convention: words are sequences of signed 1-based generator
// indices (k means generator k, -k its inverse). The closed genus-g
// presentation is <a1,b1,...,ag,bg | [a1,b1]...[ag,bg]> with [x,y] = x y x^-1 y^-1;
// the punctured genus-g surface with n punctures uses the free group on
// a1,b1,...,ag,bg,p1,...,p_{n-1}.
#pragma once
#include <string>
#include <variant>
#include <vector>

#include "wick/rational.hpp"

namespace wick {

using Word = std::vector<int>;

struct SurfaceSig {
  int genus = 0;
  int punctures = 0;
  int euler() const { return 2 - 2 * genus - punctures; }
  bool operator==(const SurfaceSig&) const = default;
};

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
  std::vector<Word> peripheral;  // one per puncture
  int rank() const { return static_cast<int>(generators.size()); }
};

struct CurveWord {
  Word word;
  bool cyclic = false;  // cyclically reduced
};

// A multicurve component names either an explicit word or a chart curve.
using CurveRef = std::variant<CurveWord, std::string>;

struct MulticurveComponent {
  CurveRef curve;
  Rational weight;
};

struct WeightedMulticurve {
  std::vector<MulticurveComponent> components;
  bool pants_supported = false;
  bool empty() const { return components.empty(); }
};

GroupPresentation build_presentation(const SurfaceSig& sig);
CurveWord reduce_word(const CurveWord& w);
WeightedMulticurve multicurve_scale(const WeightedMulticurve& l, const Rational& c);
// Validates weights > 0 and pairwise distinct component curves.
void validate_multicurve(const WeightedMulticurve& l);

Word free_reduce(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
Word commutator(const Word& a, const Word& b);
void check_word(const Word& w, int rank);

// "a1 b1 A1 B1" style: generator names, an inverse written as the name
// with a trailing "^-1" or (for single-letter names) as the upper-case letter.
Word parse_word(const std::string& text, const GroupPresentation& p);
std::string format_word(const Word& w, const GroupPresentation& p);

}  // namespace wick
