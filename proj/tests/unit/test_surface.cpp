#include <doctest.h>

#include "helpers.hpp"
#include "wick/error.hpp"
#include "wick/surface.hpp"

using namespace wick;

TEST_CASE("build_presentation: closed genus 2") {
  GroupPresentation p = build_presentation({2, 0});
  CHECK(p.generators == std::vector<std::string>{"a1", "b1", "a2", "b2"});
  REQUIRE(p.relators.size() == 1);
  CHECK(p.relators[0] == Word{1, 2, -1, -2, 3, 4, -3, -4});
  CHECK(p.peripheral.empty());
}

TEST_CASE("build_presentation: punctured torus is free with peripheral [a,b]") {
  GroupPresentation p = build_presentation({1, 1});
  CHECK(p.generators == std::vector<std::string>{"a", "b"});
  CHECK(p.relators.empty());
  REQUIRE(p.peripheral.size() == 1);
  CHECK(p.peripheral[0] == Word{1, 2, -1, -2});
}

TEST_CASE("build_presentation: non-hyperbolic signatures are rejected") {
  CHECK_THROWS_AS(build_presentation({0, 2}), InputError);
  CHECK_THROWS_AS(build_presentation({1, 0}), InputError);
  CHECK_NOTHROW(build_presentation({0, 3}));  // thrice-punctured sphere: chi = -1
}

TEST_CASE("build_presentation: generator count and relator length") {
  for (int g = 2; g <= 4; ++g) {
    GroupPresentation p = build_presentation({g, 0});
    CHECK(p.rank() == 2 * g);
    CHECK(p.relators.at(0).size() == static_cast<size_t>(4 * g));
  }
  GroupPresentation q = build_presentation({1, 2});
  CHECK(q.rank() == 3);  // free of rank 2g + n - 1
  CHECK(q.peripheral.size() == 2);
}

TEST_CASE("reduce_word examples") {
  CHECK(reduce_word({{1, -1, 2}, false}).word == Word{2});        // a a^-1 b -> b
  CHECK(reduce_word({{-2, 1, 2}, true}).word == Word{1});         // b^-1 a b (cyclic) -> a
  CHECK(reduce_word({{-2, 1, 2}, false}).word == Word{-2, 1, 2});  // no cyclic reduction requested
  CHECK(reduce_word({{}, true}).word.empty());
  CHECK(reduce_word({{1, 2, -2, -1}, false}).word.empty());
  CHECK_THROWS_AS(free_reduce({1, 0}), InputError);
}

TEST_CASE("property: reduction is idempotent and leaves no cancelling pairs") {
  wt::Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    Word w;
    const long n = rng.integer(0, 14);
    for (long i = 0; i < n; ++i) {
      int g = static_cast<int>(rng.integer(1, 2));
      w.push_back(rng.integer(0, 1) ? g : -g);
    }
    for (bool cyclic : {false, true}) {
      CurveWord r = reduce_word({w, cyclic});
      CHECK(reduce_word(r).word == r.word);
      for (size_t i = 1; i < r.word.size(); ++i) CHECK(r.word[i] != -r.word[i - 1]);
      if (cyclic && r.word.size() >= 2) CHECK(r.word.front() != -r.word.back());
    }
    // free reduction respects the group law: w w^-1 reduces to the empty word
    CHECK(free_reduce(concat(w, inverse(w))).empty());
  }
}

TEST_CASE("parse_word / format_word round trip") {
  GroupPresentation p = build_presentation({2, 0});
  CHECK(parse_word("a1 b1^-1 a2", p) == Word{1, -2, 3});
  CHECK(format_word({1, -2, 3}, p) == "a1 b1^-1 a2");
  GroupPresentation t = build_presentation({1, 1});
  CHECK(parse_word("a B", t) == Word{1, -2});  // capital letter = inverse
  CHECK(parse_word(format_word({2, -1, -1}, t), t) == Word{2, -1, -1});
  CHECK_THROWS_AS(parse_word("a3", p), InputError);
  CHECK_THROWS_AS(check_word({5}, 4), InputError);
}

TEST_CASE("multicurve_scale") {
  WeightedMulticurve l;
  l.components.push_back({std::string("a1"), Rational(2)});
  auto half = multicurve_scale(l, Rational(1, 2));
  CHECK(half.components[0].weight == 1);
  CHECK(multicurve_scale(l, 1).components[0].weight == 2);

  WeightedMulticurve two;
  two.components.push_back({std::string("a1"), Rational(1)});
  two.components.push_back({std::string("a2"), Rational(3)});
  auto doubled = multicurve_scale(two, 2);
  CHECK(doubled.components[0].weight == 2);
  CHECK(doubled.components[1].weight == 6);
  CHECK_THROWS_AS(multicurve_scale(l, 0), InputError);
}

TEST_CASE("validate_multicurve rejects non-positive weights and repeated curves") {
  WeightedMulticurve l;
  l.components.push_back({std::string("a1"), Rational(0)});
  CHECK_THROWS_AS(validate_multicurve(l), InputError);
  WeightedMulticurve d;
  d.components.push_back({CurveWord{{1, 2}, true}, Rational(1)});
  d.components.push_back({CurveWord{{-2, 1, 2, 2}, true}, Rational(1)});  // cyclically reduces to a1 b1 as well
  CHECK_THROWS_AS(validate_multicurve(d), InputError);
  WeightedMulticurve ok;
  ok.components.push_back({std::string("a1"), Rational(1, 3)});
  ok.components.push_back({CurveWord{{3}, true}, Rational(2)});
  CHECK_NOTHROW(validate_multicurve(ok));
}
