#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "projwalk/subgroup_graph.hpp"

using namespace projwalk;

TEST_CASE("cyclic axis graph is a single vertex with one loop") {
  const SubgroupGraph g = SubgroupGraph::cyclic_axis(2, 0);
  CHECK(g.size() == 1);
  CHECK(g.single_vertex());
  CHECK(g.contains(Word::parse("aaa")));
  CHECK(g.contains(Word::parse("AA")));
  CHECK(!g.contains(Word::parse("ab")));
  CHECK(!g.contains(Word::parse("b")));
  g.validate();
}

TEST_CASE("letter-generated subgroup of F3") {
  const Word gens[] = {Word::parse("a"), Word::parse("b")};
  const SubgroupGraph g = SubgroupGraph::from_generators(3, gens);
  CHECK(g.size() == 1);
  CHECK(g.contains(Word::parse("abAB")));
  CHECK(!g.contains(Word::parse("ac")));
  CHECK(g.base_loop(letter_code(0, +1)));
  CHECK(g.base_loop(letter_code(1, -1)));
  CHECK(!g.base_loop(letter_code(2, +1)));
}

TEST_CASE("folding identifies shared prefixes") {
  // <ab, ac>: the two loops share the initial a-edge after folding.
  const Word gens[] = {Word::parse("ab"), Word::parse("ac")};
  const SubgroupGraph g = SubgroupGraph::from_generators(3, gens);
  g.validate();
  CHECK(g.contains(Word::parse("ab")));
  CHECK(g.contains(Word::parse("ac")));
  CHECK(g.contains(Word::parse("abCA")));  // ab (ac)^-1
  CHECK(!g.contains(Word::parse("a")));
  CHECK(!g.contains(Word::parse("bc")));
}

TEST_CASE("conjugate generator produces a multi-vertex core graph") {
  const Word gens[] = {Word::parse("a"), Word::parse("baB")};
  const SubgroupGraph g = SubgroupGraph::from_generators(2, gens);
  g.validate();
  CHECK(g.size() == 2);
  CHECK(!g.single_vertex());
  CHECK(g.contains(Word::parse("a")));
  CHECK(g.contains(Word::parse("baB")));
  CHECK(g.contains(Word::parse("abaaBa")));  // a * (b a a B) ... reduced product of gens
  CHECK(!g.contains(Word::parse("b")));
  CHECK(!g.contains(Word::parse("ba")));
}

TEST_CASE("a generator that folds to a spur is pruned to the core") {
  // <a a^-1> collapses; <b a b^-1 b a^-1 b^-1> reduces within the word.
  const Word gens[] = {Word::parse("a"), Word::parse("aa")};
  const SubgroupGraph g = SubgroupGraph::from_generators(2, gens);
  g.validate();
  // <a, a^2> = <a>: single vertex, one a-loop.
  CHECK(g.size() == 1);
  CHECK(g.contains(Word::parse("a")));
}

TEST_CASE("membership agrees with tracing for the index-2 subgroup <aa, b, aba>") {
  const Word gens[] = {Word::parse("aa"), Word::parse("b"), Word::parse("abA")};
  const SubgroupGraph g = SubgroupGraph::from_generators(2, gens);
  g.validate();
  // Index-2: membership iff the total a-exponent is even.
  const auto ball = ball_words(2, 7);
  for (const Word& w : ball) {
    int a_exp = 0;
    for (int i = 0; i < w.length(); ++i)
      if (w.letter_at(i).gen == 0) a_exp += w.letter_at(i).sign;
    CHECK(g.contains(w) == (a_exp % 2 == 0));
  }
}

TEST_CASE("json round trip") {
  const Word gens[] = {Word::parse("a"), Word::parse("baB")};
  const SubgroupGraph g = SubgroupGraph::from_generators(2, gens);
  const std::string text = g.to_json();
  const SubgroupGraph h = SubgroupGraph::from_json(text);
  CHECK(h.size() == g.size());
  CHECK(h.to_json() == text);
  const auto ball = ball_words(2, 6);
  for (const Word& w : ball) CHECK(g.contains(w) == h.contains(w));
}

TEST_CASE("json rejects malformed graphs") {
  CHECK_THROWS(SubgroupGraph::from_json("{"));
  CHECK_THROWS(SubgroupGraph::from_json(R"({"rank":2,"vertex_count":1,"basepoint":1,"edges":[]})"));
  // Unfolded: two a-edges out of the basepoint.
  CHECK_THROWS(SubgroupGraph::from_json(
      R"({"rank":2,"vertex_count":3,"basepoint":0,"edges":[[0,1,"a"],[0,2,"a"],[1,2,"b"],[2,1,"b"]]})"));
}

TEST_CASE("distances and shortest paths to the basepoint") {
  const Word gens[] = {Word::parse("a"), Word::parse("baB")};
  const SubgroupGraph g = SubgroupGraph::from_generators(2, gens);
  REQUIRE(g.size() == 2);
  CHECK(g.dist_to_base()[0] == 0);
  CHECK(g.dist_to_base()[1] == 1);
  const auto paths = g.shortest_paths_to_base(1);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].str() == "B");  // the b-edge from the basepoint, reversed
  CHECK(g.lexmin_path_to_base(1).str() == "B");
}
