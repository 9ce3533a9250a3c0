#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "projwalk/experiments.hpp"
#include "projwalk/projection.hpp"
#include "projwalk/rng.hpp"

using namespace projwalk;

namespace {

const ProjectionSystem& cyclic_f2() {
  static const ProjectionSystem system = ProjectionSystem::cyclic(2, 0, {1, 1, 2});
  return system;
}

Word random_reduced(CounterRng& rng, int rank, int len) {
  Word w;
  for (int i = 0; i < len; ++i) {
    if (w.empty()) {
      w.push(static_cast<LetterCode>(rng.next_u64() % static_cast<std::uint64_t>(2 * rank)));
    } else {
      const LetterCode forbidden = code_inverse(w.codes().back());
      auto c = static_cast<LetterCode>(rng.next_u64() % static_cast<std::uint64_t>(2 * rank - 1));
      if (c >= forbidden) c = static_cast<LetterCode>(c + 1);
      w.push(c);
    }
  }
  return w;
}

}  // namespace

TEST_CASE("canonicalize: cyclic examples and enumeration oracle") {
  const auto& sys = cyclic_f2();
  CHECK(sys.canonicalize(Word::parse("aaa")).rep.str().empty());
  CHECK(sys.canonicalize(Word::parse("baa")).rep.str() == "b");
  CHECK(sys.canonicalize(Word::parse("aba")).rep.str() == "ab");
  CounterRng rng(3, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const Word g = random_reduced(rng, 2, static_cast<int>(rng.next_u64() % 10));
    const Word expected = oracles::cyclic_rep_by_enumeration(g, 0, 12);
    CHECK(sys.canonicalize(g).rep == expected);
  }
}

TEST_CASE("canonicalize: idempotent and constant on the coset") {
  const auto& sys = cyclic_f2();
  CounterRng rng(5, 0);
  for (int trial = 0; trial < 2000; ++trial) {
    const Word g = random_reduced(rng, 2, static_cast<int>(rng.next_u64() % 24));
    const Coset z = sys.canonicalize(g);
    CHECK(sys.canonicalize(z.rep) == z);
    // Multiply by random subgroup elements a^m.
    const int m = static_cast<int>(rng.next_u64() % 17) - 8;
    Word power;
    for (int i = 0; i < std::abs(m); ++i) power.push(letter_code(0, m > 0 ? +1 : -1));
    CHECK(sys.canonicalize(mul(g, power)) == z);
    CHECK(sys.in_coset(g, z));
  }
}

TEST_CASE("gate: spec examples") {
  const auto& sys = cyclic_f2();
  const Coset y0 = sys.base_coset();
  const Word x1 = Word::parse("baa");
  CHECK(sys.gate(x1, y0).str().empty());
  CHECK(word_distance(x1, sys.gate(x1, y0)) == 3);
  const Word x2 = Word::parse("aab");
  CHECK(sys.gate(x2, y0).str() == "aa");
  CHECK(word_distance(x2, sys.gate(x2, y0)) == 1);
  const Word x3 = Word::parse("AAAA");
  CHECK(sys.gate(x3, y0) == x3);  // projection fixes the target set
}

TEST_CASE("gate: exhaustive BFS oracle on the radius-5 ball") {
  const auto& sys = cyclic_f2();
  oracles::BallGraph ball(2, 5);
  std::unordered_map<Word, std::vector<int>, WordHash> coset_vertices;
  for (std::size_t v = 0; v < ball.words.size(); ++v)
    coset_vertices[sys.canonicalize(ball.words[v]).rep].push_back(static_cast<int>(v));
  for (const auto& [rep, vertices] : coset_vertices) {
    const Coset z{rep};
    const auto bfs = ball.multi_source(vertices);
    for (std::size_t x = 0; x < ball.words.size(); ++x) {
      const Word g = sys.gate(ball.words[x], z);
      CHECK(sys.in_coset(g, z));
      CHECK(word_distance(ball.words[x], g) == bfs.dist[x]);
      CHECK(!bfs.tie[x]);  // cyclic gates are unique
      CHECK(g == ball.words[static_cast<std::size_t>(bfs.gate[x])]);
    }
  }
}

TEST_CASE("proj_distance: spec examples") {
  const auto& sys = cyclic_f2();
  const Coset b_coset = sys.canonicalize(Word::parse("b"));
  CHECK(sys.proj_distance(Word{}, Word::parse("baaab"), b_coset) == 3);
  CHECK(sys.proj_distance(Word::parse("abab"), Word::parse("abab"), b_coset) == 0);
  CHECK(sys.proj_distance(Word{}, Word::parse("aab"), sys.base_coset()) == 2);
}

TEST_CASE("proj_distance: metric properties and Lipschitz bound") {
  const auto& sys = cyclic_f2();
  CounterRng rng(9, 0);
  for (int trial = 0; trial < 4000; ++trial) {
    const Word x = random_reduced(rng, 2, static_cast<int>(rng.next_u64() % 24));
    const Word y = random_reduced(rng, 2, static_cast<int>(rng.next_u64() % 24));
    const Word w = random_reduced(rng, 2, static_cast<int>(rng.next_u64() % 24));
    const Coset z = sys.canonicalize(random_reduced(rng, 2, static_cast<int>(rng.next_u64() % 8)));
    const int dxy = sys.proj_distance(x, y, z);
    CHECK(dxy == sys.proj_distance(y, x, z));
    CHECK(dxy <= sys.proj_distance(x, w, z) + sys.proj_distance(w, y, z));
    CHECK(dxy <= sys.declared().lipschitz * word_distance(x, y));
  }
}

TEST_CASE("translate: examples and equivariance") {
  const auto& sys = cyclic_f2();
  CHECK(sys.translate(Word::parse("b"), sys.base_coset()).rep.str() == "b");
  CHECK(sys.translate(Word::parse("a"), sys.base_coset()).rep.str().empty());
  // g = ab applied to b<a>: the coset (ab)b<a> has representative abb.
  const Coset moved = sys.translate(Word::parse("ab"), sys.canonicalize(Word::parse("b")));
  CHECK(moved.rep == oracles::cyclic_rep_by_enumeration(Word::parse("abb"), 0, 12));
  CHECK(moved.rep.str() == "abb");

  CounterRng rng(17, 0);
  for (int trial = 0; trial < 10000; ++trial) {
    const Word g = random_reduced(rng, 2, static_cast<int>(rng.next_u64() % 12));
    const Word x = random_reduced(rng, 2, static_cast<int>(rng.next_u64() % 12));
    const Word y = random_reduced(rng, 2, static_cast<int>(rng.next_u64() % 12));
    const Coset z = sys.canonicalize(random_reduced(rng, 2, static_cast<int>(rng.next_u64() % 6)));
    const Coset gz = sys.translate(g, z);
    CHECK(sys.proj_distance(mul(g, x), mul(g, y), gz) == sys.proj_distance(x, y, z));
  }
}

TEST_CASE("transverse: cyclic flavor is 'distinct coset'") {
  const auto& sys = cyclic_f2();
  const Coset y0 = sys.base_coset();
  CHECK(sys.transverse(y0, sys.canonicalize(Word::parse("b"))));
  CHECK(!sys.transverse(y0, sys.canonicalize(Word::parse("a"))));  // same coset
  CounterRng rng(21, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const Word g = random_reduced(rng, 2, static_cast<int>(rng.next_u64() % 10));
    const Coset y = sys.canonicalize(random_reduced(rng, 2, static_cast<int>(rng.next_u64() % 8)));
    const Coset z = sys.canonicalize(random_reduced(rng, 2, static_cast<int>(rng.next_u64() % 8)));
    CHECK(sys.transverse(y, z) == sys.transverse(z, y));
    CHECK(sys.transverse(y, z) == sys.transverse(sys.translate(g, y), sys.translate(g, z)));
  }
}

TEST_CASE("sup identity: sup_Z d_Z(1, w) is the longest axis run") {
  const auto& sys = cyclic_f2();
  for (const Word& w : ball_words(2, 9))
    CHECK(sys.sup_projection(w).first == oracles::longest_run_scan(w, 0));
  CounterRng rng(23, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const Word w = random_reduced(rng, 2, 1000);
    CHECK(sys.sup_projection(w).first == oracles::longest_run_scan(w, 0));
  }
}

TEST_CASE("Behrstock consequence on the radius-4 ball") {
  const auto& sys = cyclic_f2();
  const int b = sys.declared().behrstock;
  const Coset y0 = sys.base_coset();
  const auto ball = ball_words(2, 4);
  for (const Word& g : ball) {
    const Coset gy0 = sys.canonicalize(g);
    if (!sys.transverse(y0, gy0)) continue;
    for (const Word& h : ball) {
      if (sys.proj_distance(g, h, y0) >= b)
        CHECK(sys.proj_distance(Word{}, h, gy0) < b);
    }
  }
}

TEST_CASE("stallings flavor, letter-generated subgroup of F3") {
  const Word gens[] = {Word::parse("a"), Word::parse("b")};
  const ProjectionSystem sys =
      ProjectionSystem::stallings(3, SubgroupGraph::from_generators(3, gens), {1, 1, 2}, 1);

  CHECK(sys.canonicalize(Word::parse("abAB")).rep.str().empty());
  CHECK(sys.canonicalize(Word::parse("cab")).rep.str() == "c");
  CHECK(sys.canonicalize(Word::parse("acb")).rep.str() == "ac");

  oracles::BallGraph ball(3, 4);
  std::unordered_map<Word, std::vector<int>, WordHash> coset_vertices;
  for (std::size_t v = 0; v < ball.words.size(); ++v)
    coset_vertices[sys.canonicalize(ball.words[v]).rep].push_back(static_cast<int>(v));
  for (const auto& [rep, vertices] : coset_vertices) {
    const Coset z{rep};
    const auto bfs = ball.multi_source(vertices);
    std::vector<std::uint8_t> in_set(ball.words.size(), 0);
    for (int v : vertices) in_set[static_cast<std::size_t>(v)] = 1;
    for (std::size_t x = 0; x < ball.words.size(); ++x) {
      const Word g = sys.gate(ball.words[x], z);
      CHECK(sys.in_coset(g, z));
      CHECK(word_distance(ball.words[x], g) == bfs.dist[x]);
      // Induced-subgraph distance between gates equals the implementation.
      const Word g0 = sys.gate(Word{}, z);
      const auto it_from = ball.index.find(g0);
      const auto it_to = ball.index.find(g);
      if (it_from != ball.index.end() && it_to != ball.index.end()) {
        const int induced = ball.induced_distance(in_set, it_from->second, it_to->second);
        if (induced >= 0) CHECK(sys.proj_distance(Word{}, ball.words[x], z) == induced);
      }
    }
  }

  // Distinct cosets of a letter-generated subgroup are always transverse.
  CHECK(sys.transverse(sys.base_coset(), sys.canonicalize(Word::parse("c"))));
  CHECK(!sys.transverse(sys.base_coset(), sys.canonicalize(Word::parse("ab"))));
}

TEST_CASE("stallings flavor, multi-vertex core graph <a, bab^-1>") {
  const Word gens[] = {Word::parse("a"), Word::parse("baB")};
  const ProjectionSystem sys =
      ProjectionSystem::stallings(2, SubgroupGraph::from_generators(2, gens), {2, 2, 3}, 2);

  CounterRng rng(31, 0);
  oracles::BallGraph ball(2, 5);
  for (int trial = 0; trial < 300; ++trial) {
    const Word g = random_reduced(rng, 2, static_cast<int>(rng.next_u64() % 5));
    const Coset z = sys.canonicalize(g);
    // Oracle: shortlex-least coset element within the radius-|g| ball.
    Word best;
    bool have = false;
    for (const Word& v : ball.words) {
      if (v.length() > g.length()) continue;
      if (!sys.in_coset(v, sys.canonicalize(g))) continue;
      if (!have || shortlex_less(v, best)) {
        best = v;
        have = true;
      }
    }
    REQUIRE(have);
    CHECK(z.rep == best);
    CHECK(sys.canonicalize(z.rep) == z);
  }

  // Gate minimality against a BFS oracle. Gates of points in the radius-3
  // ball against cosets met by it stay within radius 2*3 + 3, so the oracle
  // ball of radius 9 sees every candidate.
  oracles::BallGraph wide(2, 9);
  std::unordered_map<Word, std::vector<int>, WordHash> coset_sources;
  const auto small = ball_words(2, 3);
  std::unordered_map<Word, Coset, WordHash> cosets;
  for (const Word& v : small) {
    const Coset z = sys.canonicalize(v);
    cosets.emplace(z.rep, z);
  }
  for (const auto& [rep, z] : cosets) {
    std::vector<int> sources;
    for (std::size_t v = 0; v < wide.words.size(); ++v)
      if (sys.in_coset(wide.words[v], z)) sources.push_back(static_cast<int>(v));
    const auto bfs = wide.multi_source(sources);
    for (const Word& x : small) {
      const Word g = sys.gate(x, z);
      CHECK(sys.in_coset(g, z));
      CHECK(word_distance(x, g) == bfs.dist[static_cast<std::size_t>(wide.index.at(x))]);
    }
  }
}
