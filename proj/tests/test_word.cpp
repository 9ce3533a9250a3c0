#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "projwalk/rng.hpp"
#include "projwalk/word.hpp"

using namespace projwalk;

namespace {

Word random_word(CounterRng& rng, int rank, int len) {
  Word w;
  for (int i = 0; i < len; ++i)
    w.push(static_cast<LetterCode>(rng.next_u64() % static_cast<std::uint64_t>(2 * rank)));
  return w;
}

}  // namespace

TEST_CASE("reduce cancels adjacent inverse pairs") {
  CHECK(Word::parse("abBa").str() == "aa");
  CHECK(Word::parse("").str().empty());
  CHECK(Word::parse("aAaA").str().empty());
  CHECK(Word::parse("baA").str() == "b");
}

TEST_CASE("reduce is idempotent on random raw sequences") {
  CounterRng rng(7, 0);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Letter> raw;
    const int len = static_cast<int>(rng.next_u64() % 40);
    for (int i = 0; i < len; ++i)
      raw.push_back(Letter{static_cast<int>(rng.next_u64() % 2),
                           rng.next_u64() % 2 ? +1 : -1});
    const Word once = reduce(raw);
    std::vector<Letter> again;
    for (int i = 0; i < once.length(); ++i) again.push_back(once.letter_at(i));
    CHECK(reduce(again) == once);
  }
}

TEST_CASE("mul matches spec examples") {
  CHECK(mul(Word::parse("ab"), Word::parse("Ba")).str() == "aa");
  CHECK(mul(Word::parse("bab"), Word{}).str() == "bab");
  CHECK(mul(Word::parse("aaa"), Word::parse("A")).str() == "aa");
}

TEST_CASE("inv matches spec examples") {
  CHECK(inv(Word::parse("aB")).str() == "bA");
  CHECK(inv(Word{}).str().empty());
  CHECK(inv(Word::parse("aa")).str() == "AA");
}

TEST_CASE("word_distance basics and BFS cross-check") {
  CHECK(word_distance(Word::parse("ab"), Word::parse("a")) == 1);
  CHECK(word_distance(Word::parse("bab"), Word::parse("bab")) == 0);
  // BFS over the radius-6 ball pins d(a^3, b^3) = 6.
  CHECK(oracles::bfs_word_distance(Word::parse("aaa"), Word::parse("bbb"), 2) == 6);
  CHECK(word_distance(Word::parse("aaa"), Word::parse("bbb")) == 6);
}

TEST_CASE("word_distance triangle inequality on random triples") {
  CounterRng rng(11, 0);
  for (int trial = 0; trial < 4000; ++trial) {
    const Word u = random_word(rng, 2, static_cast<int>(rng.next_u64() % 32));
    const Word v = random_word(rng, 2, static_cast<int>(rng.next_u64() % 32));
    const Word w = random_word(rng, 2, static_cast<int>(rng.next_u64() % 32));
    CHECK(word_distance(u, w) <= word_distance(u, v) + word_distance(v, w));
    CHECK(word_distance(u, v) == word_distance(v, u));
    CHECK((word_distance(u, v) == 0) == (u == v));
  }
}

TEST_CASE("free-group axioms on random triples") {
  CounterRng rng(13, 0);
  for (int trial = 0; trial < 10000; ++trial) {
    const Word u = random_word(rng, 2, static_cast<int>(rng.next_u64() % 64));
    const Word v = random_word(rng, 2, static_cast<int>(rng.next_u64() % 64));
    const Word w = random_word(rng, 2, static_cast<int>(rng.next_u64() % 64));
    CHECK(mul(mul(u, v), w) == mul(u, mul(v, w)));
    CHECK(mul(u, inv(u)).empty());
    CHECK(inv(inv(u)) == u);
    CHECK(mul(u, Word{}) == u);
  }
}

TEST_CASE("axis runs") {
  const Word w = Word::parse("aabAAAba");
  CHECK(w.prefix_axis_run(0) == 2);
  CHECK(w.suffix_axis_run(0) == 1);
  CHECK(w.longest_axis_run(0) == 3);
  CHECK(Word::parse("AAb").prefix_axis_run(0) == -2);
  CHECK(Word::parse("bAA").suffix_axis_run(0) == -2);
  CHECK(Word::parse("bb").longest_axis_run(0) == 0);
}

TEST_CASE("parse rejects non-letters") {
  CHECK_THROWS_AS(Word::parse("a1"), std::invalid_argument);
  CHECK_THROWS_AS(Word::parse("a b"), std::invalid_argument);
}

TEST_CASE("shortlex order") {
  CHECK(shortlex_less(Word::parse("b"), Word::parse("ab")));
  CHECK(shortlex_less(Word::parse("a"), Word::parse("A")));
  CHECK(shortlex_less(Word::parse("aA"), Word::parse("b")));  // empty < b
  CHECK(!shortlex_less(Word::parse("b"), Word::parse("a")));
}

TEST_CASE("ball enumeration counts 2k(2k-1)^(m-1) words per layer") {
  const auto ball = ball_words(2, 5);
  // 1 + 4 + 12 + 36 + 108 + 324
  CHECK(ball.size() == 485);
  std::size_t reduced = 0;
  for (const Word& w : ball) {
    Word again = Word::from_codes(w.codes());
    if (again == w) ++reduced;
  }
  CHECK(reduced == ball.size());
}
