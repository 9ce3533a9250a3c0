// Test-only oracles: brute-force BFS over Cayley balls, enumeration-based
// coset canonicalization, and an independent longest-run scan. These stay
// deliberately naive and separate from the library's computation paths.

#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "projwalk/word.hpp"

namespace oracles {

using projwalk::LetterCode;
using projwalk::Word;
using projwalk::WordHash;

// The radius-r ball of F_k as an explicit graph; tree distances between ball
// vertices are exact within it.
struct BallGraph {
  int rank;
  int radius;
  std::vector<Word> words;
  std::unordered_map<Word, int, WordHash> index;
  std::vector<std::vector<int>> adj;  // adj[v][code] = neighbor or -1

  BallGraph(int rank_, int radius_) : rank(rank_), radius(radius_) {
    words = projwalk::ball_words(rank, radius);
    for (std::size_t i = 0; i < words.size(); ++i) index.emplace(words[i], static_cast<int>(i));
    adj.assign(words.size(), std::vector<int>(static_cast<std::size_t>(2 * rank), -1));
    for (std::size_t v = 0; v < words.size(); ++v) {
      for (int c = 0; c < 2 * rank; ++c) {
        Word w = words[v];
        w.push(static_cast<LetterCode>(c));
        const auto it = index.find(w);
        if (it != index.end()) adj[v][static_cast<std::size_t>(c)] = it->second;
      }
    }
  }

  struct MultiSource {
    std::vector<int> dist;   // -1 unreachable
    std::vector<int> gate;   // index of the nearest source
    std::vector<std::uint8_t> tie;  // another source at equal distance
  };

  // BFS from a set of sources over the whole ball.
  MultiSource multi_source(const std::vector<int>& sources) const {
    MultiSource out;
    out.dist.assign(words.size(), -1);
    out.gate.assign(words.size(), -1);
    out.tie.assign(words.size(), 0);
    std::deque<int> queue;
    for (int s : sources) {
      out.dist[static_cast<std::size_t>(s)] = 0;
      out.gate[static_cast<std::size_t>(s)] = s;
      queue.push_back(s);
    }
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int u : adj[static_cast<std::size_t>(v)]) {
        if (u < 0) continue;
        if (out.dist[static_cast<std::size_t>(u)] < 0) {
          out.dist[static_cast<std::size_t>(u)] = out.dist[static_cast<std::size_t>(v)] + 1;
          out.gate[static_cast<std::size_t>(u)] = out.gate[static_cast<std::size_t>(v)];
          queue.push_back(u);
        } else if (out.dist[static_cast<std::size_t>(u)] ==
                       out.dist[static_cast<std::size_t>(v)] + 1 &&
                   out.gate[static_cast<std::size_t>(u)] != out.gate[static_cast<std::size_t>(v)]) {
          out.tie[static_cast<std::size_t>(u)] = 1;
        }
      }
    }
    return out;
  }

  // Single-pair BFS distance restricted to an induced vertex set.
  int induced_distance(const std::vector<std::uint8_t>& in_set, int from, int to) const {
    if (from == to) return 0;
    std::vector<int> dist(words.size(), -1);
    std::deque<int> queue{from};
    dist[static_cast<std::size_t>(from)] = 0;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int u : adj[static_cast<std::size_t>(v)]) {
        if (u < 0 || !in_set[static_cast<std::size_t>(u)] ||
            dist[static_cast<std::size_t>(u)] >= 0)
          continue;
        dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
        if (u == to) return dist[static_cast<std::size_t>(u)];
        queue.push_back(u);
      }
    }
    return -1;
  }
};

// BFS word distance via explicit ball search (no common-prefix shortcut).
inline int bfs_word_distance(const Word& u, const Word& v, int rank) {
  const Word target = projwalk::mul(projwalk::inv(u), v);
  const int r = target.length();
  BallGraph ball(rank, r);
  const auto out = ball.multi_source({ball.index.at(Word{})});
  return out.dist[static_cast<std::size_t>(ball.index.at(target))];
}

// Shortlex-least element of g<axis> by enumerating g * axis^m, |m| <= m_max.
inline Word cyclic_rep_by_enumeration(const Word& g, int axis, int m_max) {
  Word best = g;
  for (int m = -m_max; m <= m_max; ++m) {
    Word power;
    for (int i = 0; i < std::abs(m); ++i)
      power.push(projwalk::letter_code(axis, m > 0 ? +1 : -1));
    const Word candidate = projwalk::mul(g, power);
    if (projwalk::shortlex_less(candidate, best)) best = candidate;
  }
  return best;
}

// Longest block of axis letters, scanned over the serialized form.
inline int longest_run_scan(const Word& w, int axis) {
  const std::string s = w.str();
  const char lo = static_cast<char>('a' + axis);
  const char hi = static_cast<char>('A' + axis);
  int best = 0, cur = 0;
  for (char ch : s) {
    if (ch == lo || ch == hi) {
      ++cur;
      if (cur > best) best = cur;
    } else {
      cur = 0;
    }
  }
  return best;
}

}  // namespace oracles
