// Reduced words in a free group F_k and the tree word metric.
//
// A letter is a generator index in [0, k) with a sign; it is packed into a
// single byte code: gen*2 for the positive letter, gen*2+1 for its inverse.
// Words are kept freely reduced at all times, so word length equals distance
// to the identity in the Cayley tree.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace projwalk {

inline constexpr int kMaxRank = 26;  // serialization alphabet a..z / A..Z

using LetterCode = std::uint8_t;

struct Letter {
  int gen = 0;   // generator index in [0, rank)
  int sign = 1;  // +1 or -1
};

constexpr LetterCode letter_code(int gen, int sign) {
  return static_cast<LetterCode>(gen * 2 + (sign < 0 ? 1 : 0));
}
constexpr LetterCode letter_code(const Letter& l) { return letter_code(l.gen, l.sign); }
constexpr LetterCode code_inverse(LetterCode c) { return static_cast<LetterCode>(c ^ 1u); }
constexpr int code_gen(LetterCode c) { return c >> 1; }
constexpr int code_sign(LetterCode c) { return (c & 1u) ? -1 : +1; }
constexpr bool codes_cancel(LetterCode a, LetterCode b) { return (a ^ b) == 1u; }

char code_char(LetterCode c);
LetterCode char_code(char ch);  // throws std::invalid_argument on non-letters

class Word {
 public:
  Word() = default;

  // Reduces an arbitrary letter sequence.
  static Word from_letters(std::span<const Letter> raw);
  static Word from_codes(std::span<const LetterCode> raw);
  // Parses the string form, e.g. "aabA" = a.a.b.a^-1. Throws on bad chars.
  static Word parse(std::string_view s);

  bool empty() const { return codes_.empty(); }
  int length() const { return static_cast<int>(codes_.size()); }
  const std::vector<LetterCode>& codes() const { return codes_; }
  LetterCode code_at(int i) const { return codes_[static_cast<std::size_t>(i)]; }
  Letter letter_at(int i) const;

  // Right-multiplies by one letter with free cancellation; amortized O(1).
  void push(LetterCode c);
  void append(const Word& w);

  Word inverse() const;
  std::string str() const;

  // Signed length of the maximal prefix (suffix) run of axis letters:
  // +m for axis^m, -m for axis^-m, 0 if the word does not start (end) there.
  int prefix_axis_run(int axis) const;
  int suffix_axis_run(int axis) const;
  // Length of the longest block of axis letters (either sign) in the word.
  int longest_axis_run(int axis) const;

  // Largest l with u[0..l) == v[0..l).
  static int common_prefix(const Word& u, const Word& v);
  bool is_prefix_of(const Word& w) const;
  Word prefix(int len) const;
  Word suffix_from(int pos) const;

  int max_gen() const;  // -1 for the empty word

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<LetterCode> codes_;
};

// Length-then-lexicographic order on codes (a < a^-1 < b < b^-1 < ...).
bool shortlex_less(const Word& a, const Word& b);

// Spec-named operations.
Word reduce(std::span<const Letter> raw);
Word mul(const Word& u, const Word& v);
Word inv(const Word& u);
int word_distance(const Word& u, const Word& v);

// All reduced words of length <= radius, in shortlex order (identity first).
std::vector<Word> ball_words(int rank, int radius);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace projwalk
