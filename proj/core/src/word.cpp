#include "projwalk/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace projwalk {

char code_char(LetterCode c) {
  const int g = code_gen(c);
  return static_cast<char>((code_sign(c) > 0 ? 'a' : 'A') + g);
}

LetterCode char_code(char ch) {
  if (ch >= 'a' && ch <= 'z') return letter_code(ch - 'a', +1);
  if (ch >= 'A' && ch <= 'Z') return letter_code(ch - 'A', -1);
  throw std::invalid_argument(std::string("invalid word character: '") + ch + "'");
}

Word Word::from_letters(std::span<const Letter> raw) {
  Word w;
  w.codes_.reserve(raw.size());
  for (const Letter& l : raw) w.push(letter_code(l));
  return w;
}

Word Word::from_codes(std::span<const LetterCode> raw) {
  Word w;
  w.codes_.reserve(raw.size());
  for (LetterCode c : raw) w.push(c);
  return w;
}

Word Word::parse(std::string_view s) {
  Word w;
  w.codes_.reserve(s.size());
  for (char ch : s) w.push(char_code(ch));
  return w;
}

Letter Word::letter_at(int i) const {
  const LetterCode c = codes_[static_cast<std::size_t>(i)];
  return Letter{code_gen(c), code_sign(c)};
}

void Word::push(LetterCode c) {
  if (!codes_.empty() && codes_cancel(codes_.back(), c)) {
    codes_.pop_back();
  } else {
    codes_.push_back(c);
  }
}

void Word::append(const Word& w) {
  for (LetterCode c : w.codes_) push(c);
}

Word Word::inverse() const {
  Word r;
  r.codes_.resize(codes_.size());
  std::transform(codes_.rbegin(), codes_.rend(), r.codes_.begin(), code_inverse);
  return r;
}

std::string Word::str() const {
  std::string s;
  s.reserve(codes_.size());
  for (LetterCode c : codes_) s.push_back(code_char(c));
  return s;
}

int Word::prefix_axis_run(int axis) const {
  if (codes_.empty() || code_gen(codes_.front()) != axis) return 0;
  const LetterCode c0 = codes_.front();
  int n = 0;
  for (LetterCode c : codes_) {
    if (c != c0) break;
    ++n;
  }
  return code_sign(c0) * n;
}

int Word::suffix_axis_run(int axis) const {
  if (codes_.empty() || code_gen(codes_.back()) != axis) return 0;
  const LetterCode c0 = codes_.back();
  int n = 0;
  for (auto it = codes_.rbegin(); it != codes_.rend() && *it == c0; ++it) ++n;
  return code_sign(c0) * n;
}

int Word::longest_axis_run(int axis) const {
  int best = 0;
  int cur = 0;
  for (LetterCode c : codes_) {
    if (code_gen(c) == axis) {
      ++cur;  // a run in a reduced word never mixes signs
      best = std::max(best, cur);
    } else {
      cur = 0;
    }
  }
  return best;
}

int Word::common_prefix(const Word& u, const Word& v) {
  const std::size_t n = std::min(u.codes_.size(), v.codes_.size());
  std::size_t i = 0;
  while (i < n && u.codes_[i] == v.codes_[i]) ++i;
  return static_cast<int>(i);
}

bool Word::is_prefix_of(const Word& w) const {
  return length() <= w.length() && common_prefix(*this, w) == length();
}

Word Word::prefix(int len) const {
  Word r;
  r.codes_.assign(codes_.begin(), codes_.begin() + len);
  return r;
}

Word Word::suffix_from(int pos) const {
  Word r;
  r.codes_.assign(codes_.begin() + pos, codes_.end());
  return r;
}

int Word::max_gen() const {
  int m = -1;
  for (LetterCode c : codes_) m = std::max(m, code_gen(c));
  return m;
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.codes() < b.codes();
}

Word reduce(std::span<const Letter> raw) { return Word::from_letters(raw); }

Word mul(const Word& u, const Word& v) {
  Word r = u;
  r.append(v);
  return r;
}

Word inv(const Word& u) { return u.inverse(); }

int word_distance(const Word& u, const Word& v) {
  // d(u, v) = |u^-1 v|; in a tree this is |u| + |v| - 2*(common prefix).
  const int l = Word::common_prefix(u, v);
  return u.length() + v.length() - 2 * l;
}

std::vector<Word> ball_words(int rank, int radius) {
  if (rank < 1 || rank > kMaxRank) throw std::invalid_argument("ball_words: bad rank");
  if (radius < 0) throw std::invalid_argument("ball_words: negative radius");
  std::vector<Word> out;
  out.emplace_back();
  std::size_t layer_begin = 0;
  for (int r = 1; r <= radius; ++r) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (int c = 0; c < 2 * rank; ++c) {
        const auto code = static_cast<LetterCode>(c);
        const Word& base = out[i];
        if (!base.empty() && codes_cancel(base.codes().back(), code)) continue;
        Word w = base;
        w.push(code);
        out.push_back(std::move(w));
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  // FNV-1a over the code bytes.
  std::size_t h = 14695981039346656037ull;
  for (LetterCode c : w.codes()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace projwalk
