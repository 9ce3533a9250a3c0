#include "projwalk/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace projwalk {

StepMeasure::StepMeasure(std::vector<std::pair<Word, double>> support) {
  if (support.empty()) throw std::invalid_argument("StepMeasure: empty support");
  words_.reserve(support.size());
  probs_.reserve(support.size());
  std::unordered_map<Word, double, WordHash> by_word;
  double sum = 0.0;
  for (auto& [w, p] : support) {
    if (!(p > 0.0)) throw std::invalid_argument("StepMeasure: probabilities must be positive");
    if (by_word.count(w)) throw std::invalid_argument("StepMeasure: duplicate support word " + w.str());
    by_word.emplace(w, p);
    sum += p;
    words_.push_back(w);
    probs_.push_back(p);
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("StepMeasure: probabilities sum to " + std::to_string(sum));
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const auto it = by_word.find(words_[i].inverse());
    if (it == by_word.end() || it->second != probs_[i])
      throw std::invalid_argument("StepMeasure: support is not symmetric at " + words_[i].str());
  }

  cum_.resize(probs_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    acc += probs_[i];
    cum_[i] = acc;
  }
  cum_.back() = 1.0;

  min_prob_ = *std::min_element(probs_.begin(), probs_.end());
  all_unit_letters_ = true;
  rank_ = 1;
  for (const Word& w : words_) {
    max_step_length_ = std::max(max_step_length_, w.length());
    if (w.length() != 1) all_unit_letters_ = false;
    rank_ = std::max(rank_, w.max_gen() + 1);
  }
  const double equal = probs_.front();
  const bool equiprobable =
      std::all_of(probs_.begin(), probs_.end(), [&](double p) { return p == equal; });
  if (equiprobable && std::has_single_bit(words_.size())) {
    pow2_equiprobable_ = true;
    pow2_shift_ = 64 - std::countr_zero(words_.size());
  }
}

StepMeasure StepMeasure::uniform(std::vector<Word> support) {
  std::vector<std::pair<Word, double>> s;
  s.reserve(support.size());
  const double p = 1.0 / static_cast<double>(support.size());
  for (Word& w : support) s.emplace_back(std::move(w), p);
  return StepMeasure(std::move(s));
}

StepMeasure StepMeasure::uniform_letters(int rank) {
  std::vector<Word> letters;
  for (int g = 0; g < rank; ++g) {
    for (int sign : {+1, -1}) {
      Word w;
      w.push(letter_code(g, sign));
      letters.push_back(std::move(w));
    }
  }
  return uniform(std::move(letters));
}

int StepMeasure::index_of(const Word& g) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] == g) return static_cast<int>(i);
  return -1;
}

double StepMeasure::prob_of(const Word& g) const {
  const int i = index_of(g);
  return i < 0 ? 0.0 : probs_[static_cast<std::size_t>(i)];
}

StepMeasure StepMeasure::reflected() const {
  std::vector<std::pair<Word, double>> s;
  s.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) s.emplace_back(words_[i].inverse(), probs_[i]);
  return StepMeasure(std::move(s));
}

int StepMeasure::sample_index(double u01) const {
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), u01);
  const auto i = static_cast<std::size_t>(it - cum_.begin());
  return static_cast<int>(std::min(i, cum_.size() - 1));
}

int StepMeasure::sample_index(CounterRng& rng) const {
  if (pow2_equiprobable_) {
    // Exact for equiprobable power-of-two supports; no float rounding.
    return static_cast<int>(rng.next_u64() >> pow2_shift_);
  }
  return sample_index(rng.next_u01());
}

Word sample_step(const StepMeasure& measure, CounterRng& rng) {
  return measure.word(measure.sample_index(rng));
}

}  // namespace projwalk
