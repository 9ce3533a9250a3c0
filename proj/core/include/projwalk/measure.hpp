// Finite symmetric step measures driving the random walk.

#pragma once

#include <utility>
#include <vector>

#include "projwalk/rng.hpp"
#include "projwalk/word.hpp"

namespace projwalk {

class StepMeasure {
 public:
  // Validates: probabilities strictly positive and summing to 1 within 1e-12,
  // and mu(g) == mu(g^-1) for every support element. Throws std::invalid_argument.
  explicit StepMeasure(std::vector<std::pair<Word, double>> support);

  static StepMeasure uniform(std::vector<Word> support);
  // The standard walk on F_rank: uniform on all 2*rank letters.
  static StepMeasure uniform_letters(int rank);

  int size() const { return static_cast<int>(words_.size()); }
  const Word& word(int i) const { return words_[static_cast<std::size_t>(i)]; }
  double prob(int i) const { return probs_[static_cast<std::size_t>(i)]; }
  double min_prob() const { return min_prob_; }
  int max_step_length() const { return max_step_length_; }
  bool all_unit_letters() const { return all_unit_letters_; }
  int rank() const { return rank_; }

  // Index of g in the support, or -1.
  int index_of(const Word& g) const;
  double prob_of(const Word& g) const;  // 0 if absent

  // Inverse-closed by validation, so the reflected measure permutes support.
  StepMeasure reflected() const;

  int sample_index(double u01) const;
  int sample_index(CounterRng& rng) const;

 private:
  std::vector<Word> words_;
  std::vector<double> probs_;
  std::vector<double> cum_;
  double min_prob_ = 0.0;
  int max_step_length_ = 0;
  bool all_unit_letters_ = false;
  bool pow2_equiprobable_ = false;
  int pow2_shift_ = 0;
  int rank_ = 0;
};

Word sample_step(const StepMeasure& measure, CounterRng& rng);

}  // namespace projwalk
