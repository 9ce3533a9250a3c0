// Seeded random-walk driver with incremental reduction, sparse prefix
// checkpoints, and streaming tracking of the largest coset projection.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "projwalk/measure.hpp"
#include "projwalk/projection.hpp"
#include "projwalk/rng.hpp"
#include "projwalk/word.hpp"

namespace projwalk {

// Streaming maximum over blocks of subgroup letters in the evolving reduced
// word. `mask` has bit c set when letter code c generates the subgroup; a
// maximal mask-letter block of length m is exactly a coset with separation m.
class RunTracker {
 public:
  explicit RunTracker(std::uint64_t code_mask) : mask_(code_mask) {}

  static std::uint64_t axis_mask(int axis) {
    return (3ull << (2 * axis));
  }

  void on_push(LetterCode c) {
    const bool q = in_mask(c);
    if (!segs_.empty() && segs_.back().q == q) {
      ++segs_.back().len;
      return;
    }
    if (!segs_.empty() && segs_.back().q) buried_.insert(segs_.back().len);
    segs_.push_back({q, 1});
  }

  void on_pop() {
    Seg& top = segs_.back();
    if (--top.len == 0) {
      segs_.pop_back();
      if (!segs_.empty() && segs_.back().q)
        buried_.erase(buried_.find(segs_.back().len));
    }
  }

  // Longest subgroup-letter block in the current word.
  int sup() const {
    int best = buried_.empty() ? 0 : *buried_.rbegin();
    if (!segs_.empty() && segs_.back().q) best = std::max(best, segs_.back().len);
    return best;
  }

  // Length of the subgroup-letter block at the end of the word.
  int suffix_block() const {
    return (!segs_.empty() && segs_.back().q) ? segs_.back().len : 0;
  }

  void clear() {
    segs_.clear();
    buried_.clear();
  }

 private:
  bool in_mask(LetterCode c) const { return (mask_ >> c) & 1ull; }
  struct Seg {
    bool q;
    int len;
  };
  std::uint64_t mask_;
  std::vector<Seg> segs_;
  std::multiset<int> buried_;
};

// Reduced-word stack with an attached run tracker; amortized O(1) per letter.
class WalkState {
 public:
  explicit WalkState(std::uint64_t code_mask) : runs_(code_mask) {}

  void apply(LetterCode c) {
    if (!stack_.empty() && codes_cancel(stack_.back(), c)) {
      stack_.pop_back();
      runs_.on_pop();
    } else {
      stack_.push_back(c);
      runs_.on_push(c);
    }
  }
  void apply_word(const Word& w) {
    for (LetterCode c : w.codes()) apply(c);
  }

  int length() const { return static_cast<int>(stack_.size()); }
  const std::vector<LetterCode>& codes() const { return stack_; }
  Word word() const { return Word::from_codes(stack_); }
  int sup() const { return runs_.sup(); }
  int suffix_block() const { return runs_.suffix_block(); }
  void reserve(std::size_t n) { stack_.reserve(n); }
  void clear() {
    stack_.clear();
    runs_.clear();
  }

 private:
  std::vector<LetterCode> stack_;
  RunTracker runs_;
};

// Subgroup-letter mask for the streaming tracker of a projection system;
// nullopt when the system's subgroup is not generated by standard letters.
std::optional<std::uint64_t> streaming_mask(const ProjectionSystem& system);

struct WalkTrace {
  std::uint64_t master_seed = 0;
  std::uint64_t trial = 0;
  std::uint64_t n = 0;
  std::shared_ptr<const StepMeasure> measure;
  std::vector<std::uint16_t> increments;          // support indices, steps 1..n
  std::map<std::uint64_t, Word> checkpoints;      // step -> reduced prefix

  const Word& final_word() const { return checkpoints.at(n); }
  // Reduced prefix w_i; replays increments from the nearest checkpoint.
  Word prefix_at(std::uint64_t step, bool allow_replay = true) const;
  // Reduced segment w_i^-1 w_j, 0 <= i <= j <= n.
  Word segment(std::uint64_t i, std::uint64_t j, bool allow_replay = true) const;

  // One JSON record per checkpoint: {"step":..,"prefix":..,"sup":..}.
  std::string to_jsonl(const ProjectionSystem& system) const;
};

// Runs the walk; one RNG draw per step. The default checkpoint grid has
// spacing ceil(n / 64) plus the endpoints.
WalkTrace run_walk(const StepMeasure& measure, std::uint64_t n, std::uint64_t master_seed,
                   std::uint64_t trial,
                   const std::optional<std::vector<std::uint64_t>>& checkpoint_steps = std::nullopt);

// Just the endpoint w_n, without trace storage.
Word walk_endpoint(const StepMeasure& measure, std::uint64_t n, std::uint64_t master_seed,
                   std::uint64_t trial);

// Exact sup over all cosets of d_Z(1, w_n) for the trace's endpoint.
struct SupTracker {
  int sup = 0;
  Coset arg_coset;
  std::vector<std::pair<Coset, int>> separations;  // nonzero separations only
};
SupTracker track_sup(const WalkTrace& trace, const ProjectionSystem& system);

// d_Z(1, w_i^-1 w_j) for the requested coset.
int window_projection(const WalkTrace& trace, std::uint64_t i, std::uint64_t j,
                      const ProjectionSystem& system, const Coset& z, bool allow_replay = true);

}  // namespace projwalk
