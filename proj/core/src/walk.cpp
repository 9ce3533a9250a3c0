#include "projwalk/walk.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace projwalk {

std::optional<std::uint64_t> streaming_mask(const ProjectionSystem& system) {
  if (system.flavor() == Flavor::kCyclicCoset)
    return RunTracker::axis_mask(system.axis());
  if (system.graph().single_vertex()) {
    std::uint64_t mask = 0;
    for (int c = 0; c < 2 * system.rank(); ++c)
      if (system.graph().base_loop(static_cast<LetterCode>(c))) mask |= 1ull << c;
    return mask;
  }
  return std::nullopt;
}

Word WalkTrace::prefix_at(std::uint64_t step, bool allow_replay) const {
  if (step > n) throw std::invalid_argument("prefix_at: step beyond trace length");
  auto it = checkpoints.find(step);
  if (it != checkpoints.end()) return it->second;
  if (!allow_replay)
    throw std::runtime_error("prefix_at: step " + std::to_string(step) +
                             " is not checkpointed and replay is not permitted");
  // Replay from the nearest checkpoint at or below `step`.
  auto base = checkpoints.upper_bound(step);
  if (base == checkpoints.begin())
    throw std::runtime_error("prefix_at: no checkpoint at or below requested step");
  --base;
  Word w = base->second;
  for (std::uint64_t s = base->first + 1; s <= step; ++s)
    w.append(measure->word(increments[static_cast<std::size_t>(s - 1)]));
  return w;
}

Word WalkTrace::segment(std::uint64_t i, std::uint64_t j, bool allow_replay) const {
  if (i > j) throw std::invalid_argument("segment: i > j");
  const Word wi = prefix_at(i, allow_replay);
  const Word wj = prefix_at(j, allow_replay);
  return mul(wi.inverse(), wj);
}

std::string WalkTrace::to_jsonl(const ProjectionSystem& system) const {
  std::string out;
  for (const auto& [step, prefix] : checkpoints) {
    const nlohmann::json rec = {{"step", step},
                                {"prefix", prefix.str()},
                                {"sup", system.sup_projection(prefix).first}};
    out += rec.dump();
    out += '\n';
  }
  return out;
}

WalkTrace run_walk(const StepMeasure& measure, std::uint64_t n, std::uint64_t master_seed,
                   std::uint64_t trial,
                   const std::optional<std::vector<std::uint64_t>>& checkpoint_steps) {
  if (n < 1) throw std::invalid_argument("run_walk: n must be >= 1");
  WalkTrace trace;
  trace.master_seed = master_seed;
  trace.trial = trial;
  trace.n = n;
  trace.measure = std::make_shared<StepMeasure>(measure);
  trace.increments.reserve(static_cast<std::size_t>(n));

  std::set<std::uint64_t> marks;
  if (checkpoint_steps) {
    for (std::uint64_t s : *checkpoint_steps) {
      if (s > n) throw std::invalid_argument("run_walk: checkpoint beyond n");
      marks.insert(s);
    }
  } else {
    const std::uint64_t spacing = (n + 63) / 64;
    for (std::uint64_t s = spacing; s < n; s += spacing) marks.insert(s);
  }
  marks.insert(0);
  marks.insert(n);

  CounterRng rng(master_seed, trial);
  WalkState state(0);
  state.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n, 1u << 22)));
  auto mark = marks.begin();
  if (*mark == 0) {
    trace.checkpoints.emplace(0, Word{});
    ++mark;
  }
  for (std::uint64_t s = 1; s <= n; ++s) {
    const int idx = measure.sample_index(rng);
    trace.increments.push_back(static_cast<std::uint16_t>(idx));
    state.apply_word(measure.word(idx));
    if (mark != marks.end() && *mark == s) {
      trace.checkpoints.emplace(s, state.word());
      ++mark;
    }
  }
  return trace;
}

Word walk_endpoint(const StepMeasure& measure, std::uint64_t n, std::uint64_t master_seed,
                   std::uint64_t trial) {
  CounterRng rng(master_seed, trial);
  WalkState state(0);
  for (std::uint64_t s = 0; s < n; ++s)
    state.apply_word(measure.word(measure.sample_index(rng)));
  return state.word();
}

SupTracker track_sup(const WalkTrace& trace, const ProjectionSystem& system) {
  SupTracker tracker;
  const auto mask = streaming_mask(system);
  if (mask) {
    // Streaming replay of the trace through the run tracker.
    WalkState state(*mask);
    for (std::uint16_t idx : trace.increments) state.apply_word(trace.measure->word(idx));
    tracker.sup = state.sup();
  }
  tracker.separations = system.coset_separations(trace.final_word());
  int best = 0;
  for (const auto& [coset, d] : tracker.separations) {
    if (d > best) {
      best = d;
      tracker.arg_coset = coset;
    }
  }
  if (!mask) tracker.sup = best;
  if (mask && tracker.sup != best)
    throw std::logic_error("track_sup: streaming sup disagrees with coset enumeration");
  return tracker;
}

int window_projection(const WalkTrace& trace, std::uint64_t i, std::uint64_t j,
                      const ProjectionSystem& system, const Coset& z, bool allow_replay) {
  return system.proj_distance(Word{}, trace.segment(i, j, allow_replay), z);
}

}  // namespace projwalk
