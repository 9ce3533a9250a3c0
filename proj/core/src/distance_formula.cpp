// Interval decomposition along a geodesic and the distance-formula lower
// bound: for K = 5B + 3L, the cosets with d_Z(1, h) >= K receive disjoint
// (up to s-fold overlap) subintervals of [0, N], giving
// sum_Z {{d_Z(1, h)}}_K <= 5 s L |h|.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "projwalk/experiments.hpp"
#include "projwalk/parallel.hpp"
#include "projwalk/rng.hpp"

namespace projwalk {

namespace {

// Coverage multiplicities of the interval family over {0..length}.
void fill_overlap_stats(const std::vector<ProjInterval>& intervals, long length,
                        DistanceFormulaReport& report) {
  std::vector<std::pair<long, int>> events;
  for (const ProjInterval& iv : intervals) {
    events.emplace_back(iv.i, +1);
    events.emplace_back(iv.t + 1, -1);
  }
  std::sort(events.begin(), events.end());
  report.max_overlap = 0;
  report.overlap_histogram.assign(1, 0);
  long pos = 0;
  long depth = 0;
  std::size_t e = 0;
  while (pos <= length) {
    while (e < events.size() && events[e].first == pos) depth += events[e++].second;
    const long next_change = e < events.size() ? events[e].first : length + 1;
    const long span_end = std::min(next_change, length + 1);
    if (depth >= static_cast<long>(report.overlap_histogram.size()))
      report.overlap_histogram.resize(static_cast<std::size_t>(depth) + 1, 0);
    report.overlap_histogram[static_cast<std::size_t>(depth)] += span_end - pos;
    report.max_overlap = std::max(report.max_overlap, depth);
    pos = span_end;
  }
}

}  // namespace

DistanceFormulaReport interval_decomposition(const Word& h, const ProjectionSystem& system,
                                             int K) {
  const SystemConstants& c = system.declared();
  if (K < 5 * c.behrstock + 3 * c.lipschitz)
    throw std::invalid_argument("interval_decomposition: K must be at least 5B + 3L");
  DistanceFormulaReport report;
  report.word = h.str();
  report.length = h.length();
  report.k_threshold = K;
  report.constants = c;
  report.bound = 5L * c.antichain * c.lipschitz * h.length();

  const int margin = 2 * c.behrstock + c.lipschitz;
  const auto mask = streaming_mask(system);
  std::vector<Coset> omega_cosets;
  if (mask) {
    // Letter-block systems: a coset with separation m is a maximal block of
    // subgroup letters [p, p+m), and the prefix distances ramp 0 -> m along it.
    int i = 0;
    while (i < h.length()) {
      if (!((*mask >> h.code_at(i)) & 1ull)) {
        ++i;
        continue;
      }
      int j = i;
      while (j < h.length() && ((*mask >> h.code_at(j)) & 1ull)) ++j;
      const int m = j - i;
      if (m >= K) {
        ProjInterval iv;
        iv.coset_rep = h.prefix(i).str();
        iv.i = i + margin;
        iv.t = i + m - margin;
        iv.d_value = m;
        iv.endpoint_sep = m - 2 * margin;
        report.intervals.push_back(std::move(iv));
        omega_cosets.push_back(Coset{h.prefix(i)});
      }
      i = j;
    }
  } else {
    for (const auto& [coset, d] : system.coset_separations(h)) {
      if (d < K) continue;
      ProjInterval iv;
      iv.coset_rep = coset.rep.str();
      iv.d_value = d;
      long largest = 0;
      for (int k = 0; k <= h.length(); ++k)
        if (system.proj_distance(Word{}, h.prefix(k), coset) <= margin) largest = k;
      iv.i = largest;
      iv.t = -1;
      for (int k = static_cast<int>(largest) + 1; k <= h.length(); ++k) {
        if (system.proj_distance(h.prefix(k), h, coset) <= margin) {
          iv.t = k;
          break;
        }
      }
      if (iv.t < 0) iv.t = h.length();
      iv.endpoint_sep = system.proj_distance(h.prefix(static_cast<int>(iv.i)),
                                             h.prefix(static_cast<int>(iv.t)), coset);
      report.intervals.push_back(std::move(iv));
      omega_cosets.push_back(coset);
    }
  }

  report.large_coset_count = static_cast<long>(report.intervals.size());
  for (const ProjInterval& iv : report.intervals) {
    report.sum_truncated += iv.d_value;
    if (iv.endpoint_sep < c.behrstock + c.lipschitz) report.endpoint_sep_ok = false;
  }
  for (std::size_t a = 0; a < report.intervals.size(); ++a) {
    for (std::size_t b = a + 1; b < report.intervals.size(); ++b) {
      if (!system.transverse(omega_cosets[a], omega_cosets[b])) continue;
      const ProjInterval& x = report.intervals[a];
      const ProjInterval& y = report.intervals[b];
      if (std::max(x.i, y.i) <= std::min(x.t, y.t)) report.disjoint_for_transverse = false;
    }
  }
  fill_overlap_stats(report.intervals, report.length, report);
  report.overlap_le_s = report.max_overlap <= c.antichain;
  return report;
}

long large_coset_count(const Word& h, const ProjectionSystem& system, int K) {
  const auto mask = streaming_mask(system);
  if (mask) {
    long count = 0;
    int i = 0;
    while (i < h.length()) {
      if (!((*mask >> h.code_at(i)) & 1ull)) {
        ++i;
        continue;
      }
      int j = i;
      while (j < h.length() && ((*mask >> h.code_at(j)) & 1ull)) ++j;
      if (j - i >= K) ++count;
      i = j;
    }
    return count;
  }
  long count = 0;
  for (const auto& [coset, d] : system.coset_separations(h))
    if (d >= K) ++count;
  return count;
}

DistanceFormulaSweep distance_formula_sweep(const ProjectionSystem& system, std::int64_t words,
                                            long max_len, std::optional<int> K,
                                            std::uint64_t seed, int workers) {
  const SystemConstants& c = system.declared();
  const int k_thr = K.value_or(5 * c.behrstock + 3 * c.lipschitz);
  DistanceFormulaSweep sweep;
  sweep.words = words;
  sweep.max_len = max_len;
  sweep.k_threshold = k_thr;

  const bool letter_blocks = streaming_mask(system).has_value();
  const std::function<DistanceFormulaSweep::Row(std::int64_t)> one = [&](std::int64_t i) {
    CounterRng len_rng(seed, static_cast<std::uint64_t>(2 * i));
    const long length =
        1 + static_cast<long>(len_rng.next_u64() % static_cast<std::uint64_t>(max_len));
    const Word h =
        random_reduced_word(system.rank(), length, seed, static_cast<std::uint64_t>(2 * i + 1));
    const DistanceFormulaReport rep = interval_decomposition(h, system, k_thr);
    DistanceFormulaSweep::Row row;
    row.index = i;
    row.length = rep.length;
    row.large_cosets = rep.large_coset_count;
    row.sum_truncated = rep.sum_truncated;
    row.bound = rep.bound;
    row.max_overlap = rep.max_overlap;
    row.ok = rep.all_ok() && (!letter_blocks || rep.sum_truncated <= rep.length);
    return row;
  };
  sweep.rows = parallel_map<DistanceFormulaSweep::Row>(words, workers, one);

  for (const auto& row : sweep.rows) {
    if (!row.ok) ++sweep.violations;
    if (letter_blocks && row.sum_truncated > row.length) ++sweep.cyclic_sharp_violations;
  }
  // Keep a few full reports for the failures, if any.
  for (const auto& row : sweep.rows) {
    if (row.ok || sweep.failures.size() >= 4) continue;
    const Word h = random_reduced_word(system.rank(), row.length, seed,
                                       static_cast<std::uint64_t>(2 * row.index + 1));
    sweep.failures.push_back(interval_decomposition(h, system, k_thr));
  }
  return sweep;
}

}  // namespace projwalk
