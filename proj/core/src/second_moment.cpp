// Second-moment diagnostics: indicators W_i (the walk writes x_n at step i),
// L_i / R_i (small flanking projections), Y_i = L_i W_i R_i, and the
// second-moment lower bound on P(X > 0) for X = sum_i Y_i.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "projwalk/experiments.hpp"
#include "projwalk/parallel.hpp"

namespace projwalk {

namespace {

struct ChunkAccum {
  std::vector<std::int64_t> y_counts;
  std::int64_t far_hits = 0;
  std::int64_t w_far_hits = 0;
  std::vector<std::int64_t> bucket_hits;
  std::vector<std::int32_t> x_values;
  std::int64_t x_sum = 0;
  std::int64_t x2_sum = 0;
  std::int64_t x_pos = 0;
};

}  // namespace

SecondMomentReport second_moment_experiment(const ProjectionSystem& system,
                                            const StepMeasure& measure, std::uint64_t n,
                                            std::int64_t trials, double eps1,
                                            std::optional<double> eps2_opt, std::uint64_t seed,
                                            int workers) {
  const XnChoice xn = choose_xn(system, measure, n, eps1);
  const double log_n = std::log(static_cast<double>(n));
  const double eps2 = eps2_opt.value_or(xn.eps2);
  if (eps2 * log_n < 3.0 - 1e-9)
    throw std::invalid_argument("second_moment_experiment: need eps2 log n >= 3");
  const int disp = system.proj_distance(Word{}, xn.x_n, system.base_coset());
  if (disp + 1e-9 < eps2 * log_n)
    throw std::invalid_argument("second_moment_experiment: eps2 exceeds x_n displacement");

  SecondMomentReport report;
  report.n = n;
  report.trials = trials;
  report.k = xn.k;
  report.eps1 = eps1;
  report.eps2 = eps2;
  report.x_n = xn.x_n.str();
  report.p_n = xn.p_n;
  report.threshold = eps2 * log_n / 3.0;

  const int k = xn.k;
  const auto m = static_cast<std::int64_t>(n) - k;  // indices 1..m
  if (m < 1) throw std::invalid_argument("second_moment_experiment: n too small");
  const int thr = static_cast<int>(std::floor(report.threshold + 1e-9));
  const long gap_min = static_cast<long>(std::ceil(log_n - 1e-12));

  const auto mask = streaming_mask(system);
  if (!mask) throw std::invalid_argument("second_moment_experiment: needs a letter-block system");
  Word axis_letter;
  axis_letter.push(letter_code(system.axis(), +1));
  const int axis_idx = measure.index_of(axis_letter);
  const bool unit = measure.all_unit_letters();

  // Gap buckets [gap_min * 2^b, gap_min * 2^{b+1}).
  std::vector<std::pair<long, long>> buckets;
  for (long lo = gap_min; lo < m; lo *= 2) buckets.emplace_back(lo, std::min(lo * 2, static_cast<long>(m)));
  const auto bucket_of = [&](long gap) {
    for (std::size_t b = 0; b < buckets.size(); ++b)
      if (gap >= buckets[b].first && gap < buckets[b].second) return static_cast<int>(b);
    return -1;
  };

  constexpr std::int64_t kChunk = 64;
  const std::int64_t chunk_count = (trials + kChunk - 1) / kChunk;

  const std::function<ChunkAccum(std::int64_t)> run_chunk = [&](std::int64_t chunk) {
    ChunkAccum acc;
    acc.y_counts.assign(static_cast<std::size_t>(m) + 1, 0);
    acc.bucket_hits.assign(buckets.size(), 0);
    std::vector<std::uint16_t> incs(n + 1);
    std::vector<std::uint8_t> lok(n + 1), rok(n + 1), wok(n + 1);
    std::vector<std::uint32_t> ones, w_ones;
    WalkState forward(*mask), backward(*mask);

    const std::int64_t first = chunk * kChunk;
    const std::int64_t last = std::min(first + kChunk, trials);
    for (std::int64_t trial = first; trial < last; ++trial) {
      CounterRng rng(seed, static_cast<std::uint64_t>(trial));
      forward.clear();
      backward.clear();
      ones.clear();
      w_ones.clear();

      int wrun = 0;
      lok[0] = 1;
      for (std::uint64_t s = 1; s <= n; ++s) {
        const int idx = measure.sample_index(rng);
        incs[s] = static_cast<std::uint16_t>(idx);
        forward.apply_word(measure.word(idx));
        lok[s] = forward.suffix_block() <= thr;
        if (unit) {
          wrun = idx == axis_idx ? wrun + 1 : 0;
          wok[s] = wrun >= k;
        } else {
          // Reduced product of the last k steps must equal x_n.
          if (s >= static_cast<std::uint64_t>(k)) {
            Word prod;
            for (std::uint64_t t = s - k + 1; t <= s; ++t) prod.append(measure.word(incs[t]));
            wok[s] = prod == xn.x_n;
          } else {
            wok[s] = 0;
          }
        }
      }
      rok[n] = 1;
      for (std::uint64_t s = n; s >= 1; --s) {
        backward.apply_word(measure.word(incs[s]).inverse());
        rok[s - 1] = backward.suffix_block() <= thr;
      }

      for (std::int64_t i = 1; i <= m; ++i) {
        const auto j = static_cast<std::uint64_t>(i + k);
        if (wok[j]) {
          w_ones.push_back(static_cast<std::uint32_t>(i));
          if (lok[static_cast<std::size_t>(i)] && rok[j]) {
            ones.push_back(static_cast<std::uint32_t>(i));
            ++acc.y_counts[static_cast<std::size_t>(i)];
          }
        }
      }

      const auto x = static_cast<std::int64_t>(ones.size());
      acc.x_values.push_back(static_cast<std::int32_t>(x));
      acc.x_sum += x;
      acc.x2_sum += x * x;
      if (x > 0) ++acc.x_pos;

      // Far pairs = all pairs minus near pairs (two-pointer on sorted indices).
      const auto near_pairs = [&](const std::vector<std::uint32_t>& v) {
        std::int64_t near = 0;
        std::size_t lo = 0;
        for (std::size_t hi = 0; hi < v.size(); ++hi) {
          while (v[hi] - v[lo] >= static_cast<std::uint32_t>(gap_min)) ++lo;
          near += static_cast<std::int64_t>(hi - lo);
        }
        return near;
      };
      acc.far_hits += x * (x - 1) / 2 - near_pairs(ones);
      const auto xw = static_cast<std::int64_t>(w_ones.size());
      acc.w_far_hits += xw * (xw - 1) / 2 - near_pairs(w_ones);
      for (std::size_t a = 0; a < ones.size(); ++a) {
        for (std::size_t b = a + 1; b < ones.size(); ++b) {
          const int bucket = bucket_of(static_cast<long>(ones[b] - ones[a]));
          if (bucket >= 0) ++acc.bucket_hits[static_cast<std::size_t>(bucket)];
        }
      }
    }
    return acc;
  };

  const std::vector<ChunkAccum> chunks =
      parallel_map<ChunkAccum>(chunk_count, workers, run_chunk);

  report.y_counts.assign(static_cast<std::size_t>(m) + 1, 0);
  std::vector<std::int64_t> bucket_hits(buckets.size(), 0);
  std::vector<std::int32_t> x_values;
  x_values.reserve(static_cast<std::size_t>(trials));
  std::int64_t far_hits = 0, w_far_hits = 0, x_sum = 0, x2_sum = 0, x_pos = 0;
  for (const ChunkAccum& acc : chunks) {
    for (std::size_t i = 0; i < report.y_counts.size(); ++i) report.y_counts[i] += acc.y_counts[i];
    for (std::size_t b = 0; b < bucket_hits.size(); ++b) bucket_hits[b] += acc.bucket_hits[b];
    x_values.insert(x_values.end(), acc.x_values.begin(), acc.x_values.end());
    far_hits += acc.far_hits;
    w_far_hits += acc.w_far_hits;
    x_sum += acc.x_sum;
    x2_sum += acc.x2_sum;
    x_pos += acc.x_pos;
  }

  report.undersampled = x_sum == 0;
  const double t = static_cast<double>(trials);
  report.p_x_positive = static_cast<double>(x_pos) / t;

  // Count of index pairs (i < j) with j - i in [lo, hi).
  const auto index_pairs_in = [&](long lo, long hi) {
    std::int64_t total = 0;
    for (long g = lo; g < hi && g < m; ++g) total += m - g;
    return total;
  };
  const std::int64_t far_index_pairs = index_pairs_in(gap_min, static_cast<long>(m));

  if (!report.undersampled) {
    report.mean_y_ratio =
        static_cast<double>(x_sum) / (t * static_cast<double>(m) * xn.p_n);
    if (far_index_pairs > 0) {
      report.far_pair_ratio = static_cast<double>(far_hits) /
                              (t * static_cast<double>(far_index_pairs) * xn.p_n * xn.p_n);
      report.w_far_pair_ratio = static_cast<double>(w_far_hits) /
                                (t * static_cast<double>(far_index_pairs) * xn.p_n * xn.p_n);
    }
    report.second_moment_bound =
        static_cast<double>(x_sum) * static_cast<double>(x_sum) /
        (t * static_cast<double>(x2_sum));
    for (std::size_t b = 0; b < buckets.size(); ++b) {
      PairBucket pb;
      pb.gap_lo = static_cast<double>(buckets[b].first);
      pb.gap_hi = static_cast<double>(buckets[b].second);
      pb.index_pairs = index_pairs_in(buckets[b].first, buckets[b].second);
      pb.hits = bucket_hits[b];
      pb.ratio = pb.index_pairs > 0
                     ? static_cast<double>(pb.hits) /
                           (t * static_cast<double>(pb.index_pairs) * xn.p_n * xn.p_n)
                     : 0.0;
      report.pair_buckets.push_back(pb);
    }

    // Bootstrap standard error of the second-moment bound.
    constexpr int kResamples = 200;
    CounterRng boot(seed, 0xb007ull << 32);
    std::vector<double> bounds;
    bounds.reserve(kResamples);
    for (int b = 0; b < kResamples; ++b) {
      std::int64_t bs = 0, bs2 = 0;
      for (std::int64_t i = 0; i < trials; ++i) {
        const auto pick = static_cast<std::size_t>(boot.next_u64() %
                                                   static_cast<std::uint64_t>(trials));
        const std::int64_t x = x_values[pick];
        bs += x;
        bs2 += x * x;
      }
      if (bs2 > 0)
        bounds.push_back(static_cast<double>(bs) * static_cast<double>(bs) /
                         (t * static_cast<double>(bs2)));
    }
    const double mb = mean_of(bounds);
    double var = 0.0;
    for (double v : bounds) var += (v - mb) * (v - mb);
    report.bootstrap_se =
        bounds.size() > 1 ? std::sqrt(var / static_cast<double>(bounds.size() - 1)) : 0.0;
  }
  return report;
}

}  // namespace projwalk
