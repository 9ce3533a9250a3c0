// Monte Carlo experiments over the walk engine, plus the deterministic
// distance-formula decomposition. Reports serialize to JSON (full) and CSV
// (flat tables with fixed columns); bodies are bit-deterministic functions
// of (config, seed), independent of the worker count.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "projwalk/measure.hpp"
#include "projwalk/projection.hpp"
#include "projwalk/stats_util.hpp"
#include "projwalk/walk.hpp"
#include "projwalk/word.hpp"

namespace projwalk {

// ---------------------------------------------------------------------------
// Tail decay of d_Z(1, w_n): empirical conditional tails on an (R, t) grid.

struct TailCell {
  int r = 0;
  int t = 0;
  long count_cond = 0;
  long count_hit = 0;
  double p_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  bool flagged = false;  // too few conditioning events
};

struct TailReport {
  std::string coset_rep;
  std::uint64_t n = 0;
  std::int64_t trials = 0;
  std::vector<int> r_grid;
  int t_max = 0;
  std::vector<std::int64_t> histogram;  // counts of d = 0, 1, ...
  std::vector<TailCell> cells;
  double m_hat = 0.0;        // fitted decay constant from the R = 0 tail
  double r_squared = 0.0;    // of the R = 0 log-tail fit
  int fit_bins = 0;
  std::vector<double> slope_per_r;  // log-tail slope per R (nan when unfittable)
  bool degenerate = false;
  std::string config_hash;

  std::string to_json() const;
  std::string to_csv() const;  // columns: R,t,count_cond,count_hit,p_hat,ci_lo,ci_hi
};

TailReport tail_experiment(const ProjectionSystem& system, const StepMeasure& measure,
                           const Coset& z, std::uint64_t n, std::int64_t trials,
                           const std::vector<int>& r_grid, int t_max, std::uint64_t seed,
                           int workers);

// ---------------------------------------------------------------------------
// Largest-projection scaling: sup_Z d_Z(1, w_n) against the log window.

struct ScalingPerN {
  std::uint64_t n = 0;
  double coverage = 0.0;  // fraction of sup in [log(n)/C, C log(n)]
  double coverage_lo = 0.0, coverage_hi = 0.0;
  double mean_sup = 0.0;
  bool degenerate = false;  // log n == 0
};

struct ScalingReport {
  std::vector<std::uint64_t> n_list;
  std::int64_t trials = 0;
  double window_c = 4.0;
  std::uint64_t master_seed = 0;
  bool include_arg_coset = true;
  std::vector<std::vector<int>> sups;             // [n index][trial]
  std::vector<std::vector<std::string>> arg_cosets;  // empty when not included
  std::vector<ScalingPerN> per_n;
  LinearFit mean_sup_vs_log_n;
  std::string config_hash;

  std::string to_json() const;
  std::string to_csv() const;  // columns: n,trial,sup,arg_coset,seed
};

ScalingReport scaling_experiment(const ProjectionSystem& system, const StepMeasure& measure,
                                 const std::vector<std::uint64_t>& n_list, std::int64_t trials,
                                 double window_c, std::uint64_t seed, int workers,
                                 bool include_arg_coset = true);

// ---------------------------------------------------------------------------
// Second-moment diagnostics.

struct XnChoice {
  Word x_n;
  double p_n = 0.0;
  int k = 0;
  double eps1 = 0.0;
  double eps2 = 0.0;  // chosen so d_{Y0}(1, x_n) = eps2 log n exactly
};

// Picks x_n = axis^k with k = floor(eps1 log n); requires the axis letter in
// the support and eps1 < 1 / log(1/c) for c the minimal support probability.
XnChoice choose_xn(const ProjectionSystem& system, const StepMeasure& measure, std::uint64_t n,
                   double eps1);

struct PairBucket {
  double gap_lo = 0.0, gap_hi = 0.0;  // |i - j| range
  std::int64_t index_pairs = 0;       // index pairs per trial in this band
  std::int64_t hits = 0;              // sum of Y_i Y_j over trials
  double ratio = 0.0;                 // hits / (trials * index_pairs * p_n^2)
};

struct SecondMomentReport {
  std::uint64_t n = 0;
  std::int64_t trials = 0;
  int k = 0;
  double eps1 = 0.0, eps2 = 0.0;
  std::string x_n;
  double p_n = 0.0;
  double threshold = 0.0;  // eps2 log(n) / 3 on the flanking projections
  std::vector<std::int64_t> y_counts;  // per index i, sum over trials of Y_i
  double mean_y_ratio = 0.0;           // mean_i Ehat(Y_i) / p_n
  double far_pair_ratio = 0.0;         // Ehat(Y_i Y_j) / p_n^2 over |i-j| >= log n
  std::vector<PairBucket> pair_buckets;
  double w_far_pair_ratio = 0.0;       // same for the raw W indicators
  double p_x_positive = 0.0;
  double second_moment_bound = 0.0;    // Ehat(X)^2 / Ehat(X^2)
  double bootstrap_se = 0.0;           // of the bound
  bool undersampled = false;
  std::string config_hash;

  std::string to_json() const;
  std::string to_csv() const;  // columns: i,y_count,y_ratio
};

SecondMomentReport second_moment_experiment(const ProjectionSystem& system,
                                            const StepMeasure& measure, std::uint64_t n,
                                            std::int64_t trials, double eps1,
                                            std::optional<double> eps2, std::uint64_t seed,
                                            int workers);

// ---------------------------------------------------------------------------
// Distance-formula lower bound: interval decomposition along a geodesic.

struct ProjInterval {
  std::string coset_rep;
  long i = 0;  // largest k with d_Z(h_0, h_k) <= 2B + L
  long t = 0;  // smallest k > i with d_Z(h_k, h_N) <= 2B + L
  long d_value = 0;
  long endpoint_sep = 0;  // d_Z(h_i, h_t)
};

struct DistanceFormulaReport {
  std::string word;
  long length = 0;
  int k_threshold = 0;  // K
  SystemConstants constants;
  std::vector<ProjInterval> intervals;
  std::vector<long> overlap_histogram;  // index count per coverage multiplicity
  long max_overlap = 0;
  long sum_truncated = 0;
  long bound = 0;  // 5 s L |h|
  long large_coset_count = 0;
  bool disjoint_for_transverse = true;
  bool overlap_le_s = true;
  bool endpoint_sep_ok = true;  // every interval has d_Z(h_i, h_t) >= B + L

  bool all_ok() const {
    return disjoint_for_transverse && overlap_le_s && endpoint_sep_ok && sum_truncated <= bound;
  }
  std::string to_json() const;
};

DistanceFormulaReport interval_decomposition(const Word& h, const ProjectionSystem& system, int K);
long large_coset_count(const Word& h, const ProjectionSystem& system, int K);

// Aggregate over randomly generated words.
struct DistanceFormulaSweep {
  std::int64_t words = 0;
  long max_len = 0;
  int k_threshold = 0;
  std::int64_t violations = 0;
  std::int64_t cyclic_sharp_violations = 0;  // sum > |h| for letter-block systems
  std::vector<DistanceFormulaReport> failures;  // first few
  // flat per-word rows for the CSV
  struct Row {
    std::int64_t index;
    long length;
    long large_cosets;
    long sum_truncated;
    long bound;
    long max_overlap;
    bool ok;
  };
  std::vector<Row> rows;
  std::string config_hash;

  std::string to_json() const;
  std::string to_csv() const;  // columns: word_index,length,large_cosets,sum_truncated,bound,max_overlap,ok
};

DistanceFormulaSweep distance_formula_sweep(const ProjectionSystem& system, std::int64_t words,
                                            long max_len, std::optional<int> K,
                                            std::uint64_t seed, int workers);

// Uniform random reduced word of the given length.
Word random_reduced_word(int rank, long length, std::uint64_t seed, std::uint64_t stream);

}  // namespace projwalk
