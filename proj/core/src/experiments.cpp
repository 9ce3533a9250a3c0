// Tail and scaling experiments, and x_n selection.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "projwalk/experiments.hpp"
#include "projwalk/parallel.hpp"

namespace projwalk {

TailReport tail_experiment(const ProjectionSystem& system, const StepMeasure& measure,
                           const Coset& z, std::uint64_t n, std::int64_t trials,
                           const std::vector<int>& r_grid, int t_max, std::uint64_t seed,
                           int workers) {
  if (trials < 100) throw std::invalid_argument("tail_experiment: need at least 100 trials");
  TailReport report;
  report.coset_rep = z.rep.str();
  report.n = n;
  report.trials = trials;
  report.r_grid = r_grid;
  report.t_max = t_max;

  const std::function<int(std::int64_t)> one = [&](std::int64_t trial) {
    const Word w = walk_endpoint(measure, n, seed, static_cast<std::uint64_t>(trial));
    return system.proj_distance(Word{}, w, z);
  };
  const std::vector<int> values = parallel_map<int>(trials, workers, one);

  int max_d = 0;
  for (int d : values) max_d = std::max(max_d, d);
  report.histogram.assign(static_cast<std::size_t>(max_d) + 1, 0);
  for (int d : values) ++report.histogram[static_cast<std::size_t>(d)];

  // tail_ge[v] = #{d >= v}
  std::vector<std::int64_t> tail_ge(static_cast<std::size_t>(max_d) + 2, 0);
  for (int v = max_d; v >= 0; --v)
    tail_ge[static_cast<std::size_t>(v)] =
        tail_ge[static_cast<std::size_t>(v) + 1] + report.histogram[static_cast<std::size_t>(v)];
  const auto tail_at = [&](long v) -> std::int64_t {
    if (v <= 0) return trials;
    if (v > max_d) return 0;
    return tail_ge[static_cast<std::size_t>(v)];
  };

  constexpr long kMinBinHits = 20;
  for (int r : r_grid) {
    std::vector<double> xs, ys;
    for (int t = 0; t <= t_max; ++t) {
      TailCell cell;
      cell.r = r;
      cell.t = t;
      cell.count_cond = tail_at(r);
      cell.count_hit = tail_at(r + t);
      cell.flagged = cell.count_cond < kMinBinHits;
      if (cell.count_cond > 0) {
        cell.p_hat = static_cast<double>(cell.count_hit) / static_cast<double>(cell.count_cond);
        const WilsonInterval ci = wilson_interval(cell.count_hit, cell.count_cond);
        cell.ci_lo = ci.lo;
        cell.ci_hi = ci.hi;
      } else {
        cell.p_hat = std::nan("");
        cell.ci_lo = std::nan("");
        cell.ci_hi = std::nan("");
      }
      if (!cell.flagged && cell.count_hit >= kMinBinHits && cell.p_hat > 0.0) {
        xs.push_back(t);
        ys.push_back(std::log(cell.p_hat));
      }
      report.cells.push_back(cell);
    }
    const LinearFit fit = fit_line(xs, ys);
    report.slope_per_r.push_back(fit.valid ? fit.slope : std::nan(""));
    if (r == 0) {
      report.fit_bins = fit.points;
      if (fit.valid && fit.slope < 0.0) {
        report.m_hat = -1.0 / fit.slope;
        report.r_squared = fit.r_squared;
      } else {
        report.degenerate = true;
      }
    }
  }
  return report;
}

ScalingReport scaling_experiment(const ProjectionSystem& system, const StepMeasure& measure,
                                 const std::vector<std::uint64_t>& n_list, std::int64_t trials,
                                 double window_c, std::uint64_t seed, int workers,
                                 bool include_arg_coset) {
  if (n_list.empty()) throw std::invalid_argument("scaling_experiment: empty n list");
  if (!std::is_sorted(n_list.begin(), n_list.end()))
    throw std::invalid_argument("scaling_experiment: n list must be increasing");
  if (window_c <= 1.0) throw std::invalid_argument("scaling_experiment: window constant must be > 1");

  ScalingReport report;
  report.n_list = n_list;
  report.trials = trials;
  report.window_c = window_c;
  report.master_seed = seed;
  report.include_arg_coset = include_arg_coset;

  const auto mask = streaming_mask(system);

  for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
    const std::uint64_t n = n_list[ni];
    struct Sample {
      int sup;
      std::string arg;
    };
    const std::function<Sample(std::int64_t)> one = [&](std::int64_t trial) {
      const std::uint64_t stream = (static_cast<std::uint64_t>(ni) << 40) |
                                   static_cast<std::uint64_t>(trial);
      Sample s;
      if (mask) {
        CounterRng rng(seed, stream);
        WalkState state(*mask);
        for (std::uint64_t step = 0; step < n; ++step)
          state.apply_word(measure.word(measure.sample_index(rng)));
        s.sup = state.sup();
        if (include_arg_coset) {
          const auto [sup2, arg] = system.sup_projection(state.word());
          s.arg = arg.rep.str();
          if (sup2 != s.sup) throw std::logic_error("scaling: streaming sup mismatch");
        }
      } else {
        const Word w = walk_endpoint(measure, n, seed, stream);
        const auto [sup, arg] = system.sup_projection(w);
        s.sup = sup;
        if (include_arg_coset) s.arg = arg.rep.str();
      }
      return s;
    };
    std::vector<Sample> samples = parallel_map<Sample>(trials, workers, one);

    std::vector<int> sups(samples.size());
    std::vector<std::string> args;
    if (include_arg_coset) args.resize(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      sups[i] = samples[i].sup;
      if (include_arg_coset) args[i] = std::move(samples[i].arg);
    }

    ScalingPerN row;
    row.n = n;
    const double log_n = std::log(static_cast<double>(n));
    row.degenerate = !(log_n > 0.0);
    const double lo = log_n / window_c;
    const double hi = window_c * log_n;
    long covered = 0;
    double sum = 0.0;
    for (int s : sups) {
      sum += s;
      if (s >= lo && s <= hi) ++covered;
    }
    row.coverage = static_cast<double>(covered) / static_cast<double>(trials);
    const WilsonInterval ci = wilson_interval(covered, trials);
    row.coverage_lo = ci.lo;
    row.coverage_hi = ci.hi;
    row.mean_sup = sum / static_cast<double>(trials);
    report.per_n.push_back(row);
    report.sups.push_back(std::move(sups));
    report.arg_cosets.push_back(std::move(args));
  }

  std::vector<double> xs, ys;
  for (const ScalingPerN& row : report.per_n) {
    if (row.degenerate) continue;
    xs.push_back(std::log(static_cast<double>(row.n)));
    ys.push_back(row.mean_sup);
  }
  report.mean_sup_vs_log_n = fit_line(xs, ys);
  return report;
}

XnChoice choose_xn(const ProjectionSystem& system, const StepMeasure& measure, std::uint64_t n,
                   double eps1) {
  const double c = measure.min_prob();
  const double eps1_bound = 1.0 / std::log(1.0 / c);
  if (!(eps1 > 0.0) || eps1 >= eps1_bound)
    throw std::invalid_argument("choose_xn: eps1 must lie in (0, 1/log(1/c))");
  const double log_n = std::log(static_cast<double>(n));
  const int k = static_cast<int>(std::floor(eps1 * log_n));
  if (k < 1) throw std::invalid_argument("choose_xn: n too small, k(n) < 1");

  Word axis_letter;
  axis_letter.push(letter_code(system.axis(), +1));
  const double mu_axis = measure.prob_of(axis_letter);
  if (!(mu_axis > 0.0))
    throw std::invalid_argument("choose_xn: the axis letter is not in the support");

  XnChoice choice;
  choice.k = k;
  choice.eps1 = eps1;
  for (int i = 0; i < k; ++i) choice.x_n = mul(choice.x_n, axis_letter);
  // Unique length-k path when the support consists of single letters.
  choice.p_n = std::pow(mu_axis, k);
  choice.eps2 = static_cast<double>(k) / log_n;

  // Stabilizer and displacement conditions.
  if (!system.in_coset(choice.x_n, system.base_coset()))
    throw std::logic_error("choose_xn: x_n does not stabilize Y0");
  const int disp = system.proj_distance(Word{}, choice.x_n, system.base_coset());
  if (disp + 1e-9 < choice.eps2 * log_n)
    throw std::logic_error("choose_xn: displacement below eps2 log n");
  if (choice.p_n < std::pow(static_cast<double>(n), eps1 * std::log(c)) - 1e-15)
    throw std::logic_error("choose_xn: p_n below n^{eps1 log c}");
  return choice;
}

Word random_reduced_word(int rank, long length, std::uint64_t seed, std::uint64_t stream) {
  CounterRng rng(seed, stream);
  Word w;
  for (long i = 0; i < length; ++i) {
    if (w.empty()) {
      const auto c = static_cast<LetterCode>(rng.next_u64() % (2 * rank));
      w.push(c);
    } else {
      // Uniform over the 2k-1 non-cancelling letters.
      const LetterCode forbidden = code_inverse(w.codes().back());
      auto c = static_cast<LetterCode>(rng.next_u64() % (2 * rank - 1));
      if (c >= forbidden) c = static_cast<LetterCode>(c + 1);
      w.push(c);
    }
  }
  return w;
}

}  // namespace projwalk
