// JSON and CSV bodies for the report types. Bodies are deterministic:
// object keys are sorted, doubles use shortest round-trip form, and row
// order is fixed by (n, trial) / (R, t) / index.

#include <json.hpp>

#include "projwalk/experiments.hpp"
#include "projwalk/systole.hpp"

namespace projwalk {

namespace {

std::string csv_header(const std::string& config_hash, const std::string& columns) {
  std::string out = "# config_hash=" + config_hash + "\n";
  out += columns;
  out += '\n';
  return out;
}

nlohmann::json fit_json(const LinearFit& fit) {
  return {{"slope", fit.slope},
          {"intercept", fit.intercept},
          {"r_squared", fit.r_squared},
          {"slope_se", fit.slope_se},
          {"points", fit.points},
          {"valid", fit.valid}};
}

}  // namespace

std::string TailReport::to_json() const {
  nlohmann::json cells_json = nlohmann::json::array();
  for (const TailCell& cell : cells)
    cells_json.push_back({{"R", cell.r},
                          {"t", cell.t},
                          {"count_cond", cell.count_cond},
                          {"count_hit", cell.count_hit},
                          {"p_hat", cell.p_hat},
                          {"ci_lo", cell.ci_lo},
                          {"ci_hi", cell.ci_hi},
                          {"flagged", cell.flagged}});
  const nlohmann::json j = {{"kind", "tail"},
                            {"config_hash", config_hash},
                            {"coset", coset_rep},
                            {"n", n},
                            {"trials", trials},
                            {"r_grid", r_grid},
                            {"t_max", t_max},
                            {"histogram", histogram},
                            {"cells", cells_json},
                            {"m_hat", m_hat},
                            {"r_squared", r_squared},
                            {"fit_bins", fit_bins},
                            {"slope_per_r", slope_per_r},
                            {"degenerate", degenerate}};
  return j.dump(2);
}

std::string TailReport::to_csv() const {
  std::string out = csv_header(config_hash, "R,t,count_cond,count_hit,p_hat,ci_lo,ci_hi");
  for (const TailCell& cell : cells) {
    out += std::to_string(cell.r);
    out += ',';
    out += std::to_string(cell.t);
    out += ',';
    out += std::to_string(cell.count_cond);
    out += ',';
    out += std::to_string(cell.count_hit);
    out += ',';
    append_csv_double(out, cell.p_hat);
    out += ',';
    append_csv_double(out, cell.ci_lo);
    out += ',';
    append_csv_double(out, cell.ci_hi);
    out += '\n';
  }
  return out;
}

std::string ScalingReport::to_json() const {
  nlohmann::json per_n_json = nlohmann::json::array();
  for (const ScalingPerN& row : per_n)
    per_n_json.push_back({{"n", row.n},
                          {"coverage", row.coverage},
                          {"coverage_lo", row.coverage_lo},
                          {"coverage_hi", row.coverage_hi},
                          {"mean_sup", row.mean_sup},
                          {"degenerate", row.degenerate}});
  nlohmann::json j = {{"kind", "scaling"},
                      {"config_hash", config_hash},
                      {"n_list", n_list},
                      {"trials", trials},
                      {"window_c", window_c},
                      {"seed", master_seed},
                      {"per_n", per_n_json},
                      {"mean_sup_vs_log_n", fit_json(mean_sup_vs_log_n)},
                      {"sups", sups}};
  if (include_arg_coset) j["arg_cosets"] = arg_cosets;
  return j.dump(2);
}

std::string ScalingReport::to_csv() const {
  std::string out = csv_header(config_hash, "n,trial,sup,arg_coset,seed");
  for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
    for (std::size_t trial = 0; trial < sups[ni].size(); ++trial) {
      out += std::to_string(n_list[ni]);
      out += ',';
      out += std::to_string(trial);
      out += ',';
      out += std::to_string(sups[ni][trial]);
      out += ',';
      if (include_arg_coset) out += arg_cosets[ni][trial];
      out += ',';
      out += std::to_string(master_seed);
      out += '\n';
    }
  }
  return out;
}

std::string SecondMomentReport::to_json() const {
  nlohmann::json buckets_json = nlohmann::json::array();
  for (const PairBucket& b : pair_buckets)
    buckets_json.push_back({{"gap_lo", b.gap_lo},
                            {"gap_hi", b.gap_hi},
                            {"index_pairs", b.index_pairs},
                            {"hits", b.hits},
                            {"ratio", b.ratio}});
  const nlohmann::json j = {{"kind", "second-moment"},
                            {"config_hash", config_hash},
                            {"n", n},
                            {"trials", trials},
                            {"k", k},
                            {"eps1", eps1},
                            {"eps2", eps2},
                            {"x_n", x_n},
                            {"p_n", p_n},
                            {"threshold", threshold},
                            {"mean_y_ratio", mean_y_ratio},
                            {"far_pair_ratio", far_pair_ratio},
                            {"pair_buckets", buckets_json},
                            {"w_far_pair_ratio", w_far_pair_ratio},
                            {"p_x_positive", p_x_positive},
                            {"second_moment_bound", second_moment_bound},
                            {"bootstrap_se", bootstrap_se},
                            {"undersampled", undersampled},
                            {"y_counts", y_counts}};
  return j.dump(2);
}

std::string SecondMomentReport::to_csv() const {
  std::string out = csv_header(config_hash, "i,y_count,y_ratio");
  const double denom = static_cast<double>(trials) * p_n;
  for (std::size_t i = 1; i < y_counts.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += std::to_string(y_counts[i]);
    out += ',';
    append_csv_double(out, denom > 0 ? static_cast<double>(y_counts[i]) / denom : 0.0);
    out += '\n';
  }
  return out;
}

std::string DistanceFormulaReport::to_json() const {
  nlohmann::json intervals_json = nlohmann::json::array();
  for (const ProjInterval& iv : intervals)
    intervals_json.push_back({{"coset", iv.coset_rep},
                              {"i", iv.i},
                              {"t", iv.t},
                              {"d", iv.d_value},
                              {"endpoint_sep", iv.endpoint_sep}});
  const nlohmann::json j = {{"kind", "distance-formula"},
                            {"word", word},
                            {"length", length},
                            {"K", k_threshold},
                            {"L", constants.lipschitz},
                            {"B", constants.behrstock},
                            {"s", constants.antichain},
                            {"intervals", intervals_json},
                            {"overlap_histogram", overlap_histogram},
                            {"max_overlap", max_overlap},
                            {"sum_truncated", sum_truncated},
                            {"bound", bound},
                            {"large_coset_count", large_coset_count},
                            {"disjoint_for_transverse", disjoint_for_transverse},
                            {"overlap_le_s", overlap_le_s},
                            {"endpoint_sep_ok", endpoint_sep_ok},
                            {"ok", all_ok()}};
  return j.dump(2);
}

std::string DistanceFormulaSweep::to_json() const {
  nlohmann::json failures_json = nlohmann::json::array();
  for (const DistanceFormulaReport& f : failures)
    failures_json.push_back(nlohmann::json::parse(f.to_json()));
  const nlohmann::json j = {{"kind", "distance-formula"},
                            {"config_hash", config_hash},
                            {"words", words},
                            {"max_len", max_len},
                            {"K", k_threshold},
                            {"violations", violations},
                            {"cyclic_sharp_violations", cyclic_sharp_violations},
                            {"failures", failures_json}};
  return j.dump(2);
}

std::string DistanceFormulaSweep::to_csv() const {
  std::string out =
      csv_header(config_hash, "word_index,length,large_cosets,sum_truncated,bound,max_overlap,ok");
  for (const Row& row : rows) {
    out += std::to_string(row.index);
    out += ',';
    out += std::to_string(row.length);
    out += ',';
    out += std::to_string(row.large_cosets);
    out += ',';
    out += std::to_string(row.sum_truncated);
    out += ',';
    out += std::to_string(row.bound);
    out += ',';
    out += std::to_string(row.max_overlap);
    out += ',';
    out += row.ok ? "1" : "0";
    out += '\n';
  }
  return out;
}

std::string RivinReport::to_json() const {
  const nlohmann::json j = {{"kind", "systole"},
                            {"config_hash", config_hash},
                            {"n_list", n_list},
                            {"trials", trials},
                            {"c", params.c},
                            {"noise", params.noise},
                            {"complement_count", params.complement_count},
                            {"K2", params.k2},
                            {"K3", params.k3},
                            {"D1", params.d1},
                            {"m_threshold", params.m_threshold},
                            {"delta", params.delta},
                            {"band_lo", band_lo},
                            {"band_hi", band_hi},
                            {"all_in_band", all_in_band},
                            {"systole_c", systole_c}};
  return j.dump(2);
}

std::string RivinReport::to_csv() const {
  std::string out = csv_header(
      config_hash, "n,trial,d_alpha,S_alpha,ell_lower,ell_point,ell_upper,ell_times_log2n");
  for (const RivinRow& row : rows) {
    out += std::to_string(row.n);
    out += ',';
    out += std::to_string(row.trial);
    out += ',';
    append_csv_double(out, row.d_alpha);
    out += ',';
    append_csv_double(out, row.s_alpha);
    out += ',';
    append_csv_double(out, row.ell_lower);
    out += ',';
    append_csv_double(out, row.ell_point);
    out += ',';
    append_csv_double(out, row.ell_upper);
    out += ',';
    append_csv_double(out, row.ell_times_log2n);
    out += '\n';
  }
  return out;
}

}  // namespace projwalk
