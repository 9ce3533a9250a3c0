// Complex translation coefficient omega = d_alpha + i * S_alpha, the
// two-sided length estimate it controls, and the 1/log^2(n) systole scaling
// for synthetic coefficient profiles with logarithmic annular growth.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "projwalk/stats_util.hpp"

namespace projwalk {

struct CoefficientProfile {
  double d_alpha = 0.0;                  // annular coefficient
  std::vector<double> complements = {};  // d_Y for Y in the complement family
  double k3 = 5.0;                       // truncation threshold {{.}}_{K3}
};

struct OmegaCoefficient {
  double real = 0.0;  // d_alpha
  double imag = 1.0;  // S_alpha = 1 + sum of truncated complement coefficients
  double abs() const;
};

OmegaCoefficient omega(const CoefficientProfile& profile);

struct LengthEstimate {
  double lower = 0.0;
  double point = 0.0;
  double upper = 0.0;
  bool regime_valid = false;  // |omega| >= M threshold
};

// point = 2 pi S / (d^2 + S^2); bounds scale by D1^{+-1}. Requires d1 >= 1.
LengthEstimate length_estimate(const CoefficientProfile& profile, double d1,
                               double m_threshold = 10.0);

struct RivinParams {
  double c = 1.0;            // d_alpha = c log n + noise
  double noise = 0.0;        // uniform in [-noise, noise]
  int complement_count = 0;  // complement coefficients drawn uniform in [0, k2]
  double k2 = 5.0;
  double k3 = 5.0;
  double d1 = 2.718281828459045;  // e^D with D = 1
  double m_threshold = 10.0;
  double delta = 0.05;  // concentration slack
};

struct RivinRow {
  std::uint64_t n = 0;
  std::int64_t trial = 0;
  double d_alpha = 0.0;
  double s_alpha = 0.0;
  double ell_lower = 0.0;
  double ell_point = 0.0;
  double ell_upper = 0.0;
  double ell_times_log2n = 0.0;
};

struct RivinReport {
  std::vector<std::uint64_t> n_list;
  std::int64_t trials = 0;
  RivinParams params;
  std::vector<RivinRow> rows;
  double band_lo = 0.0;  // on ell * log^2 n: [2pi/(c^2 D1 (1+delta)), 2pi D1 (1+delta)/c^2]
  double band_hi = 0.0;
  bool all_in_band = true;
  double systole_c = 0.0;  // the emitted band constant for [C^-1/log^2, C/log^2]
  std::string config_hash;

  std::string to_json() const;
  std::string to_csv() const;
  // columns: n,trial,d_alpha,S_alpha,ell_lower,ell_point,ell_upper,ell_times_log2n
};

RivinReport rivin_scaling(const std::vector<std::uint64_t>& n_list, const RivinParams& params,
                          std::int64_t trials, std::uint64_t seed);

}  // namespace projwalk
