#include "projwalk/systole.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "projwalk/rng.hpp"

namespace projwalk {

double OmegaCoefficient::abs() const { return std::hypot(real, imag); }

OmegaCoefficient omega(const CoefficientProfile& profile) {
  if (profile.d_alpha < 0.0) throw std::invalid_argument("omega: negative annular coefficient");
  OmegaCoefficient w;
  w.real = profile.d_alpha;
  double sum = 0.0;
  for (double d : profile.complements) {
    if (d < 0.0) throw std::invalid_argument("omega: negative complement coefficient");
    if (d >= profile.k3) sum += d;  // {{d}}_{K3}
  }
  w.imag = 1.0 + sum;
  return w;
}

LengthEstimate length_estimate(const CoefficientProfile& profile, double d1, double m_threshold) {
  if (d1 < 1.0) throw std::invalid_argument("length_estimate: D1 must be >= 1");
  const OmegaCoefficient w = omega(profile);
  LengthEstimate est;
  est.point = 2.0 * std::numbers::pi * w.imag / (w.real * w.real + w.imag * w.imag);
  est.lower = est.point / d1;
  est.upper = est.point * d1;
  est.regime_valid = w.abs() >= m_threshold;
  return est;
}

RivinReport rivin_scaling(const std::vector<std::uint64_t>& n_list, const RivinParams& params,
                          std::int64_t trials, std::uint64_t seed) {
  if (params.k2 > params.k3)
    throw std::invalid_argument("rivin_scaling: generator requires K2 <= K3");
  if (params.c <= 0.0) throw std::invalid_argument("rivin_scaling: c must be positive");
  RivinReport report;
  report.n_list = n_list;
  report.trials = trials;
  report.params = params;

  const double pi = std::numbers::pi;
  const double c2 = params.c * params.c;
  report.band_lo = 2.0 * pi / (c2 * params.d1 * (1.0 + params.delta));
  report.band_hi = 2.0 * pi * params.d1 * (1.0 + params.delta) / c2;
  report.systole_c = std::max(report.band_hi, 1.0 / report.band_lo);

  for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
    const std::uint64_t n = n_list[ni];
    const double log_n = std::log(static_cast<double>(n));
    if (!(log_n > 0.0)) throw std::invalid_argument("rivin_scaling: n must be >= 2");
    for (std::int64_t trial = 0; trial < trials; ++trial) {
      CounterRng rng(seed, (static_cast<std::uint64_t>(ni) << 40) |
                               static_cast<std::uint64_t>(trial));
      CoefficientProfile profile;
      profile.k3 = params.k3;
      profile.d_alpha = params.c * log_n + (2.0 * rng.next_u01() - 1.0) * params.noise;
      if (profile.d_alpha < 0.0) profile.d_alpha = 0.0;
      for (int i = 0; i < params.complement_count; ++i)
        profile.complements.push_back(rng.next_u01() * params.k2);

      const OmegaCoefficient w = omega(profile);
      const LengthEstimate est = length_estimate(profile, params.d1, params.m_threshold);
      RivinRow row;
      row.n = n;
      row.trial = trial;
      row.d_alpha = w.real;
      row.s_alpha = w.imag;
      row.ell_lower = est.lower;
      row.ell_point = est.point;
      row.ell_upper = est.upper;
      row.ell_times_log2n = est.point * log_n * log_n;
      if (row.ell_times_log2n < report.band_lo || row.ell_times_log2n > report.band_hi)
        report.all_in_band = false;
      report.rows.push_back(row);
    }
  }
  return report;
}

}  // namespace projwalk
