#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "projwalk/systole.hpp"

using namespace projwalk;

constexpr double kPi = std::numbers::pi;

TEST_CASE("omega: truncation arithmetic") {
  CHECK(omega({10.0, {}, 5.0}).real == 10.0);
  CHECK(omega({10.0, {}, 5.0}).imag == 1.0);
  // 3 is truncated away by K3 = 5, 7 is kept.
  const OmegaCoefficient w = omega({0.0, {3.0, 7.0}, 5.0});
  CHECK(w.real == 0.0);
  CHECK(w.imag == 8.0);
  const OmegaCoefficient v = omega({4.0, {5.0, 5.0}, 5.0});
  CHECK(v.real == 4.0);
  CHECK(v.imag == 11.0);
  CHECK_THROWS_AS(omega({-1.0, {}, 5.0}), std::invalid_argument);
}

TEST_CASE("length_estimate: point formula and regime flag") {
  const LengthEstimate est = length_estimate({10.0, {}, 5.0}, 1.0);
  CHECK(est.point == doctest::Approx(2.0 * kPi / 101.0).epsilon(1e-12));
  CHECK(est.lower == est.point);
  CHECK(est.upper == est.point);
  CHECK(est.regime_valid);  // |omega| = sqrt(101) > 10

  const LengthEstimate small = length_estimate({0.0, {}, 5.0}, 1.0);
  CHECK(small.point == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  CHECK(!small.regime_valid);  // |omega| = 1 < 10

  CHECK_THROWS_AS(length_estimate({1.0, {}, 5.0}, 0.5), std::invalid_argument);
}

TEST_CASE("length_estimate: doubling d_alpha quarters the estimate for large d") {
  const double l1 = length_estimate({100.0, {}, 5.0}, 1.0).point;
  const double l2 = length_estimate({200.0, {}, 5.0}, 1.0).point;
  CHECK(l1 / l2 == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("length_estimate: strictly decreasing in d_alpha, band ratio D1^2") {
  double prev = length_estimate({0.0, {}, 5.0}, 2.0).point;
  for (double d = 0.5; d < 30.0; d += 0.5) {
    const LengthEstimate est = length_estimate({d, {}, 5.0}, 2.0);
    CHECK(est.point < prev);
    prev = est.point;
    CHECK(est.lower <= est.point);
    CHECK(est.point <= est.upper);
    CHECK(est.upper / est.lower == doctest::Approx(4.0).epsilon(1e-9));
  }
}

TEST_CASE("rivin_scaling: algebraic limit 2 pi / c^2") {
  // c = 1, no noise, D1 = 1, no complements: ell log^2 n -> 2 pi.
  RivinParams params;
  params.c = 1.0;
  params.d1 = 1.0;
  const RivinReport report = rivin_scaling({1000, 100000, 1000000}, params, 10, 42);
  for (const RivinRow& row : report.rows) CHECK(row.s_alpha == 1.0);
  const RivinRow& last = report.rows.back();
  CHECK(last.ell_times_log2n == doctest::Approx(2.0 * kPi).epsilon(0.01));

  // c = 0.5: limit 8 pi.
  RivinParams half;
  half.c = 0.5;
  half.d1 = 1.0;
  const RivinReport r2 = rivin_scaling({1000000}, half, 5, 42);
  CHECK(r2.rows.back().ell_times_log2n == doctest::Approx(8.0 * kPi).epsilon(0.05));
}

TEST_CASE("rivin_scaling: complements below K2 <= K3 never contribute") {
  RivinParams params;
  params.complement_count = 5;
  params.k2 = 4.0;
  params.k3 = 5.0;
  params.d1 = 1.0;
  const RivinReport report = rivin_scaling({10000}, params, 50, 7);
  for (const RivinRow& row : report.rows) CHECK(row.s_alpha == 1.0);
}

TEST_CASE("rivin_scaling: K2 > K3 rejected; min ell stays Theta(1/log^2 n)") {
  RivinParams bad;
  bad.k2 = 6.0;
  bad.k3 = 5.0;
  CHECK_THROWS_AS(rivin_scaling({100}, bad, 1, 1), std::invalid_argument);

  RivinParams params;  // defaults: D1 = e, delta = 0.05
  params.noise = 0.5;
  const RivinReport report = rivin_scaling({1000, 10000, 100000, 1000000}, params, 200, 11);
  CHECK(report.all_in_band);
  for (std::size_t ni = 0; ni < report.n_list.size(); ++ni) {
    double min_ell = 1e300;
    const double log_n = std::log(static_cast<double>(report.n_list[ni]));
    for (const RivinRow& row : report.rows)
      if (row.n == report.n_list[ni]) min_ell = std::min(min_ell, row.ell_point);
    const double scaled = min_ell * log_n * log_n;
    CHECK(scaled >= report.band_lo);
    CHECK(scaled <= report.band_hi);
  }
}
