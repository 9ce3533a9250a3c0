// Small statistics helpers shared by the experiment modules.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace projwalk {

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

// Wilson score interval at confidence z (default 95%).
WilsonInterval wilson_interval(long hits, long total, double z = 1.959963984540054);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_se = 0.0;
  int points = 0;
  bool valid = false;
};

LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

double mean_of(const std::vector<double>& v);

// Shortest round-trip decimal form (std::to_chars); locale-independent.
std::string format_double(double x);
void append_csv_double(std::string& out, double x);

}  // namespace projwalk
