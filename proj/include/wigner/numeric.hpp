#pragma once

#include <span>

namespace wigner {

/// Least-squares slope of log(y) against log(x). Both spans must have the
/// same length (at least 2) and strictly positive entries.
double loglog_slope(std::span<const double> x, std::span<const double> y);

struct MeanError {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(count)
};

MeanError mean_and_error(std::span<const double> values);

}  // namespace wigner
