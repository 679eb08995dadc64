#pragma once

#include <cstddef>
#include <optional>

namespace pushpull {

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval for a binomial proportion (default z: 95% two-sided).
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

/// Concentration bound for S ~ Bin(n, q):
///   Pr{|S/(nq) - 1| > eps} <= exp(-nq eps^2 / 3) / sqrt(eps^2 n q),
/// valid for 0 < q < 1/2, 0 < eps < 1/12 and eps n q (1-q) >= 12.
/// Returns nothing when a precondition is unmet.
std::optional<double> binomial_tail_bound(std::size_t n, double q, double eps);

}  // namespace pushpull
