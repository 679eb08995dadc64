#include "pushpull/stats.hpp"

#include <algorithm>
#include <cmath>

#include "pushpull/errors.hpp"

namespace pushpull {

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) throw ParameterError("wilson_interval: trials must be positive");
  if (successes > trials) throw ParameterError("wilson_interval: successes exceed trials");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  Interval ci{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  // Rounding can push an endpoint past phat at the extremes.
  ci.low = std::min(ci.low, phat);
  ci.high = std::max(ci.high, phat);
  return ci;
}

std::optional<double> binomial_tail_bound(std::size_t n, double q, double eps) {
  const double nd = static_cast<double>(n);
  if (!(q > 0.0 && q < 0.5)) return std::nullopt;
  if (!(eps > 0.0 && eps < 1.0 / 12.0)) return std::nullopt;
  if (!(eps * nd * q * (1.0 - q) >= 12.0)) return std::nullopt;
  const double nq = nd * q;
  return std::exp(-nq * eps * eps / 3.0) / std::sqrt(eps * eps * nq);
}

}  // namespace pushpull
