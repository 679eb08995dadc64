#pragma once

#include <cmath>
#include <cstddef>

namespace pushpull::detail {

// Bit budgets are floors of products of decimal inputs; the slack keeps e.g.
// 5 * 1 * (1 - 0.6) / 2 from landing just below 1.
inline std::size_t floor_count(double x) {
  return x <= 0.0 ? 0 : static_cast<std::size_t>(std::floor(x + 1e-9));
}

}  // namespace pushpull::detail
