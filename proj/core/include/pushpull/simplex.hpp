#pragma once

#include <cstddef>
#include <vector>

namespace pushpull {

enum class LpStatus { kOptimal, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  double value = 0.0;
  std::vector<double> x;
  std::vector<double> slack;  // b - A x
  std::size_t pivots = 0;
};

/// Dense tableau simplex for max c.x subject to A x <= b, x >= 0 with b >= 0,
/// so the slack basis is feasible from the start. Bland's rule picks both the
/// entering and the leaving variable; tolerances are 1e-9.
///
/// A is row-major with one row per constraint. Throws ParameterError on shape
/// mismatch or a negative right-hand side.
LpSolution maximize(const std::vector<double>& c, const std::vector<std::vector<double>>& a,
                    const std::vector<double>& b);

}  // namespace pushpull
