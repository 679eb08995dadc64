#include "pushpull/simplex.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "pushpull/errors.hpp"

namespace pushpull {

namespace {

constexpr double kTol = 1e-9;

}  // namespace

LpSolution maximize(const std::vector<double>& c, const std::vector<std::vector<double>>& a,
                    const std::vector<double>& b) {
  const std::size_t m = a.size();
  const std::size_t nv = c.size();
  if (b.size() != m) throw ParameterError("right-hand side length differs from the row count");
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != nv) throw ParameterError("constraint row " + std::to_string(i) + " has the wrong width");
    if (b[i] < 0.0) throw ParameterError("negative right-hand side in row " + std::to_string(i));
  }

  // Columns: structural 0..nv-1, slacks nv..nv+m-1, right-hand side last.
  const std::size_t width = nv + m + 1;
  const std::size_t rhs = nv + m;
  std::vector<std::vector<double>> t(m, std::vector<double>(width, 0.0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::copy(a[i].begin(), a[i].end(), t[i].begin());
    t[i][nv + i] = 1.0;
    t[i][rhs] = b[i];
    basis[i] = nv + i;
  }
  std::vector<double> obj(width, 0.0);  // reduced costs, negated
  for (std::size_t j = 0; j < nv; ++j) obj[j] = -c[j];

  LpSolution sol;
  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < rhs; ++j) {
      if (obj[j] < -kTol) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= kTol) continue;
      const double ratio = t[i][rhs] / t[i][enter];
      if (ratio < best - kTol || (ratio <= best + kTol && leave < m && basis[i] < basis[leave])) {
        best = std::min(best, ratio);
        leave = i;
      }
    }
    if (leave == m) {
      sol.status = LpStatus::kUnbounded;
      return sol;
    }

    std::vector<double>& prow = t[leave];
    const double pivot = prow[enter];
    for (double& v : prow) v /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double f = t[i][enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * prow[j];
      t[i][enter] = 0.0;
    }
    const double f = obj[enter];
    for (std::size_t j = 0; j < width; ++j) obj[j] -= f * prow[j];
    obj[enter] = 0.0;
    basis[leave] = enter;
    ++sol.pivots;
  }

  sol.x.assign(nv, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < nv) sol.x[basis[i]] = std::max(0.0, t[i][rhs]);
  }
  sol.value = 0.0;
  for (std::size_t j = 0; j < nv; ++j) sol.value += c[j] * sol.x[j];
  sol.slack.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < nv; ++j) lhs += a[i][j] * sol.x[j];
    sol.slack[i] = b[i] - lhs;
  }
  return sol;
}

}  // namespace pushpull
