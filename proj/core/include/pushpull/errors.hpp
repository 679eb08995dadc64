#pragma once

#include <stdexcept>
#include <string>

namespace pushpull {

/// Out-of-range or inconsistent numeric parameter (probabilities, eps, bit budgets).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Structurally invalid input: malformed graph, wrong capacity type, bad session set.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Instance too large for an exhaustive oracle.
class SizeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace pushpull
