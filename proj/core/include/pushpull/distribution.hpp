#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pushpull {

struct BernoulliDist {
  double p = 0.0;
};
struct UniformDist {
  double a = 0.0;
  double b = 1.0;
};
struct ExponentialDist {
  double mean = 1.0;
};
struct DiscreteDist {
  std::vector<double> values;
  std::vector<double> probabilities;
};

/// Link capacity distribution F with closed-form CDF and mean.
class CapacityDistribution {
 public:
  using Variant = std::variant<BernoulliDist, UniformDist, ExponentialDist, DiscreteDist>;

  /// Throws ParameterError when the parameters are invalid.
  explicit CapacityDistribution(Variant v);

  static CapacityDistribution bernoulli(double p) { return CapacityDistribution(BernoulliDist{p}); }
  static CapacityDistribution uniform(double a, double b) {
    return CapacityDistribution(UniformDist{a, b});
  }
  static CapacityDistribution exponential(double mean) {
    return CapacityDistribution(ExponentialDist{mean});
  }
  static CapacityDistribution discrete(std::vector<double> values, std::vector<double> probs) {
    return CapacityDistribution(DiscreteDist{std::move(values), std::move(probs)});
  }

  /// Parses "bernoulli:P", "uniform:A,B", "exponential:MEAN" or
  /// "discrete:V1,V2,...;P1,P2,...". Throws ParameterError.
  static CapacityDistribution parse(const std::string& text);

  const Variant& variant() const noexcept { return v_; }

  double mean() const noexcept;
  /// F(x) = Pr{C <= x}.
  double cdf(double x) const noexcept;
  /// Pr{C > x}.
  double tail(double x) const noexcept { return 1.0 - cdf(x); }
  /// Inverse-CDF draw from a uniform u in [0,1).
  double sample(double u) const noexcept;
  /// Largest value in the support, if bounded.
  std::optional<double> support_max() const noexcept;

  std::string describe() const;

 private:
  Variant v_;
  std::vector<double> cumulative_;  // discrete only
};

}  // namespace pushpull
