#include "pushpull/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pushpull/errors.hpp"

namespace pushpull {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParameterError("distribution: cannot parse number '" + item + "'");
    }
  }
  return out;
}

}  // namespace

CapacityDistribution::CapacityDistribution(Variant v) : v_(std::move(v)) {
  std::visit(
      Overloaded{
          [](const BernoulliDist& d) {
            if (!(d.p >= 0.0 && d.p <= 1.0)) throw ParameterError("bernoulli: p must lie in [0,1]");
          },
          [](const UniformDist& d) {
            if (!(d.a >= 0.0 && d.a <= d.b)) {
              throw ParameterError("uniform: need 0 <= a <= b");
            }
          },
          [](const ExponentialDist& d) {
            if (!(d.mean > 0.0 && std::isfinite(d.mean))) {
              throw ParameterError("exponential: mean must be positive and finite");
            }
          },
          [this](const DiscreteDist& d) {
            if (d.values.empty() || d.values.size() != d.probabilities.size()) {
              throw ParameterError("discrete: values and probabilities must be nonempty and equal length");
            }
            double total = 0.0;
            for (std::size_t i = 0; i < d.values.size(); ++i) {
              if (!(d.values[i] >= 0.0) || !std::isfinite(d.values[i])) {
                throw ParameterError("discrete: values must be finite and nonnegative");
              }
              if (!(d.probabilities[i] >= 0.0)) {
                throw ParameterError("discrete: probabilities must be nonnegative");
              }
              total += d.probabilities[i];
              cumulative_.push_back(total);
            }
            if (std::abs(total - 1.0) > 1e-12) {
              throw ParameterError("discrete: probabilities must sum to 1");
            }
          },
      },
      v_);
}

CapacityDistribution CapacityDistribution::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ParameterError("distribution '" + text + "' must look like name:params");
  }
  const std::string name = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  if (name == "bernoulli") {
    auto xs = parse_list(rest);
    if (xs.size() != 1) throw ParameterError("bernoulli takes one parameter");
    return bernoulli(xs[0]);
  }
  if (name == "uniform") {
    auto xs = parse_list(rest);
    if (xs.size() != 2) throw ParameterError("uniform takes two parameters");
    return uniform(xs[0], xs[1]);
  }
  if (name == "exponential") {
    auto xs = parse_list(rest);
    if (xs.size() != 1) throw ParameterError("exponential takes one parameter");
    return exponential(xs[0]);
  }
  if (name == "discrete") {
    const auto semi = rest.find(';');
    if (semi == std::string::npos) throw ParameterError("discrete needs values;probabilities");
    return discrete(parse_list(rest.substr(0, semi)), parse_list(rest.substr(semi + 1)));
  }
  throw ParameterError("unknown distribution '" + name + "'");
}

double CapacityDistribution::mean() const noexcept {
  return std::visit(Overloaded{
                        [](const BernoulliDist& d) { return d.p; },
                        [](const UniformDist& d) { return 0.5 * (d.a + d.b); },
                        [](const ExponentialDist& d) { return d.mean; },
                        [](const DiscreteDist& d) {
                          return std::inner_product(d.values.begin(), d.values.end(),
                                                    d.probabilities.begin(), 0.0);
                        },
                    },
                    v_);
}

double CapacityDistribution::cdf(double x) const noexcept {
  return std::visit(Overloaded{
                        [x](const BernoulliDist& d) {
                          if (x < 0.0) return 0.0;
                          return x < 1.0 ? 1.0 - d.p : 1.0;
                        },
                        [x](const UniformDist& d) {
                          if (x < d.a) return 0.0;
                          if (x >= d.b) return 1.0;
                          return (x - d.a) / (d.b - d.a);
                        },
                        [x](const ExponentialDist& d) {
                          return x <= 0.0 ? 0.0 : -std::expm1(-x / d.mean);
                        },
                        [x](const DiscreteDist& d) {
                          double f = 0.0;
                          for (std::size_t i = 0; i < d.values.size(); ++i) {
                            if (d.values[i] <= x) f += d.probabilities[i];
                          }
                          return std::min(f, 1.0);
                        },
                    },
                    v_);
}

double CapacityDistribution::sample(double u) const noexcept {
  return std::visit(Overloaded{
                        [u](const BernoulliDist& d) { return u < d.p ? 1.0 : 0.0; },
                        [u](const UniformDist& d) { return d.a + (d.b - d.a) * u; },
                        [u](const ExponentialDist& d) { return -d.mean * std::log1p(-u); },
                        [u, this](const DiscreteDist& d) {
                          auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
                          std::size_t idx = static_cast<std::size_t>(it - cumulative_.begin());
                          return d.values[std::min(idx, d.values.size() - 1)];
                        },
                    },
                    v_);
}

std::optional<double> CapacityDistribution::support_max() const noexcept {
  return std::visit(Overloaded{
                        [](const BernoulliDist& d) -> std::optional<double> {
                          return d.p > 0.0 ? 1.0 : 0.0;
                        },
                        [](const UniformDist& d) -> std::optional<double> { return d.b; },
                        [](const ExponentialDist&) -> std::optional<double> { return std::nullopt; },
                        [](const DiscreteDist& d) -> std::optional<double> {
                          double m = 0.0;
                          for (std::size_t i = 0; i < d.values.size(); ++i) {
                            if (d.probabilities[i] > 0.0) m = std::max(m, d.values[i]);
                          }
                          return m;
                        },
                    },
                    v_);
}

std::string CapacityDistribution::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const BernoulliDist& d) { os << "bernoulli:" << d.p; },
                 [&](const UniformDist& d) { os << "uniform:" << d.a << ',' << d.b; },
                 [&](const ExponentialDist& d) { os << "exponential:" << d.mean; },
                 [&](const DiscreteDist& d) {
                   os << "discrete:";
                   for (std::size_t i = 0; i < d.values.size(); ++i) os << (i ? "," : "") << d.values[i];
                   os << ';';
                   for (std::size_t i = 0; i < d.probabilities.size(); ++i) {
                     os << (i ? "," : "") << d.probabilities[i];
                   }
                 },
             },
             v_);
  return os.str();
}

}  // namespace pushpull
