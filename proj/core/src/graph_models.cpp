#include "pushpull/graph_models.hpp"

#include <cmath>
#include <string>

#include "pushpull/errors.hpp"
#include "pushpull/random.hpp"

namespace pushpull {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError(std::string(name) + " must lie in [0,1]");
  }
}

}  // namespace

CapGraph gen_complete_capacitated(std::size_t n, const CapacityDistribution& dist,
                                  std::uint64_t seed) {
  if (n < 2) throw ParameterError("n must be at least 2");
  CapGraphBuilder builder(n);
  const double expected_fraction = 1.0 - dist.cdf(0.0);
  builder.reserve(static_cast<std::size_t>(expected_fraction * static_cast<double>(n) *
                                           static_cast<double>(n - 1) / 2.0 * 1.01) + 16);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Rng rng(derive_seed(seed, StreamTag::kCapacityRow, {i}));
    for (std::size_t j = i + 1; j < n; ++j) {
      builder.append(static_cast<Vertex>(i), static_cast<Vertex>(j), dist.sample(rng.uniform()));
    }
  }
  return std::move(builder).build();
}

CapGraph gen_gnp(std::size_t n, double p, std::uint64_t seed) {
  check_probability(p, "p");
  if (n < 2) throw ParameterError("n must be at least 2");
  // Same draws as gen_complete_capacitated with a Bernoulli law, without the
  // per-pair dispatch.
  CapGraphBuilder builder(n);
  builder.reserve(static_cast<std::size_t>(p * static_cast<double>(n) *
                                           static_cast<double>(n - 1) / 2.0 * 1.01) + 16);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Rng rng(derive_seed(seed, StreamTag::kCapacityRow, {i}));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.uniform() < p) builder.append(static_cast<Vertex>(i), static_cast<Vertex>(j), 1.0);
    }
  }
  return std::move(builder).build();
}

BipartiteGraph gen_bipartite(std::size_t left, std::size_t right, double p, std::uint64_t seed) {
  if (left < 1 || right < 1) throw ParameterError("bipartite sides must be nonempty");
  check_probability(p, "p");
  BipartiteGraph g(left, right);
  for (std::size_t i = 0; i < left; ++i) {
    Rng rng(derive_seed(seed, StreamTag::kBipartiteRow, {i}));
    for (std::size_t j = 0; j < right; ++j) {
      if (rng.bernoulli(p)) g.add_edge(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
  }
  return g;
}

RelayNetwork gen_relay_network(std::size_t k, std::size_t n, double p, std::uint64_t seed) {
  if (k < 2) throw ParameterError("k must be at least 2 (one source and one sink)");
  if (n < 1) throw ParameterError("n must be at least 1: with no relays the network is disconnected");
  check_probability(p, "p");
  RelayNetwork net;
  net.session_size = k;
  net.relay_count = n;
  {
    Rng rng(derive_seed(seed, StreamTag::kRelaySource));
    for (std::uint32_t r = 0; r < n; ++r) {
      if (rng.bernoulli(p)) net.source_relays.push_back(r);
    }
  }
  net.sink_relays.resize(k - 1);
  for (std::size_t s = 0; s + 1 < k; ++s) {
    Rng rng(derive_seed(seed, StreamTag::kRelaySink, {s}));
    for (std::uint32_t r = 0; r < n; ++r) {
      if (rng.bernoulli(p)) net.sink_relays[s].push_back(r);
    }
  }
  CapGraphBuilder core(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Rng rng(derive_seed(seed, StreamTag::kRelayCore, {i}));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) core.append(static_cast<Vertex>(i), static_cast<Vertex>(j), 1.0);
    }
  }
  net.relay_core = std::move(core).build();
  return net;
}

std::vector<CapGraph> quantize_layers(const CapGraph& g, double delta, std::size_t layers) {
  if (!(delta > 0.0)) throw ParameterError("delta must be positive");
  if (layers < 1) throw ParameterError("M must be at least 1");
  std::vector<CapGraphBuilder> builders;
  builders.reserve(layers);
  for (std::size_t k = 0; k < layers; ++k) builders.emplace_back(g.vertex_count());
  for (const Edge& e : g.edges()) {
    for (std::size_t k = 1; k <= layers; ++k) {
      if (!(e.capacity > static_cast<double>(k) * delta)) break;
      builders[k - 1].append(e.u, e.v, 1.0);
    }
  }
  std::vector<CapGraph> out;
  out.reserve(layers);
  for (auto& b : builders) out.push_back(std::move(b).build());
  return out;
}

double expectation_approximation(const CapacityDistribution& dist, double delta, std::size_t layers) {
  double sum = 0.0;
  for (std::size_t k = 1; k <= layers; ++k) sum += delta * dist.tail(static_cast<double>(k) * delta);
  return sum;
}

Quantization choose_quantization(const CapacityDistribution& dist, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("eps must lie in (0,1)");
  const double mean = dist.mean();
  if (!(mean > 0.0)) throw ParameterError("distribution has E[C] = 0; nothing to quantize");
  const double target = mean * (1.0 - eps);
  const double upper = dist.support_max().value_or(mean * std::log(2.0 / eps));

  double delta = upper;
  for (int halvings = 0; halvings < 48; ++halvings, delta *= 0.5) {
    const auto layers = static_cast<std::size_t>(std::ceil(upper / delta - 1e-9));
    if (expectation_approximation(dist, delta, layers) < target) continue;
    double sum = 0.0;
    for (std::size_t m = 1; m <= layers; ++m) {
      sum += delta * dist.tail(static_cast<double>(m) * delta);
      if (sum >= target) return Quantization{delta, m};
    }
    return Quantization{delta, layers};
  }
  throw ParameterError("could not find a quantization meeting the (1 - eps) target");
}

}  // namespace pushpull
