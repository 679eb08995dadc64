#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pushpull/cap_graph.hpp"
#include "pushpull/distribution.hpp"

namespace pushpull {

// Random network models. Every generator is a pure function of its parameters
// and seed. Row i of a pair matrix draws from its own substream
// derive_seed(seed, tag, {i}), consuming one uniform per pair (i, j), j > i,
// in increasing j.

/// K_n with iid capacities drawn from `dist`. Requires n >= 2.
CapGraph gen_complete_capacitated(std::size_t n, const CapacityDistribution& dist,
                                  std::uint64_t seed);

/// G(n, p): identical, edge for edge, to gen_complete_capacitated with Bernoulli(p).
CapGraph gen_gnp(std::size_t n, double p, std::uint64_t seed);

/// G(left, right, p), drawn row-major.
BipartiteGraph gen_bipartite(std::size_t left, std::size_t right, double p, std::uint64_t seed);

/// relay(k, n): source row, then sink rows, then relay pairs. Rejects n = 0.
RelayNetwork gen_relay_network(std::size_t k, std::size_t n, double p, std::uint64_t seed);

/// Layer k (1-based, k = 1..M) keeps edge e with unit capacity iff C_e > k * delta.
std::vector<CapGraph> quantize_layers(const CapGraph& g, double delta, std::size_t layers);

struct Quantization {
  double delta = 0.0;
  std::size_t layers = 0;  // M
};

/// sum_{k=1}^{M} delta * (1 - F(k delta)).
double expectation_approximation(const CapacityDistribution& dist, double delta, std::size_t layers);

/// Finds (delta, M) with expectation_approximation >= E[C] (1 - eps).
///
/// Search: start from delta = U (the support maximum, or mean * ln(2/eps) for
/// unbounded support), halve delta with M = ceil(U / delta) until the sum
/// clears the threshold, then trim M to the smallest value that still clears
/// it. Throws ParameterError when E[C] = 0 or eps is outside (0,1).
Quantization choose_quantization(const CapacityDistribution& dist, double eps);

}  // namespace pushpull
