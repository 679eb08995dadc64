#include <gtest/gtest.h>

#include <cmath>

#include "pushpull/distribution.hpp"
#include "pushpull/errors.hpp"
#include "pushpull/graph_models.hpp"
#include "pushpull/random.hpp"

using namespace pushpull;

namespace {

double edge_probability_sigma(double cells, double p) { return std::sqrt(cells * p * (1 - p)); }

}  // namespace

TEST(Distribution, ClosedForms) {
  EXPECT_DOUBLE_EQ(CapacityDistribution::bernoulli(0.3).mean(), 0.3);
  EXPECT_DOUBLE_EQ(CapacityDistribution::uniform(0, 1).mean(), 0.5);
  EXPECT_DOUBLE_EQ(CapacityDistribution::uniform(0, 1).cdf(0.25), 0.25);
  EXPECT_DOUBLE_EQ(CapacityDistribution::exponential(2).mean(), 2.0);
  EXPECT_NEAR(CapacityDistribution::exponential(2).cdf(2.0), 1 - std::exp(-1.0), 1e-15);
  const auto d = CapacityDistribution::discrete({1, 3}, {0.25, 0.75});
  EXPECT_DOUBLE_EQ(d.mean(), 2.5);
  EXPECT_DOUBLE_EQ(d.cdf(1.0), 0.25);
  EXPECT_DOUBLE_EQ(d.cdf(2.9), 0.25);
  EXPECT_DOUBLE_EQ(d.cdf(3.0), 1.0);
}

TEST(Distribution, RejectsBadParameters) {
  EXPECT_THROW(CapacityDistribution::bernoulli(1.5), ParameterError);
  EXPECT_THROW(CapacityDistribution::uniform(2, 1), ParameterError);
  EXPECT_THROW(CapacityDistribution::exponential(0), ParameterError);
  EXPECT_THROW(CapacityDistribution::discrete({1, 2}, {0.5, 0.6}), ParameterError);
  EXPECT_THROW(CapacityDistribution::parse("gamma:1"), ParameterError);
}

TEST(Distribution, ParseRoundTrip) {
  EXPECT_DOUBLE_EQ(CapacityDistribution::parse("uniform:0,1").mean(), 0.5);
  EXPECT_DOUBLE_EQ(CapacityDistribution::parse("discrete:2;1").mean(), 2.0);
  EXPECT_DOUBLE_EQ(CapacityDistribution::parse("bernoulli:0.25").mean(), 0.25);
}

TEST(GenComplete, DegenerateBernoulliGivesUnitTriangle) {
  const CapGraph g = gen_complete_capacitated(3, CapacityDistribution::bernoulli(1), 99);
  ASSERT_EQ(g.edge_count(), 3u);
  for (const Edge& e : g.edges()) EXPECT_EQ(e.capacity, 1.0);
}

TEST(GenComplete, SingleAtom) {
  const CapGraph g = gen_complete_capacitated(2, CapacityDistribution::discrete({5}, {1}), 4);
  ASSERT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.edge(0).capacity, 5.0);
}

TEST(GenComplete, UniformSampleMean) {
  const CapGraph g = gen_complete_capacitated(300, CapacityDistribution::uniform(0, 1), 7);
  double sum = 0.0;
  for (const Edge& e : g.edges()) sum += e.capacity;
  EXPECT_NEAR(sum / 44850.0, 0.5, 0.01);
}

TEST(GenComplete, RejectsTinyN) {
  EXPECT_THROW(gen_complete_capacitated(1, CapacityDistribution::bernoulli(1), 0), ParameterError);
}

TEST(GenGnp, Extremes) {
  EXPECT_EQ(gen_gnp(4, 0.0, 1).edge_count(), 0u);
  const CapGraph k4 = gen_gnp(4, 1.0, 1);
  EXPECT_EQ(k4.edge_count(), 6u);
  EXPECT_TRUE(k4.is_binary());
  EXPECT_THROW(gen_gnp(4, -0.1, 1), ParameterError);
}

TEST(GenGnp, EdgeCountConcentrates) {
  const double cells = 1000.0 * 999 / 2;
  const double mean = cells * 0.3;
  const auto count = static_cast<double>(gen_gnp(1000, 0.3, 1).edge_count());
  EXPECT_LE(std::abs(count - mean), 3 * edge_probability_sigma(cells, 0.3));
}

TEST(GenGnp, MatchesBernoulliComplete) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const CapGraph a = gen_gnp(60, 0.37, seed);
    const CapGraph b = gen_complete_capacitated(60, CapacityDistribution::bernoulli(0.37), seed);
    EXPECT_EQ(a, b);
  }
}

TEST(GenGnp, SeedReproducible) {
  EXPECT_EQ(gen_gnp(200, 0.5, 11), gen_gnp(200, 0.5, 11));
  EXPECT_NE(gen_gnp(200, 0.5, 11), gen_gnp(200, 0.5, 12));
}

TEST(GenBipartite, Extremes) {
  EXPECT_EQ(gen_bipartite(3, 3, 1.0, 5).edge_count(), 9u);
  EXPECT_EQ(gen_bipartite(2, 2, 0.0, 5).edge_count(), 0u);
  EXPECT_THROW(gen_bipartite(0, 2, 0.5, 5), ParameterError);
}

TEST(GenBipartite, EdgeCountConcentrates) {
  const auto count = static_cast<double>(gen_bipartite(200, 200, 0.5, 3).edge_count());
  EXPECT_LE(std::abs(count - 20000.0), 3 * edge_probability_sigma(40000, 0.5));
}

TEST(GenRelay, SmallComplete) {
  const RelayNetwork net = gen_relay_network(2, 2, 1.0, 0);
  EXPECT_EQ(net.source_relays, (std::vector<std::uint32_t>{0, 1}));
  ASSERT_EQ(net.sink_relays.size(), 1u);
  EXPECT_EQ(net.sink_relays[0], (std::vector<std::uint32_t>{0, 1}));
  EXPECT_EQ(net.relay_core.edge_count(), 1u);
  const CapGraph whole = net.to_cap_graph();
  EXPECT_EQ(whole.vertex_count(), 4u);
  EXPECT_FALSE(whole.find_edge(0, 1).has_value());  // no source-sink link
}

TEST(GenRelay, RejectsNoRelays) {
  EXPECT_THROW(gen_relay_network(3, 0, 0.5, 0), ParameterError);
  EXPECT_THROW(gen_relay_network(1, 5, 0.5, 0), ParameterError);
}

TEST(GenRelay, SourceDegreeConcentrates) {
  const RelayNetwork net = gen_relay_network(100, 500, 0.4, 9);
  const auto deg = static_cast<double>(net.source_relays.size());
  EXPECT_LE(std::abs(deg - 200.0), 3 * edge_probability_sigma(500, 0.4));
  for (const auto& row : net.sink_relays) EXPECT_TRUE(std::is_sorted(row.begin(), row.end()));
}

TEST(GenRelay, NoSessionInternalLinks) {
  const RelayNetwork net = gen_relay_network(5, 30, 0.6, 2);
  const CapGraph g = net.to_cap_graph();
  for (const Edge& e : g.edges()) EXPECT_GE(e.v, 5u) << e.u << "-" << e.v;
}

TEST(Generators, EmpiricalEdgeProbabilityWithinFourSigma) {
  const double p = 0.23;
  const CapGraph g = gen_gnp(160, p, 21);  // 12720 cells
  const double cells = 160.0 * 159 / 2;
  EXPECT_LE(std::abs(static_cast<double>(g.edge_count()) - cells * p), 4 * edge_probability_sigma(cells, p));
  const BipartiteGraph b = gen_bipartite(110, 100, p, 21);
  EXPECT_LE(std::abs(static_cast<double>(b.edge_count()) - 11000 * p), 4 * edge_probability_sigma(11000, p));
  const RelayNetwork r = gen_relay_network(20, 150, p, 21);
  const double relay_cells = 150.0 * 20 + 150.0 * 149 / 2;
  std::size_t links = r.source_relays.size() + r.relay_core.edge_count();
  for (const auto& row : r.sink_relays) links += row.size();
  EXPECT_LE(std::abs(static_cast<double>(links) - relay_cells * p), 4 * edge_probability_sigma(relay_cells, p));
}

TEST(QuantizeLayers, Thresholding) {
  const CapGraph g = CapGraph::from_edges(3, {{0, 1, 0.3}, {0, 2, 0.9}, {1, 2, 1.5}});
  const auto layers = quantize_layers(g, 0.5, 3);
  ASSERT_EQ(layers.size(), 3u);
  EXPECT_EQ(layers[0].edge_count(), 2u);
  EXPECT_TRUE(layers[0].find_edge(0, 2).has_value());
  EXPECT_TRUE(layers[0].find_edge(1, 2).has_value());
  EXPECT_EQ(layers[1].edge_count(), 1u);
  EXPECT_TRUE(layers[1].find_edge(1, 2).has_value());
  EXPECT_EQ(layers[2].edge_count(), 0u);
}

TEST(QuantizeLayers, DeltaAboveMaximumEmptiesEverything) {
  const CapGraph g = gen_complete_capacitated(20, CapacityDistribution::uniform(0, 1), 3);
  for (const CapGraph& layer : quantize_layers(g, 1.01, 4)) EXPECT_EQ(layer.edge_count(), 0u);
}

TEST(QuantizeLayers, NestedAndApproximatesExpectation) {
  const CapGraph g = gen_complete_capacitated(200, CapacityDistribution::uniform(0, 1), 5);
  const auto layers = quantize_layers(g, 0.1, 9);
  double sum = 0.0;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    sum += 0.1 * static_cast<double>(layers[k].edge_count()) / static_cast<double>(g.edge_count());
    if (k + 1 < layers.size()) {
      for (const Edge& e : layers[k + 1].edges()) EXPECT_TRUE(layers[k].find_edge(e.u, e.v));
    }
  }
  double oracle = 0.0;
  for (int k = 1; k <= 9; ++k) oracle += 0.1 * (1 - 0.1 * k);
  EXPECT_NEAR(oracle, 0.45, 1e-12);
  EXPECT_NEAR(sum, oracle, 0.02);
}

TEST(ChooseQuantization, ResultClearsThreshold) {
  const std::vector<CapacityDistribution> dists = {
      CapacityDistribution::bernoulli(0.4), CapacityDistribution::uniform(0, 1),
      CapacityDistribution::exponential(1.5), CapacityDistribution::discrete({0.5, 2}, {0.5, 0.5})};
  for (const auto& d : dists) {
    for (double eps : {0.05, 0.1, 0.3}) {
      const Quantization q = choose_quantization(d, eps);
      double sum = 0.0;
      for (std::size_t k = 1; k <= q.layers; ++k) sum += q.delta * d.tail(static_cast<double>(k) * q.delta);
      EXPECT_GE(sum, d.mean() * (1 - eps) - 1e-12) << d.describe() << " eps " << eps;
    }
  }
}

TEST(ChooseQuantization, BernoulliLayersStayBelowOne) {
  const Quantization q = choose_quantization(CapacityDistribution::bernoulli(0.5), 0.1);
  EXPECT_LT(q.delta * static_cast<double>(q.layers), 1.0 + 1e-12);
  double sum = 0.0;
  for (std::size_t k = 1; k <= q.layers; ++k) sum += q.delta * (static_cast<double>(k) * q.delta < 1 ? 0.5 : 0.0);
  EXPECT_GE(sum, 0.45);
}

TEST(ChooseQuantization, SingleAtom) {
  const Quantization q = choose_quantization(CapacityDistribution::discrete({2}, {1}), 0.5);
  EXPECT_DOUBLE_EQ(expectation_approximation(CapacityDistribution::discrete({2}, {1}), 1.0, 1), 1.0);
  EXPECT_GE(expectation_approximation(CapacityDistribution::discrete({2}, {1}), q.delta, q.layers), 1.0);
}

TEST(ChooseQuantization, UniformReferencePairClears) {
  double sum = 0.0;
  for (int k = 1; k <= 19; ++k) sum += 0.05 * (1 - 0.05 * k);
  EXPECT_NEAR(sum, 0.475, 1e-12);
  EXPECT_NEAR(expectation_approximation(CapacityDistribution::uniform(0, 1), 0.05, 19), sum, 1e-12);
  const Quantization q = choose_quantization(CapacityDistribution::uniform(0, 1), 0.1);
  EXPECT_GE(expectation_approximation(CapacityDistribution::uniform(0, 1), q.delta, q.layers), 0.45);
}

TEST(ChooseQuantization, ZeroMeanRejected) {
  EXPECT_THROW(choose_quantization(CapacityDistribution::bernoulli(0), 0.1), ParameterError);
}

TEST(Random, DeriveSeedSeparatesStreams) {
  EXPECT_NE(derive_seed(1, StreamTag::kCapacityRow, {0}), derive_seed(1, StreamTag::kCapacityRow, {1}));
  EXPECT_NE(derive_seed(1, StreamTag::kCapacityRow, {0}), derive_seed(1, StreamTag::kBipartiteRow, {0}));
  EXPECT_EQ(derive_seed(7, StreamTag::kLayer, {3}), derive_seed(7, StreamTag::kLayer, {3}));
}

TEST(CapGraph, FromEdgesValidates) {
  EXPECT_THROW(CapGraph::from_edges(3, {{1, 1, 1}}), InputError);
  EXPECT_THROW(CapGraph::from_edges(3, {{0, 3, 1}}), InputError);
  EXPECT_THROW(CapGraph::from_edges(3, {{0, 1, -1}}), InputError);
  EXPECT_THROW(CapGraph::from_edges(3, {{0, 1, 1}, {0, 1, 2}}), InputError);
  const CapGraph g = CapGraph::from_edges(3, {{1, 2, 1}, {0, 1, 0}, {0, 2, 2}});
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.edge(0).u, 0u);
  EXPECT_EQ(g.capacity(2, 0), 2.0);
  EXPECT_EQ(g.capacity(0, 1), 0.0);
}
