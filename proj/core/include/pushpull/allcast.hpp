#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pushpull/cap_graph.hpp"
#include "pushpull/delivery.hpp"
#include "pushpull/distribution.hpp"
#include "pushpull/graph_models.hpp"

namespace pushpull {

/// Link directions for ALLCAST: links at the source point away from it, every
/// other link is oriented by a fair coin.
class Orientation {
 public:
  Orientation() = default;
  Orientation(const CapGraph* g, std::vector<std::uint8_t> forward)
      : graph_(g), forward_(std::move(forward)) {}

  /// Tail of edge `id` (the endpoint it points away from).
  Vertex tail(EdgeId id) const { return forward_[id] ? graph_->edge(id).u : graph_->edge(id).v; }
  Vertex head(EdgeId id) const { return forward_[id] ? graph_->edge(id).v : graph_->edge(id).u; }
  /// True iff edge `id` points from `from` to its other endpoint.
  bool points_from(EdgeId id, Vertex from) const { return tail(id) == from; }

  std::size_t size() const noexcept { return forward_.size(); }

 private:
  const CapGraph* graph_ = nullptr;
  std::vector<std::uint8_t> forward_;  // 1: u -> v
};

/// Coin flips are drawn per row u from derive_seed(seed, kOrientationRow, {u})
/// for the edges (u, v), v > u, in lexicographic order; edges at the source
/// consume no flip. The returned object refers to `g`, which must outlive it.
Orientation orient_edges(const CapGraph& g, Vertex source, std::uint64_t seed);

enum class PullMode {
  /// Pad the missing bits to exactly beta columns and match them against the
  /// beta lowest-indexed helper relays; on any failure the node gives up on pull 2.
  kRestricted,
  /// Match only the missing bits against every helper relay and pull whatever a
  /// maximum matching covers.
  kAllHelpers,
};

struct AllcastOptions {
  Vertex source = 0;
  double p = 0.0;  // generation parameter of the graph
  double eps = 0.25;
  std::uint64_t seed = 0;
  PullMode pull = PullMode::kRestricted;
};

/// Per-node outcome flags. A2 records a departure from the concentration
/// window B (p/2)(1 +- eps) for owner links into the node; it is a diagnostic
/// and does not by itself make the run fail.
struct NodeEvents {
  bool a2 = false;
  bool a3 = false;  // too few helper relays
  bool m = false;   // helper matching failed
};

struct AllcastReport {
  std::size_t n = 0;
  double p = 0.0;
  double eps = 0.0;
  std::size_t beta = 0;
  bool a1 = false;                  // source degree below B
  std::vector<Vertex> owners;       // owners[b] holds bit b after push 1
  std::vector<NodeEvents> events;   // indexed by node
  DeliveryRecord delivery;
  bool success = false;

  std::size_t bits() const noexcept { return delivery.bits; }
  std::size_t a2_count() const;
  std::size_t a3_count() const;
  std::size_t m_count() const;
};

/// B = floor((n-1) p (1-eps) / 2).
std::size_t allcast_bit_budget(std::size_t n, double p, double eps);
/// beta = floor(B (1 - p (1-eps) / 2)).
std::size_t allcast_beta(std::size_t bits, double p, double eps);

/// The ALLCAST push-pull algorithm on a binary graph.
///
/// Throws InputError for non-binary graphs or a bad source and ParameterError
/// when eps or p is out of range or B < 1.
AllcastReport run_allcast(const CapGraph& g, const AllcastOptions& options);

struct VanishingOptions {
  double eps = 0.3;
  std::uint64_t seed = 0;
  PullMode pull = PullMode::kAllHelpers;
};

struct VanishingReport {
  double p_n = 0.0;
  AllcastReport report;
};

/// p_n = sqrt(tau ln n / n). Throws ParameterError when p_n > 1.
double vanishing_probability(std::size_t n, double tau);

/// Generates G(n, p_n) and runs ALLCAST on it from node 0.
VanishingReport run_allcast_vanishing(std::size_t n, double tau, const VanishingOptions& options);

struct LayeredOptions {
  Vertex source = 0;
  double eps = 0.2;
  std::uint64_t seed = 0;
  PullMode pull = PullMode::kAllHelpers;
  /// Overrides choose_quantization(dist, eps) when set.
  std::optional<Quantization> quantization;
};

struct LayerOutcome {
  std::size_t index = 0;   // k, 1-based
  double p = 0.0;          // Pr{C > k delta}
  bool skipped = false;    // bit budget below 1
  std::size_t common_bits = 0;
  std::optional<AllcastReport> report;
};

struct LayeredReport {
  Quantization quantization;
  std::vector<LayerOutcome> layers;
  /// delta * sum_k (bits delivered to every node in layer k).
  double total_rate = 0.0;
  /// total_rate / n.
  double normalized_rate = 0.0;
  bool success = false;
};

/// Quantize-and-layer ALLCAST for general capacities: layer k keeps links with
/// C > k delta, carries delta per link and runs ALLCAST with p(k) = 1 - F(k delta)
/// and seed derive_seed(seed, kLayer, {k}).
LayeredReport layered_allcast(const CapGraph& g, const CapacityDistribution& dist,
                              const LayeredOptions& options);

/// Aggregate capacity check: sum over layers of delta * (bits on link) <= C_e.
AuditResult verify_layered(const LayeredReport& report, const CapGraph& g);

}  // namespace pushpull
