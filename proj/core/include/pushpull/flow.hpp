#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pushpull/allcast.hpp"
#include "pushpull/cap_graph.hpp"
#include "pushpull/delivery.hpp"

namespace pushpull {

struct FlowOptions {
  double p = 0.0;  // generation parameter of the network
  double eps = 0.25;
  std::uint64_t seed = 0;
  PullMode pull = PullMode::kRestricted;
};

/// Outcome of a single-source flow on relay(k, n). Delivery uses global node ids.
struct FlowReport {
  std::size_t relays = 0;        // n
  std::size_t session_size = 0;  // k
  double p = 0.0;
  double eps = 0.0;
  std::size_t beta = 0;
  bool a1 = false;                        // source touches fewer than B relays
  std::vector<std::uint32_t> owners;      // owners[b]: relay index holding bit b
  std::vector<NodeEvents> sink_events;    // sink_events[s] belongs to node s + 1
  DeliveryRecord delivery;
  bool success = false;

  std::size_t bits() const noexcept { return delivery.bits; }
};

/// B = floor(n p (1-eps)).
std::size_t flow_bit_budget(std::size_t relays, double p, double eps);
/// beta = floor(n p (1-eps) (1 - p (1-eps))).
std::size_t flow_beta(std::size_t relays, double p, double eps);

/// MaxFlow on relay(2, n): bits go to B owners; the sink pulls directly from
/// owners it touches and fetches the rest over owner -> relay -> sink paths
/// chosen by a matching. Only links on those paths are used.
///
/// Throws ParameterError unless k = 2 and eps, p are in range; InputError for
/// non-binary relay links.
FlowReport run_maxflow(const RelayNetwork& net, const FlowOptions& options);

/// MaxFlowPUSHPULL on relay(k, n): owners push their bit to every non-owner
/// relay and every sink they touch, then each sink runs its own pull steps.
FlowReport run_maxflow_pushpull_multi(const RelayNetwork& net, const FlowOptions& options);

struct MulticastOptions {
  double eps = 0.2;
  std::uint64_t seed = 0;
  PullMode pull = PullMode::kAllHelpers;
};

/// Session clique ALLCAST plus relay-side MaxFlowPUSHPULL on one G(n, p).
///
/// The graph comes from derive_seed(seed, kMulticastGraph); the session runs use
/// derive_seed(seed, kMulticastRun, {1}) and {2}. Nodes 0..k-1 form the session
/// with node 0 as source.
struct MulticastReport {
  std::size_t n = 0;
  std::size_t k = 0;
  double alpha = 0.0;
  double p = 0.0;
  double eps = 0.0;
  std::size_t session_bits = 0;  // bits every sink got over session links
  std::size_t relay_bits = 0;    // bits every sink got through the relays
  std::size_t total = 0;
  double normalized_rate = 0.0;  // total / n
  double target = 0.0;           // (1 - alpha/2) p (1 - 2 eps)
  std::optional<AllcastReport> session;  // empty when its bit budget is 0
  std::optional<FlowReport> relay;       // empty when k = n or its budget is 0
  CapGraph graph;
  bool success = false;
};

MulticastReport run_multicast(std::size_t n, std::size_t k, double p, const MulticastOptions& options);

/// Audits both sub-deliveries on their own link sets and checks that no link
/// is used by both.
AuditResult verify_multicast(const MulticastReport& report);

/// True iff the two sub-schemes share no link.
bool multicast_edges_disjoint(const MulticastReport& report);

}  // namespace pushpull
