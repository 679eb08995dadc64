#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "pushpull/cap_graph.hpp"

namespace pushpull {

using BitSet = boost::dynamic_bitset<std::uint64_t>;

/// One bit carried over one link, tail -> head.
///
/// `hop` is the distance of the tail from the source along the delivery tree:
/// 1 for the source's own pushes, 2 for owner pushes, 3 for relay pulls. The
/// tail must already hold the bit after hop - 1 rounds.
struct Transmission {
  Vertex tail = 0;
  Vertex head = 0;
  std::uint32_t bit = 0;
  std::uint8_t hop = 0;

  friend bool operator==(const Transmission&, const Transmission&) = default;
};

/// Everything an independent auditor needs to replay a push-pull run.
struct DeliveryRecord {
  std::size_t node_count = 0;
  Vertex source = 0;
  std::size_t bits = 0;                  // B
  std::vector<Vertex> receivers;         // nodes that must obtain every bit
  std::vector<BitSet> delivered;         // per node; the source holds everything
  std::vector<Transmission> transmissions;
  bool success = false;

  /// Number of bits held by every receiver.
  std::size_t common_bits() const;
  /// True iff every receiver holds all B bits.
  bool all_delivered() const;
};

struct AuditResult {
  bool ok = true;
  std::string diagnostic;

  explicit operator bool() const noexcept { return ok; }
};

/// Independent check of a run against the graph it ran on:
///  (a) every transmission uses a link of `g` and no link carries more bits
///      (both directions combined) than its capacity;
///  (b) replaying the transmissions hop by hop from the source reproduces
///      `delivered` exactly, with every hop in 1..3;
///  (c) `success` agrees with the replayed delivery.
AuditResult verify_delivery(const DeliveryRecord& record, const CapGraph& g);

/// Longest hop count over transmissions (0 when there are none).
std::uint8_t max_depth(const DeliveryRecord& record);

}  // namespace pushpull
