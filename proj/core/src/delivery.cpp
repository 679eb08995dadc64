#include "pushpull/delivery.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>

namespace pushpull {

namespace {

std::string describe(const Transmission& t) {
  return std::to_string(t.tail) + "->" + std::to_string(t.head) + " bit " + std::to_string(t.bit) +
         " hop " + std::to_string(t.hop);
}

AuditResult fail(std::string msg) { return AuditResult{false, std::move(msg)}; }

}  // namespace

std::size_t DeliveryRecord::common_bits() const {
  if (receivers.empty()) return bits;
  BitSet common(bits);
  common.set();
  for (Vertex v : receivers) common &= delivered[v];
  return common.count();
}

bool DeliveryRecord::all_delivered() const {
  return std::all_of(receivers.begin(), receivers.end(),
                     [this](Vertex v) { return delivered[v].count() == bits; });
}

AuditResult verify_delivery(const DeliveryRecord& record, const CapGraph& g) {
  const std::size_t n = record.node_count;
  if (g.vertex_count() != n) {
    return fail("graph has " + std::to_string(g.vertex_count()) + " vertices, report has " +
                std::to_string(n));
  }
  if (record.delivered.size() != n) return fail("delivered table has wrong size");
  if (record.source >= n) return fail("source out of range");

  // (a) capacity
  std::vector<std::uint32_t> load(g.edge_count(), 0);
  const Adjacency adj(g);
  const auto lookup = [&adj](Vertex a, Vertex b) -> std::optional<EdgeId> {
    const auto row = adj.neighbors(a);
    const auto it = std::lower_bound(row.begin(), row.end(), b,
                                     [](const Adjacency::Entry& e, Vertex x) { return e.neighbor < x; });
    if (it == row.end() || it->neighbor != b) return std::nullopt;
    return it->edge;
  };
  for (const Transmission& t : record.transmissions) {
    if (t.tail >= n || t.head >= n) return fail("transmission out of range: " + describe(t));
    if (t.bit >= record.bits) return fail("unknown bit: " + describe(t));
    if (t.hop < 1 || t.hop > 3) return fail("hop outside 1..3: " + describe(t));
    const auto id = lookup(t.tail, t.head);
    if (!id) return fail("no such link: " + describe(t));
    if (static_cast<double>(++load[*id]) > g.edge(*id).capacity) {
      return fail("link over capacity: " + describe(t));
    }
  }

  // (b) replay, one hop level at a time
  std::vector<BitSet> state(n, BitSet(record.bits));
  state[record.source].set();
  for (std::uint8_t hop = 1; hop <= 3; ++hop) {
    std::vector<std::pair<Vertex, std::uint32_t>> gained;
    for (const Transmission& t : record.transmissions) {
      if (t.hop != hop) continue;
      if (!state[t.tail].test(t.bit)) return fail("tail does not hold the bit yet: " + describe(t));
      gained.emplace_back(t.head, t.bit);
    }
    for (const auto& [v, bit] : gained) state[v].set(bit);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (record.delivered[v].size() != record.bits) {
      return fail("delivered set of node " + std::to_string(v) + " has wrong width");
    }
    if (state[v] != record.delivered[v]) {
      return fail("replay disagrees with delivered set of node " + std::to_string(v));
    }
  }

  // (c) success flag
  bool complete = true;
  for (Vertex v : record.receivers) complete = complete && state[v].count() == record.bits;
  if (complete != record.success) {
    return fail(std::string("success flag is ") + (record.success ? "true" : "false") +
                " but replay says " + (complete ? "complete" : "incomplete"));
  }
  return {};
}

std::uint8_t max_depth(const DeliveryRecord& record) {
  std::uint8_t depth = 0;
  for (const Transmission& t : record.transmissions) depth = std::max(depth, t.hop);
  return depth;
}

}  // namespace pushpull
