#include "pushpull/flow.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "pushpull/errors.hpp"
#include "pushpull/graph_models.hpp"
#include "pushpull/matching.hpp"
#include "pushpull/random.hpp"
#include "rounding.hpp"

namespace pushpull {

namespace {

using detail::floor_count;

constexpr std::int64_t kNone = -1;

void check_network(const RelayNetwork& net, const FlowOptions& o) {
  if (net.session_size < 2) throw ParameterError("relay network needs a source and at least one sink");
  if (net.relay_count < 1) throw ParameterError("relay network has no relays");
  if (net.sink_relays.size() != net.sink_count()) throw InputError("sink adjacency does not match k");
  if (net.relay_core.vertex_count() != net.relay_count) throw InputError("relay core size does not match n");
  if (!net.relay_core.is_binary()) throw InputError("relay links must have binary capacities");
  if (!(o.eps > 0.0 && o.eps < 1.0)) throw ParameterError("eps must lie in (0,1)");
  if (!(o.p > 0.0 && o.p <= 1.0)) throw ParameterError("p must lie in (0,1]");
}

// flood = true is MaxFlowPUSHPULL (owners push to all non-owner relays);
// flood = false is MaxFlow (owner -> relay links carry bits only on demand).
FlowReport run_flow(const RelayNetwork& net, const FlowOptions& options, bool flood) {
  check_network(net, options);
  const std::size_t bits = flow_bit_budget(net.relay_count, options.p, options.eps);
  if (bits < 1) {
    throw ParameterError("bit budget B = floor(n p (1-eps)) is 0 for n=" + std::to_string(net.relay_count));
  }

  FlowReport report;
  report.relays = net.relay_count;
  report.session_size = net.session_size;
  report.p = options.p;
  report.eps = options.eps;
  report.beta = flow_beta(net.relay_count, options.p, options.eps);
  report.sink_events.resize(net.sink_count());
  DeliveryRecord& rec = report.delivery;
  rec.node_count = net.node_count();
  rec.source = 0;
  rec.bits = bits;
  rec.delivered.assign(rec.node_count, BitSet(bits));
  rec.delivered[0].set();
  for (Vertex t = 1; t < net.session_size; ++t) rec.receivers.push_back(t);

  if (net.source_relays.size() < bits) {
    report.a1 = true;
    return report;
  }

  // Push 1.
  std::vector<std::int64_t> bit_of(net.relay_count, kNone);
  report.owners.assign(net.source_relays.begin(), net.source_relays.begin() + static_cast<std::ptrdiff_t>(bits));
  for (std::uint32_t b = 0; b < bits; ++b) {
    const std::uint32_t r = report.owners[b];
    bit_of[r] = b;
    rec.delivered[net.relay_node(r)].set(b);
    rec.transmissions.push_back(Transmission{0, net.relay_node(r), b, 1});
  }

  // Availability: a non-owner relay can supply bit b iff it touches owner b.
  const Adjacency core(net.relay_core);
  std::vector<std::vector<std::uint32_t>> relay_bits(net.relay_count);
  for (std::uint32_t b = 0; b < bits; ++b) {
    const std::uint32_t owner = report.owners[b];
    for (const auto& entry : core.neighbors(owner)) {
      const std::uint32_t r = entry.neighbor;
      if (bit_of[r] != kNone) continue;  // owner-owner links stay idle
      relay_bits[r].push_back(b);
      if (flood) {
        rec.transmissions.push_back(Transmission{net.relay_node(owner), net.relay_node(r), b, 2});
        rec.delivered[net.relay_node(r)].set(b);
      }
    }
  }

  const double expected_links = static_cast<double>(bits) * options.p;
  const double window_low = expected_links * (1.0 - options.eps);
  const double window_high = expected_links * (1.0 + options.eps);
  std::vector<std::int64_t> column_of(bits, kNone);
  std::vector<std::uint32_t> columns;
  std::vector<std::uint32_t> helpers;
  BipartiteGraph bitmap;

  for (std::size_t s = 0; s < net.sink_count(); ++s) {
    const auto t = static_cast<Vertex>(s + 1);
    NodeEvents& ev = report.sink_events[s];
    BitSet& have = rec.delivered[t];

    // Pull 1: straight from the owners the sink touches.
    helpers.clear();
    std::size_t owner_links = 0;
    for (std::uint32_t r : net.sink_relays[s]) {
      if (bit_of[r] == kNone) {
        helpers.push_back(r);
        continue;
      }
      const auto b = static_cast<std::uint32_t>(bit_of[r]);
      rec.transmissions.push_back(Transmission{net.relay_node(r), t, b, 2});
      have.set(b);
      ++owner_links;
    }
    const double links = static_cast<double>(owner_links);
    ev.a2 = links < window_low || links > window_high;

    columns.clear();
    for (std::size_t b = 0; b < bits; ++b) {
      if (!have.test(b)) columns.push_back(static_cast<std::uint32_t>(b));
    }
    const std::size_t missing = columns.size();
    if (missing == 0) continue;

    // Pull 2: match missing bits to sink-side relays.
    if (options.pull == PullMode::kRestricted) {
      const std::size_t width = std::min(std::max(report.beta, missing), bits);
      if (helpers.size() < width) {
        ev.a3 = true;
        continue;
      }
      helpers.resize(width);
      for (std::size_t b = 0; b < bits && columns.size() < width; ++b) {
        if (have.test(b)) columns.push_back(static_cast<std::uint32_t>(b));
      }
    } else if (helpers.size() < missing) {
      ev.a3 = true;
    }

    for (std::uint32_t c = 0; c < columns.size(); ++c) column_of[columns[c]] = c;
    bitmap.reset(columns.size(), helpers.size());
    for (std::uint32_t row = 0; row < helpers.size(); ++row) {
      for (std::uint32_t b : relay_bits[helpers[row]]) {
        if (column_of[b] != kNone) bitmap.add_edge(static_cast<std::uint32_t>(column_of[b]), row);
      }
    }
    for (std::uint32_t b : columns) column_of[b] = kNone;

    const Matching matching = max_matching(bitmap);
    if (!matching.complete) {
      if (!ev.a3) ev.m = true;
      if (options.pull == PullMode::kRestricted) continue;
    }
    for (const auto& [column, row] : matching.pairs) {
      if (column >= missing) continue;
      const std::uint32_t b = columns[column];
      const Vertex relay = net.relay_node(helpers[row]);
      if (!rec.delivered[relay].test(b)) {
        rec.transmissions.push_back(Transmission{net.relay_node(report.owners[b]), relay, b, 2});
        rec.delivered[relay].set(b);
      }
      rec.transmissions.push_back(Transmission{relay, t, b, 3});
      have.set(b);
    }
  }

  bool failed = false;
  for (const NodeEvents& ev : report.sink_events) failed = failed || ev.a3 || ev.m;
  report.success = !failed;
  rec.success = report.success;
  return report;
}

std::set<std::pair<Vertex, Vertex>> used_links(const DeliveryRecord& rec) {
  std::set<std::pair<Vertex, Vertex>> links;
  for (const Transmission& t : rec.transmissions) {
    links.emplace(std::min(t.tail, t.head), std::max(t.tail, t.head));
  }
  return links;
}

}  // namespace

std::size_t flow_bit_budget(std::size_t relays, double p, double eps) {
  return floor_count(static_cast<double>(relays) * p * (1.0 - eps));
}

std::size_t flow_beta(std::size_t relays, double p, double eps) {
  const double q = p * (1.0 - eps);
  return floor_count(static_cast<double>(relays) * q * (1.0 - q));
}

FlowReport run_maxflow(const RelayNetwork& net, const FlowOptions& options) {
  if (net.session_size != 2) {
    throw ParameterError("run_maxflow needs k = 2; use the push-pull variant for several sinks");
  }
  return run_flow(net, options, false);
}

FlowReport run_maxflow_pushpull_multi(const RelayNetwork& net, const FlowOptions& options) {
  return run_flow(net, options, true);
}

MulticastReport run_multicast(std::size_t n, std::size_t k, double p, const MulticastOptions& options) {
  if (k < 2 || k > n) {
    throw ParameterError("session size k=" + std::to_string(k) + " out of range [2, " + std::to_string(n) + "]");
  }
  if (!(p > 0.0 && p <= 1.0)) throw ParameterError("p must lie in (0,1]");
  if (!(options.eps > 0.0 && options.eps < 1.0)) throw ParameterError("eps must lie in (0,1)");

  MulticastReport out;
  out.n = n;
  out.k = k;
  out.alpha = static_cast<double>(k) / static_cast<double>(n);
  out.p = p;
  out.eps = options.eps;
  out.target = (1.0 - out.alpha / 2.0) * p * (1.0 - 2.0 * options.eps);
  out.graph = gen_gnp(n, p, derive_seed(options.seed, StreamTag::kMulticastGraph));

  bool ok = true;
  if (allcast_bit_budget(k, p, options.eps) >= 1) {
    AllcastOptions run;
    run.source = 0;
    run.p = p;
    run.eps = options.eps;
    run.seed = derive_seed(options.seed, StreamTag::kMulticastRun, {1});
    run.pull = options.pull;
    out.session = run_allcast(out.graph.induced_prefix(k), run);
    out.session_bits = out.session->delivery.common_bits();
    ok = ok && out.session->success;
  }
  if (k < n && flow_bit_budget(n - k, p, options.eps) >= 1) {
    FlowOptions run;
    run.p = p;
    run.eps = options.eps;
    run.seed = derive_seed(options.seed, StreamTag::kMulticastRun, {2});
    run.pull = options.pull;
    out.relay = run_maxflow_pushpull_multi(relay_network_from_graph(out.graph, k), run);
    out.relay_bits = out.relay->delivery.common_bits();
    ok = ok && out.relay->success;
  }
  out.total = out.session_bits + out.relay_bits;
  out.normalized_rate = static_cast<double>(out.total) / static_cast<double>(n);
  out.success = ok;
  return out;
}

bool multicast_edges_disjoint(const MulticastReport& report) {
  if (!report.session || !report.relay) return true;
  const auto a = used_links(report.session->delivery);
  const auto b = used_links(report.relay->delivery);
  return std::none_of(a.begin(), a.end(), [&](const auto& link) { return b.count(link) > 0; });
}

AuditResult verify_multicast(const MulticastReport& report) {
  if (report.session) {
    AuditResult r = verify_delivery(report.session->delivery, report.graph.induced_prefix(report.k));
    if (!r) return {false, "session part: " + r.diagnostic};
  }
  if (report.relay) {
    const RelayNetwork net = relay_network_from_graph(report.graph, report.k);
    AuditResult r = verify_delivery(report.relay->delivery, net.to_cap_graph());
    if (!r) return {false, "relay part: " + r.diagnostic};
  }
  if (!multicast_edges_disjoint(report)) return {false, "session and relay parts share a link"};
  if (report.total != report.session_bits + report.relay_bits) return {false, "total is not the sum of its parts"};
  return {};
}

}  // namespace pushpull
