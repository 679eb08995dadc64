#include "pushpull/allcast.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pushpull/errors.hpp"
#include "pushpull/matching.hpp"
#include "pushpull/random.hpp"
#include "rounding.hpp"

namespace pushpull {

namespace {

using detail::floor_count;

constexpr std::int64_t kNone = -1;

void check_run_parameters(double p, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("eps must lie in (0,1)");
  if (!(p > 0.0 && p <= 1.0)) throw ParameterError("p must lie in (0,1]");
}

}  // namespace

std::size_t AllcastReport::a2_count() const {
  return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [](const NodeEvents& e) { return e.a2; }));
}
std::size_t AllcastReport::a3_count() const {
  return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [](const NodeEvents& e) { return e.a3; }));
}
std::size_t AllcastReport::m_count() const {
  return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [](const NodeEvents& e) { return e.m; }));
}

Orientation orient_edges(const CapGraph& g, Vertex source, std::uint64_t seed) {
  if (source >= g.vertex_count()) throw InputError("source is not a vertex of the graph");
  const auto edges = g.edges();
  std::vector<std::uint8_t> forward(edges.size(), 0);
  std::size_t i = 0;
  while (i < edges.size()) {
    const Vertex u = edges[i].u;
    Rng rng(derive_seed(seed, StreamTag::kOrientationRow, {u}));
    for (; i < edges.size() && edges[i].u == u; ++i) {
      if (u == source) {
        forward[i] = 1;
      } else if (edges[i].v == source) {
        forward[i] = 0;
      } else {
        forward[i] = static_cast<std::uint8_t>(rng.next() >> 63);
      }
    }
  }
  return Orientation(&g, std::move(forward));
}

std::size_t allcast_bit_budget(std::size_t n, double p, double eps) {
  if (n < 2) return 0;
  return floor_count(static_cast<double>(n - 1) * p * (1.0 - eps) / 2.0);
}

std::size_t allcast_beta(std::size_t bits, double p, double eps) {
  return floor_count(static_cast<double>(bits) * (1.0 - p * (1.0 - eps) / 2.0));
}

AllcastReport run_allcast(const CapGraph& g, const AllcastOptions& options) {
  const std::size_t n = g.vertex_count();
  const Vertex source = options.source;
  if (source >= n) throw InputError("source is not a vertex of the graph");
  if (!g.is_binary()) throw InputError("ALLCAST requires binary (0/1) capacities");
  check_run_parameters(options.p, options.eps);
  const std::size_t bits = allcast_bit_budget(n, options.p, options.eps);
  if (bits < 1) {
    throw ParameterError("bit budget B = floor((n-1) p (1-eps)/2) is 0 for n=" + std::to_string(n));
  }

  AllcastReport report;
  report.n = n;
  report.p = options.p;
  report.eps = options.eps;
  report.beta = allcast_beta(bits, options.p, options.eps);
  report.events.resize(n);
  DeliveryRecord& rec = report.delivery;
  rec.node_count = n;
  rec.source = source;
  rec.bits = bits;
  rec.delivered.assign(n, BitSet(bits));
  rec.delivered[source].set();
  for (Vertex v = 0; v < n; ++v) {
    if (v != source) rec.receivers.push_back(v);
  }

  const Adjacency adj(g);
  const Orientation dir = orient_edges(g, source, options.seed);

  // Push 1: bits 0..B-1 to the B lowest-indexed neighbors of the source.
  const auto source_links = adj.neighbors(source);
  if (source_links.size() < bits) {
    report.a1 = true;
    report.success = false;
    return report;
  }
  std::vector<std::int64_t> bit_of(n, kNone);
  report.owners.reserve(bits);
  for (std::uint32_t b = 0; b < bits; ++b) {
    const Vertex owner = source_links[b].neighbor;
    report.owners.push_back(owner);
    bit_of[owner] = b;
    rec.delivered[owner].set(b);
    rec.transmissions.push_back(Transmission{source, owner, b, 1});
  }
  auto is_relay = [&](Vertex v) { return v != source && bit_of[v] == kNone; };

  // Push 2: every owner forwards its bit on all outward links.
  std::vector<std::uint32_t> owner_links_in(n, 0);
  std::vector<std::vector<std::uint32_t>> relay_bits(n);
  for (std::uint32_t b = 0; b < bits; ++b) {
    const Vertex owner = report.owners[b];
    for (const auto& [x, edge] : adj.neighbors(owner)) {
      if (!dir.points_from(edge, owner)) continue;
      rec.transmissions.push_back(Transmission{owner, x, b, 2});
      rec.delivered[x].set(b);
      ++owner_links_in[x];
      if (is_relay(x)) relay_bits[x].push_back(b);
    }
  }

  // Pull 1 is the receipt of those pushes. Pull 2: match missing bits to helper relays.
  const double expected_links = static_cast<double>(bits) * options.p / 2.0;
  const double window_low = expected_links * (1.0 - options.eps);
  const double window_high = expected_links * (1.0 + options.eps);
  std::vector<std::int64_t> column_of(bits, kNone);
  std::vector<std::uint32_t> columns;
  std::vector<Vertex> helpers;
  BipartiteGraph bitmap;

  for (Vertex t = 0; t < n; ++t) {
    if (t == source) continue;
    NodeEvents& ev = report.events[t];
    const double links = owner_links_in[t];
    ev.a2 = links < window_low || links > window_high;

    BitSet& have = rec.delivered[t];
    columns.clear();
    for (std::size_t b = 0; b < bits; ++b) {
      if (!have.test(b)) columns.push_back(static_cast<std::uint32_t>(b));
    }
    const std::size_t missing = columns.size();
    if (missing == 0) continue;

    helpers.clear();
    for (const auto& [r, edge] : adj.neighbors(t)) {
      if (is_relay(r) && dir.points_from(edge, r)) helpers.push_back(r);
    }

    std::size_t width = missing;
    if (options.pull == PullMode::kRestricted) {
      const std::size_t available = bits - (bit_of[t] == kNone ? 0 : 1);
      width = std::min(std::max(report.beta, missing), available);
      if (helpers.size() < width) {
        ev.a3 = true;
        continue;
      }
      helpers.resize(width);
      for (std::size_t b = 0; b < bits && columns.size() < width; ++b) {
        if (have.test(b) && static_cast<std::int64_t>(b) != bit_of[t]) {
          columns.push_back(static_cast<std::uint32_t>(b));
        }
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
      if (column >= missing) continue;  // padding column, already held
      const std::uint32_t b = columns[column];
      rec.transmissions.push_back(Transmission{helpers[row], t, b, 3});
      have.set(b);
    }
  }

  bool failed = false;
  for (const NodeEvents& ev : report.events) failed = failed || ev.a3 || ev.m;
  report.success = !failed;
  rec.success = report.success;
  return report;
}

double vanishing_probability(std::size_t n, double tau) {
  if (n < 2) throw ParameterError("n must be at least 2");
  if (!(tau > 0.0)) throw ParameterError("tau must be positive");
  const double nd = static_cast<double>(n);
  const double p = std::sqrt(tau * std::log(nd) / nd);
  if (p > 1.0 + 1e-12) {
    throw ParameterError("p_n = sqrt(tau ln n / n) = " + std::to_string(p) + " exceeds 1");
  }
  return std::min(p, 1.0);
}

VanishingReport run_allcast_vanishing(std::size_t n, double tau, const VanishingOptions& options) {
  VanishingReport out;
  out.p_n = vanishing_probability(n, tau);
  const CapGraph g = gen_gnp(n, out.p_n, derive_seed(options.seed, StreamTag::kVanishingGraph));
  AllcastOptions run;
  run.source = 0;
  run.p = out.p_n;
  run.eps = options.eps;
  run.seed = derive_seed(options.seed, StreamTag::kVanishingRun);
  run.pull = options.pull;
  out.report = run_allcast(g, run);
  return out;
}

LayeredReport layered_allcast(const CapGraph& g, const CapacityDistribution& dist,
                              const LayeredOptions& options) {
  if (!(dist.mean() > 0.0)) throw ParameterError("distribution has E[C] = 0");
  if (!(options.eps > 0.0 && options.eps < 1.0)) throw ParameterError("eps must lie in (0,1)");
  LayeredReport out;
  out.quantization = options.quantization.value_or(choose_quantization(dist, options.eps));
  const auto layers = quantize_layers(g, out.quantization.delta, out.quantization.layers);
  const std::size_t n = g.vertex_count();
  bool all_ok = true;
  std::size_t bits_total = 0;
  for (std::size_t k = 1; k <= layers.size(); ++k) {
    LayerOutcome layer;
    layer.index = k;
    layer.p = dist.tail(static_cast<double>(k) * out.quantization.delta);
    if (layer.p <= 0.0 || allcast_bit_budget(n, layer.p, options.eps) < 1) {
      layer.skipped = true;
      out.layers.push_back(std::move(layer));
      continue;
    }
    AllcastOptions run;
    run.source = options.source;
    run.p = layer.p;
    run.eps = options.eps;
    run.seed = derive_seed(options.seed, StreamTag::kLayer, {k});
    run.pull = options.pull;
    layer.report = run_allcast(layers[k - 1], run);
    layer.common_bits = layer.report->delivery.common_bits();
    bits_total += layer.common_bits;
    all_ok = all_ok && layer.report->success;
    out.layers.push_back(std::move(layer));
  }
  out.total_rate = out.quantization.delta * static_cast<double>(bits_total);
  out.normalized_rate = out.total_rate / static_cast<double>(n);
  out.success = all_ok;
  return out;
}

AuditResult verify_layered(const LayeredReport& report, const CapGraph& g) {
  const auto layers = quantize_layers(g, report.quantization.delta, report.quantization.layers);
  if (layers.size() != report.layers.size()) return {false, "layer count mismatch"};
  std::vector<double> load(g.edge_count(), 0.0);
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const auto& outcome = report.layers[k];
    if (!outcome.report) continue;
    AuditResult layer_audit = verify_delivery(outcome.report->delivery, layers[k]);
    if (!layer_audit) {
      return {false, "layer " + std::to_string(k + 1) + ": " + layer_audit.diagnostic};
    }
    for (const Transmission& t : outcome.report->delivery.transmissions) {
      const auto id = g.find_edge(t.tail, t.head);
      if (!id) return {false, "layer " + std::to_string(k + 1) + " uses a missing link"};
      load[*id] += report.quantization.delta;
    }
  }
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    if (load[id] > g.edge(id).capacity + 1e-9) {
      return {false, "aggregate load exceeds capacity on link " + std::to_string(g.edge(id).u) + "-" +
                         std::to_string(g.edge(id).v)};
    }
  }
  return {};
}

}  // namespace pushpull
