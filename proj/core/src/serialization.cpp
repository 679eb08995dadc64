#include "pushpull/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "pushpull/errors.hpp"

namespace pushpull {

namespace {

using json = nlohmann::ordered_json;

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

const json& require(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

std::uint64_t unsigned_value(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0.0 && std::floor(d) == d) return static_cast<std::uint64_t>(d);
  }
  throw InputError("field \"" + where + "\" must be a nonnegative integer");
}

const json& array_field(const json& j, const char* name) {
  const json& v = require(j, name);
  if (!v.is_array()) throw InputError(std::string("field \"") + name + "\" must be an array");
  return v;
}

std::vector<std::uint32_t> index_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw InputError("field \"" + where + "\" must be an array");
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(static_cast<std::uint32_t>(unsigned_value(v[i], where + "[" + std::to_string(i) + "]")));
  }
  return out;
}

std::pair<std::uint32_t, std::uint32_t> index_pair(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) throw InputError("field \"" + where + "\" must be a pair [i, j]");
  return {static_cast<std::uint32_t>(unsigned_value(v[0], where + "[0]")),
          static_cast<std::uint32_t>(unsigned_value(v[1], where + "[1]"))};
}

json delivery_json(const DeliveryRecord& d) {
  json usage = json::array();
  for (const Transmission& t : d.transmissions) usage.push_back({t.tail, t.head, t.bit, t.hop});
  json delivered = json::array();
  for (Vertex v : d.receivers) delivered.push_back(d.delivered[v].count());
  return json{{"bits", d.bits},
              {"source", d.source},
              {"common_bits", d.common_bits()},
              {"receivers", d.receivers},
              {"delivered_counts", delivered},
              {"edge_usage", usage}};
}

json events_json(const std::vector<NodeEvents>& events, std::size_t offset) {
  json out = json::object();
  json a2 = json::array();
  json a3 = json::array();
  json m = json::array();
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].a2) a2.push_back(i + offset);
    if (events[i].a3) a3.push_back(i + offset);
    if (events[i].m) m.push_back(i + offset);
  }
  out["a2"] = a2;
  out["a3"] = a3;
  out["m"] = m;
  return out;
}

json allcast_json(const AllcastReport& r) {
  return json{{"algorithm", "allcast"},
              {"n", r.n},
              {"p", r.p},
              {"eps", r.eps},
              {"B", r.bits()},
              {"beta", r.beta},
              {"success", r.success},
              {"a1", r.a1},
              {"events", events_json(r.events, 0)},
              {"owners", r.owners},
              {"delivery", delivery_json(r.delivery)}};
}

json flow_json(const FlowReport& r) {
  return json{{"algorithm", "flow"},
              {"k", r.session_size},
              {"n", r.relays},
              {"p", r.p},
              {"eps", r.eps},
              {"B", r.bits()},
              {"beta", r.beta},
              {"success", r.success},
              {"a1", r.a1},
              {"sink_events", events_json(r.sink_events, 1)},
              {"owners", r.owners},
              {"delivery", delivery_json(r.delivery)}};
}

json cell_json(const CellStats& s) {
  json trials = json::array();
  for (const TrialOutcome& o : s.outcomes) {
    json t{{"success", o.success}, {"norm_rate", o.norm_rate}, {"bits", o.bits},
           {"a1", o.a1},           {"a2", o.a2},               {"a3", o.a3},
           {"m", o.m},             {"audit_ok", o.audit_ok}};
    if (o.upper_bound) t["upper_bound"] = *o.upper_bound;
    trials.push_back(std::move(t));
  }
  json c{{"n", s.n},
         {"k", s.k},
         {"p", s.p},
         {"eps", s.eps},
         {"trials", s.trials},
         {"successes", s.successes},
         {"success_freq", s.success_freq},
         {"wilson_low", s.wilson_low},
         {"wilson_high", s.wilson_high},
         {"mean_norm_rate", s.mean_norm_rate},
         {"theory_target", s.theory_target},
         {"events", {{"a1", s.a1}, {"a2", s.a2}, {"a3", s.a3}, {"m", s.m}}},
         {"failures_by_first_event",
          {{"a1", s.failed_a1}, {"a2", s.failed_a2}, {"a3", s.failed_a3}, {"m", s.failed_m}}},
         {"audit_failures", s.audit_failures}};
  if (s.mean_upper_bound) c["upper_bound"] = *s.mean_upper_bound;
  c["outcomes"] = std::move(trials);
  return c;
}

}  // namespace

std::string graph_to_json(const CapGraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, e.capacity});
  return json{{"n", g.vertex_count()}, {"edges", edges}}.dump();
}

CapGraph graph_from_json(const std::string& text) {
  const json j = parse(text, "graph");
  const auto n = unsigned_value(require(j, "n"), "n");
  const json& list = array_field(j, "edges");
  std::vector<Edge> edges;
  edges.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const json& e = list[i];
    if (!e.is_array() || e.size() != 3 || !e[2].is_number()) {
      throw InputError("field \"" + where + "\" must be [i, j, capacity]");
    }
    const auto a = static_cast<Vertex>(unsigned_value(e[0], where + "[0]"));
    const auto b = static_cast<Vertex>(unsigned_value(e[1], where + "[1]"));
    edges.push_back(Edge{std::min(a, b), std::max(a, b), e[2].get<double>()});
  }
  return CapGraph::from_edges(static_cast<std::size_t>(n), std::move(edges));
}

std::string bipartite_to_json(const BipartiteGraph& g) {
  json edges = json::array();
  for (const auto& [l, r] : g.edges()) edges.push_back({l, r});
  return json{{"left", g.left_size()}, {"right", g.right_size()}, {"edges", edges}}.dump();
}

BipartiteGraph bipartite_from_json(const std::string& text) {
  const json j = parse(text, "bipartite graph");
  BipartiteGraph g(unsigned_value(require(j, "left"), "left"), unsigned_value(require(j, "right"), "right"));
  const json& list = array_field(j, "edges");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto [l, r] = index_pair(list[i], "edges[" + std::to_string(i) + "]");
    g.add_edge(l, r);
  }
  g.finalize();
  return g;
}

std::string relay_to_json(const RelayNetwork& net) {
  json core = json::array();
  for (const Edge& e : net.relay_core.edges()) core.push_back({e.u, e.v});
  return json{{"k", net.session_size},
              {"n", net.relay_count},
              {"source", net.source_relays},
              {"sinks", net.sink_relays},
              {"core", core}}
      .dump();
}

RelayNetwork relay_from_json(const std::string& text) {
  const json j = parse(text, "relay network");
  RelayNetwork net;
  net.session_size = unsigned_value(require(j, "k"), "k");
  net.relay_count = unsigned_value(require(j, "n"), "n");
  if (net.session_size < 2) throw InputError("field \"k\" must be at least 2");
  auto check_relays = [&](std::vector<std::uint32_t> list, const std::string& where) {
    for (std::uint32_t r : list) {
      if (r >= net.relay_count) throw InputError("field \"" + where + "\" names relay " + std::to_string(r) + " >= n");
    }
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw InputError("field \"" + where + "\" repeats a relay");
    }
    return list;
  };
  net.source_relays = check_relays(index_list(require(j, "source"), "source"), "source");
  const json& sinks = array_field(j, "sinks");
  if (sinks.size() != net.session_size - 1) throw InputError("field \"sinks\" must list k-1 sinks");
  for (std::size_t s = 0; s < sinks.size(); ++s) {
    const std::string where = "sinks[" + std::to_string(s) + "]";
    net.sink_relays.push_back(check_relays(index_list(sinks[s], where), where));
  }
  const json& core = array_field(j, "core");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < core.size(); ++i) {
    const auto [a, b] = index_pair(core[i], "core[" + std::to_string(i) + "]");
    edges.push_back(Edge{std::min(a, b), std::max(a, b), 1.0});
  }
  net.relay_core = CapGraph::from_edges(net.relay_count, std::move(edges));
  return net;
}

std::string report_to_json(const AllcastReport& r) { return allcast_json(r).dump(); }

std::string report_to_json(const FlowReport& r) { return flow_json(r).dump(); }

std::string report_to_json(const MulticastReport& r) {
  json j{{"algorithm", "multicast"},
         {"n", r.n},
         {"k", r.k},
         {"alpha", r.alpha},
         {"p", r.p},
         {"eps", r.eps},
         {"session_bits", r.session_bits},
         {"relay_bits", r.relay_bits},
         {"total", r.total},
         {"normalized_rate", r.normalized_rate},
         {"target", r.target},
         {"success", r.success}};
  j["session"] = r.session ? allcast_json(*r.session) : json(nullptr);
  j["relay"] = r.relay ? flow_json(*r.relay) : json(nullptr);
  return j.dump();
}

std::string report_to_json(const LayeredReport& r) {
  json layers = json::array();
  for (const LayerOutcome& layer : r.layers) {
    json l{{"index", layer.index}, {"p", layer.p}, {"skipped", layer.skipped}, {"common_bits", layer.common_bits}};
    l["report"] = layer.report ? allcast_json(*layer.report) : json(nullptr);
    layers.push_back(std::move(l));
  }
  return json{{"algorithm", "layered_allcast"},
              {"delta", r.quantization.delta},
              {"layers_count", r.quantization.layers},
              {"total_rate", r.total_rate},
              {"normalized_rate", r.normalized_rate},
              {"success", r.success},
              {"layers", layers}}
      .dump();
}

std::string matching_frequency_to_json(const MatchingFrequency& f) {
  return json{{"n", f.n},
              {"p", f.p},
              {"trials", f.trials},
              {"failures", f.failures},
              {"frequency", f.frequency},
              {"wilson_low", f.wilson_low},
              {"wilson_high", f.wilson_high},
              {"gamma_bound", f.gamma}}
      .dump();
}

std::string strength_to_json(const StrengthResult& s) {
  return json{{"strength", s.value}, {"argmin_blocks", s.argmin.blocks}}.dump();
}

std::string packing_to_json(const PackingResult& p, const TreeSet& trees, const CapGraph& g) {
  json tight = json::array();
  for (EdgeId id : p.tight_edges) tight.push_back({g.edge(id).u, g.edge(id).v});
  return json{{"lp_value", p.value},
              {"num_trees", trees.size()},
              {"kind", trees.kind == TreeKind::kSpanning ? "spanning" : "steiner"},
              {"weights", p.weights},
              {"tight_edges", tight}}
      .dump();
}

std::string experiment_to_json(const ExperimentConfig& cfg, const std::vector<CellStats>& stats) {
  json config{{"kind", to_string(cfg.kind)},
              {"n", cfg.n},
              {"k", cfg.k},
              {"alpha", cfg.alpha},
              {"p", cfg.p},
              {"eps", cfg.eps},
              {"tau", cfg.tau},
              {"trials", cfg.trials},
              {"seed", cfg.seed},
              {"pull", cfg.pull.value_or(default_pull(cfg.kind)) == PullMode::kRestricted ? "restricted"
                                                                                          : "all_helpers"},
              {"upper_bound", cfg.upper_bound}};
  if (cfg.distribution) config["distribution"] = cfg.distribution->describe();
  json cells = json::array();
  for (const CellStats& s : stats) cells.push_back(cell_json(s));
  return json{{"config", config}, {"cells", cells}}.dump(2);
}

}  // namespace pushpull
