#include "pushpull/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "pushpull/errors.hpp"
#include "pushpull/flow.hpp"
#include "pushpull/graph_models.hpp"
#include "pushpull/matching.hpp"
#include "pushpull/oracles.hpp"
#include "pushpull/random.hpp"
#include "pushpull/stats.hpp"

namespace pushpull {

namespace {

using nlohmann::json;

struct KindName {
  ExperimentKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {ExperimentKind::kAllcast, "allcast"},
    {ExperimentKind::kAllcastVanishing, "allcast_vanishing"},
    {ExperimentKind::kLayered, "layered"},
    {ExperimentKind::kMaxflow, "maxflow"},
    {ExperimentKind::kRelayMulti, "relay_multi"},
    {ExperimentKind::kMulticast, "multicast"},
    {ExperimentKind::kMatching, "matching"},
    {ExperimentKind::kStrengthSweep, "strength_sweep"},
};

bool uses_session(ExperimentKind kind) {
  return kind == ExperimentKind::kRelayMulti || kind == ExperimentKind::kMulticast;
}

bool uses_distribution(ExperimentKind kind) {
  return kind == ExperimentKind::kLayered || kind == ExperimentKind::kStrengthSweep;
}

template <typename T>
T field(const json& j, const char* name) {
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("config field \"") + name + "\" is missing or has the wrong type");
  }
}

template <typename T>
std::vector<T> list_field(const json& j, const char* name) {
  const json& v = j.at(name);
  if (v.is_array()) return field<std::vector<T>>(j, name);
  return {field<T>(j, name)};
}

std::string number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

// Common-bit count per receiver, normalized by n.
double per_node(std::size_t bits, std::size_t n) { return static_cast<double>(bits) / static_cast<double>(n); }

void copy_events(const AllcastReport& r, TrialOutcome& out) {
  out.a1 = r.a1;
  out.a2 = r.a2_count() > 0;
  out.a3 = r.a3_count() > 0;
  out.m = r.m_count() > 0;
}

void copy_events(const FlowReport& r, TrialOutcome& out) {
  out.a1 = out.a1 || r.a1;
  for (const NodeEvents& ev : r.sink_events) {
    out.a2 = out.a2 || ev.a2;
    out.a3 = out.a3 || ev.a3;
    out.m = out.m || ev.m;
  }
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (const auto& [k, text] : kKindNames) {
    if (name == text) return k;
  }
  throw InputError("config field \"kind\": unknown experiment kind \"" + name + "\"");
}

PullMode default_pull(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kAllcast:
    case ExperimentKind::kMaxflow:
    case ExperimentKind::kRelayMulti:
      return PullMode::kRestricted;
    default:
      return PullMode::kAllHelpers;
  }
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("config must be a JSON object");
  static const std::vector<std::string> known = {"kind", "n", "k", "alpha", "p", "distribution", "eps",
                                                 "tau", "trials", "seed", "pull", "upper_bound", "jobs",
                                                 "output"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw InputError("config field \"" + key + "\" is not recognized");
    }
  }

  ExperimentConfig cfg;
  cfg.kind = parse_experiment_kind(field<std::string>(j, "kind"));
  cfg.n = list_field<std::size_t>(j, "n");
  if (j.contains("k")) cfg.k = list_field<std::size_t>(j, "k");
  if (j.contains("alpha")) cfg.alpha = list_field<double>(j, "alpha");
  if (j.contains("p")) cfg.p = field<double>(j, "p");
  if (j.contains("distribution")) {
    try {
      cfg.distribution = CapacityDistribution::parse(field<std::string>(j, "distribution"));
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("config field \"distribution\": ") + e.what());
    }
  }
  if (j.contains("eps")) cfg.eps = field<double>(j, "eps");
  if (j.contains("tau")) cfg.tau = field<double>(j, "tau");
  if (j.contains("trials")) cfg.trials = field<std::size_t>(j, "trials");
  if (j.contains("seed")) cfg.seed = field<std::uint64_t>(j, "seed");
  if (j.contains("pull")) {
    const auto mode = field<std::string>(j, "pull");
    if (mode == "restricted") {
      cfg.pull = PullMode::kRestricted;
    } else if (mode == "all_helpers") {
      cfg.pull = PullMode::kAllHelpers;
    } else {
      throw InputError("config field \"pull\" must be \"restricted\" or \"all_helpers\"");
    }
  }
  if (j.contains("upper_bound")) cfg.upper_bound = field<bool>(j, "upper_bound");
  if (j.contains("jobs")) cfg.jobs = field<std::size_t>(j, "jobs");
  if (j.contains("output")) cfg.output = field<std::string>(j, "output");
  validate(cfg);
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.n.empty()) throw ParameterError("config field \"n\": grid is empty");
  if (cfg.trials < 1) throw ParameterError("config field \"trials\" must be at least 1");
  if (cfg.jobs < 1) throw ParameterError("config field \"jobs\" must be at least 1");
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw ParameterError("config field \"eps\" must lie in (0,1)");
  if (!uses_distribution(cfg.kind) && cfg.kind != ExperimentKind::kAllcastVanishing &&
      !(cfg.p > 0.0 && cfg.p <= 1.0)) {
    throw ParameterError("config field \"p\" must lie in (0,1]");
  }
  if (uses_distribution(cfg.kind) && !cfg.distribution) {
    throw ParameterError("config field \"distribution\" is required for " + to_string(cfg.kind));
  }
  if (cfg.kind == ExperimentKind::kAllcastVanishing && !(cfg.tau > 0.0)) {
    throw ParameterError("config field \"tau\" must be positive");
  }
  if (uses_session(cfg.kind)) {
    if (cfg.k.empty() && cfg.alpha.empty()) {
      throw ParameterError("config field \"k\" or \"alpha\" is required for " + to_string(cfg.kind));
    }
    for (double a : cfg.alpha) {
      if (!(a > 0.0 && a <= 1.0)) throw ParameterError("config field \"alpha\" must lie in (0,1]");
    }
  }
  for (std::size_t n : cfg.n) {
    if (n < 2 && cfg.kind != ExperimentKind::kMaxflow && cfg.kind != ExperimentKind::kRelayMulti &&
        cfg.kind != ExperimentKind::kMatching) {
      throw ParameterError("config field \"n\": every size must be at least 2");
    }
    if (n < 1) throw ParameterError("config field \"n\": every size must be at least 1");
  }
  for (const Cell& cell : experiment_cells(cfg)) {
    if (cfg.kind == ExperimentKind::kMulticast && (cell.k < 2 || cell.k > cell.n)) {
      throw ParameterError("config field \"k\": session size " + std::to_string(cell.k) + " outside [2, n]");
    }
    if (cfg.kind == ExperimentKind::kRelayMulti && cell.k < 2) {
      throw ParameterError("config field \"k\": session size must be at least 2");
    }
  }
}

std::vector<Cell> experiment_cells(const ExperimentConfig& cfg) {
  std::vector<Cell> cells;
  for (std::size_t n : cfg.n) {
    if (!uses_session(cfg.kind)) {
      cells.push_back(Cell{n, 0});
    } else if (!cfg.k.empty()) {
      for (std::size_t k : cfg.k) cells.push_back(Cell{n, k});
    } else {
      for (double a : cfg.alpha) {
        cells.push_back(Cell{n, static_cast<std::size_t>(std::ceil(a * static_cast<double>(n) - 1e-9))});
      }
    }
  }
  return cells;
}

std::uint64_t trial_seed(const ExperimentConfig& cfg, std::size_t cell, std::size_t trial) {
  return derive_seed(cfg.seed, StreamTag::kExperimentTrial,
                     {static_cast<std::uint64_t>(cfg.kind), cell, trial});
}

double theory_target(const ExperimentConfig& cfg, const Cell& cell) {
  switch (cfg.kind) {
    case ExperimentKind::kAllcast:
      return cfg.p / 2.0 * (1.0 - cfg.eps);
    case ExperimentKind::kAllcastVanishing:
      return 0.5;
    case ExperimentKind::kLayered:
      return cfg.distribution->mean() / 2.0 * (1.0 - 2.0 * cfg.eps);
    case ExperimentKind::kMaxflow:
    case ExperimentKind::kRelayMulti:
      return cfg.p * (1.0 - cfg.eps);
    case ExperimentKind::kMulticast: {
      const double alpha = static_cast<double>(cell.k) / static_cast<double>(cell.n);
      return (1.0 - alpha / 2.0) * cfg.p * (1.0 - 2.0 * cfg.eps);
    }
    case ExperimentKind::kMatching:
      return gamma_bound(cell.n, cfg.p);
    case ExperimentKind::kStrengthSweep:
      return cfg.distribution->mean() / 2.0;
  }
  return 0.0;
}

TrialOutcome run_trial(const ExperimentConfig& cfg, const Cell& cell, std::uint64_t seed) {
  const PullMode pull = cfg.pull.value_or(default_pull(cfg.kind));
  const std::uint64_t graph_seed = derive_seed(seed, StreamTag::kTrialGraph);
  const std::uint64_t run_seed = derive_seed(seed, StreamTag::kTrialRun);
  const std::size_t n = cell.n;
  TrialOutcome out;

  switch (cfg.kind) {
    case ExperimentKind::kAllcast: {
      const CapGraph g = gen_gnp(n, cfg.p, graph_seed);
      const AllcastReport r = run_allcast(g, AllcastOptions{0, cfg.p, cfg.eps, run_seed, pull});
      copy_events(r, out);
      out.success = r.success;
      out.bits = r.delivery.common_bits();
      out.norm_rate = per_node(out.bits, n);
      out.audit_ok = static_cast<bool>(verify_delivery(r.delivery, g));
      if (cfg.upper_bound) out.upper_bound = upper_bound_allcast(g) / static_cast<double>(n);
      break;
    }
    case ExperimentKind::kAllcastVanishing: {
      // Same instance as run_allcast_vanishing(n, tau, {eps, seed, pull}), kept
      // here so the graph is at hand for the audit.
      const double p_n = vanishing_probability(n, cfg.tau);
      const CapGraph g = gen_gnp(n, p_n, derive_seed(seed, StreamTag::kVanishingGraph));
      const AllcastReport r =
          run_allcast(g, AllcastOptions{0, p_n, cfg.eps, derive_seed(seed, StreamTag::kVanishingRun), pull});
      copy_events(r, out);
      out.success = r.success;
      out.bits = r.delivery.common_bits();
      const double scale = static_cast<double>(n) * p_n;
      out.norm_rate = static_cast<double>(out.bits) / scale;
      out.audit_ok = static_cast<bool>(verify_delivery(r.delivery, g));
      if (cfg.upper_bound) out.upper_bound = upper_bound_allcast(g) / scale;
      break;
    }
    case ExperimentKind::kLayered: {
      const CapGraph g = gen_complete_capacitated(n, *cfg.distribution, graph_seed);
      LayeredOptions opts;
      opts.eps = cfg.eps;
      opts.seed = run_seed;
      opts.pull = pull;
      const LayeredReport r = layered_allcast(g, *cfg.distribution, opts);
      out.success = r.success;
      for (const LayerOutcome& layer : r.layers) {
        if (layer.report) {
          TrialOutcome layer_events;
          copy_events(*layer.report, layer_events);
          out.a1 = out.a1 || layer_events.a1;
          out.a2 = out.a2 || layer_events.a2;
          out.a3 = out.a3 || layer_events.a3;
          out.m = out.m || layer_events.m;
          out.bits += layer.common_bits;
        }
      }
      out.norm_rate = r.normalized_rate;
      out.audit_ok = static_cast<bool>(verify_layered(r, g));
      if (cfg.upper_bound) out.upper_bound = upper_bound_allcast(g) / static_cast<double>(n);
      break;
    }
    case ExperimentKind::kMaxflow:
    case ExperimentKind::kRelayMulti: {
      const std::size_t k = cfg.kind == ExperimentKind::kMaxflow ? 2 : cell.k;
      const RelayNetwork net = gen_relay_network(k, n, cfg.p, graph_seed);
      const FlowOptions opts{cfg.p, cfg.eps, run_seed, pull};
      const FlowReport r = cfg.kind == ExperimentKind::kMaxflow ? run_maxflow(net, opts)
                                                                : run_maxflow_pushpull_multi(net, opts);
      copy_events(r, out);
      out.success = r.success;
      out.bits = r.delivery.common_bits();
      out.norm_rate = per_node(out.bits, n);
      out.audit_ok = static_cast<bool>(verify_delivery(r.delivery, net.to_cap_graph()));
      break;
    }
    case ExperimentKind::kMulticast: {
      const MulticastReport r = run_multicast(n, cell.k, cfg.p, MulticastOptions{cfg.eps, seed, pull});
      if (r.session) copy_events(*r.session, out);
      if (r.relay) copy_events(*r.relay, out);
      out.success = r.success;
      out.bits = r.total;
      out.norm_rate = r.normalized_rate;
      out.audit_ok = static_cast<bool>(verify_multicast(r));
      if (cfg.upper_bound) out.upper_bound = upper_bound_multicast(r.graph, cell.k) / static_cast<double>(n);
      break;
    }
    case ExperimentKind::kMatching: {
      const BipartiteGraph b = gen_bipartite(n, n, cfg.p, graph_seed);
      const Matching mm = max_matching(b);
      out.success = mm.complete;
      out.m = !mm.complete;
      out.bits = mm.size();
      out.norm_rate = per_node(mm.size(), n);
      break;
    }
    case ExperimentKind::kStrengthSweep: {
      const CapGraph g = gen_complete_capacitated(n, *cfg.distribution, graph_seed);
      out.success = true;
      out.norm_rate = upper_bound_allcast(g) / static_cast<double>(n);
      out.upper_bound = out.norm_rate;
      break;
    }
  }
  return out;
}

std::vector<CellStats> run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const std::vector<Cell> cells = experiment_cells(cfg);
  std::vector<std::vector<TrialOutcome>> results(cells.size(), std::vector<TrialOutcome>(cfg.trials));

  const std::size_t tasks = cells.size() * cfg.trials;
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t task = next.fetch_add(1);
      if (task >= tasks) return;
      const std::size_t c = task / cfg.trials;
      const std::size_t t = task % cfg.trials;
      try {
        results[c][t] = run_trial(cfg, cells[c], trial_seed(cfg, c, t));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(tasks);
      }
    }
  };
  const std::size_t threads = std::min(cfg.jobs, std::max<std::size_t>(tasks, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  std::vector<CellStats> stats;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellStats s;
    s.kind = cfg.kind;
    s.n = cells[c].n;
    s.k = cells[c].k;
    s.p = cfg.kind == ExperimentKind::kAllcastVanishing ? vanishing_probability(s.n, cfg.tau)
          : uses_distribution(cfg.kind)                  ? cfg.distribution->mean()
                                                         : cfg.p;
    s.eps = cfg.eps;
    s.trials = cfg.trials;
    s.theory_target = theory_target(cfg, cells[c]);
    double rate_sum = 0.0;
    double bound_sum = 0.0;
    bool have_bound = true;
    for (const TrialOutcome& o : results[c]) {
      s.successes += o.success ? 1 : 0;
      rate_sum += o.norm_rate;
      if (o.upper_bound) {
        bound_sum += *o.upper_bound;
      } else {
        have_bound = false;
      }
      s.a1 += o.a1;
      s.a2 += o.a2;
      s.a3 += o.a3;
      s.m += o.m;
      s.audit_failures += o.audit_ok ? 0 : 1;
      if (!o.success) {
        if (o.a1) {
          ++s.failed_a1;
        } else if (o.a2) {
          ++s.failed_a2;
        } else if (o.a3) {
          ++s.failed_a3;
        } else {
          ++s.failed_m;
        }
      }
    }
    const auto trials = static_cast<double>(cfg.trials);
    s.success_freq = static_cast<double>(s.successes) / trials;
    const Interval ci = wilson_interval(s.successes, cfg.trials);
    s.wilson_low = ci.low;
    s.wilson_high = ci.high;
    s.mean_norm_rate = rate_sum / trials;
    if (have_bound) s.mean_upper_bound = bound_sum / trials;
    s.outcomes = std::move(results[c]);
    stats.push_back(std::move(s));
  }
  return stats;
}

std::string convergence_table(const std::vector<CellStats>& stats, bool upper_bound_column) {
  std::vector<const CellStats*> rows;
  for (const CellStats& s : stats) rows.push_back(&s);
  std::stable_sort(rows.begin(), rows.end(), [](const CellStats* a, const CellStats* b) {
    return a->n != b->n ? a->n < b->n : a->k < b->k;
  });
  std::ostringstream out;
  out << "n,k,p,eps,trials,success_freq,wilson_low,wilson_high,mean_norm_rate,theory_target,a1,a2,a3,m";
  if (upper_bound_column) out << ",upper_bound";
  out << '\n';
  for (const CellStats* s : rows) {
    out << s->n << ',' << s->k << ',' << number(s->p) << ',' << number(s->eps) << ',' << s->trials << ','
        << number(s->success_freq) << ',' << number(s->wilson_low) << ',' << number(s->wilson_high) << ','
        << number(s->mean_norm_rate) << ',' << number(s->theory_target) << ',' << s->a1 << ',' << s->a2
        << ',' << s->a3 << ',' << s->m;
    if (upper_bound_column) {
      out << ',';
      if (s->mean_upper_bound) out << number(*s->mean_upper_bound);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace pushpull
