#include "cli.hpp"

#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pushpull/allcast.hpp"
#include "pushpull/errors.hpp"
#include "pushpull/flow.hpp"
#include "pushpull/graph_models.hpp"
#include "pushpull/harness.hpp"
#include "pushpull/matching.hpp"
#include "pushpull/oracles.hpp"
#include "pushpull/random.hpp"
#include "pushpull/serialization.hpp"

namespace pushpull::cli {

namespace {

struct Args {
  std::string model = "gnp";
  std::optional<std::size_t> n;
  std::optional<std::size_t> k;
  std::optional<double> p;
  std::optional<double> eps;
  std::optional<double> tau;
  std::string dist;
  std::optional<std::uint64_t> seed;
  Vertex source = 0;
  std::string pull;
  std::string graph_file;
  std::string relay_file;
  std::string bipartite_file;
  std::string config_file;
  std::vector<Vertex> session;
  std::size_t trials = 1000;
  std::size_t jobs = 1;
  std::string out_file;
  std::string sidecar_file;
  bool verbose = false;
  bool strict = false;
};

std::string read_file(const std::string& path, const char* flag) {
  std::ifstream in(path);
  if (!in) throw InputError(std::string(flag) + ": cannot read \"" + path + "\"");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <typename T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw ParameterError(std::string(flag) + " is required here");
  return *v;
}

std::optional<PullMode> pull_mode(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text == "restricted") return PullMode::kRestricted;
  if (text == "all_helpers") return PullMode::kAllHelpers;
  throw ParameterError("--pull must be restricted or all_helpers");
}

CapacityDistribution distribution(const std::string& text) {
  try {
    return CapacityDistribution::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ParameterError(std::string("--dist: ") + e.what());
  }
}

std::uint64_t graph_seed(const Args& a) { return derive_seed(*a.seed, StreamTag::kTrialGraph); }
std::uint64_t run_seed(const Args& a) { return derive_seed(*a.seed, StreamTag::kTrialRun); }

// Reads --graph or generates from --n with `make`; exactly one must be given.
CapGraph graph_input(const Args& a, const std::function<CapGraph()>& make) {
  if (!a.graph_file.empty()) return graph_from_json(read_file(a.graph_file, "--graph"));
  if (!a.n) throw ParameterError("give either --graph or --n");
  return make();
}

RelayNetwork relay_input(const Args& a, std::size_t k) {
  if (!a.relay_file.empty()) return relay_from_json(read_file(a.relay_file, "--relay-file"));
  return gen_relay_network(k, need(a.n, "--n"), need(a.p, "--p"), graph_seed(a));
}

// Result of a subcommand: primary text and whether the algorithm succeeded.
struct Output {
  std::string text;
  bool success = true;
};

Output cmd_gen(const Args& a) {
  const std::size_t n = need(a.n, "--n");
  if (a.model == "gnp") return {graph_to_json(gen_gnp(n, need(a.p, "--p"), *a.seed))};
  if (a.model == "complete") return {graph_to_json(gen_complete_capacitated(n, distribution(a.dist), *a.seed))};
  if (a.model == "bipartite") return {bipartite_to_json(gen_bipartite(n, n, need(a.p, "--p"), *a.seed))};
  if (a.model == "relay") return {relay_to_json(gen_relay_network(need(a.k, "--k"), n, need(a.p, "--p"), *a.seed))};
  throw ParameterError("--model must be gnp, complete, bipartite or relay");
}

Output cmd_allcast(const Args& a) {
  const auto pull = pull_mode(a.pull);
  if (a.tau) {
    VanishingOptions opts;
    opts.eps = a.eps.value_or(opts.eps);
    opts.seed = *a.seed;
    opts.pull = pull.value_or(opts.pull);
    const VanishingReport r = run_allcast_vanishing(need(a.n, "--n"), *a.tau, opts);
    return {report_to_json(r.report), r.report.success};
  }
  if (!a.dist.empty()) {
    const CapacityDistribution dist = distribution(a.dist);
    const CapGraph g = graph_input(a, [&] { return gen_complete_capacitated(*a.n, dist, graph_seed(a)); });
    LayeredOptions opts;
    opts.source = a.source;
    opts.eps = a.eps.value_or(opts.eps);
    opts.seed = run_seed(a);
    opts.pull = pull.value_or(opts.pull);
    const LayeredReport r = layered_allcast(g, dist, opts);
    return {report_to_json(r), r.success};
  }
  const double p = need(a.p, "--p");
  const CapGraph g = graph_input(a, [&] { return gen_gnp(*a.n, p, graph_seed(a)); });
  AllcastOptions opts;
  opts.source = a.source;
  opts.p = p;
  opts.eps = a.eps.value_or(opts.eps);
  opts.seed = run_seed(a);
  opts.pull = pull.value_or(opts.pull);
  const AllcastReport r = run_allcast(g, opts);
  return {report_to_json(r), r.success};
}

FlowOptions flow_options(const Args& a) {
  FlowOptions opts;
  opts.p = need(a.p, "--p");
  opts.eps = a.eps.value_or(opts.eps);
  opts.seed = run_seed(a);
  opts.pull = pull_mode(a.pull).value_or(opts.pull);
  return opts;
}

Output cmd_maxflow(const Args& a) {
  const FlowReport r = run_maxflow(relay_input(a, 2), flow_options(a));
  return {report_to_json(r), r.success};
}

Output cmd_relay(const Args& a) {
  const std::size_t k = a.relay_file.empty() ? need(a.k, "--k") : 0;
  const FlowReport r = run_maxflow_pushpull_multi(relay_input(a, k), flow_options(a));
  return {report_to_json(r), r.success};
}

Output cmd_multicast(const Args& a) {
  MulticastOptions opts;
  opts.eps = a.eps.value_or(opts.eps);
  opts.seed = *a.seed;
  opts.pull = pull_mode(a.pull).value_or(opts.pull);
  const MulticastReport r = run_multicast(need(a.n, "--n"), need(a.k, "--k"), need(a.p, "--p"), opts);
  return {report_to_json(r), r.success};
}

CapGraph graph_file(const Args& a) {
  if (a.graph_file.empty()) throw ParameterError("--graph is required");
  return graph_from_json(read_file(a.graph_file, "--graph"));
}

Output cmd_strength(const Args& a) {
  const CapGraph g = graph_file(a);
  return {strength_to_json(a.session.empty() ? strength_exact(g) : strength_multicast_exact(g, a.session))};
}

Output cmd_treepack(const Args& a) {
  const CapGraph g = graph_file(a);
  const TreeSet trees = a.session.empty() ? enumerate_trees(g) : enumerate_trees(g, a.session);
  if (trees.size() == 0) throw InputError("--graph: support does not connect the required vertices");
  return {packing_to_json(tree_pack_lp(g, trees), trees, g)};
}

Output cmd_bounds(const Args& a) {
  const CapGraph g = graph_file(a);
  std::ostringstream os;
  os.precision(17);
  os << "{\"n\":" << g.vertex_count() << ",\"upper_bound_allcast\":" << upper_bound_allcast(g)
     << ",\"catlin_value\":" << catlin_value(g);
  if (a.k) os << ",\"k\":" << *a.k << ",\"upper_bound_multicast\":" << upper_bound_multicast(g, *a.k);
  os << '}';
  return {os.str()};
}

Output cmd_matchprob(const Args& a) {
  if (!a.bipartite_file.empty()) {
    const BipartiteGraph g = bipartite_from_json(read_file(a.bipartite_file, "--bipartite"));
    const Matching m = max_matching(g);
    std::ostringstream os;
    os << "{\"left\":" << g.left_size() << ",\"right\":" << g.right_size() << ",\"matching_size\":" << m.size()
       << ",\"complete\":" << (m.complete ? "true" : "false") << ",\"matching\":[";
    for (std::size_t i = 0; i < m.pairs.size(); ++i) {
      os << (i ? "," : "") << '[' << m.pairs[i].first << ',' << m.pairs[i].second << ']';
    }
    os << "],\"certificate\":";
    if (const auto cert = hall_violator(g)) {
      auto list = [&](const std::vector<std::uint32_t>& v) {
        os << '[';
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        os << ']';
      };
      os << "{\"side\":\"" << (cert->side == Side::kLeft ? "left" : "right") << "\",\"set\":";
      list(cert->set);
      os << ",\"neighborhood\":";
      list(cert->neighborhood);
      os << '}';
    } else {
      os << "null";
    }
    os << '}';
    return {os.str(), m.complete};
  }
  if (!a.seed) throw ParameterError("--seed is required for Monte Carlo runs");
  const MatchingFrequency f = matching_failure_frequency(need(a.n, "--n"), need(a.p, "--p"), a.trials, *a.seed);
  return {matching_frequency_to_json(f), f.failures == 0};
}

void write_text(const std::string& path, const std::string& text, const char* flag) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError(std::string(flag) + ": cannot write \"" + path + "\"");
  file << text;
}

Output cmd_experiment(const Args& a) {
  if (a.config_file.empty()) throw ParameterError("--config is required");
  ExperimentConfig cfg = parse_experiment_config(read_file(a.config_file, "--config"));
  cfg.jobs = a.jobs;
  const std::vector<CellStats> stats = run_experiment(cfg);
  if (a.verbose) {
    std::string sidecar = a.sidecar_file;
    if (sidecar.empty()) {
      if (a.out_file.empty()) throw ParameterError("--verbose needs --out or --sidecar");
      sidecar = a.out_file + ".json";
    }
    write_text(sidecar, experiment_to_json(cfg, stats) + "\n", "--sidecar");
  }
  bool all_ok = true;
  for (const CellStats& s : stats) all_ok = all_ok && s.successes == s.trials;
  std::string table = convergence_table(stats, cfg.upper_bound);
  table.pop_back();  // the writer appends the final newline
  return {table, all_ok};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Push-pull broadcast, flow and multicast simulator", "pushpull"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "pushpull 0.1.0");

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", a.out_file, "Write the result here instead of stdout");
    sub->add_flag("--strict", a.strict, "Exit 1 when the algorithm fails");
  };
  auto add_seed = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--seed", a.seed, "Root seed");
    if (required) opt->required();
  };
  auto add_run = [&](CLI::App* sub) {
    sub->add_option("--eps", a.eps, "Slack parameter in (0,1)");
    sub->add_option("--pull", a.pull, "Pull-2 mode")->check(CLI::IsMember({"restricted", "all_helpers"}));
  };

  std::vector<std::pair<CLI::App*, std::function<Output(const Args&)>>> commands;

  auto* gen = app.add_subcommand("gen", "Generate a random network as JSON");
  gen->add_option("--model", a.model, "gnp | complete | bipartite | relay")
      ->check(CLI::IsMember({"gnp", "complete", "bipartite", "relay"}));
  gen->add_option("--n", a.n, "Nodes (relays for --model relay)")->required();
  gen->add_option("--p", a.p, "Link probability");
  gen->add_option("--k", a.k, "Session size for --model relay");
  gen->add_option("--dist", a.dist, "Capacity law for --model complete");
  add_seed(gen, true);
  add_out(gen);
  commands.emplace_back(gen, cmd_gen);

  auto* allcast = app.add_subcommand("allcast", "Run ALLCAST (layered with --dist, vanishing p with --tau)");
  auto* graph_opt = allcast->add_option("--graph", a.graph_file, "Graph JSON");
  allcast->add_option("--n", a.n, "Generate G(n,p) (or K_n with --dist)")->excludes(graph_opt);
  allcast->add_option("--p", a.p, "Link probability");
  allcast->add_option("--dist", a.dist, "Capacity law: run the layered scheme");
  allcast->add_option("--tau", a.tau, "Run on G(n, sqrt(tau ln n / n))")->excludes(graph_opt);
  allcast->add_option("--source", a.source, "Source node");
  add_run(allcast);
  add_seed(allcast, true);
  add_out(allcast);
  commands.emplace_back(allcast, cmd_allcast);

  auto* maxflow = app.add_subcommand("maxflow", "Run MaxFlow on relay(2, n)");
  auto* relay_opt = maxflow->add_option("--relay-file", a.relay_file, "Relay network JSON");
  maxflow->add_option("--n", a.n, "Relays to generate")->excludes(relay_opt);
  maxflow->add_option("--p", a.p, "Link probability")->required();
  add_run(maxflow);
  add_seed(maxflow, true);
  add_out(maxflow);
  commands.emplace_back(maxflow, cmd_maxflow);

  auto* relay = app.add_subcommand("relay", "Run MaxFlowPUSHPULL on relay(k, n)");
  auto* relay_opt2 = relay->add_option("--relay-file", a.relay_file, "Relay network JSON");
  relay->add_option("--n", a.n, "Relays to generate")->excludes(relay_opt2);
  relay->add_option("--k", a.k, "Source plus sinks")->excludes(relay_opt2);
  relay->add_option("--p", a.p, "Link probability")->required();
  add_run(relay);
  add_seed(relay, true);
  add_out(relay);
  commands.emplace_back(relay, cmd_relay);

  auto* multicast = app.add_subcommand("multicast", "Session ALLCAST plus relay flow on G(n,p)");
  multicast->add_option("--n", a.n, "Nodes")->required();
  multicast->add_option("--k", a.k, "Session size")->required();
  multicast->add_option("--p", a.p, "Link probability")->required();
  add_run(multicast);
  add_seed(multicast, true);
  add_out(multicast);
  commands.emplace_back(multicast, cmd_multicast);

  auto* strength = app.add_subcommand("strength", "Exact strength by partition enumeration");
  strength->add_option("--graph", a.graph_file, "Graph JSON")->required();
  strength->add_option("--session", a.session, "Session vertices (multicast strength)")->delimiter(',');
  add_out(strength);
  commands.emplace_back(strength, cmd_strength);

  auto* treepack = app.add_subcommand("treepack", "Fractional spanning or Steiner tree packing");
  treepack->add_option("--graph", a.graph_file, "Graph JSON")->required();
  treepack->add_option("--session", a.session, "Session vertices (Steiner trees)")->delimiter(',');
  add_out(treepack);
  commands.emplace_back(treepack, cmd_treepack);

  auto* bounds = app.add_subcommand("bounds", "Cut upper bounds and the Catlin value");
  bounds->add_option("--graph", a.graph_file, "Graph JSON")->required();
  bounds->add_option("--k", a.k, "Session size for the multicast bound");
  add_out(bounds);
  commands.emplace_back(bounds, cmd_bounds);

  auto* matchprob = app.add_subcommand("matchprob", "Matching failure frequency or one bipartite instance");
  auto* bip_opt = matchprob->add_option("--bipartite", a.bipartite_file, "Bipartite JSON");
  matchprob->add_option("--n", a.n, "Side size")->excludes(bip_opt);
  matchprob->add_option("--p", a.p, "Edge probability")->excludes(bip_opt);
  matchprob->add_option("--trials", a.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  add_seed(matchprob, false);
  add_out(matchprob);
  commands.emplace_back(matchprob, cmd_matchprob);

  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment, CSV out");
  experiment->add_option("--config", a.config_file, "Experiment JSON")->required();
  experiment->add_option("--jobs", a.jobs, "Worker threads")->check(CLI::PositiveNumber);
  experiment->add_flag("--verbose", a.verbose, "Also write per-trial JSON");
  experiment->add_option("--sidecar", a.sidecar_file, "Path of the per-trial JSON");
  add_out(experiment);
  commands.emplace_back(experiment, cmd_experiment);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    for (const auto& [sub, fn] : commands) {
      if (!sub->parsed()) continue;
      const Output result = fn(a);
      if (a.out_file.empty()) {
        out << result.text << '\n';
      } else {
        write_text(a.out_file, result.text + "\n", "--out");
      }
      if (!result.success) {
        err << sub->get_name() << ": run did not deliver everything\n";
        return a.strict ? kExitFailedRun : kExitOk;
      }
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace pushpull::cli
