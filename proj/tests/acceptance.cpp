// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "pushpull/allcast.hpp"
#include "pushpull/flow.hpp"
#include "pushpull/graph_models.hpp"
#include "pushpull/harness.hpp"
#include "pushpull/matching.hpp"
#include "pushpull/oracles.hpp"
#include "pushpull/stats.hpp"
#include "support.hpp"

using namespace pushpull;

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kRootSeed = 20240601;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::size_t jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// Structural counters shared by every criterion and reported under criterion 11.
struct Structure {
  std::size_t audits = 0;
  std::size_t audit_failures = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  void audit(const std::vector<CellStats>& stats) {
    for (const CellStats& s : stats) {
      audits += s.trials;
      audit_failures += s.audit_failures;
    }
  }
  void check(bool ok) {
    ++checks;
    violations += !ok;
  }
} structure;

ExperimentConfig config(ExperimentKind kind, std::size_t n, std::size_t trials) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.n = {n};
  cfg.trials = trials;
  cfg.seed = kRootSeed;
  cfg.jobs = jobs();
  return cfg;
}

std::string fmt(const char* format, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

Verdict criterion1() {
  const auto t0 = Clock::now();
  ExperimentConfig cfg = config(ExperimentKind::kAllcast, 800, 50);
  cfg.p = 0.5;
  cfg.eps = 0.25;
  const CellStats s = run_experiment(cfg).front();
  structure.audit({s});
  const double secs = seconds_since(t0);
  double lo = 1.0, hi = 0.0;
  for (const TrialOutcome& o : s.outcomes) {
    if (!o.success) continue;
    lo = std::min(lo, o.norm_rate);
    hi = std::max(hi, o.norm_rate);
  }
  const bool rate_ok = s.successes == 0 || (lo >= 0.185 && hi <= 0.188);
  return {s.success_freq >= 0.90 && s.successes > 0 && rate_ok && secs <= 300,
          fmt("success %.2f, rate per success in [%.5f, %.5f], %.1f s", s.success_freq, lo, hi, secs)};
}

Verdict criterion2() {
  const auto t0 = Clock::now();
  ExperimentConfig cfg = config(ExperimentKind::kLayered, 600, 20);
  cfg.distribution = CapacityDistribution::uniform(0, 1);
  cfg.eps = 0.2;
  const CellStats s = run_experiment(cfg).front();
  structure.audit({s});
  const double secs = seconds_since(t0);
  return {s.mean_norm_rate >= 0.135 && secs <= 600,
          fmt("mean normalized rate %.4f (need >= 0.135), %.1f s", s.mean_norm_rate, secs)};
}

struct SmallInstance {
  CapGraph g;
  std::vector<Vertex> session;
};

std::vector<SmallInstance> allcast_instances() {
  std::vector<SmallInstance> out;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::size_t n = 2 + i % 5;
    out.push_back({testref::random_connected_graph(n, 3, 0.5, derive_seed(kRootSeed, StreamTag::kExperimentTrial, {3, i})), {}});
  }
  return out;
}

std::vector<SmallInstance> multicast_instances() {
  std::vector<SmallInstance> out;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::size_t n = 3 + i % 4;
    const std::uint64_t seed = derive_seed(kRootSeed, StreamTag::kExperimentTrial, {4, i});
    SmallInstance inst{testref::random_connected_graph(n, 3, 0.5, seed), {}};
    const std::size_t k = 2 + (seed >> 8) % (n - 1);
    for (Vertex v = 0; v < k; ++v) inst.session.push_back(v);
    out.push_back(std::move(inst));
  }
  return out;
}

Verdict criterion3() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const SmallInstance& inst : allcast_instances()) {
    const double lp = tree_pack_lp(inst.g, enumerate_trees(inst.g)).value;
    worst = std::max(worst, std::abs(lp - strength_exact(inst.g).value));
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-6 && secs <= 120, fmt("200 graphs, max |LP - strength| = %.2e, %.1f s", worst, secs)};
}

Verdict criterion4() {
  double worst_excess = -1e300;
  for (const SmallInstance& inst : multicast_instances()) {
    const double lp = tree_pack_lp(inst.g, enumerate_trees(inst.g, inst.session)).value;
    worst_excess = std::max(worst_excess, lp - strength_multicast_exact(inst.g, inst.session).value);
  }
  const CapGraph k3 = gen_gnp(3, 1.0, 0);
  const double lp = tree_pack_lp(k3, enumerate_trees(k3, std::vector<Vertex>{0, 1})).value;
  const double eta = strength_multicast_exact(k3, {0, 1}).value;
  const bool equality = std::abs(lp - eta) <= 1e-6 && std::abs(lp - 2.0) <= 1e-6;
  return {worst_excess <= 1e-6 && equality,
          fmt("max (LP - strength) = %.2e over 200; K3 session {0,1}: LP %.6f, strength %.6f", worst_excess, lp, eta)};
}

Verdict criterion5() {
  std::size_t violations = 0;
  for (const SmallInstance& inst : allcast_instances()) {
    violations += upper_bound_allcast(inst.g) + 1e-12 < strength_exact(inst.g).value;
  }
  for (const SmallInstance& inst : multicast_instances()) {
    violations += upper_bound_multicast(inst.g, inst.session.size()) + 1e-12 <
                  strength_multicast_exact(inst.g, inst.session).value;
  }
  ExperimentConfig cfg = config(ExperimentKind::kStrengthSweep, 300, 20);
  cfg.distribution = CapacityDistribution::uniform(0, 1);
  const double mean = run_experiment(cfg).front().mean_norm_rate;
  const double rel = std::abs(mean - 0.25) / 0.25;
  return {violations == 0 && rel <= 0.02,
          fmt("%.0f dominance violations; mean bound/n at n=300 = %.5f (%.2f%% off 0.25)", static_cast<double>(violations),
              mean, 100 * rel)};
}

Verdict criterion6() {
  std::size_t matchable = 0;
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    BipartiteGraph g(2, 2);
    for (std::uint32_t c = 0; c < 4; ++c) {
      if (mask >> c & 1) g.add_edge(c / 2, c % 2);
    }
    matchable += testref::brute_matching_size(g) == 2;
  }
  const double p_match = matchable / 16.0;
  const double p_none = 1.0 - p_match;
  const MatchingFrequency mc = matching_failure_frequency(2, 0.5, 100000, kRootSeed);
  const bool mc_ok = mc.wilson_low <= p_none && p_none <= mc.wilson_high;
  const MatchingFrequency big = matching_failure_frequency(40, 0.4, 10000, kRootSeed + 1);
  const bool bound_ok = big.frequency <= std::min(1.0, gamma_bound(40, 0.4));
  return {p_match == 7.0 / 16 && mc_ok && bound_ok,
          fmt("2x2: P(complete)=%.4f, P(none)=%.4f, MC none %.4f; n=40 freq %.4f", p_match, p_none, mc.frequency,
              big.frequency) +
              fmt(" vs gamma %.3g", gamma_bound(40, 0.4))};
}

Verdict criterion7() {
  ExperimentConfig cfg = config(ExperimentKind::kMaxflow, 700, 50);
  cfg.p = 0.5;
  cfg.eps = 0.25;
  const CellStats s = run_experiment(cfg).front();
  structure.audit({s});
  const std::size_t budget = flow_bit_budget(700, 0.5, 0.25);
  bool bits_ok = true;
  for (const TrialOutcome& o : s.outcomes) bits_ok = bits_ok && (!o.success || o.bits == budget);
  return {s.success_freq >= 0.90 && bits_ok,
          fmt("success %.2f, every success delivered %.0f bits: ", s.success_freq, static_cast<double>(budget)) +
              (bits_ok ? "yes" : "no")};
}

Verdict criterion8() {
  ExperimentConfig cfg = config(ExperimentKind::kRelayMulti, 600, 30);
  cfg.alpha = {0.2};
  cfg.p = 0.5;
  cfg.eps = 0.25;
  const CellStats s = run_experiment(cfg).front();
  structure.audit({s});
  return {s.k == 120 && s.success_freq >= 0.90, fmt("k=%.0f, success %.2f", static_cast<double>(s.k), s.success_freq)};
}

Verdict criterion9() {
  ExperimentConfig cfg = config(ExperimentKind::kMulticast, 600, 30);
  cfg.alpha = {0.5};
  cfg.p = 0.5;
  cfg.eps = 0.2;
  const CellStats s = run_experiment(cfg).front();
  structure.audit({s});
  std::size_t above = 0;
  for (const TrialOutcome& o : s.outcomes) above += o.norm_rate >= 0.225;
  const double frac = static_cast<double>(above) / static_cast<double>(s.trials);

  // boundaries: k = n is ALLCAST, k = 2 is the single-sink relay flow
  std::size_t full_ok = 0, pair_ok = 0;
  const std::size_t boundary_trials = 10;
  for (std::uint64_t t = 0; t < boundary_trials; ++t) {
    MulticastOptions o;
    o.eps = 0.25;
    o.pull = PullMode::kRestricted;
    o.seed = derive_seed(kRootSeed, StreamTag::kExperimentTrial, {9, t});
    const MulticastReport full = run_multicast(800, 800, 0.5, o);
    structure.check(verify_multicast(full).ok);
    full_ok += !full.relay && full.session && full.success && full.total == allcast_bit_budget(800, 0.5, 0.25);
    const MulticastReport pair = run_multicast(702, 2, 0.5, o);
    structure.check(verify_multicast(pair).ok);
    pair_ok += !pair.session && pair.relay && pair.success && pair.total == flow_bit_budget(700, 0.5, 0.25);
  }
  const bool boundary = full_ok >= 9 && pair_ok >= 9;
  return {frac >= 0.90 && boundary,
          fmt("%.0f%% of trials with total/n >= 0.225 (mean %.4f); boundary k=n %.0f/10, k=2 %.0f/10", 100 * frac,
              s.mean_norm_rate, static_cast<double>(full_ok), static_cast<double>(pair_ok))};
}

Verdict criterion10() {
  const auto t0 = Clock::now();
  ExperimentConfig cfg = config(ExperimentKind::kAllcastVanishing, 20000, 20);
  cfg.tau = 10;
  cfg.eps = 0.3;
  const CellStats s = run_experiment(cfg).front();
  structure.audit({s});
  const double secs = seconds_since(t0);
  const double p_n = vanishing_probability(20000, 10);
  const double np = 20000 * p_n;
  const double tolerance = 1.0 / np + 0.35 / 20000;
  double worst = 0.0;
  for (const TrialOutcome& o : s.outcomes) {
    if (o.success) worst = std::max(worst, std::abs(static_cast<double>(o.bits) / np - 0.35));
  }
  return {s.success_freq >= 0.90 && worst <= tolerance && secs <= 600,
          fmt("success %.2f, max |rate/(n p_n) - 0.35| = %.2e (tol %.2e), %.1f s", s.success_freq, worst, tolerance,
              secs)};
}

Verdict criterion11() {
  for (std::size_t n = 3; n <= 6; ++n) {
    structure.check(enumerate_trees(gen_gnp(n, 1.0, 0)).size() == static_cast<std::size_t>(std::llround(std::pow(n, n - 2))));
  }
  std::size_t certificates = 0;
  for (std::uint64_t t = 0; t < 4000 && certificates < 300; ++t) {
    const std::size_t n = 4 + t % 12;
    const BipartiteGraph g = gen_bipartite(n, n, 0.22, derive_seed(kRootSeed, StreamTag::kMatchingTrial, {t}));
    bool isolated = false;
    std::vector<std::size_t> right(n, 0);
    for (std::uint32_t l = 0; l < n; ++l) {
      isolated = isolated || g.neighbors(l).empty();
      for (std::uint32_t r : g.neighbors(l)) ++right[r];
    }
    isolated = isolated || std::count(right.begin(), right.end(), 0u) > 0;
    if (isolated || max_matching(g).complete) continue;
    const auto cert = hall_violator(g);
    structure.check(cert.has_value() && check_certificate(g, *cert).all());
    ++certificates;
  }
  for (std::uint64_t t = 0; t < 10; ++t) {
    MulticastOptions o;
    o.seed = derive_seed(kRootSeed, StreamTag::kExperimentTrial, {11, t});
    const MulticastReport r = run_multicast(300, 30 + 25 * t, 0.5, o);
    structure.check(multicast_edges_disjoint(r));
    for (const auto* rec : {r.session ? &r.session->delivery : nullptr, r.relay ? &r.relay->delivery : nullptr}) {
      if (!rec) continue;
      structure.check(max_depth(*rec) <= 3);
      for (const auto& [link, load] : testref::link_loads(*rec)) structure.check(load <= 1);
    }
  }
  const std::size_t total = structure.audit_failures + structure.violations;
  return {total == 0, fmt("%.0f audited runs, %.0f direct checks, %.0f violations", static_cast<double>(structure.audits),
                          static_cast<double>(structure.checks), static_cast<double>(total))};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"allcast rate, n=800", criterion1},
      {"layered general capacities, n=600", criterion2},
      {"tree packing equals strength", criterion3},
      {"Steiner packing below multicast strength", criterion4},
      {"cut bounds dominate strength", criterion5},
      {"matching failure probabilities", criterion6},
      {"single-sink flow, n=700", criterion7},
      {"multi-sink relay, n=600", criterion8},
      {"multicast composition, n=600", criterion9},
      {"vanishing p_n, n=20000", criterion10},
      {"structural properties", criterion11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %zu (%s): %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                v.detail.c_str());
    std::fflush(stdout);
    failed += !v.pass;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
