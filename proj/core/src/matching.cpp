#include "pushpull/matching.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "pushpull/errors.hpp"
#include "pushpull/graph_models.hpp"
#include "pushpull/random.hpp"
#include "pushpull/stats.hpp"

namespace pushpull {

namespace {

constexpr std::int64_t kFree = -1;

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteGraph& g)
      : g_(g),
        mate_left_(g.left_size(), kFree),
        mate_right_(g.right_size(), kFree),
        dist_(g.left_size()),
        cursor_(g.left_size()) {}

  void run() {
    while (bfs()) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      for (std::uint32_t l = 0; l < g_.left_size(); ++l) {
        if (mate_left_[l] == kFree && dist_[l] == 0) dfs(l);
      }
    }
  }

  const std::vector<std::int64_t>& mate_left() const { return mate_left_; }

 private:
  static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

  bool bfs() {
    std::deque<std::uint32_t> queue;
    for (std::uint32_t l = 0; l < g_.left_size(); ++l) {
      if (mate_left_[l] == kFree) {
        dist_[l] = 0;
        queue.push_back(l);
      } else {
        dist_[l] = kInf;
      }
    }
    bool reachable_free = false;
    while (!queue.empty()) {
      const std::uint32_t l = queue.front();
      queue.pop_front();
      for (std::uint32_t r : g_.neighbors(l)) {
        const std::int64_t next = mate_right_[r];
        if (next == kFree) {
          reachable_free = true;
        } else if (dist_[next] == kInf) {
          dist_[next] = dist_[l] + 1;
          queue.push_back(static_cast<std::uint32_t>(next));
        }
      }
    }
    return reachable_free;
  }

  bool dfs(std::uint32_t l) {
    const auto nbrs = g_.neighbors(l);
    for (std::size_t& i = cursor_[l]; i < nbrs.size(); ++i) {
      const std::uint32_t r = nbrs[i];
      const std::int64_t next = mate_right_[r];
      if (next == kFree || (dist_[next] == dist_[l] + 1 && dfs(static_cast<std::uint32_t>(next)))) {
        mate_left_[l] = r;
        mate_right_[r] = l;
        ++i;
        return true;
      }
    }
    dist_[l] = kInf;
    return false;
  }

  const BipartiteGraph& g_;
  std::vector<std::int64_t> mate_left_;
  std::vector<std::int64_t> mate_right_;
  std::vector<std::size_t> dist_;
  std::vector<std::size_t> cursor_;
};

/// Left and right vertices reachable from `root` by alternating paths.
std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> alternating_tree(
    const BipartiteGraph& g, const std::vector<std::int64_t>& mate_left, std::uint32_t root) {
  std::vector<std::int64_t> mate_right(g.right_size(), kFree);
  for (std::uint32_t l = 0; l < mate_left.size(); ++l) {
    if (mate_left[l] != kFree) mate_right[static_cast<std::size_t>(mate_left[l])] = l;
  }
  std::vector<char> seen_left(g.left_size(), 0);
  std::vector<char> seen_right(g.right_size(), 0);
  std::vector<std::uint32_t> left{root};
  std::vector<std::uint32_t> right;
  seen_left[root] = 1;
  for (std::size_t head = 0; head < left.size(); ++head) {
    for (std::uint32_t r : g.neighbors(left[head])) {
      if (seen_right[r]) continue;
      seen_right[r] = 1;
      right.push_back(r);
      const std::int64_t mate = mate_right[r];
      if (mate != kFree && !seen_left[mate]) {
        seen_left[mate] = 1;
        left.push_back(static_cast<std::uint32_t>(mate));
      }
    }
  }
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  return {left, right};
}

/// Bipartite graph restricted to the given left vertices (relabelled 0..|set|-1).
BipartiteGraph restrict_left(const BipartiteGraph& g, const std::vector<std::uint32_t>& set) {
  BipartiteGraph sub(set.size(), g.right_size());
  for (std::uint32_t i = 0; i < set.size(); ++i) {
    for (std::uint32_t r : g.neighbors(set[i])) sub.add_edge(i, r);
  }
  return sub;
}

/// Shrinks a Hall violator `set` (left side of g) to an inclusion-minimal one.
std::vector<std::uint32_t> minimize_violator(const BipartiteGraph& g, std::vector<std::uint32_t> set) {
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (std::size_t drop = 0; drop < set.size(); ++drop) {
      std::vector<std::uint32_t> rest;
      rest.reserve(set.size() - 1);
      for (std::size_t i = 0; i < set.size(); ++i) {
        if (i != drop) rest.push_back(set[i]);
      }
      const BipartiteGraph sub = restrict_left(g, rest);
      HopcroftKarp hk(sub);
      hk.run();
      const auto& mates = hk.mate_left();
      auto it = std::find(mates.begin(), mates.end(), kFree);
      if (it == mates.end()) continue;
      const auto root = static_cast<std::uint32_t>(it - mates.begin());
      auto [local, unused] = alternating_tree(sub, mates, root);
      std::vector<std::uint32_t> smaller;
      smaller.reserve(local.size());
      for (std::uint32_t i : local) smaller.push_back(rest[i]);
      std::sort(smaller.begin(), smaller.end());
      set = std::move(smaller);
      shrunk = true;
      break;
    }
  }
  return set;
}

bool has_isolated_vertex(const BipartiteGraph& g) {
  std::vector<char> right_seen(g.right_size(), 0);
  for (std::uint32_t l = 0; l < g.left_size(); ++l) {
    if (g.neighbors(l).empty()) return true;
    for (std::uint32_t r : g.neighbors(l)) right_seen[r] = 1;
  }
  return std::find(right_seen.begin(), right_seen.end(), 0) != right_seen.end();
}

double log_sum_exp(const std::vector<double>& logs) {
  if (logs.empty()) return -std::numeric_limits<double>::infinity();
  const double peak = *std::max_element(logs.begin(), logs.end());
  if (std::isinf(peak)) return peak;
  double acc = 0.0;
  for (double x : logs) acc += std::exp(x - peak);
  return peak + std::log(acc);
}

}  // namespace

Matching max_matching(const BipartiteGraph& g) {
  HopcroftKarp hk(g);
  hk.run();
  Matching m;
  const auto& mates = hk.mate_left();
  for (std::uint32_t l = 0; l < mates.size(); ++l) {
    if (mates[l] != kFree) m.pairs.emplace_back(l, static_cast<std::uint32_t>(mates[l]));
  }
  m.complete = m.pairs.size() == g.left_size();
  return m;
}

std::vector<std::int64_t> left_mates(const Matching& m, std::size_t left_size) {
  std::vector<std::int64_t> mates(left_size, kFree);
  for (const auto& [l, r] : m.pairs) mates[l] = r;
  return mates;
}

bool is_valid_matching(const BipartiteGraph& g, const Matching& m) {
  std::vector<char> used_left(g.left_size(), 0);
  std::vector<char> used_right(g.right_size(), 0);
  for (const auto& [l, r] : m.pairs) {
    if (l >= g.left_size() || r >= g.right_size()) return false;
    if (used_left[l] || used_right[r]) return false;
    if (!g.has_edge(l, r)) return false;
    used_left[l] = used_right[r] = 1;
  }
  return m.complete == (m.pairs.size() == g.left_size());
}

std::vector<std::uint32_t> neighborhood(const BipartiteGraph& g, const std::vector<std::uint32_t>& set) {
  std::vector<char> seen(g.right_size(), 0);
  std::vector<std::uint32_t> out;
  for (std::uint32_t l : set) {
    for (std::uint32_t r : g.neighbors(l)) {
      if (!seen[r]) {
        seen[r] = 1;
        out.push_back(r);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<HallCertificate> hall_violator(const BipartiteGraph& g) {
  const std::size_t n = g.left_size();
  if (n == 0 || n != g.right_size()) return std::nullopt;
  HopcroftKarp hk(g);
  hk.run();
  const auto& mates = hk.mate_left();
  auto it = std::find(mates.begin(), mates.end(), kFree);
  if (it == mates.end()) return std::nullopt;

  auto [start, unused] = alternating_tree(g, mates, static_cast<std::uint32_t>(it - mates.begin()));
  HallCertificate cert;
  cert.side = Side::kLeft;
  cert.set = minimize_violator(g, std::move(start));
  cert.neighborhood = neighborhood(g, cert.set);

  if (2 * cert.set.size() <= n + 1 || has_isolated_vertex(g)) return cert;

  // |A| > (n+1)/2: the right vertices outside Gamma(A) only see V1 \ A, so they
  // form a right-side violator of size n - |A| + 1 < (n+1)/2.
  const BipartiteGraph t = g.transposed();
  std::vector<char> in_gamma(n, 0);
  for (std::uint32_t r : cert.neighborhood) in_gamma[r] = 1;
  std::vector<std::uint32_t> outside;
  for (std::uint32_t r = 0; r < n; ++r) {
    if (!in_gamma[r]) outside.push_back(r);
  }
  HallCertificate right;
  right.side = Side::kRight;
  right.set = minimize_violator(t, std::move(outside));
  right.neighborhood = neighborhood(t, right.set);
  return right;
}

CertificateCheck check_certificate(const BipartiteGraph& g, const HallCertificate& cert) {
  const BipartiteGraph view = cert.side == Side::kLeft ? g : g.transposed();
  const std::size_t n = g.left_size();
  CertificateCheck check;
  const auto gamma = neighborhood(view, cert.set);
  check.deficiency_one = !cert.set.empty() && gamma.size() + 1 == cert.set.size() &&
                         gamma == cert.neighborhood;
  check.size_in_range = cert.set.size() >= 2 && 2 * cert.set.size() <= n + 1;

  // Connectivity of A u Gamma(A): BFS over left vertices in A, right vertices in Gamma(A).
  if (!cert.set.empty()) {
    std::vector<char> in_set(view.left_size(), 0);
    for (std::uint32_t l : cert.set) in_set[l] = 1;
    const BipartiteGraph back = view.transposed();
    std::vector<char> seen_left(view.left_size(), 0);
    std::vector<char> seen_right(view.right_size(), 0);
    std::vector<std::uint32_t> stack{cert.set.front()};
    seen_left[cert.set.front()] = 1;
    std::size_t reached_left = 1;
    std::size_t reached_right = 0;
    while (!stack.empty()) {
      const std::uint32_t l = stack.back();
      stack.pop_back();
      for (std::uint32_t r : view.neighbors(l)) {
        if (seen_right[r]) continue;
        seen_right[r] = 1;
        ++reached_right;
        for (std::uint32_t l2 : back.neighbors(r)) {
          if (in_set[l2] && !seen_left[l2]) {
            seen_left[l2] = 1;
            ++reached_left;
            stack.push_back(l2);
          }
        }
      }
    }
    check.connected = reached_left == cert.set.size() && reached_right == gamma.size();
  }
  return check;
}

double epsilon_bound(std::size_t n, double p) {
  if (n < 2) throw ParameterError("epsilon_bound: n must be at least 2");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("epsilon_bound: p must lie in [0,1]");
  if (p == 1.0) return 0.0;
  if (p == 0.0) return 1.0;
  const double log_n = std::log(static_cast<double>(n));
  const double log_q = std::log1p(-p);
  const std::size_t top = (n + 1) / 2;
  std::vector<double> logs;
  for (std::size_t a = 2; a <= top; ++a) {
    const auto ad = static_cast<double>(a);
    logs.push_back(std::log(2.0) + (2.0 * ad - 1.0) * log_n +
                   (ad * static_cast<double>(n) - ad * ad) * log_q);
  }
  const double total = log_sum_exp(logs);
  return total >= 0.0 ? 1.0 : std::exp(total);
}

double gamma_bound(std::size_t n, double p) {
  const double eps = epsilon_bound(n, p);
  if (p == 1.0) return 0.0;
  if (p == 0.0) return 1.0;
  const double isolated = std::exp(std::log(2.0 * static_cast<double>(n)) +
                                   static_cast<double>(n) * std::log1p(-p));
  return std::min(1.0, isolated + eps);
}

MatchingFrequency matching_failure_frequency(std::size_t n, double p, std::size_t trials,
                                             std::uint64_t seed) {
  if (trials < 1) throw ParameterError("trials must be at least 1");
  if (n < 1) throw ParameterError("n must be at least 1");
  MatchingFrequency out;
  out.n = n;
  out.p = p;
  out.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    const BipartiteGraph g = gen_bipartite(n, n, p, derive_seed(seed, StreamTag::kMatchingTrial, {i}));
    if (!max_matching(g).complete) ++out.failures;
  }
  out.frequency = static_cast<double>(out.failures) / static_cast<double>(trials);
  const Interval ci = wilson_interval(out.failures, trials);
  out.wilson_low = ci.low;
  out.wilson_high = ci.high;
  out.gamma = n >= 2 ? gamma_bound(n, p) : 1.0;
  return out;
}

std::size_t beta_sequence(std::size_t n, double c) {
  if (!(c > 0.0 && c < 1.0)) throw ParameterError("beta_sequence: c must lie in (0,1)");
  return static_cast<std::size_t>(std::floor(c * static_cast<double>(n)));
}

}  // namespace pushpull
