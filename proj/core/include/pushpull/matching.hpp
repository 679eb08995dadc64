#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pushpull/cap_graph.hpp"

namespace pushpull {

struct Matching {
  /// (left, right) pairs sorted by left index.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  /// True iff every left vertex is matched.
  bool complete = false;

  std::size_t size() const noexcept { return pairs.size(); }
};

/// Maximum-cardinality matching (Hopcroft-Karp).
///
/// Deterministic: phases scan free left vertices in ascending index and
/// explore neighbors in ascending index.
Matching max_matching(const BipartiteGraph& g);

/// Mate of each left vertex in `m`, or -1.
std::vector<std::int64_t> left_mates(const Matching& m, std::size_t left_size);

/// True iff `m` is vertex-disjoint on both sides and uses only edges of `g`.
bool is_valid_matching(const BipartiteGraph& g, const Matching& m);

enum class Side { kLeft, kRight };

/// A set A on one side with |Gamma(A)| = |A| - 1 and A u Gamma(A) connected.
struct HallCertificate {
  Side side = Side::kLeft;
  std::vector<std::uint32_t> set;           // A, ascending
  std::vector<std::uint32_t> neighborhood;  // Gamma(A), ascending
};

/// Neighborhood of a set of left vertices.
std::vector<std::uint32_t> neighborhood(const BipartiteGraph& g, const std::vector<std::uint32_t>& set);

/// Certificate that a square bipartite graph has no complete matching.
///
/// Returns nothing when a complete matching exists or the graph is not square.
/// The certificate is an inclusion-minimal Hall violator, searched on the left
/// side first. If the left one is larger than (n+1)/2 and the graph has no
/// isolated vertex, the right-side violator inside V2 \ Gamma(A) is returned
/// instead, which then satisfies 2 <= |A| <= (n+1)/2. With isolated vertices
/// the size bound is not guaranteed.
std::optional<HallCertificate> hall_violator(const BipartiteGraph& g);

struct CertificateCheck {
  bool deficiency_one = false;  // |Gamma(A)| = |A| - 1
  bool connected = false;       // A u Gamma(A) spans a connected subgraph
  bool size_in_range = false;   // 2 <= |A| <= (n+1)/2

  bool all() const noexcept { return deficiency_one && connected && size_in_range; }
};

/// Evaluates the three certificate conditions directly against `g`.
CertificateCheck check_certificate(const BipartiteGraph& g, const HallCertificate& cert);

/// Upper bound on Pr{some Hall violator of size 2..(n+1)/2 in G(n,n,p)}:
/// min(1, 2 sum_{a=2}^{floor((n+1)/2)} n^{2a-1} (1-p)^{an} (1-p)^{-a^2}), summed in log space.
double epsilon_bound(std::size_t n, double p);

/// min(1, 2n(1-p)^n + epsilon_bound(n, p)): bound on Pr{G(n,n,p) has no complete matching}.
double gamma_bound(std::size_t n, double p);

struct MatchingFrequency {
  std::size_t n = 0;
  double p = 0.0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double frequency = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
  double gamma = 0.0;
};

/// Monte Carlo frequency of "G(n,n,p) has no complete matching".
/// Trial i uses derive_seed(seed, kMatchingTrial, {i}).
MatchingFrequency matching_failure_frequency(std::size_t n, double p, std::size_t trials,
                                             std::uint64_t seed);

/// floor(c n).
std::size_t beta_sequence(std::size_t n, double c);

}  // namespace pushpull
