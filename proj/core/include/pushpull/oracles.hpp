#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pushpull/cap_graph.hpp"

namespace pushpull {

// Exact small-instance ground truth: strength by partition enumeration, the
// analytic cut bounds, tree enumeration and fractional tree packing.

inline constexpr std::size_t kMaxStrengthVertices = 12;
inline constexpr std::size_t kMaxTreeVertices = 7;

struct Partition {
  /// Blocks in order of their smallest vertex; each block ascending.
  std::vector<std::vector<Vertex>> blocks;

  std::size_t block_count() const noexcept { return blocks.size(); }
};

struct StrengthResult {
  double value = 0.0;
  Partition argmin;
};

/// min over partitions with >= 2 blocks of (capacity across blocks) / (blocks - 1).
/// Partitions are enumerated as restricted growth strings; ties keep the first.
/// Throws SizeError for n > 12 and ParameterError for n < 2.
StrengthResult strength_exact(const CapGraph& g);

/// Same minimum restricted to partitions whose every block holds a session vertex.
/// Throws SizeError for n > 12, InputError for a session vertex out of range and
/// ParameterError for fewer than two distinct session vertices.
StrengthResult strength_multicast_exact(const CapGraph& g, const std::vector<Vertex>& session);

/// Total capacity / (n - 1): the all-singletons cut.
double upper_bound_allcast(const CapGraph& g);

/// Cut of {0}, ..., {k-2}, {k-1, ..., n-1} divided by k - 1, session = vertices 0..k-1.
double upper_bound_multicast(const CapGraph& g, std::size_t k);

/// floor(upper_bound_allcast(g)).
std::int64_t catlin_value(const CapGraph& g);

enum class TreeKind { kSpanning, kSteiner };

struct TreeSet {
  TreeKind kind = TreeKind::kSpanning;
  std::vector<Vertex> session;  // ascending; empty for spanning trees
  /// Each tree is an ascending list of edge ids of the graph it came from.
  std::vector<std::vector<EdgeId>> trees;

  std::size_t size() const noexcept { return trees.size(); }
};

/// All spanning trees of the positive-capacity support (no session), or all
/// trees that contain the session and whose leaves all lie in it. Trees are
/// ordered by vertex set (as a bitmask), then lexicographically by edge ids.
/// An empty set means the support does not connect the required vertices.
/// Throws SizeError for n > 7.
TreeSet enumerate_trees(const CapGraph& g, const std::optional<std::vector<Vertex>>& session = std::nullopt);

/// True iff `edges` forms a tree (connected, acyclic) on the vertices it touches.
bool is_tree(const CapGraph& g, const std::vector<EdgeId>& edges);

struct PackingResult {
  double value = 0.0;
  std::vector<double> weights;     // one per tree
  std::vector<EdgeId> tight_edges;  // capacity constraint binds within 1e-9
};

/// max sum lambda_T subject to sum_{T containing e} lambda_T <= C_e, lambda >= 0.
/// Throws ParameterError for an empty tree set and InputError for unknown edge ids.
PackingResult tree_pack_lp(const CapGraph& g, const TreeSet& trees);

}  // namespace pushpull
