#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace pushpull {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

/// Undirected link {u, v} with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double capacity = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected graph on vertices 0..n-1 with nonnegative link capacities.
///
/// Only links with positive capacity are stored; an absent pair has capacity 0.
/// Edges are kept sorted lexicographically by (u, v), so an EdgeId is a stable
/// index into `edges()`.
class CapGraph {
 public:
  CapGraph() = default;
  explicit CapGraph(std::size_t n) : n_(n) {}

  /// Validates (u < v, in range, capacity >= 0, no duplicates), drops zero
  /// capacities and sorts. Throws InputError.
  static CapGraph from_edges(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_[id]; }

  double capacity(Vertex a, Vertex b) const noexcept;
  std::optional<EdgeId> find_edge(Vertex a, Vertex b) const noexcept;

  double total_capacity() const noexcept;
  /// True iff every stored capacity is exactly 1.0.
  bool is_binary() const noexcept;

  /// Subgraph induced on vertices 0..k-1.
  CapGraph induced_prefix(std::size_t k) const;

  friend bool operator==(const CapGraph&, const CapGraph&) = default;

 private:
  friend class CapGraphBuilder;
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// Appends edges in strictly increasing (u, v) order without re-sorting.
/// Used by the generators, which already produce lexicographic order.
class CapGraphBuilder {
 public:
  explicit CapGraphBuilder(std::size_t n) { graph_.n_ = n; }
  void reserve(std::size_t edges) { graph_.edges_.reserve(edges); }
  /// Zero capacities are skipped.
  void append(Vertex u, Vertex v, double capacity);
  CapGraph build() && { return std::move(graph_); }

 private:
  CapGraph graph_;
};

/// Compressed adjacency of a CapGraph; neighbors of each vertex ascending.
class Adjacency {
 public:
  struct Entry {
    Vertex neighbor;
    EdgeId edge;
  };

  explicit Adjacency(const CapGraph& g);

  std::span<const Entry> neighbors(Vertex v) const noexcept {
    return {entries_.data() + offsets_[v], entries_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Entry> entries_;
};

/// Bipartite graph with left vertices 0..left_size-1 and right vertices 0..right_size-1.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(std::size_t left_size, std::size_t right_size)
      : right_size_(right_size), adjacency_(left_size) {}

  std::size_t left_size() const noexcept { return adjacency_.size(); }
  std::size_t right_size() const noexcept { return right_size_; }

  /// Empties the graph and resizes it, keeping row storage for reuse.
  void reset(std::size_t left_size, std::size_t right_size);

  /// Throws InputError on out-of-range indices; duplicates are ignored.
  void add_edge(std::uint32_t left, std::uint32_t right);
  bool has_edge(std::uint32_t left, std::uint32_t right) const;

  /// Right neighbors of a left vertex, ascending once `finalize()` ran.
  std::span<const std::uint32_t> neighbors(std::uint32_t left) const { return adjacency_[left]; }

  /// Sorts and deduplicates adjacency lists. add_edge keeps lists sorted when
  /// edges arrive in ascending order, so this is only needed for ad-hoc input.
  void finalize();

  std::size_t edge_count() const noexcept;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

  /// Same graph with the sides swapped.
  BipartiteGraph transposed() const;

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

 private:
  std::size_t right_size_ = 0;
  std::vector<std::vector<std::uint32_t>> adjacency_;
};

/// The relay(k, n) network: one source, k-1 sinks, n relays.
///
/// Global node ids: 0 is the source, 1..k-1 the sinks, k..k+n-1 the relays.
/// There are no source-sink or sink-sink links.
struct RelayNetwork {
  std::size_t session_size = 0;  // k
  std::size_t relay_count = 0;   // n
  /// Relay indices (0-based within the relay set) adjacent to the source, ascending.
  std::vector<std::uint32_t> source_relays;
  /// sink_relays[s] lists relays adjacent to sink s+1, ascending.
  std::vector<std::vector<std::uint32_t>> sink_relays;
  /// Relay-relay links, binary, on relay-local vertex ids.
  CapGraph relay_core;

  std::size_t sink_count() const noexcept { return session_size - 1; }
  std::size_t node_count() const noexcept { return session_size + relay_count; }
  Vertex relay_node(std::uint32_t relay) const noexcept {
    return static_cast<Vertex>(session_size + relay);
  }

  /// Whole network as a binary CapGraph on global ids.
  CapGraph to_cap_graph() const;

  friend bool operator==(const RelayNetwork&, const RelayNetwork&) = default;
};

/// relay(k, n-k) view of a graph whose first k vertices form the session:
/// session-internal links are dropped, vertex ids are preserved.
RelayNetwork relay_network_from_graph(const CapGraph& g, std::size_t session_size);

}  // namespace pushpull
