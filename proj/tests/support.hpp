#pragma once

// Test-side reference computations. None of these call into the library's
// algorithms; they only read graph structure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "pushpull/cap_graph.hpp"
#include "pushpull/delivery.hpp"
#include "pushpull/random.hpp"

namespace testref {

using pushpull::BipartiteGraph;
using pushpull::CapGraph;
using pushpull::Edge;
using pushpull::Vertex;

/// Maximum matching size by exhaustive search over left vertices.
inline std::size_t brute_matching_size(const BipartiteGraph& g) {
  std::vector<bool> used(g.right_size(), false);
  std::function<std::size_t(std::uint32_t)> best = [&](std::uint32_t l) -> std::size_t {
    if (l == g.left_size()) return 0;
    std::size_t out = best(l + 1);
    for (std::uint32_t r : g.neighbors(l)) {
      if (used[r]) continue;
      used[r] = true;
      out = std::max(out, 1 + best(l + 1));
      used[r] = false;
    }
    return out;
  };
  return best(0);
}

/// Determinant by Gaussian elimination with partial pivoting.
inline double determinant(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    }
    if (std::abs(m[piv][c]) < 1e-12) return 0.0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

/// Number of spanning trees of the support graph (matrix-tree theorem).
inline std::size_t kirchhoff_count(const CapGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 1) return 1;
  std::vector<std::vector<double>> lap(n, std::vector<double>(n, 0.0));
  for (const Edge& e : g.edges()) {
    lap[e.u][e.u] += 1;
    lap[e.v][e.v] += 1;
    lap[e.u][e.v] -= 1;
    lap[e.v][e.u] -= 1;
  }
  std::vector<std::vector<double>> minor(n - 1, std::vector<double>(n - 1));
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 1; j < n; ++j) minor[i - 1][j - 1] = lap[i][j];
  }
  return static_cast<std::size_t>(std::llround(determinant(minor)));
}

/// Strength over all labelings V -> {0..n-1}; a labeling induces a partition.
/// With a session, only partitions whose every block holds a session vertex count.
inline double brute_strength(const CapGraph& g, const std::vector<Vertex>& session = {}) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> label(n, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::set<std::size_t> used(label.begin(), label.end());
    if (used.size() >= 2) {
      bool admissible = true;
      if (!session.empty()) {
        std::set<std::size_t> covered;
        for (Vertex s : session) covered.insert(label[s]);
        admissible = covered.size() == used.size();
      }
      if (admissible) {
        double cut = 0.0;
        for (const Edge& e : g.edges()) {
          if (label[e.u] != label[e.v]) cut += e.capacity;
        }
        best = std::min(best, cut / static_cast<double>(used.size() - 1));
      }
    }
    std::size_t i = 0;
    while (i < n && ++label[i] == n) label[i++] = 0;
    if (i == n) break;
  }
  return best;
}

/// Edge subsets forming trees that contain every session vertex and have only
/// session leaves (spanning trees when the session is all of V).
inline std::size_t brute_tree_count(const CapGraph& g, const std::vector<Vertex>& session) {
  const std::size_t m = g.edge_count();
  const std::size_t n = g.vertex_count();
  std::size_t count = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<std::size_t> degree(n, 0);
    std::vector<Vertex> parent(n);
    for (Vertex v = 0; v < n; ++v) parent[v] = v;
    std::function<Vertex(Vertex)> find = [&](Vertex v) {
      return parent[v] == v ? v : parent[v] = find(parent[v]);
    };
    bool acyclic = true;
    std::size_t edges = 0;
    for (std::size_t e = 0; e < m && acyclic; ++e) {
      if (!(mask >> e & 1)) continue;
      const Edge& ed = g.edge(static_cast<pushpull::EdgeId>(e));
      ++degree[ed.u];
      ++degree[ed.v];
      ++edges;
      const Vertex a = find(ed.u);
      const Vertex b = find(ed.v);
      if (a == b) acyclic = false;
      parent[a] = b;
    }
    if (!acyclic) continue;
    std::size_t touched = 0;
    for (Vertex v = 0; v < n; ++v) touched += degree[v] > 0;
    if (touched != edges + 1) continue;  // a forest with one component
    bool ok = true;
    for (Vertex s : session) ok = ok && degree[s] > 0;
    for (Vertex v = 0; v < n && ok; ++v) {
      if (degree[v] == 1) ok = std::find(session.begin(), session.end(), v) != session.end();
    }
    count += ok;
  }
  return count;
}

/// Random graph with integer capacities in {1..max_cap} on a random support
/// that is made connected by a random spanning path.
inline CapGraph random_connected_graph(std::size_t n, int max_cap, double p, std::uint64_t seed) {
  pushpull::Rng rng(seed);
  std::vector<Vertex> perm(n);
  for (Vertex v = 0; v < n; ++v) perm[v] = v;
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.next() % i]);
  std::set<std::pair<Vertex, Vertex>> pairs;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    pairs.insert({std::min(perm[i], perm[i + 1]), std::max(perm[i], perm[i + 1])});
  }
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) pairs.insert({u, v});
    }
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : pairs) {
    edges.push_back(Edge{u, v, static_cast<double>(1 + rng.next() % max_cap)});
  }
  return CapGraph::from_edges(n, std::move(edges));
}

/// Recomputes delivered sets from the transmissions alone: a node holds a bit
/// iff it is the source or some transmission of that bit reached it from a
/// node that held it one hop earlier.
inline std::vector<std::set<std::uint32_t>> replay(const pushpull::DeliveryRecord& r) {
  std::vector<std::set<std::uint32_t>> held(r.node_count);
  for (std::uint32_t b = 0; b < r.bits; ++b) held[r.source].insert(b);
  for (std::uint8_t hop = 1; hop <= 3; ++hop) {
    auto next = held;
    for (const auto& t : r.transmissions) {
      if (t.hop == hop && held[t.tail].count(t.bit)) next[t.head].insert(t.bit);
    }
    held = std::move(next);
  }
  return held;
}

/// Bits carried by each undirected link, both directions combined.
inline std::map<std::pair<Vertex, Vertex>, std::size_t> link_loads(const pushpull::DeliveryRecord& r) {
  std::map<std::pair<Vertex, Vertex>, std::size_t> load;
  for (const auto& t : r.transmissions) ++load[{std::min(t.tail, t.head), std::max(t.tail, t.head)}];
  return load;
}

}  // namespace testref
