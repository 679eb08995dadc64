#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "pushpull/errors.hpp"
#include "pushpull/oracles.hpp"
#include "pushpull/simplex.hpp"

namespace pushpull {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Appends every (|S|-1)-subset of `candidates` that is a tree on S; with a
// terminal mask, only trees whose leaves are all terminals.
void trees_on(const CapGraph& g, std::uint32_t mask, std::uint32_t terminals,
              const std::vector<EdgeId>& candidates, std::vector<std::vector<EdgeId>>& out) {
  const auto size = static_cast<std::size_t>(std::popcount(mask));
  const std::size_t r = size - 1;
  if (r == 0) {
    out.emplace_back();
    return;
  }
  if (candidates.size() < r) return;
  std::vector<std::size_t> pick(r);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<std::uint32_t> degree(g.vertex_count());
  while (true) {
    DisjointSets sets(g.vertex_count());
    bool acyclic = true;
    for (std::size_t i = 0; i < r && acyclic; ++i) {
      const Edge& e = g.edge(candidates[pick[i]]);
      acyclic = sets.unite(e.u, e.v);
    }
    if (acyclic) {
      bool pruned = true;
      if (terminals != mask) {
        std::fill(degree.begin(), degree.end(), 0);
        for (std::size_t i = 0; i < r; ++i) {
          const Edge& e = g.edge(candidates[pick[i]]);
          ++degree[e.u];
          ++degree[e.v];
        }
        for (Vertex v = 0; v < g.vertex_count() && pruned; ++v) {
          if (degree[v] == 1 && !(terminals >> v & 1U)) pruned = false;
        }
      }
      if (pruned) {
        std::vector<EdgeId> tree(r);
        for (std::size_t i = 0; i < r; ++i) tree[i] = candidates[pick[i]];
        out.push_back(std::move(tree));
      }
    }
    // next combination
    std::size_t i = r;
    while (i > 0 && pick[i - 1] == candidates.size() - r + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
}

std::vector<EdgeId> edges_within(const CapGraph& g, std::uint32_t mask) {
  std::vector<EdgeId> ids;
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    if ((mask >> e.u & 1U) && (mask >> e.v & 1U)) ids.push_back(id);
  }
  return ids;
}

}  // namespace

TreeSet enumerate_trees(const CapGraph& g, const std::optional<std::vector<Vertex>>& session) {
  const std::size_t n = g.vertex_count();
  if (n < 1) throw ParameterError("graph has no vertices");
  if (n > kMaxTreeVertices) {
    throw SizeError("n=" + std::to_string(n) + " exceeds the tree enumeration limit of " +
                    std::to_string(kMaxTreeVertices));
  }
  const std::uint32_t all = (1U << n) - 1;
  TreeSet out;
  if (!session) {
    out.kind = TreeKind::kSpanning;
    trees_on(g, all, all, edges_within(g, all), out.trees);
    return out;
  }

  out.kind = TreeKind::kSteiner;
  std::uint32_t terminals = 0;
  for (Vertex v : *session) {
    if (v >= n) throw InputError("session vertex " + std::to_string(v) + " is not in the graph");
    terminals |= 1U << v;
  }
  if (std::popcount(terminals) < 2) throw ParameterError("session needs at least 2 vertices");
  for (Vertex v = 0; v < n; ++v) {
    if (terminals >> v & 1U) out.session.push_back(v);
  }
  for (std::uint32_t mask = terminals; mask <= all; ++mask) {
    if ((mask & terminals) != terminals) continue;
    trees_on(g, mask, terminals, edges_within(g, mask), out.trees);
  }
  return out;
}

bool is_tree(const CapGraph& g, const std::vector<EdgeId>& edges) {
  DisjointSets sets(g.vertex_count());
  std::vector<bool> touched(g.vertex_count(), false);
  for (EdgeId id : edges) {
    if (id >= g.edge_count()) return false;
    const Edge& e = g.edge(id);
    if (!sets.unite(e.u, e.v)) return false;
    touched[e.u] = touched[e.v] = true;
  }
  const auto vertices = static_cast<std::size_t>(std::count(touched.begin(), touched.end(), true));
  return edges.empty() || vertices == edges.size() + 1;
}

PackingResult tree_pack_lp(const CapGraph& g, const TreeSet& trees) {
  if (trees.trees.empty()) throw ParameterError("tree packing needs at least one tree");
  const std::size_t m = g.edge_count();
  const std::size_t t = trees.size();
  std::vector<std::vector<double>> a(m, std::vector<double>(t, 0.0));
  for (std::size_t j = 0; j < t; ++j) {
    for (EdgeId id : trees.trees[j]) {
      if (id >= m) throw InputError("tree " + std::to_string(j) + " uses edge id " + std::to_string(id) +
                                    " outside the graph");
      a[id][j] = 1.0;
    }
  }
  std::vector<double> b(m);
  for (EdgeId id = 0; id < m; ++id) b[id] = g.edge(id).capacity;
  const LpSolution sol = maximize(std::vector<double>(t, 1.0), a, b);
  if (sol.status != LpStatus::kOptimal) throw std::logic_error("tree packing LP reported unbounded");

  PackingResult out;
  out.value = sol.value;
  out.weights = sol.x;
  for (EdgeId id = 0; id < m; ++id) {
    if (sol.slack[id] <= 1e-9) out.tight_edges.push_back(id);
  }
  return out;
}

}  // namespace pushpull
