#include "pushpull/cap_graph.hpp"

#include <algorithm>
#include <string>

#include "pushpull/errors.hpp"

namespace pushpull {

namespace {

bool edge_key_less(const Edge& a, const Edge& b) {
  return a.u != b.u ? a.u < b.u : a.v < b.v;
}

}  // namespace

CapGraph CapGraph::from_edges(std::size_t n, std::vector<Edge> edges) {
  for (const Edge& e : edges) {
    if (e.u >= e.v) {
      throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       ") must satisfy i < j");
    }
    if (e.v >= n) {
      throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       ") out of range for n=" + std::to_string(n));
    }
    if (!(e.capacity >= 0.0)) {
      throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       ") has negative or NaN capacity");
    }
  }
  std::sort(edges.begin(), edges.end(), edge_key_less);
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i - 1].u == edges[i].u && edges[i - 1].v == edges[i].v) {
      throw InputError("duplicate edge (" + std::to_string(edges[i].u) + "," +
                       std::to_string(edges[i].v) + ")");
    }
  }
  std::erase_if(edges, [](const Edge& e) { return e.capacity == 0.0; });
  CapGraph g(n);
  g.edges_ = std::move(edges);
  return g;
}

std::optional<EdgeId> CapGraph::find_edge(Vertex a, Vertex b) const noexcept {
  if (a == b) return std::nullopt;
  if (a > b) std::swap(a, b);
  Edge key{a, b, 0.0};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key, edge_key_less);
  if (it == edges_.end() || it->u != a || it->v != b) return std::nullopt;
  return static_cast<EdgeId>(it - edges_.begin());
}

double CapGraph::capacity(Vertex a, Vertex b) const noexcept {
  auto id = find_edge(a, b);
  return id ? edges_[*id].capacity : 0.0;
}

double CapGraph::total_capacity() const noexcept {
  double sum = 0.0;
  for (const Edge& e : edges_) sum += e.capacity;
  return sum;
}

bool CapGraph::is_binary() const noexcept {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.capacity == 1.0; });
}

CapGraph CapGraph::induced_prefix(std::size_t k) const {
  CapGraphBuilder builder(std::min(k, n_));
  for (const Edge& e : edges_) {
    if (e.u >= k) break;
    if (e.v < k) builder.append(e.u, e.v, e.capacity);
  }
  return std::move(builder).build();
}

void CapGraphBuilder::append(Vertex u, Vertex v, double capacity) {
  if (capacity == 0.0) return;
  graph_.edges_.push_back(Edge{u, v, capacity});
}

Adjacency::Adjacency(const CapGraph& g) : offsets_(g.vertex_count() + 1, 0) {
  for (const Edge& e : g.edges()) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  entries_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (u, v): for a fixed vertex x, the neighbors u < x arrive
  // in increasing u (as the larger endpoint), then the neighbors v > x in
  // increasing v, so every list comes out ascending.
  const auto edges = g.edges();
  for (EdgeId id = 0; id < edges.size(); ++id) {
    const Edge& e = edges[id];
    entries_[cursor[e.v]++] = Entry{e.u, id};
  }
  for (EdgeId id = 0; id < edges.size(); ++id) {
    const Edge& e = edges[id];
    entries_[cursor[e.u]++] = Entry{e.v, id};
  }
}

void BipartiteGraph::reset(std::size_t left_size, std::size_t right_size) {
  right_size_ = right_size;
  for (auto& row : adjacency_) row.clear();
  adjacency_.resize(left_size);
}

void BipartiteGraph::add_edge(std::uint32_t left, std::uint32_t right) {
  if (left >= adjacency_.size() || right >= right_size_) {
    throw InputError("bipartite edge (" + std::to_string(left) + "," + std::to_string(right) +
                     ") out of range");
  }
  auto& row = adjacency_[left];
  if (row.empty() || row.back() < right) {
    row.push_back(right);
    return;
  }
  auto it = std::lower_bound(row.begin(), row.end(), right);
  if (it == row.end() || *it != right) row.insert(it, right);
}

bool BipartiteGraph::has_edge(std::uint32_t left, std::uint32_t right) const {
  if (left >= adjacency_.size()) return false;
  const auto& row = adjacency_[left];
  return std::binary_search(row.begin(), row.end(), right);
}

void BipartiteGraph::finalize() {
  for (auto& row : adjacency_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
}

std::size_t BipartiteGraph::edge_count() const noexcept {
  std::size_t total = 0;
  for (const auto& row : adjacency_) total += row.size();
  return total;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> BipartiteGraph::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(edge_count());
  for (std::uint32_t l = 0; l < adjacency_.size(); ++l) {
    for (std::uint32_t r : adjacency_[l]) out.emplace_back(l, r);
  }
  return out;
}

BipartiteGraph BipartiteGraph::transposed() const {
  BipartiteGraph t(right_size_, adjacency_.size());
  for (std::uint32_t l = 0; l < adjacency_.size(); ++l) {
    for (std::uint32_t r : adjacency_[l]) t.adjacency_[r].push_back(l);
  }
  return t;
}

CapGraph RelayNetwork::to_cap_graph() const {
  std::vector<Edge> edges;
  edges.reserve(source_relays.size() + relay_core.edge_count());
  for (std::uint32_t r : source_relays) edges.push_back(Edge{0, relay_node(r), 1.0});
  for (std::size_t s = 0; s < sink_relays.size(); ++s) {
    for (std::uint32_t r : sink_relays[s]) {
      edges.push_back(Edge{static_cast<Vertex>(s + 1), relay_node(r), 1.0});
    }
  }
  for (const Edge& e : relay_core.edges()) {
    edges.push_back(Edge{relay_node(e.u), relay_node(e.v), 1.0});
  }
  return CapGraph::from_edges(node_count(), std::move(edges));
}

RelayNetwork relay_network_from_graph(const CapGraph& g, std::size_t session_size) {
  const std::size_t n = g.vertex_count();
  if (session_size < 2 || session_size > n) {
    throw ParameterError("session size k=" + std::to_string(session_size) +
                         " out of range [2, " + std::to_string(n) + "]");
  }
  if (!g.is_binary()) throw InputError("relay network requires binary capacities");
  RelayNetwork net;
  net.session_size = session_size;
  net.relay_count = n - session_size;
  net.sink_relays.resize(session_size - 1);
  const auto k = static_cast<Vertex>(session_size);
  CapGraphBuilder core(net.relay_count);
  for (const Edge& e : g.edges()) {
    if (e.v < k) continue;  // session-internal
    if (e.u < k) {
      const std::uint32_t relay = e.v - k;
      if (e.u == 0) {
        net.source_relays.push_back(relay);
      } else {
        net.sink_relays[e.u - 1].push_back(relay);
      }
    } else {
      core.append(e.u - k, e.v - k, 1.0);
    }
  }
  net.relay_core = std::move(core).build();
  return net;
}

}  // namespace pushpull
