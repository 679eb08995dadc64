#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pushpull/errors.hpp"
#include "pushpull/oracles.hpp"

namespace pushpull {

namespace {

struct LowerEdge {
  Vertex other;  // smaller endpoint
  double capacity;
};

// Walks every partition of 0..n-1 as a restricted growth string, keeping the
// cut capacity up to date as vertices are placed.
class PartitionSearch {
 public:
  PartitionSearch(const CapGraph& g, std::vector<bool> session)
      : n_(g.vertex_count()), lower_(n_), session_(std::move(session)), block_(n_, 0),
        session_in_block_(n_ + 1, 0) {
    for (const Edge& e : g.edges()) lower_[e.v].push_back(LowerEdge{e.u, e.capacity});
  }

  StrengthResult run() {
    place(0, 0, 0.0);
    StrengthResult out;
    out.value = best_;
    out.argmin.blocks.resize(best_blocks_);
    for (Vertex v = 0; v < n_; ++v) out.argmin.blocks[best_block_[v]].push_back(v);
    return out;
  }

 private:
  void place(Vertex v, std::size_t blocks, double cut) {
    if (v == n_) {
      evaluate(blocks, cut);
      return;
    }
    for (std::uint32_t b = 0; b <= blocks; ++b) {
      double extra = 0.0;
      for (const LowerEdge& e : lower_[v]) {
        if (block_[e.other] != b) extra += e.capacity;
      }
      block_[v] = b;
      if (session_[v]) ++session_in_block_[b];
      place(v + 1, b == blocks ? blocks + 1 : blocks, cut + extra);
      if (session_[v]) --session_in_block_[b];
    }
  }

  void evaluate(std::size_t blocks, double cut) {
    if (blocks < 2) return;
    for (std::size_t b = 0; b < blocks; ++b) {
      if (session_in_block_[b] == 0) return;
    }
    const double value = cut / static_cast<double>(blocks - 1);
    if (value < best_ - 1e-12) {
      best_ = value;
      best_block_ = block_;
      best_blocks_ = blocks;
    }
  }

  std::size_t n_;
  std::vector<std::vector<LowerEdge>> lower_;
  std::vector<bool> session_;
  std::vector<std::uint32_t> block_;
  std::vector<std::size_t> session_in_block_;
  double best_ = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> best_block_;
  std::size_t best_blocks_ = 0;
};

void check_oracle_size(const CapGraph& g) {
  if (g.vertex_count() < 2) throw ParameterError("strength needs at least 2 vertices");
  if (g.vertex_count() > kMaxStrengthVertices) {
    throw SizeError("n=" + std::to_string(g.vertex_count()) + " exceeds the partition oracle limit of " +
                    std::to_string(kMaxStrengthVertices));
  }
}

}  // namespace

StrengthResult strength_exact(const CapGraph& g) {
  check_oracle_size(g);
  return PartitionSearch(g, std::vector<bool>(g.vertex_count(), true)).run();
}

StrengthResult strength_multicast_exact(const CapGraph& g, const std::vector<Vertex>& session) {
  check_oracle_size(g);
  std::vector<bool> in_session(g.vertex_count(), false);
  std::size_t distinct = 0;
  for (Vertex v : session) {
    if (v >= g.vertex_count()) throw InputError("session vertex " + std::to_string(v) + " is not in the graph");
    if (!in_session[v]) ++distinct;
    in_session[v] = true;
  }
  if (distinct < 2) throw ParameterError("session needs at least 2 vertices");
  return PartitionSearch(g, std::move(in_session)).run();
}

double upper_bound_allcast(const CapGraph& g) {
  if (g.vertex_count() < 2) throw ParameterError("bound needs at least 2 vertices");
  return g.total_capacity() / static_cast<double>(g.vertex_count() - 1);
}

double upper_bound_multicast(const CapGraph& g, std::size_t k) {
  if (k < 2 || k > g.vertex_count()) {
    throw ParameterError("session size k=" + std::to_string(k) + " out of range [2, " +
                         std::to_string(g.vertex_count()) + "]");
  }
  // Every link with its smaller endpoint among 0..k-2 crosses the cut.
  double cut = 0.0;
  for (const Edge& e : g.edges()) {
    if (e.u + 2 <= k) cut += e.capacity;
  }
  return cut / static_cast<double>(k - 1);
}

std::int64_t catlin_value(const CapGraph& g) {
  return static_cast<std::int64_t>(std::floor(upper_bound_allcast(g) + 1e-9));
}

}  // namespace pushpull
