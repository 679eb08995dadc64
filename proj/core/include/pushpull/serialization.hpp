#pragma once

#include <string>
#include <vector>

#include "pushpull/allcast.hpp"
#include "pushpull/cap_graph.hpp"
#include "pushpull/flow.hpp"
#include "pushpull/harness.hpp"
#include "pushpull/matching.hpp"
#include "pushpull/oracles.hpp"

namespace pushpull {

// JSON interchange. Readers throw InputError naming the offending field.
// Writers produce deterministic text (fixed key order, no timestamps).

/// {"n": N, "edges": [[u, v, c], ...]}
std::string graph_to_json(const CapGraph& g);
CapGraph graph_from_json(const std::string& text);

/// {"left": L, "right": R, "edges": [[i, j], ...]}
std::string bipartite_to_json(const BipartiteGraph& g);
BipartiteGraph bipartite_from_json(const std::string& text);

/// {"k": K, "n": N, "source": [...], "sinks": [[...], ...], "core": [[i, j], ...]}
/// with relays numbered 0..N-1.
std::string relay_to_json(const RelayNetwork& net);
RelayNetwork relay_from_json(const std::string& text);

std::string report_to_json(const AllcastReport& r);
std::string report_to_json(const FlowReport& r);
std::string report_to_json(const MulticastReport& r);
std::string report_to_json(const LayeredReport& r);

/// {"n","p","trials","failures","frequency","wilson_low","wilson_high","gamma_bound"}
std::string matching_frequency_to_json(const MatchingFrequency& f);

/// {"strength": v, "argmin_blocks": [[...], ...]}
std::string strength_to_json(const StrengthResult& s);
/// {"lp_value": v, "num_trees": t, "weights": [...], "tight_edges": [[u, v], ...]}
std::string packing_to_json(const PackingResult& p, const TreeSet& trees, const CapGraph& g);

/// Config echo plus per-cell summaries and per-trial outcomes.
std::string experiment_to_json(const ExperimentConfig& cfg, const std::vector<CellStats>& stats);

}  // namespace pushpull
