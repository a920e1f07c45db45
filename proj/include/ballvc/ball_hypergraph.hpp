#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ballvc/graph.hpp"
#include "ballvc/hypergraph.hpp"

namespace ballvc {

// Hypergraph whose hyperedges are balls of the source graph, labeled with
// (center, radius). For a fixed-radius hypergraph there is exactly one edge
// per vertex (index = center); the all-radii hypergraph is deduplicated by
// content, keeping the first (center, radius) label found.
struct BallHypergraph {
    Hypergraph h;
    std::vector<std::pair<int, int>> labels;  // per edge: (center, radius)
    uint64_t graph_fingerprint = 0;
};

// All balls of radius ell: edge i = B(i, ell).
BallHypergraph b_ell(const Graph& g, int ell);

// All distinct balls B(x,k) for 0 <= k <= ecc(x), deduplicated by content.
// Radius-0 balls (singletons) are included.
BallHypergraph b_all(const Graph& g);

// Incidence symmetry of the fixed-radius ball hypergraph: membership
// d(u,c) <= ell is a symmetric relation, so the hypergraph is its own dual.
bool self_duality_check(const Graph& g, int ell);

enum class DistanceVcMode { vc, two_vc };

constexpr int kDistanceVcExactCap = 12;

struct DistanceVcResult {
    int value = -1;
    bool exact = false;
    std::vector<int> subgraph;   // original vertex ids of the witness subgraph
    std::vector<int> shattered;  // original vertex ids of the witness set
};

// Maximum over induced subgraphs of the (2-)shattering dimension of the
// all-radii ball hypergraph. Exact mode enumerates connected induced
// subgraphs only (the value of a disconnected graph is the maximum over its
// components) and requires n <= kDistanceVcExactCap.
DistanceVcResult distance_vc_exact(const Graph& g, DistanceVcMode mode);

// Budgeted mode for larger graphs: seeded delete-vertex hill climbing over
// induced subgraphs, optionally seeded with caller-supplied candidate
// subgraphs (hints). The returned value is a certified lower bound: the
// witness is always re-verified with is_shattered before reporting.
DistanceVcResult distance_vc_budgeted(const Graph& g, DistanceVcMode mode, int budget,
                                      uint64_t seed,
                                      const std::vector<std::vector<int>>& hints = {});

// Dispatches on size: exact when n <= kDistanceVcExactCap, else budgeted.
DistanceVcResult distance_vc(const Graph& g, DistanceVcMode mode, int budget = 2000,
                             uint64_t seed = 1);

}  // namespace ballvc
