#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ballvc/graph.hpp"
#include "ballvc/lexpath.hpp"

namespace ballvc {

// Branch sets witnessing a pattern-graph minor: pairwise disjoint, each
// inducing a connected subgraph, with a host edge between the branch sets of
// every pattern edge.
struct MinorModel {
    Graph pattern;
    std::vector<std::vector<int>> branch_sets;
};

struct MinorCheck {
    bool ok = true;
    std::string violation;  // "disjointness", "connectivity", "pattern edge i-j", ""
};

MinorCheck verify_minor_model(const Graph& g, const MinorModel& m);

// Witness that some ball isolates the pair (x_i, x_j) from the rest of X:
// B(center, radius) ∩ X = {x_i, x_j} with the radius minimal over all
// centers, plus the central path through the center.
struct PairWitness {
    int i = -1, j = -1;  // indices into X
    int center = -1;
    int radius = -1;
    Path central;  // x_i .. center .. x_j, simple
};

struct PairWitnessResult {
    std::vector<PairWitness> witnesses;        // for the realizable pairs
    std::vector<std::pair<int, int>> failed;   // (i,j) pairs with no witness
    bool all_found() const { return failed.empty(); }
};

// For every pair of X, scans all (center, radius) with radius increasing and
// returns the minimal-radius witness whose ball traces exactly that pair on
// X (ties broken by smallest center id). Central paths are canonical lex-min
// shortest halves under `order`; a non-simple concatenation is re-routed by
// mirroring the x_i-side half and must come out simple (the minimality of
// the radius guarantees it).
PairWitnessResult find_pair_witnesses(const Graph& g, const std::vector<int>& x,
                                      const EdgeOrder& order);

// Builds a clique minor model on |x| branch sets from a full set of pair
// witnesses: central path vertices strictly closer to x_i join X_i, strictly
// closer to x_j join X_j, and midpoints go to the lower-indexed side. The
// output is verified with verify_minor_model; failure throws
// InternalInvariantViolation (it would mean a witness violated minimality).
MinorModel extract_clique_minor(const Graph& g, const std::vector<int>& x,
                                const std::vector<PairWitness>& witnesses);

// JSON round-trip: {"pattern_size": d, "branch_sets": [[...], ...]} for
// clique patterns.
std::string minor_model_to_json(const MinorModel& m);
MinorModel minor_model_from_json(const std::string& text);

}  // namespace ballvc
