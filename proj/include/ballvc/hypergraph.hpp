#pragma once

#include <boost/dynamic_bitset.hpp>
#include <iosfwd>
#include <string>
#include <vector>

namespace ballvc {

using Bitset = boost::dynamic_bitset<>;

Bitset make_bitset(int n, const std::vector<int>& members);
std::vector<int> bitset_members(const Bitset& b);

// Finite hypergraph: n vertices, an indexed family of hyperedges stored as
// bitsets. Distinct indices may carry identical content (needed for ball
// hypergraphs, where the index is the center).
struct Hypergraph {
    int n = 0;
    std::vector<Bitset> edges;

    Hypergraph() = default;
    Hypergraph(int n_, std::vector<std::vector<int>> edge_lists);

    int num_edges() const { return static_cast<int>(edges.size()); }
    void add_edge(const std::vector<int>& members);
    std::vector<int> edge_members(int i) const { return bitset_members(edges[i]); }
};

// The distinct intersections {e ∩ X : e in the family}, as bitsets over the
// full vertex range. Members are sorted and deduplicated.
struct TraceFamily {
    Bitset ground;                // X itself
    std::vector<Bitset> members;  // pairwise distinct, each a subset of X

    bool contains(const Bitset& t) const;
};

TraceFamily trace(const Hypergraph& h, const std::vector<int>& x);

enum class ShatterMode { full, pairs };

// full:  every one of the 2^|X| subsets of X is a trace.
// pairs: every 2-element subset of X is a trace.
bool is_shattered(const Hypergraph& h, const std::vector<int>& x, ShatterMode mode);

// Exhaustive-mode caps, documented contract limits for the exact searches.
constexpr int kShatterSearchVertexCap = 24;
constexpr int kExactSolverVertexCap = 64;
constexpr int kExactSolverEdgeCap = 512;

// Largest shattered set size; -1 when the hypergraph has no edges.
// Exhaustive over all vertex subsets with monotone pruning (subsets of
// shattered sets are shattered). Throws SolverCapExceeded when n exceeds
// kShatterSearchVertexCap.
int vc_dimension(const Hypergraph& h);

// Largest 2-shattered set size; 1 when n > 0 but no set of size >= 2 is
// 2-shattered (singletons are vacuously 2-shattered), 0 when n == 0.
int two_vc_dimension(const Hypergraph& h);

// Witness-returning variants used by the searches above and by callers that
// need certificates.
struct ShatterWitness {
    int value = -1;
    std::vector<int> witness;
};
ShatterWitness max_shattered_set(const Hypergraph& h, ShatterMode mode);

// Budgeted randomized lower bound for instances above the exhaustive cap:
// seeded greedy growth of shattered sets, restarted until the node budget is
// spent. The result is only a certified lower bound; the witness is
// re-verified with is_shattered before returning.
ShatterWitness shattered_lower_bound(const Hypergraph& h, ShatterMode mode, int budget,
                                     uint64_t seed);

// Dual hypergraph: vertices are the edge indices of h; for every vertex v of
// h there is one dual edge {i : v in e_i}. dual(dual(h)) == h as an indexed
// family.
Hypergraph dual(const Hypergraph& h);

enum class SolveMode { exact, greedy };

// Minimum hitting set (exact: branch and bound seeded by the greedy bound;
// greedy: max-coverage heuristic, always feasible). Throws
// InfeasibleInstance if some hyperedge is empty, SolverCapExceeded when the
// exact caps are exceeded.
std::vector<int> transversality(const Hypergraph& h, SolveMode mode);

// Maximum set of pairwise vertex-disjoint edge indices (exact or maximal
// greedy).
std::vector<int> packing_number(const Hypergraph& h, SolveMode mode);

// (p,q)-property: among every p hyperedges some q share a vertex.
// A counterexample is a (q-1)-sparse subfamily of p edge indices; it is
// re-verified before being returned.
struct PqResult {
    bool holds = true;
    std::vector<int> counterexample;  // empty when holds
};
PqResult pq_property(const Hypergraph& h, int p, int q);

// Text format: `h <n> <k>` header then k lines `s <v1> <v2> ...`.
Hypergraph read_hypergraph(std::istream& in);
Hypergraph read_hypergraph_file(const std::string& path);
void write_hypergraph(const Hypergraph& h, std::ostream& out);

}  // namespace ballvc
