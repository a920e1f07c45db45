#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ballvc/graph.hpp"
#include "ballvc/hypergraph.hpp"
#include "ballvc/rank_decomposition.hpp"

namespace ballvc {

// The clique-plus-long-paths construction: n clique vertices x_1..x_n and,
// for every pair i<j, an induced path of 2l-1 vertices joining x_i to x_j.
// Vertex numbering is fixed for reproducibility: clique first (0..n-1), then
// path vertices ordered by (i, j, k).
struct GnlGraph {
    Graph graph;
    int n = 0;
    int ell = 0;
    std::vector<int> clique;  // x_1..x_n as vertex ids 0..n-1

    // Vertex id of y_k^{i,j}; 0-based i<j, 1 <= k <= 2*ell-1.
    int path_vertex(int i, int j, int k) const;
    // The midpoint y_ell^{i,j} whose radius-ell ball traces exactly {x_i,x_j}.
    int midpoint(int i, int j) const { return path_vertex(i, j, ell); }
};

GnlGraph gnl(int n, int ell);

// Deterministic standard families.
Graph grid_graph(int rows, int cols);
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph clique_graph(int n);
Graph complete_bipartite_graph(int a, int b);
Graph gnp_graph(int n, double p, uint64_t seed);

// Family dispatch used by the CLI: kind in {grid, path, cycle, clique,
// complete_bipartite, gnp}; params are positional sizes, p is only read for
// gnp.
Graph family(const std::string& kind, const std::vector<int>& params, double p, uint64_t seed);

// Cotree recipe: a leaf contributes one vertex; internal nodes combine their
// children by disjoint union or by join (all edges across).
struct CotreeNode {
    enum class Kind { leaf, disjoint_union, join };
    Kind kind = Kind::leaf;
    std::vector<CotreeNode> children;

    static CotreeNode leaf() { return CotreeNode{}; }
    static CotreeNode unite(std::vector<CotreeNode> kids);
    static CotreeNode join(std::vector<CotreeNode> kids);
};

struct CographWithTree {
    Graph graph;
    TernaryTree tree;  // width(graph, tree) <= 1, verified at construction
};

// Builds the cograph of a recipe together with a ternary tree derived from
// the cotree (high-arity nodes are expanded into binary caterpillars). The
// width <= 1 property is re-verified before returning.
CographWithTree cograph_with_tree(const CotreeNode& recipe);

CotreeNode random_cotree(int num_leaves, uint64_t seed);

// n vertices, all C(n,2) two-element hyperedges in (i,j) lexicographic order.
Hypergraph pairs_hypergraph(int n);

}  // namespace ballvc
