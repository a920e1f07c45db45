#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ballvc/graph.hpp"
#include "ballvc/hypergraph.hpp"

namespace ballvc {

// Row-major bit matrix over GF(2).
struct Gf2Matrix {
    int cols = 0;
    std::vector<Bitset> rows;

    Gf2Matrix() = default;
    Gf2Matrix(int num_rows, int num_cols) : cols(num_cols), rows(num_rows, Bitset(num_cols)) {}

    int num_rows() const { return static_cast<int>(rows.size()); }
    int rank() const;  // Gaussian elimination
    Gf2Matrix transposed() const;
};

// Unrooted tree whose nodes have degree 1 or 3, with a bijection between the
// leaves and the vertices of a graph. A single-node tree (n == 1) is allowed
// as the degenerate representation of a one-vertex graph.
struct TernaryTree {
    int num_nodes = 0;
    std::vector<std::pair<int, int>> branches;  // tree edges between node ids
    std::vector<int> leaf_of_vertex;            // graph vertex -> node id
    std::vector<int> vertex_of_leaf;            // node id -> graph vertex or -1

    std::vector<std::vector<int>> node_adjacency() const;
    // Throws std::invalid_argument unless this is a valid tree-representation
    // of a graph with num_graph_vertices vertices.
    void validate(int num_graph_vertices) const;
    // Graph vertices on each side of tree edge `branch_index`.
    std::pair<std::vector<int>, std::vector<int>> split(int branch_index) const;
};

// The cross-adjacency matrix of a bipartition: rows indexed by `left`,
// columns by `right`, entry 1 iff the vertices are adjacent.
Gf2Matrix cross_matrix(const Graph& g, const std::vector<int>& left,
                       const std::vector<int>& right);

// GF(2) rank of the cross-adjacency matrix. `part` must be a bipartition of
// the whole vertex set (both sides may be empty).
int cutrank(const Graph& g, const std::vector<int>& side1, const std::vector<int>& side2);

// Max cutrank over the tree edges of a given tree-representation. This is
// the inner maximum of the rankwidth formula for one fixed (T,f); computing
// the outer minimum is out of scope.
int width(const Graph& g, const TernaryTree& t);

// Partition of the two sides of a cut of cutrank k into at most 2^k classes
// per side such that every (X_i, Y_j) block of cross edges is complete or
// empty. The basis is the first set of independent rows in vertex-id order;
// X classes group vertices by their (identical) neighborhoods in Y, labeled
// by GF(2) coordinates over the basis; Y classes group by adjacency pattern
// restricted to the basis vertices.
struct NeighborhoodPartition {
    std::vector<int> basis;                     // vertex ids of basis rows
    std::vector<std::vector<int>> x_classes;    // nonempty classes of X
    std::vector<std::vector<int>> y_classes;    // nonempty classes of Y
    std::vector<Bitset> x_labels;               // coordinate vector over basis
    std::vector<Bitset> y_labels;               // adjacency pattern on basis
};

NeighborhoodPartition neighborhood_partition(const Graph& g, const std::vector<int>& x,
                                             const std::vector<int>& y);

// An edge of t whose two sides each hold at least ceil(alpha/3) labeled
// leaves, where alpha = |labeled| > 2. Follows the orientation argument:
// orient every edge toward its heavier side and take a suitable component of
// a sink. Returns the branch index. Throws std::invalid_argument if
// alpha <= 2.
int balanced_edge(const TernaryTree& t, const std::vector<int>& labeled_vertices);

// Text format: `t <num_nodes>`, branch lines `b <u> <v>`, then leaf map
// lines `l <leaf-node> <graph-vertex>`.
TernaryTree read_ternary_tree(std::istream& in);
TernaryTree read_ternary_tree_file(const std::string& path);
void write_ternary_tree(const TernaryTree& t, std::ostream& out);

}  // namespace ballvc
