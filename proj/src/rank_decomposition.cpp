#include "ballvc/rank_decomposition.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ballvc {

int Gf2Matrix::rank() const {
    std::vector<Bitset> work = rows;
    int r = 0;
    for (int c = 0; c < cols && r < num_rows(); ++c) {
        int pivot = -1;
        for (int i = r; i < num_rows(); ++i)
            if (work[i].test(c)) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(work[r], work[pivot]);
        for (int i = 0; i < num_rows(); ++i)
            if (i != r && work[i].test(c)) work[i] ^= work[r];
        ++r;
    }
    return r;
}

Gf2Matrix Gf2Matrix::transposed() const {
    Gf2Matrix t(cols, num_rows());
    for (int i = 0; i < num_rows(); ++i)
        for (auto j = rows[i].find_first(); j != Bitset::npos; j = rows[i].find_next(j))
            t.rows[j].set(i);
    return t;
}

std::vector<std::vector<int>> TernaryTree::node_adjacency() const {
    std::vector<std::vector<int>> adj(num_nodes);
    for (auto [u, v] : branches) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

void TernaryTree::validate(int num_graph_vertices) const {
    if (num_nodes <= 0) throw std::invalid_argument("ternary tree: empty");
    if (static_cast<int>(branches.size()) != num_nodes - 1)
        throw std::invalid_argument("ternary tree: wrong branch count for a tree");
    auto adj = node_adjacency();
    for (auto [u, v] : branches)
        if (u < 0 || u >= num_nodes || v < 0 || v >= num_nodes || u == v)
            throw std::invalid_argument("ternary tree: bad branch endpoints");
    // connectivity
    std::vector<char> seen(num_nodes, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int reached = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        ++reached;
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                queue.push_back(v);
            }
    }
    if (reached != num_nodes) throw std::invalid_argument("ternary tree: disconnected");

    int leaves = 0;
    for (int u = 0; u < num_nodes; ++u) {
        size_t deg = adj[u].size();
        if (num_nodes == 1) {
            if (deg != 0) throw std::invalid_argument("ternary tree: bad degree");
            ++leaves;
        } else if (deg == 1) {
            ++leaves;
        } else if (deg != 3) {
            throw std::invalid_argument("ternary tree: internal node of degree != 3");
        }
    }
    if (leaves != num_graph_vertices)
        throw std::invalid_argument("ternary tree: leaf count != graph vertex count");
    if (static_cast<int>(leaf_of_vertex.size()) != num_graph_vertices ||
        static_cast<int>(vertex_of_leaf.size()) != num_nodes)
        throw std::invalid_argument("ternary tree: leaf map has wrong size");
    std::vector<char> used(num_nodes, 0);
    for (int v = 0; v < num_graph_vertices; ++v) {
        int node = leaf_of_vertex[v];
        if (node < 0 || node >= num_nodes || used[node])
            throw std::invalid_argument("ternary tree: leaf map is not injective");
        if (num_nodes > 1 && adj[node].size() != 1)
            throw std::invalid_argument("ternary tree: leaf map targets an internal node");
        if (vertex_of_leaf[node] != v)
            throw std::invalid_argument("ternary tree: leaf maps are inconsistent");
        used[node] = 1;
    }
}

std::pair<std::vector<int>, std::vector<int>> TernaryTree::split(int branch_index) const {
    if (branch_index < 0 || branch_index >= static_cast<int>(branches.size()))
        throw std::invalid_argument("ternary tree: bad branch index");
    auto [cut_u, cut_v] = branches[branch_index];
    auto adj = node_adjacency();
    std::vector<char> side_u(num_nodes, 0);
    std::deque<int> queue{cut_u};
    side_u[cut_u] = 1;
    while (!queue.empty()) {
        int a = queue.front();
        queue.pop_front();
        for (int b : adj[a]) {
            if ((a == cut_u && b == cut_v) || (a == cut_v && b == cut_u)) continue;
            if (!side_u[b]) {
                side_u[b] = 1;
                queue.push_back(b);
            }
        }
    }
    std::pair<std::vector<int>, std::vector<int>> out;
    for (int v = 0; v < static_cast<int>(vertex_of_leaf.size()); ++v) {
        int gv = vertex_of_leaf[v];
        if (gv < 0) continue;
        (side_u[v] ? out.first : out.second).push_back(gv);
    }
    std::sort(out.first.begin(), out.first.end());
    std::sort(out.second.begin(), out.second.end());
    return out;
}

Gf2Matrix cross_matrix(const Graph& g, const std::vector<int>& left,
                       const std::vector<int>& right) {
    Gf2Matrix m(static_cast<int>(left.size()), static_cast<int>(right.size()));
    for (int i = 0; i < static_cast<int>(left.size()); ++i)
        for (int j = 0; j < static_cast<int>(right.size()); ++j)
            if (g.has_edge(left[i], right[j])) m.rows[i].set(j);
    return m;
}

int cutrank(const Graph& g, const std::vector<int>& side1, const std::vector<int>& side2) {
    std::vector<char> seen(g.num_vertices(), 0);
    for (int v : side1) {
        g.check_vertex(v);
        if (seen[v]) throw std::invalid_argument("cutrank: vertex on both sides");
        seen[v] = 1;
    }
    for (int v : side2) {
        g.check_vertex(v);
        if (seen[v]) throw std::invalid_argument("cutrank: vertex on both sides");
        seen[v] = 1;
    }
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!seen[v]) throw std::invalid_argument("cutrank: partition does not cover V");
    return cross_matrix(g, side1, side2).rank();
}

int width(const Graph& g, const TernaryTree& t) {
    t.validate(g.num_vertices());
    int w = 0;
    for (int b = 0; b < static_cast<int>(t.branches.size()); ++b) {
        auto [v1, v2] = t.split(b);
        w = std::max(w, cutrank(g, v1, v2));
    }
    return w;
}

NeighborhoodPartition neighborhood_partition(const Graph& g, const std::vector<int>& x,
                                             const std::vector<int>& y) {
    for (int v : x) g.check_vertex(v);
    for (int v : y) g.check_vertex(v);
    std::vector<int> xs = x, ys = y;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());

    Gf2Matrix m = cross_matrix(g, xs, ys);

    // First independent rows in vertex-id order form the basis.
    NeighborhoodPartition out;
    std::vector<Bitset> reduced;        // row-echelon copies of basis rows
    std::vector<Bitset> combos;         // which basis rows were mixed in
    std::vector<int> pivot_col;
    auto reduce = [&](Bitset row, Bitset& combo) {
        for (size_t k = 0; k < reduced.size(); ++k)
            if (row.test(pivot_col[k])) {
                row ^= reduced[k];
                combo ^= combos[k];
            }
        return row;
    };
    for (int i = 0; i < m.num_rows(); ++i) {
        Bitset combo(xs.size());
        Bitset row = reduce(m.rows[i], combo);
        if (row.any()) {
            combo.set(out.basis.size());
            out.basis.push_back(xs[i]);
            pivot_col.push_back(static_cast<int>(row.find_first()));
            reduced.push_back(std::move(row));
            combos.push_back(std::move(combo));
        }
    }
    size_t k = out.basis.size();

    // X classes: vertices with equal GF(2) coordinates over the basis, which
    // is the same as equal neighborhoods in Y.
    std::map<Bitset, std::vector<int>> by_coords;
    for (int i = 0; i < m.num_rows(); ++i) {
        Bitset combo(xs.size());
        Bitset row = reduce(m.rows[i], combo);
        if (row.any()) throw std::logic_error("basis does not span rows");
        Bitset coords(k);
        for (size_t j = 0; j < k; ++j)
            if (combo.test(j)) coords.set(j);
        by_coords[coords].push_back(xs[i]);
    }
    for (auto& [label, members] : by_coords) {
        out.x_labels.push_back(label);
        out.x_classes.push_back(members);
    }

    // Y classes: adjacency pattern restricted to the basis vertices.
    std::map<Bitset, std::vector<int>> by_pattern;
    for (int v : ys) {
        Bitset pattern(k);
        for (size_t j = 0; j < k; ++j)
            if (g.has_edge(v, out.basis[j])) pattern.set(j);
        by_pattern[pattern].push_back(v);
    }
    for (auto& [label, members] : by_pattern) {
        out.y_labels.push_back(label);
        out.y_classes.push_back(members);
    }
    return out;
}

int balanced_edge(const TernaryTree& t, const std::vector<int>& labeled_vertices) {
    int alpha = static_cast<int>(labeled_vertices.size());
    if (alpha <= 2) throw std::invalid_argument("balanced_edge requires more than 2 labels");
    std::vector<char> labeled_node(t.num_nodes, 0);
    for (int v : labeled_vertices) {
        if (v < 0 || v >= static_cast<int>(t.leaf_of_vertex.size()))
            throw std::invalid_argument("balanced_edge: label out of range");
        labeled_node[t.leaf_of_vertex[v]] = 1;
    }

    auto adj = t.node_adjacency();
    int nb = static_cast<int>(t.branches.size());
    std::vector<char> labeled(t.leaf_of_vertex.size(), 0);
    for (int x : labeled_vertices) labeled[x] = 1;

    // Labeled leaves on each side of a branch; .first is the side of the
    // branch's first endpoint (matching split()).
    auto side_counts = [&](int b) {
        auto [s1, s2] = t.split(b);
        int c1 = 0;
        for (int x : s1) c1 += labeled[x] ? 1 : 0;
        return std::make_pair(c1, alpha - c1);
    };

    // Orient each branch toward its heavier side (ties toward the first
    // endpoint); leaves are sources, so some internal node is a sink.
    std::vector<std::pair<int, int>> counts(nb);
    std::vector<int> head(nb);  // node the branch points to
    for (int b = 0; b < nb; ++b) {
        counts[b] = side_counts(b);
        auto [u, v] = t.branches[b];
        // counts[b].first belongs to u's side (split puts cut_u's side first)
        head[b] = counts[b].first >= counts[b].second ? u : v;
    }
    std::vector<std::vector<int>> incident(t.num_nodes);
    for (int b = 0; b < nb; ++b) {
        incident[t.branches[b].first].push_back(b);
        incident[t.branches[b].second].push_back(b);
    }
    int sink = -1;
    for (int u = 0; u < t.num_nodes && sink < 0; ++u) {
        if (adj[u].size() != 3) continue;
        bool all_in = true;
        for (int b : incident[u])
            if (head[b] != u) all_in = false;
        if (all_in) sink = u;
    }
    if (sink < 0) {
        // A sink always exists: walk along arcs until stuck.
        int u = 0;
        for (;;) {
            int out_branch = -1;
            for (int b : incident[u])
                if (head[b] != u) out_branch = b;
            if (out_branch < 0) break;
            u = head[out_branch];
        }
        sink = u;
    }

    // The component of the sink holding >= alpha/3 labels gives the branch.
    int need = (alpha + 2) / 3;
    for (int b : incident[sink]) {
        auto [c_u, c_v] = counts[b];
        int other_side = t.branches[b].first == sink ? c_v : c_u;
        if (other_side >= need) {
            int sink_side = alpha - other_side;
            if (sink_side >= need) return b;
        }
    }
    throw std::logic_error("balanced_edge: no qualifying branch at the sink");
}

TernaryTree read_ternary_tree(std::istream& in) {
    TernaryTree t;
    std::string line;
    int n = -1;
    std::vector<std::pair<int, int>> leaf_lines;
    while (std::getline(in, line)) {
        size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        std::istringstream iss(line);
        std::string tag;
        iss >> tag;
        if (tag == "t") {
            if (!(iss >> n) || n <= 0) throw std::invalid_argument("ternary tree format: bad header");
            t.num_nodes = n;
        } else if (tag == "b") {
            int u, v;
            if (!(iss >> u >> v)) throw std::invalid_argument("ternary tree format: bad branch");
            t.branches.emplace_back(u, v);
        } else if (tag == "l") {
            int leaf, vertex;
            if (!(iss >> leaf >> vertex))
                throw std::invalid_argument("ternary tree format: bad leaf line");
            leaf_lines.emplace_back(leaf, vertex);
        } else {
            throw std::invalid_argument("ternary tree format: unknown tag '" + tag + "'");
        }
    }
    if (n < 0) throw std::invalid_argument("ternary tree format: missing header");
    int num_vertices = static_cast<int>(leaf_lines.size());
    t.leaf_of_vertex.assign(num_vertices, -1);
    t.vertex_of_leaf.assign(t.num_nodes, -1);
    for (auto [leaf, vertex] : leaf_lines) {
        if (vertex < 0 || vertex >= num_vertices || leaf < 0 || leaf >= t.num_nodes)
            throw std::invalid_argument("ternary tree format: leaf map out of range");
        t.leaf_of_vertex[vertex] = leaf;
        t.vertex_of_leaf[leaf] = vertex;
    }
    return t;
}

TernaryTree read_ternary_tree_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open tree file: " + path);
    return read_ternary_tree(in);
}

void write_ternary_tree(const TernaryTree& t, std::ostream& out) {
    out << "t " << t.num_nodes << "\n";
    for (auto [u, v] : t.branches) out << "b " << u << " " << v << "\n";
    for (int v = 0; v < static_cast<int>(t.leaf_of_vertex.size()); ++v)
        out << "l " << t.leaf_of_vertex[v] << " " << v << "\n";
}

}  // namespace ballvc
