#include "ballvc/generators.hpp"

#include <algorithm>
#include <stdexcept>

#include "ballvc/errors.hpp"
#include "ballvc/rng.hpp"

namespace ballvc {

namespace {
// Lexicographic index of the pair (i,j), i<j, among all pairs of 0..n-1.
int pair_index(int n, int i, int j) { return i * n - i * (i + 1) / 2 + (j - i - 1); }
}  // namespace

int GnlGraph::path_vertex(int i, int j, int k) const {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n || i == j || k < 1 || k > 2 * ell - 1)
        throw std::invalid_argument("gnl: bad path vertex index");
    return n + pair_index(n, i, j) * (2 * ell - 1) + (k - 1);
}

GnlGraph gnl(int n, int ell) {
    if (n < 2 || ell < 1) throw std::invalid_argument("gnl requires n >= 2, ell >= 1");
    GnlGraph out;
    out.n = n;
    out.ell = ell;
    for (int i = 0; i < n; ++i) out.clique.push_back(i);

    int pairs = n * (n - 1) / 2;
    int total = n + (2 * ell - 1) * pairs;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int base = n + pair_index(n, i, j) * (2 * ell - 1);
            edges.emplace_back(i, base);  // x_i -- y_1
            for (int k = 1; k < 2 * ell - 1; ++k) edges.emplace_back(base + k - 1, base + k);
            edges.emplace_back(base + 2 * ell - 2, j);  // y_{2l-1} -- x_j
        }
    out.graph = Graph(total, std::move(edges));
    return out;
}

Graph grid_graph(int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("grid: sizes must be positive");
    auto id = [cols](int r, int c) { return r * cols + c; };
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
        }
    return Graph(rows * cols, std::move(edges));
}

Graph path_graph(int n) {
    if (n < 1) throw std::invalid_argument("path: n must be positive");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, std::move(edges));
}

Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle: n must be at least 3");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(0, n - 1);
    return Graph(n, std::move(edges));
}

Graph clique_graph(int n) {
    if (n < 1) throw std::invalid_argument("clique: n must be positive");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

Graph complete_bipartite_graph(int a, int b) {
    if (a < 1 || b < 1) throw std::invalid_argument("complete_bipartite: sizes must be positive");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
    return Graph(a + b, std::move(edges));
}

Graph gnp_graph(int n, double p, uint64_t seed) {
    if (n < 0 || p < 0.0 || p > 1.0) throw std::invalid_argument("gnp: bad parameters");
    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.next_bool(p)) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

Graph family(const std::string& kind, const std::vector<int>& params, double p, uint64_t seed) {
    auto arg = [&params](size_t i) {
        if (i >= params.size()) throw std::invalid_argument("family: missing size parameter");
        return params[i];
    };
    if (kind == "grid") return grid_graph(arg(0), arg(1));
    if (kind == "path") return path_graph(arg(0));
    if (kind == "cycle") return cycle_graph(arg(0));
    if (kind == "clique") return clique_graph(arg(0));
    if (kind == "complete_bipartite") return complete_bipartite_graph(arg(0), arg(1));
    if (kind == "gnp") return gnp_graph(arg(0), p, seed);
    throw std::invalid_argument("family: unknown kind '" + kind + "'");
}

CotreeNode CotreeNode::unite(std::vector<CotreeNode> kids) {
    CotreeNode node;
    node.kind = Kind::disjoint_union;
    node.children = std::move(kids);
    return node;
}

CotreeNode CotreeNode::join(std::vector<CotreeNode> kids) {
    CotreeNode node;
    node.kind = Kind::join;
    node.children = std::move(kids);
    return node;
}

namespace {

// Builds the cograph and, in parallel, an unrooted ternary tree whose leaves
// are the graph vertices. Each recipe subtree yields one "port" node of the
// growing tree; multi-child nodes become binary caterpillars. Every split of
// the resulting tree separates a set of leaves that is a union of cotree
// modules hanging off a spine, so its cutrank stays at most 1.
struct CographBuilder {
    std::vector<std::pair<int, int>> graph_edges;
    std::vector<std::pair<int, int>> tree_branches;
    std::vector<int> vertex_of_node;  // node -> graph vertex or -1
    int num_vertices = 0;

    int new_node(int vertex) {
        vertex_of_node.push_back(vertex);
        return static_cast<int>(vertex_of_node.size()) - 1;
    }

    // Returns (port node, vertices of this subtree).
    std::pair<int, std::vector<int>> build(const CotreeNode& node) {
        if (node.kind == CotreeNode::Kind::leaf) {
            int v = num_vertices++;
            return {new_node(v), {v}};
        }
        if (node.children.empty())
            throw std::invalid_argument("cograph recipe: internal node without children");
        std::vector<std::pair<int, std::vector<int>>> built;
        built.reserve(node.children.size());
        for (const CotreeNode& child : node.children) built.push_back(build(child));
        if (node.kind == CotreeNode::Kind::join) {
            for (size_t a = 0; a < built.size(); ++a)
                for (size_t b = a + 1; b < built.size(); ++b)
                    for (int u : built[a].second)
                        for (int v : built[b].second) graph_edges.emplace_back(u, v);
        }
        // Caterpillar expansion: fold the children ports pairwise.
        int port = built[0].first;
        std::vector<int> vertices = std::move(built[0].second);
        for (size_t i = 1; i < built.size(); ++i) {
            int spine = new_node(-1);
            tree_branches.emplace_back(spine, port);
            tree_branches.emplace_back(spine, built[i].first);
            port = spine;
            vertices.insert(vertices.end(), built[i].second.begin(), built[i].second.end());
        }
        return {port, vertices};
    }
};

}  // namespace

CographWithTree cograph_with_tree(const CotreeNode& recipe) {
    CographBuilder builder;
    auto [root_port, vertices] = builder.build(recipe);
    CographWithTree out;
    out.graph = Graph(builder.num_vertices, std::move(builder.graph_edges));

    TernaryTree& t = out.tree;
    t.num_nodes = static_cast<int>(builder.vertex_of_node.size());
    t.branches = builder.tree_branches;
    t.vertex_of_leaf = builder.vertex_of_node;
    t.leaf_of_vertex.assign(builder.num_vertices, -1);
    for (int node = 0; node < t.num_nodes; ++node)
        if (t.vertex_of_leaf[node] >= 0) t.leaf_of_vertex[t.vertex_of_leaf[node]] = node;

    // The unrooted root port has degree 2 unless it is a leaf; splice it out.
    if (builder.num_vertices >= 2) {
        auto adj = t.node_adjacency();
        if (adj[root_port].size() == 2) {
            int a = adj[root_port][0], b = adj[root_port][1];
            std::vector<std::pair<int, int>> nb;
            for (auto [u, v] : t.branches)
                if (u != root_port && v != root_port) nb.emplace_back(u, v);
            nb.emplace_back(a, b);
            // compact node ids to drop the spliced node
            std::vector<int> remap(t.num_nodes, -1);
            int next = 0;
            for (int node = 0; node < t.num_nodes; ++node)
                if (node != root_port) remap[node] = next++;
            for (auto& [u, v] : nb) {
                u = remap[u];
                v = remap[v];
            }
            std::vector<int> new_vertex_of_leaf(next, -1);
            for (int node = 0; node < t.num_nodes; ++node)
                if (node != root_port) new_vertex_of_leaf[remap[node]] = t.vertex_of_leaf[node];
            t.num_nodes = next;
            t.branches = std::move(nb);
            t.vertex_of_leaf = std::move(new_vertex_of_leaf);
            for (int node = 0; node < t.num_nodes; ++node)
                if (t.vertex_of_leaf[node] >= 0) t.leaf_of_vertex[t.vertex_of_leaf[node]] = node;
        }
    }

    t.validate(out.graph.num_vertices());
    if (width(out.graph, t) > 1)
        throw InternalInvariantViolation("cograph tree has width > 1");
    return out;
}

CotreeNode random_cotree(int num_leaves, uint64_t seed) {
    if (num_leaves < 1) throw std::invalid_argument("random_cotree: need at least one leaf");
    Rng rng(seed);
    // Recursive random partition, alternating union/join levels at random.
    struct Builder {
        Rng& rng;
        CotreeNode make(int leaves, bool join_level) {
            if (leaves == 1) return CotreeNode::leaf();
            int left = 1 + static_cast<int>(rng.next_below(static_cast<uint64_t>(leaves - 1)));
            std::vector<CotreeNode> kids;
            kids.push_back(make(left, !join_level));
            kids.push_back(make(leaves - left, !join_level));
            return join_level ? CotreeNode::join(std::move(kids))
                              : CotreeNode::unite(std::move(kids));
        }
    } builder{rng};
    return builder.make(num_leaves, rng.next_bool(0.5));
}

Hypergraph pairs_hypergraph(int n) {
    if (n < 2) throw std::invalid_argument("pairs_hypergraph requires n >= 2");
    Hypergraph h;
    h.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) h.add_edge({i, j});
    return h;
}

}  // namespace ballvc
