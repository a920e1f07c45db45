#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ballvc {

// Distance sentinel for unreachable vertices. Never used in arithmetic;
// compare with is_reachable() / operator<=.
constexpr int kUnreachable = std::numeric_limits<int>::max();

inline bool is_reachable(int d) { return d != kUnreachable; }

// Simple undirected graph with 0-based vertex ids and a canonical edge list
// sorted by (min endpoint, max endpoint). Immutable after construction.
class Graph {
  public:
    Graph() = default;
    // Throws std::invalid_argument on self-loops or out-of-range endpoints.
    // Parallel edges are collapsed.
    Graph(int n, std::vector<std::pair<int, int>> edge_list);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    bool has_edge(int u, int v) const;
    // Index of edge {u,v} in the canonical edge list, or -1.
    int edge_id(int u, int v) const;

    void check_vertex(int v) const;  // throws std::invalid_argument

    // FNV-1a hash of (n, canonical edge list); stable across runs.
    uint64_t fingerprint() const;

  private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    std::unordered_map<uint64_t, int> edge_index_;
};

// Total order on the edges of a fixed graph: rank[edge id] = position.
// The canonical order is the (min endpoint, max endpoint) sort the Graph
// already stores, so rank[i] = i.
struct EdgeOrder {
    std::vector<int> rank;

    static EdgeOrder canonical(const Graph& g);
    static EdgeOrder shuffled(const Graph& g, uint64_t seed);
};

// A simple path as its vertex sequence. length() counts edges.
struct Path {
    std::vector<int> vertices;

    int length() const { return static_cast<int>(vertices.size()) - 1; }
    bool empty() const { return vertices.empty(); }
    int source() const { return vertices.front(); }
    int target() const { return vertices.back(); }
};

// True when `vertices` is a path of g: consecutive adjacency and no repeats.
bool is_simple_path(const Graph& g, const std::vector<int>& vertices);

// BFS hop distances from source; kUnreachable where no path exists.
std::vector<int> bfs_distances(const Graph& g, int source);

// All-sources convenience: result[u][v] = d(u,v).
std::vector<std::vector<int>> all_pairs_distances(const Graph& g);

// B(x,k): sorted vertex set at distance <= k from x. Always contains x.
std::vector<int> ball(const Graph& g, int x, int k);

int eccentricity(const Graph& g, int x);  // max finite distance from x

std::vector<std::vector<int>> connected_components(const Graph& g);

struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_original;    // new id -> original id
    std::vector<int> from_original;  // original id -> new id, or -1
};

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& s);

// Deletes the given vertices and returns the induced graph on the rest.
InducedSubgraph delete_vertices(const Graph& g, const std::vector<int>& removed);

// Text format: `p <n> <m>` header then `e <u> <v>` lines, 0-based.
// Blank lines and `#` comments are ignored. The writer emits edges in
// canonical order so output is reproducible.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(const Graph& g, std::ostream& out);

}  // namespace ballvc
