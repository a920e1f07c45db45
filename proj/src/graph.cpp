#include "ballvc/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ballvc/rng.hpp"

namespace ballvc {

namespace {
uint64_t pack_edge(int n, int u, int v) {
    if (u > v) std::swap(u, v);
    return static_cast<uint64_t>(u) * static_cast<uint64_t>(n) + static_cast<uint64_t>(v);
}
}  // namespace

Graph::Graph(int n, std::vector<std::pair<int, int>> edge_list) : n_(n) {
    if (n < 0) throw std::invalid_argument("graph: negative vertex count");
    for (auto& [u, v] : edge_list) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("graph: edge endpoint out of range");
        if (u == v) throw std::invalid_argument("graph: self-loop");
        if (u > v) std::swap(u, v);
    }
    std::sort(edge_list.begin(), edge_list.end());
    edge_list.erase(std::unique(edge_list.begin(), edge_list.end()), edge_list.end());
    edges_ = std::move(edge_list);

    adj_.assign(n_, {});
    edge_index_.reserve(edges_.size() * 2);
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
        auto [u, v] = edges_[i];
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        edge_index_.emplace(pack_edge(n_, u, v), i);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Graph::has_edge(int u, int v) const { return edge_id(u, v) >= 0; }

int Graph::edge_id(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) return -1;
    auto it = edge_index_.find(pack_edge(n_, u, v));
    return it == edge_index_.end() ? -1 : it->second;
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("vertex id out of range");
}

uint64_t Graph::fingerprint() const {
    uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    mix(static_cast<uint64_t>(n_));
    for (auto [u, v] : edges_) {
        mix(static_cast<uint64_t>(u));
        mix(static_cast<uint64_t>(v));
    }
    return h;
}

EdgeOrder EdgeOrder::canonical(const Graph& g) {
    EdgeOrder ord;
    ord.rank.resize(g.num_edges());
    for (int i = 0; i < g.num_edges(); ++i) ord.rank[i] = i;
    return ord;
}

EdgeOrder EdgeOrder::shuffled(const Graph& g, uint64_t seed) {
    EdgeOrder ord = canonical(g);
    Rng rng(seed);
    // Fisher-Yates on the rank permutation.
    for (int i = g.num_edges() - 1; i > 0; --i) {
        int j = static_cast<int>(rng.next_below(static_cast<uint64_t>(i) + 1));
        std::swap(ord.rank[i], ord.rank[j]);
    }
    return ord;
}

bool is_simple_path(const Graph& g, const std::vector<int>& vertices) {
    if (vertices.empty()) return false;
    std::vector<int> seen = vertices;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
    for (size_t i = 0; i + 1 < vertices.size(); ++i)
        if (!g.has_edge(vertices[i], vertices[i + 1])) return false;
    return true;
}

std::vector<int> bfs_distances(const Graph& g, int source) {
    g.check_vertex(source);
    std::vector<int> dist(g.num_vertices(), kUnreachable);
    std::deque<int> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : g.neighbors(u)) {
            if (dist[v] == kUnreachable) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

std::vector<std::vector<int>> all_pairs_distances(const Graph& g) {
    std::vector<std::vector<int>> d;
    d.reserve(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) d.push_back(bfs_distances(g, v));
    return d;
}

std::vector<int> ball(const Graph& g, int x, int k) {
    g.check_vertex(x);
    if (k < 0) throw std::invalid_argument("ball: negative radius");
    std::vector<int> dist = bfs_distances(g, x);
    std::vector<int> members;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (is_reachable(dist[v]) && dist[v] <= k) members.push_back(v);
    return members;
}

int eccentricity(const Graph& g, int x) {
    std::vector<int> dist = bfs_distances(g, x);
    int ecc = 0;
    for (int d : dist)
        if (is_reachable(d)) ecc = std::max(ecc, d);
    return ecc;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(g.num_vertices(), 0);
    for (int s = 0; s < g.num_vertices(); ++s) {
        if (seen[s]) continue;
        std::vector<int> comp;
        std::deque<int> queue{s};
        seen[s] = 1;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            comp.push_back(u);
            for (int v : g.neighbors(u))
                if (!seen[v]) {
                    seen[v] = 1;
                    queue.push_back(v);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& s) {
    InducedSubgraph out;
    out.from_original.assign(g.num_vertices(), -1);
    out.to_original = s;
    std::sort(out.to_original.begin(), out.to_original.end());
    out.to_original.erase(std::unique(out.to_original.begin(), out.to_original.end()),
                          out.to_original.end());
    for (int i = 0; i < static_cast<int>(out.to_original.size()); ++i) {
        g.check_vertex(out.to_original[i]);
        out.from_original[out.to_original[i]] = i;
    }
    std::vector<std::pair<int, int>> kept;
    for (auto [u, v] : g.edges()) {
        int nu = out.from_original[u], nv = out.from_original[v];
        if (nu >= 0 && nv >= 0) kept.emplace_back(nu, nv);
    }
    out.graph = Graph(static_cast<int>(out.to_original.size()), std::move(kept));
    return out;
}

InducedSubgraph delete_vertices(const Graph& g, const std::vector<int>& removed) {
    std::vector<char> drop(g.num_vertices(), 0);
    for (int v : removed) {
        g.check_vertex(v);
        drop[v] = 1;
    }
    std::vector<int> keep;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!drop[v]) keep.push_back(v);
    return induced_subgraph(g, keep);
}

Graph read_graph(std::istream& in) {
    std::string line;
    int n = -1;
    long m = -1;
    std::vector<std::pair<int, int>> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        std::istringstream iss(line);
        std::string tag;
        iss >> tag;
        if (tag == "p") {
            if (n >= 0) throw std::invalid_argument("graph format: duplicate header");
            if (!(iss >> n >> m) || n < 0 || m < 0)
                throw std::invalid_argument("graph format: bad header at line " +
                                            std::to_string(lineno));
        } else if (tag == "e") {
            int u, v;
            if (n < 0) throw std::invalid_argument("graph format: edge before header");
            if (!(iss >> u >> v))
                throw std::invalid_argument("graph format: bad edge at line " +
                                            std::to_string(lineno));
            edges.emplace_back(u, v);
        } else {
            throw std::invalid_argument("graph format: unknown line tag '" + tag + "'");
        }
    }
    if (n < 0) throw std::invalid_argument("graph format: missing header");
    if (m >= 0 && m != static_cast<long>(edges.size()))
        throw std::invalid_argument("graph format: edge count mismatch");
    return Graph(n, std::move(edges));
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + path);
    return read_graph(in);
}

void write_graph(const Graph& g, std::ostream& out) {
    out << "p " << g.num_vertices() << " " << g.num_edges() << "\n";
    for (auto [u, v] : g.edges()) out << "e " << u << " " << v << "\n";
}

}  // namespace ballvc
