#include "ballvc/lexpath.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace ballvc {

LexPathTree::LexPathTree(const Graph& g, int target, const EdgeOrder& order) : target_(target) {
    g.check_vertex(target);
    dist_ = bfs_distances(g, target);
    succ_.assign(g.num_vertices(), -1);

    int max_d = 0;
    for (int d : dist_)
        if (is_reachable(d)) max_d = std::max(max_d, d);
    std::vector<std::vector<int>> layers(max_d + 1);
    for (int v = 0; v < g.num_vertices(); ++v)
        if (is_reachable(dist_[v])) layers[dist_[v]].push_back(v);

    // rank[v] orders the vertices of each BFS layer by the reversed edge
    // sequence of their canonical path. Layer k signatures are pairs
    // (rank of chosen successor, order of the connecting edge); comparing
    // signatures is equivalent to comparing whole reversed sequences because
    // ranks in layer k-1 already encode those prefixes.
    std::vector<int> rank(g.num_vertices(), -1);
    rank[target] = 0;
    for (int k = 1; k <= max_d; ++k) {
        std::vector<std::pair<std::pair<int, int>, int>> keyed;  // (signature, vertex)
        keyed.reserve(layers[k].size());
        for (int u : layers[k]) {
            std::pair<int, int> best{-1, -1};
            int best_succ = -1;
            for (int v : g.neighbors(u)) {
                if (dist_[v] != k - 1) continue;
                std::pair<int, int> sig{rank[v], order.rank[g.edge_id(u, v)]};
                if (best_succ == -1 || sig < best) {
                    best = sig;
                    best_succ = v;
                }
            }
            succ_[u] = best_succ;
            keyed.push_back({best, u});
        }
        std::sort(keyed.begin(), keyed.end());
        for (int i = 0; i < static_cast<int>(keyed.size()); ++i) rank[keyed[i].second] = i;
    }
}

Path LexPathTree::path_from(int u) const {
    if (u < 0 || u >= static_cast<int>(dist_.size()))
        throw std::invalid_argument("path_from: vertex id out of range");
    if (!reachable(u)) throw std::invalid_argument("path_from: vertex cannot reach target");
    Path p;
    for (int v = u; v != -1; v = succ_[v]) p.vertices.push_back(v);
    return p;
}

namespace {

char classify_cross(const LexPathTree& tree, const Graph& g, int u1, int v1, int u2, int v2) {
    bool collapsed1 = (u1 == v1);
    bool collapsed2 = (u2 == v2);
    if (!collapsed1 && !collapsed2) return 'a';
    // Normalize so side 2 is the collapsed one (the lemma allows exchanging
    // the two paths).
    if (collapsed1) {
        std::swap(u1, u2);
        std::swap(v1, v2);
    }
    if (g.has_edge(u1, v1)) return 'c';
    if (tree.successor(v2) == v1) return 'd';
    return 'b';
}

}  // namespace

std::vector<Cross> find_crosses(const Graph& g, int x1, int x2, int z, const EdgeOrder& order) {
    g.check_vertex(x1);
    g.check_vertex(x2);
    g.check_vertex(z);
    if (x1 == x2) throw std::invalid_argument("find_crosses: x1 == x2");
    LexPathTree tree(g, z, order);
    if (!tree.reachable(x1) || !tree.reachable(x2))
        throw std::invalid_argument("find_crosses: endpoint cannot reach z");

    Path p1 = tree.path_from(x1);
    Path p2 = tree.path_from(x2);
    std::vector<int> pos1(g.num_vertices(), -1), pos2(g.num_vertices(), -1);
    for (int i = 0; i < static_cast<int>(p1.vertices.size()); ++i) pos1[p1.vertices[i]] = i;
    for (int i = 0; i < static_cast<int>(p2.vertices.size()); ++i) pos2[p2.vertices[i]] = i;

    // An edge with an endpoint on each path is a chord candidate; an edge that
    // lies entirely inside the shared suffix of the two paths only witnesses
    // that they already merged and is skipped.
    struct Chord {
        int a;  // endpoint playing the path-1 role
        int b;  // endpoint playing the path-2 role
        int edge;
    };
    std::vector<Chord> chords;
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [p, q] = g.edges()[e];
        bool shared_p = pos1[p] >= 0 && pos2[p] >= 0;
        bool shared_q = pos1[q] >= 0 && pos2[q] >= 0;
        if (shared_p && shared_q) continue;
        if (pos1[p] >= 0 && pos2[q] >= 0) chords.push_back({p, q, e});
        if (pos1[q] >= 0 && pos2[p] >= 0) chords.push_back({q, p, e});
    }

    std::vector<Cross> out;
    for (const Chord& first : chords) {    // plays (u1, v2)
        for (const Chord& second : chords) {  // plays (v1, u2)
            if (first.edge == second.edge) continue;
            int u1 = first.a, v2 = first.b;
            int v1 = second.a, u2 = second.b;
            if (pos1[u1] > pos1[v1]) continue;
            if (pos2[u2] > pos2[v2]) continue;
            // Slot coincidences across the two paths only occur where the
            // paths meet; they are merge artifacts, not crosses.
            if (u1 == u2 || v1 == v2) continue;
            Cross c{x1, x2, z, u1, v1, u2, v2, classify_cross(tree, g, u1, v1, u2, v2)};
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace ballvc
