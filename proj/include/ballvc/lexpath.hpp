#pragma once

#include <vector>

#include "ballvc/graph.hpp"

namespace ballvc {

// Successor structure of the canonical minimum paths toward one target:
// for every vertex u reachable from the target, following succ[] yields the
// shortest u->target path that is lexicographically minimum when its edge
// sequence is compared from the target end backwards. Canonical paths to a
// common target form a tree, so any two of them coincide once they meet
// (the suffix property).
class LexPathTree {
  public:
    LexPathTree(const Graph& g, int target, const EdgeOrder& order);

    int target() const { return target_; }
    int distance(int u) const { return dist_[u]; }
    bool reachable(int u) const { return is_reachable(dist_[u]); }
    int successor(int u) const { return succ_[u]; }  // -1 at target / unreachable

    // The canonical u->target path. Throws std::invalid_argument if u cannot
    // reach the target.
    Path path_from(int u) const;

  private:
    int target_;
    std::vector<int> dist_;
    std::vector<int> succ_;
};

inline LexPathTree lex_min_path_tree(const Graph& g, int target, const EdgeOrder& order) {
    return LexPathTree(g, target, order);
}

// A cross between the canonical x1->z and x2->z paths: two distinct edges
// {u1,v2} and {v1,u2} with u1,v1 on the first path (u1 not after v1), u2,v2
// on the second (u2 not after v2). Type tags follow the four shapes:
//   a: u1 != v1 and u2 != v2 on both sides (a "real" cross)
//   b: one side collapsed (u == v) but neither the c nor the d condition holds
//   c: one side collapsed and the other side's u,v are adjacent
//   d: one side collapsed and the collapsed vertex's canonical path continues
//      through the other side's v
// The structural lemma this module tests says only c and d ever occur.
struct Cross {
    int x1, x2, z;
    int u1, v1;  // on the x1->z path, u1 not after v1
    int u2, v2;  // on the x2->z path, u2 not after v2
    char type;   // 'a', 'b', 'c' or 'd'
};

// Enumerates all crosses between the canonical x1->z and x2->z paths.
// Pairs that merely witness the two paths merging are not crosses and are
// skipped: edges lying inside the shared suffix, and edge pairs whose u or v
// slots coincide across the two paths.
std::vector<Cross> find_crosses(const Graph& g, int x1, int x2, int z, const EdgeOrder& order);

}  // namespace ballvc
