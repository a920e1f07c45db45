#include "ballvc/structural.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <stdexcept>

#include "ballvc/errors.hpp"
#include "ballvc/rng.hpp"

namespace ballvc {

// ---------------------------------------------------------------------------
// Sparsity / localization
// ---------------------------------------------------------------------------

SparsityReport sparsity_check(const Graph& g, int ell, const std::vector<int>& centers, int q) {
    if (ell < 0 || q < 0) throw std::invalid_argument("sparsity_check: bad parameters");
    std::vector<int> count(g.num_vertices(), 0);
    for (int c : centers) {
        g.check_vertex(c);
        std::vector<int> dist = bfs_distances(g, c);
        for (int v = 0; v < g.num_vertices(); ++v)
            if (is_reachable(dist[v]) && dist[v] <= ell) ++count[v];
    }
    SparsityReport out;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (count[v] > q) {
            out.ok = false;
            out.violating_vertex = v;
            out.count = count[v];
            return out;
        }
    return out;
}

namespace {

int localized_upper(int ell, int d) { return 2 * ell - (1 << (d + 2)) - 3; }

void require_window(int ell, int d) {
    if (localized_upper(ell, d) < ell + 1)
        throw std::invalid_argument(
            "localized window is empty: 2*ell - 2^(d+2) - 3 < ell + 1 for ell=" +
            std::to_string(ell) + ", d=" + std::to_string(d));
}

LocalizedReport window_violation(int u, int v, int dist, const std::string& reason) {
    LocalizedReport r;
    r.ok = false;
    r.violating_pair = {u, v};
    r.distance = dist;
    r.reason = reason;
    return r;
}

}  // namespace

LocalizedReport localized_check_set(const Graph& g, int ell, int d, const std::vector<int>& x) {
    require_window(ell, d);
    int upper = localized_upper(ell, d);
    for (size_t i = 0; i < x.size(); ++i) {
        std::vector<int> dist = bfs_distances(g, x[i]);
        for (size_t j = i + 1; j < x.size(); ++j) {
            int dv = dist[x[j]];
            if (!is_reachable(dv)) return window_violation(x[i], x[j], -1, "unreachable");
            if (dv <= ell) return window_violation(x[i], x[j], dv, "too close");
            if (dv > upper) return window_violation(x[i], x[j], dv, "too far");
        }
    }
    return {};
}

LocalizedReport localized_check_pair(const Graph& g, int ell, int d, const std::vector<int>& a,
                                     const std::vector<int>& b) {
    require_window(ell, d);
    int upper = localized_upper(ell, d);
    std::vector<int> all = a;
    all.insert(all.end(), b.begin(), b.end());
    std::vector<char> is_a(all.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) is_a[i] = 1;
    for (size_t i = 0; i < all.size(); ++i) {
        std::vector<int> dist = bfs_distances(g, all[i]);
        for (size_t j = i + 1; j < all.size(); ++j) {
            int dv = dist[all[j]];
            bool cross = is_a[i] != is_a[j];
            if (!is_reachable(dv)) {
                if (cross) return window_violation(all[i], all[j], -1, "unreachable");
                continue;  // within-side pairs only need the lower bound
            }
            if (dv <= ell) return window_violation(all[i], all[j], dv, "too close");
            if (cross && dv > upper) return window_violation(all[i], all[j], dv, "too far");
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Colorings and Ramsey extraction
// ---------------------------------------------------------------------------

EdgeColoring distance_coloring(const Graph& g, const std::vector<int>& x, int ell, int d) {
    if (ell < 0 || d < 0) throw std::invalid_argument("distance_coloring: bad parameters");
    int D = (1 << (d + 2)) + 2;
    EdgeColoring out;
    out.num_colors = D + 4;
    out.labels = x;
    int m = static_cast<int>(x.size());
    out.color.assign(m, std::vector<int>(m, -1));
    for (int i = 0; i < m; ++i) {
        g.check_vertex(x[i]);
        std::vector<int> dist = bfs_distances(g, x[i]);
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            int dv = dist[x[j]];
            int color;
            if (is_reachable(dv) && dv <= 2 * ell && 2 * ell - dv <= D && 2 * ell - dv >= 0)
                color = 2 * ell - dv;
            else if (is_reachable(dv) && dv <= ell)
                color = D + 1;
            else if (!is_reachable(dv) || dv > 2 * ell)
                color = D + 2;
            else
                color = D + 3;
            out.color[i][j] = color;
        }
    }
    return out;
}

namespace {

bool grow_clique(const std::vector<std::vector<char>>& adj, std::vector<int>& clique,
                 std::vector<int>& candidates, int target) {
    if (static_cast<int>(clique.size()) == target) return true;
    if (static_cast<int>(clique.size() + candidates.size()) < target) return false;
    for (size_t idx = 0; idx < candidates.size(); ++idx) {
        int v = candidates[idx];
        std::vector<int> next;
        for (size_t j = idx + 1; j < candidates.size(); ++j)
            if (adj[v][candidates[j]]) next.push_back(candidates[j]);
        clique.push_back(v);
        if (grow_clique(adj, clique, next, target)) return true;
        clique.pop_back();
    }
    return false;
}

}  // namespace

RamseyResult ramseyextract_impl(const EdgeColoring& coloring, int target) {
    RamseyResult out;
    int m = coloring.size();
    if (target < 2) throw std::invalid_argument("ramsey_extract: target must be >= 2");
    for (int c = 0; c < coloring.num_colors; ++c) {
        std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
        bool any = false;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (i != j && coloring.color[i][j] == c) {
                    adj[i][j] = 1;
                    any = true;
                }
        if (!any) continue;
        std::vector<int> clique, candidates(m);
        for (int i = 0; i < m; ++i) candidates[i] = i;
        if (grow_clique(adj, clique, candidates, target)) {
            for (int i : clique)
                for (int j : clique)
                    if (i != j && coloring.color[i][j] != c)
                        throw InternalInvariantViolation("ramsey clique is not monochromatic");
            out.found = true;
            out.color = c;
            for (int i : clique) out.clique.push_back(coloring.labels[i]);
            std::sort(out.clique.begin(), out.clique.end());
            return out;
        }
    }
    return out;
}

RamseyResult ramsey_extract(const EdgeColoring& coloring, int target) {
    return ramseyextract_impl(coloring, target);
}

// ---------------------------------------------------------------------------
// Interference matrices
// ---------------------------------------------------------------------------

int InterferenceMatrix::max_entry_size() const {
    size_t k = 0;
    for (const auto& row : entries)
        for (const auto& e : row) k = std::max(k, e.size());
    return static_cast<int>(k);
}

bool InterferenceMatrix::is_proper() const { return max_entry_size() == 0; }

InterferenceMatrix InterferenceMatrix::submatrix(const std::vector<int>& row_idx,
                                                 const std::vector<int>& col_idx) const {
    InterferenceMatrix out;
    std::set<int> kept;
    for (int i : row_idx) {
        out.row_labels.push_back(row_labels[i]);
        kept.insert(row_labels[i]);
    }
    for (int j : col_idx) {
        out.col_labels.push_back(col_labels[j]);
        kept.insert(col_labels[j]);
    }
    for (int i : row_idx) {
        std::vector<std::vector<int>> row;
        for (int j : col_idx) {
            std::vector<int> entry;
            for (int label : entries[i][j])
                if (kept.count(label)) entry.push_back(label);
            row.push_back(std::move(entry));
        }
        out.entries.push_back(std::move(row));
    }
    return out;
}

namespace {

struct SubmatrixSearch {
    const InterferenceMatrix& m;
    int n;
    std::vector<int> rows, cols;
    std::set<int> labels;
    long nodes = 0;
    static constexpr long kNodeBudget = 50'000'000;

    explicit SubmatrixSearch(const InterferenceMatrix& m_, int n_) : m(m_), n(n_) {}

    bool entry_clear_with(int r, int c, int extra_label) const {
        for (int label : m.entries[r][c])
            if (labels.count(label) || label == extra_label) return false;
        return true;
    }

    bool label_absent_from_chosen(int x) const {
        for (int r : rows)
            for (int c : cols)
                for (int label : m.entries[r][c])
                    if (label == x) return false;
        return true;
    }

    bool extend() {
        if (static_cast<int>(rows.size()) == n && static_cast<int>(cols.size()) == n) return true;
        if (++nodes > kNodeBudget)
            throw SolverCapExceeded("proper_submatrix exceeded its node budget");
        // Alternate row/column additions so every new element is constrained
        // against the existing selection immediately.
        bool add_row = rows.size() <= cols.size() && static_cast<int>(rows.size()) < n;
        if (!add_row && static_cast<int>(cols.size()) >= n) add_row = true;
        if (add_row) {
            int from = rows.empty() ? 0 : rows.back() + 1;
            for (int r = from; r < static_cast<int>(m.row_labels.size()); ++r) {
                int x = m.row_labels[r];
                if (!label_absent_from_chosen(x)) continue;
                bool ok = true;
                for (int c : cols)
                    if (!entry_clear_with(r, c, x)) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                rows.push_back(r);
                labels.insert(x);
                if (extend()) return true;
                labels.erase(x);
                rows.pop_back();
            }
        } else {
            int from = cols.empty() ? 0 : cols.back() + 1;
            for (int c = from; c < static_cast<int>(m.col_labels.size()); ++c) {
                int x = m.col_labels[c];
                if (!label_absent_from_chosen(x)) continue;
                bool ok = true;
                for (int r : rows)
                    if (!entry_clear_with(r, c, x)) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                cols.push_back(c);
                labels.insert(x);
                if (extend()) return true;
                labels.erase(x);
                cols.pop_back();
            }
        }
        return false;
    }
};

bool submatrix_is_proper(const InterferenceMatrix& m, const std::vector<int>& rows,
                         const std::vector<int>& cols) {
    return m.submatrix(rows, cols).is_proper();
}

}  // namespace

ProperSubmatrixResult proper_submatrix(const InterferenceMatrix& m, int n, bool exact,
                                       uint64_t seed, int retry_budget) {
    if (n < 1) throw std::invalid_argument("proper_submatrix: n must be >= 1");
    ProperSubmatrixResult out;
    if (n > static_cast<int>(m.row_labels.size()) || n > static_cast<int>(m.col_labels.size()))
        return out;  // definitively none
    if (exact) {
        SubmatrixSearch search(m, n);
        if (search.extend()) {
            if (!submatrix_is_proper(m, search.rows, search.cols))
                throw InternalInvariantViolation("proper_submatrix returned a non-proper result");
            out.status = SubmatrixStatus::found;
            out.row_idx = search.rows;
            out.col_idx = search.cols;
        }
        return out;
    }
    // Randomized mode per the counting argument: a uniform selection avoids
    // all bad triples with constant probability at the lemma's sizes.
    Rng rng(seed);
    int nr = static_cast<int>(m.row_labels.size());
    int nc = static_cast<int>(m.col_labels.size());
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        std::vector<int> rows(nr), cols(nc);
        for (int i = 0; i < nr; ++i) rows[i] = i;
        for (int j = 0; j < nc; ++j) cols[j] = j;
        for (int i = nr - 1; i > 0; --i)
            std::swap(rows[i], rows[rng.next_below(static_cast<uint64_t>(i) + 1)]);
        for (int j = nc - 1; j > 0; --j)
            std::swap(cols[j], cols[rng.next_below(static_cast<uint64_t>(j) + 1)]);
        rows.resize(n);
        cols.resize(n);
        std::sort(rows.begin(), rows.end());
        std::sort(cols.begin(), cols.end());
        if (submatrix_is_proper(m, rows, cols)) {
            out.status = SubmatrixStatus::found;
            out.row_idx = rows;
            out.col_idx = cols;
            return out;
        }
    }
    out.status = SubmatrixStatus::inconclusive;
    return out;
}

// ---------------------------------------------------------------------------
// Pair contexts
// ---------------------------------------------------------------------------

bool PairContext::on_path(int ai, int bi, int v) const {
    const Path& p = path(ai, bi);
    return std::find(p.vertices.begin(), p.vertices.end(), v) != p.vertices.end();
}

PairContext build_pair_context(const Graph& g, const std::vector<int>& a_set,
                               const std::vector<int>& b_set, int ell, int d,
                               const EdgeOrder& order) {
    if (a_set.empty() || b_set.empty())
        throw std::invalid_argument("pair context: empty terminal set");
    if (ell < 4) throw std::invalid_argument("pair context: ell must be at least 4");
    {
        std::set<int> seen;
        for (int v : a_set) {
            g.check_vertex(v);
            if (!seen.insert(v).second) throw std::invalid_argument("pair context: repeated vertex");
        }
        for (int v : b_set) {
            g.check_vertex(v);
            if (!seen.insert(v).second)
                throw std::invalid_argument("pair context: A and B are not disjoint");
        }
    }

    PairContext ctx;
    ctx.graph = g;
    ctx.a_set = a_set;
    ctx.b_set = b_set;
    ctx.ell = ell;
    ctx.d = d;
    ctx.order = order;

    int na = ctx.num_a(), nb = ctx.num_b();
    ctx.paths.resize(na * nb);
    ctx.critical_ab.assign(na * nb, -1);
    ctx.precritical_ab.assign(na * nb, -1);
    ctx.critical_ba.assign(na * nb, -1);

    std::set<int> restricted_vertices;
    for (int bi = 0; bi < nb; ++bi) {
        LexPathTree tree(g, b_set[bi], order);
        for (int ai = 0; ai < na; ++ai) {
            if (!tree.reachable(a_set[ai]))
                throw std::invalid_argument("pair context: pair (" + std::to_string(a_set[ai]) +
                                            "," + std::to_string(b_set[bi]) + ") is disconnected");
            Path p = tree.path_from(a_set[ai]);
            int len = p.length();
            if (len <= ell || len > 2 * ell - 7)
                throw std::invalid_argument(
                    "pair context: pair (" + std::to_string(a_set[ai]) + "," +
                    std::to_string(b_set[bi]) + ") at distance " + std::to_string(len) +
                    " outside (ell, 2*ell-7]");
            int pi = ctx.pair_index(ai, bi);
            ctx.critical_ab[pi] = p.vertices[ell - 3];
            ctx.precritical_ab[pi] = p.vertices[ell - 4];
            ctx.critical_ba[pi] = p.vertices[len - (ell - 3)];
            for (int v : p.vertices) restricted_vertices.insert(v);
            ctx.paths[pi] = std::move(p);
        }
    }

    ctx.rs_a.assign(na, Bitset(g.num_vertices()));
    ctx.rs_b.assign(nb, Bitset(g.num_vertices()));
    ctx.critical_vertices = Bitset(g.num_vertices());
    for (int ai = 0; ai < na; ++ai)
        for (int bi = 0; bi < nb; ++bi) {
            int pi = ctx.pair_index(ai, bi);
            const Path& p = ctx.paths[pi];
            for (int pos = 0; pos <= ell - 3; ++pos) ctx.rs_a[ai].set(p.vertices[pos]);
            for (int pos = p.length() - (ell - 3); pos <= p.length(); ++pos)
                ctx.rs_b[bi].set(p.vertices[pos]);
            ctx.critical_vertices.set(ctx.critical_ab[pi]);
            ctx.critical_vertices.set(ctx.precritical_ab[pi]);
            ctx.critical_vertices.set(ctx.critical_ba[pi]);
        }

    ctx.restricted = induced_subgraph(
        g, std::vector<int>(restricted_vertices.begin(), restricted_vertices.end()));
    return ctx;
}

IndependenceReport independence_check(const PairContext& ctx) {
    IndependenceReport out;
    std::set<int> terminals(ctx.a_set.begin(), ctx.a_set.end());
    terminals.insert(ctx.b_set.begin(), ctx.b_set.end());
    for (int ai = 0; ai < ctx.num_a(); ++ai)
        for (int bi = 0; bi < ctx.num_b(); ++bi) {
            int pi = ctx.pair_index(ai, bi);
            for (int c : {ctx.critical_ab[pi], ctx.critical_ba[pi]}) {
                std::vector<int> dist = bfs_distances(ctx.graph, c);
                std::vector<int> tr;
                for (int t : terminals)
                    if (is_reachable(dist[t]) && dist[t] <= ctx.ell) tr.push_back(t);
                std::vector<int> expected{ctx.a_set[ai], ctx.b_set[bi]};
                std::sort(expected.begin(), expected.end());
                if (tr != expected) {
                    out.independent = false;
                    out.violating_pair = {ai, bi};
                    out.offending_trace = tr;
                    return out;
                }
            }
        }
    return out;
}

namespace {

// Minimum restricted-graph distance between two original-id vertex sets.
int set_distance(const InducedSubgraph& sub, const Bitset& from, const Bitset& to) {
    const Graph& g = sub.graph;
    std::vector<int> dist(g.num_vertices(), kUnreachable);
    std::deque<int> queue;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (from.test(sub.to_original[v])) {
            dist[v] = 0;
            queue.push_back(v);
        }
    int best = kUnreachable;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (to.test(sub.to_original[u])) {
            best = std::min(best, dist[u]);
            continue;
        }
        for (int w : g.neighbors(u))
            if (dist[w] == kUnreachable) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
    }
    return best;
}

}  // namespace

ContextAudit audit_context(const PairContext& ctx) {
    ContextAudit out;
    int na = ctx.num_a(), nb = ctx.num_b();

    for (int ai = 0; ai < na; ++ai)
        for (int bi = 0; bi < nb; ++bi) {
            int pi = ctx.pair_index(ai, bi);
            if (!ctx.rs_b[bi].test(ctx.critical_ab[pi]) ||
                !ctx.rs_b[bi].test(ctx.precritical_ab[pi]))
                out.criticals_in_rs_b = false;
        }

    for (int ai = 0; ai < na; ++ai)
        for (int b1 = 0; b1 < nb; ++b1)
            for (int b2 = b1 + 1; b2 < nb; ++b2) {
                int p1 = ctx.pair_index(ai, b1), p2 = ctx.pair_index(ai, b2);
                if (ctx.critical_ab[p1] == ctx.critical_ab[p2] ||
                    ctx.precritical_ab[p1] == ctx.precritical_ab[p2])
                    out.criticals_distinct = false;
            }

    // Edges of the aB-paths leaving RS(a) must form an induced matching.
    for (int ai = 0; ai < na; ++ai) {
        std::vector<std::pair<int, int>> leaving;
        for (int bi = 0; bi < nb; ++bi) {
            const Path& p = ctx.path(ai, bi);
            for (int pos = 0; pos < p.length(); ++pos) {
                int x = p.vertices[pos], y = p.vertices[pos + 1];
                if (ctx.rs_a[ai].test(x) && !ctx.rs_a[ai].test(y)) leaving.emplace_back(x, y);
            }
        }
        std::sort(leaving.begin(), leaving.end());
        leaving.erase(std::unique(leaving.begin(), leaving.end()), leaving.end());
        for (size_t i = 0; i < leaving.size() && out.leaving_edges_induced_matching; ++i)
            for (size_t j = i + 1; j < leaving.size(); ++j) {
                auto [x1, y1] = leaving[i];
                auto [x2, y2] = leaving[j];
                if (x1 == x2 || x1 == y2 || y1 == x2 || y1 == y2) {
                    out.leaving_edges_induced_matching = false;
                    break;
                }
                int cross = ctx.graph.has_edge(x1, x2) + ctx.graph.has_edge(x1, y2) +
                            ctx.graph.has_edge(y1, x2) + ctx.graph.has_edge(y1, y2);
                if (cross > 0) {
                    out.leaving_edges_induced_matching = false;
                    break;
                }
            }
    }

    for (int v : ctx.restricted.to_original) {
        bool covered = false;
        for (int ai = 0; ai < na && !covered; ++ai) covered = ctx.rs_a[ai].test(v);
        for (int bi = 0; bi < nb && !covered; ++bi) covered = ctx.rs_b[bi].test(v);
        if (!covered) out.all_vertices_in_root_sections = false;
    }

    auto min_pair_distance = [&](const std::vector<Bitset>& sections) {
        int best = -1;
        for (size_t i = 0; i < sections.size(); ++i)
            for (size_t j = i + 1; j < sections.size(); ++j) {
                int dv = set_distance(ctx.restricted, sections[i], sections[j]);
                if (best < 0 || dv < best) best = dv;
            }
        return best;
    };
    out.min_rs_distance_a = min_pair_distance(ctx.rs_a);
    out.min_rs_distance_b = min_pair_distance(ctx.rs_b);
    return out;
}

// ---------------------------------------------------------------------------
// Escapes
// ---------------------------------------------------------------------------

namespace {

// For each original vertex, the list of (ai, bi) pairs whose path contains it.
std::vector<std::vector<std::pair<int, int>>> path_membership(const PairContext& ctx) {
    std::vector<std::vector<std::pair<int, int>>> hits(ctx.graph.num_vertices());
    for (int ai = 0; ai < ctx.num_a(); ++ai)
        for (int bi = 0; bi < ctx.num_b(); ++bi)
            for (int v : ctx.path(ai, bi).vertices) hits[v].emplace_back(ai, bi);
    return hits;
}

bool digraph_acyclic(int n, const std::vector<std::pair<int, int>>& arcs) {
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : arcs) adj[u].push_back(v);
    std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
    std::vector<std::pair<int, int>> stack;
    for (int s = 0; s < n; ++s) {
        if (state[s] != 0) continue;
        stack.push_back({s, 0});
        state[s] = 1;
        while (!stack.empty()) {
            auto& [u, next] = stack.back();
            if (next < static_cast<int>(adj[u].size())) {
                int w = adj[u][next++];
                if (state[w] == 1) return false;
                if (state[w] == 0) {
                    state[w] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                state[u] = 2;
                stack.pop_back();
            }
        }
    }
    return true;
}

bool transitive_tournament(int n, const std::vector<std::pair<int, int>>& arcs) {
    std::vector<std::vector<char>> has(n, std::vector<char>(n, 0));
    for (auto [u, v] : arcs) has[u][v] = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (has[i][j] + has[j][i] != 1) return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (has[i][j] && has[j][k] && !has[i][k]) return false;
    return true;
}

}  // namespace

EscapeAnalysis escape_analysis(const PairContext& ctx) {
    EscapeAnalysis out;
    int na = ctx.num_a(), nb = ctx.num_b();
    auto hits = path_membership(ctx);

    // Per-a set of path edge ids (edges of P_{a,b} over all b).
    std::vector<std::set<int>> path_edges(na);
    for (int ai = 0; ai < na; ++ai)
        for (int bi = 0; bi < nb; ++bi) {
            const Path& p = ctx.path(ai, bi);
            for (int pos = 0; pos < p.length(); ++pos)
                path_edges[ai].insert(ctx.graph.edge_id(p.vertices[pos], p.vertices[pos + 1]));
        }

    Bitset rs_any(ctx.graph.num_vertices());
    for (const Bitset& rs : ctx.rs_a) rs_any |= rs;

    // Origin root sections: a vertex outside RS(A) with a neighbor in RS(a)
    // has origin a; more than one origin contradicts the distance-4 spacing
    // of root sections.
    out.origin_root_section.assign(ctx.graph.num_vertices(), -1);
    for (int local = 0; local < ctx.restricted.graph.num_vertices(); ++local) {
        int v = ctx.restricted.to_original[local];
        if (rs_any.test(v)) continue;
        for (int wl : ctx.restricted.graph.neighbors(local)) {
            int w = ctx.restricted.to_original[wl];
            for (int ai = 0; ai < na; ++ai) {
                if (!ctx.rs_a[ai].test(w)) continue;
                if (out.origin_root_section[v] == -1)
                    out.origin_root_section[v] = ai;
                else if (out.origin_root_section[v] != ai)
                    throw InternalInvariantViolation(
                        "vertex " + std::to_string(v) + " has two origin root sections");
            }
        }
    }

    for (auto [ul, vl] : ctx.restricted.graph.edges()) {
        int u = ctx.restricted.to_original[ul];
        int v = ctx.restricted.to_original[vl];
        for (int ai = 0; ai < na; ++ai) {
            bool u_in = ctx.rs_a[ai].test(u), v_in = ctx.rs_a[ai].test(v);
            if (u_in == v_in) continue;
            int begin = u_in ? u : v;
            int end = u_in ? v : u;
            if (path_edges[ai].count(ctx.graph.edge_id(u, v))) continue;  // a path edge of a

            // Attribution: the end lies on some P_{a',b} with a' != a, and b
            // must also carry the begin vertex on P_{a,b}.
            std::set<int> begin_bs;
            for (auto [ai2, bi2] : hits[begin])
                if (ai2 == ai) begin_bs.insert(bi2);
            bool emitted = false;
            std::set<std::array<int, 3>> seen_arcs;
            for (auto [ai2, bi2] : hits[end]) {
                if (ai2 == ai) continue;
                if (!begin_bs.count(bi2))
                    throw InternalInvariantViolation(
                        "escape attribution mismatch at edge (" + std::to_string(begin) + "," +
                        std::to_string(end) + ")");
                if (!seen_arcs.insert({ai, ai2, bi2}).second) continue;
                EscapeArc arc;
                arc.from_a = ai;
                arc.to_a = ai2;
                arc.b = bi2;
                arc.u = begin;
                arc.v = end;
                arc.deep = !ctx.critical_vertices.test(begin);
                out.arcs.push_back(arc);
                emitted = true;
            }
            if (!emitted)
                throw InternalInvariantViolation("escape with no attribution at edge (" +
                                                 std::to_string(begin) + "," +
                                                 std::to_string(end) + ")");
        }
    }

    out.acyclic_per_b.assign(nb, 1);
    out.escape_property_per_b.assign(nb, 1);
    for (int bi = 0; bi < nb; ++bi) {
        std::vector<std::pair<int, int>> full, deep;
        for (const EscapeArc& arc : out.arcs) {
            if (arc.b != bi) continue;
            full.emplace_back(arc.from_a, arc.to_a);
            if (arc.deep) deep.emplace_back(arc.from_a, arc.to_a);
        }
        std::sort(full.begin(), full.end());
        full.erase(std::unique(full.begin(), full.end()), full.end());
        std::sort(deep.begin(), deep.end());
        deep.erase(std::unique(deep.begin(), deep.end()), deep.end());
        out.acyclic_per_b[bi] = digraph_acyclic(na, full) ? 1 : 0;
        out.escape_property_per_b[bi] = transitive_tournament(na, deep) ? 1 : 0;
        out.acyclic = out.acyclic && out.acyclic_per_b[bi];
        out.escape_property = out.escape_property && out.escape_property_per_b[bi];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Jump paths
// ---------------------------------------------------------------------------

JumpPaths jump_paths(const PairContext& ctx, const EscapeAnalysis& esc, int bi) {
    int na = ctx.num_a();
    if (bi < 0 || bi >= ctx.num_b()) throw std::invalid_argument("jump_paths: bad b index");
    if (!esc.escape_property_per_b[bi])
        throw std::invalid_argument("jump_paths requires the escape property for this b");

    JumpPaths out;
    out.b = bi;
    out.jump_path.resize(na);
    out.incoming_vertex.assign(na, -1);
    out.rerouting_edge.assign(na, {-1, -1});
    out.free_section.resize(na);
    out.simple.assign(na, 1);

    // Order inherited from b: the deep escape digraph is a transitive
    // tournament, so sorting by out-degree (descending) linearizes it.
    std::vector<int> outdeg(na, 0);
    {
        std::set<std::pair<int, int>> deep;
        for (const EscapeArc& arc : esc.arcs)
            if (arc.b == bi && arc.deep) deep.insert({arc.from_a, arc.to_a});
        for (auto [u, v] : deep) ++outdeg[u];
    }
    out.order.resize(na);
    for (int i = 0; i < na; ++i) out.order[i] = i;
    std::sort(out.order.begin(), out.order.end(), [&](int x, int y) {
        if (outdeg[x] != outdeg[y]) return outdeg[x] > outdeg[y];
        return x < y;
    });
    std::vector<int> rank(na);
    for (int i = 0; i < na; ++i) rank[out.order[i]] = i;

    for (int pos = 0; pos < na; ++pos) {
        int ai = out.order[pos];
        const Path& p = ctx.path(ai, bi);

        // Incoming vertex: first vertex of P_{a_i b} that ends an escape to
        // a_i for b.
        std::set<int> escape_ends;  // v -> exists escape (*, ai, bi) ending at v
        std::map<int, std::vector<int>> begins_at;  // v -> candidate begins u
        for (const EscapeArc& arc : esc.arcs)
            if (arc.b == bi && arc.to_a == ai) {
                escape_ends.insert(arc.v);
                begins_at[arc.v].push_back(arc.u);
            }
        int vi = -1;
        for (int v : p.vertices)
            if (escape_ends.count(v)) {
                vi = v;
                break;
            }

        if (pos == 0 || vi == -1) {
            // First in the order (convention v_1 = b) or no escape ends on
            // this path: the jump path is the minimum path itself.
            out.jump_path[ai] = p;
        } else {
            out.incoming_vertex[ai] = vi;
            std::vector<int> begins = begins_at[vi];
            std::sort(begins.begin(), begins.end());
            int ui = begins.front();
            int aj = esc.origin_root_section[vi];
            if (aj < 0 || !ctx.rs_a[aj].test(ui))
                throw InternalInvariantViolation("first-in escape begin is not in the origin root"
                                                 " section");
            if (rank[aj] >= pos)
                throw InternalInvariantViolation(
                    "origin root section does not precede in the inherited order");
            const Path& donor = out.jump_path[aj];
            auto it = std::find(donor.vertices.begin(), donor.vertices.end(), ui);
            if (it == donor.vertices.end())
                throw InternalInvariantViolation("escape begin is not on the donor jump path");
            Path jp;
            for (int v : p.vertices) {
                jp.vertices.push_back(v);
                if (v == vi) break;
            }
            jp.vertices.insert(jp.vertices.end(), it, donor.vertices.end());
            out.rerouting_edge[ai] = {ui, vi};
            out.jump_path[ai] = std::move(jp);
        }
        out.simple[ai] = is_simple_path(ctx.restricted.graph.num_vertices() >= 0 ? ctx.graph
                                                                                  : ctx.graph,
                                        out.jump_path[ai].vertices)
                             ? 1
                             : 0;

        // Free section: from just after c_{a_i b} to the incoming vertex
        // (or to b when there is none).
        int pi = ctx.pair_index(ai, bi);
        int c_pos = ctx.ell - 3;
        int stop = vi == -1 ? p.length() : -1;
        if (stop < 0)
            for (int q = 0; q <= p.length(); ++q)
                if (p.vertices[q] == vi) {
                    stop = q;
                    break;
                }
        Path fs;
        for (int q = c_pos + 1; q <= stop; ++q) fs.vertices.push_back(p.vertices[q]);
        out.free_section[ai] = std::move(fs);
        (void)pi;
    }
    return out;
}

JumpPrivateParts jump_private_parts(const PairContext& ctx, const EscapeAnalysis& esc) {
    if (!esc.escape_property)
        throw std::invalid_argument("jump_private_parts requires the escape property for every b");
    JumpPrivateParts out;
    int na = ctx.num_a(), nb = ctx.num_b();
    for (int bi = 0; bi < nb; ++bi) out.per_b.push_back(jump_paths(ctx, esc, bi));

    std::map<int, int> occurrences;
    for (int bi = 0; bi < nb; ++bi)
        for (int ai = 0; ai < na; ++ai) {
            std::set<int> distinct(out.per_b[bi].jump_path[ai].vertices.begin(),
                                   out.per_b[bi].jump_path[ai].vertices.end());
            for (int v : distinct) ++occurrences[v];
        }
    out.private_part.assign(na * nb, {});
    for (int bi = 0; bi < nb; ++bi)
        for (int ai = 0; ai < na; ++ai) {
            std::vector<int> priv;
            for (int v : out.per_b[bi].jump_path[ai].vertices)
                if (occurrences[v] == 1) priv.push_back(v);
            std::sort(priv.begin(), priv.end());
            out.private_part[ai * nb + bi] = std::move(priv);
        }
    for (const auto& [v, count] : occurrences) out.restriction_vertices.push_back(v);
    return out;
}

JumpClaimCheck check_jump_claims(const PairContext& ctx, const JumpPrivateParts& jpp,
                                 long path_cap) {
    JumpClaimCheck out;
    InducedSubgraph sub = induced_subgraph(ctx.graph, jpp.restriction_vertices);
    int bound = 2 * ctx.ell - 3;
    int na = ctx.num_a(), nb = ctx.num_b();

    for (int ai = 0; ai < na && !out.capped; ++ai)
        for (int bi = 0; bi < nb && !out.capped; ++bi) {
            int a_local = sub.from_original[ctx.a_set[ai]];
            int b_local = sub.from_original[ctx.b_set[bi]];
            int c_local = sub.from_original[ctx.critical_ab[ctx.pair_index(ai, bi)]];
            std::vector<char> priv(sub.graph.num_vertices(), 0);
            for (int v : jpp.private_part[ai * nb + bi])
                priv[sub.from_original[v]] = 1;
            std::vector<int> dist_b = bfs_distances(sub.graph, b_local);

            // DFS over simple paths with remaining-distance pruning.
            std::vector<char> on_path(sub.graph.num_vertices(), 0);
            std::vector<int> stack{a_local};
            on_path[a_local] = 1;
            bool through_c = true, through_priv = true;
            std::vector<std::pair<int, int>> frames{{a_local, 0}};
            bool has_c = (a_local == c_local);
            int priv_count = priv[a_local] ? 1 : 0;
            while (!frames.empty()) {
                auto& [u, next_idx] = frames.back();
                const auto& nbrs = sub.graph.neighbors(u);
                if (u == b_local) {
                    ++out.paths_enumerated;
                    if (out.paths_enumerated > path_cap) {
                        out.capped = true;
                        break;
                    }
                    if (!has_c) through_c = false;
                    if (priv_count == 0) through_priv = false;
                    on_path[u] = 0;
                    if (u == c_local) has_c = false;
                    if (priv[u]) --priv_count;
                    frames.pop_back();
                    continue;
                }
                bool advanced = false;
                while (next_idx < static_cast<int>(nbrs.size())) {
                    int w = nbrs[next_idx++];
                    if (on_path[w]) continue;
                    int len = static_cast<int>(frames.size());  // edges used so far = len-1+1
                    if (!is_reachable(dist_b[w]) || len + dist_b[w] > bound) continue;
                    on_path[w] = 1;
                    if (w == c_local) has_c = true;
                    if (priv[w]) ++priv_count;
                    frames.push_back({w, 0});
                    advanced = true;
                    break;
                }
                if (!advanced) {
                    on_path[u] = 0;
                    if (u == c_local) has_c = false;
                    if (priv[u]) --priv_count;
                    frames.pop_back();
                }
            }
            if (!out.capped) {
                out.all_through_critical = out.all_through_critical && through_c;
                out.all_through_private = out.all_through_private && through_priv;
            }
        }
    return out;
}

// ---------------------------------------------------------------------------
// Disconnecting families and certificates
// ---------------------------------------------------------------------------

DisconnectReport verify_disconnecting(const Graph& g, const DisconnectingFamily& fam) {
    int na = static_cast<int>(fam.a_set.size());
    int nb = static_cast<int>(fam.b_set.size());
    if (static_cast<int>(fam.sets.size()) != na * nb)
        throw std::invalid_argument("verify_disconnecting: family size mismatch");
    std::set<int> terminals(fam.a_set.begin(), fam.a_set.end());
    terminals.insert(fam.b_set.begin(), fam.b_set.end());
    for (const auto& s : fam.sets)
        for (int v : s) {
            g.check_vertex(v);
            if (terminals.count(v))
                throw std::invalid_argument("verify_disconnecting: set touches A u B");
        }

    DisconnectReport out;
    for (int ai = 0; ai < na; ++ai)
        for (int bi = 0; bi < nb; ++bi) {
            int pi = fam.pair_index(ai, bi);
            // check 1: deleting the pair's own set pushes the distance above ell
            {
                InducedSubgraph sub = delete_vertices(g, fam.sets[pi]);
                int a_local = sub.from_original[fam.a_set[ai]];
                int b_local = sub.from_original[fam.b_set[bi]];
                std::vector<int> dist = bfs_distances(sub.graph, a_local);
                if (is_reachable(dist[b_local]) && dist[b_local] <= fam.ell) {
                    out.ok = false;
                    out.violating_pair = {ai, bi};
                    out.failed_check = 1;
                    return out;
                }
            }
            // check 2: deleting every other set leaves the distance at most ell
            {
                std::vector<int> removed;
                for (int qi = 0; qi < na * nb; ++qi)
                    if (qi != pi) removed.insert(removed.end(), fam.sets[qi].begin(),
                                                 fam.sets[qi].end());
                std::sort(removed.begin(), removed.end());
                removed.erase(std::unique(removed.begin(), removed.end()), removed.end());
                // its own set may share vertices with others; keep those deleted
                std::set<int> own(fam.sets[pi].begin(), fam.sets[pi].end());
                InducedSubgraph sub = delete_vertices(g, removed);
                int a_local = sub.from_original[fam.a_set[ai]];
                int b_local = sub.from_original[fam.b_set[bi]];
                std::vector<int> dist = bfs_distances(sub.graph, a_local);
                if (!(is_reachable(dist[b_local]) && dist[b_local] <= fam.ell)) {
                    out.ok = false;
                    out.violating_pair = {ai, bi};
                    out.failed_check = 2;
                    return out;
                }
            }
        }
    return out;
}

ShatterCertificate shatter_certificate(const Graph& g, const DisconnectingFamily& fam) {
    int na = static_cast<int>(fam.a_set.size());
    int nb = static_cast<int>(fam.b_set.size());
    if (na < 1 || na > 20 || nb != (1 << na))
        throw std::invalid_argument("shatter_certificate requires |B| = 2^|A|");
    DisconnectReport check = verify_disconnecting(g, fam);
    if (!check.ok)
        throw std::invalid_argument("shatter_certificate: family is not disconnecting");

    ShatterCertificate cert;
    // b_t encodes the subset A_t by the bits of t; the global deletion is the
    // union over b of the sets S_{a,b} with a in A_b.
    std::set<int> deleted;
    cert.subset_of_a.resize(nb);
    for (int t = 0; t < nb; ++t)
        for (int ai = 0; ai < na; ++ai)
            if ((t >> ai) & 1) {
                cert.subset_of_a[t].push_back(fam.a_set[ai]);
                const auto& s = fam.sets[fam.pair_index(ai, t)];
                deleted.insert(s.begin(), s.end());
            }
    cert.deleted.assign(deleted.begin(), deleted.end());

    InducedSubgraph sub = delete_vertices(g, cert.deleted);
    cert.trace.resize(nb);
    cert.ok = true;
    for (int t = 0; t < nb; ++t) {
        int b_local = sub.from_original[fam.b_set[t]];
        std::vector<int> dist = bfs_distances(sub.graph, b_local);
        std::vector<int> tr;
        for (int ai = 0; ai < na; ++ai) {
            int a_local = sub.from_original[fam.a_set[ai]];
            if (a_local >= 0 && is_reachable(dist[a_local]) && dist[a_local] <= fam.ell)
                tr.push_back(fam.a_set[ai]);
        }
        std::sort(tr.begin(), tr.end());
        cert.trace[t] = tr;
        std::vector<int> expected;
        for (int ai = 0; ai < na; ++ai)
            if (!((t >> ai) & 1)) expected.push_back(fam.a_set[ai]);
        std::sort(expected.begin(), expected.end());
        if (tr != expected && cert.ok) {
            cert.ok = false;
            cert.failed_b = {t, 0};
        }
    }
    return cert;
}

std::string disconnecting_family_to_json(const DisconnectingFamily& fam) {
    nlohmann::json j;
    j["a"] = fam.a_set;
    j["b"] = fam.b_set;
    j["radius"] = fam.ell;
    nlohmann::json sets = nlohmann::json::array();
    for (size_t ai = 0; ai < fam.a_set.size(); ++ai)
        for (size_t bi = 0; bi < fam.b_set.size(); ++bi) {
            nlohmann::json entry;
            entry["a"] = fam.a_set[ai];
            entry["b"] = fam.b_set[bi];
            entry["vertices"] = fam.sets[ai * fam.b_set.size() + bi];
            sets.push_back(entry);
        }
    j["sets"] = sets;
    return j.dump();
}

DisconnectingFamily disconnecting_family_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    DisconnectingFamily fam;
    fam.a_set = j.at("a").get<std::vector<int>>();
    fam.b_set = j.at("b").get<std::vector<int>>();
    fam.ell = j.at("radius").get<int>();
    fam.sets.assign(fam.a_set.size() * fam.b_set.size(), {});
    std::map<int, int> a_index, b_index;
    for (size_t i = 0; i < fam.a_set.size(); ++i) a_index[fam.a_set[i]] = static_cast<int>(i);
    for (size_t i = 0; i < fam.b_set.size(); ++i) b_index[fam.b_set[i]] = static_cast<int>(i);
    for (const auto& entry : j.at("sets")) {
        int a = entry.at("a").get<int>();
        int b = entry.at("b").get<int>();
        if (!a_index.count(a) || !b_index.count(b))
            throw std::invalid_argument("disconnecting family: set for unknown pair");
        fam.sets[a_index[a] * fam.b_set.size() + b_index[b]] =
            entry.at("vertices").get<std::vector<int>>();
    }
    return fam;
}

std::string shatter_certificate_to_json(const ShatterCertificate& cert) {
    nlohmann::json j;
    j["ok"] = cert.ok;
    j["deleted"] = cert.deleted;
    j["subset_of_a"] = cert.subset_of_a;
    j["trace"] = cert.trace;
    return j.dump();
}

// ---------------------------------------------------------------------------
// Independent subpairs and the equidistant pipeline
// ---------------------------------------------------------------------------

InterferenceMatrix critical_interference_matrix(const Graph& g, const std::vector<int>& a_set,
                                                const std::vector<int>& b_set, int ell,
                                                const EdgeOrder& order) {
    InterferenceMatrix m;
    m.row_labels = a_set;
    m.col_labels = b_set;
    std::set<int> terminals(a_set.begin(), a_set.end());
    terminals.insert(b_set.begin(), b_set.end());
    m.entries.assign(a_set.size(), std::vector<std::vector<int>>(b_set.size()));
    for (size_t bi = 0; bi < b_set.size(); ++bi) {
        LexPathTree tree(g, b_set[bi], order);
        for (size_t ai = 0; ai < a_set.size(); ++ai) {
            if (!tree.reachable(a_set[ai]))
                throw std::invalid_argument("critical_interference_matrix: disconnected pair");
            Path p = tree.path_from(a_set[ai]);
            if (p.length() <= ell)
                throw std::invalid_argument(
                    "critical_interference_matrix: pair at distance <= ell");
            if (ell < 3)
                throw std::invalid_argument("critical_interference_matrix: ell must be >= 3");
            int c_ab = p.vertices[ell - 3];
            int c_ba = p.vertices[p.length() - (ell - 3)];
            std::set<int> entry;
            for (int c : {c_ab, c_ba}) {
                std::vector<int> dist = bfs_distances(g, c);
                for (int t : terminals)
                    if (is_reachable(dist[t]) && dist[t] <= ell) entry.insert(t);
            }
            entry.erase(a_set[ai]);
            entry.erase(b_set[bi]);
            m.entries[ai][bi].assign(entry.begin(), entry.end());
        }
    }
    return m;
}

IndependentSubpairResult independent_subpair(const Graph& g, const std::vector<int>& a_set,
                                             const std::vector<int>& b_set, int ell, int d, int p,
                                             const EdgeOrder& order) {
    if (p < 1) throw std::invalid_argument("independent_subpair: p must be >= 1");
    LocalizedReport loc = localized_check_pair(g, ell, d, a_set, b_set);
    if (!loc.ok)
        throw std::invalid_argument("independent_subpair: pair is not d-localized (" +
                                    loc.reason + " at " + std::to_string(loc.violating_pair.first) +
                                    "," + std::to_string(loc.violating_pair.second) + ")");
    std::vector<int> all = a_set;
    all.insert(all.end(), b_set.begin(), b_set.end());
    SparsityReport sp = sparsity_check(g, ell, all, d);
    if (!sp.ok)
        throw std::invalid_argument("independent_subpair: pair is not d-sparse (vertex " +
                                    std::to_string(sp.violating_vertex) + " lies in " +
                                    std::to_string(sp.count) + " balls)");

    InterferenceMatrix m = critical_interference_matrix(g, a_set, b_set, ell, order);
    ProperSubmatrixResult sub = proper_submatrix(m, p, /*exact=*/true);
    IndependentSubpairResult out;
    out.status = sub.status;
    if (sub.status != SubmatrixStatus::found) return out;
    for (int i : sub.row_idx) out.a_prime.push_back(a_set[i]);
    for (int j : sub.col_idx) out.b_prime.push_back(b_set[j]);

    // Re-verify against the definition before handing the pair out.
    PairContext ctx = build_pair_context(g, out.a_prime, out.b_prime, ell, d, order);
    IndependenceReport rep = independence_check(ctx);
    if (!rep.independent)
        throw InternalInvariantViolation("independent_subpair output failed the direct check");
    return out;
}

EquidistantResult equidistant_disconnecting(const Graph& g, const std::vector<int>& x, int r,
                                            int q, const EdgeOrder& order) {
    EquidistantResult out;
    if (x.size() < 2) throw std::invalid_argument("equidistant_disconnecting: |x| < 2");
    if (r < 2 || q < 1) throw std::invalid_argument("equidistant_disconnecting: bad parameters");
    int r_half_up = (r + 1) / 2;
    for (size_t i = 0; i < x.size(); ++i) {
        std::vector<int> dist = bfs_distances(g, x[i]);
        for (size_t j = i + 1; j < x.size(); ++j)
            if (dist[x[j]] != r)
                throw std::invalid_argument("equidistant_disconnecting: pair (" +
                                            std::to_string(x[i]) + "," + std::to_string(x[j]) +
                                            ") is not at distance exactly r");
    }
    SparsityReport sp = sparsity_check(g, r_half_up, x, q - 1);
    if (!sp.ok)
        throw std::invalid_argument(
            "equidistant_disconnecting: vertex " + std::to_string(sp.violating_vertex) +
            " lies in " + std::to_string(sp.count) + " balls of radius ceil(r/2)");

    std::vector<int> members = x;
    std::sort(members.begin(), members.end());
    if (members.size() % 2 == 1) members.pop_back();  // even it out
    int half = static_cast<int>(members.size()) / 2;
    std::vector<int> a_set(members.begin(), members.begin() + half);
    std::vector<int> b_set(members.begin() + half, members.end());

    // Paths and the first restriction.
    std::vector<Path> paths(a_set.size() * b_set.size());
    std::set<int> restricted1;
    for (size_t bi = 0; bi < b_set.size(); ++bi) {
        LexPathTree tree(g, b_set[bi], order);
        for (size_t ai = 0; ai < a_set.size(); ++ai) {
            paths[ai * b_set.size() + bi] = tree.path_from(a_set[ai]);
            for (int v : paths[ai * b_set.size() + bi].vertices) restricted1.insert(v);
        }
    }
    InducedSubgraph sub1 =
        induced_subgraph(g, std::vector<int>(restricted1.begin(), restricted1.end()));

    // Interference matrix over the restriction: m(a,b) collects the other
    // terminals whose radius-ceil(r/2) ball meets P_ab.
    InterferenceMatrix m;
    m.row_labels = a_set;
    m.col_labels = b_set;
    m.entries.assign(a_set.size(), std::vector<std::vector<int>>(b_set.size()));
    std::map<int, std::vector<int>> ball_of;  // terminal -> restricted dist vector
    for (int t : members) ball_of[t] = bfs_distances(sub1.graph, sub1.from_original[t]);
    for (size_t ai = 0; ai < a_set.size(); ++ai)
        for (size_t bi = 0; bi < b_set.size(); ++bi) {
            std::set<int> entry;
            for (int t : members) {
                if (t == a_set[ai] || t == b_set[bi]) continue;
                const auto& dist = ball_of[t];
                for (int v : paths[ai * b_set.size() + bi].vertices) {
                    int lv = sub1.from_original[v];
                    if (is_reachable(dist[lv]) && dist[lv] <= r_half_up) {
                        entry.insert(t);
                        break;
                    }
                }
            }
            m.entries[ai][bi].assign(entry.begin(), entry.end());
        }

    // Largest proper submatrix we can find exactly.
    ProperSubmatrixResult found;
    for (int n = static_cast<int>(std::min(a_set.size(), b_set.size())); n >= 1; --n) {
        ProperSubmatrixResult attempt = proper_submatrix(m, n, /*exact=*/true);
        if (attempt.status == SubmatrixStatus::found) {
            found = attempt;
            break;
        }
    }
    if (found.status != SubmatrixStatus::found) {
        out.failure = "no proper submatrix";
        return out;
    }
    for (int i : found.row_idx) out.a_prime.push_back(a_set[i]);
    for (int j : found.col_idx) out.b_prime.push_back(b_set[j]);

    // Second restriction: only the A' x B' paths.
    std::set<int> restricted2;
    std::vector<Path> kept_paths;
    for (int i : found.row_idx)
        for (int j : found.col_idx) {
            const Path& p = paths[i * b_set.size() + j];
            kept_paths.push_back(p);
            for (int v : p.vertices) restricted2.insert(v);
        }
    out.restriction = induced_subgraph(
        g, std::vector<int>(restricted2.begin(), restricted2.end()));

    // Midvertex sets: path vertices at positions floor(r/2) and ceil(r/2).
    out.family.a_set = out.a_prime;
    out.family.b_set = out.b_prime;
    out.family.ell = r;
    out.family.sets.resize(out.a_prime.size() * out.b_prime.size());
    for (size_t ai = 0; ai < out.a_prime.size(); ++ai)
        for (size_t bi = 0; bi < out.b_prime.size(); ++bi) {
            const Path& p = kept_paths[ai * out.b_prime.size() + bi];
            std::set<int> mids{p.vertices[r / 2], p.vertices[(r + 1) / 2]};
            out.family.sets[ai * out.b_prime.size() + bi].assign(mids.begin(), mids.end());
        }

    // Verify in the restriction, with ids mapped.
    DisconnectingFamily local = out.family;
    for (auto& v : local.a_set) v = out.restriction.from_original[v];
    for (auto& v : local.b_set) v = out.restriction.from_original[v];
    for (auto& s : local.sets)
        for (auto& v : s) v = out.restriction.from_original[v];
    out.verification = verify_disconnecting(out.restriction.graph, local);
    out.ok = out.verification.ok;
    if (!out.ok) out.failure = "midvertex family failed verification";
    return out;
}

}  // namespace ballvc
