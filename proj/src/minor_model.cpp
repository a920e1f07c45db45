#include "ballvc/minor_model.hpp"

#include <algorithm>
#include <deque>
#include <nlohmann/json.hpp>
#include <set>
#include <stdexcept>

#include "ballvc/errors.hpp"

namespace ballvc {

MinorCheck verify_minor_model(const Graph& g, const MinorModel& m) {
    MinorCheck out;
    if (static_cast<int>(m.branch_sets.size()) != m.pattern.num_vertices()) {
        out.ok = false;
        out.violation = "branch set count != pattern size";
        return out;
    }
    std::vector<int> owner(g.num_vertices(), -1);
    for (int i = 0; i < static_cast<int>(m.branch_sets.size()); ++i) {
        if (m.branch_sets[i].empty()) {
            out.ok = false;
            out.violation = "empty branch set";
            return out;
        }
        for (int v : m.branch_sets[i]) {
            g.check_vertex(v);
            if (owner[v] != -1) {
                out.ok = false;
                out.violation = "disjointness";
                return out;
            }
            owner[v] = i;
        }
    }
    // connectivity: BFS inside each branch set
    for (const auto& bs : m.branch_sets) {
        std::set<int> members(bs.begin(), bs.end());
        std::set<int> seen{bs.front()};
        std::deque<int> queue{bs.front()};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : g.neighbors(u))
                if (members.count(v) && !seen.count(v)) {
                    seen.insert(v);
                    queue.push_back(v);
                }
        }
        if (seen.size() != members.size()) {
            out.ok = false;
            out.violation = "connectivity";
            return out;
        }
    }
    // every pattern edge must be realized by a host edge between branch sets
    for (auto [i, j] : m.pattern.edges()) {
        bool found = false;
        for (int u : m.branch_sets[i]) {
            for (int v : g.neighbors(u))
                if (owner[v] == j) {
                    found = true;
                    break;
                }
            if (found) break;
        }
        if (!found) {
            out.ok = false;
            out.violation = "pattern edge " + std::to_string(i) + "-" + std::to_string(j);
            return out;
        }
    }
    return out;
}

namespace {

Graph clique_pattern(int d) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) edges.emplace_back(i, j);
    return Graph(d, std::move(edges));
}

Path concatenate_halves(const Path& first, const Path& second) {
    Path p = first;
    p.vertices.insert(p.vertices.end(), second.vertices.begin() + 1, second.vertices.end());
    return p;
}

bool vertices_distinct(const std::vector<int>& vs) {
    std::vector<int> sorted = vs;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

// Central path construction: canonical half from x_i to the center plus the
// canonical half from the center to x_j. If a vertex repeats across the two
// halves, mirror the x_i-side subpath onto the second half (the re-routing
// of the simplicity argument) and re-check.
Path build_central_path(const Graph& g, int xi, int xj, int center, const EdgeOrder& order) {
    LexPathTree to_center(g, center, order);
    LexPathTree to_xj(g, xj, order);
    Path first = to_center.path_from(xi);   // x_i .. center
    Path second = to_xj.path_from(center);  // center .. x_j
    Path p = concatenate_halves(first, second);
    if (vertices_distinct(p.vertices)) return p;

    // Find a vertex occurring in both halves (excluding the shared center).
    std::set<int> in_first(first.vertices.begin(), first.vertices.end() - 1);
    int repeat = -1, repeat_pos_second = -1;
    for (int pos = 1; pos < static_cast<int>(second.vertices.size()); ++pos)
        if (in_first.count(second.vertices[pos])) {
            repeat = second.vertices[pos];
            repeat_pos_second = pos;
            break;
        }
    if (repeat < 0)
        throw InternalInvariantViolation("central path self-intersects without a shared vertex");
    // Mirror the x->center subpath of the first half onto the second half.
    auto it = std::find(first.vertices.begin(), first.vertices.end(), repeat);
    std::vector<int> mirrored(it, first.vertices.end());  // repeat .. center
    std::reverse(mirrored.begin(), mirrored.end());       // center .. repeat
    std::vector<int> rerouted = mirrored;
    rerouted.insert(rerouted.end(), second.vertices.begin() + repeat_pos_second + 1,
                    second.vertices.end());
    Path second2;
    second2.vertices = std::move(rerouted);
    Path p2 = concatenate_halves(first, second2);
    if (!vertices_distinct(p2.vertices) || !is_simple_path(g, p2.vertices))
        throw InternalInvariantViolation(
            "central path is not simple even after re-routing; the witness radius "
            "cannot be minimal");
    return p2;
}

}  // namespace

PairWitnessResult find_pair_witnesses(const Graph& g, const std::vector<int>& x,
                                      const EdgeOrder& order) {
    if (x.size() < 2) throw std::invalid_argument("find_pair_witnesses needs |x| >= 2");
    if (!vertices_distinct(x)) throw std::invalid_argument("find_pair_witnesses: repeated vertex");
    for (int v : x) g.check_vertex(v);

    // d(x_k, c) for every member and every candidate center.
    std::vector<std::vector<int>> dist;
    dist.reserve(x.size());
    for (int v : x) dist.push_back(bfs_distances(g, v));

    PairWitnessResult out;
    for (int i = 0; i < static_cast<int>(x.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(x.size()); ++j) {
            int best_center = -1, best_radius = -1;
            for (int c = 0; c < g.num_vertices(); ++c) {
                if (!is_reachable(dist[i][c]) || !is_reachable(dist[j][c])) continue;
                int r = std::max(dist[i][c], dist[j][c]);
                bool isolates = true;
                for (int k = 0; k < static_cast<int>(x.size()); ++k) {
                    if (k == i || k == j) continue;
                    if (is_reachable(dist[k][c]) && dist[k][c] <= r) {
                        isolates = false;
                        break;
                    }
                }
                if (!isolates) continue;
                if (best_center < 0 || r < best_radius) {
                    best_center = c;
                    best_radius = r;
                }
            }
            if (best_center < 0) {
                out.failed.emplace_back(i, j);
                continue;
            }
            PairWitness w;
            w.i = i;
            w.j = j;
            w.center = best_center;
            w.radius = best_radius;
            w.central = build_central_path(g, x[i], x[j], best_center, order);
            out.witnesses.push_back(std::move(w));
        }
    return out;
}

MinorModel extract_clique_minor(const Graph& g, const std::vector<int>& x,
                                const std::vector<PairWitness>& witnesses) {
    int d = static_cast<int>(x.size());
    if (static_cast<int>(witnesses.size()) != d * (d - 1) / 2)
        throw std::invalid_argument("extract_clique_minor needs a witness per pair");

    std::vector<std::vector<int>> dist;
    dist.reserve(x.size());
    for (int v : x) dist.push_back(bfs_distances(g, v));

    std::vector<std::set<int>> sets(d);
    for (int i = 0; i < d; ++i) sets[i].insert(x[i]);
    for (const PairWitness& w : witnesses) {
        for (int v : w.central.vertices) {
            int di = dist[w.i][v], dj = dist[w.j][v];
            if (di < dj)
                sets[w.i].insert(v);
            else if (dj < di)
                sets[w.j].insert(v);
            else
                sets[std::min(w.i, w.j)].insert(v);  // midpoint: lower index wins
        }
    }

    MinorModel m;
    m.pattern = clique_pattern(d);
    for (auto& s : sets) m.branch_sets.emplace_back(s.begin(), s.end());
    MinorCheck check = verify_minor_model(g, m);
    if (!check.ok)
        throw InternalInvariantViolation("extracted minor model failed verification: " +
                                         check.violation);
    return m;
}

std::string minor_model_to_json(const MinorModel& m) {
    nlohmann::json j;
    j["pattern_size"] = m.pattern.num_vertices();
    j["branch_sets"] = m.branch_sets;
    return j.dump();
}

MinorModel minor_model_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    MinorModel m;
    int d = j.at("pattern_size").get<int>();
    m.pattern = clique_pattern(d);
    m.branch_sets = j.at("branch_sets").get<std::vector<std::vector<int>>>();
    return m;
}

}  // namespace ballvc
