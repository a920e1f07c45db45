#include "ballvc/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ballvc/errors.hpp"
#include "ballvc/rng.hpp"

namespace ballvc {

Bitset make_bitset(int n, const std::vector<int>& members) {
    Bitset b(n);
    for (int v : members) {
        if (v < 0 || v >= n) throw std::invalid_argument("bitset member out of range");
        b.set(v);
    }
    return b;
}

std::vector<int> bitset_members(const Bitset& b) {
    std::vector<int> out;
    for (auto i = b.find_first(); i != Bitset::npos; i = b.find_next(i))
        out.push_back(static_cast<int>(i));
    return out;
}

Hypergraph::Hypergraph(int n_, std::vector<std::vector<int>> edge_lists) : n(n_) {
    if (n < 0) throw std::invalid_argument("hypergraph: negative vertex count");
    edges.reserve(edge_lists.size());
    for (const auto& e : edge_lists) add_edge(e);
}

void Hypergraph::add_edge(const std::vector<int>& members) {
    edges.push_back(make_bitset(n, members));
}

bool TraceFamily::contains(const Bitset& t) const {
    return std::binary_search(members.begin(), members.end(), t);
}

TraceFamily trace(const Hypergraph& h, const std::vector<int>& x) {
    TraceFamily out;
    out.ground = make_bitset(h.n, x);
    out.members.reserve(h.edges.size());
    for (const Bitset& e : h.edges) out.members.push_back(e & out.ground);
    std::sort(out.members.begin(), out.members.end());
    out.members.erase(std::unique(out.members.begin(), out.members.end()), out.members.end());
    return out;
}

namespace {

bool shattered(const Hypergraph& h, const Bitset& x, ShatterMode mode) {
    if (mode == ShatterMode::full) {
        size_t k = x.count();
        if (k >= 63) return false;  // would need 2^k > #edges distinct traces
        uint64_t need = 1ULL << k;
        if (static_cast<uint64_t>(h.num_edges()) < need) return false;
        std::vector<Bitset> traces;
        traces.reserve(h.edges.size());
        for (const Bitset& e : h.edges) traces.push_back(e & x);
        std::sort(traces.begin(), traces.end());
        traces.erase(std::unique(traces.begin(), traces.end()), traces.end());
        return traces.size() == need;
    }
    // pairs mode: every 2-subset of x must appear as a trace
    std::vector<int> xs = bitset_members(x);
    if (xs.size() < 2) return true;
    std::vector<Bitset> pair_traces;
    for (const Bitset& e : h.edges) {
        Bitset t = e & x;
        if (t.count() == 2) pair_traces.push_back(std::move(t));
    }
    std::sort(pair_traces.begin(), pair_traces.end());
    size_t distinct = std::unique(pair_traces.begin(), pair_traces.end()) - pair_traces.begin();
    return distinct == xs.size() * (xs.size() - 1) / 2;
}

}  // namespace

bool is_shattered(const Hypergraph& h, const std::vector<int>& x, ShatterMode mode) {
    return shattered(h, make_bitset(h.n, x), mode);
}

ShatterWitness max_shattered_set(const Hypergraph& h, ShatterMode mode) {
    if (h.n > kShatterSearchVertexCap)
        throw SolverCapExceeded("exhaustive shattered-set search capped at n <= " +
                                std::to_string(kShatterSearchVertexCap));
    ShatterWitness best;
    if (mode == ShatterMode::full) {
        if (h.num_edges() == 0) return best;  // value -1 by convention
        best.value = 0;                       // the empty set traces {∅}
    } else {
        if (h.n == 0) {
            best.value = 0;
            return best;
        }
        best.value = 1;  // singletons are vacuously 2-shattered
        best.witness = {0};
    }

    // Level-wise growth. Shattering is closed under subsets in both modes, so
    // every shattered (k+1)-set extends a shattered k-set by its largest
    // element; growing only with larger vertex ids enumerates each set once.
    std::vector<std::vector<int>> level;
    for (int v = 0; v < h.n; ++v) {
        std::vector<int> cand{v};
        if (mode == ShatterMode::pairs || is_shattered(h, cand, mode)) level.push_back(cand);
    }
    if (mode == ShatterMode::full && !level.empty()) {
        best.value = 1;
        best.witness = level.front();
    }
    while (!level.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& x : level) {
            for (int v = x.back() + 1; v < h.n; ++v) {
                std::vector<int> cand = x;
                cand.push_back(v);
                if (is_shattered(h, cand, mode)) next.push_back(std::move(cand));
            }
        }
        if (!next.empty()) {
            best.value = static_cast<int>(next.front().size());
            best.witness = next.front();
        }
        level = std::move(next);
    }
    return best;
}

int vc_dimension(const Hypergraph& h) { return max_shattered_set(h, ShatterMode::full).value; }

int two_vc_dimension(const Hypergraph& h) {
    return max_shattered_set(h, ShatterMode::pairs).value;
}

ShatterWitness shattered_lower_bound(const Hypergraph& h, ShatterMode mode, int budget,
                                     uint64_t seed) {
    Rng rng(seed);
    ShatterWitness best;
    best.value = (mode == ShatterMode::pairs && h.n > 0) ? 1 : (h.num_edges() > 0 ? 0 : -1);
    if (mode == ShatterMode::pairs && h.n > 0) best.witness = {0};
    int spent = 0;
    std::vector<int> perm(h.n);
    for (int i = 0; i < h.n; ++i) perm[i] = i;
    while (spent < budget) {
        for (int i = h.n - 1; i > 0; --i) {
            int j = static_cast<int>(rng.next_below(static_cast<uint64_t>(i) + 1));
            std::swap(perm[i], perm[j]);
        }
        std::vector<int> grown;
        for (int v : perm) {
            if (spent >= budget) break;
            std::vector<int> cand = grown;
            cand.push_back(v);
            ++spent;
            if (is_shattered(h, cand, mode)) grown = std::move(cand);
        }
        if (static_cast<int>(grown.size()) > best.value) {
            best.value = static_cast<int>(grown.size());
            best.witness = grown;
        }
    }
    if (!best.witness.empty() && !is_shattered(h, best.witness, mode))
        throw InternalInvariantViolation("shattered_lower_bound produced a bad witness");
    std::sort(best.witness.begin(), best.witness.end());
    return best;
}

Hypergraph dual(const Hypergraph& h) {
    Hypergraph d;
    d.n = h.num_edges();
    d.edges.reserve(h.n);
    for (int v = 0; v < h.n; ++v) {
        Bitset e(d.n);
        for (int i = 0; i < h.num_edges(); ++i)
            if (h.edges[i].test(v)) e.set(i);
        d.edges.push_back(std::move(e));
    }
    return d;
}

namespace {

std::vector<int> greedy_hitting_set(const Hypergraph& h) {
    std::vector<int> chosen;
    std::vector<char> hit(h.edges.size(), 0);
    size_t remaining = h.edges.size();
    while (remaining > 0) {
        std::vector<int> cover(h.n, 0);
        for (size_t i = 0; i < h.edges.size(); ++i) {
            if (hit[i]) continue;
            for (auto v = h.edges[i].find_first(); v != Bitset::npos;
                 v = h.edges[i].find_next(v))
                ++cover[v];
        }
        int best_v = 0;
        for (int v = 1; v < h.n; ++v)
            if (cover[v] > cover[best_v]) best_v = v;
        chosen.push_back(best_v);
        for (size_t i = 0; i < h.edges.size(); ++i)
            if (!hit[i] && h.edges[i].test(best_v)) {
                hit[i] = 1;
                --remaining;
            }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

// Disjoint-edge packing among the not-yet-hit edges; its size lower-bounds
// the number of extra vertices any completion needs.
int packing_lower_bound(const std::vector<Bitset>& edges, const std::vector<char>& hit, int n) {
    Bitset used(n);
    int count = 0;
    for (size_t i = 0; i < edges.size(); ++i) {
        if (hit[i]) continue;
        if (!edges[i].intersects(used)) {
            used |= edges[i];
            ++count;
        }
    }
    return count;
}

struct HittingSearch {
    const Hypergraph& h;
    std::vector<char> hit;
    std::vector<int> chosen;
    std::vector<int> best;

    explicit HittingSearch(const Hypergraph& h_) : h(h_), hit(h_.edges.size(), 0) {}

    void run() {
        int uncovered = -1;
        size_t fewest = SIZE_MAX;
        for (size_t i = 0; i < h.edges.size(); ++i) {
            if (hit[i]) continue;
            size_t sz = h.edges[i].count();
            if (sz < fewest) {
                fewest = sz;
                uncovered = static_cast<int>(i);
            }
        }
        if (uncovered < 0) {
            if (chosen.size() < best.size()) best = chosen;
            return;
        }
        if (chosen.size() + 1 >= best.size()) return;
        if (chosen.size() + packing_lower_bound(h.edges, hit, h.n) >= best.size()) return;
        for (auto v = h.edges[uncovered].find_first(); v != Bitset::npos;
             v = h.edges[uncovered].find_next(v)) {
            std::vector<size_t> newly;
            for (size_t i = 0; i < h.edges.size(); ++i)
                if (!hit[i] && h.edges[i].test(v)) {
                    hit[i] = 1;
                    newly.push_back(i);
                }
            chosen.push_back(static_cast<int>(v));
            run();
            chosen.pop_back();
            for (size_t i : newly) hit[i] = 0;
        }
    }
};

}  // namespace

std::vector<int> transversality(const Hypergraph& h, SolveMode mode) {
    for (const Bitset& e : h.edges)
        if (e.none()) throw InfeasibleInstance("transversality: empty hyperedge");
    if (h.edges.empty()) return {};
    if (mode == SolveMode::greedy) return greedy_hitting_set(h);
    if (h.n > kExactSolverVertexCap || h.num_edges() > kExactSolverEdgeCap)
        throw SolverCapExceeded("exact transversality capped at n <= 64, edges <= 512");
    HittingSearch search(h);
    search.best = greedy_hitting_set(h);
    search.run();
    std::sort(search.best.begin(), search.best.end());
    return search.best;
}

namespace {

struct PackingSearch {
    const std::vector<Bitset>& edges;
    int n;
    Bitset used;
    std::vector<int> chosen;
    std::vector<int> best;

    PackingSearch(const std::vector<Bitset>& e, int n_) : edges(e), n(n_), used(n_) {}

    void run(size_t from) {
        if (chosen.size() > best.size()) best = chosen;
        if (chosen.size() + (edges.size() - from) <= best.size()) return;
        for (size_t i = from; i < edges.size(); ++i) {
            if (edges[i].intersects(used)) continue;
            used |= edges[i];
            chosen.push_back(static_cast<int>(i));
            run(i + 1);
            chosen.pop_back();
            used ^= edges[i];  // edges[i] was disjoint from the rest of used
        }
    }
};

}  // namespace

std::vector<int> packing_number(const Hypergraph& h, SolveMode mode) {
    if (mode == SolveMode::greedy) {
        Bitset used(h.n);
        std::vector<int> chosen;
        for (int i = 0; i < h.num_edges(); ++i)
            if (!h.edges[i].intersects(used)) {
                used |= h.edges[i];
                chosen.push_back(i);
            }
        return chosen;
    }
    if (h.n > kExactSolverVertexCap || h.num_edges() > kExactSolverEdgeCap)
        throw SolverCapExceeded("exact packing capped at n <= 64, edges <= 512");
    PackingSearch search(h.edges, h.n);
    search.run(0);
    return search.best;
}

namespace {

struct PqSearch {
    const Hypergraph& h;
    int p, q;
    long nodes = 0;
    static constexpr long kNodeBudget = 20'000'000;
    std::vector<int> counts;
    std::vector<int> chosen;
    std::vector<int> found;

    PqSearch(const Hypergraph& h_, int p_, int q_) : h(h_), p(p_), q(q_), counts(h_.n, 0) {}

    bool run(int from) {
        if (static_cast<int>(chosen.size()) == p) {
            found = chosen;
            return true;
        }
        if (++nodes > kNodeBudget)
            throw SolverCapExceeded("pq_property search exceeded its node budget");
        int need = p - static_cast<int>(chosen.size());
        for (int i = from; i + need <= h.num_edges(); ++i) {
            bool ok = true;
            for (auto v = h.edges[i].find_first(); v != Bitset::npos;
                 v = h.edges[i].find_next(v))
                if (counts[v] + 1 >= q) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            for (auto v = h.edges[i].find_first(); v != Bitset::npos;
                 v = h.edges[i].find_next(v))
                ++counts[v];
            chosen.push_back(i);
            if (run(i + 1)) return true;
            chosen.pop_back();
            for (auto v = h.edges[i].find_first(); v != Bitset::npos;
                 v = h.edges[i].find_next(v))
                --counts[v];
        }
        return false;
    }
};

}  // namespace

PqResult pq_property(const Hypergraph& h, int p, int q) {
    if (p < q || q < 1) throw std::invalid_argument("pq_property requires p >= q >= 1");
    PqResult result;
    if (h.num_edges() < p) return result;  // vacuously holds
    PqSearch search(h, p, q);
    if (search.run(0)) {
        // Verify the counterexample: no vertex lies in q of the chosen edges.
        std::vector<int> counts(h.n, 0);
        for (int i : search.found)
            for (auto v = h.edges[i].find_first(); v != Bitset::npos;
                 v = h.edges[i].find_next(v))
                ++counts[v];
        for (int c : counts)
            if (c >= q)
                throw InternalInvariantViolation("pq_property produced a bad counterexample");
        result.holds = false;
        result.counterexample = search.found;
    }
    return result;
}

Hypergraph read_hypergraph(std::istream& in) {
    std::string line;
    int n = -1;
    long k = -1;
    std::vector<std::vector<int>> edges;
    while (std::getline(in, line)) {
        size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        std::istringstream iss(line);
        std::string tag;
        iss >> tag;
        if (tag == "h") {
            if (!(iss >> n >> k) || n < 0 || k < 0)
                throw std::invalid_argument("hypergraph format: bad header");
        } else if (tag == "s") {
            if (n < 0) throw std::invalid_argument("hypergraph format: edge before header");
            std::vector<int> e;
            int v;
            while (iss >> v) e.push_back(v);
            edges.push_back(std::move(e));
        } else {
            throw std::invalid_argument("hypergraph format: unknown line tag '" + tag + "'");
        }
    }
    if (n < 0) throw std::invalid_argument("hypergraph format: missing header");
    if (k >= 0 && k != static_cast<long>(edges.size()))
        throw std::invalid_argument("hypergraph format: edge count mismatch");
    return Hypergraph(n, std::move(edges));
}

Hypergraph read_hypergraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open hypergraph file: " + path);
    return read_hypergraph(in);
}

void write_hypergraph(const Hypergraph& h, std::ostream& out) {
    out << "h " << h.n << " " << h.num_edges() << "\n";
    for (int i = 0; i < h.num_edges(); ++i) {
        out << "s";
        for (int v : h.edge_members(i)) out << " " << v;
        out << "\n";
    }
}

}  // namespace ballvc
