#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ballvc/graph.hpp"
#include "ballvc/hypergraph.hpp"
#include "ballvc/lexpath.hpp"

namespace ballvc {

// ---------------------------------------------------------------------------
// Sparsity / localization predicates
// ---------------------------------------------------------------------------

struct SparsityReport {
    bool ok = true;
    int violating_vertex = -1;  // lies in more than q balls
    int count = 0;              // number of balls containing it
};

// q-sparse: no vertex of g lies in more than q balls of radius ell centered
// at `centers`.
SparsityReport sparsity_check(const Graph& g, int ell, const std::vector<int>& centers, int q);

struct LocalizedReport {
    bool ok = true;
    std::pair<int, int> violating_pair{-1, -1};
    int distance = -1;
    std::string reason;  // "too close", "too far", "unreachable"
};

// d-localized set: members pairwise at distance in [ell+1, 2*ell - 2^(d+2) - 3].
// Throws std::invalid_argument when the window is empty (degenerate
// parameters), rather than returning false.
LocalizedReport localized_check_set(const Graph& g, int ell, int d, const std::vector<int>& x);

// d-localized pair: members of A u B pairwise at distance >= ell+1, and every
// cross pair (a,b) at distance <= 2*ell - 2^(d+2) - 3.
LocalizedReport localized_check_pair(const Graph& g, int ell, int d, const std::vector<int>& a,
                                     const std::vector<int>& b);

// ---------------------------------------------------------------------------
// Edge colorings and Ramsey extraction
// ---------------------------------------------------------------------------

// Complete edge-colored graph on an abstract label set.
struct EdgeColoring {
    int num_colors = 0;
    std::vector<int> labels;              // e.g. vertex ids
    std::vector<std::vector<int>> color;  // symmetric matrix, diagonal -1

    int size() const { return static_cast<int>(labels.size()); }
};

// The distance-based (D+4)-coloring with D = 2^(d+2)+2, colors assigned in
// rule order: c in [0,D] when d(x,y) = 2*ell - c, then D+1 when <= ell,
// D+2 when > 2*ell (or unreachable), else D+3.
EdgeColoring distance_coloring(const Graph& g, const std::vector<int>& x, int ell, int d);

struct RamseyResult {
    bool found = false;
    int color = -1;
    std::vector<int> clique;  // label values, sorted
};

// Searches every color class for a monochromatic clique of `target` labels.
// The returned clique is re-verified. found == false is a definitive
// exhaustion report.
RamseyResult ramsey_extract(const EdgeColoring& coloring, int target);

// ---------------------------------------------------------------------------
// Interference matrices
// ---------------------------------------------------------------------------

// Matrix over disjoint label sets A (rows) and B (columns) whose entries are
// subsets of (A u B) \ {a, b}. Proper = all entries empty.
struct InterferenceMatrix {
    std::vector<int> row_labels;
    std::vector<int> col_labels;
    std::vector<std::vector<std::vector<int>>> entries;  // [row][col] = sorted labels

    int max_entry_size() const;
    bool is_proper() const;
    // Entries re-intersected with the selected labels.
    InterferenceMatrix submatrix(const std::vector<int>& row_idx,
                                 const std::vector<int>& col_idx) const;
};

enum class SubmatrixStatus { found, none, inconclusive };

struct ProperSubmatrixResult {
    SubmatrixStatus status = SubmatrixStatus::none;
    std::vector<int> row_idx;  // indices into row_labels
    std::vector<int> col_idx;
};

// Finds an n x n induced submatrix whose re-intersected entries are all
// empty. Exact mode is an exhaustive DFS with pruning (status none is then
// definitive); randomized mode samples row/column subsets with a retry
// budget and reports inconclusive on exhaustion.
ProperSubmatrixResult proper_submatrix(const InterferenceMatrix& m, int n, bool exact,
                                       uint64_t seed = 1, int retry_budget = 20000);

// ---------------------------------------------------------------------------
// Pair contexts: minimum-path systems, critical vertices, root sections
// ---------------------------------------------------------------------------

// The restriction of the graph to all lex-min AB-paths, with per-pair
// critical vertices and per-terminal root sections. Paths are computed in
// the ORIGINAL graph; escape machinery runs on the restricted one.
struct PairContext {
    Graph graph;  // the original host graph
    std::vector<int> a_set, b_set;
    int ell = 0;
    int d = 0;
    EdgeOrder order;

    std::vector<Path> paths;  // [ai * |B| + bi], original vertex ids
    std::vector<int> critical_ab;      // c_{ab}: position ell-3 from a
    std::vector<int> precritical_ab;   // c-_{ab}: position ell-4 from a
    std::vector<int> critical_ba;      // c_{ba}: position ell-3 from b
    InducedSubgraph restricted;        // induced on all path vertices
    std::vector<Bitset> rs_a, rs_b;    // root sections as bitsets over original ids
    Bitset critical_vertices;          // all critical and pre-critical vertices

    int num_a() const { return static_cast<int>(a_set.size()); }
    int num_b() const { return static_cast<int>(b_set.size()); }
    int pair_index(int ai, int bi) const { return ai * num_b() + bi; }
    const Path& path(int ai, int bi) const { return paths[pair_index(ai, bi)]; }
    bool on_path(int ai, int bi, int v) const;
};

// Preconditions: A,B disjoint and nonempty, ell >= 4, and every cross pair
// at distance in (ell, 2*ell-7]. Violations throw std::invalid_argument
// naming the offending pair.
PairContext build_pair_context(const Graph& g, const std::vector<int>& a_set,
                               const std::vector<int>& b_set, int ell, int d,
                               const EdgeOrder& order);

// Direct check of the independence definition: for every pair, the radius-ell
// balls at both critical vertices trace exactly {a,b} on A u B.
struct IndependenceReport {
    bool independent = true;
    std::pair<int, int> violating_pair{-1, -1};  // (ai, bi)
    std::vector<int> offending_trace;
};
IndependenceReport independence_check(const PairContext& ctx);

// Structural observations about a context built from an independent pair.
struct ContextAudit {
    bool criticals_in_rs_b = true;      // c_{ab} and c-_{ab} lie in RS(b)
    bool criticals_distinct = true;     // c_{ab} != c_{ab'} and c-_{ab} != c-_{ab'}
    bool leaving_edges_induced_matching = true;
    bool all_vertices_in_root_sections = true;
    int min_rs_distance_a = -1;  // min restricted distance between distinct RS(a); -1 if n/a
    int min_rs_distance_b = -1;
};
ContextAudit audit_context(const PairContext& ctx);

// ---------------------------------------------------------------------------
// Escapes
// ---------------------------------------------------------------------------

struct EscapeArc {
    int from_a, to_a;  // indices into a_set
    int b;             // index into b_set
    int u, v;          // original vertex ids: u in RS(from_a), v on P_{to_a, b}
    bool deep;         // u is neither critical nor pre-critical
};

struct EscapeAnalysis {
    std::vector<EscapeArc> arcs;
    std::vector<int> origin_root_section;  // per original vertex: a-index or -1
    std::vector<char> acyclic_per_b;       // full escape digraph of b has no circuit
    std::vector<char> escape_property_per_b;  // deep digraph is a transitive tournament
    bool acyclic = true;
    bool escape_property = true;
};

// Classifies every restricted edge and attributes each escape "from a to a'
// for b". Requires the context to come from an independent pair; attribution
// ambiguity (impossible for independent pairs) throws
// InternalInvariantViolation.
EscapeAnalysis escape_analysis(const PairContext& ctx);

// ---------------------------------------------------------------------------
// Jump paths
// ---------------------------------------------------------------------------

struct JumpPaths {
    int b = -1;                     // index into b_set
    std::vector<int> order;         // a-indices sorted by the order inherited from b
    std::vector<Path> jump_path;    // per a-index, original vertex ids
    std::vector<int> incoming_vertex;  // per a-index, -1 when none
    std::vector<std::pair<int, int>> rerouting_edge;  // per a-index, (-1,-1) when none
    std::vector<Path> free_section;    // per a-index
    std::vector<char> simple;          // the constructed walk is a path
};

// Builds the jump paths toward b_set[bi]. Requires the escape property for
// that b; an a-vertex with no incoming vertex keeps its minimum path.
JumpPaths jump_paths(const PairContext& ctx, const EscapeAnalysis& esc, int bi);

struct JumpPrivateParts {
    std::vector<JumpPaths> per_b;               // for every b
    std::vector<std::vector<int>> private_part;  // [ai * |B| + bi], sorted original ids
    std::vector<int> restriction_vertices;       // union of all jump path vertices
};

// Jump paths for every b plus, per pair, the vertices lying on that pair's
// jump path and no other. Requires the escape property to hold for every b.
JumpPrivateParts jump_private_parts(const PairContext& ctx, const EscapeAnalysis& esc);

struct JumpClaimCheck {
    bool all_through_critical = true;  // every short a-b path meets c_{ab}
    bool all_through_private = true;   // ... and the jump private part JPP(a,b)
    long paths_enumerated = 0;
    bool capped = false;  // enumeration hit the cap; claims not decided
};

// Exhaustively enumerates simple a->b paths of length <= 2*ell-3 in the
// restriction to jump-path vertices and checks the two passage claims.
// Instances exceeding `path_cap` are reported as capped, never silently
// passed.
JumpClaimCheck check_jump_claims(const PairContext& ctx, const JumpPrivateParts& jpp,
                                 long path_cap = 1000000);

// ---------------------------------------------------------------------------
// Disconnecting families and shattering certificates
// ---------------------------------------------------------------------------

struct DisconnectingFamily {
    std::vector<int> a_set, b_set;
    int ell = 0;
    std::vector<std::vector<int>> sets;  // [ai * |B| + bi], disjoint from A u B

    int pair_index(int ai, int bi) const { return ai * static_cast<int>(b_set.size()) + bi; }
};

struct DisconnectReport {
    bool ok = true;
    std::pair<int, int> violating_pair{-1, -1};  // (ai, bi)
    int failed_check = 0;                        // 1 or 2
};

// Two checks per pair: (1) d(a,b) > ell once S_{a,b} is deleted;
// (2) d(a,b) <= ell once all the other sets are deleted. Distance is
// monotone nondecreasing under vertex deletion, so (1) extends to every
// collection containing S_{a,b} and (2) to every collection avoiding it;
// together they are equivalent to the subset-quantified definition.
DisconnectReport verify_disconnecting(const Graph& g, const DisconnectingFamily& fam);

struct ShatterCertificate {
    bool ok = false;
    std::vector<int> deleted;                 // the union of the selected sets
    std::vector<std::vector<int>> subset_of_a;  // per b: the subset A_b it encodes
    std::vector<std::vector<int>> trace;        // per b: verified ball trace on A
    std::pair<int, int> failed_b{-1, -1};       // (b index, unused) when !ok
};

// Builds the one-global-deletion certificate that A is shattered by
// radius-ell balls centered at B in g minus the union: b_t is assigned the
// subset A_t given by the bits of t, the sets S_{a,b_t} with a in A_t are
// deleted, and every trace equation B(b,ell) n A = A \ A_b is re-verified by
// BFS. Requires |B| = 2^|A| and a family that passes verify_disconnecting.
ShatterCertificate shatter_certificate(const Graph& g, const DisconnectingFamily& fam);

// JSON round-trips for families and certificates.
std::string disconnecting_family_to_json(const DisconnectingFamily& fam);
DisconnectingFamily disconnecting_family_from_json(const std::string& text);
std::string shatter_certificate_to_json(const ShatterCertificate& cert);

// ---------------------------------------------------------------------------
// Independent subpair extraction and the equidistant pipeline
// ---------------------------------------------------------------------------

// Interference matrix m(a,b) = (I(c_ab) u I(c_ba)) \ {a,b} with
// I(u) = B(u,ell) n (A u B), built from the critical vertices of the
// lex-min paths.
InterferenceMatrix critical_interference_matrix(const Graph& g, const std::vector<int>& a_set,
                                                const std::vector<int>& b_set, int ell,
                                                const EdgeOrder& order);

struct IndependentSubpairResult {
    SubmatrixStatus status = SubmatrixStatus::none;
    std::vector<int> a_prime, b_prime;  // vertex ids
};

// Extracts an independent subpair of size p from a d-sparse, d-localized
// pair by finding a proper submatrix of the critical interference matrix.
// Precondition violations throw std::invalid_argument; the output pair is
// re-verified against the independence definition.
IndependentSubpairResult independent_subpair(const Graph& g, const std::vector<int>& a_set,
                                             const std::vector<int>& b_set, int ell, int d, int p,
                                             const EdgeOrder& order);

struct EquidistantResult {
    bool ok = false;
    std::string failure;
    std::vector<int> a_prime, b_prime;   // original vertex ids
    DisconnectingFamily family;          // midvertex sets, original vertex ids
    InducedSubgraph restriction;         // A' x B' path restriction the family lives in
    DisconnectReport verification;
};

// The equal-distance pipeline: split X (pairwise at distance exactly r, no
// vertex in q balls of radius ceil(r/2)) into A,B; restrict to the AB-paths;
// build the ball-interference matrix; extract the largest proper submatrix;
// return the midvertex family, verified r-disconnecting for (A',B') in the
// A'B'-path restriction.
EquidistantResult equidistant_disconnecting(const Graph& g, const std::vector<int>& x, int r,
                                            int q, const EdgeOrder& order);

}  // namespace ballvc
