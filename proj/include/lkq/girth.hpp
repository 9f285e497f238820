#pragma once

#include "lkq/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lkq {

struct GirthStats {
    uint64_t nodes_visited = 0;
    int radius_a = 0, radius_b = 0;
    double elapsed_ms = 0.0;
};

// Result of a girth computation. When `girth` is unset the search was cut
// off by depth or memory and `lower_bound` carries everything we know; a
// budget cutoff never guesses.
struct GirthResult {
    GraphParams params;
    std::optional<int> girth;
    int lower_bound = 0; // even, >= k+4, valid even when exact
    std::optional<std::vector<Vertex>> witness_cycle;
    std::optional<CircuitCertificate> witness_cert;
    std::string method; // "bfs" | "full-bfs" | "type-search"
    GirthStats stats;
    bool budget_exhausted = false;
};

// Girth as 1 + (shortest path between the two all-zero root vertices that
// avoids the root edge), found by bidirectional layered BFS. Correct under
// edge-transitivity (every edge lies on a shortest cycle); girth_full_bfs
// guards that assumption at small scale.
GirthResult girth_bfs(const GraphParams& g, int max_depth = 64,
                      uint64_t memory_budget_bytes = uint64_t(8) << 30, int threads = 1);

// Girth without the edge-transitivity shortcut: minimum over BFS from every
// vertex. Guarded to q^k <= 10^4 per side.
GirthResult girth_full_bfs(const GraphParams& g);

enum class TypeSearchStrategy { Exhaustive, GraphDfs, Seeded };

struct TypeSearchResult {
    std::optional<WalkType> type;
    bool space_exhausted = true; // false when the node budget cut the search
    uint64_t candidates_tried = 0;
};

// A circuit type of length 2i, or none. Exhaustive enumerates increment
// tuples with the two forced last entries; GraphDfs walks the graph pruning
// repeated vertices; Seeded tries the geometric family
// (1,1,b,b,...,b^{i-1},b^{i-1}) over all units b first, then falls back to
// the exhaustive scan.
TypeSearchResult find_circuit_type(const GraphParams& g, int i, TypeSearchStrategy strategy,
                                   uint64_t budget = uint64_t(5'000'000));

// Every circuit type of length 2i within budget (exhaustive order).
std::vector<WalkType> find_all_circuit_types(const GraphParams& g, int i,
                                             uint64_t budget = uint64_t(50'000'000));

struct ScanRow {
    int k = 0;
    long long q = 0;
    std::optional<int> girth;
    int lower_bound = 0;
    bool in_scope = false;      // odd k and q >= 4
    std::string status;         // "satisfied" | "violated" | "undecided"
};

// Empirical check of the k+5 girth conjecture over a (k, q) grid.
std::vector<ScanRow> scan_conjecture(const std::vector<long long>& qs, const std::vector<int>& ks,
                                     int max_depth = 64,
                                     uint64_t memory_budget_bytes = uint64_t(8) << 30);

std::string scan_csv(const std::vector<ScanRow>& rows);

} // namespace lkq
