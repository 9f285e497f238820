#pragma once

#include "lkq/field.hpp"

#include <optional>
#include <string>

namespace lkq {

enum class Side : uint8_t { L, R };

// Parameters of the bipartite graph Lambda(k, q): vertices are
// (k+1)-vectors over GF(q), all arithmetic implicit (the graph is never
// stored; it has q^k vertices per side).
struct GraphParams {
    int k = 2;
    std::shared_ptr<const Field> field;

    // k = 1 is an alias for k = 2 (the two graphs are isomorphic by
    // convention); anything below 1 is rejected.
    static GraphParams make(int k, std::shared_ptr<const Field> field);

    int q() const { return field->q(); }

    // q^k as the key-space size; nullopt when it does not fit in 62 bits.
    std::optional<uint64_t> key_space() const;
};

// One vertex. Left vertices satisfy coords[1] == coords[2]; right vertices
// have coords[1] == 0. Either side has exactly k free coordinates.
struct Vertex {
    Side side = Side::L;
    std::vector<uint16_t> coords; // length k+1, element indices

    static Vertex zero(const GraphParams& g, Side side);

    // Canonical integer over the free coordinates, a bijection with [0, q^k).
    // Requires key_space() to be available.
    uint64_t key(const GraphParams& g) const;
    static Vertex from_key(const GraphParams& g, Side side, uint64_t key);
    static void from_key_into(const GraphParams& g, Side side, uint64_t key, Vertex& out);

    bool operator==(const Vertex& o) const { return side == o.side && coords == o.coords; }
};

// Increment tuple of a rooted backtrackless walk: u_i = x_{i+1} - x_i over
// the left colors, v_i over the right colors. All entries nonzero.
struct WalkType {
    std::vector<uint16_t> u, v; // element indices; |v| == |u| or |u| - 1

    int half_length() const { return int(u.size()); }
};

struct CircuitChecks {
    bool coords_zero = false;
    bool v_sum_zero = false;
    bool vertices_distinct = false;
};

// A checked circuit type with provenance. coords_zero and v_sum_zero must
// both hold for any certificate; vertices_distinct upgrades it from a
// closed backtrackless walk (upper bound on girth) to a genuine cycle.
struct CircuitCertificate {
    int k = 0;
    std::shared_ptr<const Field> field;
    WalkType type;
    int length = 0; // 2 * |u|
    CircuitChecks checks;
    std::string provenance;

    GraphParams params() const { return GraphParams::make(k, field); }
};

// The unique right neighbor of l whose first coordinate is r0, solved from
// the adjacency equations in increasing coordinate order.
Vertex neighbor_of_left(const GraphParams& g, const Vertex& l, uint16_t r0);

// The unique left neighbor of r with first coordinate l0.
Vertex neighbor_of_right(const GraphParams& g, const Vertex& r, uint16_t l0);

// In-place variants for search loops; `out` is reused across calls and must
// not alias the input vertex.
void neighbor_of_left_into(const GraphParams& g, const Vertex& l, uint16_t r0, Vertex& out);
void neighbor_of_right_into(const GraphParams& g, const Vertex& r, uint16_t l0, Vertex& out);

// Checks all k-1 adjacency equations
//   l_i + r_i = r_0 l_{i-2}  (i = 2,3 mod 4)
//   l_i + r_i = l_0 r_{i-2}  (i = 0,1 mod 4)
bool is_adjacent(const GraphParams& g, const Vertex& l, const Vertex& r);

// The walk rooted at the two all-zero vertices with the given increments:
// [l1] <r1> [l2] <r2> ... Produces 2 + |u| + |v| vertices.
std::vector<Vertex> walk_simulate(const GraphParams& g, const WalkType& wt);

// Coordinates of the final left vertex [l^{i+1}] of a type with
// |u| == |v| == i, evaluated purely from rho polynomials (no graph walk).
std::vector<uint16_t> lemma1_coords(const GraphParams& g, const WalkType& wt);

// Full flag evaluation for a candidate type (|u| == |v|).
CircuitChecks evaluate_circuit_type(const GraphParams& g, const WalkType& wt);

// Certificate when the type closes a circuit of length 2|u| (and, if
// require_distinct, the 2|u| walk vertices are pairwise distinct); nullopt
// otherwise.
std::optional<CircuitCertificate> is_circuit_type(const GraphParams& g, const WalkType& wt,
                                                  bool require_distinct,
                                                  const std::string& provenance = "type-search");

} // namespace lkq
