#include "lkq/graph.hpp"
#include "lkq/rho.hpp"

#include <set>
#include <stdexcept>

namespace lkq {

GraphParams GraphParams::make(int k, std::shared_ptr<const Field> field) {
    if (!field)
        throw std::invalid_argument("graph needs a field");
    if (k < 1)
        throw std::invalid_argument("k must be >= 1");
    GraphParams g;
    g.k = (k == 1) ? 2 : k;
    g.field = std::move(field);
    return g;
}

std::optional<uint64_t> GraphParams::key_space() const {
    uint64_t space = 1;
    for (int i = 0; i < k; ++i) {
        if (space > (uint64_t(1) << 62) / uint64_t(q())) return std::nullopt;
        space *= uint64_t(q());
    }
    return space;
}

Vertex Vertex::zero(const GraphParams& g, Side side) {
    Vertex v;
    v.side = side;
    v.coords.assign(size_t(g.k) + 1, 0);
    return v;
}

namespace {

void check_side(const Vertex& v, Side want, const char* who) {
    if (v.side != want)
        throw std::invalid_argument(std::string(who) + ": vertex is on the wrong side");
}

void check_shape(const GraphParams& g, const Vertex& v) {
    if (int(v.coords.size()) != g.k + 1)
        throw std::invalid_argument("vertex has wrong coordinate count");
}

} // namespace

uint64_t Vertex::key(const GraphParams& g) const {
    check_shape(g, *this);
    if (!g.key_space())
        throw std::overflow_error("q^k does not fit the key space");
    const uint64_t q = uint64_t(g.q());
    uint64_t key = 0, w = 1;
    // free coordinates: L skips index 2 (l_2 == l_1), R skips index 1 (== 0)
    for (int i = 0; i <= g.k; ++i) {
        if (side == Side::L && i == 2) continue;
        if (side == Side::R && i == 1) continue;
        key += uint64_t(coords[size_t(i)]) * w;
        w *= q;
    }
    return key;
}

void Vertex::from_key_into(const GraphParams& g, Side side, uint64_t key, Vertex& out) {
    const uint64_t q = uint64_t(g.q());
    out.side = side;
    out.coords.resize(size_t(g.k) + 1);
    for (int i = 0; i <= g.k; ++i) {
        if (side == Side::L && i == 2) continue;
        if (side == Side::R && i == 1) continue;
        out.coords[size_t(i)] = uint16_t(key % q);
        key /= q;
    }
    if (side == Side::L)
        out.coords[2] = out.coords[1];
    else
        out.coords[1] = 0;
}

Vertex Vertex::from_key(const GraphParams& g, Side side, uint64_t key) {
    Vertex v;
    from_key_into(g, side, key, v);
    return v;
}

void neighbor_of_left_into(const GraphParams& g, const Vertex& l, uint16_t r0, Vertex& out) {
    check_side(l, Side::L, "neighbor_of_left");
    check_shape(g, l);
    const Field& f = *g.field;
    out.side = Side::R;
    out.coords.resize(size_t(g.k) + 1);
    out.coords[0] = r0;
    out.coords[1] = 0;
    for (int i = 2; i <= g.k; ++i) {
        int rem = i % 4;
        uint16_t rhs = (rem == 2 || rem == 3)
                           ? f.muli(r0, l.coords[size_t(i) - 2])
                           : f.muli(l.coords[0], out.coords[size_t(i) - 2]);
        out.coords[size_t(i)] = f.subi(rhs, l.coords[size_t(i)]);
    }
}

Vertex neighbor_of_left(const GraphParams& g, const Vertex& l, uint16_t r0) {
    Vertex r;
    neighbor_of_left_into(g, l, r0, r);
    return r;
}

void neighbor_of_right_into(const GraphParams& g, const Vertex& r, uint16_t l0, Vertex& out) {
    check_side(r, Side::R, "neighbor_of_right");
    check_shape(g, r);
    const Field& f = *g.field;
    out.side = Side::L;
    out.coords.resize(size_t(g.k) + 1);
    out.coords[0] = l0;
    // l_2 first (it also fixes l_1), then the rest in increasing order.
    out.coords[2] = f.subi(f.muli(r.coords[0], l0), r.coords[2]);
    out.coords[1] = out.coords[2];
    for (int i = 3; i <= g.k; ++i) {
        int rem = i % 4;
        uint16_t rhs = (rem == 2 || rem == 3)
                           ? f.muli(r.coords[0], out.coords[size_t(i) - 2])
                           : f.muli(l0, r.coords[size_t(i) - 2]);
        out.coords[size_t(i)] = f.subi(rhs, r.coords[size_t(i)]);
    }
}

Vertex neighbor_of_right(const GraphParams& g, const Vertex& r, uint16_t l0) {
    Vertex l;
    neighbor_of_right_into(g, r, l0, l);
    return l;
}

bool is_adjacent(const GraphParams& g, const Vertex& l, const Vertex& r) {
    if (l.side == r.side)
        throw std::invalid_argument("is_adjacent: vertices are on the same side");
    if (l.side == Side::R) return is_adjacent(g, r, l);
    check_shape(g, l);
    check_shape(g, r);
    const Field& f = *g.field;
    for (int i = 2; i <= g.k; ++i) {
        int rem = i % 4;
        uint16_t rhs = (rem == 2 || rem == 3)
                           ? f.muli(r.coords[0], l.coords[size_t(i) - 2])
                           : f.muli(l.coords[0], r.coords[size_t(i) - 2]);
        if (f.addi(l.coords[size_t(i)], r.coords[size_t(i)]) != rhs) return false;
    }
    return true;
}

namespace {

void check_type(const WalkType& wt) {
    if (wt.v.size() != wt.u.size() && wt.v.size() + 1 != wt.u.size())
        throw std::invalid_argument("walk type needs |v| == |u| or |u|-1");
    for (uint16_t e : wt.u)
        if (e == 0) throw std::invalid_argument("zero u increment in walk type");
    for (uint16_t e : wt.v)
        if (e == 0) throw std::invalid_argument("zero v increment in walk type");
}

} // namespace

std::vector<Vertex> walk_simulate(const GraphParams& g, const WalkType& wt) {
    check_type(wt);
    const Field& f = *g.field;
    std::vector<Vertex> walk;
    walk.reserve(2 + wt.u.size() + wt.v.size());
    Vertex l = Vertex::zero(g, Side::L);
    Vertex r = Vertex::zero(g, Side::R);
    walk.push_back(l);
    walk.push_back(r);
    uint16_t x = 0, y = 0;
    for (size_t j = 0; j < wt.u.size(); ++j) {
        x = f.addi(x, wt.u[j]);
        l = neighbor_of_right(g, r, x);
        walk.push_back(l);
        if (j < wt.v.size()) {
            y = f.addi(y, wt.v[j]);
            r = neighbor_of_left(g, l, y);
            walk.push_back(r);
        }
    }
    return walk;
}

std::vector<uint16_t> lemma1_coords(const GraphParams& g, const WalkType& wt) {
    check_type(wt);
    const size_t i = wt.u.size();
    if (i < 1 || wt.v.size() != i)
        throw std::invalid_argument("lemma1_coords needs |u| == |v| >= 1");
    const Field& f = *g.field;

    // The four rho argument sequences of the closed form.
    std::vector<uint16_t> a_seq, b_seq, c_seq, d_seq;
    for (size_t j = 0; j < i; ++j) {
        a_seq.push_back(wt.u[j]);
        if (j + 1 < i) a_seq.push_back(wt.v[j]);
        c_seq.push_back(wt.u[j]);
        c_seq.push_back(wt.v[j]);
        if (j + 1 < i) { b_seq.push_back(wt.v[j]); b_seq.push_back(wt.u[j + 1]); }
    }
    d_seq = b_seq;
    d_seq.push_back(wt.v[i - 1]);

    auto a_all = detail::rho_all(f, a_seq);
    auto b_all = detail::rho_all(f, b_seq);
    auto c_all = detail::rho_all(f, c_seq);
    auto d_all = detail::rho_all(f, d_seq);

    uint16_t y = 0; // y_{i+1}
    for (uint16_t e : wt.v) y = f.addi(y, e);

    std::vector<uint16_t> coords(size_t(g.k) + 1, 0);
    const int ii = int(i);
    for (int idx = 0; idx <= g.k; ++idx) {
        int j = idx / 4;
        switch (idx % 4) {
        case 0:
            coords[size_t(idx)] = detail::rho_from_all(a_all, a_seq.size(), ii - j - 1);
            break;
        case 1:
            coords[size_t(idx)] = detail::rho_from_all(b_all, b_seq.size(), ii - j - 2);
            break;
        case 2:
            coords[size_t(idx)] = f.subi(f.muli(y, coords[size_t(idx) - 2]),
                                         detail::rho_from_all(c_all, c_seq.size(), ii - j - 1));
            break;
        default:
            coords[size_t(idx)] = f.subi(f.muli(y, coords[size_t(idx) - 2]),
                                         detail::rho_from_all(d_all, d_seq.size(), ii - j - 2));
            break;
        }
    }
    return coords;
}

CircuitChecks evaluate_circuit_type(const GraphParams& g, const WalkType& wt) {
    const Field& f = *g.field;
    CircuitChecks checks;

    auto coords = lemma1_coords(g, wt);
    checks.coords_zero = true;
    for (uint16_t c : coords)
        if (c != 0) { checks.coords_zero = false; break; }

    uint16_t vs = 0;
    for (uint16_t e : wt.v) vs = f.addi(vs, e);
    checks.v_sum_zero = (vs == 0);

    if (checks.coords_zero && checks.v_sum_zero) {
        // Re-verify as an actual walk: first 2i vertices, adjacency edge by
        // edge, pairwise distinctness.
        auto walk = walk_simulate(g, wt);
        const size_t len = 2 * wt.u.size();
        std::set<std::pair<uint8_t, std::vector<uint16_t>>> seen;
        bool distinct = true;
        for (size_t j = 0; j < len; ++j)
            if (!seen.insert({uint8_t(walk[j].side), walk[j].coords}).second) distinct = false;
        for (size_t j = 0; j + 1 < len; ++j) {
            const Vertex& a = walk[j].side == Side::L ? walk[j] : walk[j + 1];
            const Vertex& b = walk[j].side == Side::L ? walk[j + 1] : walk[j];
            if (!is_adjacent(g, a, b))
                throw std::logic_error("closed type does not simulate to a walk"); // unreachable
        }
        // closing edge: last right vertex back to the root
        if (!is_adjacent(g, walk[0], walk[len - 1]))
            throw std::logic_error("closed type does not close an edge"); // unreachable
        checks.vertices_distinct = distinct;
    }
    return checks;
}

std::optional<CircuitCertificate> is_circuit_type(const GraphParams& g, const WalkType& wt,
                                                  bool require_distinct,
                                                  const std::string& provenance) {
    if (wt.u.size() != wt.v.size() || wt.u.size() < 2)
        throw std::invalid_argument("circuit type needs |u| == |v| >= 2");
    CircuitChecks checks = evaluate_circuit_type(g, wt);
    if (!checks.coords_zero || !checks.v_sum_zero) return std::nullopt;
    if (require_distinct && !checks.vertices_distinct) return std::nullopt;
    CircuitCertificate cert;
    cert.k = g.k;
    cert.field = g.field;
    cert.type = wt;
    cert.length = 2 * int(wt.u.size());
    cert.checks = checks;
    cert.provenance = provenance;
    return cert;
}

} // namespace lkq
