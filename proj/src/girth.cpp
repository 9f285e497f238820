#include "lkq/girth.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace lkq {

namespace {

int even_ceil(int v) { return v % 2 == 0 ? v : v + 1; }

// node id packs (vertex key, side); roots are id 0 (all-zero L) and 1.
uint64_t node_id(uint64_t key, Side s) { return (key << 1) | uint64_t(s == Side::R); }
Side node_side(uint64_t id) { return (id & 1) ? Side::R : Side::L; }
uint64_t node_key(uint64_t id) { return id >> 1; }

// node -> (dist, parent) store for the BFS trees. Open addressing with
// linear probing; node ids are below 2^63 so ~0 marks an empty slot. The
// map is only ever probed by key (no iteration), so results cannot depend
// on hash order.
class NodeMap {
public:
    struct Slot {
        uint64_t key;
        uint64_t parent;
        uint32_t dist;
    };

    NodeMap() : slots_(1024, Slot{kEmpty, 0, 0}) {}

    size_t size() const { return count_; }

    const Slot* find(uint64_t key) const {
        size_t mask = slots_.size() - 1;
        for (size_t i = mix(key) & mask;; i = (i + 1) & mask) {
            if (slots_[i].key == key) return &slots_[i];
            if (slots_[i].key == kEmpty) return nullptr;
        }
    }

    // inserts when absent; false when the key was already present
    bool try_emplace(uint64_t key, uint32_t dist, uint64_t parent) {
        if (2 * (count_ + 1) > slots_.size()) grow();
        size_t mask = slots_.size() - 1;
        for (size_t i = mix(key) & mask;; i = (i + 1) & mask) {
            if (slots_[i].key == key) return false;
            if (slots_[i].key == kEmpty) {
                slots_[i] = Slot{key, parent, dist};
                ++count_;
                return true;
            }
        }
    }

    void reserve(size_t n) {
        while (2 * n > slots_.size()) grow();
    }

    const Slot& at(uint64_t key) const {
        const Slot* s = find(key);
        if (!s) throw std::logic_error("node not in BFS tree");
        return *s;
    }

private:
    static constexpr uint64_t kEmpty = ~uint64_t(0);

    static uint64_t mix(uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    void grow() {
        std::vector<Slot> old = std::move(slots_);
        slots_.assign(old.size() * 2, Slot{kEmpty, 0, 0});
        size_t mask = slots_.size() - 1;
        for (const Slot& s : old) {
            if (s.key == kEmpty) continue;
            for (size_t i = mix(s.key) & mask;; i = (i + 1) & mask) {
                if (slots_[i].key == kEmpty) {
                    slots_[i] = s;
                    break;
                }
            }
        }
    }

    std::vector<Slot> slots_;
    size_t count_ = 0;
};

struct BfsTree {
    NodeMap visited; // parent of the root is the root itself
    std::vector<uint64_t> frontier;
    int radius = 0;
};

std::vector<uint64_t> neighbors_of(const GraphParams& g, uint64_t id) {
    Vertex v = Vertex::from_key(g, node_side(id), node_key(id));
    std::vector<uint64_t> out;
    out.reserve(size_t(g.q()));
    for (int c = 0; c < g.q(); ++c) {
        Vertex n = (v.side == Side::L) ? neighbor_of_left(g, v, uint16_t(c))
                                       : neighbor_of_right(g, v, uint16_t(c));
        out.push_back(node_id(n.key(g), n.side));
    }
    return out;
}

// Type of the circuit [root_l] <root_r> [p_{d-1}] <p_{d-2}> ... <p_1>, read
// off a root-to-root path p_0 = root_l, ..., p_d = root_r.
WalkType type_from_cycle(const GraphParams& g, const std::vector<Vertex>& path) {
    std::vector<Vertex> walk;
    walk.push_back(path.front());
    for (size_t j = path.size(); j-- > 1;) walk.push_back(path[j]);
    const Field& f = *g.field;
    WalkType wt;
    uint16_t x = 0, y = 0;
    for (size_t j = 2; j < walk.size(); ++j) {
        uint16_t c = walk[j].coords[0];
        if (walk[j].side == Side::L) {
            wt.u.push_back(f.subi(c, x));
            x = c;
        } else {
            wt.v.push_back(f.subi(c, y));
            y = c;
        }
    }
    // wrap-around increments back to the all-zero pair
    wt.u.push_back(f.negi(x));
    wt.v.push_back(f.negi(y));
    return wt;
}

void finalize_witness(const GraphParams& g, GirthResult& res, const std::vector<Vertex>& cycle) {
    // cycle is a closed vertex sequence starting at the all-zero left root
    // followed by ... and ending adjacent to it; re-verify before attaching.
    const size_t n = cycle.size();
    for (size_t j = 0; j < n; ++j) {
        const Vertex& a = cycle[j];
        const Vertex& b = cycle[(j + 1) % n];
        const Vertex& l = a.side == Side::L ? a : b;
        const Vertex& r = a.side == Side::L ? b : a;
        if (l.side != Side::L || r.side != Side::R || !is_adjacent(g, l, r))
            throw std::logic_error("witness cycle fails adjacency re-verification");
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (cycle[i] == cycle[j])
                throw std::logic_error("witness cycle repeats a vertex");
    res.witness_cycle = cycle;
}

void check_result_invariants(const GirthResult& res) {
    int floor_bound = even_ceil(res.params.k + 4);
    if (res.girth) {
        if (*res.girth % 2 != 0)
            throw std::logic_error("girth of a bipartite graph must be even");
        if (*res.girth < floor_bound)
            throw std::logic_error("girth below the k+4 lower bound");
    }
}

} // namespace

GirthResult girth_bfs(const GraphParams& g, int max_depth, uint64_t memory_budget_bytes,
                      int threads) {
    auto t0 = std::chrono::steady_clock::now();
    if (!g.key_space())
        throw std::invalid_argument("q^k too large for BFS keys");
    if (threads < 1) threads = 1;

    GirthResult res;
    res.params = g;
    res.method = "bfs";

    const uint64_t root_a = node_id(0, Side::L);
    const uint64_t root_b = node_id(0, Side::R);

    BfsTree ta, tb;
    ta.visited.try_emplace(root_a, 0, root_a);
    ta.frontier = {root_a};
    tb.visited.try_emplace(root_b, 0, root_b);
    tb.frontier = {root_b};

    uint64_t best = UINT64_MAX; // shortest root-to-root path avoiding the root edge
    uint64_t meet = 0;

    // ~48 bytes per open-addressing entry (24-byte slots at load <= 1/2)
    const uint64_t per_entry = 48;

    // appends (child, parent) pairs for one frontier slice, reusing scratch
    // vertices so the inner loop does no allocation
    auto generate_slice = [&](const std::vector<uint64_t>& frontier, size_t lo, size_t hi,
                              uint64_t own_root, uint64_t other_root,
                              std::vector<std::pair<uint64_t, uint64_t>>& out) {
        Vertex v, n;
        for (size_t i = lo; i < hi; ++i) {
            uint64_t id = frontier[i];
            Vertex::from_key_into(g, node_side(id), node_key(id), v);
            for (int c = 0; c < g.q(); ++c) {
                if (v.side == Side::L)
                    neighbor_of_left_into(g, v, uint16_t(c), n);
                else
                    neighbor_of_right_into(g, v, uint16_t(c), n);
                uint64_t nb = node_id(n.key(g), n.side);
                if (id == own_root && nb == other_root) continue; // root edge
                out.emplace_back(nb, id);
            }
        }
    };

    auto expand = [&](BfsTree& own, BfsTree& other, uint64_t own_root, uint64_t other_root) {
        std::vector<std::pair<uint64_t, uint64_t>> generated; // (child, parent)
        generated.reserve(own.frontier.size() * size_t(g.q()));
        if (threads == 1 || own.frontier.size() < 256) {
            generate_slice(own.frontier, 0, own.frontier.size(), own_root, other_root, generated);
        } else {
            // chunked expansion merged in order: bit-identical to sequential
            size_t nchunks = size_t(threads);
            std::vector<std::vector<std::pair<uint64_t, uint64_t>>> bufs(nchunks);
            std::vector<std::thread> workers;
            size_t per = (own.frontier.size() + nchunks - 1) / nchunks;
            for (size_t c = 0; c < nchunks; ++c) {
                size_t lo = c * per, hi = std::min(own.frontier.size(), lo + per);
                if (lo >= hi) break;
                workers.emplace_back([&, lo, hi, c]() {
                    generate_slice(own.frontier, lo, hi, own_root, other_root, bufs[c]);
                });
            }
            for (auto& w : workers) w.join();
            for (auto& b : bufs)
                generated.insert(generated.end(), b.begin(), b.end());
        }

        std::vector<uint64_t> next;
        next.reserve(generated.size());
        own.visited.reserve(own.visited.size() + generated.size());
        uint32_t ndist = uint32_t(own.radius) + 1;
        for (auto [child, parent] : generated) {
            if (!own.visited.try_emplace(child, ndist, parent)) continue;
            next.push_back(child);
            if (const NodeMap::Slot* hit = other.visited.find(child)) {
                uint64_t cand = uint64_t(ndist) + hit->dist;
                if (cand < best) { best = cand; meet = child; }
            }
        }
        own.frontier = std::move(next);
        own.radius += 1;
    };

    bool out_of_memory = false;
    while (!ta.frontier.empty() && !tb.frontier.empty()) {
        uint64_t explored = uint64_t(ta.radius) + uint64_t(tb.radius);
        if (best <= explored) break;                       // best is final
        if (explored >= uint64_t(max_depth)) break;        // depth budget
        if ((ta.visited.size() + tb.visited.size()) * per_entry > memory_budget_bytes) {
            out_of_memory = true;
            break;
        }
        if (ta.frontier.size() <= tb.frontier.size())
            expand(ta, tb, root_a, root_b);
        else
            expand(tb, ta, root_b, root_a);
    }

    res.stats.nodes_visited = ta.visited.size() + tb.visited.size();
    res.stats.radius_a = ta.radius;
    res.stats.radius_b = tb.radius;
    res.budget_exhausted = out_of_memory;

    uint64_t explored = uint64_t(ta.radius) + uint64_t(tb.radius);
    // Exact either when the radii cover best or when one tree exhausted its
    // whole component (its distances are then final).
    bool exact = best != UINT64_MAX &&
                 (best <= explored || ta.frontier.empty() || tb.frontier.empty());
    if (exact) {
        res.girth = int(best) + 1;
        res.lower_bound = int(best) + 1;
        // path root_a .. meet .. root_b
        std::vector<Vertex> path;
        std::vector<uint64_t> up;
        for (uint64_t id = meet;; id = ta.visited.at(id).parent) {
            up.push_back(id);
            if (id == root_a) break;
        }
        std::reverse(up.begin(), up.end()); // root_a .. meet
        for (uint64_t id = meet; id != root_b;) {
            id = tb.visited.at(id).parent;
            up.push_back(id);
        }
        for (uint64_t id : up) path.push_back(Vertex::from_key(g, node_side(id), node_key(id)));
        finalize_witness(g, res, path);
        WalkType wt = type_from_cycle(g, path);
        auto cert = is_circuit_type(g, wt, /*require_distinct=*/true, "bfs");
        if (!cert)
            throw std::logic_error("BFS witness type fails the closed-form checker");
        res.witness_cert = *cert;
    } else {
        // no cycle through the root edge within the explored radius
        res.girth = std::nullopt;
        res.lower_bound = std::max(even_ceil(g.k + 4), even_ceil(int(explored) + 2));
        if (!out_of_memory && (ta.frontier.empty() || tb.frontier.empty()) &&
            best == UINT64_MAX) {
            // component exhausted without closing a cycle: no bound beyond
            // exploration is claimed, but flag it loudly
            res.method = "bfs(exhausted-component)";
        }
        res.budget_exhausted = true;
    }

    res.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    check_result_invariants(res);
    return res;
}

GirthResult girth_full_bfs(const GraphParams& g) {
    auto t0 = std::chrono::steady_clock::now();
    auto space = g.key_space();
    if (!space || *space > 10'000)
        throw std::invalid_argument("girth_full_bfs is guarded to q^k <= 10^4 per side");
    const uint64_t side_n = *space;
    const uint64_t total = 2 * side_n;

    GirthResult res;
    res.params = g;
    res.method = "full-bfs";

    // precompute adjacency once; q edges per vertex
    std::vector<std::vector<uint64_t>> adj(total);
    for (uint64_t id = 0; id < total; ++id) adj[id] = neighbors_of(g, id);

    uint64_t best = UINT64_MAX;
    uint64_t bx = 0, by = 0, bs = 0;

    std::vector<int32_t> dist(total);
    std::vector<int64_t> parent(total);
    std::vector<uint64_t> queue;
    queue.reserve(total);
    for (uint64_t s = 0; s < total; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        queue.clear();
        queue.push_back(s);
        dist[s] = 0;
        parent[s] = -1;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            uint64_t x = queue[qi];
            if (best != UINT64_MAX && uint64_t(2 * dist[x]) >= best) continue;
            for (uint64_t y : adj[x]) {
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    parent[y] = int64_t(x);
                    queue.push_back(y);
                } else if (int64_t(y) != parent[x]) {
                    uint64_t cand = uint64_t(dist[x]) + uint64_t(dist[y]) + 1;
                    if (cand < best) { best = cand; bx = x; by = y; bs = s; }
                }
            }
        }
    }

    if (best == UINT64_MAX)
        throw std::logic_error("graph is a forest; no girth"); // never for these graphs

    res.girth = int(best);
    res.lower_bound = int(best);

    // rebuild the winning BFS and assemble the cycle through (bx, by)
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    queue.push_back(bs);
    dist[bs] = 0;
    parent[bs] = -1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        uint64_t x = queue[qi];
        for (uint64_t y : adj[x]) {
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                parent[y] = int64_t(x);
                queue.push_back(y);
            }
        }
    }
    auto chain = [&](uint64_t from) {
        std::vector<uint64_t> c;
        for (int64_t id = int64_t(from); id != -1; id = parent[id]) c.push_back(uint64_t(id));
        return c; // from .. root
    };
    std::vector<uint64_t> cx = chain(bx), cy = chain(by);
    while (cx.size() > 1 && cy.size() > 1 && cx[cx.size() - 2] == cy[cy.size() - 2]) {
        cx.pop_back();
        cy.pop_back();
    }
    // cycle: bx .. lca .. by, then edge (by, bx)
    std::vector<uint64_t> ids(cx.begin(), cx.end());
    for (size_t i = cy.size() - 1; i-- > 0;) ids.push_back(cy[i]);
    std::vector<Vertex> cycle;
    for (uint64_t id : ids) cycle.push_back(Vertex::from_key(g, node_side(id), node_key(id)));
    finalize_witness(g, res, cycle);

    res.stats.nodes_visited = total;
    res.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    check_result_invariants(res);
    return res;
}

namespace {

// Enumerates types with both final increments forced by the zero-sum
// constraints; calls fn on each surviving candidate until it returns true.
// Returns false when the budget ran out first.
template <typename Fn>
bool enumerate_types(const GraphParams& g, int i, uint64_t budget, uint64_t& tried, Fn&& fn) {
    const Field& f = *g.field;
    const int nu = g.q() - 1;
    if (i < 2) return true;
    std::vector<uint16_t> u(size_t(i), 0), v(size_t(i), 0);
    // odometer over the 2(i-1) free slots, values 1..q-1
    std::vector<int> slots(size_t(2 * (i - 1)), 1);
    while (true) {
        if (++tried > budget) return false;
        uint16_t su = 0, sv = 0;
        for (int j = 0; j < i - 1; ++j) {
            u[size_t(j)] = uint16_t(slots[size_t(j)]);
            v[size_t(j)] = uint16_t(slots[size_t(i - 1 + j)]);
            su = f.addi(su, u[size_t(j)]);
            sv = f.addi(sv, v[size_t(j)]);
        }
        uint16_t ulast = f.negi(su), vlast = f.negi(sv);
        if (ulast != 0 && vlast != 0) {
            u[size_t(i - 1)] = ulast;
            v[size_t(i - 1)] = vlast;
            WalkType wt{u, v};
            if (fn(wt)) return true;
        }
        // advance odometer
        int pos = int(slots.size()) - 1;
        while (pos >= 0 && slots[size_t(pos)] == nu) { slots[size_t(pos)] = 1; --pos; }
        if (pos < 0) return true;
        slots[size_t(pos)] += 1;
    }
}

std::optional<WalkType> seeded_family(const GraphParams& g, int i) {
    const Field& f = *g.field;
    for (int b = 1; b < g.q(); ++b) {
        WalkType wt;
        uint16_t pw = 1;
        for (int j = 0; j < i; ++j) {
            wt.u.push_back(pw);
            wt.v.push_back(pw);
            pw = f.muli(pw, uint16_t(b));
        }
        if (evaluate_circuit_type(g, wt).coords_zero) {
            uint16_t sv = 0;
            for (uint16_t e : wt.v) sv = f.addi(sv, e);
            if (sv == 0) return wt;
        }
    }
    return std::nullopt;
}

// Depth-first search over actual walks from the root edge, pruning repeated
// vertices; finds vertex-distinct circuits only.
std::optional<WalkType> graph_dfs_search(const GraphParams& g, int i, uint64_t budget,
                                         uint64_t& tried, bool& exhausted) {
    const Field& f = *g.field;
    if (!g.key_space()) throw std::invalid_argument("graph-dfs needs q^k in key range");
    Vertex root_l = Vertex::zero(g, Side::L);
    Vertex root_r = Vertex::zero(g, Side::R);

    std::vector<uint16_t> u(size_t(i), 0), v(size_t(i), 0);
    std::vector<uint64_t> lkeys{root_l.key(g)}, rkeys{root_r.key(g)};
    std::optional<WalkType> found;

    struct Frame {
        Vertex l, r;
        uint16_t x, y;
    };
    std::vector<Frame> stack{{root_l, root_r, 0, 0}};

    std::function<bool(int)> rec = [&](int depth) -> bool {
        if (++tried > budget) { exhausted = false; return false; }
        Frame cur = stack.back();
        if (depth == i - 1) {
            // both last increments forced so the colors return to zero
            uint16_t ulast = f.negi(cur.x), vlast = f.negi(cur.y);
            if (ulast == 0 || vlast == 0) return false;
            Vertex l = neighbor_of_right(g, cur.r, 0); // x_{i+1} = 0
            // closing left vertex must be the root itself
            if (!(l == root_l)) return false;
            u[size_t(depth)] = ulast;
            v[size_t(depth)] = vlast;
            // vertex-distinctness of the final left vertex is the root; the
            // final right step returns to root_r via y = 0 automatically
            found = WalkType{u, v};
            return true;
        }
        for (int cu = 1; cu < g.q(); ++cu) {
            uint16_t x = f.addi(cur.x, uint16_t(cu));
            Vertex l = neighbor_of_right(g, cur.r, x);
            uint64_t lk = l.key(g);
            if (std::find(lkeys.begin(), lkeys.end(), lk) != lkeys.end()) continue;
            for (int cv = 1; cv < g.q(); ++cv) {
                uint16_t y = f.addi(cur.y, uint16_t(cv));
                Vertex r = neighbor_of_left(g, l, y);
                uint64_t rk = r.key(g);
                if (std::find(rkeys.begin(), rkeys.end(), rk) != rkeys.end()) continue;
                u[size_t(depth)] = uint16_t(cu);
                v[size_t(depth)] = uint16_t(cv);
                lkeys.push_back(lk);
                rkeys.push_back(rk);
                stack.push_back({l, r, x, y});
                if (rec(depth + 1)) return true;
                stack.pop_back();
                lkeys.pop_back();
                rkeys.pop_back();
            }
        }
        return false;
    };
    rec(0);
    return found;
}

} // namespace

TypeSearchResult find_circuit_type(const GraphParams& g, int i, TypeSearchStrategy strategy,
                                   uint64_t budget) {
    if (i < 2)
        throw std::invalid_argument("circuit length 2i needs i >= 2");
    TypeSearchResult res;

    if (strategy == TypeSearchStrategy::Seeded) {
        if (auto wt = seeded_family(g, i)) {
            res.type = wt;
            res.candidates_tried = uint64_t(g.q() - 1);
            return res;
        }
        strategy = TypeSearchStrategy::Exhaustive;
    }

    if (strategy == TypeSearchStrategy::GraphDfs) {
        bool exhausted = true;
        res.type = graph_dfs_search(g, i, budget, res.candidates_tried, exhausted);
        res.space_exhausted = exhausted;
        return res;
    }

    std::optional<WalkType> hit;
    bool finished = enumerate_types(g, i, budget, res.candidates_tried, [&](const WalkType& wt) {
        CircuitChecks c = evaluate_circuit_type(g, wt);
        if (c.coords_zero && c.v_sum_zero) { hit = wt; return true; }
        return false;
    });
    res.type = hit;
    res.space_exhausted = finished || hit.has_value();
    return res;
}

std::vector<WalkType> find_all_circuit_types(const GraphParams& g, int i, uint64_t budget) {
    if (i < 2)
        throw std::invalid_argument("circuit length 2i needs i >= 2");
    std::vector<WalkType> out;
    uint64_t tried = 0;
    bool finished = enumerate_types(g, i, budget, tried, [&](const WalkType& wt) {
        CircuitChecks c = evaluate_circuit_type(g, wt);
        if (c.coords_zero && c.v_sum_zero) out.push_back(wt);
        return false;
    });
    if (!finished)
        throw std::runtime_error("type enumeration exceeded its budget");
    return out;
}

std::vector<ScanRow> scan_conjecture(const std::vector<long long>& qs, const std::vector<int>& ks,
                                     int max_depth, uint64_t memory_budget_bytes) {
    std::vector<ScanRow> rows;
    for (long long q : qs) {
        auto pm = factor_prime_power(q);
        if (!pm)
            throw std::invalid_argument("q must be a prime power");
        auto field = Field::make(int(pm->first), pm->second);
        for (int k : ks) {
            GraphParams g = GraphParams::make(k, field);
            ScanRow row;
            row.k = k;
            row.q = q;
            row.in_scope = (k % 2 == 1) && q >= 4;
            GirthResult res = girth_bfs(g, max_depth, memory_budget_bytes);
            row.lower_bound = res.lower_bound;
            if (res.girth) {
                row.girth = res.girth;
                row.status = (*res.girth == k + 5) ? "satisfied" : "violated";
            } else {
                row.status = "undecided";
            }
            rows.push_back(row);
        }
    }
    return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
    std::ostringstream os;
    os << "k,q,girth,lower,in_scope,status\n";
    for (const ScanRow& r : rows) {
        os << r.k << ',' << r.q << ',';
        if (r.girth) os << *r.girth;
        os << ',' << r.lower_bound << ',' << (r.in_scope ? 1 : 0) << ',' << r.status << '\n';
    }
    return os.str();
}

} // namespace lkq
