#include "lkq/rho.hpp"

#include <stdexcept>

namespace lkq {

namespace detail {

std::vector<uint16_t> rho_all(const Field& f, std::span<const uint16_t> w) {
    const int n = int(w.size());
    // rows[t][s] = rho_s of the length-t prefix, s in [0, t/2]
    std::vector<std::vector<uint16_t>> rows(n + 1);
    rows[0] = {1};
    for (int t = 1; t <= n; ++t) {
        rows[t].assign(t / 2 + 1, 0);
        for (int s = 0; s <= t / 2; ++s) {
            uint16_t val = 0;
            if (s <= (t - 1) / 2)
                val = f.muli(w[t - 1], rows[t - 1][s]);
            if (s >= 1 && s - 1 <= (t - 2) / 2)
                val = f.addi(val, rows[t - 2][s - 1]);
            rows[t][s] = val;
        }
    }
    return rows[n];
}

uint16_t rho_from_all(const std::vector<uint16_t>& all, size_t len, int s) {
    if (s < 0 || 2 * s > int(len)) return 0;
    return all[size_t(s)];
}

uint16_t rho_idx(const Field& f, std::span<const uint16_t> w, int s) {
    if (s < 0 || 2 * s > int(w.size())) return 0;
    return rho_all(f, w)[size_t(s)];
}

namespace {

const Field& seq_field(const OmegaSeq& w) {
    const Field* f = nullptr;
    for (const Elem& e : w) {
        if (e.field == nullptr)
            throw std::invalid_argument("element has no field attached");
        if (f && e.field != f)
            throw std::invalid_argument("mixed-field operands");
        f = e.field;
    }
    if (!f)
        throw std::invalid_argument("cannot infer the field of an empty sequence");
    return *f;
}

std::vector<uint16_t> indices(const OmegaSeq& w) {
    std::vector<uint16_t> v;
    v.reserve(w.size());
    for (const Elem& e : w) v.push_back(e.idx);
    return v;
}

// Chains 1 <= s_1 <= t_1 < s_2 <= t_2 < ... <= t_j <= half for even length;
// term = prod_k w[2 s_k - 1] * w[2 t_k]  (1-based positions).
uint16_t enum_even(const Field& f, std::span<const uint16_t> w, int half, int j) {
    uint16_t total = 0;
    // depth-first over (s_k, t_k)
    struct Rec {
        const Field& f;
        std::span<const uint16_t> w;
        int half, j;
        uint16_t total = 0;
        Rec(const Field& f, std::span<const uint16_t> w, int half, int j)
            : f(f), w(w), half(half), j(j) {}
        void go(int start, int depth, uint16_t prod) {
            if (depth == j) { total = f.addi(total, prod); return; }
            for (int s = start; s <= half; ++s)
                for (int t = s; t <= half; ++t) {
                    uint16_t term = f.muli(prod, f.muli(w[2 * s - 2], w[2 * t - 1]));
                    go(t + 1, depth + 1, term);
                }
        }
    } rec(f, w, half, j);
    rec.go(1, 0, 1);
    total = rec.total;
    return total;
}

// Chains 1 <= s_0 <= t_1 < s_1 <= t_2 < s_2 <= ... <= t_j < s_j <= half+1 for
// odd length; term = w[2 s_0 - 1] * prod_k w[2 t_k] * w[2 s_k - 1].
uint16_t enum_odd(const Field& f, std::span<const uint16_t> w, int half, int j) {
    struct Rec {
        const Field& f;
        std::span<const uint16_t> w;
        int half, j;
        uint16_t total = 0;
        Rec(const Field& f, std::span<const uint16_t> w, int half, int j)
            : f(f), w(w), half(half), j(j) {}
        void go(int prev_s, int depth, uint16_t prod) {
            if (depth == j) { total = f.addi(total, prod); return; }
            for (int t = prev_s; t <= half; ++t)
                for (int s = t + 1; s <= half + 1; ++s) {
                    uint16_t term = f.muli(prod, f.muli(w[2 * t - 1], w[2 * s - 2]));
                    go(s, depth + 1, term);
                }
        }
    } rec(f, w, half, j);
    for (int s0 = 1; s0 <= half + 1; ++s0)
        rec.go(s0, 0, w[2 * s0 - 2]);
    return rec.total;
}

uint16_t pm1_pow(const Field& f, int t) {
    // (-1)^t as a field element
    return ((t % 2 + 2) % 2 == 0) ? uint16_t(1) : f.negi(1);
}

} // namespace
} // namespace detail

Elem rho(const Field& f, int s, const OmegaSeq& w) {
    for (const Elem& e : w)
        if (e.field != &f) throw std::invalid_argument("mixed-field operands");
    auto idx = detail::indices(w);
    return Elem(detail::rho_idx(f, idx, s), &f);
}

Elem rho(int s, const OmegaSeq& w) {
    return rho(detail::seq_field(w), s, w);
}

Elem rho_oracle(const Field& f, int s, const OmegaSeq& w) {
    for (const Elem& e : w)
        if (e.field != &f) throw std::invalid_argument("mixed-field operands");
    auto idx = detail::indices(w);
    const int n = int(idx.size());
    if (s < 0 || 2 * s > n) return f.zero();
    if (n == 0) return f.one(); // s == 0 here: the null-sequence convention
    uint16_t val;
    if (n % 2 == 0) {
        int half = n / 2;
        val = detail::enum_even(f, idx, half, half - s);
    } else {
        int half = (n - 1) / 2;
        val = detail::enum_odd(f, idx, half, half - s);
    }
    return Elem(val, &f);
}

Elem rho_oracle(int s, const OmegaSeq& w) {
    return rho_oracle(detail::seq_field(w), s, w);
}

Elem DeltaNablaTable::delta_at(int t) const {
    if (t < 0 || t >= int(delta.size())) return Elem(0, field);
    return Elem(delta[size_t(t)], field);
}

Elem DeltaNablaTable::nabla_at(int t) const {
    if (t < 0 || t >= int(nabla.size())) return Elem(0, field);
    return Elem(nabla[size_t(t)], field);
}

namespace {

void check_uv(int n, const std::vector<Elem>& u, const std::vector<Elem>& v) {
    if (n < 1)
        throw std::invalid_argument("n must be >= 1");
    if (int(u.size()) != n || int(v.size()) != n)
        throw std::invalid_argument("u and v must both have length n");
    for (const Elem& e : u)
        if (e.is_zero()) throw std::invalid_argument("u entries must be nonzero");
    for (const Elem& e : v)
        if (e.is_zero()) throw std::invalid_argument("v entries must be nonzero");
}

} // namespace

DeltaNablaTable delta_nabla(int n, const std::vector<Elem>& u, const std::vector<Elem>& v) {
    check_uv(n, u, v);
    OmegaSeq all;
    all.insert(all.end(), u.begin(), u.end());
    all.insert(all.end(), v.begin(), v.end());
    const Field& f = detail::seq_field(all);

    // The four defining sequences; at n = 1 the pair-interleaved middles are
    // empty and the construction degenerates to (v_1), (), (u_1), (u_1, v_1),
    // exactly the explicit n = 1 values.
    std::vector<uint16_t> d_odd, d_even, n_odd, n_even;
    for (int j = 0; j + 1 < n; ++j) { d_even.push_back(v[j].idx); d_even.push_back(u[j + 1].idx); }
    d_odd = d_even;
    d_odd.push_back(v[n - 1].idx);
    for (int j = 0; j + 1 < n; ++j) { n_odd.push_back(u[j].idx); n_odd.push_back(v[j].idx); }
    n_odd.push_back(u[n - 1].idx);
    for (int j = 0; j < n; ++j) { n_even.push_back(u[j].idx); n_even.push_back(v[j].idx); }

    auto d_odd_all = detail::rho_all(f, d_odd);
    auto d_even_all = detail::rho_all(f, d_even);
    auto n_odd_all = detail::rho_all(f, n_odd);
    auto n_even_all = detail::rho_all(f, n_even);

    DeltaNablaTable tab;
    tab.n = n;
    tab.field = &f;
    tab.delta.assign(2 * n + 3, 0);
    tab.nabla.assign(2 * n + 3, 0);
    for (int t = 0; t <= 2 * n + 2; ++t) {
        if (t % 2 == 1) {
            int tau = (t + 1) / 2;
            tab.delta[t] = detail::rho_from_all(d_odd_all, d_odd.size(), n - tau);
            tab.nabla[t] = detail::rho_from_all(n_odd_all, n_odd.size(), n - tau);
        } else {
            int tau = t / 2;
            tab.delta[t] = detail::rho_from_all(d_even_all, d_even.size(), n - 1 - tau);
            tab.nabla[t] = detail::rho_from_all(n_even_all, n_even.size(), n - tau);
        }
    }
    return tab;
}

Elem lemma2_sum(int n, int j, const std::vector<Elem>& u, const std::vector<Elem>& v) {
    if (j < 1)
        throw std::invalid_argument("j must be >= 1");
    DeltaNablaTable tab = delta_nabla(n, u, v);
    const Field& f = *tab.field;
    uint16_t acc = 0;
    for (int s = 0; s <= 2 * n + 2; ++s) {
        int dt = 2 * j - s;
        if (dt < 0 || dt > 2 * n + 2) continue;
        uint16_t term = f.muli(tab.nabla[s], tab.delta[dt]);
        if (s % 2 == 1) term = f.negi(term);
        acc = f.addi(acc, term);
    }
    return Elem(acc, &f);
}

std::array<std::pair<Elem, Elem>, 8> lemma3_check(int n, int t, const std::vector<Elem>& u) {
    if (n < 1)
        throw std::invalid_argument("n must be >= 1");
    if (int(u.size()) != 2 * n)
        throw std::invalid_argument("u must have length 2n");
    for (const Elem& e : u)
        if (e.is_zero()) throw std::invalid_argument("u entries must be nonzero");
    const Field& f = detail::seq_field(u);

    const uint16_t one = 1, minus_one = f.negi(1);
    // interleave with v_{2j-1} = 1, v_{2j} = -1
    auto v_at = [&](int j1) { return (j1 % 2 == 1) ? one : minus_one; }; // 1-based

    std::vector<uint16_t> u_led;      // u_1, v_1, ..., u_{2n-1}, v_{2n-1}, u_{2n}
    std::vector<uint16_t> v_led;      // v_1, u_2, ..., v_{2n-1}, u_{2n}
    std::vector<uint16_t> full;       // u_1, v_1, ..., u_{2n}, v_{2n}
    for (int j = 1; j <= 2 * n; ++j) {
        full.push_back(u[j - 1].idx);
        full.push_back(v_at(j));
        u_led.push_back(u[j - 1].idx);
        if (j < 2 * n) u_led.push_back(v_at(j));
        if (j < 2 * n) { v_led.push_back(v_at(j)); v_led.push_back(u[j].idx); }
    }
    std::vector<uint16_t> v_led_v = v_led; // v_1, u_2, ..., v_{2n-1}, u_{2n}, v_{2n}
    v_led_v.push_back(v_at(2 * n));

    std::vector<uint16_t> uu, u_mid, u_front, u_back;
    for (int j = 0; j < 2 * n; ++j) uu.push_back(u[j].idx);
    u_front.assign(uu.begin(), uu.end() - 1);
    u_back.assign(uu.begin() + 1, uu.end());
    u_mid.assign(uu.begin() + 1, uu.end() - 1);

    auto u_led_all = detail::rho_all(f, u_led);
    auto v_led_all = detail::rho_all(f, v_led);
    auto full_all = detail::rho_all(f, full);
    auto v_led_v_all = detail::rho_all(f, v_led_v);
    auto uu_all = detail::rho_all(f, uu);
    auto u_mid_all = detail::rho_all(f, u_mid);
    auto u_front_all = detail::rho_all(f, u_front);
    auto u_back_all = detail::rho_all(f, u_back);

    auto R = [&](const std::vector<uint16_t>& all, size_t len, int s) {
        return detail::rho_from_all(all, len, s);
    };
    const uint16_t sg_t = detail::pm1_pow(f, t);          // (-1)^t
    const uint16_t sg_t1 = detail::pm1_pow(f, t - 1);     // (-1)^{t-1}

    std::array<std::pair<Elem, Elem>, 8> out;
    auto put = [&](int i, uint16_t lhs, uint16_t rhs) {
        out[size_t(i)] = {Elem(lhs, &f), Elem(rhs, &f)};
    };

    put(0, R(u_led_all, u_led.size(), 2 * n - 2 * t),
        f.addi(f.muli(sg_t1, R(uu_all, uu.size(), n - t)),
               f.muli(sg_t, R(u_mid_all, u_mid.size(), n - t - 1))));
    put(1, R(u_led_all, u_led.size(), 2 * n + 1 - 2 * t),
        f.muli(sg_t1, f.addi(R(u_back_all, u_back.size(), n - t),
                             R(u_front_all, u_front.size(), n - t))));
    put(2, R(v_led_all, v_led.size(), 2 * n - 1 - 2 * t),
        f.muli(sg_t, R(u_mid_all, u_mid.size(), n - t - 1)));
    put(3, R(v_led_all, v_led.size(), 2 * n - 2 * t),
        f.muli(sg_t1, R(u_back_all, u_back.size(), n - t)));
    put(4, R(full_all, full.size(), 2 * n - 2 * t),
        f.muli(sg_t, R(uu_all, uu.size(), n - t)));
    put(5, R(full_all, full.size(), 2 * n + 1 - 2 * t),
        f.muli(sg_t, R(u_back_all, u_back.size(), n - t)));
    put(6, R(v_led_v_all, v_led_v.size(), 2 * n - 2 * t),
        f.muli(sg_t, R(u_back_all, u_back.size(), n - t)));
    put(7, R(v_led_v_all, v_led_v.size(), 2 * n + 1 - 2 * t), 0);
    return out;
}

std::pair<Elem, Elem> scaling_check(int n, int j, const OmegaSeq& w, Elem a, Elem b) {
    if (a.is_zero() || b.is_zero())
        throw std::invalid_argument("scale factors must be nonzero");
    const size_t len = w.size();
    if (len != size_t(2 * n) && len != size_t(2 * n + 1))
        throw std::invalid_argument("sequence length must be 2n or 2n+1");
    const Field& f = detail::seq_field(w);
    detail::check_same_field(a, w[0]);
    detail::check_same_field(b, w[0]);

    std::vector<uint16_t> scaled(len);
    for (size_t i = 0; i < len; ++i)
        scaled[i] = f.muli(i % 2 == 0 ? a.idx : b.idx, w[i].idx); // odd math position = even offset
    uint16_t lhs = detail::rho_idx(f, scaled, n - j);

    auto idx = detail::indices(w);
    uint16_t base = detail::rho_idx(f, idx, n - j);
    uint16_t factor = f.muli(f.powi(a.idx, uint64_t(len % 2 == 0 ? j : j + 1)),
                             f.powi(b.idx, uint64_t(j)));
    return {Elem(lhs, &f), Elem(f.muli(factor, base), &f)};
}

} // namespace lkq
