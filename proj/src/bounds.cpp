#include "lkq/bounds.hpp"

#include "lkq/errors.hpp"
#include "lkq/field.hpp"
#include "lkq/girth.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace lkq {

Rational Rational::of(long long n, long long d) {
    if (d == 0)
        throw std::invalid_argument("zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    return Rational{n / g, d / g};
}

Rational Rational::operator*(const Rational& o) const { return of(num * o.num, den * o.den); }
Rational Rational::operator+(const Rational& o) const {
    return of(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
    return of(num * o.den - o.num * den, den * o.den);
}
bool Rational::operator<(const Rational& o) const {
    return __int128(num) * o.den < __int128(o.num) * den;
}
long long Rational::floor() const {
    long long q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
}
std::string Rational::str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

bool divides_p(long long m, long long n, long long p) {
    if (m < 1 || n < 1)
        throw std::invalid_argument("divides_p needs m, n >= 1");
    if (!is_prime(p))
        throw std::invalid_argument("divides_p needs prime p");
    while (m % p == 0) m /= p;
    // gcd(m, p) = 1, so m | n p^r for some r iff m | n
    return n % m == 0;
}

namespace {

long long char_of(long long q) {
    auto pm = factor_prime_power(q);
    if (!pm)
        throw std::invalid_argument("q must be a prime power");
    return pm->first;
}

int count_divisors(long long n) {
    int c = 0;
    for (long long d = 1; d * d <= n; ++d)
        if (n % d == 0) c += (d * d == n) ? 1 : 2;
    return c;
}

int even_ceil(int v) { return v % 2 == 0 ? v : v + 1; }
long long even_floor_ll(long long v) { return v % 2 == 0 ? v : v - 1; }

} // namespace

std::vector<long long> t_list(long long q, int count) {
    long long p = char_of(q);
    std::vector<long long> out;
    for (long long t = 1; int(out.size()) < count; ++t)
        if (divides_p(t, q - 1, p)) out.push_back(t);
    return out;
}

KSequence k_sequence(long long q, int count) {
    if (q < 3)
        throw std::invalid_argument("k_sequence needs q >= 3");
    KSequence seq;
    seq.q = q;
    seq.p = char_of(q);
    seq.n_divisors = count_divisors(q - 1);
    seq.i0 = size_t(-1);
    int need = std::max(count, 1);
    for (long long k = 1; int(seq.k.size()) < need || seq.i0 == size_t(-1); k += 2) {
        if (divides_p((k + 5) / 2, q - 1, seq.p)) {
            if (k == 2 * q - 5) seq.i0 = seq.k.size();
            seq.k.push_back(k);
        }
        if (k > 100 * q && seq.i0 == size_t(-1))
            throw std::logic_error("anchor 2q-5 not found"); // cannot happen
    }
    return seq;
}

Rational t_q(long long q) {
    if (q < 3)
        throw std::invalid_argument("t_q needs q >= 3");
    KSequence seq = k_sequence(q, 1);
    // make sure a full period past i0 is materialized
    while (seq.k.size() < seq.i0 + size_t(seq.n_divisors) + 1)
        seq = k_sequence(q, int(seq.k.size()) + seq.n_divisors + 1);
    Rational best = Rational::integer(1);
    for (size_t i = seq.i0; i < seq.i0 + size_t(seq.n_divisors); ++i) {
        Rational r = Rational::of(seq.k[i + 1] + 5, seq.k[i] + 5);
        if (best < r) best = r;
    }
    if (!(Rational::integer(1) < best) || !(best < Rational::integer(seq.p)))
        throw std::logic_error("T_q outside (1, p)");
    return best;
}

std::optional<RatioBound> upper_bound_thm5(long long k, long long q) {
    if (k < 1) return std::nullopt;
    if (q < 3) return std::nullopt;
    Rational T = t_q(q);
    const Rational two = Rational::integer(2);
    RatioBound out;
    if (T <= two) {
        if (k < q) return std::nullopt;
        out.raw = T * Rational::integer(k + 4);
        out.rule = "t5a";
    } else {
        // threshold 8T^2 - 10T - 3, compared exactly
        Rational thr = Rational::integer(8) * T * T - Rational::integer(10) * T -
                       Rational::integer(3);
        if (k < q || Rational::integer(k) < thr) return std::nullopt;
        out.raw = Rational::integer(2 * k + 1) + Rational::integer(4) * T;
        out.rule = "t5b";
    }
    out.even_floored = even_floor_ll(out.raw.floor());
    return out;
}

namespace {

constexpr int kNoUpper = std::numeric_limits<int>::max();

struct Fact {
    int lo = 0;
    int hi = kNoUpper;
    std::string lo_rule = "k+4,even";
    std::string hi_rule;
    int lo_from = -1, hi_from = -1;
};

struct Engine {
    long long q, p;
    int K;
    std::vector<Fact> f; // index by k, 2..K used
    bool changed = false;

    Engine(long long q_, int ceiling) : q(q_), p(char_of(q_)), K(ceiling), f(size_t(K) + 1) {
        for (int k = 2; k <= K; ++k) f[size_t(k)].lo = even_ceil(k + 4);
    }

    void contradiction(int k) const {
        std::ostringstream os;
        os << "bound store contradiction at k=" << k << ", q=" << q << ": lower "
           << f[size_t(k)].lo << " (" << f[size_t(k)].lo_rule << ") exceeds upper "
           << f[size_t(k)].hi << " (" << f[size_t(k)].hi_rule << ")";
        throw falsification_error(os.str());
    }

    void raise_lo(int k, int v, const std::string& rule, int from = -1) {
        if (k < 2 || k > K || v <= f[size_t(k)].lo) return;
        f[size_t(k)].lo = v;
        f[size_t(k)].lo_rule = rule;
        f[size_t(k)].lo_from = from;
        changed = true;
        if (f[size_t(k)].hi < v) contradiction(k);
    }

    void drop_hi(int k, int v, const std::string& rule, int from = -1) {
        if (k < 2 || k > K || v >= f[size_t(k)].hi) return;
        f[size_t(k)].hi = v;
        f[size_t(k)].hi_rule = rule;
        f[size_t(k)].hi_from = from;
        changed = true;
        if (f[size_t(k)].lo > v) contradiction(k);
    }

    void set_exact(int k, int g, const std::string& rule, int from = -1) {
        if (k < 2 || k > K) return;
        raise_lo(k, g, rule, from);
        drop_hi(k, g, rule, from);
        if (f[size_t(k)].lo != g || f[size_t(k)].hi != g) {
            if (f[size_t(k)].lo > g || f[size_t(k)].hi < g) contradiction(k);
        }
    }

    bool exact_at(int k, int g) const {
        return f[size_t(k)].lo == g && f[size_t(k)].hi == g;
    }

    void seed(const DeriveOptions& opts) {
        // known exact family: odd k with (k+5)/2 |_p (q-1) has girth k+5,
        // and so does k+1
        for (long long ki = 1; ki <= K; ki += 2) {
            if (!divides_p((ki + 5) / 2, q - 1, p)) continue;
            int g = int(ki) + 5;
            set_exact(std::max(int(ki), 2), g, "l5");
            set_exact(int(ki) + 1, g, "l5");
        }
        // q = 2 staircase (external known fact, spot-checked by BFS): girth
        // 2^s for 2^{s-1}-4 < k <= 2^s-4
        if (q == 2) {
            for (int k = 2; k <= K; ++k) {
                int s = 3;
                while ((1 << s) - 4 < k) ++s;
                set_exact(k, 1 << s, "q2");
            }
        }
        if (q >= 3) {
            for (int k = 2; k <= K; ++k) {
                if (auto b = upper_bound_thm5(k, q)) {
                    if (b->even_floored <= std::numeric_limits<int>::max())
                        drop_hi(k, int(b->even_floored), b->rule + "[raw " + b->raw.str() + "]");
                }
            }
        }
        for (auto [k, g] : opts.extra_exact) set_exact(k, g, "seed");
        if (opts.seed_bfs) {
            auto pm = factor_prime_power(q);
            auto field = Field::make(int(pm->first), pm->second);
            for (int k = 2; k <= std::min(K, opts.bfs_max_k); ++k) {
                GraphParams g = GraphParams::make(k, field);
                if (!g.key_space()) break;
                GirthResult res = girth_bfs(g, opts.bfs_max_depth, opts.bfs_memory);
                if (res.girth) set_exact(k, *res.girth, "bfs");
            }
        }
    }

    void run() {
        do {
            changed = false;
            // same girth one step up at k = 4t+1 -> 4t+2 (both directions)
            for (int t = 1; 4 * t + 2 <= K; ++t) {
                int a = 4 * t + 1, b = 4 * t + 2;
                raise_lo(b, f[size_t(a)].lo, "t2", a);
                raise_lo(a, f[size_t(b)].lo, "t2", b);
                if (f[size_t(a)].hi != kNoUpper) drop_hi(b, f[size_t(a)].hi, "t2", a);
                if (f[size_t(b)].hi != kNoUpper) drop_hi(a, f[size_t(b)].hi, "t2", b);
            }
            // doubling through the interleave lift: hi(4s+3) <= 2 hi(2s)
            for (int s = 1; 2 * s <= K; ++s) {
                int src = 2 * s, dst = 4 * s + 3;
                if (dst > K || f[size_t(src)].hi == kNoUpper || f[size_t(src)].hi < 6) continue;
                drop_hi(dst, 2 * f[size_t(src)].hi, "t3i1", src);
            }
            // exact step 4w-2 -> 8w when the source girth is exactly 4w+2
            for (int w = 1; 8 * w <= K; ++w) {
                int src = 4 * w - 2, dst = 8 * w;
                if (src < 2) continue;
                if (exact_at(src, 4 * w + 2)) drop_hi(dst, 8 * w + 4, "t3i3", src);
            }
            // characteristic-2 doubling 4w -> 8w+4
            if (p == 2) {
                for (int w = 1; 8 * w + 4 <= K; ++w) {
                    int src = 4 * w, dst = 8 * w + 4;
                    if (f[size_t(src)].hi == kNoUpper || f[size_t(src)].hi < 6) continue;
                    drop_hi(dst, 2 * f[size_t(src)].hi, "t3i4", src);
                }
            }
            // restriction monotonicity: girth never drops as k grows
            for (int k = K - 1; k >= 2; --k)
                if (f[size_t(k) + 1].hi != kNoUpper) drop_hi(k, f[size_t(k) + 1].hi, "mono", k + 1);
            for (int k = 3; k <= K; ++k) raise_lo(k, f[size_t(k) - 1].lo, "mono", k - 1);
        } while (changed);
    }

    void chain(int k, std::set<int>& seen, std::vector<std::string>& out) const {
        if (k < 2 || k > K || !seen.insert(k).second) return;
        const Fact& fk = f[size_t(k)];
        if (fk.lo_from >= 0) chain(fk.lo_from, seen, out);
        if (fk.hi_from >= 0) chain(fk.hi_from, seen, out);
        std::ostringstream os;
        os << "k=" << k << ": [" << fk.lo << ", ";
        if (fk.hi == kNoUpper)
            os << "?";
        else
            os << fk.hi;
        os << "] lower by " << fk.lo_rule;
        if (fk.lo_from >= 0) os << " from k=" << fk.lo_from;
        if (fk.hi != kNoUpper) {
            os << "; upper by " << fk.hi_rule;
            if (fk.hi_from >= 0) os << " from k=" << fk.hi_from;
        }
        out.push_back(os.str());
    }
};

} // namespace

BoundReport derive_girth(int k, long long q, const DeriveOptions& opts) {
    if (k < 1)
        throw std::invalid_argument("k must be >= 1");
    int query = (k == 1) ? 2 : k; // k = 1 aliases to 2
    int ceiling = opts.ceiling > 0 ? opts.ceiling : std::max(4 * query, 64);
    if (ceiling < query) ceiling = query;
    Engine eng(q, ceiling);
    eng.seed(opts);
    eng.run();

    BoundReport rep;
    rep.k = k;
    rep.q = q;
    const Fact& fk = eng.f[size_t(query)];
    rep.lower = fk.lo;
    if (fk.hi != kNoUpper) rep.upper = fk.hi;
    if (fk.hi == fk.lo) rep.exact = fk.lo;
    std::set<int> seen;
    eng.chain(query, seen, rep.rule_chain);
    return rep;
}

std::vector<TableRow> table_q3(int kmax, bool seed_bfs) {
    static const int listed[] = {2,  3,  4,  5,   6,   7,   8,   13,  14,  19,  31,  32,  39,
                                 49, 50, 67, 79, 103, 104, 135, 157, 158, 159, 211, 271, 319, 320};
    DeriveOptions opts;
    opts.ceiling = std::max(4 * kmax, 64);
    opts.seed_bfs = seed_bfs;
    Engine eng(3, opts.ceiling);
    eng.seed(opts);
    eng.run();

    std::vector<TableRow> rows;
    for (int k : listed) {
        if (k > kmax) break;
        const Fact& fk = eng.f[size_t(k)];
        TableRow row;
        row.k = k;
        row.lower = fk.lo;
        if (fk.hi != kNoUpper) row.upper = fk.hi;
        if (fk.hi == fk.lo) {
            row.exact = fk.lo;
            row.method = fk.hi_rule;
        } else {
            row.method = "bracket";
        }
        rows.push_back(row);
    }
    return rows;
}

std::string table_csv(const std::vector<TableRow>& rows) {
    std::ostringstream os;
    os << "k,lower,upper,exact,method\n";
    for (const TableRow& r : rows) {
        os << r.k << ',' << r.lower << ',';
        if (r.upper) os << *r.upper;
        os << ',';
        if (r.exact) os << *r.exact;
        os << ',' << r.method << '\n';
    }
    return os.str();
}

} // namespace lkq
