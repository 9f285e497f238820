#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lkq {

// Exact rational, always reduced with positive denominator. The applicability
// threshold 8T^2 - 10T - 3 must be decided exactly, so no floating point
// anywhere in this module.
struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational of(long long n, long long d);
    static Rational integer(long long n) { return of(n, 1); }

    Rational operator*(const Rational& o) const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }

    long long floor() const;
    std::string str() const;
};

// m |_p n: m divides n * p^r for some r >= 0; equivalently the p-free part
// of m divides n.
bool divides_p(long long m, long long n, long long p);

// First `count` positive integers t with t |_p (q-1), ascending.
std::vector<long long> t_list(long long q, int count);

// The odd integers k_1 < k_2 < ... with (k_i + 5)/2 |_p (q-1), plus the
// anchor index i0 (k_{i0} = 2q-5) and the divisor count n of q-1; the
// sequence is eventually periodic: k_{i+n} = p k_i + 5p - 5 for i >= i0.
struct KSequence {
    long long q = 0, p = 0;
    std::vector<long long> k;
    size_t i0 = 0; // 0-based index with k[i0] == 2q-5
    int n_divisors = 0;
};

KSequence k_sequence(long long q, int count);

// Largest ratio (k_{i+1}+5)/(k_i+5) over one period starting at i0; always
// strictly between 1 and p.
Rational t_q(long long q);

struct RatioBound {
    Rational raw;            // the bound as stated
    long long even_floored;  // derived tightening: girth is even
    std::string rule;        // "t5a" (T <= 2) or "t5b" (T > 2)
};

// The ratio upper bound when applicable: T(k+4) needs T <= 2 and k >= q;
// 2k + 4T + 1 needs T > 2 and k >= max(q, 8T^2 - 10T - 3).
std::optional<RatioBound> upper_bound_thm5(long long k, long long q);

struct BoundReport {
    int k = 0;
    long long q = 0;
    int lower = 0;                // even lower bound, always valid
    std::optional<int> upper;     // best derived upper bound
    std::optional<int> exact;     // set when lower == upper
    std::vector<std::string> rule_chain;
};

struct DeriveOptions {
    int ceiling = 0;              // fact-store limit; 0 means max(4k, 64)
    bool seed_bfs = false;        // seed exact girths from BFS for small k
    int bfs_max_k = 14;
    int bfs_max_depth = 48;
    uint64_t bfs_memory = uint64_t(2) << 30;
    std::vector<std::pair<int, int>> extra_exact; // (k, girth) seed facts
};

// Fixed-point propagation of every implication rule over a store of girth
// brackets for all k' up to the ceiling; reports the final bracket with the
// chain of rule applications that produced it.
BoundReport derive_girth(int k, long long q, const DeriveOptions& opts = {});

struct TableRow {
    int k = 0;
    int lower = 0;
    std::optional<int> upper;
    std::optional<int> exact;
    std::string method;
};

// The known-girth table for q = 3 (the k values with published entries up
// to 320), derived by the rule engine plus BFS for k <= 14.
std::vector<TableRow> table_q3(int kmax, bool seed_bfs = true);

std::string table_csv(const std::vector<TableRow>& rows);

} // namespace lkq
