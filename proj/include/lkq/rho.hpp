#pragma once

#include "lkq/field.hpp"

#include <array>
#include <span>
#include <utility>

namespace lkq {

// Values bound to the indeterminates w_1..w_n; the empty sequence is allowed.
using OmegaSeq = std::vector<Elem>;

// rho_s(w_1..w_n): sum, over all ways to delete s disjoint pairs of adjacent
// entries, of the product of the remaining entries. Total function: s < 0 or
// 2s > n gives 0; rho_0 of the empty sequence is 1.
//
// Evaluated by dynamic programming over the prefix recurrence
//   rho_s(w_1..w_n) = rho_{s-1}(w_1..w_{n-2}) + w_n * rho_s(w_1..w_{n-1}),
// O(n^2) field ops, suitable for inner loops.
Elem rho(const Field& f, int s, const OmegaSeq& w);
Elem rho(int s, const OmegaSeq& w); // field inferred; w must be nonempty

// Same value by direct enumeration of the closed-form index chains (separate
// forms for even and odd n). Exponential; kept as an independent oracle.
Elem rho_oracle(const Field& f, int s, const OmegaSeq& w);
Elem rho_oracle(int s, const OmegaSeq& w);

namespace detail {
// rho_s(w) for every s in [0, n/2], one DP sweep. Element indices only.
std::vector<uint16_t> rho_all(const Field& f, std::span<const uint16_t> w);
// Single value with the out-of-range convention applied.
uint16_t rho_idx(const Field& f, std::span<const uint16_t> w, int s);
uint16_t rho_from_all(const std::vector<uint16_t>& all, size_t len, int s);
} // namespace detail

// The Delta/nabla aggregates of a type (u_1, v_1, ..., u_n, v_n):
//   Delta^n_{2t-1} = rho_{n-t}(v_1, u_2, ..., v_{n-1}, u_n, v_n)
//   Delta^n_{2t}   = rho_{n-1-t}(v_1, u_2, ..., v_{n-1}, u_n)
//   nabla^n_{2t-1} = rho_{n-t}(u_1, v_1, ..., u_{n-1}, v_{n-1}, u_n)
//   nabla^n_{2t}   = rho_{n-t}(u_1, v_1, ..., u_n, v_n)
// Stored for t in [0, 2n+2]; identically zero outside that window.
struct DeltaNablaTable {
    int n = 0;
    const Field* field = nullptr;
    std::vector<uint16_t> delta, nabla; // indexed by t, size 2n+3

    Elem delta_at(int t) const;
    Elem nabla_at(int t) const;
};

DeltaNablaTable delta_nabla(int n, const std::vector<Elem>& u, const std::vector<Elem>& v);

// sum_s (-1)^s nabla^n_s Delta^n_{2j-s}. Identically zero for j >= 1; the
// operation exists so tests and the identities command can assert it.
Elem lemma2_sum(int n, int j, const std::vector<Elem>& u, const std::vector<Elem>& v);

// The eight reduction equalities for a 2n-tuple u interleaved with the fixed
// pattern v_{2j-1} = -v_{2j} = 1: each pair is (interleaved-rho lhs, plain-u
// rhs) and the contract is lhs == rhs in all eight.
std::array<std::pair<Elem, Elem>, 8> lemma3_check(int n, int t, const std::vector<Elem>& u);

// Scaling law for w'_{2s-1} = a*w_{2s-1}, w'_{2s} = b*w_{2s}: returns
// (rho_{n-j} of the scaled sequence, predicted multiple of the unscaled
// value): factor a^j b^j for even length 2n, a^{j+1} b^j for odd 2n+1.
std::pair<Elem, Elem> scaling_check(int n, int j, const OmegaSeq& w, Elem a, Elem b);

} // namespace lkq
