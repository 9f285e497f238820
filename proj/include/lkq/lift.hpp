#pragma once

#include "lkq/errors.hpp"
#include "lkq/graph.hpp"

namespace lkq {

// Rule catalogue. Every lift re-verifies its output through the circuit
// checker; inputs are re-verified too.
//
//   t2_up     Lambda(4t+1) -> Lambda(4t+2), same type, same length
//   t2_down   the trivial restriction back
//   l4_up     Lambda(2s) length 2n -> Lambda(4s+3) length 4n
//   l4_down   the reverse reading (requires the alternating v-pattern)
//   t3_item3  Lambda(4w-2) length 4w+2 -> Lambda(8w) length 8w+4
//   t3_item4  Lambda(4w) length 2n -> Lambda(8w+4) length 4n, char 2 only
//   cor1_chain  iterated doubling for char 2, girth-exact at every stage
//   t4_family   odd-characteristic instances k = 2^{s+2}(2t-1) - 5
enum class LiftRule { t2_up, t2_down, l4_up, l4_down, t3_item3, t3_item4, cor1_chain, t4_family };

const char* lift_rule_name(LiftRule r);

// Same type, one more coordinate condition; must verify (this is the
// substance of the rule, not a formality).
CircuitCertificate lift_t2(const CircuitCertificate& cert);

// Restriction to any smaller k >= 1 (k = 1 aliases to 2). Always valid.
CircuitCertificate restrict_cert(const CircuitCertificate& cert, int k_new);
CircuitCertificate lift_t2_down(const CircuitCertificate& cert);

// Interleaves the input type into the output u-vector and pairs it with the
// alternating pattern v = (1, -1, 1, -1, ...).
CircuitCertificate lift_l4(const CircuitCertificate& cert);
CircuitCertificate lift_l4_down(const CircuitCertificate& cert);

// Scales the odd-position entries by
//   alpha = -rho_{n-w-1}(u_2..u_{2n}) / rho_{n-w-1}(u_1..u_{2n-1})
// before appending the v-pattern; a zero numerator or denominator would
// contradict the girth lower bound at 4w-1 and is a falsifying event.
CircuitCertificate lift_t3_item3(const CircuitCertificate& cert);

// Characteristic-2 variant: no scaling needed (the pattern is all ones).
CircuitCertificate lift_t3_item4(const CircuitCertificate& cert);

// From a girth-exact base (length 2s+4 at k = 2s, q even), produce
// girth-exact certificates at k = 2^t(s+2)-4 and 2^t(s+2)-5 for t = 1..t_max.
std::vector<CircuitCertificate> chain_cor1(const CircuitCertificate& base, int t_max);

struct Theorem4Result {
    long long q = 0;
    int s = 0, t = 0;
    int k = 0;
    int girth_claim = 0;
    std::string status; // "certified" | "theorem-only"
    std::vector<CircuitCertificate> chain;
};

// Instance of the odd-characteristic family: hypotheses p >= 3,
// (2t-1) |_p (q-1), 2^s || (q-1); claims girth 2^{s+2}(2t-1) at
// k = 2^{s+2}(2t-1) - 5. Builds a verified certificate when a base circuit
// is found within budget (seeded family first, exhaustive scan only when
// the whole candidate space fits the budget); otherwise "theorem-only".
Theorem4Result theorem4_instance(long long q, int s, int t,
                                 uint64_t budget = uint64_t(1'000'000));

} // namespace lkq
