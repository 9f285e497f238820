#include "lkq/lift.hpp"

#include "lkq/girth.hpp"
#include "lkq/rho.hpp"

#include <atomic>
#include <sstream>

namespace lkq {

namespace {
std::atomic<uint64_t> g_falsifications{0};
} // namespace

falsification_error::falsification_error(const std::string& what)
    : std::runtime_error("FALSIFYING EVENT: " + what) {
    g_falsifications.fetch_add(1, std::memory_order_relaxed);
}

uint64_t falsification_event_count() { return g_falsifications.load(std::memory_order_relaxed); }

const char* lift_rule_name(LiftRule r) {
    switch (r) {
    case LiftRule::t2_up: return "t2_up";
    case LiftRule::t2_down: return "t2_down";
    case LiftRule::l4_up: return "l4_up";
    case LiftRule::l4_down: return "l4_down";
    case LiftRule::t3_item3: return "t3_item3";
    case LiftRule::t3_item4: return "t3_item4";
    case LiftRule::cor1_chain: return "cor1_chain";
    case LiftRule::t4_family: return "t4_family";
    }
    return "?";
}

namespace {

std::string describe(const CircuitCertificate& c) {
    std::ostringstream os;
    os << "k=" << c.k << " q=" << c.field->q() << " len=" << c.length << " u=[";
    for (size_t i = 0; i < c.type.u.size(); ++i) os << (i ? "," : "") << c.type.u[i];
    os << "] v=[";
    for (size_t i = 0; i < c.type.v.size(); ++i) os << (i ? "," : "") << c.type.v[i];
    os << "]";
    return os.str();
}

void check_input(const CircuitCertificate& cert, const char* rule) {
    GraphParams g = cert.params();
    if (cert.length != 2 * int(cert.type.u.size()))
        throw std::invalid_argument(std::string(rule) + ": certificate length mismatch");
    CircuitChecks checks = evaluate_circuit_type(g, cert.type);
    if (!checks.coords_zero || !checks.v_sum_zero)
        throw std::invalid_argument(std::string(rule) +
                                    ": input certificate does not verify: " + describe(cert));
}

CircuitCertificate verify_output(const GraphParams& g, const WalkType& wt, LiftRule rule,
                                 const CircuitCertificate& input) {
    auto cert = is_circuit_type(g, wt, /*require_distinct=*/false, lift_rule_name(rule));
    if (!cert) {
        std::ostringstream os;
        os << lift_rule_name(rule) << " output failed verification at k=" << g.k
           << "; this contradicts the rule's theorem. input: " << describe(input);
        throw falsification_error(os.str());
    }
    return *cert;
}

// (u_1, v_1, ..., u_n, v_n) flattened.
std::vector<uint16_t> interleave(const WalkType& wt) {
    std::vector<uint16_t> out;
    out.reserve(2 * wt.u.size());
    for (size_t j = 0; j < wt.u.size(); ++j) {
        out.push_back(wt.u[j]);
        out.push_back(wt.v[j]);
    }
    return out;
}

WalkType split_pairs(const std::vector<uint16_t>& tuple) {
    WalkType wt;
    for (size_t j = 0; j < tuple.size(); j += 2) {
        wt.u.push_back(tuple[j]);
        wt.v.push_back(tuple[j + 1]);
    }
    return wt;
}

// v_1, v_2, ... = 1, -1, 1, -1, ...
std::vector<uint16_t> alternating_pattern(const Field& f, size_t len) {
    std::vector<uint16_t> v(len);
    for (size_t j = 0; j < len; ++j) v[j] = (j % 2 == 0) ? uint16_t(1) : f.negi(1);
    return v;
}

bool has_alternating_pattern(const Field& f, const std::vector<uint16_t>& v) {
    return v == alternating_pattern(f, v.size());
}

} // namespace

CircuitCertificate lift_t2(const CircuitCertificate& cert) {
    if (cert.k % 4 != 1 || cert.k < 5)
        throw std::invalid_argument("t2_up needs k = 4t+1 with t >= 1");
    check_input(cert, "t2_up");
    GraphParams g = GraphParams::make(cert.k + 1, cert.field);
    return verify_output(g, cert.type, LiftRule::t2_up, cert);
}

CircuitCertificate restrict_cert(const CircuitCertificate& cert, int k_new) {
    if (k_new > cert.k)
        throw std::invalid_argument("restriction cannot raise k");
    check_input(cert, "restrict");
    GraphParams g = GraphParams::make(k_new, cert.field);
    auto out = is_circuit_type(g, cert.type, false, cert.provenance + "|restrict");
    if (!out)
        throw std::logic_error("restriction dropped conditions yet failed"); // unreachable
    out->k = k_new; // keep the requested k (1 aliases to 2 in params only)
    return *out;
}

CircuitCertificate lift_t2_down(const CircuitCertificate& cert) {
    if (cert.k % 4 != 2 || cert.k < 6)
        throw std::invalid_argument("t2_down needs k = 4t+2 with t >= 1");
    CircuitCertificate out = restrict_cert(cert, cert.k - 1);
    out.provenance = lift_rule_name(LiftRule::t2_down);
    return out;
}

CircuitCertificate lift_l4(const CircuitCertificate& cert) {
    if (cert.k % 2 != 0 || cert.k < 2)
        throw std::invalid_argument("l4_up needs even k = 2s with s >= 1");
    int n = int(cert.type.u.size());
    if (n < 3)
        throw std::invalid_argument("l4_up needs circuit length 2n with n >= 3");
    check_input(cert, "l4_up");
    const Field& f = *cert.field;
    WalkType out;
    out.u = interleave(cert.type);
    out.v = alternating_pattern(f, out.u.size());
    GraphParams g = GraphParams::make(2 * cert.k + 3, cert.field);
    return verify_output(g, out, LiftRule::l4_up, cert);
}

CircuitCertificate lift_l4_down(const CircuitCertificate& cert) {
    if (cert.k % 4 != 3 || cert.k < 7)
        throw std::invalid_argument("l4_down needs k = 4s+3 with s >= 1");
    if (cert.type.u.size() % 2 != 0)
        throw std::invalid_argument("l4_down needs an even u-count");
    const Field& f = *cert.field;
    if (!has_alternating_pattern(f, cert.type.v))
        throw std::invalid_argument("l4_down needs the alternating v-pattern (1, -1, ...)");
    check_input(cert, "l4_down");
    WalkType inner = split_pairs(cert.type.u);
    GraphParams g = GraphParams::make((cert.k - 3) / 2, cert.field);
    return verify_output(g, inner, LiftRule::l4_down, cert);
}

CircuitCertificate lift_t3_item3(const CircuitCertificate& cert) {
    if (cert.k % 4 != 2 || cert.k < 2)
        throw std::invalid_argument("t3_item3 needs k = 4w-2 with w >= 1");
    const int w = (cert.k + 2) / 4;
    const int n = 2 * w + 1;
    if (cert.length != 4 * w + 2)
        throw std::invalid_argument("t3_item3 needs input length 4w+2 (= k+4, girth-exact)");
    check_input(cert, "t3_item3");
    const Field& f = *cert.field;

    std::vector<uint16_t> tuple = interleave(cert.type); // u_1..u_{2n}
    std::vector<uint16_t> back(tuple.begin() + 1, tuple.end());      // u_2..u_{2n}
    std::vector<uint16_t> front(tuple.begin(), tuple.end() - 1);     // u_1..u_{2n-1}
    uint16_t num = detail::rho_idx(f, back, n - w - 1);
    uint16_t den = detail::rho_idx(f, front, n - w - 1);
    if (num == 0 || den == 0) {
        std::ostringstream os;
        os << "t3_item3: rho_{n-w-1} vanished (num=" << num << ", den=" << den
           << "), which would put a too-short circuit in Lambda(" << (cert.k + 1)
           << "); input: " << describe(cert);
        throw falsification_error(os.str());
    }
    uint16_t alpha = f.negi(f.muli(num, f.invi(den)));

    for (size_t j = 0; j < tuple.size(); j += 2) tuple[j] = f.muli(alpha, tuple[j]);

    // The scaled tuple must still be a circuit of Lambda(k) and must satisfy
    // the pivotal balance rho(back) + rho(front) = 0; both follow from the
    // scaling laws, so a failure here is falsifying, not user error.
    WalkType scaled = split_pairs(tuple);
    CircuitChecks sc = evaluate_circuit_type(cert.params(), scaled);
    std::vector<uint16_t> back2(tuple.begin() + 1, tuple.end());
    std::vector<uint16_t> front2(tuple.begin(), tuple.end() - 1);
    uint16_t balance = f.addi(detail::rho_idx(f, back2, n - w - 1),
                              detail::rho_idx(f, front2, n - w - 1));
    if (!sc.coords_zero || !sc.v_sum_zero || balance != 0)
        throw falsification_error("t3_item3: alpha-scaled tuple lost the circuit conditions; input: " +
                                  describe(cert));

    WalkType out;
    out.u = tuple;
    out.v = alternating_pattern(f, tuple.size());
    GraphParams g = GraphParams::make(8 * w, cert.field);
    return verify_output(g, out, LiftRule::t3_item3, cert);
}

CircuitCertificate lift_t3_item4(const CircuitCertificate& cert) {
    if (cert.field->p() != 2)
        throw std::invalid_argument("t3_item4 needs characteristic 2");
    if (cert.k % 4 != 0 || cert.k < 4)
        throw std::invalid_argument("t3_item4 needs k = 4w with w >= 1");
    const int w = cert.k / 4;
    const int n = int(cert.type.u.size());
    if (n < 3)
        throw std::invalid_argument("t3_item4 needs circuit length 2n with n >= 3");
    check_input(cert, "t3_item4");
    const Field& f = *cert.field;

    // In characteristic 2 the convolution identity forces
    // Delta^n_{2w+2} == nabla^n_{2w+2} on the interleaved tuple.
    std::vector<Elem> uu, vv;
    for (size_t j = 0; j < cert.type.u.size(); ++j) {
        uu.emplace_back(cert.type.u[j], &f);
        vv.emplace_back(cert.type.v[j], &f);
    }
    DeltaNablaTable tab = delta_nabla(n, uu, vv);
    if (tab.delta_at(2 * w + 2) != tab.nabla_at(2 * w + 2))
        throw falsification_error("t3_item4: Delta != nabla at index 2w+2; input: " + describe(cert));

    WalkType out;
    out.u = interleave(cert.type);
    out.v = alternating_pattern(f, out.u.size()); // all ones in char 2
    GraphParams g = GraphParams::make(8 * w + 4, cert.field);
    return verify_output(g, out, LiftRule::t3_item4, cert);
}

std::vector<CircuitCertificate> chain_cor1(const CircuitCertificate& base, int t_max) {
    if (base.field->p() != 2)
        throw std::invalid_argument("cor1_chain needs characteristic 2");
    if (base.k % 2 != 0 || base.k < 2)
        throw std::invalid_argument("cor1_chain needs even k = 2s");
    const int s = base.k / 2;
    if (base.length != 2 * s + 4)
        throw std::invalid_argument("cor1_chain needs a girth-exact base of length 2s+4");
    check_input(base, "cor1_chain");

    std::vector<CircuitCertificate> out;
    CircuitCertificate cur = base;
    cur.provenance = std::string(lift_rule_name(LiftRule::cor1_chain)) + "[t=1]";
    for (int t = 1; t <= t_max; ++t) {
        if (t > 1) {
            CircuitCertificate next =
                (cur.k % 4 == 0) ? lift_t3_item4(cur) : lift_t3_item3(cur);
            next.provenance =
                std::string(lift_rule_name(LiftRule::cor1_chain)) + "[t=" + std::to_string(t) + "]";
            cur = next;
        }
        // girth-exactness at every stage: lifted length == k+4
        if (cur.length != cur.k + 4)
            throw std::logic_error("cor1_chain stage is not girth-exact");
        out.push_back(cur);
        if (cur.k - 1 >= 2) {
            CircuitCertificate lower = restrict_cert(cur, cur.k - 1);
            lower.provenance = cur.provenance + "|restrict";
            out.push_back(lower);
        }
    }
    return out;
}

Theorem4Result theorem4_instance(long long q, int s, int t, uint64_t budget) {
    auto pm = factor_prime_power(q);
    if (!pm)
        throw std::invalid_argument("q must be a prime power");
    const long long p = pm->first;
    if (p < 3)
        throw std::invalid_argument("t4_family needs odd characteristic");
    if (s < 1 || t < 1)
        throw std::invalid_argument("t4_family needs s, t >= 1");
    // 2^s || q-1
    long long qm1 = q - 1;
    int twos = 0;
    while (qm1 % 2 == 0) { qm1 /= 2; ++twos; }
    if (twos != s)
        throw std::invalid_argument("t4_family needs 2^s to divide q-1 exactly");
    // (2t-1) |_p (q-1)
    long long odd = 2 * t - 1;
    long long stripped = odd;
    while (stripped % p == 0) stripped /= p;
    if ((q - 1) % stripped != 0)
        throw std::invalid_argument("t4_family needs (2t-1) |_p (q-1)");

    long long len = (1LL << (s + 2)) * odd; // target girth
    if (len - 5 > 100000)
        throw std::invalid_argument("t4_family instance out of desk range");

    Theorem4Result res;
    res.q = q;
    res.s = s;
    res.t = t;
    res.k = int(len - 5);
    res.girth_claim = int(len);

    if (len < 12) {
        // the doubling chain needs a base of length >= 6; nothing to build
        res.status = "theorem-only";
        return res;
    }

    // Constructive path: a circuit of length len/2 at k_base = len/2 - 4,
    // doubled through the interleave lift.
    const int base_len = int(len / 2);
    const int k_base = base_len - 4;
    auto field = Field::make(int(p), pm->second);
    GraphParams gb = GraphParams::make(k_base, field);

    // exhaustive fallback only when the whole space fits the budget;
    // otherwise the seeded family is the only attempt
    uint64_t space = 1;
    for (int j = 0; j < base_len - 2 && space <= budget; ++j) space *= uint64_t(q - 1);
    TypeSearchResult found = find_circuit_type(gb, base_len / 2, TypeSearchStrategy::Seeded,
                                               space <= budget ? budget : 1);
    if (found.type) {
        auto base = is_circuit_type(gb, *found.type, false, "type-search");
        if (!base)
            throw std::logic_error("search returned a non-verifying type");
        CircuitCertificate lifted = lift_l4(*base);
        lifted.provenance = lift_rule_name(LiftRule::t4_family);
        if (lifted.k != res.k || lifted.length != res.girth_claim)
            throw std::logic_error("t4_family chain landed on the wrong instance");
        res.status = "certified";
        res.chain = {*base, lifted};
    } else {
        res.status = "theorem-only";
    }
    return res;
}

} // namespace lkq
