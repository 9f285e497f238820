#include "lkq/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace lkq {

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::optional<std::pair<long long, int>> factor_prime_power(long long n) {
    if (n < 2) return std::nullopt;
    long long p = n;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) { p = d; break; }
    int m = 0;
    long long rest = n;
    while (rest % p == 0) { rest /= p; ++m; }
    if (rest != 1) return std::nullopt;
    return std::make_pair(p, m);
}

namespace {

// Dense polynomials over GF(p), coefficient 0 first. Only used during field
// construction; everything afterwards goes through the tables.
using Poly = std::vector<int>;

int degree(const Poly& f) {
    for (int i = int(f.size()) - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    return r;
}

// Remainder of a by monic b.
Poly poly_mod(Poly a, const Poly& b, int p) {
    int db = degree(b);
    for (int i = int(a.size()) - 1; i >= db; --i) {
        int c = a[i];
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j)
            a[i - db + j] = ((a[i - db + j] - c * b[j]) % p + p) % p;
    }
    a.resize(std::max(db, 1));
    return a;
}

Poly decode_poly(long long code, int p, int len) {
    Poly f(len, 0);
    for (int i = 0; i < len; ++i) { f[i] = int(code % p); code /= p; }
    return f;
}

bool is_irreducible(const Poly& f, int p) {
    int d = degree(f);
    if (d < 1) return false;
    // Trial division by every monic divisor candidate of degree <= d/2.
    for (int e = 1; 2 * e <= d; ++e) {
        long long count = 1;
        for (int i = 0; i < e; ++i) count *= p;
        for (long long code = 0; code < count; ++code) {
            Poly g = decode_poly(code, p, e + 1);
            g[e] = 1;
            if (degree(poly_mod(f, g, p)) < 0) return false;
        }
    }
    return true;
}

} // namespace

std::shared_ptr<const Field> Field::make(int p, int m, std::optional<std::vector<int>> modulus) {
    if (!is_prime(p))
        throw std::invalid_argument("field characteristic must be prime, got " + std::to_string(p));
    if (m < 1)
        throw std::invalid_argument("extension degree must be >= 1");
    long long q = 1;
    for (int i = 0; i < m; ++i) {
        q *= p;
        if (q > kMaxQ)
            throw std::invalid_argument("field too large: q exceeds " + std::to_string(kMaxQ));
    }

    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->m_ = m;
    f->q_ = int(q);

    if (m > 1) {
        if (modulus) {
            Poly mod = *modulus;
            if (int(mod.size()) != m + 1 || mod[m] != 1)
                throw std::invalid_argument("modulus must be monic of degree m");
            for (int c : mod)
                if (c < 0 || c >= p)
                    throw std::invalid_argument("modulus coefficients must lie in [0, p)");
            if (!is_irreducible(mod, p))
                throw std::invalid_argument("modulus is reducible over GF(p)");
            f->modulus_ = mod;
        } else {
            // Scan monic degree-m polynomials by ascending integer encoding.
            long long pm = q; // p^m
            for (long long low = 0; low < pm; ++low) {
                Poly cand = decode_poly(low, p, m + 1);
                cand[m] = 1;
                if (is_irreducible(cand, p)) { f->modulus_ = cand; break; }
            }
            if (f->modulus_.empty())
                throw std::logic_error("no irreducible polynomial found"); // unreachable
        }
    } else if (modulus) {
        throw std::invalid_argument("modulus is only meaningful for m > 1");
    }

    // Coefficient vectors for every index, then the operation tables.
    const int qq = f->q_;
    std::vector<Poly> repr(qq);
    for (int i = 0; i < qq; ++i) repr[i] = decode_poly(i, p, m);

    auto encode = [&](const Poly& g) {
        long long code = 0, w = 1;
        for (int i = 0; i < m; ++i) { code += (i < int(g.size()) ? g[i] : 0) * w; w *= p; }
        return uint16_t(code);
    };

    f->add_.resize(size_t(qq) * qq);
    f->mul_.resize(size_t(qq) * qq);
    f->neg_.resize(qq);
    f->inv_.assign(qq, 0);
    for (int a = 0; a < qq; ++a) {
        Poly na(m);
        for (int i = 0; i < m; ++i) na[i] = (p - repr[a][i]) % p;
        f->neg_[a] = encode(na);
        for (int b = 0; b < qq; ++b) {
            Poly s(m);
            for (int i = 0; i < m; ++i) s[i] = (repr[a][i] + repr[b][i]) % p;
            f->add_[size_t(a) * qq + b] = encode(s);
            Poly prod = (m == 1) ? Poly{(repr[a][0] * repr[b][0]) % p}
                                 : poly_mod(poly_mul(repr[a], repr[b], p), f->modulus_, p);
            f->mul_[size_t(a) * qq + b] = encode(prod);
        }
    }
    for (int a = 1; a < qq; ++a)
        for (int b = 1; b < qq; ++b)
            if (f->mul_[size_t(a) * qq + b] == 1) { f->inv_[a] = uint16_t(b); break; }

    return f;
}

std::shared_ptr<const Field> Field::parse(const std::string& q_spec,
                                          std::optional<std::vector<int>> modulus) {
    size_t caret = q_spec.find('^');
    long long p;
    int m;
    try {
        if (caret != std::string::npos) {
            p = std::stoll(q_spec.substr(0, caret));
            m = std::stoi(q_spec.substr(caret + 1));
        } else {
            long long n = std::stoll(q_spec);
            auto pm = factor_prime_power(n);
            if (!pm)
                throw std::invalid_argument(q_spec + " is not a prime power");
            p = pm->first;
            m = pm->second;
        }
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse field size '" + q_spec + "'");
    }
    return make(int(p), m, std::move(modulus));
}

Elem Field::elem(int idx) const {
    if (idx < 0 || idx >= q_)
        throw std::invalid_argument("element index out of range");
    return Elem(uint16_t(idx), this);
}

Elem Field::from_coeffs(const std::vector<int>& coeffs) const {
    if (int(coeffs.size()) != m_)
        throw std::invalid_argument("coefficient vector must have length m");
    long long code = 0, w = 1;
    for (int i = 0; i < m_; ++i) {
        if (coeffs[i] < 0 || coeffs[i] >= p_)
            throw std::invalid_argument("coefficient out of range [0, p)");
        code += coeffs[i] * w;
        w *= p_;
    }
    return Elem(uint16_t(code), this);
}

std::vector<int> Field::coeffs(Elem e) const {
    detail::check_same_field(e, zero());
    std::vector<int> c(m_);
    int v = e.idx;
    for (int i = 0; i < m_; ++i) { c[i] = v % p_; v /= p_; }
    return c;
}

std::vector<Elem> Field::units() const {
    std::vector<Elem> u;
    u.reserve(q_ - 1);
    for (int i = 1; i < q_; ++i) u.emplace_back(uint16_t(i), this);
    return u;
}

uint16_t Field::invi(uint16_t a) const {
    if (a == 0)
        throw std::invalid_argument("inverse of zero is undefined");
    return inv_[a];
}

uint16_t Field::powi(uint16_t a, uint64_t e) const {
    uint16_t r = 1;
    while (e) {
        if (e & 1) r = muli(r, a);
        a = muli(a, a);
        e >>= 1;
    }
    return r;
}

namespace detail {
void check_same_field(Elem a, Elem b) {
    if (a.field == nullptr || b.field == nullptr)
        throw std::invalid_argument("element has no field attached");
    if (a.field != b.field)
        throw std::invalid_argument("mixed-field operands");
}
} // namespace detail

} // namespace lkq
