#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lkq {

class Field;

// Element of a finite field, identified by its canonical index in [0, q).
// The index encodes the coefficient vector: idx = sum coeffs[i] * p^i, so
// index 0 is the additive and index 1 the multiplicative identity.
struct Elem {
    uint16_t idx = 0;
    const Field* field = nullptr;

    Elem() = default;
    Elem(uint16_t i, const Field* f) : idx(i), field(f) {}

    bool is_zero() const { return idx == 0; }
    bool is_one() const { return idx == 1; }

    Elem operator+(Elem o) const;
    Elem operator-(Elem o) const;
    Elem operator*(Elem o) const;
    Elem operator/(Elem o) const;
    Elem operator-() const;
    Elem inv() const;

    bool operator==(Elem o) const { return idx == o.idx && field == o.field; }
    bool operator!=(Elem o) const { return !(*this == o); }
};

// GF(p^m) with all operations backed by precomputed tables. Immutable after
// construction and shareable across threads; every operation is pure.
class Field {
public:
    static constexpr int kMaxQ = 1024;

    // modulus: coefficients c0..cm with cm = 1, irreducible over GF(p); only
    // consulted for m > 1. When omitted, the monic irreducible of degree m
    // with the smallest integer encoding (sum c_i p^i) is selected, so
    // element indices are reproducible across runs.
    static std::shared_ptr<const Field> make(int p, int m,
        std::optional<std::vector<int>> modulus = std::nullopt);

    // Accepts "P^M" or a plain integer N (factored; rejected unless N is a
    // prime power).
    static std::shared_ptr<const Field> parse(const std::string& q_spec,
        std::optional<std::vector<int>> modulus = std::nullopt);

    int p() const { return p_; }
    int m() const { return m_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    Elem elem(int idx) const;
    Elem zero() const { return Elem(0, this); }
    Elem one() const { return Elem(1, this); }
    Elem from_coeffs(const std::vector<int>& coeffs) const;
    std::vector<int> coeffs(Elem e) const;

    // All q-1 nonzero elements, ascending by canonical index.
    std::vector<Elem> units() const;

    // Index-level operations for hot loops. Arguments must be < q.
    uint16_t addi(uint16_t a, uint16_t b) const { return add_[size_t(a) * q_ + b]; }
    uint16_t subi(uint16_t a, uint16_t b) const { return add_[size_t(a) * q_ + neg_[b]]; }
    uint16_t muli(uint16_t a, uint16_t b) const { return mul_[size_t(a) * q_ + b]; }
    uint16_t negi(uint16_t a) const { return neg_[a]; }
    uint16_t invi(uint16_t a) const;
    uint16_t powi(uint16_t a, uint64_t e) const;

    bool same_spec(const Field& o) const {
        return p_ == o.p_ && m_ == o.m_ && modulus_ == o.modulus_;
    }

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

private:
    Field() = default;

    int p_ = 0, m_ = 0, q_ = 0;
    std::vector<int> modulus_;           // empty for m == 1
    std::vector<uint16_t> add_, mul_;    // q*q tables
    std::vector<uint16_t> neg_, inv_;    // q tables; inv_[0] unused
};

bool is_prime(long long n);

// n = p^m with p prime, m >= 1; nullopt when n is not a prime power.
std::optional<std::pair<long long, int>> factor_prime_power(long long n);

namespace detail {
void check_same_field(Elem a, Elem b);
}

inline Elem Elem::operator+(Elem o) const {
    detail::check_same_field(*this, o);
    return Elem(field->addi(idx, o.idx), field);
}
inline Elem Elem::operator-(Elem o) const {
    detail::check_same_field(*this, o);
    return Elem(field->subi(idx, o.idx), field);
}
inline Elem Elem::operator*(Elem o) const {
    detail::check_same_field(*this, o);
    return Elem(field->muli(idx, o.idx), field);
}
inline Elem Elem::operator/(Elem o) const {
    detail::check_same_field(*this, o);
    return Elem(field->muli(idx, field->invi(o.idx)), field);
}
inline Elem Elem::operator-() const { return Elem(field->negi(idx), field); }
inline Elem Elem::inv() const { return Elem(field->invi(idx), field); }

} // namespace lkq
