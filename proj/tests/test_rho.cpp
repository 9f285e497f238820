#include "lkq/rho.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace lkq;

namespace {

OmegaSeq seq(const std::shared_ptr<const Field>& f, std::initializer_list<int> vals) {
    OmegaSeq w;
    for (int v : vals) w.push_back(f->elem(v));
    return w;
}

std::vector<uint16_t> idx_of(const OmegaSeq& w) {
    std::vector<uint16_t> out;
    for (auto e : w) out.push_back(e.idx);
    return out;
}

} // namespace

TEST_SUITE_BEGIN("rho");

TEST_CASE("rho_0 is the plain product") {
    auto f5 = Field::make(5, 1);
    CHECK(rho(0, seq(f5, {2, 3})).idx == 1); // 6 = 1 mod 5
}

TEST_CASE("null sequence convention") {
    auto f5 = Field::make(5, 1);
    CHECK(rho(*f5, 0, {}).idx == 1);
    CHECK(rho(*f5, 1, {}).idx == 0);
    CHECK(rho_oracle(*f5, 0, {}).idx == 1);
    CHECK(rho_oracle(*f5, 1, {}).idx == 0);
}

TEST_CASE("single pair deletions") {
    auto f7 = Field::make(7, 1);
    CHECK(rho(1, seq(f7, {1, 2, 3})).idx == 4); // w3 + w1
    auto f5 = Field::make(5, 1);
    CHECK(rho(1, seq(f5, {1, 1, 1, 1})).idx == 3); // three deletions of a pair
}

TEST_CASE("out-of-range s vanishes") {
    auto f5 = Field::make(5, 1);
    auto w = seq(f5, {1, 2, 3});
    CHECK(rho(-1, w).is_zero());
    CHECK(rho(2, w).is_zero());
    CHECK(rho_oracle(-1, w).is_zero());
    CHECK(rho_oracle(2, w).is_zero());
}

TEST_CASE("DP == closed-form oracle == deletion enumeration, exhaustive over GF(3)") {
    auto f3 = Field::make(3, 1);
    for (int n = 1; n <= 8; ++n) {
        std::vector<int> w(size_t(n), 1);
        while (true) {
            OmegaSeq om;
            for (int v : w) om.push_back(f3->elem(v));
            auto ids = idx_of(om);
            for (int s = -1; s <= n / 2 + 1; ++s) {
                uint16_t dp = rho(*f3, s, om).idx;
                uint16_t oc = rho_oracle(*f3, s, om).idx;
                uint16_t del = testing::rho_by_deletion(*f3, ids, s);
                REQUIRE(dp == oc);
                REQUIRE(dp == del);
            }
            int pos = n - 1;
            while (pos >= 0 && w[size_t(pos)] == 2) { w[size_t(pos)] = 1; --pos; }
            if (pos < 0) break;
            w[size_t(pos)] = 2;
        }
    }
}

TEST_CASE("DP == oracle on random sequences over larger fields") {
    std::mt19937_64 rng(7);
    for (int q : {4, 5, 8, 9}) {
        auto pm = factor_prime_power(q);
        auto f = Field::make(int(pm->first), pm->second);
        for (int trial = 0; trial < 100; ++trial) {
            int n = 1 + int(rng() % 14);
            OmegaSeq om;
            for (int i = 0; i < n; ++i) om.push_back(f->elem(int(1 + rng() % uint64_t(q - 1))));
            int s = int(rng() % uint64_t(n / 2 + 2)) - 1;
            CHECK(rho(*f, s, om).idx == rho_oracle(*f, s, om).idx);
            CHECK(rho(*f, s, om).idx == testing::rho_by_deletion(*f, idx_of(om), s));
        }
    }
}

TEST_CASE("prefix recurrence holds on the public API") {
    std::mt19937_64 rng(11);
    auto f9 = Field::make(3, 2);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + int(rng() % 10);
        OmegaSeq om;
        for (int i = 0; i < n; ++i) om.push_back(f9->elem(int(1 + rng() % 8)));
        OmegaSeq head2(om.begin(), om.end() - 2), head1(om.begin(), om.end() - 1);
        for (int s = 0; s <= n / 2; ++s) {
            Elem expect = rho(*f9, s - 1, head2) + om.back() * rho(*f9, s, head1);
            CHECK(rho(*f9, s, om) == expect);
        }
    }
}

TEST_CASE("delta/nabla values at n = 1 match the degenerate case") {
    auto f5 = Field::make(5, 1);
    std::vector<Elem> u{f5->elem(2)}, v{f5->elem(3)};
    auto tab = delta_nabla(1, u, v);
    CHECK(tab.delta_at(0).idx == 1);
    CHECK(tab.nabla_at(0).idx == 1);
    CHECK(tab.delta_at(1).idx == 3);  // v1
    CHECK(tab.nabla_at(1).idx == 2);  // u1
    CHECK(tab.nabla_at(2).idx == 1);  // u1 v1 = 6 = 1 mod 5
    for (int t = 2; t <= 4; ++t) CHECK(tab.delta_at(t).is_zero());
    for (int t = 3; t <= 4; ++t) CHECK(tab.nabla_at(t).is_zero());
    CHECK(tab.delta_at(-1).is_zero());
    CHECK(tab.nabla_at(99).is_zero());
}

TEST_CASE("delta_0 is 1 and table entries stay in the field") {
    std::mt19937_64 rng(13);
    auto f2 = Field::make(2, 1);
    for (int n = 1; n <= 5; ++n) {
        std::vector<Elem> u(size_t(n), f2->elem(1)), v(size_t(n), f2->elem(1));
        auto tab = delta_nabla(n, u, v);
        CHECK(tab.delta_at(0).idx == 1);
        for (int t = 0; t <= 2 * n + 2; ++t) {
            CHECK(tab.delta_at(t).idx <= 1);
            CHECK(tab.nabla_at(t).idx <= 1);
        }
    }
}

TEST_CASE("alternating convolution examples") {
    auto f5 = Field::make(5, 1);
    std::vector<Elem> u{f5->elem(2)}, v{f5->elem(3)};
    CHECK(lemma2_sum(1, 1, u, v).is_zero());
    CHECK(lemma2_sum(1, 5, u, v).is_zero());

    std::mt19937_64 rng(17);
    auto f9 = Field::make(3, 2);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Elem> u4, v4;
        for (int i = 0; i < 4; ++i) {
            u4.push_back(f9->elem(int(1 + rng() % 8)));
            v4.push_back(f9->elem(int(1 + rng() % 8)));
        }
        CHECK(lemma2_sum(4, 2, u4, v4).is_zero());
    }
}

TEST_CASE("alternating convolution vanishes for all j") {
    std::mt19937_64 rng(19);
    for (int q : {3, 4, 5, 8, 9}) {
        auto pm = factor_prime_power(q);
        auto f = Field::make(int(pm->first), pm->second);
        for (int n = 1; n <= 6; ++n)
            for (int j = 1; j <= n + 1; ++j)
                for (int trial = 0; trial < 25; ++trial) {
                    std::vector<Elem> u, v;
                    for (int i = 0; i < n; ++i) {
                        u.push_back(f->elem(int(1 + rng() % uint64_t(q - 1))));
                        v.push_back(f->elem(int(1 + rng() % uint64_t(q - 1))));
                    }
                    CHECK(lemma2_sum(n, j, u, v).is_zero());
                }
    }
}

TEST_CASE("the eight pattern reductions hold") {
    auto f3 = Field::make(3, 1);
    std::vector<Elem> ones(6, f3->elem(1));
    for (auto [lhs, rhs] : lemma3_check(3, 1, ones)) CHECK(lhs == rhs);

    // t out of the core range is trivially valid but still exercised
    std::mt19937_64 rng(23);
    for (int q : {3, 5, 9}) {
        auto pm = factor_prime_power(q);
        auto f = Field::make(int(pm->first), pm->second);
        for (int n = 1; n <= 4; ++n)
            for (int t = -1; t <= n + 1; ++t)
                for (int trial = 0; trial < 30; ++trial) {
                    std::vector<Elem> u;
                    for (int i = 0; i < 2 * n; ++i)
                        u.push_back(f->elem(int(1 + rng() % uint64_t(q - 1))));
                    auto pairs = lemma3_check(n, t, u);
                    for (auto [lhs, rhs] : pairs) CHECK(lhs == rhs);
                    CHECK(pairs[7].second.is_zero());
                }
    }
}

TEST_CASE("scaling laws") {
    auto f5 = Field::make(5, 1);
    auto w = seq(f5, {1, 1, 1, 1});
    SUBCASE("identity scaling") {
        auto [lhs, rhs] = scaling_check(2, 1, w, f5->elem(1), f5->elem(1));
        CHECK(lhs == rhs);
        CHECK(lhs == rho(1, w));
    }
    SUBCASE("even length") {
        auto [lhs, rhs] = scaling_check(2, 1, w, f5->elem(2), f5->elem(3));
        CHECK(lhs == rhs);
    }
    SUBCASE("odd length, value pinned by the deletion oracle") {
        auto f7 = Field::make(7, 1);
        auto w3 = seq(f7, {1, 1, 1});
        auto [lhs, rhs] = scaling_check(1, 0, w3, f7->elem(2), f7->elem(1));
        CHECK(lhs == rhs);
        // scaled sequence is (2,1,2); rho_1 = w3' + w1' = 4
        CHECK(lhs.idx == testing::rho_by_deletion(*f7, {2, 1, 2}, 1));
        CHECK(lhs.idx == 4);
    }
    SUBCASE("random") {
        std::mt19937_64 rng(29);
        auto f8 = Field::make(2, 3);
        for (int trial = 0; trial < 200; ++trial) {
            int n = 1 + int(rng() % 6);
            int len = 2 * n + int(rng() % 2);
            OmegaSeq om;
            for (int i = 0; i < len; ++i) om.push_back(f8->elem(int(1 + rng() % 7)));
            int j = int(rng() % uint64_t(n + 1));
            auto [lhs, rhs] = scaling_check(n, j, om, f8->elem(int(1 + rng() % 7)),
                                            f8->elem(int(1 + rng() % 7)));
            CHECK(lhs == rhs);
        }
    }
    SUBCASE("zero scale factors are rejected") {
        CHECK_THROWS_AS((void)scaling_check(2, 1, w, f5->elem(0), f5->elem(1)),
                        std::invalid_argument);
    }
}

TEST_SUITE_END();
