#include "lkq/field.hpp"

#include <doctest.h>

#include <random>

using namespace lkq;

TEST_SUITE_BEGIN("field");

TEST_CASE("prime field construction") {
    auto f = Field::make(3, 1);
    CHECK(f->p() == 3);
    CHECK(f->m() == 1);
    CHECK(f->q() == 3);
    CHECK(f->modulus().empty());
}

TEST_CASE("GF(4) picks the unique irreducible quadratic") {
    auto f = Field::make(2, 2);
    CHECK(f->q() == 4);
    CHECK(f->modulus() == std::vector<int>{1, 1, 1}); // x^2 + x + 1
}

TEST_CASE("canonical moduli are pinned") {
    CHECK(Field::make(2, 3)->modulus() == std::vector<int>{1, 1, 0, 1}); // x^3 + x + 1
    CHECK(Field::make(3, 2)->modulus() == std::vector<int>{1, 0, 1});    // x^2 + 1
}

TEST_CASE("bad parameters are rejected") {
    CHECK_THROWS_AS((void)Field::make(4, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)Field::make(9, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)Field::make(2, 0), std::invalid_argument);
    // x^2 + 1 = (x+1)^2 over GF(2)
    CHECK_THROWS_AS((void)Field::make(2, 2, std::vector<int>{1, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS((void)Field::make(2, 2, std::vector<int>{1, 1}), std::invalid_argument);
    CHECK_THROWS_AS((void)Field::make(3, 1, std::vector<int>{1, 1}), std::invalid_argument);
}

TEST_CASE("arithmetic examples") {
    auto f3 = Field::make(3, 1);
    CHECK((f3->elem(2) + f3->elem(2)).idx == 1);

    auto f5 = Field::make(5, 1);
    CHECK(f5->elem(2).inv().idx == 3);

    auto f4 = Field::make(2, 2);
    // x has index 2, x*x = x+1 has index 3 under x^2+x+1
    CHECK((f4->elem(2) * f4->elem(2)).idx == 3);
}

TEST_CASE("units are the nonzero elements in index order") {
    auto f3 = Field::make(3, 1);
    auto u3 = f3->units();
    REQUIRE(u3.size() == 2);
    CHECK(u3[0].idx == 1);
    CHECK(u3[1].idx == 2);
    CHECK(Field::make(2, 1)->units().size() == 1);
    CHECK(Field::make(2, 2)->units().size() == 3);
}

TEST_CASE("inv(0) and mixed fields are rejected") {
    auto f3 = Field::make(3, 1);
    auto f5 = Field::make(5, 1);
    CHECK_THROWS_AS((void)f3->elem(0).inv(), std::invalid_argument);
    CHECK_THROWS_AS((void)(f3->elem(1) + f5->elem(1)), std::invalid_argument);
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(20240811);
    for (int q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27}) {
        auto pm = factor_prime_power(q);
        auto f = Field::make(int(pm->first), pm->second);
        for (int trial = 0; trial < 500; ++trial) {
            Elem a = f->elem(int(rng() % uint64_t(q)));
            Elem b = f->elem(int(rng() % uint64_t(q)));
            Elem c = f->elem(int(rng() % uint64_t(q)));
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
        }
        for (int i = 0; i < q; ++i) {
            Elem a = f->elem(i);
            CHECK((a + (-a)).is_zero());
            if (i != 0) CHECK((a * a.inv()).is_one());
        }
    }
}

TEST_CASE("Frobenius is additive for q <= 16") {
    for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
        auto pm = factor_prime_power(q);
        auto f = Field::make(int(pm->first), pm->second);
        uint64_t p = uint64_t(pm->first);
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
                uint16_t lhs = f->powi(f->addi(uint16_t(a), uint16_t(b)), p);
                uint16_t rhs = f->addi(f->powi(uint16_t(a), p), f->powi(uint16_t(b), p));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("parse accepts P^M and plain prime powers") {
    CHECK(Field::parse("3^3")->q() == 27);
    CHECK(Field::parse("49")->p() == 7);
    CHECK(Field::parse("49")->m() == 2);
    CHECK(Field::parse("4")->q() == 4);
    CHECK_THROWS_AS((void)Field::parse("12"), std::invalid_argument);
    CHECK_THROWS_AS((void)Field::parse("zebra"), std::invalid_argument);
}

TEST_SUITE_END();
