#include "lkq/graph.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace lkq;

namespace {

WalkType random_type(std::mt19937_64& rng, int q, int i) {
    WalkType wt;
    for (int j = 0; j < i; ++j) {
        wt.u.push_back(uint16_t(1 + rng() % uint64_t(q - 1)));
        wt.v.push_back(uint16_t(1 + rng() % uint64_t(q - 1)));
    }
    return wt;
}

} // namespace

TEST_SUITE_BEGIN("graph");

TEST_CASE("k = 1 aliases to k = 2") {
    auto f3 = Field::make(3, 1);
    CHECK(GraphParams::make(1, f3).k == 2);
    CHECK(GraphParams::make(2, f3).k == 2);
    CHECK_THROWS_AS((void)GraphParams::make(0, f3), std::invalid_argument);
}

TEST_CASE("neighbor generation basics") {
    auto f3 = Field::make(3, 1);
    GraphParams g = GraphParams::make(2, f3);
    Vertex zl = Vertex::zero(g, Side::L);
    Vertex zr = Vertex::zero(g, Side::R);

    CHECK(is_adjacent(g, zl, zr)); // the root edge
    CHECK(neighbor_of_left(g, zl, 0) == zr);
    CHECK(neighbor_of_right(g, zr, 0) == zl);

    Vertex r1 = neighbor_of_left(g, zl, 1);
    CHECK(r1.coords == std::vector<uint16_t>{1, 0, 0});
    CHECK(is_adjacent(g, zl, r1));
}

TEST_CASE("q-regularity and per-color uniqueness") {
    for (int q : {2, 3, 4}) {
        auto pm = factor_prime_power(q);
        auto f = Field::make(int(pm->first), pm->second);
        for (int k = 2; k <= 4; ++k) {
            GraphParams g = GraphParams::make(k, f);
            std::mt19937_64 rng(uint64_t(97 * q + k));
            for (int trial = 0; trial < 20; ++trial) {
                Vertex l = Vertex::from_key(g, Side::L, rng() % *g.key_space());
                std::set<uint64_t> nbrs;
                for (int c = 0; c < q; ++c) {
                    Vertex r = neighbor_of_left(g, l, uint16_t(c));
                    CHECK(is_adjacent(g, l, r));
                    CHECK(r.coords[0] == uint16_t(c));
                    nbrs.insert(r.key(g));
                    // color-round-trip gives back the same vertex
                    CHECK(neighbor_of_right(g, r, l.coords[0]) == l);
                }
                CHECK(nbrs.size() == size_t(q));
            }
        }
    }
}

TEST_CASE("neighbor uniqueness, exhaustive at small scale") {
    // for every right vertex r and color a there is exactly one left
    // neighbor with first coordinate a
    for (int q : {2, 3, 4}) {
        auto pm = factor_prime_power(q);
        auto f = Field::make(int(pm->first), pm->second);
        for (int k = 2; k <= 4; ++k) {
            GraphParams g = GraphParams::make(k, f);
            for (uint64_t rk = 0; rk < *g.key_space(); ++rk) {
                Vertex r = Vertex::from_key(g, Side::R, rk);
                for (int a = 0; a < q; ++a) {
                    int hits = 0;
                    for (uint64_t lk = 0; lk < *g.key_space(); ++lk) {
                        Vertex l = Vertex::from_key(g, Side::L, lk);
                        if (l.coords[0] == uint16_t(a) && is_adjacent(g, l, r)) ++hits;
                    }
                    CHECK(hits == 1);
                }
            }
        }
    }
}

TEST_CASE("adjacency rejects perturbed pairs and same-side input") {
    auto f5 = Field::make(5, 1);
    GraphParams g = GraphParams::make(5, f5);
    Vertex l = Vertex::from_key(g, Side::L, 1234 % *g.key_space());
    Vertex r = neighbor_of_left(g, l, 3);
    CHECK(is_adjacent(g, l, r));
    Vertex bad = r;
    bad.coords[3] = uint16_t((bad.coords[3] + 1) % 5);
    CHECK(!is_adjacent(g, l, bad));
    CHECK_THROWS_AS((void)is_adjacent(g, l, l), std::invalid_argument);
}

TEST_CASE("vertex keys are a bijection") {
    for (auto [p, m, k] : {std::tuple{3, 1, 3}, {2, 1, 5}, {2, 2, 4}}) {
        auto f = Field::make(p, m);
        GraphParams g = GraphParams::make(k, f);
        for (Side side : {Side::L, Side::R}) {
            std::set<std::vector<uint16_t>> seen;
            for (uint64_t key = 0; key < *g.key_space(); ++key) {
                Vertex v = Vertex::from_key(g, side, key);
                CHECK(v.key(g) == key);
                if (side == Side::L) CHECK(v.coords[1] == v.coords[2]);
                if (side == Side::R) CHECK(v.coords[1] == 0);
                seen.insert(v.coords);
            }
            CHECK(seen.size() == *g.key_space());
        }
    }
}

TEST_CASE("walk simulation") {
    auto f3 = Field::make(3, 1);
    GraphParams g = GraphParams::make(2, f3);

    SUBCASE("empty type gives the root edge") {
        auto walk = walk_simulate(g, WalkType{});
        REQUIRE(walk.size() == 2);
        CHECK(walk[0] == Vertex::zero(g, Side::L));
        CHECK(walk[1] == Vertex::zero(g, Side::R));
    }
    SUBCASE("u=(1), v=(1) reaches 4 distinct vertices") {
        auto walk = walk_simulate(g, WalkType{{1}, {1}});
        REQUIRE(walk.size() == 4);
        std::set<std::pair<int, std::vector<uint16_t>>> s;
        for (const auto& v : walk) s.insert({int(v.side), v.coords});
        CHECK(s.size() == 4);
    }
    SUBCASE("zero increments are rejected") {
        CHECK_THROWS_AS((void)walk_simulate(g, WalkType{{0}, {1}}), std::invalid_argument);
    }
    SUBCASE("consecutive vertices adjacent, no immediate backtrack") {
        std::mt19937_64 rng(31);
        for (int trial = 0; trial < 50; ++trial) {
            WalkType wt = random_type(rng, 3, 5);
            auto walk = walk_simulate(g, wt);
            for (size_t j = 0; j + 1 < walk.size(); ++j) {
                const Vertex& a = walk[j].side == Side::L ? walk[j] : walk[j + 1];
                const Vertex& b = walk[j].side == Side::L ? walk[j + 1] : walk[j];
                CHECK(is_adjacent(g, a, b));
            }
            for (size_t j = 0; j + 2 < walk.size(); ++j) CHECK(!(walk[j] == walk[j + 2]));
        }
    }
}

TEST_CASE("closed-form endpoint equals the simulated walk") {
    std::mt19937_64 rng(37);
    for (int q : {3, 4, 5}) {
        auto pm = factor_prime_power(q);
        auto f = Field::make(int(pm->first), pm->second);
        for (int k : {2, 3, 5, 7, 10}) {
            GraphParams g = GraphParams::make(k, f);
            for (int trial = 0; trial < 60; ++trial) {
                int i = 1 + int(rng() % 8);
                WalkType wt = random_type(rng, q, i);
                auto walk = walk_simulate(g, wt);
                const Vertex& last_left = walk[size_t(2 * i)];
                CHECK(lemma1_coords(g, wt) == last_left.coords);
            }
        }
    }
}

TEST_CASE("coordinate 0 of the closed form is the u-sum") {
    std::mt19937_64 rng(41);
    auto f5 = Field::make(5, 1);
    GraphParams g = GraphParams::make(6, f5);
    for (int trial = 0; trial < 100; ++trial) {
        int i = 1 + int(rng() % 7);
        WalkType wt = random_type(rng, 5, i);
        uint16_t su = 0;
        for (uint16_t e : wt.u) su = f5->addi(su, e);
        CHECK(lemma1_coords(g, wt)[0] == su);
    }
}

TEST_CASE("circuit checker on the hexagon of Lambda(2,3)") {
    auto f3 = Field::make(3, 1);
    GraphParams g = GraphParams::make(2, f3);

    WalkType hexagon{{1, 1, 1}, {1, 1, 1}};
    auto coords = lemma1_coords(g, hexagon);
    CHECK(coords == std::vector<uint16_t>{0, 0, 0});

    auto cert = is_circuit_type(g, hexagon, true, "test");
    REQUIRE(cert.has_value());
    CHECK(cert->length == 6);
    CHECK(cert->checks.coords_zero);
    CHECK(cert->checks.v_sum_zero);
    CHECK(cert->checks.vertices_distinct);
    CHECK(cert->provenance == "test");

    WalkType bad{{1, 1, 1}, {1, 1, 2}}; // v-sum = 4 = 1 != 0
    CHECK(!is_circuit_type(g, bad, false).has_value());

    CHECK_THROWS_AS((void)is_circuit_type(g, WalkType{{1, 0, 1}, {1, 1, 1}}, false),
                    std::invalid_argument);
}

TEST_SUITE_END();
