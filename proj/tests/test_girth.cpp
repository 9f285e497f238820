#include "lkq/girth.hpp"

#include <doctest.h>

using namespace lkq;

namespace {

GraphParams params(int p, int m, int k) { return GraphParams::make(k, Field::make(p, m)); }

} // namespace

TEST_SUITE_BEGIN("girth");

TEST_CASE("small girths over GF(3)") {
    CHECK(girth_bfs(params(3, 1, 2)).girth == 6);
    CHECK(girth_bfs(params(3, 1, 3)).girth == 8);
    CHECK(girth_bfs(params(3, 1, 4)).girth == 12);
}

TEST_CASE("q = 2 staircase starts at 8") {
    CHECK(girth_bfs(params(2, 1, 2)).girth == 8);
    CHECK(girth_bfs(params(2, 1, 5)).girth == 16);
}

TEST_CASE("witness cycle and certificate come back verified") {
    GirthResult res = girth_bfs(params(3, 1, 3));
    REQUIRE(res.girth == 8);
    REQUIRE(res.witness_cycle.has_value());
    CHECK(res.witness_cycle->size() == 8);
    REQUIRE(res.witness_cert.has_value());
    CHECK(res.witness_cert->length == 8);
    CHECK(res.witness_cert->checks.vertices_distinct);
    CHECK(res.witness_cert->provenance == "bfs");
}

TEST_CASE("depth budget produces a bracket, never a guess") {
    GirthResult res = girth_bfs(params(3, 1, 4), /*max_depth=*/5);
    CHECK(!res.girth.has_value());
    CHECK(res.budget_exhausted);
    CHECK(res.lower_bound >= 8);
    CHECK(res.lower_bound % 2 == 0);
}

TEST_CASE("full BFS agrees with the root-edge shortcut") {
    for (int q : {2, 3}) {
        auto f = Field::make(q, 1);
        for (int k = 2; k <= 6; ++k) {
            GraphParams g = GraphParams::make(k, f);
            GirthResult fast = girth_bfs(g);
            GirthResult full = girth_full_bfs(g);
            REQUIRE(fast.girth.has_value());
            REQUIRE(full.girth.has_value());
            CHECK(*fast.girth == *full.girth);
        }
    }
}

TEST_CASE("full BFS on GF(4) instances") {
    CHECK(girth_full_bfs(params(2, 2, 2)).girth == 6);
    CHECK(girth_full_bfs(params(2, 2, 5)).girth == 10);
    CHECK(girth_bfs(params(2, 2, 5)).girth == 10);
    // the same-type transfer implies equal girth one step up
    CHECK(girth_full_bfs(params(2, 2, 6)).girth == 10);
}

TEST_CASE("shortcut agrees with full BFS across characteristics") {
    for (auto [p, m, k] : {std::tuple{2, 2, 3}, {2, 2, 4}, {5, 1, 3}, {5, 1, 4},
                           {7, 1, 2},           {7, 1, 3}, {2, 3, 3}, {3, 2, 3}}) {
        GraphParams g = params(p, m, k);
        auto fast = girth_bfs(g);
        auto full = girth_full_bfs(g);
        REQUIRE(fast.girth.has_value());
        CHECK(fast.girth == full.girth);
    }
    // girth 8 at k = 3 for every q > 3 in reach
    for (auto [p, m] : {std::pair{2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}})
        CHECK(girth_bfs(params(p, m, 3)).girth == 8);
}

TEST_CASE("full BFS size guard") {
    CHECK_THROWS_AS((void)girth_full_bfs(params(3, 1, 12)), std::invalid_argument);
}

TEST_CASE("BFS confirms the derived 24 at k = 19 over GF(3)") {
    GirthResult res = girth_bfs(params(3, 1, 19));
    CHECK(res.girth == 24);
}

TEST_CASE("parallel frontier mode is bit-identical") {
    GraphParams g = params(3, 1, 5);
    GirthResult one = girth_bfs(g, 64, uint64_t(1) << 30, 1);
    GirthResult four = girth_bfs(g, 64, uint64_t(1) << 30, 4);
    REQUIRE(one.girth.has_value());
    CHECK(one.girth == four.girth);
    REQUIRE(one.witness_cycle.has_value());
    REQUIRE(four.witness_cycle.has_value());
    CHECK(*one.witness_cycle == *four.witness_cycle);
    CHECK(one.witness_cert->type.u == four.witness_cert->type.u);
    CHECK(one.witness_cert->type.v == four.witness_cert->type.v);
}

TEST_CASE("type search finds a hexagon type at (2,3)") {
    GraphParams g = params(3, 1, 2);
    auto res = find_circuit_type(g, 3, TypeSearchStrategy::Exhaustive);
    REQUIRE(res.type.has_value());
    CHECK(is_circuit_type(g, *res.type, true).has_value());

    auto dfs = find_circuit_type(g, 3, TypeSearchStrategy::GraphDfs);
    REQUIRE(dfs.type.has_value());
    CHECK(is_circuit_type(g, *dfs.type, true).has_value());
}

TEST_CASE("no 8-circuit exists in Lambda(5,4)") {
    GraphParams g = params(2, 2, 5);
    auto res = find_circuit_type(g, 4, TypeSearchStrategy::Exhaustive);
    CHECK(!res.type.has_value());
    CHECK(res.space_exhausted);
}

TEST_CASE("seeded family hits the all-ones circuit when (i) is a power of p") {
    // (t+2) = 9 = 3^2: the all-ones type of length 18 closes in Lambda(13,3)
    GraphParams g = params(3, 1, 13);
    auto res = find_circuit_type(g, 9, TypeSearchStrategy::Seeded);
    REQUIRE(res.type.has_value());
    CHECK(res.type->u == std::vector<uint16_t>(9, 1));
    CHECK(res.type->v == std::vector<uint16_t>(9, 1));
    CHECK(res.candidates_tried <= 2); // family only, not the exhaustive scan
}

TEST_CASE("a found type upper-bounds the BFS girth") {
    GraphParams g = params(3, 1, 4);
    auto res = find_circuit_type(g, 6, TypeSearchStrategy::Exhaustive);
    REQUIRE(res.type.has_value());
    CHECK(*girth_bfs(g).girth <= 12);
}

TEST_CASE("girth is monotone in k on computed cases") {
    auto f = Field::make(3, 1);
    int prev = 0;
    for (int k = 2; k <= 8; ++k) {
        int girth = *girth_bfs(GraphParams::make(k, f)).girth;
        CHECK(girth >= prev);
        prev = girth;
    }
}

TEST_CASE("conjecture scan rows") {
    auto rows = scan_conjecture({3, 4}, {3, 5});
    REQUIRE(rows.size() == 4);
    // (3, q=3): girth 8 = k+5, recorded although out of scope
    CHECK(rows[0].k == 3);
    CHECK(rows[0].girth == 8);
    CHECK(!rows[0].in_scope);
    CHECK(rows[0].status == "satisfied");
    // (5, q=4): girth 10 = k+5
    CHECK(rows[3].q == 4);
    CHECK(rows[3].girth == 10);
    CHECK(rows[3].in_scope);
    CHECK(rows[3].status == "satisfied");

    std::string csv = scan_csv(rows);
    CHECK(csv.find("k,q,girth,lower,in_scope,status") == 0);
    CHECK(csv.find("5,4,10,10,1,satisfied") != std::string::npos);
}

TEST_SUITE_END();
