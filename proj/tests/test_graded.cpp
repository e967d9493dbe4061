#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "untwist/graded.hpp"

using namespace untwist;

static GradedDims random_dims(std::mt19937_64& rng, int max_deg = 10, int max_mult = 3) {
    GradedDims g;
    std::uniform_int_distribution<int> deg(0, max_deg), mult(0, max_mult);
    for (int i = 0; i < 5; ++i) g.add(deg(rng), mult(rng));
    return g;
}

TEST_CASE("make_er places one dimension in each even degree below 2p^r") {
    GradedDims e = make_er(2, 1);
    REQUIRE(e.dims() == GradedDims::Map{{0, 1}, {2, 1}});
    for (std::uint64_t p : {2, 3, 5}) {
        for (std::uint64_t r = 0; r <= 3; ++r) {
            GradedDims er = make_er(p, r);
            Int q = ipow(p, r);
            REQUIRE(er.total_dim() == q);
            REQUIRE(er.max_degree() == 2 * static_cast<std::uint64_t>(q - 1));
            for (const auto& [deg, mult] : er.dims()) {
                REQUIRE(deg % 2 == 0);
                REQUIRE(mult == 1);
            }
        }
    }
}

TEST_CASE("stretch-tensor factorization of the twist parameter algebra") {
    for (std::uint64_t p : {2, 3, 5})
        for (std::uint64_t r = 1; r <= 3; ++r)
            REQUIRE(make_er(p, r) ==
                    tensor(frobenius_stretch(make_er(p, r - 1), p), make_er(p, 1)));
}

TEST_CASE("sum and tensor respect total dimension") {
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 50; ++i) {
        GradedDims a = random_dims(rng), b = random_dims(rng);
        REQUIRE(total_dim(sum(a, b)) == total_dim(a) + total_dim(b));
        REQUIRE(total_dim(tensor(a, b)) == total_dim(a) * total_dim(b));
        REQUIRE(tensor(a, b) == tensor(b, a));
        REQUIRE(total_dim(shift(a, 7)) == total_dim(a));
    }
}

TEST_CASE("shift and stretch move degrees as expected") {
    GradedDims a;
    a.add(1, 2);
    a.add(4, 1);
    REQUIRE(shift(a, 3).dims() == GradedDims::Map{{4, 2}, {7, 1}});
    REQUIRE(frobenius_stretch(a, 3).dims() == GradedDims::Map{{3, 2}, {12, 1}});
    // stretch then tensor is multiplicative on supports
    REQUIRE(frobenius_stretch(tensor(a, a), 2) ==
            tensor(frobenius_stretch(a, 2), frobenius_stretch(a, 2)));
}

TEST_CASE("graded dims never store zero multiplicities") {
    GradedDims g;
    g.add(3, 5);
    g.add(3, -5);
    REQUIRE(g.empty());
    GradedDims h;
    h.add(0, 1);
    GradedDims k;
    k.add(0, 2);
    REQUIRE_THROWS_AS(h.subtract(k), Error);
}

TEST_CASE("sym_hilbert matches the expanded product, one generator per shift") {
    // (1-u)^-1 (1-t^2 u)^-1 truncated at coh<=2, poly<=2
    BigradedTable t = sym_hilbert(1, {0, 2}, 2, 2);
    std::map<std::pair<int, int>, Int> expect{
        {{0, 0}, 1}, {{0, 1}, 1}, {{0, 2}, 1}, {{2, 1}, 1}, {{2, 2}, 1}};
    REQUIRE(t.entries == expect);
}

TEST_CASE("sym_hilbert with four generators per shift (frozen hand expansion)") {
    BigradedTable t = sym_hilbert(4, {0, 2}, 4, 3);
    std::map<std::pair<int, int>, Int> expect{
        {{0, 0}, 1},  {{0, 1}, 4},  {{0, 2}, 10}, {{0, 3}, 20}, {{2, 1}, 4},
        {{2, 2}, 16}, {{2, 3}, 40}, {{4, 2}, 10}, {{4, 3}, 40}};
    REQUIRE(t.entries == expect);
}

TEST_CASE("sym_hilbert rejects odd shifts and negative truncations") {
    REQUIRE_THROWS_AS(sym_hilbert(1, {1}, 2, 2), Error);
    REQUIRE_THROWS_AS(sym_hilbert(1, {0}, -1, 2), Error);
}
