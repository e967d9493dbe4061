#include <catch2/catch_amalgamated.hpp>

#include "untwist/json_io.hpp"

using namespace untwist;

TEST_CASE("graded dims serialize with numeric key order and exact bigints") {
    GradedDims g;
    g.add(10, 1);
    g.add(2, Int("123456789012345678901234567890"));
    g.add(0, 1);
    REQUIRE(write_graded_dims(g) ==
            "{\"0\":1,\"2\":123456789012345678901234567890,\"10\":1}");
    REQUIRE(write_graded_dims(GradedDims()) == "{}");
}

TEST_CASE("graded dims parse from objects, including string multiplicities") {
    GradedDims g = parse_graded_dims(json::parse(R"({"0":1,"2":"42"})"));
    REQUIRE(g.dims() == GradedDims::Map{{0, 1}, {2, 42}});
    REQUIRE_THROWS_AS(parse_graded_dims(json::parse(R"({"x":1})")), Error);
    REQUIRE_THROWS_AS(parse_graded_dims(json::parse(R"([1])")), Error);
    // round trip through the writer
    REQUIRE(parse_graded_dims(json::parse(write_graded_dims(g))) == g);
}

TEST_CASE("twist-parameter tables round-trip with descending partition keys") {
    ExtTable t;
    t.d = 2;
    t.entries[{2}] = parse_graded_dims(json::parse(R"({"0":1})"));
    t.entries[{1, 1}] = GradedDims();
    std::string s = write_ext_table(t);
    REQUIRE(s == R"({"d":2,"entries":{"2":{"0":1},"1,1":{}}})");
    ExtTable back = parse_ext_table(json::parse(s));
    REQUIRE(back.d == 2);
    REQUIRE(back.entries == t.entries);
}

TEST_CASE("malformed tables are rejected") {
    REQUIRE_THROWS_AS(parse_ext_table(json::parse(R"({"d":2})")), Error);
    // partition not summing to d
    REQUIRE_THROWS_AS(
        parse_ext_table(json::parse(R"({"d":2,"entries":{"3":{}}})")), Error);
    // non-decreasing parts
    REQUIRE_THROWS_AS(
        parse_ext_table(json::parse(R"({"d":3,"entries":{"1,2":{}}})")), Error);
}

TEST_CASE("bigraded tables serialize as [coh, poly, mult] triples") {
    BigradedTable t = sym_hilbert(1, {0, 2}, 2, 2);
    REQUIRE(write_bigraded_table(t) ==
            R"({"trunc_coh":2,"trunc_poly":2,"entries":[[0,0,1],[0,1,1],[0,2,1],[2,1,1],[2,2,1]]})");
}

TEST_CASE("polynomials serialize as rational coefficient strings") {
    Poly f{Rat(0), Rat(1, 2), Rat(1, 2)};
    REQUIRE(write_poly(f) == R"(["0","1/2","1/2"])");
}
