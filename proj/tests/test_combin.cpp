#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "untwist/combin.hpp"

using namespace untwist;

TEST_CASE("compositions enumerate in descending lexicographic order") {
    auto c = compositions(1, 2);
    REQUIRE(c == std::vector<Composition>{{1, 0}, {0, 1}});
    for (std::uint32_t d = 0; d <= 5; ++d)
        for (std::uint32_t k = 1; k <= 4; ++k) {
            auto cs = compositions(d, k);
            REQUIRE(Int(cs.size()) == count_compositions(d, k));
            std::set<Composition> uniq(cs.begin(), cs.end());
            REQUIRE(uniq.size() == cs.size());
            for (std::size_t i = 0; i + 1 < cs.size(); ++i) REQUIRE(cs[i] > cs[i + 1]);
            for (const auto& mu : cs) {
                std::uint32_t s = 0;
                for (auto v : mu) s += v;
                REQUIRE(s == d);
            }
        }
}

TEST_CASE("reorder sorts parts and drops zeros") {
    REQUIRE(reorder({0, 2, 1, 0}) == Partition{2, 1});
    REQUIRE(reorder({0, 0}) == Partition{});
    REQUIRE(reorder({3, 3, 1}) == Partition{3, 3, 1});
}

TEST_CASE("composition matrices flatten row-major") {
    auto ms = comp_matrices(1, 1, 2);
    REQUIRE(ms.size() == 2);
    REQUIRE(ms[0].rows == std::vector<std::vector<std::uint32_t>>{{1, 0}});
    REQUIRE(ms[1].rows == std::vector<std::vector<std::uint32_t>>{{0, 1}});
    auto big = comp_matrices(2, 2, 2);
    REQUIRE(Int(big.size()) == count_compositions(2, 4));
    for (const auto& nu : big) REQUIRE(nu.total() == 2);
}

TEST_CASE("weight statistics") {
    CompMatrix nu;
    nu.rows = {{1, 2}, {0, 3}};  // 2 rows, columns 0 and 1
    REQUIRE(weight_t(nu) == 2 * 2 + 3 * 2);  // column 1 carries degree 2
    REQUIRE(weight_s(nu, {0, 2}) == (0 * 3 + 2 * 3));
    REQUIRE(rowsum_p(nu, 2) == Composition{6, 6});
    // s of the row-sum composition is p times s of the matrix
    Composition bar = rowsum_p(nu, 2);
    std::uint64_t s_bar = 0;
    std::vector<std::uint64_t> degs{0, 2};
    for (std::size_t i = 0; i < bar.size(); ++i) s_bar += bar[i] * degs[i];
    REQUIRE(s_bar == 2 * weight_s(nu, degs));
}

TEST_CASE("pairings are canonical and counted by the double factorial") {
    for (std::uint32_t d = 1; d <= 6; ++d) {
        Int expect = factorial(2 * d) / (ipow(2, d) * factorial(d));
        REQUIRE(count_pairings(2 * d) == expect);
        if (d <= 5) {
            auto ps = pairings(2 * d);
            REQUIRE(Int(ps.size()) == expect);
            std::set<Pairing> uniq(ps.begin(), ps.end());
            REQUIRE(uniq.size() == ps.size());
            for (const auto& m : ps) {
                std::set<std::uint32_t> seen;
                std::uint32_t last_i = 0;
                for (const auto& [i, j] : m) {
                    REQUIRE(i < j);
                    REQUIRE(i > last_i);
                    last_i = i;
                    seen.insert(i);
                    seen.insert(j);
                }
                REQUIRE(seen.size() == 2 * d);
            }
        }
    }
    REQUIRE(pairings(4).front() == Pairing{{1, 2}, {3, 4}});
}

TEST_CASE("count_reorderings is the slot multinomial") {
    REQUIRE(count_reorderings({2, 1}, 4) == 12);
    REQUIRE(count_reorderings({3}, 7) == 7);
    REQUIRE(count_reorderings({1, 1}, 2) == 1);
    REQUIRE(count_reorderings({1, 1, 1}, 2) == 0);
    // agrees with direct enumeration
    for (std::uint32_t d = 1; d <= 4; ++d)
        for (std::uint32_t k = 1; k <= 5; ++k) {
            std::map<Partition, Int> counts;
            for (const auto& mu : compositions(d, k)) counts[reorder(mu)] += 1;
            for (const auto& lam : partitions(d, d))
                REQUIRE(count_reorderings(lam, k) ==
                        (counts.count(lam) ? counts[lam] : Int(0)));
        }
    // polynomial in k: spot-check a large slot count
    REQUIRE(count_reorderings({2, 1}, Int("1000000000000")) ==
            Int("1000000000000") * Int("999999999999"));
}

TEST_CASE("partitions enumerate with a part-count bound") {
    REQUIRE(partitions(4, 4).size() == 5);
    REQUIRE(partitions(4, 2).size() == 3);  // (4),(3,1),(2,2)
    REQUIRE(partitions(0, 3) == std::vector<Partition>{{}});
}
