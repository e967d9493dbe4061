#include <catch2/catch_amalgamated.hpp>

#include "untwist/classes.hpp"

using namespace untwist;

TEST_CASE("divided power symbols carry degree 2jk") {
    REQUIRE(gamma(0, 3).degree() == 0);
    REQUIRE(gamma(2, 3).degree() == 12);
    auto [coeff, g] = gamma_product(gamma(1, 2), gamma(2, 2));
    REQUIRE(coeff == 3);
    REQUIRE(g == gamma(3, 2));
    REQUIRE_THROWS_AS(gamma_product(gamma(1, 1), gamma(1, 2)), Error);
}

TEST_CASE("classes live in degree t(nu) with p-scaled row-sum domain") {
    CompMatrix nu;
    nu.rows = {{1, 2}, {0, 1}};
    CocycleSymbol c = class_c(nu, 2);
    REQUIRE(c.degree() == weight_t(nu));
    REQUIRE(c.domain() == Composition{6, 2});
    REQUIRE(c.factors().size() == 3);
}

TEST_CASE("cup products add indices and degrees") {
    CompMatrix a, b;
    a.rows = {{1, 0}, {0, 1}};
    b.rows = {{0, 2}, {1, 0}};
    CocycleSymbol cab = cup_compose(class_c(a, 3), class_c(b, 3));
    CompMatrix expect;
    expect.rows = {{1, 2}, {1, 1}};
    REQUIRE(cab == class_c(expect, 3));
    REQUIRE(cab.degree() == class_c(a, 3).degree() + class_c(b, 3).degree());
    // shape mismatch is rejected
    CompMatrix wide;
    wide.rows = {{1, 0, 0}};
    REQUIRE_THROWS_AS(cup_compose(class_c(a, 3), class_c(wide, 3)), Error);
}

TEST_CASE("comparison map slots conserve total degree exhaustively") {
    for (std::uint32_t p : {2, 3})
        for (std::uint32_t d = 1; d <= 3; ++d)
            for (std::uint32_t l = 1; l <= 2; ++l) {
                std::vector<std::uint64_t> degs;
                for (std::uint32_t i = 0; i < l; ++i) degs.push_back(2 * i);
                for (const auto& nu : comp_matrices(d, l, p)) {
                    for (std::uint64_t ext = 0; ext <= 4; ext += 2) {
                        PhiSlot slot = phi_slot(nu, p, ext, degs);
                        REQUIRE(slot.target_index == rowsum_p(nu, p));
                        REQUIRE(slot.target_ext == ext + weight_t(nu));
                    }
                }
            }
}

TEST_CASE("cup products of classes match the summed class exhaustively") {
    for (std::uint32_t p : {2, 3})
        for (std::uint32_t d = 1; d <= 2; ++d)
            for (std::uint32_t l = 1; l <= 2; ++l) {
                auto mats = comp_matrices(d, l, p);
                for (const auto& a : mats)
                    for (const auto& b : mats) {
                        CocycleSymbol cup = cup_compose(class_c(a, p), class_c(b, p));
                        CompMatrix s = a;
                        for (std::size_t i = 0; i < s.n_rows(); ++i)
                            for (std::size_t j = 0; j < s.n_cols(); ++j)
                                s.rows[i][j] += b.rows[i][j];
                        REQUIRE(cup == class_c(s, p));
                    }
            }
}
