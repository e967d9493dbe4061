#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "untwist/schur/algebra.hpp"
#include "untwist/schur/wedderburn.hpp"

using namespace untwist;

namespace {

// number of nonnegative integer matrices with the given row and column sums
// (independent counting oracle for intertwiner dimensions)
std::uint64_t matrix_count(std::vector<std::uint32_t> rows,
                           std::vector<std::uint32_t> cols) {
    std::uint64_t rsum = std::accumulate(rows.begin(), rows.end(), 0u);
    std::uint64_t csum = std::accumulate(cols.begin(), cols.end(), 0u);
    if (rsum != csum) return 0;
    if (rows.empty()) return 1;
    // distribute the first row over the columns, recurse
    std::uint64_t total = 0;
    std::vector<std::uint32_t> pick(cols.size(), 0);
    std::function<void(std::size_t, std::uint32_t)> go = [&](std::size_t j,
                                                             std::uint32_t left) {
        if (j + 1 == cols.size()) {
            if (left > cols[j]) return;
            pick[j] = left;
            std::vector<std::uint32_t> rest_cols = cols;
            for (std::size_t t = 0; t < cols.size(); ++t) rest_cols[t] -= pick[t];
            total += matrix_count({rows.begin() + 1, rows.end()}, rest_cols);
            return;
        }
        for (std::uint32_t v = 0; v <= std::min(left, cols[j]); ++v) {
            pick[j] = v;
            go(j + 1, left - v);
        }
    };
    go(0, rows.front());
    return total;
}

std::string ten_of(const char* head, const std::vector<std::uint32_t>& parts) {
    std::string s = "Ten(";
    for (std::size_t i = 0; i < parts.size(); ++i)
        s += (i ? "," : "") + std::string(head) + "(" + std::to_string(parts[i]) + ")";
    return s + ")";
}

}  // namespace

TEST_CASE("commutant dimension matches the closed form") {
    REQUIRE(build_schur_algebra(2, 2, 2)->dim == 10);
    REQUIRE(build_schur_algebra(3, 3, 3, Budget{})->dim == 165);
    REQUIRE(build_schur_algebra(2, 1, 5)->dim == 4);
    REQUIRE(build_schur_algebra(4, 4, 2)->dim == 3876);
}

TEST_CASE("orbit basis matrices commute with the place permutations") {
    auto alg = build_schur_algebra(2, 3, 2);
    // swapping two tensor slots permutes the ambient basis; every orbit matrix
    // must be invariant under simultaneous row and column permutation
    auto swap01 = [&](std::uint32_t w) {
        std::uint32_t d0 = w % 2, d1 = (w / 2) % 2;
        return (w - d0 - 2 * d1) + d1 + 2 * d0;
    };
    for (std::size_t b = 0; b < alg->dim; ++b) {
        std::set<std::pair<std::uint32_t, std::uint32_t>> entries(
            alg->basis[b].begin(), alg->basis[b].end());
        for (const auto& [u, v] : alg->basis[b])
            REQUIRE(entries.count({swap01(u), swap01(v)}) == 1);
    }
}

TEST_CASE("structure constants give an associative unital algebra") {
    auto alg = build_schur_algebra(2, 2, 2);
    RegularAlgebra R = regular_from_schur(*alg);
    const GaloisField& F = *R.F;
    REQUIRE(R.mul(R.one, R.one) == R.one);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint32_t> elt(0, F.q - 1);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<Mat::Elt> x(R.dim), y(R.dim), z(R.dim);
        for (auto& v : x) v = static_cast<Mat::Elt>(elt(rng));
        for (auto& v : y) v = static_cast<Mat::Elt>(elt(rng));
        for (auto& v : z) v = static_cast<Mat::Elt>(elt(rng));
        REQUIRE(R.mul(R.mul(x, y), z) == R.mul(x, R.mul(y, z)));
        REQUIRE(R.mul(R.one, x) == x);
        REQUIRE(R.mul(x, R.one) == x);
        // the ambient representation is an algebra map
        REQUIRE(R.rep_of(R.mul(x, y)) == R.rep_of(x) * R.rep_of(y));
    }
}

TEST_CASE("functor expression parsing round-trips and validates") {
    REQUIRE(parse_functor("Ten(Div(2), Sym(1))").str() == "Ten(Div(2),Sym(1))");
    REQUIRE(parse_functor("Compose(Div(2),Fr(1))").degree(2) == 4);
    REQUIRE(parse_functor("Fr(2)").degree(3) == 9);
    REQUIRE(parse_functor("Div(2)∘Fr(1)").str() == "Compose(Div(2),Fr(1))");
    REQUIRE(parse_functor("Ten(Div(1),Div(1))∘Fr(2)").degree(2) ==
            parse_functor("Compose(Ten(Div(1),Div(1)),Fr(2))").degree(2));
    REQUIRE_THROWS_AS(parse_functor("Fr(1)∘Fr(1)"), Error);
    REQUIRE_THROWS_AS(parse_functor("Div(2)∘Sym(2)"), Error);
    REQUIRE_THROWS_AS(parse_functor("Compose(Fr(1),Fr(1))"), Error);
    REQUIRE_THROWS_AS(parse_functor("Compose(Div(2),Sym(2))"), Error);
    REQUIRE_THROWS_AS(parse_functor("Sym(2)x"), Error);
    REQUIRE_THROWS_AS(parse_functor("Frob(1)"), Error);
    REQUIRE_THROWS_AS(parse_functor("Sym(0)"), Error);
}

TEST_CASE("functor evaluations have the predicted dimensions") {
    // each call checks its own dimension against the closed form internally
    REQUIRE(evaluate_functor("Sym(2)", 3, 2).dim == 6);
    REQUIRE(evaluate_functor("Div(2)", 3, 2).dim == 6);
    REQUIRE(evaluate_functor("Ext(2)", 3, 2).dim == 3);
    REQUIRE(evaluate_functor("Ext(3)", 3, 3).dim == 1);
    REQUIRE(evaluate_functor("Fr(1)", 2, 2).dim == 2);
    REQUIRE(evaluate_functor("Fr(1)", 2, 3).dim == 2);
    REQUIRE(evaluate_functor("Id", 3, 2).dim == 3);
    REQUIRE(evaluate_functor("Ten(Sym(2),Id)", 2, 2).dim == 6);
    REQUIRE(evaluate_functor("Ten(Div(1),Ext(2),Sym(1))", 2, 2).dim == 4);
    REQUIRE(evaluate_functor("Compose(Div(2),Fr(1))", 2, 2).dim == 3);
    REQUIRE(evaluate_functor("Compose(Div(2),Fr(1))", 4, 2).dim == 10);
    REQUIRE(evaluate_functor("Compose(Sym(2),Fr(1))", 2, 2).dim == 3);
    REQUIRE(evaluate_functor("Compose(Ext(2),Fr(1))", 2, 2).dim == 1);
    REQUIRE(evaluate_functor("Compose(Ten(Div(1),Div(1)),Fr(1))", 2, 2).dim == 4);
}

TEST_CASE("realizations are stable under the algebra action") {
    for (const char* expr : {"Sym(2)", "Div(2)", "Ext(2)", "Fr(1)",
                             "Compose(Div(2),Fr(1))"}) {
        ModuleRep m = evaluate_functor(expr, 2, 2);
        for (std::size_t b = 0; b < m.alg->dim; ++b) REQUIRE(m.stable_under(b));
    }
    ModuleRep m3 = evaluate_functor("Ten(Div(2),Sym(1))", 3, 3);
    for (std::size_t b = 0; b < m3.alg->dim; b += 7) REQUIRE(m3.stable_under(b));
}

TEST_CASE("intertwiner dimensions: twist against degree-2 functors") {
    ModuleRep fr = evaluate_functor("Fr(1)", 2, 2);
    REQUIRE(hom_dim(fr, evaluate_functor("Sym(2)", 2, 2)) == 1);
    REQUIRE(hom_dim(fr, evaluate_functor("Ext(2)", 2, 2)) == 0);
    REQUIRE(hom_dim(evaluate_functor("Div(2)", 2, 2), fr) == 1);
    REQUIRE(hom_dim(fr, fr) == 1);
}

TEST_CASE("intertwiner dimensions match the matrix-counting rule") {
    // dim Hom(Div^lam, Sym^mu) counts nonnegative integer matrices with row
    // sums lam and column sums mu
    std::vector<std::vector<std::uint32_t>> parts3 = {{3}, {2, 1}, {1, 1, 1}};
    for (const auto& lam : parts3)
        for (const auto& mu : parts3) {
            ModuleRep M = evaluate_functor(ten_of("Div", lam), 3, 2);
            ModuleRep N = evaluate_functor(ten_of("Sym", mu), 3, 2);
            REQUIRE(hom_dim(M, N) == matrix_count(lam, mu));
        }
    // degree-4 spot checks over the 3876-dimensional algebra
    {
        ModuleRep M = evaluate_functor("Div(4)", 4, 2);
        ModuleRep N = evaluate_functor("Sym(4)", 4, 2);
        REQUIRE(hom_dim(M, N) == 1);
        REQUIRE(matrix_count({4}, {4}) == 1);
    }
}

TEST_CASE("intertwiner dimensions are independent of the field size") {
    ModuleRep a = evaluate_functor("Fr(1)", 2, 2);
    ModuleRep b = evaluate_functor("Sym(2)", 2, 2);
    REQUIRE(hom_dim(a, b) == 1);
    ModuleRep a8 = evaluate_functor("Fr(1)", 2, 2, Budget{}, 8);
    ModuleRep b8 = evaluate_functor("Sym(2)", 2, 2, Budget{}, 8);
    REQUIRE(a8.alg->F->q == 8);
    REQUIRE(hom_dim(a8, b8) == 1);
    ModuleRep c8 = evaluate_functor("Ext(2)", 2, 2, Budget{}, 8);
    REQUIRE(hom_dim(a8, c8) == 0);
}

TEST_CASE("budgets are enforced") {
    Budget tight;
    tight.max_ambient = 8;
    REQUIRE_THROWS_AS(evaluate_functor("Sym(4)", 2, 2, tight), Error);
    try {
        evaluate_functor("Sym(4)", 2, 2, tight);
    } catch (const Error& e) {
        REQUIRE(e.code() == ErrorCode::budget);
    }
    Budget small;
    small.max_regular_dim = 5;
    auto alg = build_schur_algebra(2, 2, 2);
    REQUIRE_THROWS_AS(regular_from_schur(*alg, small), Error);
}
