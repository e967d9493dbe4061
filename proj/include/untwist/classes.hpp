#pragma once

// Formal bookkeeping for the universal cocycle classes: divided powers of the
// even generators, the classes indexed by composition matrices, their cup
// products, and the degree conservation of the comparison map.

#include <cstdint>
#include <utility>
#include <vector>

#include "untwist/combin.hpp"
#include "untwist/errors.hpp"
#include "untwist/numeric.hpp"

namespace untwist {

// gamma^k(e_j): k-th divided power of the degree-2j generator; degree 2jk.
struct DividedPowerSymbol {
    std::uint32_t k = 0;
    std::uint32_t j = 0;
    std::uint64_t degree() const { return 2ull * j * k; }
    bool operator==(const DividedPowerSymbol& o) const { return k == o.k && j == o.j; }
};

inline DividedPowerSymbol gamma(std::uint32_t k, std::uint32_t j) {
    return {k, j};  // k == 0 is the unit (degree 0)
}

// Divided power multiplication: gamma^a(e_j) * gamma^b(e_j)
// = C(a+b, a) gamma^(a+b)(e_j).
inline std::pair<Int, DividedPowerSymbol> gamma_product(const DividedPowerSymbol& a,
                                                        const DividedPowerSymbol& b) {
    require(a.j == b.j, ErrorCode::domain,
            "gamma_product: divided powers of different generators");
    return {binomial(Int(a.k) + b.k, a.k), gamma(a.k + b.k, a.j)};
}

// c_nu: the class cut out by the matrix nu (l x m), built from the exterior
// divided powers gamma^{nu_ij}(e_j).  It lives in cohomological degree t(nu)
// and its domain is indexed by the p-scaled row-sum composition of nu.
struct CocycleSymbol {
    CompMatrix nu;
    std::uint32_t p = 0;

    std::uint64_t degree() const { return weight_t(nu); }
    Composition domain() const { return rowsum_p(nu, p); }

    std::vector<DividedPowerSymbol> factors() const {
        std::vector<DividedPowerSymbol> fs;
        for (const auto& row : nu.rows)
            for (std::size_t j = 0; j < row.size(); ++j)
                if (row[j] > 0) fs.push_back(gamma(row[j], static_cast<std::uint32_t>(j)));
        return fs;
    }

    bool operator==(const CocycleSymbol& o) const { return nu == o.nu && p == o.p; }
};

inline CocycleSymbol class_c(const CompMatrix& nu, std::uint32_t p) {
    require(p >= 2, ErrorCode::domain, "class_c: p must be >= 2");
    CocycleSymbol c{nu, p};
    // degree consistency with the divided-power factors
    std::uint64_t deg = 0;
    for (const auto& f : c.factors()) deg += f.degree();
    require(deg == c.degree(), ErrorCode::internal, "class degree bookkeeping broken");
    return c;
}

// Cup product compatibility: c_lam (cup) c_mu corresponds, after restriction
// along the diagonal, to c_(lam+mu).  Shapes must agree.
inline CocycleSymbol cup_compose(const CocycleSymbol& a, const CocycleSymbol& b) {
    require(a.p == b.p, ErrorCode::domain, "cup_compose: mismatched characteristic");
    require(a.nu.n_rows() == b.nu.n_rows() && a.nu.n_cols() == b.nu.n_cols(),
            ErrorCode::domain, "cup_compose: mismatched index shapes");
    CompMatrix sum_nu = a.nu;
    for (std::size_t i = 0; i < sum_nu.n_rows(); ++i)
        for (std::size_t j = 0; j < sum_nu.n_cols(); ++j)
            sum_nu.rows[i][j] += b.nu.rows[i][j];
    CocycleSymbol c = class_c(sum_nu, a.p);
    require(c.degree() == a.degree() + b.degree(), ErrorCode::internal,
            "cup product degree is not additive");
    return c;
}

// The comparison map sends a source summand (nu, ext degree e) to the target
// slot (row-sum composition of nu, e + t(nu)).  Total degree is conserved:
// e + p*s(nu) + t(nu) on the source equals (e + t(nu)) + s(nu-bar) on the
// target, since s(nu-bar) = p*s(nu) for any basis degrees.
struct PhiSlot {
    Composition target_index;
    std::uint64_t target_ext = 0;
};

inline PhiSlot phi_slot(const CompMatrix& nu, std::uint32_t p, std::uint64_t ext,
                        const std::vector<std::uint64_t>& basis_degs) {
    Composition bar = rowsum_p(nu, p);
    std::uint64_t s_nu = weight_s(nu, basis_degs);
    std::uint64_t t_nu = weight_t(nu);
    // s(nu-bar) computed independently from the row sums
    std::uint64_t s_bar = 0;
    for (std::size_t i = 0; i < bar.size(); ++i)
        s_bar += static_cast<std::uint64_t>(bar[i]) * basis_degs[i];
    require(ext + p * s_nu + t_nu == (ext + t_nu) + s_bar, ErrorCode::internal,
            "total degree not conserved by the comparison map");
    return {bar, ext + t_nu};
}

}  // namespace untwist
