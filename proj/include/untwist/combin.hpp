#pragma once

// Compositions, partitions, composition matrices and perfect matchings, with
// the weight statistics used by the twist-parameter decompositions.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "untwist/errors.hpp"
#include "untwist/numeric.hpp"

namespace untwist {

using Composition = std::vector<std::uint32_t>;  // fixed number of slots, zeros kept
using Partition = std::vector<std::uint32_t>;    // weakly decreasing, no zeros

// l x m matrix of nonnegative integers; rows indexed 1..l, columns 0..m-1.
struct CompMatrix {
    std::vector<std::vector<std::uint32_t>> rows;

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_cols() const { return rows.empty() ? 0 : rows.front().size(); }
    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (const auto& row : rows)
            for (auto v : row) t += v;
        return t;
    }
    bool operator==(const CompMatrix& o) const { return rows == o.rows; }
    auto operator<=>(const CompMatrix& o) const { return rows <=> o.rows; }
};

// Perfect matching of {1, ..., 2d} as pairs (i_n, j_n), i_n < j_n, i_1 < i_2 < ...
using Pairing = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

inline Int count_compositions(std::uint64_t d, std::uint64_t k) {
    if (k == 0) return d == 0 ? 1 : 0;
    return binomial(Int(d + k - 1), static_cast<std::uint64_t>(k - 1));
}

// All compositions of d into exactly k slots, descending lexicographic order:
// compositions(1,2) = [(1,0),(0,1)].
inline std::vector<Composition> compositions(std::uint32_t d, std::uint32_t k) {
    require(count_compositions(d, k) <= Int(1u << 22), ErrorCode::budget,
            "compositions: too many to enumerate");
    std::vector<Composition> out;
    if (k == 0) {
        if (d == 0) out.push_back({});
        return out;
    }
    Composition cur(k, 0);
    auto rec = [&](auto&& self, std::uint32_t slot, std::uint32_t rem) -> void {
        if (slot + 1 == k) {
            cur[slot] = rem;
            out.push_back(cur);
            return;
        }
        for (std::uint32_t v = rem; v != static_cast<std::uint32_t>(-1); --v) {
            cur[slot] = v;
            self(self, slot + 1, rem - v);
        }
    };
    rec(rec, 0, d);
    return out;
}

// Sort the parts of a composition into a partition (zeros dropped).
inline Partition reorder(const Composition& mu) {
    Partition lam;
    for (auto v : mu)
        if (v > 0) lam.push_back(v);
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return lam;
}

// All l x m nonnegative integer matrices with total entry sum a, ordered by
// descending lexicographic order of the row-major flattening.
inline std::vector<CompMatrix> comp_matrices(std::uint32_t a, std::uint32_t l,
                                             std::uint32_t m) {
    std::vector<CompMatrix> out;
    for (const auto& flat : compositions(a, l * m)) {
        CompMatrix nu;
        nu.rows.assign(l, std::vector<std::uint32_t>(m, 0));
        for (std::uint32_t i = 0; i < l; ++i)
            for (std::uint32_t j = 0; j < m; ++j) nu.rows[i][j] = flat[i * m + j];
        out.push_back(std::move(nu));
    }
    return out;
}

// s(nu) = sum_{i,j} nu[i][j] * basis_degs[i]  (row i weighted by a basis degree).
inline std::uint64_t weight_s(const CompMatrix& nu,
                              const std::vector<std::uint64_t>& basis_degs) {
    require(basis_degs.size() == nu.n_rows(), ErrorCode::domain,
            "weight_s: basis degree count must equal the number of rows");
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < nu.n_rows(); ++i)
        for (auto v : nu.rows[i]) s += static_cast<std::uint64_t>(v) * basis_degs[i];
    return s;
}

// t(nu) = sum_{i,j} nu[i][j] * 2j  (column j carries cohomological degree 2j).
inline std::uint64_t weight_t(const CompMatrix& nu) {
    std::uint64_t t = 0;
    for (const auto& row : nu.rows)
        for (std::size_t j = 0; j < row.size(); ++j)
            t += static_cast<std::uint64_t>(row[j]) * 2 * j;
    return t;
}

// Row-sum map: nu (l x m, total d) -> composition with l slots, entry
// p * (sum of row i); total p*d.
inline Composition rowsum_p(const CompMatrix& nu, std::uint32_t p) {
    Composition bar(nu.n_rows(), 0);
    for (std::size_t i = 0; i < nu.n_rows(); ++i) {
        std::uint32_t s = 0;
        for (auto v : nu.rows[i]) s += v;
        bar[i] = p * s;
    }
    return bar;
}

inline Int count_pairings(std::uint32_t two_d) {
    require(two_d % 2 == 0, ErrorCode::domain, "count_pairings: odd set size");
    Int c = 1;
    for (std::uint32_t k = two_d; k > 1; k -= 2) c *= k - 1;  // (2d-1)!!
    return c;
}

// Canonical enumeration of perfect matchings of {1..2d}: the smallest unused
// element is paired with each larger unused element in increasing order.
inline std::vector<Pairing> pairings(std::uint32_t two_d) {
    require(two_d % 2 == 0, ErrorCode::domain, "pairings: odd set size");
    require(count_pairings(two_d) <= Int(1u << 22), ErrorCode::budget,
            "pairings: too many to enumerate");
    std::vector<Pairing> out;
    std::vector<bool> used(two_d + 1, false);
    Pairing cur;
    auto rec = [&](auto&& self) -> void {
        std::uint32_t i = 1;
        while (i <= two_d && used[i]) ++i;
        if (i > two_d) {
            out.push_back(cur);
            return;
        }
        used[i] = true;
        for (std::uint32_t j = i + 1; j <= two_d; ++j) {
            if (used[j]) continue;
            used[j] = true;
            cur.emplace_back(i, j);
            self(self);
            cur.pop_back();
            used[j] = false;
        }
        used[i] = false;
    };
    rec(rec);
    return out;
}

// Number of compositions with k slots whose sorted parts equal lambda:
// the multinomial k! / (prod_v m_v!) over part-value multiplicities, with the
// zero slots counted; 0 when lambda has more (nonzero) parts than k.
inline Int count_reorderings(const Partition& lam, const Int& k) {
    std::size_t s = lam.size();
    if (Int(s) > k) return 0;
    // k * (k-1) * ... * (k-s+1) / prod over equal-value runs of (run length)!
    Int num = 1;
    for (std::size_t i = 0; i < s; ++i) num *= k - Int(i);
    Int den = 1;
    std::size_t i = 0;
    while (i < s) {
        std::size_t j = i;
        while (j < s && lam[j] == lam[i]) ++j;
        den *= factorial(j - i);
        i = j;
    }
    return num / den;  // exact
}

// All partitions of d with at most max_parts parts, descending lex order.
inline std::vector<Partition> partitions(std::uint32_t d, std::uint32_t max_parts) {
    std::vector<Partition> out;
    Partition cur;
    auto rec = [&](auto&& self, std::uint32_t rem, std::uint32_t max_val) -> void {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        if (cur.size() >= max_parts) return;
        for (std::uint32_t v = std::min(rem, max_val); v >= 1; --v) {
            cur.push_back(v);
            self(self, rem - v, v);
            cur.pop_back();
        }
    };
    rec(rec, d, d);
    return out;
}

}  // namespace untwist
