#pragma once

// Finitely supported graded dimension vectors (Poincaré series with
// arbitrary-precision coefficients) and bigraded Hilbert-series tables.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "untwist/errors.hpp"
#include "untwist/numeric.hpp"

namespace untwist {

// degree -> multiplicity; entries with multiplicity 0 are never stored.
class GradedDims {
  public:
    using Map = std::map<std::uint64_t, Int>;

    GradedDims() = default;
    explicit GradedDims(Map m) : dims_(std::move(m)) { normalize(); }
    GradedDims(std::initializer_list<std::pair<std::uint64_t, Int>> init) {
        for (const auto& [deg, mult] : init) dims_[deg] = mult;
        normalize();
    }

    const Map& dims() const { return dims_; }
    bool empty() const { return dims_.empty(); }

    Int at(std::uint64_t degree) const {
        auto it = dims_.find(degree);
        return it == dims_.end() ? Int(0) : it->second;
    }

    void add(std::uint64_t degree, const Int& mult) {
        if (mult == 0) return;
        Int& slot = dims_[degree];
        slot += mult;
        if (slot == 0) dims_.erase(degree);
    }

    // Throws negative_coefficient if any multiplicity of `other` exceeds ours.
    void subtract(const GradedDims& other) {
        for (const auto& [deg, mult] : other.dims_) {
            Int have = at(deg);
            require(have >= mult, ErrorCode::negative_coefficient,
                    "subtraction below zero in degree " + std::to_string(deg));
            add(deg, -mult);
        }
    }

    Int total_dim() const {
        Int t = 0;
        for (const auto& [deg, mult] : dims_) t += mult;
        return t;
    }

    std::uint64_t max_degree() const {
        return dims_.empty() ? 0 : dims_.rbegin()->first;
    }

    // Degrees listed with multiplicity, ascending.  Only valid when every
    // multiplicity fits in a machine count (used for small parameter spaces).
    std::vector<std::uint64_t> degree_list() const {
        std::vector<std::uint64_t> out;
        for (const auto& [deg, mult] : dims_) {
            require(mult <= Int(1u << 20), ErrorCode::budget,
                    "degree_list: multiplicity too large to expand");
            for (Int i = 0; i < mult; ++i) out.push_back(deg);
        }
        return out;
    }

    bool operator==(const GradedDims& o) const { return dims_ == o.dims_; }

  private:
    void normalize() {
        for (auto it = dims_.begin(); it != dims_.end();) {
            require(it->second >= 0, ErrorCode::domain,
                    "negative multiplicity in graded dimensions");
            it = it->second == 0 ? dims_.erase(it) : std::next(it);
        }
    }

    Map dims_;
};

inline GradedDims sum(const GradedDims& a, const GradedDims& b) {
    GradedDims r = a;
    for (const auto& [deg, mult] : b.dims()) r.add(deg, mult);
    return r;
}

// Graded tensor product = convolution of the dimension vectors.
inline GradedDims tensor(const GradedDims& a, const GradedDims& b) {
    GradedDims r;
    for (const auto& [da, ma] : a.dims())
        for (const auto& [db, mb] : b.dims()) r.add(da + db, ma * mb);
    return r;
}

inline GradedDims shift(const GradedDims& a, std::uint64_t s) {
    GradedDims r;
    for (const auto& [deg, mult] : a.dims()) r.add(deg + s, mult);
    return r;
}

// Homothety of the grading: degree i moves to degree p*i (the effect of
// precomposing with a Frobenius twist on the grading of an Ext algebra).
inline GradedDims frobenius_stretch(const GradedDims& a, std::uint64_t p) {
    require(p >= 2, ErrorCode::domain, "frobenius_stretch: p must be >= 2");
    GradedDims r;
    for (const auto& [deg, mult] : a.dims()) r.add(deg * p, mult);
    return r;
}

// One dimension in each even degree 0, 2, ..., 2*p^r - 2 (total dim p^r).
inline GradedDims make_er(std::uint64_t p, std::uint64_t r) {
    require(p >= 2, ErrorCode::domain, "make_er: p must be >= 2");
    Int q = ipow(p, r);
    require(q <= Int(1u << 26), ErrorCode::budget, "make_er: p^r too large");
    GradedDims e;
    for (std::uint64_t i = 0; Int(i) < q; ++i) e.add(2 * i, 1);
    return e;
}

inline Int total_dim(const GradedDims& a) { return a.total_dim(); }

// Truncated bigraded table: (cohomological degree, polynomial degree) -> mult.
struct BigradedTable {
    int trunc_coh = 0;
    int trunc_poly = 0;
    std::map<std::pair<int, int>, Int> entries;

    bool operator==(const BigradedTable& o) const {
        return trunc_coh == o.trunc_coh && trunc_poly == o.trunc_poly &&
               entries == o.entries;
    }
};

// Coefficient expansion of prod_{s in shift_degrees} (1 - t^s u)^(-gdim),
// truncated to coh <= trunc_coh, poly <= trunc_poly.  Models the Hilbert
// series of a free graded-commutative algebra on gdim generators placed in
// each listed even cohomological shift degree.
inline BigradedTable sym_hilbert(std::uint64_t gdim,
                                 const std::vector<std::uint64_t>& shift_degrees,
                                 int trunc_coh, int trunc_poly) {
    require(trunc_coh >= 0 && trunc_poly >= 0, ErrorCode::domain,
            "sym_hilbert: negative truncation");
    for (auto s : shift_degrees)
        require(s % 2 == 0, ErrorCode::domain,
                "sym_hilbert: shift degrees must be even");
    BigradedTable table;
    table.trunc_coh = trunc_coh;
    table.trunc_poly = trunc_poly;
    std::map<std::pair<int, int>, Int> acc;
    acc[{0, 0}] = 1;
    for (auto s : shift_degrees) {
        std::map<std::pair<int, int>, Int> next;
        // (1 - t^s u)^(-g) = sum_m C(g-1+m, m) t^(s m) u^m
        for (const auto& [key, mult] : acc) {
            for (int m = 0; key.second + m <= trunc_poly; ++m) {
                int coh = key.first + static_cast<int>(s) * m;
                if (coh > trunc_coh) break;  // s == 0 keeps coh constant (<= bound)
                next[{coh, key.second + m}] +=
                    mult * binomial(Int(gdim) - 1 + m, static_cast<std::uint64_t>(m));
            }
        }
        acc = std::move(next);
    }
    for (auto& [key, mult] : acc)
        if (mult != 0) table.entries[key] = mult;
    return table;
}

}  // namespace untwist
