#pragma once

// Univariate polynomial arithmetic and factorization over a small GF(q)
// (distinct-degree + Cantor-Zassenhaus equal-degree splitting).  Used to split
// semisimple algebras via minimal polynomials.

#include <cstdint>
#include <random>
#include <vector>

#include "untwist/errors.hpp"
#include "untwist/numeric.hpp"
#include "untwist/schur/gf.hpp"

namespace untwist {

// coefficients low to high, no trailing zeros; the zero polynomial is empty
using GFPoly = std::vector<GaloisField::Elt>;

inline void gfp_trim(GFPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int gfp_deg(const GFPoly& f) { return static_cast<int>(f.size()) - 1; }

inline GFPoly gfp_x() { return {0, 1}; }

inline GFPoly gfp_add(const GaloisField& F, const GFPoly& a, const GFPoly& b) {
    GFPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    gfp_trim(r);
    return r;
}

inline GFPoly gfp_sub(const GaloisField& F, const GFPoly& a, const GFPoly& b) {
    GFPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    gfp_trim(r);
    return r;
}

inline GFPoly gfp_mul(const GaloisField& F, const GFPoly& a, const GFPoly& b) {
    if (a.empty() || b.empty()) return {};
    GFPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j]) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    gfp_trim(r);
    return r;
}

inline GFPoly gfp_scale(const GaloisField& F, const GFPoly& a, GaloisField::Elt c) {
    GFPoly r = a;
    for (auto& v : r) v = F.mul(v, c);
    gfp_trim(r);
    return r;
}

// division with remainder; g must be nonzero
inline std::pair<GFPoly, GFPoly> gfp_divmod(const GaloisField& F, GFPoly a,
                                            const GFPoly& g) {
    require(!g.empty(), ErrorCode::domain, "polynomial division by zero");
    GFPoly quot(a.size() > g.size() ? a.size() - g.size() + 1 : 1, 0);
    GaloisField::Elt lead_inv = F.inv(g.back());
    while (gfp_deg(a) >= gfp_deg(g)) {
        std::size_t shift = a.size() - g.size();
        GaloisField::Elt c = F.mul(a.back(), lead_inv);
        quot[shift] = c;
        for (std::size_t i = 0; i < g.size(); ++i)
            a[shift + i] = F.sub(a[shift + i], F.mul(c, g[i]));
        gfp_trim(a);
    }
    gfp_trim(quot);
    return {quot, a};
}

inline GFPoly gfp_mod(const GaloisField& F, const GFPoly& a, const GFPoly& g) {
    return gfp_divmod(F, a, g).second;
}

inline GFPoly gfp_monic(const GaloisField& F, const GFPoly& a) {
    if (a.empty()) return a;
    return gfp_scale(F, a, F.inv(a.back()));
}

inline GFPoly gfp_gcd(const GaloisField& F, GFPoly a, GFPoly b) {
    while (!b.empty()) {
        GFPoly r = gfp_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return gfp_monic(F, a);
}

inline GFPoly gfp_derivative(const GaloisField& F, const GFPoly& a) {
    GFPoly r;
    for (std::size_t i = 1; i < a.size(); ++i)
        r.push_back(F.mul(a[i], F.from_int(i)));
    gfp_trim(r);
    return r;
}

inline GFPoly gfp_mulmod(const GaloisField& F, const GFPoly& a, const GFPoly& b,
                         const GFPoly& f) {
    return gfp_mod(F, gfp_mul(F, a, b), f);
}

inline GFPoly gfp_powmod(const GaloisField& F, GFPoly base, Int e, const GFPoly& f) {
    GFPoly r{1};
    base = gfp_mod(F, base, f);
    while (e > 0) {
        if ((e & 1) != 0) r = gfp_mulmod(F, r, base, f);
        base = gfp_mulmod(F, base, base, f);
        e >>= 1;
    }
    return r;
}

namespace detail {

// Equal-degree splitting of a squarefree monic g whose irreducible factors all
// have degree d.
inline void gfp_edf(const GaloisField& F, const GFPoly& g, int d,
                    std::vector<GFPoly>& out, std::mt19937_64& rng) {
    if (gfp_deg(g) == d) {
        out.push_back(g);
        return;
    }
    std::uniform_int_distribution<std::uint32_t> coeff(0, F.q - 1);
    for (int attempt = 0; attempt < 256; ++attempt) {
        GFPoly h(static_cast<std::size_t>(gfp_deg(g)), 0);
        for (auto& c : h) c = static_cast<GaloisField::Elt>(coeff(rng));
        gfp_trim(h);
        if (h.empty()) continue;
        GFPoly t;
        if (F.p == 2) {
            // trace map sum h^(2^i), i < d*m
            GFPoly acc = gfp_mod(F, h, g);
            GFPoly cur = acc;
            for (std::uint32_t i = 1; i < static_cast<std::uint32_t>(d) * F.m; ++i) {
                cur = gfp_mulmod(F, cur, cur, g);
                acc = gfp_add(F, acc, cur);
            }
            t = acc;
        } else {
            Int e = (ipow(F.q, static_cast<std::uint64_t>(d)) - 1) / 2;
            t = gfp_sub(F, gfp_powmod(F, h, e, g), GFPoly{1});
        }
        GFPoly u = gfp_gcd(F, t, g);
        if (gfp_deg(u) > 0 && gfp_deg(u) < gfp_deg(g)) {
            gfp_edf(F, u, d, out, rng);
            gfp_edf(F, gfp_divmod(F, g, u).first, d, out, rng);
            return;
        }
    }
    fail(ErrorCode::internal, "equal-degree factorization did not split");
}

}  // namespace detail

namespace detail {

inline void strip_prime(const GaloisField& F, GFPoly& f, const GFPoly& prime,
                        std::uint32_t outer_mult,
                        std::vector<std::pair<GFPoly, std::uint32_t>>& factors) {
    std::uint32_t e = 0;
    for (;;) {
        auto [q, r] = gfp_divmod(F, f, prime);
        if (!r.empty()) break;
        f = q;
        ++e;
    }
    factors.emplace_back(prime, e * outer_mult);
}

// Monic irreducible factors of a squarefree monic w (distinct-degree split
// followed by equal-degree splitting).
inline std::vector<GFPoly> gfp_factor_squarefree(const GaloisField& F, const GFPoly& w,
                                                 std::mt19937_64& rng) {
    std::vector<GFPoly> primes;
    GFPoly rest = w;
    GFPoly h = gfp_x();
    for (int d = 1; gfp_deg(rest) > 0; ++d) {
        if (2 * d > gfp_deg(rest)) {
            primes.push_back(rest);  // what remains is irreducible
            break;
        }
        h = gfp_powmod(F, h, Int(F.q), w);  // x^(q^d) mod w
        GFPoly g = gfp_gcd(F, gfp_sub(F, h, gfp_x()), rest);
        if (gfp_deg(g) > 0) {
            gfp_edf(F, g, d, primes, rng);
            rest = gfp_divmod(F, rest, g).first;
        }
    }
    return primes;
}

}  // namespace detail

// Full factorization of a nonzero polynomial into monic irreducibles with
// multiplicities (deterministic seed).
inline std::vector<std::pair<GFPoly, std::uint32_t>> gfp_factor(const GaloisField& F,
                                                                GFPoly f) {
    require(!f.empty(), ErrorCode::domain, "factor of zero polynomial");
    std::vector<std::pair<GFPoly, std::uint32_t>> factors;
    f = gfp_monic(F, f);
    std::mt19937_64 rng(0x5eedULL);
    std::uint32_t outer_mult = 1;
    while (gfp_deg(f) > 0) {
        GFPoly df = gfp_derivative(F, f);
        if (df.empty()) {
            // f = g(x^p); take p-th roots of the surviving coefficients
            GFPoly g;
            for (std::size_t i = 0; i < f.size(); i += F.p)
                g.push_back(F.frob_inv(f[i], 1));
            f = std::move(g);
            outer_mult *= F.p;
            continue;
        }
        GFPoly w = gfp_divmod(F, f, gfp_gcd(F, f, df)).first;  // squarefree
        for (const auto& prime : detail::gfp_factor_squarefree(F, w, rng))
            detail::strip_prime(F, f, prime, outer_mult, factors);
    }
    return factors;
}

}  // namespace untwist
