#pragma once

// Small Galois fields GF(p^m) with full lookup tables (q <= 256).  Elements
// are indices 0..q-1 encoding polynomial coefficients base p, so 0 and 1 are
// the additive and multiplicative identities.

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "untwist/errors.hpp"

namespace untwist {

class GaloisField {
  public:
    using Elt = std::uint8_t;

    std::uint32_t p, m, q;

    static const GaloisField& get(std::uint32_t p, std::uint32_t m) {
        static std::map<std::pair<std::uint32_t, std::uint32_t>,
                        std::unique_ptr<GaloisField>>
            cache;
        auto key = std::make_pair(p, m);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, std::unique_ptr<GaloisField>(new GaloisField(p, m)))
                     .first;
        return *it->second;
    }

    Elt add(Elt a, Elt b) const { return add_t_[a * q + b]; }
    Elt sub(Elt a, Elt b) const { return add_t_[a * q + neg_t_[b]]; }
    Elt neg(Elt a) const { return neg_t_[a]; }
    Elt mul(Elt a, Elt b) const { return mul_t_[a * q + b]; }
    Elt inv(Elt a) const {
        require(a != 0, ErrorCode::domain, "division by zero in GF(q)");
        return inv_t_[a];
    }
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
    Elt frob(Elt a) const { return frob_t_[a]; }  // a^p
    Elt pow(Elt a, std::uint64_t e) const {
        Elt r = 1, base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    // inverse of the i-fold Frobenius x -> x^(p^i)
    Elt frob_inv(Elt a, std::uint32_t i) const {
        Elt r = a;
        std::uint32_t steps = (m - i % m) % m;
        for (std::uint32_t s = 0; s < steps; ++s) r = frob(r);
        return r;
    }
    Elt from_int(std::uint64_t v) const {
        // multiples of 1 (prime subfield embedding)
        Elt r = 0;
        for (std::uint64_t i = 0; i < v % p; ++i) r = add(r, 1);
        return r;
    }

  private:
    GaloisField(std::uint32_t p_, std::uint32_t m_) : p(p_), m(m_) {
        require(p >= 2 && m >= 1, ErrorCode::domain, "GF: bad parameters");
        std::uint64_t qq = 1;
        for (std::uint32_t i = 0; i < m; ++i) qq *= p;
        require(qq <= 256, ErrorCode::budget, "GF: field too large for tables");
        q = static_cast<std::uint32_t>(qq);
        // monic irreducible polynomial of degree m over F_p (identity for m=1)
        std::vector<std::uint32_t> irred = find_irreducible();
        add_t_.resize(q * q);
        mul_t_.resize(q * q);
        neg_t_.resize(q);
        inv_t_.resize(q);
        frob_t_.resize(q);
        for (std::uint32_t a = 0; a < q; ++a) {
            for (std::uint32_t b = 0; b < q; ++b) {
                add_t_[a * q + b] = digit_add(a, b);
                mul_t_[a * q + b] = poly_mul_mod(a, b, irred);
            }
        }
        for (std::uint32_t a = 0; a < q; ++a) {
            neg_t_[a] = digit_neg(a);
            frob_t_[a] = 0;
        }
        for (std::uint32_t a = 1; a < q; ++a)
            for (std::uint32_t b = 1; b < q; ++b)
                if (mul_t_[a * q + b] == 1) inv_t_[a] = static_cast<Elt>(b);
        for (std::uint32_t a = 0; a < q; ++a) {
            Elt r = 1;
            for (std::uint32_t i = 0; i < p; ++i) r = mul(r, static_cast<Elt>(a));
            frob_t_[a] = r;
        }
    }

    Elt digit_add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t r = 0, mult = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            r += ((a % p + b % p) % p) * mult;
            a /= p;
            b /= p;
            mult *= p;
        }
        return static_cast<Elt>(r);
    }

    Elt digit_neg(std::uint32_t a) const {
        std::uint32_t r = 0, mult = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            r += ((p - a % p) % p) * mult;
            a /= p;
            mult *= p;
        }
        return static_cast<Elt>(r);
    }

    Elt poly_mul_mod(std::uint32_t a, std::uint32_t b,
                     const std::vector<std::uint32_t>& irred) const {
        std::vector<std::uint32_t> prod(2 * m, 0);
        std::vector<std::uint32_t> da(m), db(m);
        for (std::uint32_t i = 0; i < m; ++i, a /= p) da[i] = a % p;
        for (std::uint32_t i = 0; i < m; ++i, b /= p) db[i] = b % p;
        for (std::uint32_t i = 0; i < m; ++i)
            for (std::uint32_t j = 0; j < m; ++j)
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        // reduce modulo the monic irreducible of degree m
        for (std::uint32_t deg = 2 * m - 1; deg >= m && deg < 2 * m; --deg) {
            std::uint32_t c = prod[deg];
            if (c) {
                for (std::uint32_t i = 0; i <= m; ++i)
                    prod[deg - m + i] = (prod[deg - m + i] + (p - c % p) * irred[i]) % p;
            }
        }
        std::uint32_t r = 0, mult = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            r += prod[i] * mult;
            mult *= p;
        }
        return static_cast<Elt>(r);
    }

    std::vector<std::uint32_t> find_irreducible() const {
        // coefficients low to high, index m is the (monic) leading 1
        if (m == 1) return {0, 1};
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < m; ++i) count *= p;
        for (std::uint64_t tail = 0; tail < count; ++tail) {
            std::vector<std::uint32_t> f(m + 1, 0);
            std::uint64_t t = tail;
            for (std::uint32_t i = 0; i < m; ++i, t /= p) f[i] = t % p;
            f[m] = 1;
            if (is_irreducible(f)) return f;
        }
        fail(ErrorCode::internal, "no irreducible polynomial found");
    }

    bool is_irreducible(const std::vector<std::uint32_t>& f) const {
        // trial division by all monic polynomials of degree 1..m/2 over F_p
        for (std::uint32_t d = 1; 2 * d <= m; ++d) {
            std::uint64_t count = 1;
            for (std::uint32_t i = 0; i < d; ++i) count *= p;
            for (std::uint64_t tail = 0; tail < count; ++tail) {
                std::vector<std::uint32_t> g(d + 1, 0);
                std::uint64_t t = tail;
                for (std::uint32_t i = 0; i < d; ++i, t /= p) g[i] = t % p;
                g[d] = 1;
                if (divides(g, f)) return false;
            }
        }
        return true;
    }

    bool divides(const std::vector<std::uint32_t>& g,
                 const std::vector<std::uint32_t>& f) const {
        std::vector<std::uint32_t> r = f;
        std::uint32_t dg = static_cast<std::uint32_t>(g.size()) - 1;
        for (std::uint32_t deg = static_cast<std::uint32_t>(r.size()) - 1;
             deg >= dg && deg < r.size(); --deg) {
            std::uint32_t c = r[deg];  // g is monic
            if (c)
                for (std::uint32_t i = 0; i <= dg; ++i)
                    r[deg - dg + i] = (r[deg - dg + i] + (p - (c * g[i]) % p)) % p;
        }
        for (std::uint32_t i = 0; i < dg; ++i)
            if (r[i]) return false;
        return true;
    }

    std::vector<Elt> add_t_, mul_t_, neg_t_, inv_t_, frob_t_;
};

}  // namespace untwist
