#pragma once

// Structure theory of a finite-dimensional unital algebra over GF(q):
// the radical (characteristic-p trace chain with runtime certification),
// the semisimple quotient, and a complete set of primitive orthogonal
// idempotents lifted back to the algebra.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "untwist/errors.hpp"
#include "untwist/schur/algebra.hpp"
#include "untwist/schur/gfmat.hpp"
#include "untwist/schur/gfpoly.hpp"

namespace untwist {

// An algebra given by structure constants: L[a] is left multiplication by the
// a-th basis element, acting on coordinate vectors.  `rep` holds a faithful
// matrix representation used for trace computations; by default the regular
// representation itself.
struct RegularAlgebra {
    using Elt = Mat::Elt;

    const GaloisField* F = nullptr;
    std::size_t dim = 0;
    std::vector<Mat> L;
    std::vector<Mat> rep;  // empty means: use L
    std::vector<Elt> one;

    const Mat& rep_of_basis(std::size_t a) const { return rep.empty() ? L[a] : rep[a]; }
    std::size_t rep_dim() const { return rep_of_basis(0).rows; }

    Mat Lof(const std::vector<Elt>& x) const {
        Mat r(*F, dim, dim);
        for (std::size_t a = 0; a < dim; ++a) {
            if (!x[a]) continue;
            for (std::size_t i = 0; i < r.a.size(); ++i)
                r.a[i] = F->add(r.a[i], F->mul(x[a], L[a].a[i]));
        }
        return r;
    }

    Mat rep_of(const std::vector<Elt>& x) const {
        std::size_t n = rep_dim();
        Mat r(*F, n, n);
        for (std::size_t a = 0; a < dim; ++a) {
            if (!x[a]) continue;
            const Mat& Ra = rep_of_basis(a);
            for (std::size_t i = 0; i < r.a.size(); ++i)
                r.a[i] = F->add(r.a[i], F->mul(x[a], Ra.a[i]));
        }
        return r;
    }

    std::vector<Elt> mul(const std::vector<Elt>& x, const std::vector<Elt>& y) const {
        std::vector<Elt> r(dim, 0);
        for (std::size_t a = 0; a < dim; ++a) {
            if (!x[a]) continue;
            const Mat& La = L[a];
            for (std::size_t i = 0; i < dim; ++i) {
                Elt acc = 0;
                for (std::size_t j = 0; j < dim; ++j)
                    if (y[j] && La.at(i, j)) acc = F->add(acc, F->mul(La.at(i, j), y[j]));
                r[i] = F->add(r[i], F->mul(x[a], acc));
            }
        }
        return r;
    }

    // x^e with the algebra unit as x^0
    std::vector<Elt> power(std::vector<Elt> x, Int e) const {
        std::vector<Elt> r = one;
        while (e > 0) {
            if ((e & 1) != 0) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }
};

// The commutant algebra in its regular presentation.  Structure constants are
// read off combinatorially: the coefficient of an orbit basis element in a
// product of two others is the number of middle indices connecting a fixed
// representative pair, reduced mod p (products of orbit matrices are constant
// along orbits).
inline RegularAlgebra regular_from_schur(const SchurAlgebra& A,
                                         const Budget& budget = {}) {
    require(A.dim <= budget.max_regular_dim, ErrorCode::budget,
            "algebra dimension exceeds the structure-constant budget");
    RegularAlgebra R;
    R.F = A.F;
    R.dim = A.dim;
    R.one = A.one;
    R.L.assign(A.dim, Mat(*A.F, A.dim, A.dim));
    for (std::size_t a = 0; a < A.dim; ++a)
        for (std::size_t b = 0; b < A.dim; ++b) {
            std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> counts;
            for (const auto& [u, v] : A.basis[a])
                for (std::uint32_t w : A.adj(b)[v]) ++counts[{u, w}];
            for (const auto& [entry, cnt] : counts) {
                std::size_t c = A.orbit_of(entry.first, entry.second);
                if (entry == A.basis[c].front())
                    R.L[a].at(c, b) = A.F->from_int(cnt);
            }
        }
    R.rep.reserve(A.dim);
    for (std::size_t a = 0; a < A.dim; ++a) {
        Mat m(*A.F, A.ambient, A.ambient);
        for (const auto& [u, v] : A.basis[a]) m.at(u, v) = 1;
        R.rep.push_back(std::move(m));
    }
    return R;
}

namespace detail {

// Characteristic polynomial (monic, coefficients low to high) via similarity
// reduction to Hessenberg form and the leading-minor recurrence; division-free
// apart from pivot inverses, so it is safe in any characteristic.
inline GFPoly charpoly(const GaloisField& F, Mat H) {
    std::size_t n = H.rows;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        std::size_t piv = k + 1;
        while (piv < n && H.at(piv, k) == 0) ++piv;
        if (piv == n) continue;
        if (piv != k + 1) {  // similarity swap of row/column piv and k+1
            for (std::size_t j = 0; j < n; ++j) std::swap(H.at(piv, j), H.at(k + 1, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(H.at(i, piv), H.at(i, k + 1));
        }
        Mat::Elt inv = F.inv(H.at(k + 1, k));
        for (std::size_t i = k + 2; i < n; ++i) {
            Mat::Elt f = F.mul(H.at(i, k), inv);
            if (!f) continue;
            for (std::size_t j = 0; j < n; ++j)
                H.at(i, j) = F.sub(H.at(i, j), F.mul(f, H.at(k + 1, j)));
            for (std::size_t t = 0; t < n; ++t)
                H.at(t, k + 1) = F.add(H.at(t, k + 1), F.mul(f, H.at(t, i)));
        }
    }
    std::vector<GFPoly> p(n + 1);
    p[0] = GFPoly{1};
    for (std::size_t m = 1; m <= n; ++m) {
        p[m] = gfp_mul(F, p[m - 1], GFPoly{F.neg(H.at(m - 1, m - 1)), 1});
        Mat::Elt prod = 1;
        for (std::size_t i = m - 1; i >= 1; --i) {
            prod = F.mul(prod, H.at(i, i - 1));
            if (!prod) break;
            Mat::Elt c = F.mul(H.at(i - 1, m - 1), prod);
            if (c) p[m] = gfp_sub(F, p[m], gfp_scale(F, p[i - 1], c));
        }
    }
    GFPoly out = p[n];
    out.resize(n + 1, 0);
    return out;
}

// One stage of the radical chain: within the span of `cur` (columns are
// coordinate vectors), the solutions x of c_{p^i}(x y) = 0 for all y in the
// span, where c_k is the k-th characteristic coefficient of the faithful
// representation.  (Power-sum traces degenerate in characteristic p; the
// elementary-symmetric coefficients are the correct stage functions.)  The
// form is p^i-semilinear in x on this subspace, so the conditions become a
// linear system in the p^i-th powers of the coefficients.
inline Mat chain_stage(const RegularAlgebra& A, const Mat& cur, std::uint32_t i) {
    const GaloisField& F = *A.F;
    std::size_t k = cur.cols;
    std::size_t n = A.rep_dim();
    std::uint64_t pi = 1;
    for (std::uint32_t t = 0; t < i; ++t) pi *= F.p;
    std::vector<Mat> reps(k);
    for (std::size_t j = 0; j < k; ++j) reps[j] = A.rep_of(cur.col(j));
    Mat G(F, k, k);  // G[row y][col x]
    for (std::size_t y = 0; y < k; ++y)
        for (std::size_t x = 0; x < k; ++x) {
            if (pi == 1) {  // c_1 is the trace: no product needed entrywise
                Mat::Elt t = 0;
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b)
                        t = F.add(t, F.mul(reps[x].at(a, b), reps[y].at(b, a)));
                G.at(y, x) = t;
            } else {
                GFPoly cp = charpoly(F, reps[x] * reps[y]);
                G.at(y, x) = cp[n - pi];
            }
        }
    Mat D = G.nullspace();  // columns: the p^i-th powers of the coefficients
    Mat next(F, A.dim, D.cols);
    for (std::size_t c = 0; c < D.cols; ++c) {
        std::vector<Mat::Elt> v(A.dim, 0);
        for (std::size_t j = 0; j < k; ++j) {
            Mat::Elt coef = F.frob_inv(D.at(j, c), i);
            if (!coef) continue;
            for (std::size_t t = 0; t < A.dim; ++t)
                v[t] = F.add(v[t], F.mul(coef, cur.at(t, j)));
        }
        next.set_col(c, v);
    }
    return next;
}

// Certify that the span of `rad` is nilpotent under multiplication, using the
// faithful representation.
inline bool certify_nilpotent(const RegularAlgebra& A, const Mat& rad) {
    if (rad.cols == 0) return true;
    const GaloisField& F = *A.F;
    std::size_t n = A.rep_dim();
    std::vector<Mat> gens(rad.cols);
    for (std::size_t j = 0; j < rad.cols; ++j) gens[j] = A.rep_of(rad.col(j));
    std::vector<Mat> cur = gens;
    for (std::size_t level = 0; level <= A.dim; ++level) {
        Span next(F, n * n);
        std::vector<Mat> next_mats;
        for (const Mat& x : cur)
            for (const Mat& g : gens) {
                Mat prod = x * g;
                if (next.insert(prod.a)) next_mats.push_back(std::move(prod));
            }
        if (next_mats.empty()) return true;
        if (next_mats.size() >= cur.size() && level == A.dim) return false;
        cur = std::move(next_mats);
    }
    return false;
}

}  // namespace detail

// Radical of A as columns of coordinate vectors: the chain runs one stage per
// characteristic coefficient c_{p^i} with p^i at most the representation size.
inline Mat radical(const RegularAlgebra& A) {
    const GaloisField& F = *A.F;
    Mat cur = Mat::identity(F, A.dim);
    std::uint64_t pi = 1;
    for (std::uint32_t i = 0; pi <= A.rep_dim(); ++i, pi *= F.p) {
        cur = detail::chain_stage(A, cur, i);
        if (cur.cols == 0) break;
    }
    return cur;
}

struct Wedderburn {
    Mat rad;                 // dim x rdim, coordinate vectors spanning the radical
    RegularAlgebra quot;     // the semisimple quotient, in its regular rep
    Mat incl;                // dim x qdim, complement lifts (sections of proj)
    Mat proj;                // qdim x dim, reduction mod the radical
    std::vector<std::vector<Mat::Elt>> idempotents;  // primitive orthogonal, in A

    std::vector<Mat::Elt> project(const std::vector<Mat::Elt>& x) const {
        std::vector<Mat::Elt> r(proj.rows, 0);
        for (std::size_t i = 0; i < proj.rows; ++i)
            for (std::size_t j = 0; j < proj.cols; ++j)
                if (x[j] && proj.at(i, j))
                    r[i] = proj.F->add(r[i], proj.F->mul(proj.at(i, j), x[j]));
        return r;
    }
};

namespace detail {

// Relative minimal polynomial of z in a unital context with identity f
// (monic, low-to-high coefficients).
inline GFPoly min_poly(const RegularAlgebra& B, const std::vector<Mat::Elt>& z,
                       const std::vector<Mat::Elt>& f) {
    const GaloisField& F = *B.F;
    Span span(F, B.dim);
    std::vector<std::vector<Mat::Elt>> powers;
    std::vector<Mat::Elt> cur = f;
    for (;;) {
        if (!span.insert(cur)) break;
        powers.push_back(cur);
        cur = B.mul(cur, z);
    }
    Mat P = Mat::from_cols(F, B.dim, powers);
    Mat rhs(F, B.dim, 1);
    rhs.set_col(0, cur);
    Mat coef = solve_exact(P, rhs);
    GFPoly mu(powers.size() + 1, 0);
    for (std::size_t j = 0; j < powers.size(); ++j) mu[j] = F.neg(coef.at(j, 0));
    mu[powers.size()] = 1;
    return mu;
}

inline std::vector<Mat::Elt> eval_poly(const RegularAlgebra& B, const GFPoly& g,
                                       const std::vector<Mat::Elt>& z,
                                       const std::vector<Mat::Elt>& f) {
    const GaloisField& F = *B.F;
    std::vector<Mat::Elt> acc(B.dim, 0);
    for (std::size_t i = g.size(); i-- > 0;) {
        acc = B.mul(acc, z);
        for (std::size_t t = 0; t < B.dim; ++t)
            acc[t] = F.add(acc[t], F.mul(g[i], f[t]));
    }
    return acc;
}

inline GaloisField::Elt eval_scalar(const GaloisField& F, const GFPoly& g,
                                    GaloisField::Elt c) {
    GaloisField::Elt acc = 0;
    for (std::size_t i = g.size(); i-- > 0;) acc = F.add(F.mul(acc, c), g[i]);
    return acc;
}

inline GFPoly gfp_extgcd(const GaloisField& F, GFPoly u, GFPoly v, GFPoly& s,
                         GFPoly& t) {
    GFPoly s0{1}, s1{}, t0{}, t1{1};
    while (!v.empty()) {
        auto [q, r] = gfp_divmod(F, u, v);
        u = std::move(v);
        v = std::move(r);
        GFPoly s2 = gfp_sub(F, s0, gfp_mul(F, q, s1));
        GFPoly t2 = gfp_sub(F, t0, gfp_mul(F, q, t1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!u.empty() && u.back() != 1) {
        GaloisField::Elt c = F.inv(u.back());
        u = gfp_scale(F, u, c);
        s0 = gfp_scale(F, s0, c);
        t0 = gfp_scale(F, t0, c);
    }
    s = s0;
    t = t0;
    return u;
}

// Try to split the idempotent f of the semisimple algebra B using the element
// z of f B f: succeeds when the relative minimal polynomial of z has at least
// two coprime parts.
inline bool try_split(const RegularAlgebra& B, const std::vector<Mat::Elt>& f,
                      const std::vector<Mat::Elt>& z, std::vector<Mat::Elt>& e_out) {
    const GaloisField& F = *B.F;
    GFPoly mu = min_poly(B, z, f);
    auto factors = gfp_factor(F, mu);
    if (factors.size() < 2) return false;
    GFPoly u{1};
    for (std::uint32_t t = 0; t < factors[0].second; ++t)
        u = gfp_mul(F, u, factors[0].first);
    GFPoly v = gfp_divmod(F, mu, u).first;
    GFPoly s, t;
    GFPoly g = gfp_extgcd(F, u, v, s, t);
    require(g == GFPoly{1}, ErrorCode::internal, "coprime parts share a factor");
    // e = (t v)(z) is 1 on the u-part and 0 on the v-part
    std::vector<Mat::Elt> e = eval_poly(B, gfp_mul(F, t, v), z, f);
    if (B.mul(e, e) != e) return false;
    bool zero = true, whole = true;
    for (std::size_t i = 0; i < B.dim; ++i) {
        if (e[i]) zero = false;
        if (e[i] != f[i]) whole = false;
    }
    if (zero || whole) return false;
    e_out = std::move(e);
    return true;
}

// Complete set of primitive orthogonal idempotents of the semisimple B.
inline std::vector<std::vector<Mat::Elt>> primitive_idempotents(const RegularAlgebra& B) {
    const GaloisField& F = *B.F;
    std::vector<std::vector<Mat::Elt>> done;
    std::vector<std::vector<Mat::Elt>> stack{B.one};
    std::mt19937_64 rng(0x1D3A11ULL);
    std::uniform_int_distribution<std::uint32_t> elt(0, F.q - 1);
    std::size_t guard = 0;
    while (!stack.empty()) {
        require(++guard <= 64 * (B.dim + 1), ErrorCode::internal,
                "idempotent splitting did not terminate");
        std::vector<Mat::Elt> f = std::move(stack.back());
        stack.pop_back();
        // corner subalgebra f B f
        Span cspan(F, B.dim);
        std::vector<std::vector<Mat::Elt>> cbasis;
        for (std::size_t a = 0; a < B.dim; ++a) {
            std::vector<Mat::Elt> ea(B.dim, 0);
            ea[a] = 1;
            auto v = B.mul(f, B.mul(ea, f));
            if (cspan.insert(v)) cbasis.push_back(std::move(v));
        }
        if (cbasis.size() == 1) {  // f B f = GF(q^d) f: primitive
            done.push_back(std::move(f));
            continue;
        }
        bool commutative = true;
        for (std::size_t i = 0; i < cbasis.size() && commutative; ++i)
            for (std::size_t j = i + 1; j < cbasis.size(); ++j)
                if (B.mul(cbasis[i], cbasis[j]) != B.mul(cbasis[j], cbasis[i])) {
                    commutative = false;
                    break;
                }
        std::vector<Mat::Elt> e;
        bool split = false;
        if (commutative) {
            // GF(q)-rational points: the fixed space of x -> x^q on f B f
            Mat C = Mat::from_cols(F, B.dim, cbasis);
            Mat Fr(F, cbasis.size(), cbasis.size());
            for (std::size_t j = 0; j < cbasis.size(); ++j) {
                auto xq = B.power(cbasis[j], Int(F.q));
                // x^q computed with the global unit still lies in f B f
                xq = B.mul(f, B.mul(xq, f));
                Mat rhs(F, B.dim, 1);
                rhs.set_col(0, xq);
                Mat co = solve_exact(C, rhs);
                for (std::size_t i = 0; i < cbasis.size(); ++i) Fr.at(i, j) = co.at(i, 0);
            }
            Mat fix = (Fr - Mat::identity(F, cbasis.size())).nullspace();
            if (fix.cols == 1) {  // a single field block: primitive
                done.push_back(std::move(f));
                continue;
            }
            Span fspan(F, B.dim);
            fspan.insert(f);
            for (std::size_t j = 0; j < fix.cols && !split; ++j) {
                Mat zc(F, cbasis.size(), 1);
                zc.set_col(0, fix.col(j));
                auto z = (C * zc).col(0);
                if (fspan.contains(z)) continue;
                split = try_split(B, f, z, e);
            }
        } else {
            for (std::size_t j = 0; j < cbasis.size() && !split; ++j)
                split = try_split(B, f, cbasis[j], e);
            for (int attempt = 0; attempt < 512 && !split; ++attempt) {
                std::vector<Mat::Elt> z(B.dim, 0);
                for (const auto& cb : cbasis) {
                    Mat::Elt c = static_cast<Mat::Elt>(elt(rng));
                    if (!c) continue;
                    for (std::size_t i = 0; i < B.dim; ++i)
                        z[i] = F.add(z[i], F.mul(c, cb[i]));
                }
                split = try_split(B, f, z, e);
            }
        }
        require(split, ErrorCode::internal, "failed to split a non-primitive idempotent");
        auto rest = f;
        for (std::size_t i = 0; i < B.dim; ++i) rest[i] = F.sub(f[i], e[i]);
        stack.push_back(std::move(e));
        stack.push_back(std::move(rest));
    }
    return done;
}

}  // namespace detail

// Full decomposition: radical (certified), semisimple quotient, primitive
// orthogonal idempotents of the quotient lifted to the algebra.
inline Wedderburn wedderburn_decompose(const RegularAlgebra& A) {
    const GaloisField& F = *A.F;
    Wedderburn W;
    W.rad = radical(A);
    require(detail::certify_nilpotent(A, W.rad), ErrorCode::internal,
            "radical candidate is not nilpotent");
    // complement lifts
    Span all(F, A.dim);
    all.insert_cols(W.rad);
    std::vector<std::vector<Mat::Elt>> lifts;
    for (std::size_t i = 0; i < A.dim; ++i) {
        std::vector<Mat::Elt> ei(A.dim, 0);
        ei[i] = 1;
        if (all.insert(ei)) lifts.push_back(std::move(ei));
    }
    W.incl = Mat::from_cols(F, A.dim, lifts);
    Mat M = W.incl.hcat(W.rad);
    Mat Minv = M.inverse();
    std::size_t qdim = lifts.size();
    W.proj = Mat(F, qdim, A.dim);
    for (std::size_t i = 0; i < qdim; ++i)
        for (std::size_t j = 0; j < A.dim; ++j) W.proj.at(i, j) = Minv.at(i, j);
    // quotient structure constants
    W.quot.F = &F;
    W.quot.dim = qdim;
    W.quot.one = W.project(A.one);
    W.quot.L.assign(qdim, Mat(F, qdim, qdim));
    for (std::size_t a = 0; a < qdim; ++a)
        for (std::size_t b = 0; b < qdim; ++b) {
            auto prod = W.project(A.mul(W.incl.col(a), W.incl.col(b)));
            for (std::size_t i = 0; i < qdim; ++i) W.quot.L[a].at(i, b) = prod[i];
        }
    // certification: the quotient must have zero radical
    require(radical(W.quot).cols == 0, ErrorCode::internal,
            "quotient by the radical candidate is not semisimple");
    // primitive idempotents of the quotient, lifted via p-power iteration
    auto prims = detail::primitive_idempotents(W.quot);
    std::uint32_t K = 0;
    Int pk = 1;
    while (pk < Int(A.dim) + 1) {
        pk *= F.p;
        ++K;
    }
    std::vector<Mat::Elt> rem = A.one;
    for (const auto& ebar : prims) {
        std::vector<Mat::Elt> x(A.dim, 0);
        for (std::size_t j = 0; j < W.incl.cols; ++j) {
            if (!ebar[j]) continue;
            for (std::size_t i = 0; i < A.dim; ++i)
                x[i] = F.add(x[i], F.mul(ebar[j], W.incl.at(i, j)));
        }
        x = A.mul(rem, A.mul(x, rem));
        std::vector<Mat::Elt> e = x;
        for (std::uint32_t t = 0; t < K; ++t) e = A.power(e, Int(F.p));
        require(A.mul(e, e) == e, ErrorCode::internal, "lifted element is not idempotent");
        require(W.project(e) == ebar, ErrorCode::internal,
                "lifted idempotent drifted mod the radical");
        for (auto prev = W.idempotents.begin(); prev != W.idempotents.end(); ++prev) {
            bool ortho = true;
            for (auto v : A.mul(*prev, e))
                if (v) ortho = false;
            for (auto v : A.mul(e, *prev))
                if (v) ortho = false;
            require(ortho, ErrorCode::internal, "lifted idempotents are not orthogonal");
        }
        for (std::size_t i = 0; i < A.dim; ++i) rem[i] = F.sub(rem[i], e[i]);
        W.idempotents.push_back(std::move(e));
    }
    bool rem_zero = true;
    for (auto v : rem)
        if (v) rem_zero = false;
    require(rem_zero, ErrorCode::internal, "idempotents do not sum to the identity");
    return W;
}

}  // namespace untwist
