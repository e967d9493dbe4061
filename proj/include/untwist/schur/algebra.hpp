#pragma once

// The degree-D polynomial-representation algebra S(n, D) over GF(q), realized
// as the commutant of the place-permutation action on tensor space.  Because
// the symmetric group permutes the basis tensors, the commutant equations
// X[s(u), s(v)] = X[u, v] simply identify matrix entries along orbits of pairs
// of multi-indices, so the solution space of the commutant system has the
// orbit indicator matrices as its canonical basis.
//
// Also: functor expressions (Id, Div, Sym, Ext, Fr, Ten, Compose) evaluated as
// explicit subquotients of tensor space, and the intertwiner-space dimension.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "untwist/errors.hpp"
#include "untwist/numeric.hpp"
#include "untwist/schur/gfmat.hpp"

namespace untwist {

struct Budget {
    std::uint64_t max_ambient = 1024;     // tensor space dimension n^D
    std::uint64_t max_regular_dim = 256;  // algebra dim for resolution machinery
    std::uint32_t max_resolution = 16;    // resolution length

    static Budget from_env() {
        Budget b;
        if (const char* s = std::getenv("UNTWIST_MAX_AMBIENT")) b.max_ambient = std::strtoull(s, nullptr, 10);
        if (const char* s = std::getenv("UNTWIST_MAX_ALGEBRA_DIM")) b.max_regular_dim = std::strtoull(s, nullptr, 10);
        if (const char* s = std::getenv("UNTWIST_MAX_RESOLUTION")) b.max_resolution = static_cast<std::uint32_t>(std::strtoul(s, nullptr, 10));
        return b;
    }
};

class SchurAlgebra {
  public:
    std::uint32_t n, D, p;
    const GaloisField* F;
    std::uint64_t ambient;  // n^D
    std::size_t dim;
    // basis element -> its nonzero entries (row, col), all equal to 1
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> basis;
    std::vector<Mat::Elt> one;  // coordinates of the identity

    // entry lists grouped by row, for sparse right products
    const std::vector<std::vector<std::uint32_t>>& adj(std::size_t b) const {
        build_adj();
        return adj_[b];
    }

    std::size_t orbit_of(std::uint32_t u, std::uint32_t v) const {
        auto it = orbit_index_.find(pair_key(u, v));
        require(it != orbit_index_.end(), ErrorCode::internal, "unknown orbit");
        return it->second;
    }

    // xi_b * B for a dense matrix B with `ambient` rows.
    Mat apply_basis(std::size_t b, const Mat& B) const {
        Mat r(*F, B.rows, B.cols);
        for (const auto& [u, v] : basis[b])
            for (std::size_t j = 0; j < B.cols; ++j)
                r.at(u, j) = F->add(r.at(u, j), B.at(v, j));
        return r;
    }

    static std::shared_ptr<const SchurAlgebra> build(std::uint32_t n, std::uint32_t D,
                                                     std::uint32_t p,
                                                     const Budget& budget = {},
                                                     std::uint32_t q_override = 0) {
        return std::shared_ptr<const SchurAlgebra>(
            new SchurAlgebra(n, D, p, budget, q_override));
    }

  private:
    SchurAlgebra(std::uint32_t n_, std::uint32_t D_, std::uint32_t p_,
                 const Budget& budget, std::uint32_t q_override)
        : n(n_), D(D_), p(p_) {
        require(n >= 1 && D >= 1 && p >= 2, ErrorCode::domain,
                "algebra parameters must be positive");
        // field size q = p^e with q > D (so that group elements span the
        // commutant and base change is harmless), overridable upward
        std::uint32_t m = 1;
        std::uint64_t q = p;
        while (q <= D) {
            q *= p;
            ++m;
        }
        if (q_override) {
            std::uint32_t mo = 0;
            std::uint64_t qq = 1;
            while (qq < q_override) {
                qq *= p;
                ++mo;
            }
            require(qq == q_override && q_override > D, ErrorCode::domain,
                    "q override must be a power of p exceeding D");
            m = mo;
            q = q_override;
        }
        require(q <= 256, ErrorCode::budget, "field too large");
        F = &GaloisField::get(p, m);
        Int amb = ipow(n, D);
        require(amb <= Int(budget.max_ambient), ErrorCode::budget,
                "tensor space exceeds the ambient budget (n^D)");
        ambient = static_cast<std::uint64_t>(amb);
        // orbits of pairs of multi-indices under the diagonal permutation action
        for (std::uint32_t u = 0; u < ambient; ++u)
            for (std::uint32_t v = 0; v < ambient; ++v) {
                auto key = pair_key(u, v);
                auto it = orbit_index_.find(key);
                if (it == orbit_index_.end()) {
                    it = orbit_index_.emplace(key, basis.size()).first;
                    basis.emplace_back();
                }
                basis[it->second].emplace_back(u, v);
            }
        dim = basis.size();
        require(Int(dim) == binomial(Int(n) * n + D - 1, D), ErrorCode::dimension_mismatch,
                "commutant dimension disagrees with the closed form");
        one.assign(dim, 0);
        for (std::size_t b = 0; b < dim; ++b)
            if (basis[b].front().first == basis[b].front().second) one[b] = 1;
    }

    std::vector<std::pair<std::uint32_t, std::uint32_t>> pair_key(std::uint32_t u,
                                                                  std::uint32_t v) const {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> key(D);
        for (std::uint32_t t = 0; t < D; ++t) {
            key[t] = {u % n, v % n};
            u /= n;
            v /= n;
        }
        std::sort(key.begin(), key.end());
        return key;
    }

    void build_adj() const {
        if (!adj_.empty()) return;
        adj_.resize(dim);
        for (std::size_t b = 0; b < dim; ++b) {
            adj_[b].resize(ambient);
            for (const auto& [u, v] : basis[b]) adj_[b][u].push_back(v);
        }
    }

    std::map<std::vector<std::pair<std::uint32_t, std::uint32_t>>, std::size_t>
        orbit_index_;
    mutable std::vector<std::vector<std::vector<std::uint32_t>>> adj_;
};

inline std::shared_ptr<const SchurAlgebra> build_schur_algebra(
    std::uint32_t n, std::uint32_t D, std::uint32_t p, const Budget& budget = {},
    std::uint32_t q_override = 0) {
    return SchurAlgebra::build(n, D, p, budget, q_override);
}

// ---------------------------------------------------------------------------
// Functor expressions

struct FunctorExpr {
    enum class Kind { Id, Div, Sym, Ext, Fr, Ten, Compose };
    Kind kind = Kind::Id;
    std::uint32_t a = 0;              // Div/Sym/Ext arity
    std::uint32_t r = 0;              // Fr twist count
    std::vector<FunctorExpr> args;    // Ten children; Compose: {outer, Fr(r)}

    std::uint64_t degree(std::uint32_t p) const {
        switch (kind) {
            case Kind::Id: return 1;
            case Kind::Div:
            case Kind::Sym:
            case Kind::Ext: return a;
            case Kind::Fr: {
                std::uint64_t d = 1;
                for (std::uint32_t i = 0; i < r; ++i) d *= p;
                return d;
            }
            case Kind::Ten: {
                std::uint64_t d = 0;
                for (const auto& c : args) d += c.degree(p);
                return d;
            }
            case Kind::Compose: return args[0].degree(p) * args[1].degree(p);
        }
        return 0;
    }

    bool contains_fr() const {
        if (kind == Kind::Fr || kind == Kind::Compose) return true;
        for (const auto& c : args)
            if (c.contains_fr()) return true;
        return false;
    }

    std::string str() const {
        switch (kind) {
            case Kind::Id: return "Id";
            case Kind::Div: return "Div(" + std::to_string(a) + ")";
            case Kind::Sym: return "Sym(" + std::to_string(a) + ")";
            case Kind::Ext: return "Ext(" + std::to_string(a) + ")";
            case Kind::Fr: return "Fr(" + std::to_string(r) + ")";
            case Kind::Ten: {
                std::string s = "Ten(";
                for (std::size_t i = 0; i < args.size(); ++i)
                    s += (i ? "," : "") + args[i].str();
                return s + ")";
            }
            case Kind::Compose:
                return "Compose(" + args[0].str() + "," + args[1].str() + ")";
        }
        return "?";
    }
};

namespace detail {

inline FunctorExpr parse_functor(const std::string& s, std::size_t& pos);

inline void skip_ws(const std::string& s, std::size_t& pos) {
    while (pos < s.size() && s[pos] == ' ') ++pos;
}

inline std::uint32_t parse_uint(const std::string& s, std::size_t& pos) {
    skip_ws(s, pos);
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    require(pos > start, ErrorCode::domain, "functor expression: expected a number");
    return static_cast<std::uint32_t>(std::stoul(s.substr(start, pos - start)));
}

inline void expect(const std::string& s, std::size_t& pos, char c) {
    skip_ws(s, pos);
    require(pos < s.size() && s[pos] == c, ErrorCode::domain,
            std::string("functor expression: expected '") + c + "'");
    ++pos;
}

inline FunctorExpr parse_primary(const std::string& s, std::size_t& pos) {
    skip_ws(s, pos);
    auto starts = [&](const char* w) {
        return s.compare(pos, std::string(w).size(), w) == 0;
    };
    FunctorExpr e;
    if (starts("Id")) {
        pos += 2;
        e.kind = FunctorExpr::Kind::Id;
        return e;
    }
    auto unary = [&](const char* w, FunctorExpr::Kind k, bool is_fr) {
        pos += std::string(w).size();
        expect(s, pos, '(');
        std::uint32_t v = parse_uint(s, pos);
        expect(s, pos, ')');
        e.kind = k;
        if (is_fr)
            e.r = v;
        else {
            require(v >= 1, ErrorCode::domain, "functor arity must be >= 1");
            e.a = v;
        }
        return e;
    };
    if (starts("Div(")) return unary("Div", FunctorExpr::Kind::Div, false);
    if (starts("Sym(")) return unary("Sym", FunctorExpr::Kind::Sym, false);
    if (starts("Ext(")) return unary("Ext", FunctorExpr::Kind::Ext, false);
    if (starts("Fr(")) return unary("Fr", FunctorExpr::Kind::Fr, true);
    if (starts("Ten(")) {
        pos += 4;
        e.kind = FunctorExpr::Kind::Ten;
        e.args.push_back(parse_functor(s, pos));
        skip_ws(s, pos);
        while (pos < s.size() && s[pos] == ',') {
            ++pos;
            e.args.push_back(parse_functor(s, pos));
            skip_ws(s, pos);
        }
        expect(s, pos, ')');
        require(!e.args.empty(), ErrorCode::domain, "Ten needs at least one child");
        return e;
    }
    if (starts("Compose(")) {
        pos += 8;
        e.kind = FunctorExpr::Kind::Compose;
        e.args.push_back(parse_functor(s, pos));
        expect(s, pos, ',');
        e.args.push_back(parse_functor(s, pos));
        expect(s, pos, ')');
        require(e.args[1].kind == FunctorExpr::Kind::Fr, ErrorCode::domain,
                "Compose: inner functor must be Fr(r)");
        require(!e.args[0].contains_fr(), ErrorCode::domain,
                "Compose: outer functor must be twist-free (one nesting only)");
        return e;
    }
    fail(ErrorCode::domain, "functor expression: unknown constructor at '" +
                                s.substr(pos, 8) + "'");
}

// A primary expression optionally followed by the infix form "e∘Fr(r)",
// equivalent to Compose(e, Fr(r)).
inline FunctorExpr parse_functor(const std::string& s, std::size_t& pos) {
    FunctorExpr e = parse_primary(s, pos);
    skip_ws(s, pos);
    const std::string circ = "\xe2\x88\x98";  // U+2218 ring operator
    while (s.compare(pos, circ.size(), circ) == 0) {
        pos += circ.size();
        FunctorExpr inner = parse_primary(s, pos);
        require(inner.kind == FunctorExpr::Kind::Fr, ErrorCode::domain,
                "Compose: inner functor must be Fr(r)");
        require(!e.contains_fr(), ErrorCode::domain,
                "Compose: outer functor must be twist-free (one nesting only)");
        FunctorExpr c;
        c.kind = FunctorExpr::Kind::Compose;
        c.args = {std::move(e), std::move(inner)};
        e = std::move(c);
        skip_ws(s, pos);
    }
    return e;
}

}  // namespace detail

inline FunctorExpr parse_functor(const std::string& s) {
    std::size_t pos = 0;
    FunctorExpr e = detail::parse_functor(s, pos);
    detail::skip_ws(s, pos);
    require(pos == s.size(), ErrorCode::domain,
            "functor expression: trailing characters");
    return e;
}

inline Int expected_functor_dim(const FunctorExpr& e, std::uint32_t n) {
    switch (e.kind) {
        case FunctorExpr::Kind::Id: return n;
        case FunctorExpr::Kind::Div:
        case FunctorExpr::Kind::Sym: return binomial(Int(n) + e.a - 1, e.a);
        case FunctorExpr::Kind::Ext: return binomial(Int(n), e.a);
        case FunctorExpr::Kind::Fr: return n;
        case FunctorExpr::Kind::Ten: {
            Int d = 1;
            for (const auto& c : e.args) d *= expected_functor_dim(c, n);
            return d;
        }
        case FunctorExpr::Kind::Compose: return expected_functor_dim(e.args[0], n);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Subquotient realizations inside tensor space

namespace detail {

struct Realization {
    std::uint64_t deg = 0;  // tensor degree; ambient = n^deg
    Mat S;                  // columns spanning the subspace (contains K)
    Mat K;                  // columns spanning the part to kill
};

// permutation of multi-indices swapping tensor slots i and i+1
inline std::uint32_t swap_adjacent(std::uint32_t w, std::uint32_t n, std::uint32_t a,
                                   std::uint32_t i) {
    std::vector<std::uint32_t> dig(a);
    for (std::uint32_t t = 0; t < a; ++t, w /= n) dig[t] = w % n;
    std::swap(dig[i], dig[i + 1]);
    std::uint32_t r = 0, mult = 1;
    for (std::uint32_t t = 0; t < a; ++t, mult *= n) r += dig[t] * mult;
    return r;
}

// span of the images of (P_s - 1) over adjacent transpositions: the kernel of
// the symmetrization quotient
inline Mat sym_kernel(const GaloisField& F, std::uint32_t n, std::uint32_t a) {
    std::uint64_t amb = 1;
    for (std::uint32_t t = 0; t < a; ++t) amb *= n;
    Span span(F, amb);
    for (std::uint32_t i = 0; i + 1 < a; ++i)
        for (std::uint32_t w = 0; w < amb; ++w) {
            std::uint32_t sw = swap_adjacent(w, n, a, i);
            if (sw == w) continue;
            std::vector<Mat::Elt> v(amb, 0);
            v[w] = 1;
            v[sw] = F.neg(1);
            span.insert(v);
        }
    return span.basis();
}

inline Realization realize(const FunctorExpr& e, std::uint32_t n, std::uint32_t p,
                           const GaloisField& F, const Budget& budget) {
    std::uint64_t deg = e.degree(p);
    Int amb_check = ipow(n, static_cast<std::uint64_t>(deg));
    require(amb_check <= Int(budget.max_ambient), ErrorCode::budget,
            "functor realization exceeds the ambient budget");
    std::uint64_t amb = static_cast<std::uint64_t>(amb_check);
    Realization out;
    out.deg = deg;
    switch (e.kind) {
        case FunctorExpr::Kind::Id: {
            out.S = Mat::identity(F, n);
            out.K = Mat(F, n, 0);
            return out;
        }
        case FunctorExpr::Kind::Sym: {
            out.S = Mat::identity(F, amb);
            out.K = sym_kernel(F, n, e.a);
            return out;
        }
        case FunctorExpr::Kind::Div: {
            // invariants: common kernel of the (P_s - 1)
            std::uint32_t a = e.a;
            Mat stack(F, amb * (a > 1 ? a - 1 : 1), amb);
            for (std::uint32_t i = 0; i + 1 < a; ++i)
                for (std::uint32_t w = 0; w < amb; ++w) {
                    std::uint32_t sw = swap_adjacent(w, n, a, i);
                    stack.at(i * amb + sw, w) = F.add(stack.at(i * amb + sw, w), 1);
                    stack.at(i * amb + w, w) = F.sub(stack.at(i * amb + w, w), 1);
                }
            out.S = stack.nullspace();
            out.K = Mat(F, amb, 0);
            return out;
        }
        case FunctorExpr::Kind::Ext: {
            out.S = Mat::identity(F, amb);
            Span span(F, amb);
            for (std::uint32_t i = 0; i + 1 < e.a; ++i)
                for (std::uint32_t w = 0; w < amb; ++w) {
                    std::uint32_t sw = swap_adjacent(w, n, e.a, i);
                    std::vector<Mat::Elt> v(amb, 0);
                    if (sw == w) {
                        v[w] = 1;  // repeated adjacent factor
                    } else if (sw > w) {
                        v[w] = 1;
                        v[sw] = 1;  // x (x) y + y (x) x
                    } else {
                        continue;
                    }
                    span.insert(v);
                }
            out.K = span.basis();
            return out;
        }
        case FunctorExpr::Kind::Fr: {
            out.K = sym_kernel(F, n, static_cast<std::uint32_t>(deg));
            // p^r-th powers: diagonal tensors e_i (x) ... (x) e_i, plus K
            Mat diag(F, amb, n);
            for (std::uint32_t i = 0; i < n; ++i) {
                std::uint64_t idx = 0, mult = 1;
                for (std::uint64_t t = 0; t < deg; ++t, mult *= n) idx += i * mult;
                diag.at(idx, i) = 1;
            }
            out.S = diag.hcat(out.K);
            return out;
        }
        case FunctorExpr::Kind::Ten: {
            Realization acc = realize(e.args[0], n, p, F, budget);
            for (std::size_t c = 1; c < e.args.size(); ++c) {
                Realization next = realize(e.args[c], n, p, F, budget);
                Realization comb;
                comb.deg = acc.deg + next.deg;
                comb.S = Mat::kron(acc.S, next.S);
                Span kspan(F, comb.S.rows);
                kspan.insert_cols(Mat::kron(acc.S, next.K));
                kspan.insert_cols(Mat::kron(acc.K, next.S));
                comb.K = kspan.basis();
                acc = std::move(comb);
            }
            return acc;
        }
        case FunctorExpr::Kind::Compose: {
            // F(W) for W the twist module inside degree p^r
            std::uint32_t a = static_cast<std::uint32_t>(e.args[0].degree(p));
            Realization inner = realize(e.args[1], n, p, F, budget);
            const Mat& KW = inner.K;
            std::uint64_t npr = KW.rows;
            // lifts of the W basis: the diagonal tensors (first n columns of S)
            Mat W_lift(F, npr, n);
            for (std::uint32_t i = 0; i < n; ++i) W_lift.set_col(i, inner.S.col(i));
            Mat TW = W_lift.hcat(KW);
            // outer functor realized abstractly over a space of dim n = dim W
            Realization outer = realize(e.args[0], n, p, F, budget);
            // substitution (k^n)^(x a) -> V^(x a p^r) sending e_i to w_i
            Mat L = Mat::identity(F, 1);
            for (std::uint32_t t = 0; t < a; ++t) L = Mat::kron(L, W_lift);
            // kernel of TW^(x a) -> W^(x a)
            Span big(F, amb);
            for (std::uint32_t j = 0; j < a; ++j) {
                Mat term = Mat::identity(F, 1);
                for (std::uint32_t t = 0; t < a; ++t)
                    term = Mat::kron(term, t == j ? KW : TW);
                big.insert_cols(term);
            }
            Mat bigK = big.basis();
            Span sspan(F, amb), kspan(F, amb);
            sspan.insert_cols(L * outer.S);
            sspan.insert_cols(bigK);
            kspan.insert_cols(L * outer.K);
            kspan.insert_cols(bigK);
            out.S = sspan.basis();
            out.K = kspan.basis();
            return out;
        }
    }
    fail(ErrorCode::internal, "unhandled functor kind");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Modules: explicit subquotients of tensor space with the commutant action

struct ModuleRep {
    std::shared_ptr<const SchurAlgebra> alg;
    std::uint32_t dim = 0;
    Mat basis;   // ambient x dim, lifts of the module basis
    Mat kernel;  // ambient x kdim
    Mat proj;    // dim x ambient with proj*basis = I, proj*kernel = 0

    // action matrix of the b-th algebra basis element
    Mat action(std::size_t b) const { return proj * alg->apply_basis(b, basis); }

    Mat action_of(const std::vector<Mat::Elt>& coords) const {
        const GaloisField& F = *alg->F;
        Mat r(F, dim, dim);
        for (std::size_t b = 0; b < coords.size(); ++b) {
            if (!coords[b]) continue;
            Mat ab = action(b);
            for (std::size_t i = 0; i < r.a.size(); ++i)
                r.a[i] = F.add(r.a[i], F.mul(coords[b], ab.a[i]));
        }
        return r;
    }

    // check that the realization is stable under the b-th basis element
    bool stable_under(std::size_t b) const {
        Mat residual = alg->apply_basis(b, basis) - basis * action(b);
        Span kspan(*alg->F, basis.rows);
        kspan.insert_cols(kernel);
        for (std::size_t j = 0; j < residual.cols; ++j)
            if (!kspan.contains(residual.col(j))) return false;
        return true;
    }
};

namespace detail {

inline ModuleRep module_from_realization(std::shared_ptr<const SchurAlgebra> alg,
                                         const Realization& real) {
    const GaloisField& F = *alg->F;
    std::uint64_t amb = alg->ambient;
    require(real.S.rows == amb, ErrorCode::internal, "realization degree mismatch");
    ModuleRep m;
    m.alg = std::move(alg);
    Span kspan(F, amb);
    kspan.insert_cols(real.K);
    m.kernel = kspan.basis();
    Span all(F, amb);
    all.insert_cols(m.kernel);
    std::vector<std::vector<Mat::Elt>> lifts;
    for (std::size_t j = 0; j < real.S.cols; ++j) {
        auto c = real.S.col(j);
        if (all.insert(c)) lifts.push_back(c);
    }
    m.dim = static_cast<std::uint32_t>(lifts.size());
    m.basis = Mat::from_cols(F, amb, lifts);
    // complete to a square change of basis and invert for the projection
    std::vector<std::vector<Mat::Elt>> compl_cols;
    for (std::uint64_t i = 0; i < amb && all.dim() < amb; ++i) {
        std::vector<Mat::Elt> eu(amb, 0);
        eu[i] = 1;
        if (all.insert(eu)) compl_cols.push_back(eu);
    }
    Mat A = m.basis.hcat(m.kernel).hcat(Mat::from_cols(F, amb, compl_cols));
    Mat Ainv = A.inverse();
    m.proj = Mat(F, m.dim, amb);
    for (std::uint32_t i = 0; i < m.dim; ++i)
        for (std::uint64_t j = 0; j < amb; ++j) m.proj.at(i, j) = Ainv.at(i, j);
    return m;
}

}  // namespace detail

inline ModuleRep evaluate_functor(const FunctorExpr& e, std::uint32_t n, std::uint32_t p,
                                  const Budget& budget = {}, std::uint32_t q_override = 0) {
    std::uint64_t D = e.degree(p);
    require(D >= 1, ErrorCode::domain, "functor must have positive degree");
    auto alg = build_schur_algebra(n, static_cast<std::uint32_t>(D), p, budget, q_override);
    detail::Realization real = detail::realize(e, n, p, *alg->F, budget);
    ModuleRep m = detail::module_from_realization(alg, real);
    require(Int(m.dim) == expected_functor_dim(e, n), ErrorCode::dimension_mismatch,
            "functor value has unexpected dimension: " + e.str());
    return m;
}

inline ModuleRep evaluate_functor(const std::string& expr, std::uint32_t n,
                                  std::uint32_t p, const Budget& budget = {},
                                  std::uint32_t q_override = 0) {
    return evaluate_functor(parse_functor(expr), n, p, budget, q_override);
}

// ---------------------------------------------------------------------------
// Intertwiner space dimension dim Hom(M, N) over the full algebra.
//
// Three stages keep this tractable for large algebras:
//   1. the diagonal orbit idempotents decompose both modules into weight
//      blocks, so the unknowns reduce to block entries of H;
//   2. a generic algebra element (random coefficients on every orbit) cuts the
//      block unknowns down by one elimination;
//   3. each surviving candidate is verified against *every* basis element at
//      once, working with ambient lifts so that sparsity of the orbit matrices
//      is preserved; violated constraints are folded back in until the
//      candidate space stabilizes.

inline std::uint32_t hom_dim(const ModuleRep& M, const ModuleRep& N) {
    require(M.alg == N.alg || (M.alg->n == N.alg->n && M.alg->D == N.alg->D &&
                               M.alg->p == N.alg->p && M.alg->F == N.alg->F),
            ErrorCode::domain, "hom_dim: modules over different algebras");
    const SchurAlgebra& A = *M.alg;
    const GaloisField& F = *A.F;
    std::size_t nm = M.dim, nn = N.dim;
    if (nm == 0 || nn == 0) return 0;

    auto rho_ambient = [&](const Mat& X, const ModuleRep& R) {
        return R.proj * (X * R.basis);
    };
    auto rho_basis = [&](std::size_t b, const ModuleRep& R) {
        return R.proj * A.apply_basis(b, R.basis);
    };

    // weight blocks from the diagonal orbit idempotents
    std::vector<std::size_t> widem;
    for (std::size_t b = 0; b < A.dim; ++b)
        if (A.one[b]) widem.push_back(b);
    auto weight_basis = [&](const ModuleRep& R, std::vector<std::size_t>& block_of) {
        std::vector<std::vector<Mat::Elt>> cols;
        for (std::size_t w = 0; w < widem.size(); ++w) {
            Mat E = rho_basis(widem[w], R);
            Span s(F, R.dim);
            for (std::size_t j = 0; j < E.cols; ++j) {
                auto c = E.col(j);
                if (s.insert(c)) {
                    cols.push_back(std::move(c));
                    block_of.push_back(w);
                }
            }
        }
        require(cols.size() == R.dim, ErrorCode::internal,
                "weight spaces do not fill the module");
        return Mat::from_cols(F, R.dim, cols);
    };
    std::vector<std::size_t> blkM, blkN;
    Mat CM = weight_basis(M, blkM), CN = weight_basis(N, blkN);
    Mat CMinv = CM.inverse(), CNinv = CN.inverse();

    // unknown entries of H: rows/columns within a common weight block
    std::vector<std::pair<std::size_t, std::size_t>> unk;
    for (std::size_t r = 0; r < nn; ++r)
        for (std::size_t s = 0; s < nm; ++s)
            if (blkN[r] == blkM[s]) unk.emplace_back(r, s);
    if (unk.empty()) return 0;

    // generic element with independent coefficients on every orbit
    std::mt19937_64 rng(0xC0FFEE);
    std::uniform_int_distribution<std::uint32_t> elt(0, F.q - 1);
    Mat X(F, A.ambient, A.ambient);
    for (std::size_t b = 0; b < A.dim; ++b) {
        Mat::Elt c = static_cast<Mat::Elt>(elt(rng));
        if (!c) continue;
        for (const auto& [u, v] : A.basis[b]) X.at(u, v) = c;
    }
    Mat a0 = CMinv * (rho_ambient(X, M) * CM);
    Mat c0 = CNinv * (rho_ambient(X, N) * CN);

    // constraints (H a0 - c0 H) = 0 on the block unknowns
    Mat T(F, nn * nm, unk.size());
    for (std::size_t t = 0; t < unk.size(); ++t) {
        auto [r, s] = unk[t];
        for (std::size_t k = 0; k < nm; ++k)
            T.at(r * nm + k, t) = F.add(T.at(r * nm + k, t), a0.at(s, k));
        for (std::size_t i = 0; i < nn; ++i)
            T.at(i * nm + s, t) = F.sub(T.at(i * nm + s, t), c0.at(i, r));
    }
    Mat ker = T.nullspace();  // candidates in unknown-space

    auto assemble = [&](const std::vector<Mat::Elt>& coef) {
        Mat H(F, nn, nm);  // in the weight bases
        for (std::size_t t = 0; t < unk.size(); ++t)
            H.at(unk[t].first, unk[t].second) = coef[t];
        return H;
    };
    // scan all orbits for a violated intertwining constraint, using ambient
    // lifts; returns the violating orbit or A.dim if none
    auto first_violation = [&](const Mat& Hblk) -> std::size_t {
        Mat Hfull = CN * (Hblk * CMinv);          // module bases of M, N
        Mat G = N.basis * (Hfull * M.proj);       // ambient lift
        Mat P1 = N.proj;                          // rho_N(x) H = P1 x Q1
        Mat Q1 = G * M.basis;
        Mat P2 = N.proj * G;                      // H rho_M(x) = P2 x Q2
        const Mat& Q2 = M.basis;
        for (std::size_t b = 0; b < A.dim; ++b) {
            Mat R(F, nn, nm);
            for (const auto& [u, v] : A.basis[b])
                for (std::size_t i = 0; i < nn; ++i) {
                    Mat::Elt p1 = P1.at(i, u), p2 = P2.at(i, u);
                    if (!p1 && !p2) continue;
                    for (std::size_t j = 0; j < nm; ++j) {
                        Mat::Elt d = F.sub(F.mul(p1, Q1.at(v, j)), F.mul(p2, Q2.at(v, j)));
                        if (d) R.at(i, j) = F.add(R.at(i, j), d);
                    }
                }
            if (!R.is_zero()) return b;
        }
        return A.dim;
    };

    for (int round = 0; round < 64; ++round) {
        std::size_t bad = A.dim;
        for (std::size_t j = 0; j < ker.cols && bad == A.dim; ++j)
            bad = first_violation(assemble(ker.col(j)));
        if (bad == A.dim) return static_cast<std::uint32_t>(ker.cols);
        // fold the violated constraint into the candidate space
        Mat rb_m = CMinv * (rho_basis(bad, M) * CM);
        Mat rb_n = CNinv * (rho_basis(bad, N) * CN);
        Mat R(F, nn * nm, ker.cols);
        for (std::size_t jj = 0; jj < ker.cols; ++jj) {
            Mat H = assemble(ker.col(jj));
            Mat res = H * rb_m - rb_n * H;
            R.set_col(jj, res.a);
        }
        ker = ker * R.nullspace();
    }
    fail(ErrorCode::internal, "hom_dim did not stabilize");
}

}  // namespace untwist
