#pragma once

// Minimal projective resolutions over a finite-dimensional algebra given by
// structure constants, and Ext dimensions computed from the induced cochain
// complexes Hom(P_i, N) = (+)_k e_k N.

#include <cstdint>
#include <utility>
#include <vector>

#include "untwist/errors.hpp"
#include "untwist/graded.hpp"
#include "untwist/schur/algebra.hpp"
#include "untwist/schur/wedderburn.hpp"

namespace untwist {

// A finite-dimensional module in coordinates: one action matrix per algebra
// basis element.
struct CoordModule {
    std::size_t dim = 0;
    std::vector<Mat> rho;

    Mat action_of(const GaloisField& F, const std::vector<Mat::Elt>& x) const {
        Mat r(F, dim, dim);
        for (std::size_t a = 0; a < x.size(); ++a) {
            if (!x[a]) continue;
            for (std::size_t i = 0; i < r.a.size(); ++i)
                r.a[i] = F.add(r.a[i], F.mul(x[a], rho[a].a[i]));
        }
        return r;
    }
};

inline CoordModule coord_module(const ModuleRep& m) {
    CoordModule c;
    c.dim = m.dim;
    c.rho.reserve(m.alg->dim);
    for (std::size_t b = 0; b < m.alg->dim; ++b) c.rho.push_back(m.action(b));
    return c;
}

namespace detail {

// A subspace with a retraction: proj * basis = identity.
struct SubCoords {
    Mat basis;  // ambient x d
    Mat proj;   // d x ambient
};

inline SubCoords make_sub(const GaloisField& F, const Mat& basis) {
    std::size_t amb = basis.rows, d = basis.cols;
    Span all(F, amb);
    all.insert_cols(basis);
    require(all.dim() == d, ErrorCode::internal, "subspace basis is dependent");
    std::vector<std::vector<Mat::Elt>> compl_cols;
    for (std::size_t i = 0; i < amb && all.dim() < amb; ++i) {
        std::vector<Mat::Elt> e(amb, 0);
        e[i] = 1;
        if (all.insert(e)) compl_cols.push_back(std::move(e));
    }
    Mat M = basis.hcat(Mat::from_cols(F, amb, compl_cols));
    Mat Minv = M.inverse();
    SubCoords s;
    s.basis = basis;
    s.proj = Mat(F, d, amb);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < amb; ++j) s.proj.at(i, j) = Minv.at(i, j);
    return s;
}

}  // namespace detail

// Projective covers and minimal resolutions over one fixed algebra.
class ResolutionContext {
  public:
    explicit ResolutionContext(RegularAlgebra alg, const Budget& budget = {})
        : A_(std::move(alg)), budget_(budget), W_(wedderburn_decompose(A_)) {
        const GaloisField& F = *A_.F;
        // projective indecomposables A e
        for (const auto& e : W_.idempotents) {
            Span span(F, A_.dim);
            std::vector<std::vector<Mat::Elt>> cols;
            for (std::size_t a = 0; a < A_.dim; ++a) {
                std::vector<Mat::Elt> v(A_.dim, 0);
                for (std::size_t i = 0; i < A_.dim; ++i)
                    for (std::size_t j = 0; j < A_.dim; ++j)
                        if (e[j] && A_.L[a].at(i, j))
                            v[i] = F.add(v[i], F.mul(A_.L[a].at(i, j), e[j]));
                if (span.insert(v)) cols.push_back(std::move(v));
            }
            Pim pim;
            pim.sub = detail::make_sub(F, Mat::from_cols(F, A_.dim, cols));
            pim.mod.dim = pim.sub.basis.cols;
            pim.mod.rho.reserve(A_.dim);
            for (std::size_t a = 0; a < A_.dim; ++a)
                pim.mod.rho.push_back(pim.sub.proj * (A_.L[a] * pim.sub.basis));
            Mat ecol(F, A_.dim, 1);
            ecol.set_col(0, e);
            pim.gen = (pim.sub.proj * ecol).col(0);
            pims_.push_back(std::move(pim));
        }
    }

    const RegularAlgebra& algebra() const { return A_; }
    const Wedderburn& wedderburn() const { return W_; }
    std::size_t pim_count() const { return pims_.size(); }
    std::size_t pim_dim(std::size_t i) const { return pims_[i].mod.dim; }

    struct Resolution {
        // per homological degree: the PIM index of each generator
        std::vector<std::vector<std::size_t>> gens;
        // gen_images[0]: generator images in M; gen_images[i >= 1]: in P_{i-1}
        std::vector<Mat> gen_images;
        std::vector<CoordModule> P;
        bool exact_end = false;  // the last computed kernel was zero
    };

    Resolution resolve(const CoordModule& M, std::uint32_t length) const {
        require(length <= budget_.max_resolution, ErrorCode::budget,
                "resolution length exceeds the budget");
        const GaloisField& F = *A_.F;
        Resolution res;
        CoordModule cur = M;
        Mat emb;  // kernel embedding into the previous projective
        for (std::uint32_t step = 0; step <= length; ++step) {
            if (cur.dim == 0) {
                res.exact_end = true;
                break;
            }
            // top of cur: quotient by the radical action
            Span radspan(F, cur.dim);
            for (std::size_t r = 0; r < W_.rad.cols; ++r)
                radspan.insert_cols(cur.action_of(F, W_.rad.col(r)));
            Mat radB = radspan.basis();
            std::vector<std::vector<Mat::Elt>> tops;
            {
                Span all(F, cur.dim);
                all.insert_cols(radB);
                for (std::size_t i = 0; i < cur.dim && all.dim() < cur.dim; ++i) {
                    std::vector<Mat::Elt> e(cur.dim, 0);
                    e[i] = 1;
                    if (all.insert(e)) tops.push_back(std::move(e));
                }
            }
            std::size_t t = tops.size();
            Mat T = Mat::from_cols(F, cur.dim, tops);
            Mat Minv = T.hcat(radB).inverse();
            Mat piT(F, t, cur.dim);
            for (std::size_t i = 0; i < t; ++i)
                for (std::size_t j = 0; j < cur.dim; ++j) piT.at(i, j) = Minv.at(i, j);
            std::vector<Mat> rho_top(A_.dim);
            for (std::size_t a = 0; a < A_.dim; ++a)
                rho_top[a] = piT * (cur.rho[a] * T);
            // greedy projective cover of the top
            Span U(F, t);
            std::vector<std::size_t> gen_pims;
            std::vector<std::vector<Mat::Elt>> gen_vecs;  // in cur coordinates
            for (std::size_t i = 0; i < pims_.size() && U.dim() < t; ++i) {
                Mat Ei = cur.action_of(F, W_.idempotents[i]);
                Mat Etop = piT * (Ei * T);
                Span img(F, t);
                for (std::size_t j = 0; j < t; ++j) {
                    auto w = Etop.col(j);
                    if (!img.insert(w) || U.contains(w)) continue;
                    Mat wc(F, t, 1);
                    wc.set_col(0, w);
                    gen_pims.push_back(i);
                    gen_vecs.push_back((Ei * (T * wc)).col(0));
                    for (std::size_t a = 0; a < A_.dim && U.dim() < t; ++a) {
                        Mat img_a(F, t, 1);
                        img_a.set_col(0, w);
                        U.insert((rho_top[a] * img_a).col(0));
                    }
                    if (U.dim() == t) break;
                }
            }
            require(U.dim() == t, ErrorCode::internal,
                    "projective cover did not reach the top");
            // assemble P = (+)_k P_{gen_pims[k]} and the cover map
            CoordModule P;
            std::vector<std::size_t> offset(gen_pims.size());
            for (std::size_t k = 0; k < gen_pims.size(); ++k) {
                offset[k] = P.dim;
                P.dim += pims_[gen_pims[k]].mod.dim;
            }
            P.rho.assign(A_.dim, Mat(F, P.dim, P.dim));
            for (std::size_t a = 0; a < A_.dim; ++a)
                for (std::size_t k = 0; k < gen_pims.size(); ++k) {
                    const Mat& blk = pims_[gen_pims[k]].mod.rho[a];
                    for (std::size_t i = 0; i < blk.rows; ++i)
                        for (std::size_t j = 0; j < blk.cols; ++j)
                            P.rho[a].at(offset[k] + i, offset[k] + j) = blk.at(i, j);
                }
            Mat Phi(F, cur.dim, P.dim);
            for (std::size_t k = 0; k < gen_pims.size(); ++k) {
                const Pim& pim = pims_[gen_pims[k]];
                // images of the PIM basis: x_j . v_k
                std::vector<std::vector<Mat::Elt>> rv(A_.dim);
                Mat vc(F, cur.dim, 1);
                vc.set_col(0, gen_vecs[k]);
                for (std::size_t a = 0; a < A_.dim; ++a)
                    rv[a] = (cur.rho[a] * vc).col(0);
                for (std::size_t j = 0; j < pim.mod.dim; ++j) {
                    for (std::size_t a = 0; a < A_.dim; ++a) {
                        Mat::Elt c = pim.sub.basis.at(a, j);
                        if (!c) continue;
                        for (std::size_t i = 0; i < cur.dim; ++i)
                            Phi.at(i, offset[k] + j) =
                                F.add(Phi.at(i, offset[k] + j), F.mul(c, rv[a][i]));
                    }
                }
            }
            // record the step
            Mat images(F, step == 0 ? M.dim : emb.rows, gen_pims.size());
            for (std::size_t k = 0; k < gen_pims.size(); ++k) {
                if (step == 0)
                    images.set_col(k, gen_vecs[k]);
                else {
                    Mat vc(F, cur.dim, 1);
                    vc.set_col(0, gen_vecs[k]);
                    images.set_col(k, (emb * vc).col(0));
                }
            }
            res.gens.push_back(gen_pims);
            res.gen_images.push_back(std::move(images));
            // kernel of the cover, with its induced action
            Mat KB = Phi.nullspace();
            // minimality: the kernel must sit inside rad . P
            {
                Span rp(F, P.dim);
                std::vector<bool> found(KB.cols, false);
                std::size_t remaining = KB.cols;
                for (std::size_t r = 0; r < W_.rad.cols && remaining; ++r) {
                    rp.insert_cols(P.action_of(F, W_.rad.col(r)));
                    for (std::size_t j = 0; j < KB.cols; ++j)
                        if (!found[j] && rp.contains(KB.col(j))) {
                            found[j] = true;
                            --remaining;
                        }
                }
                require(remaining == 0, ErrorCode::internal,
                        "cover is not minimal: kernel escapes rad P");
            }
            CoordModule ker;
            ker.dim = KB.cols;
            if (KB.cols) {
                detail::SubCoords ks = detail::make_sub(F, KB);
                ker.rho.reserve(A_.dim);
                for (std::size_t a = 0; a < A_.dim; ++a)
                    ker.rho.push_back(ks.proj * (P.rho[a] * KB));
            }
            res.P.push_back(std::move(P));
            emb = std::move(KB);
            cur = std::move(ker);
        }
        if (!res.exact_end && cur.dim == 0) res.exact_end = true;
        return res;
    }

    // dim Ext^i(M, N) for 0 <= i <= maxdeg, as a graded dimension table.
    GradedDims ext_dims(const CoordModule& M, const CoordModule& N,
                        std::uint32_t maxdeg) const {
        const GaloisField& F = *A_.F;
        Resolution res = resolve(M, maxdeg + 1);
        // bases of the spaces e_i N, with retractions
        std::vector<detail::SubCoords> en(pims_.size());
        std::vector<bool> en_done(pims_.size(), false);
        auto en_of = [&](std::size_t i) -> const detail::SubCoords& {
            if (!en_done[i]) {
                Mat Ei = N.action_of(F, W_.idempotents[i]);
                Span s(F, N.dim);
                s.insert_cols(Ei);
                en[i] = detail::make_sub(F, s.basis());
                en_done[i] = true;
            }
            return en[i];
        };
        // cochain dimensions and coboundary ranks
        std::size_t steps = res.gens.size();
        std::vector<std::size_t> cdim(maxdeg + 2, 0);
        std::vector<std::size_t> drank(maxdeg + 2, 0);
        std::vector<std::vector<std::size_t>> coff(steps);  // cochain offsets
        for (std::size_t i = 0; i < steps && i <= maxdeg + 1; ++i) {
            std::size_t off = 0;
            for (std::size_t k = 0; k < res.gens[i].size(); ++k) {
                coff[i].push_back(off);
                off += en_of(res.gens[i][k]).basis.cols;
            }
            cdim[i] = off;
        }
        for (std::size_t i = 0; i + 1 < steps && i <= maxdeg; ++i) {
            if (cdim[i] == 0 || cdim[i + 1] == 0) continue;
            Mat delta(F, cdim[i + 1], cdim[i]);
            // column: phi supported on generator k of P_i, basis vector s of e N
            for (std::size_t k = 0; k < res.gens[i].size(); ++k) {
                const Pim& pim = pims_[res.gens[i][k]];
                const detail::SubCoords& enk = en_of(res.gens[i][k]);
                std::size_t off_p = 0;
                for (std::size_t kk = 0; kk < k; ++kk)
                    off_p += pims_[res.gens[i][kk]].mod.dim;
                for (std::size_t s = 0; s < enk.basis.cols; ++s) {
                    Mat phi_s(F, N.dim, 1);
                    phi_s.set_col(0, enk.basis.col(s));
                    // value of the associated map P_i -> N on each PIM basis
                    // element x_j of block k: rho_N(x_j) . phi_s
                    std::vector<std::vector<Mat::Elt>> vals(pim.mod.dim);
                    for (std::size_t j = 0; j < pim.mod.dim; ++j)
                        vals[j] =
                            (N.action_of(F, pim.sub.basis.col(j)) * phi_s).col(0);
                    // evaluate on the generators of P_{i+1}
                    for (std::size_t g = 0; g < res.gens[i + 1].size(); ++g) {
                        std::vector<Mat::Elt> img(N.dim, 0);
                        for (std::size_t j = 0; j < pim.mod.dim; ++j) {
                            Mat::Elt c = res.gen_images[i + 1].at(off_p + j, g);
                            if (!c) continue;
                            for (std::size_t x = 0; x < N.dim; ++x)
                                img[x] = F.add(img[x], F.mul(c, vals[j][x]));
                        }
                        // coordinates in the e N basis of the target component
                        const detail::SubCoords& eng = en_of(res.gens[i + 1][g]);
                        Mat ic(F, N.dim, 1);
                        ic.set_col(0, img);
                        Mat co = eng.proj * ic;
                        // consistency: img must lie in e N
                        require((eng.basis * co) == ic, ErrorCode::internal,
                                "cochain image left its idempotent block");
                        for (std::size_t x = 0; x < eng.basis.cols; ++x)
                            delta.at(coff[i + 1][g] + x, coff[i][k] + s) = co.at(x, 0);
                    }
                }
            }
            drank[i] = delta.rank();
        }
        GradedDims out;
        for (std::uint32_t d = 0; d <= maxdeg; ++d) {
            if (d >= steps) break;  // the resolution ended: higher Ext vanish
            Int h = Int(cdim[d]) - Int(drank[d]) - Int(d ? drank[d - 1] : 0);
            require(h >= 0, ErrorCode::internal, "negative cohomology dimension");
            if (h > 0) out.add(d, h);
        }
        return out;
    }

    std::uint32_t hom_dim_resolved(const CoordModule& M, const CoordModule& N) const {
        GradedDims e = ext_dims(M, N, 0);
        Int v = e.total_dim();
        return static_cast<std::uint32_t>(v);
    }

  private:
    struct Pim {
        detail::SubCoords sub;  // basis columns are algebra coordinates
        CoordModule mod;
        std::vector<Mat::Elt> gen;
    };

    RegularAlgebra A_;
    Budget budget_;
    Wedderburn W_;
    std::vector<Pim> pims_;
};

}  // namespace untwist
