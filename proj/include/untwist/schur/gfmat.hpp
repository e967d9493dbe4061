#pragma once

// Dense matrices over a small Galois field, with the elimination utilities
// used by the module machinery: RREF, rank, nullspace, inversion, Kronecker
// products and an incremental row-space accumulator.

#include <cstdint>
#include <vector>

#include "untwist/errors.hpp"
#include "untwist/schur/gf.hpp"

namespace untwist {

struct Mat {
    using Elt = GaloisField::Elt;

    const GaloisField* F = nullptr;
    std::size_t rows = 0, cols = 0;
    std::vector<Elt> a;

    Mat() = default;
    Mat(const GaloisField& field, std::size_t r, std::size_t c)
        : F(&field), rows(r), cols(c), a(r * c, 0) {}

    Elt& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    Elt at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Mat identity(const GaloisField& F, std::size_t n) {
        Mat m(F, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool operator==(const Mat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }

    Mat operator*(const Mat& o) const {
        require(cols == o.rows, ErrorCode::internal, "matrix product shape");
        Mat r(*F, rows, o.cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < cols; ++k) {
                Elt v = at(i, k);
                if (!v) continue;
                const Elt* src = &o.a[k * o.cols];
                Elt* dst = &r.a[i * o.cols];
                for (std::size_t j = 0; j < o.cols; ++j)
                    if (src[j]) dst[j] = F->add(dst[j], F->mul(v, src[j]));
            }
        return r;
    }

    Mat operator+(const Mat& o) const {
        require(rows == o.rows && cols == o.cols, ErrorCode::internal, "matrix sum shape");
        Mat r = *this;
        for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = F->add(r.a[i], o.a[i]);
        return r;
    }

    Mat operator-(const Mat& o) const {
        require(rows == o.rows && cols == o.cols, ErrorCode::internal, "matrix diff shape");
        Mat r = *this;
        for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = F->sub(r.a[i], o.a[i]);
        return r;
    }

    bool is_zero() const {
        for (Elt v : a)
            if (v) return false;
        return true;
    }

    Mat transpose() const {
        Mat r(*F, cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    std::vector<Elt> col(std::size_t j) const {
        std::vector<Elt> v(rows);
        for (std::size_t i = 0; i < rows; ++i) v[i] = at(i, j);
        return v;
    }

    void set_col(std::size_t j, const std::vector<Elt>& v) {
        for (std::size_t i = 0; i < rows; ++i) at(i, j) = v[i];
    }

    static Mat from_cols(const GaloisField& F, std::size_t rows,
                         const std::vector<std::vector<Elt>>& cols_) {
        Mat m(F, rows, cols_.size());
        for (std::size_t j = 0; j < cols_.size(); ++j) m.set_col(j, cols_[j]);
        return m;
    }

    Mat hcat(const Mat& o) const {
        require(rows == o.rows, ErrorCode::internal, "hcat shape");
        Mat r(*F, rows, cols + o.cols);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) r.at(i, j) = at(i, j);
            for (std::size_t j = 0; j < o.cols; ++j) r.at(i, cols + j) = o.at(i, j);
        }
        return r;
    }

    static Mat kron(const Mat& A, const Mat& B) {
        Mat r(*A.F, A.rows * B.rows, A.cols * B.cols);
        for (std::size_t i = 0; i < A.rows; ++i)
            for (std::size_t j = 0; j < A.cols; ++j) {
                Elt v = A.at(i, j);
                if (!v) continue;
                for (std::size_t k = 0; k < B.rows; ++k)
                    for (std::size_t l = 0; l < B.cols; ++l)
                        if (B.at(k, l))
                            r.at(i * B.rows + k, j * B.cols + l) =
                                A.F->mul(v, B.at(k, l));
            }
        return r;
    }

    GaloisField::Elt trace() const {
        Elt t = 0;
        for (std::size_t i = 0; i < rows && i < cols; ++i) t = F->add(t, at(i, i));
        return t;
    }

    // In-place reduced row echelon form; returns the pivot columns.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols && r < rows; ++c) {
            std::size_t sel = r;
            while (sel < rows && at(sel, c) == 0) ++sel;
            if (sel == rows) continue;
            if (sel != r)
                for (std::size_t j = 0; j < cols; ++j) std::swap(at(sel, j), at(r, j));
            Elt piv = F->inv(at(r, c));
            for (std::size_t j = c; j < cols; ++j) at(r, j) = F->mul(at(r, j), piv);
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == r) continue;
                Elt v = at(i, c);
                if (!v) continue;
                for (std::size_t j = c; j < cols; ++j)
                    at(i, j) = F->sub(at(i, j), F->mul(v, at(r, j)));
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        Mat m = *this;
        return m.rref().size();
    }

    // Columns spanning { x : A x = 0 }.
    Mat nullspace() const {
        Mat m = *this;
        std::vector<std::size_t> pivots = m.rref();
        std::vector<bool> is_pivot(cols, false);
        for (auto c : pivots) is_pivot[c] = true;
        Mat ns(*F, cols, cols - pivots.size());
        std::size_t k = 0;
        for (std::size_t c = 0; c < cols; ++c) {
            if (is_pivot[c]) continue;
            ns.at(c, k) = 1;
            for (std::size_t r = 0; r < pivots.size(); ++r)
                ns.at(pivots[r], k) = F->neg(m.at(r, c));
            ++k;
        }
        return ns;
    }

    Mat inverse() const {
        require(rows == cols, ErrorCode::internal, "inverse of non-square matrix");
        Mat aug = hcat(identity(*F, rows));
        auto pivots = aug.rref();
        require(pivots.size() == rows && (pivots.empty() || pivots.back() < rows),
                ErrorCode::internal, "matrix is singular");
        Mat inv(*F, rows, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < rows; ++j) inv.at(i, j) = aug.at(i, rows + j);
        return inv;
    }
};

// Incremental row-space accumulator in reduced echelon form.
class Span {
  public:
    explicit Span(const GaloisField& F, std::size_t width) : F_(&F), width_(width) {}

    std::size_t dim() const { return rows_.size(); }
    std::size_t width() const { return width_; }

    // Reduce v against the span; returns the residual.
    std::vector<Mat::Elt> reduce(std::vector<Mat::Elt> v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            Mat::Elt c = v[pivot_[r]];
            if (!c) continue;
            const auto& row = rows_[r];
            for (std::size_t j = 0; j < width_; ++j)
                if (row[j]) v[j] = F_->sub(v[j], F_->mul(c, row[j]));
        }
        return v;
    }

    bool contains(const std::vector<Mat::Elt>& v) const {
        auto res = reduce(v);
        for (auto x : res)
            if (x) return false;
        return true;
    }

    // Returns true if v enlarged the span.
    bool insert(const std::vector<Mat::Elt>& v) {
        auto res = reduce(v);
        std::size_t p = 0;
        while (p < width_ && res[p] == 0) ++p;
        if (p == width_) return false;
        Mat::Elt inv = F_->inv(res[p]);
        for (std::size_t j = 0; j < width_; ++j) res[j] = F_->mul(res[j], inv);
        // back-substitute into existing rows to keep reduced form
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            Mat::Elt c = rows_[r][p];
            if (!c) continue;
            for (std::size_t j = 0; j < width_; ++j)
                rows_[r][j] = F_->sub(rows_[r][j], F_->mul(c, res[j]));
        }
        // keep rows ordered by pivot
        std::size_t pos = 0;
        while (pos < pivot_.size() && pivot_[pos] < p) ++pos;
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(res));
        pivot_.insert(pivot_.begin() + static_cast<std::ptrdiff_t>(pos), p);
        return true;
    }

    void insert_cols(const Mat& m) {
        for (std::size_t j = 0; j < m.cols; ++j) insert(m.col(j));
    }

    // Basis vectors as columns.
    Mat basis() const {
        Mat b(*F_, width_, rows_.size());
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (std::size_t j = 0; j < width_; ++j) b.at(j, r) = rows_[r][j];
        return b;
    }

  private:
    const GaloisField* F_;
    std::size_t width_;
    std::vector<std::vector<Mat::Elt>> rows_;
    std::vector<std::size_t> pivot_;
};

// Solve A x = b column-wise for all columns of B; error if inconsistent.
inline Mat solve_exact(const Mat& A, const Mat& B) {
    Mat aug = A.hcat(B);
    auto pivots = aug.rref();
    Mat X(*A.F, A.cols, B.cols);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        require(pivots[r] < A.cols, ErrorCode::internal,
                "linear system is inconsistent");
        for (std::size_t j = 0; j < B.cols; ++j)
            X.at(pivots[r], j) = aug.at(r, A.cols + j);
    }
    // verify (guards against inconsistent systems with zero rows)
    require((A * X) == B, ErrorCode::internal, "linear system is inconsistent");
    return X;
}

}  // namespace untwist
