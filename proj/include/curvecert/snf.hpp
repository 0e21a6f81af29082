#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "curvecert/error.hpp"
#include "curvecert/scalar.hpp"

namespace curvecert {

// Dense arbitrary-precision integer matrix, row-major.  Sized for the small
// systems that show up in group-cohomology bookkeeping, not for bulk numerics.
class IntMatrix {
public:
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, BigInt(0)) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    // Row-by-row construction for tests and fixed maps.
    static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
        std::size_t r = rows.size();
        std::size_t c = r == 0 ? 0 : rows.begin()->size();
        IntMatrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw MismatchError("ragged rows in matrix literal");
            std::size_t j = 0;
            for (long v : row) m.at(i, j++) = v;
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    BigInt& at(std::size_t i, std::size_t j) {
        check_index(i, j);
        return a_[i * cols_ + j];
    }
    const BigInt& at(std::size_t i, std::size_t j) const {
        check_index(i, j);
        return a_[i * cols_ + j];
    }

    friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend bool operator!=(const IntMatrix& x, const IntMatrix& y) { return !(x == y); }

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
        if (x.cols_ != y.rows_) throw MismatchError("matrix product shape mismatch");
        IntMatrix out(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const BigInt& xik = x.at(i, k);
                if (xik == 0) continue;
                for (std::size_t j = 0; j < y.cols_; ++j)
                    out.at(i, j) += xik * y.at(k, j);
            }
        return out;
    }

    // Glue two matrices side by side (same row count).
    friend IntMatrix hconcat(const IntMatrix& x, const IntMatrix& y) {
        if (x.rows_ != y.rows_) throw MismatchError("hconcat row mismatch");
        IntMatrix out(x.rows_, x.cols_ + y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i) {
            for (std::size_t j = 0; j < x.cols_; ++j) out.at(i, j) = x.at(i, j);
            for (std::size_t j = 0; j < y.cols_; ++j) out.at(i, x.cols_ + j) = y.at(i, j);
        }
        return out;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
    }
    void negate_row(std::size_t i) {
        for (std::size_t k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
    }
    // row[dst] += c * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const BigInt& c) {
        for (std::size_t k = 0; k < cols_; ++k) at(dst, k) += c * at(src, k);
    }
    void add_col_multiple(std::size_t dst, std::size_t src, const BigInt& c) {
        for (std::size_t k = 0; k < rows_; ++k) at(k, dst) += c * at(k, src);
    }

    bool is_diagonal() const {
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (i != j && a_[i * cols_ + j] != 0) return false;
        return true;
    }

    std::vector<BigInt> diagonal() const {
        std::size_t n = rows_ < cols_ ? rows_ : cols_;
        std::vector<BigInt> d;
        d.reserve(n);
        for (std::size_t i = 0; i < n; ++i) d.push_back(at(i, i));
        return d;
    }

    // Exact determinant by fraction-free (Bareiss) elimination.
    BigInt det() const {
        if (rows_ != cols_) throw MismatchError("determinant of a non-square matrix");
        std::size_t n = rows_;
        if (n == 0) return 1;
        IntMatrix w(*this);
        int sign = 1;
        BigInt prev = 1;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (w.at(k, k) == 0) {
                std::size_t s = k + 1;
                while (s < n && w.at(s, k) == 0) ++s;
                if (s == n) return 0;
                w.swap_rows(k, s);
                sign = -sign;
            }
            for (std::size_t i = k + 1; i < n; ++i)
                for (std::size_t j = k + 1; j < n; ++j) {
                    BigInt num = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                    if (num % prev != 0) throw Error("fraction-free elimination lost exactness");
                    w.at(i, j) = num / prev;
                }
            prev = w.at(k, k);
        }
        return sign > 0 ? w.at(n - 1, n - 1) : -w.at(n - 1, n - 1);
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i) s += ", ";
            s += "[";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) s += ", ";
                s += at(i, j).str();
            }
            s += "]";
        }
        return s + "]";
    }

private:
    std::size_t rows_, cols_;
    std::vector<BigInt> a_;

    void check_index(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw Error("matrix index out of range");
    }
};

struct SmithDecomposition {
    IntMatrix u, d, v; // u * input * v == d

    std::vector<BigInt> nonzero_diagonal() const {
        std::vector<BigInt> out;
        for (const BigInt& x : d.diagonal())
            if (x != 0) out.push_back(x);
        return out;
    }
};

namespace detail {

inline BigInt big_abs(const BigInt& x) { return x < 0 ? -x : x; }

} // namespace detail

// Smith normal form with explicit unimodular transforms.  Every call verifies
// U*M*V == D, |det U| = |det V| = 1, and the divisibility chain before
// returning, so downstream code may rely on the decomposition unconditionally.
inline SmithDecomposition smith_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix d(m);
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);
    const std::size_t limit = rows < cols ? rows : cols;

    for (std::size_t t = 0; t < limit; ++t) {
        for (;;) {
            // pick the absolutely smallest nonzero entry of the trailing block
            bool found = false;
            std::size_t pi = t, pj = t;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    const BigInt& x = d.at(i, j);
                    if (x == 0) continue;
                    if (!found || detail::big_abs(x) < detail::big_abs(d.at(pi, pj))) {
                        found = true;
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) { t = limit; break; } // trailing block is zero: done

            if (pi != t) { d.swap_rows(t, pi); u.swap_rows(t, pi); }
            if (pj != t) { d.swap_cols(t, pj); v.swap_cols(t, pj); }

            // one Euclidean sweep down the pivot column and across the row;
            // truncated quotients leave remainders strictly smaller than the
            // pivot, so re-entering the loop makes progress
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d.at(i, t) == 0) continue;
                BigInt q = d.at(i, t) / d.at(t, t);
                if (q != 0) { d.add_row_multiple(i, t, -q); u.add_row_multiple(i, t, -q); }
                if (d.at(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d.at(t, j) == 0) continue;
                BigInt q = d.at(t, j) / d.at(t, t);
                if (q != 0) { d.add_col_multiple(j, t, -q); v.add_col_multiple(j, t, -q); }
                if (d.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // pivot must divide everything that remains; if not, fold the
            // offending row into the pivot row and keep reducing
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols && divides; ++j)
                    if (d.at(i, j) % d.at(t, t) != 0) {
                        d.add_row_multiple(t, i, 1);
                        u.add_row_multiple(t, i, 1);
                        divides = false;
                    }
            if (divides) break;
        }
        if (t == limit) break;
    }

    for (std::size_t t = 0; t < limit; ++t)
        if (d.at(t, t) < 0) { d.negate_row(t); u.negate_row(t); }

    // unconditional self-check
    if (u * m * v != d) throw CheckError("smith normal form transform mismatch");
    if (detail::big_abs(u.det()) != 1) throw CheckError("row transform is not unimodular");
    if (detail::big_abs(v.det()) != 1) throw CheckError("column transform is not unimodular");
    if (!d.is_diagonal()) throw CheckError("smith normal form is not diagonal");
    const auto diag = d.diagonal();
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
        if (diag[i] < 0 || diag[i + 1] < 0) throw CheckError("negative invariant factor");
        if (diag[i] == 0 && diag[i + 1] != 0) throw CheckError("zero before nonzero on diagonal");
        if (diag[i] != 0 && diag[i + 1] % diag[i] != 0)
            throw CheckError("divisibility chain broken in smith normal form");
    }
    return {std::move(u), std::move(d), std::move(v)};
}

// Basis of the integer kernel lattice of m, returned as matrix columns.
// With m = U^-1 D V^-1, the kernel is spanned by the columns of V that meet
// zero (or absent) diagonal entries of D; V being unimodular makes this a
// basis of the full (saturated) kernel lattice.
inline IntMatrix kernel_basis(const IntMatrix& m) {
    SmithDecomposition s = smith_normal_form(m);
    const std::size_t limit = m.rows() < m.cols() ? m.rows() : m.cols();
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (j >= limit || s.d.at(j, j) == 0) free_cols.push_back(j);
    IntMatrix out(m.cols(), free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k)
        for (std::size_t i = 0; i < m.cols(); ++i)
            out.at(i, k) = s.v.at(i, free_cols[k]);
    return out;
}

// Solve m x = rhs over the integers; returns false when no integral solution
// exists.  Goes through the Smith form: D (V^-1 x) = U rhs is diagonal.
inline bool lattice_solve(const IntMatrix& m, const std::vector<BigInt>& rhs,
                          std::vector<BigInt>& out) {
    if (rhs.size() != m.rows()) throw MismatchError("right-hand side has wrong length");
    SmithDecomposition s = smith_normal_form(m);
    std::vector<BigInt> w(m.rows(), BigInt(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.rows(); ++j) w[i] += s.u.at(i, j) * rhs[j];

    const std::size_t limit = m.rows() < m.cols() ? m.rows() : m.cols();
    std::vector<BigInt> y(m.cols(), BigInt(0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const BigInt di = i < limit ? s.d.at(i, i) : BigInt(0);
        if (di == 0) {
            if (w[i] != 0) return false;
        } else {
            if (w[i] % di != 0) return false;
            y[i] = w[i] / di;
        }
    }
    out.assign(m.cols(), BigInt(0));
    for (std::size_t i = 0; i < m.cols(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] += s.v.at(i, j) * y[j];
    return true;
}

} // namespace curvecert
