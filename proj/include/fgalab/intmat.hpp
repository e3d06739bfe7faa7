#pragma once
// Dense integer matrices: Hermite and Smith normal forms, determinants,
// kernels and saturation.

#include "fgalab/exactnum.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace fgalab {

using IntVec = std::vector<Integer>;

class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, IntVec(cols, 0)) {}
    Matrix(std::size_t cols, std::vector<IntVec> rows) : cols_(cols), rows_(std::move(rows)) {
        for (const auto &r : rows_)
            if (r.size() != cols_)
                throw Error("matrix rows have inconsistent length");
    }
    static Matrix empty(std::size_t cols) { return Matrix(cols, std::vector<IntVec>{}); }
    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }
    static Matrix from(std::initializer_list<std::initializer_list<long>> rows) {
        std::vector<IntVec> r;
        std::size_t cols = 0;
        for (const auto &row : rows) {
            r.emplace_back(row.begin(), row.end());
            cols = row.size();
        }
        return Matrix(cols, std::move(r));
    }

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    Integer &operator()(std::size_t i, std::size_t j) { return rows_[i][j]; }
    const Integer &operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
    IntVec &row(std::size_t i) { return rows_[i]; }
    const IntVec &row(std::size_t i) const { return rows_[i]; }
    const std::vector<IntVec> &row_list() const { return rows_; }
    void push_row(IntVec r) {
        if (r.size() != cols_)
            throw Error("row length mismatch");
        rows_.push_back(std::move(r));
    }

    Matrix transpose() const {
        Matrix t(cols_, rows());
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = rows_[i][j];
        return t;
    }

    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        if (a.cols() != b.rows())
            throw Error("matrix product dimension mismatch");
        Matrix c(a.rows(), b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t k = 0; k < a.cols(); ++k) {
                if (a(i, k) == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols(); ++j)
                    c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }
    friend bool operator==(const Matrix &a, const Matrix &b) { return a.cols_ == b.cols_ && a.rows_ == b.rows_; }

  private:
    std::size_t cols_ = 0;
    std::vector<IntVec> rows_;
};

inline bool is_zero_vec(const IntVec &v) {
    return std::all_of(v.begin(), v.end(), [](const Integer &x) { return x == 0; });
}

namespace detail {

// row_i -= q * row_t, from column `from` on
inline void axpy_row(IntVec &dst, const IntVec &src, const Integer &q, std::size_t from = 0) {
    if (q == 0)
        return;
    for (std::size_t j = from; j < dst.size(); ++j)
        if (src[j] != 0)
            dst[j] -= q * src[j];
}

// nearest-integer quotient, keeps remainders small during Euclid steps
inline Integer round_div(const Integer &a, const Integer &b) {
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Integer twice = 2 * r;
    if (abs(twice) > abs(b))
        q += 1;
    return q;
}

} // namespace detail

/// Row-style Hermite normal form: zero rows dropped, pivot columns strictly
/// increasing, pivots positive, entries above each pivot in [0, pivot).
inline Matrix hnf(const Matrix &m) {
    std::vector<IntVec> a;
    for (const auto &r : m.row_list())
        if (!is_zero_vec(r))
            a.push_back(r);
    const std::size_t cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        while (true) {
            std::size_t best = a.size();
            for (std::size_t i = r; i < a.size(); ++i)
                if (a[i][c] != 0 && (best == a.size() || abs(a[i][c]) < abs(a[best][c])))
                    best = i;
            if (best == a.size())
                break;
            std::swap(a[r], a[best]);
            bool clean = true;
            for (std::size_t i = r + 1; i < a.size(); ++i) {
                if (a[i][c] == 0)
                    continue;
                detail::axpy_row(a[i], a[r], detail::round_div(a[i][c], a[r][c]), c);
                if (a[i][c] != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (r >= a.size() || a[r][c] == 0)
            continue;
        if (a[r][c] < 0)
            for (std::size_t j = c; j < cols; ++j)
                a[r][j] = -a[r][j];
        for (std::size_t i = 0; i < r; ++i)
            if (a[i][c] != 0)
                detail::axpy_row(a[i], a[r], floor_div(a[i][c], a[r][c]), c);
        ++r;
        // drop rows that became zero
        a.erase(std::remove_if(a.begin() + static_cast<std::ptrdiff_t>(r), a.end(), is_zero_vec), a.end());
    }
    a.resize(r);
    return Matrix(cols, std::move(a));
}

/// Column index of the first nonzero entry of each row of an echelon matrix.
inline std::vector<std::size_t> pivot_columns(const Matrix &h) {
    std::vector<std::size_t> p;
    for (const auto &r : h.row_list()) {
        std::size_t j = 0;
        while (j < r.size() && r[j] == 0)
            ++j;
        p.push_back(j);
    }
    return p;
}

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(Matrix a) {
    const std::size_t n = a.rows();
    if (n != a.cols())
        throw Error("determinant of a non-square matrix");
    if (n == 0)
        return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && a(s, k) == 0)
                ++s;
            if (s == n)
                return 0;
            std::swap(a.row(k), a.row(s));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

struct SmithForm {
    Matrix U, D, V, Vinv; // U * M * V = D, Vinv = V^{-1}
    IntVec diagonal;      // d_1 | d_2 | ... (min(rows, cols) entries)
};

/// Smith normal form with both transforms and the inverse of the column transform.
inline SmithForm snf(const Matrix &m) {
    const std::size_t R = m.rows(), C = m.cols();
    Matrix a = m, U = Matrix::identity(R), V = Matrix::identity(C), Vi = Matrix::identity(C);

    auto row_sub = [&](std::size_t i, std::size_t t, const Integer &q) { // row_i -= q row_t
        detail::axpy_row(a.row(i), a.row(t), q);
        detail::axpy_row(U.row(i), U.row(t), q);
    };
    auto col_sub = [&](std::size_t j, std::size_t t, const Integer &q) { // col_j -= q col_t
        if (q == 0)
            return;
        for (std::size_t i = 0; i < R; ++i)
            a(i, j) -= q * a(i, t);
        for (std::size_t i = 0; i < C; ++i)
            V(i, j) -= q * V(i, t);
        detail::axpy_row(Vi.row(t), Vi.row(j), -q);
    };
    auto col_swap = [&](std::size_t j, std::size_t k) {
        if (j == k)
            return;
        for (std::size_t i = 0; i < R; ++i)
            std::swap(a(i, j), a(i, k));
        for (std::size_t i = 0; i < C; ++i)
            std::swap(V(i, j), V(i, k));
        std::swap(Vi.row(j), Vi.row(k));
    };

    const std::size_t K = std::min(R, C);
    for (std::size_t t = 0; t < K; ++t) {
        while (true) {
            // smallest nonzero entry of the remaining block moves to (t, t)
            std::size_t bi = R, bj = C;
            for (std::size_t i = t; i < R; ++i)
                for (std::size_t j = t; j < C; ++j)
                    if (a(i, j) != 0 && (bi == R || abs(a(i, j)) < abs(a(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == R)
                break;
            std::swap(a.row(t), a.row(bi));
            std::swap(U.row(t), U.row(bi));
            col_swap(t, bj);

            bool clean = true;
            for (std::size_t i = t + 1; i < R; ++i)
                if (a(i, t) != 0) {
                    row_sub(i, t, detail::round_div(a(i, t), a(t, t)));
                    clean &= a(i, t) == 0;
                }
            for (std::size_t j = t + 1; j < C; ++j)
                if (a(t, j) != 0) {
                    col_sub(j, t, detail::round_div(a(t, j), a(t, t)));
                    clean &= a(t, j) == 0;
                }
            if (!clean)
                continue;
            // divisibility chain: pull a non-multiple into row t and retry
            bool chain = true;
            for (std::size_t i = t + 1; i < R && chain; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (!divisible(a(i, j), a(t, t))) {
                        row_sub(t, i, -1);
                        chain = false;
                        break;
                    }
            if (chain)
                break;
        }
        if (a(t, t) < 0) {
            for (auto &x : a.row(t))
                x = -x;
            for (auto &x : U.row(t))
                x = -x;
        }
    }
    SmithForm s{U, a, V, Vi, {}};
    for (std::size_t t = 0; t < K; ++t)
        s.diagonal.push_back(a(t, t));
    return s;
}

/// Basis of {x in Z^cols : M x = 0}, in Hermite normal form.
inline Matrix kernel(const Matrix &m) {
    const std::size_t R = m.rows(), C = m.cols();
    Matrix aug(C, R + C);
    for (std::size_t j = 0; j < C; ++j) {
        for (std::size_t i = 0; i < R; ++i)
            aug(j, i) = m(i, j);
        aug(j, R + j) = 1;
    }
    Matrix h = hnf(aug);
    Matrix out = Matrix::empty(C);
    for (const auto &r : h.row_list()) {
        bool zero_left = std::all_of(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(R),
                                     [](const Integer &x) { return x == 0; });
        if (zero_left)
            out.push_row(IntVec(r.begin() + static_cast<std::ptrdiff_t>(R), r.end()));
    }
    return hnf(out);
}

/// Hermite normal form of a full-rank lattice in Z^cols known to contain
/// delta * Z^cols. Entries are kept reduced mod delta, which stops the
/// coefficient growth of plain elimination on tall matrices.
inline Matrix hnf_modular(const Matrix &m, const Integer &delta) {
    const std::size_t cols = m.cols();
    if (delta <= 0)
        throw Error("hnf_modular needs a positive modulus");
    auto reduce = [&](IntVec &v, std::size_t from) {
        for (std::size_t j = from; j < cols; ++j)
            if (v[j] != 0)
                mpz_fdiv_r(v[j].get_mpz_t(), v[j].get_mpz_t(), delta.get_mpz_t());
    };
    std::vector<IntVec> a;
    for (const auto &r : m.row_list()) {
        IntVec v = r;
        reduce(v, 0);
        if (!is_zero_vec(v))
            a.push_back(std::move(v));
    }
    std::vector<IntVec> out;
    for (std::size_t c = 0; c < cols; ++c) {
        // delta * e_c keeps the column gcd a divisor of delta
        IntVec dc(cols, 0);
        dc[c] = delta;
        a.push_back(std::move(dc));
        while (true) {
            std::size_t best = a.size();
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i][c] != 0 && (best == a.size() || abs(a[i][c]) < abs(a[best][c])))
                    best = i;
            std::swap(a[0], a[best]);
            bool clean = true;
            for (std::size_t i = 1; i < a.size(); ++i) {
                if (a[i][c] == 0)
                    continue;
                detail::axpy_row(a[i], a[0], detail::round_div(a[i][c], a[0][c]), c);
                reduce(a[i], c + 1);
                if (a[i][c] != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        IntVec piv = std::move(a[0]);
        a.erase(a.begin());
        if (piv[c] < 0)
            for (std::size_t j = c; j < cols; ++j)
                piv[j] = -piv[j];
        a.erase(std::remove_if(a.begin(), a.end(), is_zero_vec), a.end());
        out.push_back(std::move(piv));
    }
    // entries right of a pivot were only reduced mod delta; fix them bottom-up
    for (std::size_t r = out.size(); r-- > 0;) {
        reduce(out[r], r + 1);
        for (std::size_t j = r + 1; j < cols; ++j)
            if (out[r][j] != 0) {
                Integer q = floor_div(out[r][j], out[j][j]);
                detail::axpy_row(out[r], out[j], q, j);
            }
    }
    return Matrix(cols, std::move(out));
}

/// Q-span of the rows intersected with Z^cols, in Hermite normal form.
///
/// With K of full row rank and H any basis of the lattice spanned by K's
/// columns, K = [H | 0] V^{-1} for a unimodular V, so H^{-1} K is integral
/// and extends to a unimodular matrix.
inline Matrix saturate(const Matrix &m) {
    Matrix k = hnf(m);
    const std::size_t r = k.rows();
    if (r == 0)
        return k;
    // the pivot columns of k form a triangular minor, so its determinant
    // times Z^r lies in the column lattice
    Integer delta = 1;
    auto piv = pivot_columns(k);
    for (std::size_t i = 0; i < r; ++i)
        delta *= k(i, piv[i]);
    Matrix ht = hnf_modular(k.transpose(), delta); // rows: basis of the column lattice, upper triangular
    if (ht.rows() != r)
        throw Error("saturate: rank mismatch");
    // solve H X = K with H = ht^T lower triangular
    std::vector<IntVec> x(r);
    for (std::size_t i = 0; i < r; ++i) {
        IntVec rhs = k.row(i);
        for (std::size_t j = 0; j < i; ++j)
            detail::axpy_row(rhs, x[j], ht(j, i));
        const Integer &p = ht(i, i);
        for (auto &v : rhs) {
            if (!divisible(v, p))
                throw Error("saturate: non-integral solution");
            mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
        }
        x[i] = std::move(rhs);
    }
    return hnf(Matrix(k.cols(), std::move(x)));
}

} // namespace fgalab
