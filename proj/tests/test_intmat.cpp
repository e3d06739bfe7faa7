#include "fgalab/intmat.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace fgalab;

namespace {

Matrix random_matrix(std::mt19937 &rng, std::size_t r, std::size_t c, int bound) {
    std::uniform_int_distribution<int> e(-bound, bound);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = e(rng);
    return m;
}

// gcd of all k x k minors, by cofactor expansion; small matrices only
Integer minor_det(const Matrix &m, const std::vector<std::size_t> &rows, const std::vector<std::size_t> &cols) {
    if (rows.size() == 1)
        return m(rows[0], cols[0]);
    Integer acc = 0;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        std::vector<std::size_t> rest(cols);
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
        std::vector<std::size_t> rr(rows.begin() + 1, rows.end());
        Integer t = m(rows[0], cols[k]) * minor_det(m, rr, rest);
        acc += (k % 2 ? -t : t);
    }
    return acc;
}

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t> &cur,
             std::vector<std::vector<std::size_t>> &out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

Integer determinantal_divisor(const Matrix &m, std::size_t k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    Integer g = 0;
    for (const auto &r : rs)
        for (const auto &c : cs)
            g = gcd(g, minor_det(m, r, c));
    return g;
}

bool is_hnf(const Matrix &h) {
    std::size_t last = 0;
    bool first = true;
    auto piv = pivot_columns(h);
    for (std::size_t i = 0; i < h.rows(); ++i) {
        if (!first && piv[i] <= last)
            return false;
        first = false;
        last = piv[i];
        if (h(i, piv[i]) <= 0)
            return false;
        for (std::size_t j = 0; j < piv[i]; ++j)
            if (h(i, j) != 0)
                return false;
        for (std::size_t k = 0; k < i; ++k)
            if (h(k, piv[i]) < 0 || h(k, piv[i]) >= h(i, piv[i]))
                return false;
    }
    return true;
}

// x in the row span of h (h in echelon form), by back substitution
bool in_row_span(const Matrix &h, IntVec x) {
    auto piv = pivot_columns(h);
    for (std::size_t i = 0; i < h.rows(); ++i) {
        if (!divisible(x[piv[i]], h(i, piv[i])))
            return false;
        Integer q = x[piv[i]] / h(i, piv[i]);
        for (std::size_t j = 0; j < x.size(); ++j)
            x[j] -= q * h(i, j);
    }
    return is_zero_vec(x);
}

} // namespace

TEST(Hnf, Examples) {
    EXPECT_EQ(hnf(Matrix::from({{2, 1}, {0, 1}})), Matrix::from({{2, 0}, {0, 1}}));
    EXPECT_EQ(hnf(Matrix::identity(3)), Matrix::identity(3));
    EXPECT_EQ(hnf(Matrix::from({{2, 4}})), Matrix::from({{2, 4}}));
    EXPECT_EQ(hnf(Matrix::from({{0, 0}, {-3, 6}})), Matrix::from({{3, -6}}));
    EXPECT_EQ(hnf(Matrix(2, 3)).rows(), 0u);
}

TEST(Hnf, RandomSameLattice) {
    std::mt19937 rng(11);
    for (int t = 0; t < 40; ++t) {
        std::uniform_int_distribution<std::size_t> dim(1, 7);
        auto m = random_matrix(rng, dim(rng), dim(rng), 9);
        auto h = hnf(m);
        EXPECT_TRUE(is_hnf(h));
        for (const auto &r : m.row_list())
            EXPECT_TRUE(in_row_span(h, r));
        // every row of h is an integer combination of m's rows: same HNF for the stacked matrix
        Matrix both = m;
        for (const auto &r : h.row_list())
            both.push_row(r);
        EXPECT_EQ(hnf(both), h);
        EXPECT_EQ(hnf(h), h);
    }
}

TEST(Hnf, ModularAgrees) {
    std::mt19937 rng(5);
    for (int t = 0; t < 20; ++t) {
        auto m = random_matrix(rng, 6, 4, 20);
        auto h = hnf(m);
        if (h.rows() != 4)
            continue;
        Integer det = 1;
        for (std::size_t i = 0; i < 4; ++i)
            det *= h(i, i);
        EXPECT_EQ(hnf_modular(m, det), h);
    }
    EXPECT_THROW(hnf_modular(Matrix::identity(2), 0), Error);
}

TEST(Determinant, Examples) {
    EXPECT_EQ(determinant(Matrix::from({{2, 0}, {0, 3}})), 6);
    EXPECT_EQ(determinant(Matrix::from({{2, 4}, {6, 8}})), -8);
    EXPECT_EQ(determinant(Matrix::from({{1, 2}, {2, 4}})), 0);
}

TEST(Snf, Examples) {
    EXPECT_EQ(snf(Matrix::from({{2, 0}, {0, 3}})).diagonal, (IntVec{1, 6}));
    EXPECT_EQ(snf(Matrix::from({{2, 4}, {6, 8}})).diagonal, (IntVec{2, 4}));
    EXPECT_EQ(snf(Matrix(2, 2)).diagonal, (IntVec{0, 0}));
}

TEST(Snf, DeterminantalDivisors) {
    std::mt19937 rng(3);
    for (int t = 0; t < 30; ++t) {
        std::uniform_int_distribution<std::size_t> dim(1, 4);
        auto m = random_matrix(rng, dim(rng), dim(rng), 12);
        auto s = snf(m);
        Integer prev = 1;
        for (std::size_t k = 1; k <= s.diagonal.size(); ++k) {
            Integer dk = determinantal_divisor(m, k);
            prev *= s.diagonal[k - 1];
            EXPECT_EQ(abs(prev), dk) << "k=" << k;
        }
    }
}

TEST(Kernel, Examples) {
    auto k = kernel(Matrix::from({{1, 1, 0}, {0, 0, 1}}));
    EXPECT_EQ(k, Matrix::from({{1, -1, 0}}));
    EXPECT_EQ(kernel(Matrix::identity(3)).rows(), 0u);
    EXPECT_EQ(kernel(Matrix(2, 3)), Matrix::identity(3));
    // 2x + 4y = 0 has primitive solution (2, -1)
    EXPECT_EQ(kernel(Matrix::from({{2, 4}})), Matrix::from({{2, -1}}));
}

TEST(Kernel, RandomIsSaturatedNullSpace) {
    std::mt19937 rng(17);
    for (int t = 0; t < 20; ++t) {
        auto m = random_matrix(rng, 3, 6, 7);
        auto k = kernel(m);
        EXPECT_EQ(k.rows(), 6u - hnf(m).rows());
        for (const auto &r : k.row_list())
            for (std::size_t i = 0; i < m.rows(); ++i) {
                Integer s = 0;
                for (std::size_t j = 0; j < 6; ++j)
                    s += m(i, j) * r[j];
                EXPECT_EQ(s, 0);
            }
        EXPECT_EQ(saturate(k), k);
    }
}

TEST(Saturate, Examples) {
    EXPECT_EQ(saturate(Matrix::from({{2, 4}})), Matrix::from({{1, 2}}));
    EXPECT_EQ(saturate(Matrix::from({{2, 0}, {0, 3}})), Matrix::identity(2));
    EXPECT_EQ(saturate(Matrix::from({{2, 2, 0}, {0, 3, 3}})), Matrix::from({{1, 0, -1}, {0, 1, 1}}));
}
