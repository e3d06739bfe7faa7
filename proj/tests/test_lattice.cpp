#include "fgalab/lattice.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace fgalab;

namespace {

IntLattice L(std::size_t dim, std::initializer_list<std::initializer_list<long>> rows) {
    return IntLattice(dim, Matrix::from(rows));
}

} // namespace

TEST(Lattice, Contains) {
    auto l = L(2, {{2, 0}, {0, 1}});
    EXPECT_TRUE(l.contains(IntVec{2, 1}));
    EXPECT_FALSE(l.contains(IntVec{1, 0}));
    EXPECT_TRUE(l.contains(IntVec{0, 0}));
    EXPECT_TRUE(IntLattice::zero(3).contains(IntVec{0, 0, 0}));
    EXPECT_THROW(l.contains(IntVec{1, 0, 0}), Error);
    EXPECT_TRUE(l.contains(L(2, {{4, 3}})));
    EXPECT_FALSE(L(2, {{4, 3}}).contains(l));
}

TEST(Lattice, EqualityIsByHnf) {
    EXPECT_EQ(L(2, {{1, 1}, {0, 2}}), L(2, {{1, -1}, {1, 1}}));
    EXPECT_FALSE(L(2, {{1, 0}}) == L(2, {{0, 1}}));
    EXPECT_THROW(L(2, {{1, 0, 0}}), Error);
}

TEST(Multiplier, Examples) {
    auto l = L(3, {{1, 2, 0}, {0, 3, 1}});
    EXPECT_EQ(*inclusion_multiplier(l, l.scaled(2)).tau, 2);
    EXPECT_EQ(*inclusion_multiplier(l, l).tau, 1);
    EXPECT_EQ(*inclusion_multiplier(L(2, {{1, 0}, {0, 1}}), L(2, {{2, 0}, {0, 3}})).tau, 6);
    EXPECT_FALSE(inclusion_multiplier(L(2, {{1, 0}}), L(2, {{0, 1}})).finite());
    EXPECT_THROW(inclusion_multiplier(L(2, {{1, 0}}), L(3, {{1, 0, 0}})), Error);
    auto e = inclusion_multiplier(L(2, {{1, 0}}), L(2, {{4, 0}}), Integer(8), 5);
    EXPECT_TRUE(e.divides_bound());
    EXPECT_EQ(e.certified_trunc, 5);
    EXPECT_FALSE(inclusion_multiplier(L(2, {{1, 0}}), L(2, {{4, 0}}), Integer(2)).divides_bound());
}

TEST(Multiplier, RandomScalings) {
    std::mt19937 rng(23);
    std::uniform_int_distribution<long> e(-6, 6);
    std::uniform_int_distribution<long> k(1, 12);
    for (int t = 0; t < 30; ++t) {
        Matrix m(3, 4);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                m(i, j) = e(rng);
        IntLattice l(4, m);
        if (l.is_zero())
            continue;
        const long a = k(rng), b = k(rng);
        // a L inside b L needs the multiplier b / gcd(a, b)
        auto r = inclusion_multiplier(l.scaled(a), l.scaled(b));
        EXPECT_EQ(*r.tau, Integer(b) / gcd(Integer(a), Integer(b)));
    }
}

TEST(Saturate2, Examples) {
    auto Z2 = IntLattice::full(2);
    EXPECT_EQ(saturate2(L(2, {{2, 0}, {0, 2}}), Z2), Z2);
    EXPECT_EQ(saturate2(L(2, {{2, 0}, {0, 3}}), Z2), L(2, {{1, 0}, {0, 3}}));
    auto l = L(2, {{1, 0}, {0, 3}});
    EXPECT_EQ(saturate2(l, Z2), l);
    EXPECT_EQ(saturate2(L(3, {{4, 4, 0}}), IntLattice::full(3)), L(3, {{1, 1, 0}}));
    EXPECT_THROW(saturate2(L(2, {{1, 0}}), L(2, {{2, 0}, {0, 1}})), Error);
}

TEST(Saturate2, RandomTwoPowerIndex) {
    std::mt19937 rng(31);
    std::uniform_int_distribution<long> e(-9, 9);
    for (int t = 0; t < 30; ++t) {
        Matrix m(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                m(i, j) = e(rng);
        IntLattice l(3, m);
        auto s = saturate2(l, IntLattice::full(3));
        EXPECT_TRUE(s.contains(l));
        EXPECT_EQ(saturate2(s, IntLattice::full(3)), s);
        // S / L is a 2-group
        auto r = inclusion_multiplier(s, l);
        ASSERT_TRUE(r.finite());
        Integer odd = *r.tau;
        while (odd % 2 == 0)
            odd /= 2;
        EXPECT_EQ(odd, 1);
        EXPECT_EQ(saturate2(l.scaled(8), IntLattice::full(3)), s);
    }
}

TEST(Json, LatticeRoundTrip) {
    auto l = IntLattice(3, Matrix::from({{2, 0, 5}, {0, 7, 1}}), "graded-lex degree 1");
    auto j = to_json(l);
    EXPECT_EQ(lattice_from_json(j), l);
    EXPECT_EQ(lattice_from_json(j).basis_label(), "graded-lex degree 1");
}
