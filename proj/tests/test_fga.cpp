#include "fgalab/fga.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace fgalab;
using namespace fgalab::testing;

namespace {

const IntegerRing Z;
const RootSystem B3 = RootSystem::parse("B3");
const RootSystem D4 = RootSystem::parse("D4");

ContextPtr<Integer> additive(const RootSystem &rs, int T) { return make_context(rs, make_additive<Integer>(Z, T)); }
ContextPtr<Integer> mult1(const RootSystem &rs, int T) {
    return make_context(rs, make_multiplicative<Integer>(Integer(1), Z, T));
}
ContextPtr<Integer> lorentz(const RootSystem &rs, long b, int T) {
    return make_context(rs, make_lorentz<Integer>(Integer(b), Z, T));
}

// Lattice of leading forms in degree d of the integral solutions f (degrees
// 1..T) of g f = f for every simple reflection g: a direct kernel computation.
IntLattice invariants_by_kernel(const ContextPtr<Integer> &ctx, int d) {
    const auto &idx = ctx->index();
    const std::size_t N = idx.size();
    Matrix M(0, N);
    for (const auto &g : weyl_generators(ctx->root_system())) {
        auto imgs = ctx->weyl_images(g);
        std::vector<IntVec> cols;
        for (const auto &m : idx.monomials()) {
            S mono(Z, ctx->rank(), ctx->trunc());
            mono.add_term(m, Integer(1));
            auto img = compose(mono, std::span<const S>(imgs)) - mono;
            IntVec c(N, 0);
            for (const auto &[u, v] : img.terms())
                c[idx.position(u)] = v;
            cols.push_back(std::move(c));
        }
        for (std::size_t r = 0; r < N; ++r) {
            IntVec row(N);
            for (std::size_t j = 0; j < N; ++j)
                row[j] = cols[j][r];
            M.push_row(std::move(row));
        }
    }
    Matrix K = hnf(kernel(M));
    auto piv = pivot_columns(K);
    const std::size_t lo = idx.offset(d), hi = idx.offset(d + 1);
    Matrix out = Matrix::empty(hi - lo);
    for (std::size_t r = 0; r < K.rows(); ++r)
        if (piv[r] >= lo && piv[r] < hi)
            out.push_row(IntVec(K.row(r).begin() + static_cast<std::ptrdiff_t>(lo),
                                K.row(r).begin() + static_cast<std::ptrdiff_t>(hi)));
    return IntLattice(hi - lo, out);
}

IntVec vec(const S &f, int nvars, int d) {
    auto monos = monomials_of_degree(nvars, d);
    IntVec v(monos.size(), 0);
    for (std::size_t i = 0; i < monos.size(); ++i)
        v[i] = f.coeff(monos[i]);
    return v;
}

} // namespace

TEST(Weights, Additive) {
    auto ctx = additive(B3, 5);
    EXPECT_EQ(x_of_weight(ctx, Weight::fundamental(3, 0)).series, ctx->variable(0));
    EXPECT_EQ(x_of_weight(ctx, Weight{{-1, 1, 0}}).series, ctx->variable(1) - ctx->variable(0));
}

TEST(Weights, MultiplicativeNegative) {
    auto ctx = mult1(B3, 6);
    S want(Z, 3, 6);
    for (int k = 1; k <= 6; ++k)
        want.add_term(Monomial{k, 0, 0}, Integer(-1));
    EXPECT_EQ(x_of_weight(ctx, Weight{{-1, 0, 0}}).series, want);
}

TEST(WeylAct, Examples) {
    auto ctx = additive(B3, 5);
    auto x3 = ctx->element(ctx->variable(2));
    EXPECT_EQ(weyl_act(ctx, WeylElement::identity(3), x3), x3);
    WeylElement flip3({0, 1, 2}, {1, 1, -1});
    EXPECT_EQ(weyl_act(ctx, flip3, x3).series, ctx->variable(1) - ctx->variable(2));
    auto other = additive(B3, 5);
    EXPECT_THROW(weyl_act(other, flip3, x3), Error);
}

TEST(WeylAct, ThetaIsInvariant) {
    for (const auto &ctx : {mult1(B3, 6), lorentz(D4, 1, 6), mult1(D4, 5)}) {
        for (int d = 1; d <= ctx->rank(); ++d) {
            if (theta_degree(ctx->root_system(), d) > ctx->trunc())
                continue;
            auto t = theta(ctx, d);
            for (const auto &g : weyl_generators(ctx->root_system()))
                EXPECT_EQ(weyl_act(ctx, g, t), t) << ctx->root_system().name() << " d=" << d;
        }
    }
}

TEST(Theta, AdditiveB3ThetaOne) {
    auto t = theta(additive(B3, 6), 1).series;
    EXPECT_EQ(t, poly(3, 6, {{{2, 0, 0}, -2}, {{1, 1, 0}, 2}, {{0, 2, 0}, -2}, {{0, 1, 1}, 4}, {{0, 0, 2}, -4}}));
    EXPECT_EQ(content_gcd(t), 2);
}

TEST(Theta, AdditiveD4Top) {
    auto ctx = additive(D4, 6);
    auto x = [&](int i) { return ctx->variable(i); };
    // e_1 = w1, e_2 = w2 - w1, e_3 = w4 - w3, e_4 = w4 + w3 - w2
    std::vector<S> e{x(0), x(1) - x(0), x(3) - x(2), x(3) + x(2) - x(1)};
    S want = ctx->one();
    for (const auto &v : e)
        want *= v.scaled(Integer(2));
    EXPECT_EQ(theta(ctx, 4).series, want);
    EXPECT_EQ(content_gcd(want), 16);
    EXPECT_THROW(theta(ctx, 5), Error);
}

TEST(Theta, Products) {
    auto ctx = additive(B3, 6);
    auto p = theta_product(ctx, {1, 0, 0});
    EXPECT_EQ(p.element, theta(ctx, 1));
    EXPECT_EQ(p.r_alpha, 2);
    EXPECT_EQ(p.weight, 2);
    auto sq = theta_product(ctx, {2, 0, 0});
    EXPECT_EQ(sq.element.series, pow(theta(ctx, 1).series, 2));
    EXPECT_EQ(sq.r_alpha, 4);
    EXPECT_EQ(sq.weight, 4);
    auto e = theta_product(ctx, {0, 0, 0});
    EXPECT_EQ(e.element.series, ctx->one());
    EXPECT_EQ(e.r_alpha, 1);
    EXPECT_THROW(theta_product(ctx, {0, 0, 2}), Error);
}

TEST(Theta, DivisibilityByTwo) {
    EXPECT_TRUE(theta_div2(additive(B3, 6), 1));
    EXPECT_FALSE(theta_div2(mult1(B3, 6), 2));
    EXPECT_TRUE(theta_div2(lorentz(B3, 2, 6), 2));
}

TEST(Theta, DivisibilityTypeD) {
    EXPECT_TRUE(theta_div2n(additive(D4, 6)));
    EXPECT_FALSE(theta_div2n(mult1(D4, 6)));
    auto F = make_multiplicative<Integer>(Integer(-2), Z, 8);
    EXPECT_TRUE(theta_div2n(make_context(D4, F)));
    EXPECT_THROW(theta_div2n(additive(B3, 6)), Error);
}

TEST(GradedBasis, Sizes) {
    EXPECT_EQ(graded_basis(additive(B3, 4), 1).size(), 3u);
    EXPECT_EQ(graded_basis(additive(B3, 4), 2).size(), 6u);
    EXPECT_EQ(graded_basis(additive(D4, 4), 3).size(), 20u);
    EXPECT_THROW(graded_basis(additive(B3, 4), 5), Error);
}

TEST(Deform, FixesCoordinates) {
    auto a = additive(B3, 6), m = mult1(B3, 6);
    auto t = theta(m, 1);
    auto there = deform(t, a);
    EXPECT_EQ(there.series, t.series);
    EXPECT_EQ(deform(there, m), t);
    EXPECT_EQ(deform(m->element(m->variable(0)), a).series, a->variable(0));
    EXPECT_THROW(deform(t, additive(B3, 5)), Error);
    EXPECT_THROW(deform(t, additive(D4, 6)), Error);
}

TEST(Lattices, AdditiveB3Invariants) {
    auto ctx = additive(B3, 8);
    EXPECT_TRUE(invariant_graded_lattice(ctx, 1).is_zero());
    auto q = poly(3, 2, {{{2, 0, 0}, 1}, {{1, 1, 0}, -1}, {{0, 2, 0}, 1}, {{0, 1, 1}, -2}, {{0, 0, 2}, 2}});
    auto l2 = invariant_graded_lattice(ctx, 2);
    EXPECT_EQ(l2, IntLattice(6, Matrix(6, {vec(q, 3, 2)})));
}

TEST(Lattices, EvenLawsShareDegreeTwo) {
    auto a = invariant_graded_lattice(additive(B3, 8), 2);
    EXPECT_EQ(invariant_graded_lattice(lorentz(B3, 2, 8), 2), a);
    EXPECT_EQ(invariant_graded_lattice(lorentz(B3, -4, 8), 2), a);
}

TEST(Lattices, AdditiveB3Ideal) {
    auto ctx = additive(B3, 8);
    EXPECT_TRUE(ideal_graded_lattice(ctx, 1).is_zero());
    EXPECT_EQ(ideal_graded_lattice(ctx, 2), invariant_graded_lattice(ctx, 2));
    auto q = poly(3, 3, {{{2, 0, 0}, 1}, {{1, 1, 0}, -1}, {{0, 2, 0}, 1}, {{0, 1, 1}, -2}, {{0, 0, 2}, 2}});
    Matrix g = Matrix::empty(10);
    for (int i = 0; i < 3; ++i)
        g.push_row(vec(q * var(3, 3, i), 3, 3));
    EXPECT_EQ(ideal_graded_lattice(ctx, 3), IntLattice(10, g));
}

TEST(Lattices, ThetaSpan) {
    auto ctx = additive(B3, 8);
    auto lead = homogeneous_component(theta(ctx, 1).series, 2);
    EXPECT_EQ(theta_span_lattice(ctx, 2, false), IntLattice(6, Matrix(6, {vec(lead, 3, 2)})));
    EXPECT_EQ(theta_span_lattice(ctx, 2, true), invariant_graded_lattice(ctx, 2));
    EXPECT_THROW(theta_span_lattice(mult1(B3, 8), 2, true), Error);
}

TEST(Lattices, KernelModel) {
    auto ctx = additive(B3, 8);
    EXPECT_TRUE(kernel_model(ctx, 1).is_zero());
    EXPECT_EQ(kernel_model(ctx, 2), invariant_graded_lattice(ctx, 2));
    EXPECT_EQ(kernel_model(ctx, 3), ideal_graded_lattice(ctx, 3));
}

TEST(Lattices, ParametersMustBeSpecialized) {
    auto R = make_param_ring({"a"});
    auto F = make_multiplicative<ParamPoly>(ParamPoly::variable(R, "a"), R, 6);
    auto ctx = make_context(B3, F);
    EXPECT_THROW(invariant_graded_lattice(ctx, 2), Error);
}

// The invariant lattice is built from Theta products; solving the
// invariance equations directly must give the same leading forms.
TEST(Lattices, InvariantsMatchDirectKernel) {
    struct Case {
        ContextPtr<Integer> ctx;
        int dmax;
    };
    std::vector<Case> cases{{additive(B3, 6), 6}, {mult1(B3, 6), 6}, {lorentz(B3, 1, 6), 6},
                            {lorentz(B3, 2, 6), 6}, {mult1(D4, 5), 5},   {additive(D4, 5), 5}};
    for (const auto &c : cases)
        for (int d = 1; d <= c.dmax; ++d)
            EXPECT_EQ(invariant_graded_lattice(c.ctx, d), invariants_by_kernel(c.ctx, d))
                << c.ctx->root_system().name() << " " << c.ctx->law().name() << " d=" << d;
}
