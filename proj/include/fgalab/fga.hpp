#pragma once
// The formal group algebra R[[Lambda]]_F written as a power series ring in
// x_1..x_n (x_i standing for x_{w_i}), the invariants Theta, and the graded
// lattices cut out by invariants and the ideal they generate.

#include "fgalab/fgl.hpp"
#include "fgalab/lattice.hpp"
#include "fgalab/rootdata.hpp"
#include "fgalab/series.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace fgalab {

template <Coefficient C> class FGAContext;
template <Coefficient C> using ContextPtr = std::shared_ptr<const FGAContext<C>>;

template <Coefficient C> struct FGAElement {
    ContextPtr<C> ctx;
    TruncSeries<C> series;

    C augmentation() const { return series.constant_term(); }
    friend bool operator==(const FGAElement &a, const FGAElement &b) { return a.series == b.series; }
};

/// Monomials of degrees lo..hi in graded-lex order, with their positions.
class MonomialIndex {
  public:
    MonomialIndex(int nvars, int lo, int hi) : lo_(lo), hi_(hi) {
        for (int d = lo; d <= hi; ++d) {
            offsets_.push_back(monos_.size());
            for (auto &m : monomials_of_degree(nvars, d)) {
                pos_.emplace(m, monos_.size());
                monos_.push_back(m);
            }
        }
        offsets_.push_back(monos_.size());
    }
    std::size_t size() const { return monos_.size(); }
    const std::vector<Monomial> &monomials() const { return monos_; }
    std::size_t position(const Monomial &m) const { return pos_.at(m); }
    bool has(const Monomial &m) const { return pos_.count(m) > 0; }
    /// First position of degree d (d = hi + 1 gives size()).
    std::size_t offset(int d) const { return offsets_.at(static_cast<std::size_t>(d - lo_)); }
    int degree_of(std::size_t pos) const { return monos_.at(pos).degree; }

  private:
    int lo_, hi_;
    std::vector<Monomial> monos_;
    std::map<Monomial, std::size_t, GrlexLess> pos_;
    std::vector<std::size_t> offsets_;
};

inline std::string graded_label(int d) { return "graded-lex degree " + std::to_string(d); }

template <Coefficient C> class FGAContext : public std::enable_shared_from_this<FGAContext<C>> {
  public:
    using Series = TruncSeries<C>;
    using Ring = typename Series::Ring;

    static ContextPtr<C> make(RootSystem rs, FormalGroupLaw<C> law) {
        return ContextPtr<C>(new FGAContext(std::move(rs), std::move(law)));
    }

    const RootSystem &root_system() const { return rs_; }
    const FormalGroupLaw<C> &law() const { return law_; }
    int rank() const { return rs_.rank(); }
    int trunc() const { return law_.trunc(); }
    const Ring &ring() const { return law_.ring(); }

    Series zero() const { return Series(ring(), rank(), trunc()); }
    Series one() const { return Series::constant(ring(), rank(), trunc(), 1); }
    Series variable(int i) const { return Series::variable(ring(), rank(), trunc(), i); }

    FGAElement<C> element(Series s) const {
        if (s.nvars() != rank() || s.trunc() != trunc() || !coeff_traits<C>::same_ring(s.ring(), ring()))
            throw Error("series does not belong to this formal group algebra");
        return {this->shared_from_this(), std::move(s)};
    }

    /// m ._F x in one variable.
    const Series &n_series_cached(long m) const {
        {
            std::lock_guard lock(mu_);
            if (auto it = nseries_.find(m); it != nseries_.end())
                return it->second;
        }
        auto s = n_series(law_, m);
        std::lock_guard lock(mu_);
        return nseries_.try_emplace(m, std::move(s)).first->second;
    }

    /// x_lambda = (m_1 ._F x_1) +_F ... +_F (m_n ._F x_n).
    const Series &x_of_weight(const Weight &w) const {
        require_length(rs_, w.coords.size(), "weight");
        {
            std::lock_guard lock(mu_);
            if (auto it = xw_.find(w.coords); it != xw_.end())
                return it->second;
        }
        std::vector<Series> parts;
        for (int i = 0; i < rank(); ++i) {
            long m = w.coords[static_cast<std::size_t>(i)];
            if (m == 0)
                continue;
            Series p = zero();
            for (const auto &[mono, c] : n_series_cached(m).terms()) {
                Monomial mi;
                mi.exp[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(mono[0]);
                mi.degree = mono.degree;
                p.add_term(mi, c);
            }
            parts.push_back(std::move(p));
        }
        Series x = formal_sum(law_, std::span<const Series>(parts), rank());
        std::lock_guard lock(mu_);
        return xw_.try_emplace(w.coords, std::move(x)).first->second;
    }

    /// Images of x_1..x_n under a Weyl element.
    std::vector<Series> weyl_images(const WeylElement &g) const {
        std::vector<Series> imgs;
        for (int j = 0; j < rank(); ++j)
            imgs.push_back(x_of_weight(apply_weyl(rs_, g, Weight::fundamental(rank(), j))));
        return imgs;
    }

    /// Theta_d: sum_i x_{e_i}^d x_{-e_i}^d, or prod_i (x_{e_i} - x_{-e_i}) for d = n in type D.
    const Series &theta(int d) const {
        if (d < 1 || d > rank())
            throw Error("invariant index " + std::to_string(d) + " out of range 1.." + std::to_string(rank()));
        {
            std::lock_guard lock(mu_);
            if (auto it = theta_.find(d); it != theta_.end())
                return it->second;
        }
        Series t = zero();
        if (rs_.family() == Family::D && d == rank()) {
            t = one();
            for (int i = 0; i < rank(); ++i) {
                auto e = e_weight(rs_, i);
                t *= x_of_weight(e) - x_of_weight(-e);
            }
        } else {
            for (int i = 0; i < rank(); ++i) {
                auto e = e_weight(rs_, i);
                t += pow(x_of_weight(e) * x_of_weight(-e), static_cast<unsigned>(d));
            }
        }
        std::lock_guard lock(mu_);
        return theta_.try_emplace(d, std::move(t)).first->second;
    }

    /// Lattice of truncated integral invariants in I / I^{trunc+1}, coordinates
    /// = all monomials of degree 1..trunc in graded-lex order, HNF basis.
    const Matrix &invariant_module() const
        requires std::same_as<C, Integer>
    {
        {
            std::lock_guard lock(mu_);
            if (inv_)
                return *inv_;
        }
        auto m = compute_invariant_module();
        std::lock_guard lock(mu_);
        if (!inv_)
            inv_ = std::move(m);
        return *inv_;
    }

    const MonomialIndex &index() const {
        std::call_once(index_once_, [this] { index_.emplace(rank(), 1, trunc()); });
        return *index_;
    }

  private:
    FGAContext(RootSystem rs, FormalGroupLaw<C> law) : rs_(std::move(rs)), law_(std::move(law)) {}

    Matrix compute_invariant_module() const;

    RootSystem rs_;
    FormalGroupLaw<C> law_;
    mutable std::mutex mu_;
    mutable std::map<long, Series> nseries_;
    mutable std::map<std::vector<long>, Series> xw_;
    mutable std::map<int, Series> theta_;
    mutable std::optional<Matrix> inv_;
    mutable std::once_flag index_once_;
    mutable std::optional<MonomialIndex> index_;
};

template <Coefficient C>
ContextPtr<C> make_context(const RootSystem &rs, const FormalGroupLaw<C> &law) {
    return FGAContext<C>::make(rs, law);
}

// ---------------------------------------------------------------------------
// Elements

template <Coefficient C> FGAElement<C> x_of_weight(const ContextPtr<C> &ctx, const Weight &w) {
    return ctx->element(ctx->x_of_weight(w));
}

template <Coefficient C>
FGAElement<C> weyl_act(const ContextPtr<C> &ctx, const WeylElement &g, const FGAElement<C> &f) {
    if (f.ctx.get() != ctx.get())
        throw Error("element belongs to a different formal group algebra");
    auto imgs = ctx->weyl_images(g);
    return ctx->element(compose(f.series, std::span<const TruncSeries<C>>(imgs)));
}

template <Coefficient C> FGAElement<C> theta(const ContextPtr<C> &ctx, int d) {
    return ctx->element(ctx->theta(d));
}

template <Coefficient C> struct ThetaProduct {
    FGAElement<C> element;
    Integer r_alpha;
    int weight;
};

/// Sum of alpha_i * deg Theta_i.
inline int theta_weight(const RootSystem &rs, const std::vector<int> &alpha) {
    if (static_cast<int>(alpha.size()) != rs.rank())
        throw Error("exponent vector length differs from rank");
    int w = 0;
    for (int i = 0; i < rs.rank(); ++i) {
        if (alpha[static_cast<std::size_t>(i)] < 0)
            throw Error("exponent vector entries must be nonnegative");
        w += alpha[static_cast<std::size_t>(i)] * theta_degree(rs, i + 1);
    }
    return w;
}

template <Coefficient C> ThetaProduct<C> theta_product(const ContextPtr<C> &ctx, const std::vector<int> &alpha) {
    const auto &rs = ctx->root_system();
    int w = theta_weight(rs, alpha);
    if (w > ctx->trunc())
        throw Error("theta product of degree " + std::to_string(w) + " exceeds truncation " +
                    std::to_string(ctx->trunc()));
    auto s = ctx->one();
    Integer r = 1;
    for (int i = 0; i < rs.rank(); ++i) {
        int a = alpha[static_cast<std::size_t>(i)];
        if (a == 0)
            continue;
        s *= pow(ctx->theta(i + 1), static_cast<unsigned>(a));
        for (int k = 0; k < a; ++k)
            r *= r_index(rs, i + 1);
    }
    return {ctx->element(std::move(s)), r, w};
}

/// Every coefficient of Theta_d is even.
template <Coefficient C> bool theta_div2(const ContextPtr<C> &ctx, int d) {
    if constexpr (!coeff_traits<C>::admits_mod2) {
        throw Error("divisibility by 2 is undefined over a dyadic ring");
    } else {
        return exact_div_int(ctx->theta(d), Integer(2)).has_value();
    }
}

/// 2^n divides every coefficient of Theta_n (type D).
template <Coefficient C> bool theta_div2n(const ContextPtr<C> &ctx) {
    if (ctx->root_system().family() != Family::D)
        throw Error("Θ_n/2^n test is type-D only");
    if constexpr (!coeff_traits<C>::admits_mod2) {
        throw Error("divisibility by 2 is undefined over a dyadic ring");
    } else {
        const int n = ctx->rank();
        return exact_div_int(ctx->theta(n), pow2(static_cast<unsigned>(n))).has_value();
    }
}

template <Coefficient C> std::vector<Monomial> graded_basis(const ContextPtr<C> &ctx, int d) {
    if (d < 0 || d > ctx->trunc())
        throw Error("degree " + std::to_string(d) + " beyond truncation " + std::to_string(ctx->trunc()));
    return monomials_of_degree(ctx->rank(), d);
}

/// The same coordinates read in the algebra of another law (x_{w_i} -> x_{w_i}).
template <Coefficient C> FGAElement<C> deform(const FGAElement<C> &source, const ContextPtr<C> &target) {
    const auto &s = *source.ctx;
    if (!(s.root_system() == target->root_system()) || s.trunc() != target->trunc() ||
        !coeff_traits<C>::same_ring(s.ring(), target->ring()))
        throw Error("deform: source and target algebras differ in root system, truncation or ring");
    return target->element(source.series);
}

template <Coefficient C> nlohmann::json to_json(const FGAElement<C> &f) {
    auto j = to_json(f.series);
    const auto &rs = f.ctx->root_system();
    j["type"] = std::string(1, family_char(rs.family()));
    j["rank"] = rs.rank();
    j["fgl"] = f.ctx->law().name();
    j["trunc"] = f.ctx->trunc();
    return j;
}

// ---------------------------------------------------------------------------
// Lattices

namespace detail {

/// Coefficients of the degree lo..hi part of f in the given index.
inline IntVec coefficient_vector(const TruncSeries<Integer> &f, const MonomialIndex &idx) {
    IntVec v(idx.size(), 0);
    for (const auto &[m, c] : f.terms())
        if (idx.has(m))
            v[idx.position(m)] = c;
    return v;
}

/// Degree-d slice of a vector in the index of degrees 1..T.
inline IntVec degree_slice(const IntVec &v, const MonomialIndex &idx, int d) {
    return IntVec(v.begin() + static_cast<std::ptrdiff_t>(idx.offset(d)),
                  v.begin() + static_cast<std::ptrdiff_t>(idx.offset(d + 1)));
}

/// All alpha with 1 <= sum alpha_i deg Theta_i <= T.
inline std::vector<std::vector<int>> theta_exponents(const RootSystem &rs, int lo, int hi) {
    std::vector<std::vector<int>> out;
    std::vector<int> a(static_cast<std::size_t>(rs.rank()), 0);
    std::function<void(int, int)> rec = [&](int i, int w) {
        if (i == rs.rank()) {
            if (w >= lo && w <= hi)
                out.push_back(a);
            return;
        }
        int deg = theta_degree(rs, i + 1);
        for (int k = 0; w + k * deg <= hi; ++k) {
            a[static_cast<std::size_t>(i)] = k;
            rec(i + 1, w + k * deg);
        }
        a[static_cast<std::size_t>(i)] = 0;
    };
    rec(0, 0);
    return out;
}

} // namespace detail

/// Over Q every truncated invariant is the image of a genuine one (average a
/// lift over W), and genuine invariants are power series in the Theta_i. So
/// the integral truncated invariants are the saturation of the Theta(alpha).
template <Coefficient C> Matrix FGAContext<C>::compute_invariant_module() const {
    if constexpr (!std::is_same_v<C, Integer>) {
        throw Error("invariants: specialize parameters first");
    } else {
        const auto &idx = index();
        Matrix gens = Matrix::empty(idx.size());
        std::map<std::vector<int>, Series> prod;
        for (const auto &alpha : detail::theta_exponents(rs_, 1, trunc())) {
            // build from a smaller product times one Theta
            std::size_t i = 0;
            while (alpha[i] == 0)
                ++i;
            auto smaller = alpha;
            --smaller[i];
            Series base = one();
            if (auto it = prod.find(smaller); it != prod.end())
                base = it->second;
            else if (std::any_of(smaller.begin(), smaller.end(), [](int k) { return k != 0; }))
                base = theta_product(this->shared_from_this(), smaller).element.series;
            Series p = base * theta(static_cast<int>(i) + 1);
            gens.push_row(detail::coefficient_vector(p, idx));
            prod.emplace(alpha, std::move(p));
        }
        return saturate(gens);
    }
}

template <Coefficient C> void require_degree(const ContextPtr<C> &ctx, int d) {
    if (d < 1 || d > ctx->trunc())
        throw Error("degree " + std::to_string(d) + " outside 1.." + std::to_string(ctx->trunc()));
}

/// Degree-d leading forms of truncated integral invariants lying in I^d.
template <Coefficient C> IntLattice invariant_graded_lattice(const ContextPtr<C> &ctx, int d) {
    if constexpr (!std::is_same_v<C, Integer>) {
        throw Error("invariant lattice: specialize parameters first");
    } else {
        require_degree(ctx, d);
        const auto &idx = ctx->index();
        const auto &inv = ctx->invariant_module();
        const std::size_t nd = idx.offset(d + 1) - idx.offset(d);
        Matrix out = Matrix::empty(nd);
        auto piv = pivot_columns(inv);
        for (std::size_t r = 0; r < inv.rows(); ++r)
            if (piv[r] >= idx.offset(d) && piv[r] < idx.offset(d + 1))
                out.push_row(detail::degree_slice(inv.row(r), idx, d));
        return IntLattice(nd, out, graded_label(d));
    }
}

/// Degree-d leading forms of the ideal generated by the truncated invariants.
template <Coefficient C> IntLattice ideal_graded_lattice(const ContextPtr<C> &ctx, int d) {
    if constexpr (!std::is_same_v<C, Integer>) {
        throw Error("ideal lattice: specialize parameters first");
    } else {
        require_degree(ctx, d);
        const auto &idx = ctx->index();
        const auto &inv = ctx->invariant_module();
        const std::size_t cols = idx.offset(d + 1); // degrees 1..d
        const std::size_t nd = cols - idx.offset(d);
        auto piv = pivot_columns(inv);
        Matrix gens = Matrix::empty(cols);
        for (std::size_t r = 0; r < inv.rows(); ++r) {
            if (piv[r] >= cols)
                continue;
            const int low = idx.degree_of(piv[r]);
            for (int k = 0; k + low <= d; ++k)
                for (const auto &m : monomials_of_degree(ctx->rank(), k)) {
                    IntVec v(cols, 0);
                    for (std::size_t j = piv[r]; j < idx.offset(d - k + 1); ++j)
                        if (inv(r, j) != 0)
                            v[idx.position(idx.monomials()[j] * m)] = inv(r, j);
                    gens.push_row(std::move(v));
                }
        }
        Matrix h = hnf(gens);
        Matrix out = Matrix::empty(nd);
        auto hp = pivot_columns(h);
        for (std::size_t r = 0; r < h.rows(); ++r)
            if (hp[r] >= idx.offset(d))
                out.push_row(detail::degree_slice(h.row(r), idx, d));
        return IntLattice(nd, out, graded_label(d));
    }
}

/// The leading form of Theta_i, optionally divided by r_i. Division checks
/// the whole truncated series of Theta_i, not only its leading form.
template <Coefficient C> TruncSeries<C> theta_leading_form(const ContextPtr<C> &ctx, int i, bool divide) {
    const auto &rs = ctx->root_system();
    const auto &t = ctx->theta(i);
    const int deg = theta_degree(rs, i);
    if (deg > ctx->trunc())
        throw Error("Theta_" + std::to_string(i) + " has degree above the truncation");
    auto lead = homogeneous_component(t, deg);
    if (!divide)
        return lead;
    const Integer r = r_index(rs, i);
    if (!exact_div_int(t, r))
        throw Error("Theta_" + std::to_string(i) + "/" + r.get_str() + " is not integral");
    return *exact_div_int(lead, r);
}

/// Degree-d part of { sum g_i Theta_i (or g_i Theta_i / r_i) : g_i in I^(d - deg Theta_i) }.
template <Coefficient C> IntLattice theta_span_lattice(const ContextPtr<C> &ctx, int d, bool use_r_divisors) {
    if constexpr (!std::is_same_v<C, Integer>) {
        throw Error("theta span: specialize parameters first");
    } else {
        require_degree(ctx, d);
        const auto &rs = ctx->root_system();
        MonomialIndex idx(ctx->rank(), d, d);
        Matrix gens = Matrix::empty(idx.size());
        for (int i = 1; i <= rs.rank(); ++i) {
            const int deg = theta_degree(rs, i);
            if (deg > d)
                continue;
            auto lead = theta_leading_form(ctx, i, use_r_divisors);
            for (const auto &m : monomials_of_degree(ctx->rank(), d - deg)) {
                IntVec v(idx.size(), 0);
                for (const auto &[u, c] : lead.terms())
                    v[idx.position(u * m)] = c;
                gens.push_row(std::move(v));
            }
        }
        return IntLattice(idx.size(), gens, graded_label(d));
    }
}

/// Degree-d span of leading forms of Theta(alpha), |alpha| = d, optionally divided by r_alpha.
template <Coefficient C> IntLattice theta_product_lattice(const ContextPtr<C> &ctx, int d, bool use_r_divisors) {
    if constexpr (!std::is_same_v<C, Integer>) {
        throw Error("theta product span: specialize parameters first");
    } else {
        require_degree(ctx, d);
        const auto &rs = ctx->root_system();
        MonomialIndex idx(ctx->rank(), d, d);
        Matrix gens = Matrix::empty(idx.size());
        for (const auto &alpha : detail::theta_exponents(rs, d, d)) {
            auto lead = ctx->one();
            Integer r = 1;
            for (int i = 1; i <= rs.rank(); ++i)
                for (int k = 0; k < alpha[static_cast<std::size_t>(i - 1)]; ++k) {
                    lead *= theta_leading_form(ctx, i, false);
                    r *= r_index(rs, i);
                }
            if (use_r_divisors) {
                auto q = exact_div_int(lead, r);
                if (!q)
                    throw Error("leading form of a theta product is not divisible by its r-multiplier");
                lead = *q;
            }
            gens.push_row(detail::coefficient_vector(lead, idx));
        }
        return IntLattice(idx.size(), gens, graded_label(d));
    }
}

/// Model of the kernel of the characteristic map in degree d: the
/// 2-saturation of the theta span inside the full degree-d lattice.
template <Coefficient C> IntLattice kernel_model(const ContextPtr<C> &ctx, int d) {
    auto span = theta_span_lattice(ctx, d, false);
    return saturate2(span, IntLattice::full(span.ambient_dim(), graded_label(d)));
}

/// F == x + y up to truncation.
template <Coefficient C> bool is_additive(const FormalGroupLaw<C> &f) {
    return f.series() == make_additive<C>(f.ring(), f.trunc()).series();
}

} // namespace fgalab
