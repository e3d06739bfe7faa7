#pragma once
// One-dimensional commutative formal group laws F(x, y) = x + y + sum a_ij x^i y^j.

#include "fgalab/report.hpp"
#include "fgalab/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fgalab {

template <Coefficient C> class FormalGroupLaw {
  public:
    using Series = TruncSeries<C>;
    using Ring = typename Series::Ring;

    /// Wraps a bivariate series of the shape x + y + (terms divisible by xy).
    /// Axioms are not checked here; see check_axioms.
    FormalGroupLaw(Series series, std::string name) : series_(std::move(series)), name_(std::move(name)) {
        if (series_.nvars() != 2)
            throw Error("a formal group law is a series in two variables");
        if (series_.trunc() < 1)
            throw Error("formal group law needs truncation >= 1");
        const C one = coeff_traits<C>::from_int(series_.ring(), Integer(1));
        for (const auto &[m, c] : series_.terms()) {
            bool linear = (m == Monomial{1, 0}) || (m == Monomial{0, 1});
            if (linear) {
                if (!(c == one))
                    throw Error("formal group law must start with x + y");
            } else if (m[0] == 0 || m[1] == 0) {
                throw Error("formal group law has a pure power term; expected x + y + sum a_ij x^i y^j");
            }
        }
        if (!(series_.coeff(Monomial{1, 0}) == one) || !(series_.coeff(Monomial{0, 1}) == one))
            throw Error("formal group law must start with x + y");
    }

    const Series &series() const { return series_; }
    const Ring &ring() const { return series_.ring(); }
    int trunc() const { return series_.trunc(); }
    const std::string &name() const { return name_; }
    const std::vector<std::string> &warnings() const { return warnings_; }
    void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

    /// a_ij for i, j >= 1.
    C coeff(int i, int j) const { return series_.coeff(Monomial{i, j}); }

    /// F(u, v) for augmentation-zero series u, v.
    Series apply(const Series &u, const Series &v) const {
        if (u.trunc() > trunc())
            throw Error("arguments are truncated above the law's own truncation");
        std::vector<Series> args{u, v};
        return compose(series_, std::span<const Series>(args));
    }

    /// The same law with fewer terms.
    FormalGroupLaw truncated(int trunc) const {
        if (trunc > this->trunc())
            throw Error("cannot raise the truncation of an expanded law");
        FormalGroupLaw f(series_.with_trunc(trunc), name_);
        f.warnings_ = warnings_;
        return f;
    }

    friend bool operator==(const FormalGroupLaw &a, const FormalGroupLaw &b) { return a.series_ == b.series_; }

  private:
    Series series_;
    std::string name_;
    std::vector<std::string> warnings_;
};

namespace detail {

template <Coefficient C> TruncSeries<C> xy_var(const typename TruncSeries<C>::Ring &ring, int trunc, int i) {
    return TruncSeries<C>::variable(ring, 2, trunc, i);
}

/// 1/u for a series with constant term 1.
template <Coefficient C> TruncSeries<C> inverse_unit(const TruncSeries<C> &u) {
    auto one = TruncSeries<C>::constant(u.ring(), u.nvars(), u.trunc(), 1);
    if (!(u.constant_term() == one.constant_term()))
        throw Error("inverse_unit expects constant term 1");
    auto h = one - u; // order >= 1
    auto acc = one;
    auto term = one;
    for (int k = 1; k <= u.trunc(); ++k) {
        term *= h;
        if (term.is_zero())
            break;
        acc += term;
    }
    return acc;
}

} // namespace detail

template <Coefficient C> FormalGroupLaw<C> make_additive(const typename TruncSeries<C>::Ring &ring, int trunc) {
    auto x = detail::xy_var<C>(ring, trunc, 0);
    auto y = detail::xy_var<C>(ring, trunc, 1);
    return FormalGroupLaw<C>(x + y, "additive");
}

/// x + y - a x y
template <Coefficient C>
FormalGroupLaw<C> make_multiplicative(const C &a, const typename TruncSeries<C>::Ring &ring, int trunc,
                                      std::string name = {}) {
    auto x = detail::xy_var<C>(ring, trunc, 0);
    auto y = detail::xy_var<C>(ring, trunc, 1);
    if (name.empty())
        name = "multiplicative:a=" + coeff_str(a);
    return FormalGroupLaw<C>(x + y - (x * y).scaled(a), std::move(name));
}

/// (x + y) * sum_i (-beta x y)^i, the expansion of (x + y)/(1 + beta x y).
template <Coefficient C>
FormalGroupLaw<C> make_lorentz(const C &beta, const typename TruncSeries<C>::Ring &ring, int trunc,
                               std::string name = {}) {
    auto x = detail::xy_var<C>(ring, trunc, 0);
    auto y = detail::xy_var<C>(ring, trunc, 1);
    auto step = (x * y).scaled(C(-beta));
    auto geom = TruncSeries<C>::constant(ring, 2, trunc, 1);
    auto power = geom;
    for (int i = 1; 2 * i <= trunc; ++i) {
        power *= step;
        geom += power;
    }
    if (name.empty())
        name = "lorentz:beta=" + coeff_str(beta);
    FormalGroupLaw<C> f((x + y) * geom, std::move(name));
    if (is_zero(beta))
        f.add_warning("lorentz law with beta = 0 degenerates to the additive law");
    return f;
}

enum class BuiltinKind { additive, multiplicative, lorentz };

template <Coefficient C>
FormalGroupLaw<C> make_builtin(BuiltinKind kind, const C &param, const typename TruncSeries<C>::Ring &ring,
                               int trunc) {
    switch (kind) {
    case BuiltinKind::additive:
        return make_additive<C>(ring, trunc);
    case BuiltinKind::multiplicative:
        return make_multiplicative<C>(param, ring, trunc);
    case BuiltinKind::lorentz:
        return make_lorentz<C>(param, ring, trunc);
    }
    throw Error("unknown builtin law");
}

/// Coefficients of a Weierstrass curve w = t^3 + a1 t w + a2 t^2 w + a3 w^2 + a4 t w^2 + a6 w^3.
template <Coefficient C> struct WeierstrassCoefficients {
    C a1, a2, a3, a4, a6;
};

/// Formal group law of a Weierstrass curve in the formal parameter t = -x/y.
///
/// w(t) is found by fixed-point iteration; the law follows from the chord
/// through (t1, w(t1)) and (t2, w(t2)): with slope l and intercept n the
/// third intersection is minus the sum of the other two roots of the cubic,
///   t3 = -t1 - t2 - (a1 l + a2 n + a3 l^2 + 2 a4 l n + 3 a6 l^2 n) / (1 + a2 l + a4 l^2 + a6 l^3)
/// and F(t1, t2) is the negative of that point, i(t) = t / (a1 t + a3 w(t) - 1).
template <Coefficient C>
FormalGroupLaw<C> make_elliptic(const WeierstrassCoefficients<C> &a, const typename TruncSeries<C>::Ring &ring,
                                int trunc, std::string name = {}) {
    if (trunc < 4)
        throw Error("elliptic law needs truncation >= 4");
    using S = TruncSeries<C>;
    // w(t) to one degree more than the law itself: the slope uses w_{D+1}
    const int wt = trunc + 1;
    auto t = S::variable(ring, 1, wt, 0);
    auto t2 = t * t;
    auto t3 = t2 * t;
    S w(ring, 1, wt);
    for (int it = 0; it <= wt; ++it) {
        auto ww = w * w;
        auto next = t3 + (t * w).scaled(a.a1) + (t2 * w).scaled(a.a2) + ww.scaled(a.a3) + (t * ww).scaled(a.a4) +
                    (ww * w).scaled(a.a6);
        if (next == w)
            break;
        w = std::move(next);
    }

    auto x = detail::xy_var<C>(ring, trunc, 0);
    auto y = detail::xy_var<C>(ring, trunc, 1);
    // lambda = sum_n A_n (y^n - x^n)/(y - x)
    S lambda(ring, 2, trunc);
    for (const auto &[m, An] : w.terms()) {
        int n = m[0];
        for (int k = 0; k < n; ++k)
            lambda.add_term(Monomial{k, n - 1 - k}, An);
    }
    auto w_of_x = compose(w.with_trunc(trunc), {x});
    auto nu = w_of_x - lambda * x;
    auto l2 = lambda * lambda;
    auto numer = lambda.scaled(a.a1) + nu.scaled(a.a2) + l2.scaled(a.a3) + (lambda * nu).scaled(a.a4).scaled(2) +
                 (l2 * nu).scaled(a.a6).scaled(3);
    auto denom = S::constant(ring, 2, trunc, 1) + lambda.scaled(a.a2) + l2.scaled(a.a4) + (l2 * lambda).scaled(a.a6);
    auto third = -x - y - numer * detail::inverse_unit(denom);

    // i(t) = -t / (1 - a1 t - a3 w(t))
    auto t1 = S::variable(ring, 1, trunc, 0);
    auto w1 = w.with_trunc(trunc);
    auto inv = (-t1) * detail::inverse_unit(S::constant(ring, 1, trunc, 1) - t1.scaled(a.a1) - w1.scaled(a.a3));
    auto law = compose(inv, {third});
    if (name.empty())
        name = "elliptic:a1=" + coeff_str(a.a1) + ",a2=" + coeff_str(a.a2) + ",a3=" + coeff_str(a.a3) +
               ",a4=" + coeff_str(a.a4) + ",a6=" + coeff_str(a.a6);
    return FormalGroupLaw<C>(std::move(law), std::move(name));
}

/// g^{-1}(F(g(x), g(y))) for a coordinate change g(x) = x + O(x^2).
template <Coefficient C> FormalGroupLaw<C> conjugate(const FormalGroupLaw<C> &f, const TruncSeries<C> &g) {
    if (g.nvars() != 1 || g.trunc() != f.trunc())
        throw Error("conjugate: coordinate change must be a one-variable series at the law's truncation");
    auto ginv = reversion(g);
    auto x = detail::xy_var<C>(f.ring(), f.trunc(), 0);
    auto y = detail::xy_var<C>(f.ring(), f.trunc(), 1);
    auto gx = compose(g, {x});
    auto gy = compose(g, {y});
    auto law = compose(ginv, {f.apply(gx, gy)});
    return FormalGroupLaw<C>(std::move(law), f.name() + "^g");
}

// ---------------------------------------------------------------------------

namespace detail {
template <Coefficient C> std::string first_difference(const TruncSeries<C> &a, const TruncSeries<C> &b) {
    auto diff = a - b;
    if (diff.is_zero())
        return {};
    const auto &[m, c] = *diff.terms().begin();
    static const char *names[] = {"x", "y", "z"};
    std::string mono;
    for (int i = 0; i < diff.nvars(); ++i) {
        int e = m[i];
        if (e == 0)
            continue;
        mono += (i < 3 ? names[i] : "x" + std::to_string(i + 1));
        if (e > 1)
            mono += "^" + std::to_string(e);
    }
    return "degree " + std::to_string(m.degree) + " term " + mono + " differs by " + coeff_str(c);
}
} // namespace detail

/// Unit, commutativity and associativity, each certified up to the law's truncation.
template <Coefficient C> VerificationReport check_axioms(const FormalGroupLaw<C> &f) {
    using S = TruncSeries<C>;
    VerificationReport rep;
    rep.suite = "axioms";
    rep.instance.fgls = {f.name()};
    rep.instance.trunc = f.trunc();
    rep.caveats.push_back("certified to truncation " + std::to_string(f.trunc()));

    const int D = f.trunc();
    auto x = S::variable(f.ring(), 1, D, 0);
    S zero(f.ring(), 1, D);
    auto fx0 = f.apply(x, zero);
    auto f0x = f.apply(zero, x);
    std::string d = detail::first_difference(fx0, x);
    if (d.empty())
        d = detail::first_difference(f0x, x);
    rep.add("unit", d.empty(), d);

    auto X = S::variable(f.ring(), 2, D, 0);
    auto Y = S::variable(f.ring(), 2, D, 1);
    auto fxy = f.apply(X, Y);
    auto fyx = f.apply(Y, X);
    d = detail::first_difference(fxy, fyx);
    rep.add("commutativity", d.empty(), d);

    auto x3 = S::variable(f.ring(), 3, D, 0);
    auto y3 = S::variable(f.ring(), 3, D, 1);
    auto z3 = S::variable(f.ring(), 3, D, 2);
    auto left = f.apply(x3, f.apply(y3, z3));
    auto right = f.apply(f.apply(x3, y3), z3);
    d = detail::first_difference(left, right);
    rep.add("associativity", d.empty(), d);
    return rep;
}

/// The series i(x) with F(x, i(x)) = 0, solved degree by degree.
template <Coefficient C> TruncSeries<C> formal_inverse(const FormalGroupLaw<C> &f) {
    using S = TruncSeries<C>;
    const int D = f.trunc();
    auto x = S::variable(f.ring(), 1, D, 0);
    auto inv = -x;
    for (int k = 2; k <= D; ++k) {
        // adding b x^k to the inverse changes F(x, i) at degree k by exactly b
        C ck = f.apply(x, inv).coeff(Monomial{k});
        if (!is_zero(ck)) {
            S corr(f.ring(), 1, D);
            corr.add_term(Monomial{k}, -ck);
            inv += corr;
        }
    }
    return inv;
}

/// m ._F x; negative m goes through the formal inverse.
template <Coefficient C> TruncSeries<C> n_series(const FormalGroupLaw<C> &f, long m) {
    using S = TruncSeries<C>;
    const int D = f.trunc();
    auto x = S::variable(f.ring(), 1, D, 0);
    if (m == 0)
        return S(f.ring(), 1, D);
    long k = m < 0 ? -m : m;
    auto s = x;
    for (long i = 1; i < k; ++i)
        s = f.apply(x, s);
    if (m < 0)
        return compose(formal_inverse(f), {s});
    return s;
}

/// Left fold of F over the arguments. An empty list gives the zero series in nvars variables.
template <Coefficient C>
TruncSeries<C> formal_sum(const FormalGroupLaw<C> &f, std::span<const TruncSeries<C>> args, int nvars = 1) {
    if (args.empty())
        return TruncSeries<C>(f.ring(), nvars, f.trunc());
    auto acc = args[0];
    if (!is_zero(acc.constant_term()))
        throw Error("substitution requires augmentation-zero argument");
    for (std::size_t i = 1; i < args.size(); ++i) {
        args[i].require_compatible(acc);
        acc = f.apply(acc, args[i]);
    }
    return acc;
}

template <Coefficient C>
TruncSeries<C> formal_sum(const FormalGroupLaw<C> &f, std::initializer_list<TruncSeries<C>> args) {
    std::vector<TruncSeries<C>> v(args);
    return formal_sum(f, std::span<const TruncSeries<C>>(v));
}

/// F == x + y mod 2, up to truncation.
template <Coefficient C> bool is_even(const FormalGroupLaw<C> &f) {
    if constexpr (!coeff_traits<C>::admits_mod2) {
        throw Error("evenness is undefined over a dyadic ring");
    } else {
        for (const auto &[m, c] : f.series().terms())
            if (m[0] >= 1 && m[1] >= 1 && !is_zero(mod2_reduce(c)))
                return false;
        return true;
    }
}

/// Smallest m with a_mm odd (2m <= trunc), if any.
template <Coefficient C> std::optional<int> first_odd_diagonal(const FormalGroupLaw<C> &f) {
    if constexpr (!coeff_traits<C>::admits_mod2) {
        throw Error("parity is undefined over a dyadic ring");
    } else {
        for (int m = 1; 2 * m <= f.trunc(); ++m)
            if (!is_zero(mod2_reduce(f.coeff(m, m))))
                return m;
        return std::nullopt;
    }
}

/// 2 | a_mm for every 1 <= m <= trunc/2.
template <Coefficient C> bool diag_even(const FormalGroupLaw<C> &f) { return !first_odd_diagonal(f).has_value(); }

/// Smallest total degree l with some off-diagonal a_{j,l-j} odd, if any.
template <Coefficient C> std::optional<int> first_odd_off_diagonal_degree(const FormalGroupLaw<C> &f) {
    if constexpr (!coeff_traits<C>::admits_mod2) {
        throw Error("parity is undefined over a dyadic ring");
    } else {
        for (const auto &[m, c] : f.series().terms())
            if (m[0] >= 1 && m[1] >= 1 && m[0] != m[1] && !is_zero(mod2_reduce(c)))
                return static_cast<int>(m.degree);
        return std::nullopt;
    }
}

/// A law given by its coefficient table {(i, j) -> a_ij}. Tables are
/// untrusted input, so the axioms are verified here and failure throws.
inline FormalGroupLaw<Integer> law_from_table(const std::map<std::pair<int, int>, Integer> &table, int trunc,
                                              std::string name) {
    auto x = detail::xy_var<Integer>(IntegerRing{}, trunc, 0);
    auto y = detail::xy_var<Integer>(IntegerRing{}, trunc, 1);
    auto s = x + y;
    for (const auto &[ij, c] : table) {
        if (ij.first < 1 || ij.second < 1)
            throw Error("coefficient table indices must be >= 1");
        s.add_term(Monomial{ij.first, ij.second}, c);
    }
    FormalGroupLaw<Integer> f(std::move(s), std::move(name));
    auto rep = check_axioms(f);
    for (const auto &c : rep.checks)
        if (c.status == Status::fail)
            throw Error("coefficient table fails " + c.name + ": " + c.detail);
    return f;
}

} // namespace fgalab
