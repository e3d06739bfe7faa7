#pragma once
// Lattice-level checks of the divisibility statements relating invariants,
// the ideal they generate, the theta spans and the kernel model.

#include "fgalab/fga.hpp"
#include "fgalab/lattice.hpp"
#include "fgalab/report.hpp"

#include <string>

namespace fgalab {

inline const char *kKernelModelCaveat =
    "kernel model: 2-saturation of the theta span, standing in for the kernel of the characteristic map";

template <Coefficient C> Instance make_instance(const ContextPtr<C> &ctx, int d) {
    const auto &rs = ctx->root_system();
    return {std::string(1, family_char(rs.family())), rs.rank(), d, {ctx->law().name()}, ctx->trunc()};
}

template <Coefficient C> void add_truncation_caveat(VerificationReport &rep, const ContextPtr<C> &ctx) {
    if (is_additive(ctx->law()))
        rep.caveats.push_back("exact: the additive law acts by degree-preserving substitutions");
    else
        rep.caveats.push_back("certified to truncation " + std::to_string(ctx->trunc()));
}

inline std::string multiplier_text(const ExponentReport &e) {
    std::string s = "multiplier " + (e.tau ? e.tau->get_str() : std::string("infinite"));
    if (e.bound)
        s += ", bound " + e.bound->get_str();
    return s;
}

inline bool divides(const ExponentReport &e, const Integer &bound) { return e.tau && divisible(bound, *e.tau); }

/// Lattice of leading forms sum g_i lead(Theta_i)/r_i; always integral.
inline IntLattice theta_span_leading_divided(const ContextPtr<Integer> &ctx, int d) {
    require_degree(ctx, d);
    const auto &rs = ctx->root_system();
    MonomialIndex idx(ctx->rank(), d, d);
    Matrix gens = Matrix::empty(idx.size());
    for (int i = 1; i <= rs.rank(); ++i) {
        const int deg = theta_degree(rs, i);
        if (deg > d)
            continue;
        auto lead = exact_div_int(theta_leading_form(ctx, i, false), r_index(rs, i));
        if (!lead)
            throw Error("leading form of Theta_" + std::to_string(i) + " is not divisible by r_" + std::to_string(i));
        for (const auto &m : monomials_of_degree(ctx->rank(), d - deg)) {
            IntVec v(idx.size(), 0);
            for (const auto &[u, c] : lead->terms())
                v[idx.position(u * m)] = c;
            gens.push_row(std::move(v));
        }
    }
    return IntLattice(idx.size(), gens, graded_label(d));
}

/// iota(x) = x + a_ss x^{2s} mod 2 through degree 2s, s the first odd diagonal
/// coefficient; iota(x) = x mod 2 when there is none.
template <Coefficient C> VerificationReport inverse_parity_check(const FormalGroupLaw<C> &f) {
    VerificationReport rep;
    rep.suite = "inverse_parity";
    rep.instance = {"", 0, 0, {f.name()}, f.trunc()};
    rep.caveats.push_back("certified to truncation " + std::to_string(f.trunc()));
    auto iota = formal_inverse(f);
    auto x = TruncSeries<C>::variable(f.ring(), 1, f.trunc(), 0);
    auto diff = iota - x;
    auto s = first_odd_diagonal(f);
    int top = f.trunc();
    if (s) {
        top = 2 * *s;
        diff.add_term(Monomial{top}, C(-f.coeff(*s, *s)));
        rep.computed["s"] = *s;
    }
    rep.computed["inverse"] = to_json(iota);
    std::optional<Monomial> bad;
    const auto reduced = mod2_reduce(diff);
    for (const auto &[m, c] : reduced.terms())
        if (static_cast<int>(m.degree) <= top && !is_zero(c)) {
            bad = m;
            break;
        }
    std::string claim = s ? "inverse is x + a_ss x^(2s) mod 2 through degree 2s" : "inverse is x mod 2";
    rep.add(claim, !bad, bad ? "odd difference at degree " + std::to_string(bad->degree) : std::string{});
    return rep;
}

/// Theta_d / 2 integral iff F even (d a power of 2 in range); on type D with
/// d = n, Theta_n / 2^n integral iff every a_mm is even.
template <Coefficient C> VerificationReport theta_parity_check(const ContextPtr<C> &ctx, int d) {
    const auto &rs = ctx->root_system();
    const int n = rs.rank();
    VerificationReport rep;
    rep.suite = "theta_parity";
    rep.instance = make_instance(ctx, d);
    rep.caveats.push_back("certified to truncation " + std::to_string(ctx->trunc()));
    if (d < 1)
        throw Error("theta index must be positive");
    if (d > n) {
        rep.add_not_applicable("theta_d/2 integral iff law even", "no theta_d beyond the rank " + std::to_string(n));
        return rep;
    }
    if (rs.family() == Family::D && d == n) {
        const bool div = theta_div2n(ctx), diag = diag_even(ctx->law());
        rep.computed["theta_div2n"] = div;
        rep.computed["diag_even"] = diag;
        rep.add("theta_n/2^n integral iff all a_mm even", div == diag,
                std::string("theta_n/2^n ") + (div ? "integral" : "not integral") + ", a_mm " +
                    (diag ? "all even" : "not all even"));
        return rep;
    }
    const bool div = theta_div2(ctx, d), even = is_even(ctx->law());
    rep.computed["theta_div2"] = div;
    rep.computed["even"] = even;
    const int limit = rs.family() == Family::B ? n : n - 1;
    std::string detail = std::string("theta_d/2 ") + (div ? "integral" : "not integral") + ", law " +
                         (even ? "even" : "not even");
    if (!is_power_of_two(d) || d > limit)
        rep.add_not_applicable("theta_d/2 integral iff law even",
                               "d must be a power of 2 with d <= " + std::to_string(limit) + "; " + detail);
    else
        rep.add("theta_d/2 integral iff law even", div == even, detail);
    return rep;
}

/// e = multiplier of the kernel model into the ideal lattice, against eta_d
/// and the sharper low-degree bounds.
inline VerificationReport eta_bound_check(const ContextPtr<Integer> &ctx, int d) {
    const auto &rs = ctx->root_system();
    VerificationReport rep;
    rep.suite = "eta_bound";
    rep.instance = make_instance(ctx, d);
    add_truncation_caveat(rep, ctx);
    rep.caveats.push_back(kKernelModelCaveat);

    const Integer eta_d = eta(rs, d);
    const bool even = is_even(ctx->law());
    auto kernel = kernel_model(ctx, d);
    auto ideal = ideal_graded_lattice(ctx, d);
    auto e = inclusion_multiplier(kernel, ideal, eta_d, ctx->trunc());
    rep.computed["e"] = to_json(e);
    rep.computed["kernel_model"] = to_json(kernel);
    rep.computed["ideal"] = to_json(ideal);
    rep.bound = int_json(eta_d);

    const bool inside = kernel.contains(ideal);
    rep.computed["ideal_inside_kernel_model"] = inside;
    if (!inside)
        rep.caveats.push_back("the ideal is not inside the kernel model in this degree: the theta span has odd index");
    rep.add("e divides eta_d", divides(e, eta_d), multiplier_text(e));
    if (d == 2 || d == 3) {
        rep.add("e divides 2", divides(e, 2), multiplier_text(e));
        if (even)
            rep.add("e equals 1 for an even law", e.tau && *e.tau == 1, multiplier_text(e));
    } else if (d == 4) {
        if (rs.family() == Family::B || rs.rank() >= 5) {
            rep.add("e divides 4", divides(e, 4), multiplier_text(e));
            if (even)
                rep.add("e divides 2 for an even law", divides(e, 2), multiplier_text(e));
        } else {
            rep.add_not_applicable("e divides 4",
                                   "the degree-4 bound is stated for type B and for type D of rank >= 5; " +
                                       multiplier_text(e));
        }
    }
    return rep;
}

/// Multipliers from the invariant and ideal lattices into the theta spans.
inline VerificationReport zeta_bound_check(const ContextPtr<Integer> &ctx, int d) {
    const auto &rs = ctx->root_system();
    VerificationReport rep;
    rep.suite = "zeta_bound";
    rep.instance = make_instance(ctx, d);
    add_truncation_caveat(rep, ctx);

    const Integer z = zeta(rs, d);
    const bool even = is_even(ctx->law());
    rep.bound = int_json(z);

    auto inv = invariant_graded_lattice(ctx, d);
    auto prod = theta_product_lattice(ctx, d, false);
    auto m1 = inclusion_multiplier(inv, prod, z, ctx->trunc());
    rep.computed["invariant"] = to_json(inv);
    rep.computed["invariant_to_theta_products"] = to_json(m1);
    rep.add("zeta_d kills invariants modulo theta products", divides(m1, z), multiplier_text(m1));
    rep.add("theta products are invariants", inv.contains(prod));

    auto ideal = ideal_graded_lattice(ctx, d);
    auto span = theta_span_lattice(ctx, d, false);
    auto m2 = inclusion_multiplier(ideal, span, z, ctx->trunc());
    rep.computed["ideal"] = to_json(ideal);
    rep.computed["ideal_to_theta_span"] = to_json(m2);
    rep.add("zeta_d kills the ideal modulo the theta span", divides(m2, z), multiplier_text(m2));
    rep.add("theta span lies in the ideal", ideal.contains(span));

    auto prod_r = theta_product_lattice(ctx, d, true);
    if (inv.is_zero() && prod_r.is_zero()) {
        rep.add_not_applicable("invariants equal divided theta products iff even",
                               "no invariants in this degree, so the equality carries no information");
    } else {
        bool eq = inv == prod_r;
        rep.add("invariants equal divided theta products iff even", eq == even,
                std::string("equality ") + (eq ? "holds" : "fails") + ", law is " + (even ? "even" : "not even"));
    }
    auto span_r = theta_span_leading_divided(ctx, d);
    if (ideal.is_zero() && span_r.is_zero()) {
        rep.add_not_applicable("ideal equals divided theta span iff even", "ideal is zero in this degree");
    } else {
        bool eq = ideal == span_r;
        rep.add("ideal equals divided theta span iff even", eq == even,
                std::string("equality ") + (eq ? "holds" : "fails") + ", law is " + (even ? "even" : "not even"));
    }
    return rep;
}

/// Replays the annihilator argument: kernel model -> theta span -> additive ideal.
inline VerificationReport annihilator_check(const ContextPtr<Integer> &ctx, int d) {
    const auto &rs = ctx->root_system();
    VerificationReport rep;
    rep.suite = "annihilator";
    rep.instance = make_instance(ctx, d);
    add_truncation_caveat(rep, ctx);
    rep.caveats.push_back(kKernelModelCaveat);

    auto additive = make_context(rs, make_additive<Integer>(IntegerRing{}, ctx->trunc()));
    const Integer z = zeta(rs, d), h = eta(rs, d);
    const bool even = is_even(ctx->law());
    const Integer bound = even ? h : Integer(z * h);
    rep.bound = {{"zeta_eta", int_json(z * h)}, {"eta", int_json(h)}, {"zeta2_eta2", int_json(z * z * h * h)}};

    auto kernel = kernel_model(ctx, d);
    auto span = theta_span_lattice(ctx, d, false);
    auto to_span = inclusion_multiplier(kernel, span, Integer(z * h), ctx->trunc());
    rep.computed["kernel_to_theta_span"] = to_json(to_span);
    rep.add("zeta_d eta_d kernel model lies in theta span", divides(to_span, z * h), multiplier_text(to_span));

    auto ideal_a = ideal_graded_lattice(additive, d);
    auto composite = inclusion_multiplier(kernel, ideal_a, bound, ctx->trunc());
    rep.computed["kernel_to_additive_ideal"] = to_json(composite);
    rep.add(even ? "composite multiplier divides eta_d" : "composite multiplier divides zeta_d eta_d",
            divides(composite, bound), multiplier_text(composite));

    auto ideal_f = ideal_graded_lattice(ctx, d);
    auto back = inclusion_multiplier(kernel, ideal_f, Integer(z * z * h * h), ctx->trunc());
    rep.computed["kernel_to_ideal"] = to_json(back);
    rep.add("zeta_d^2 eta_d^2 kernel model lies in the ideal", divides(back, z * z * h * h), multiplier_text(back));

    if (even && (d == 2 || d == 3)) {
        rep.add("kernel model agrees with the additive law", kernel == kernel_model(additive, d));
        rep.add("ideal agrees with the additive law", ideal_f == ideal_a);
    }
    return rep;
}

/// Bound for tau^{from -> to}: 2 for x+y-xy to the additive law in the
/// stated range, 1 between even laws, zeta_d in general.
inline Integer tau_bound(const RootSystem &rs, int d, const FormalGroupLaw<Integer> &from,
                         const FormalGroupLaw<Integer> &to) {
    const int n = rs.rank();
    const int top = rs.family() == Family::B ? 2 * n - 1 : 2 * n - 3;
    bool from_m = from.series() == make_multiplicative<Integer>(Integer(1), from.ring(), from.trunc()).series();
    if (from_m && is_additive(to) && d <= top)
        return 2;
    if (is_even(from) && is_even(to))
        return 1;
    return zeta(rs, d);
}

/// Least tau with tau * ideal(to) inside ideal(from) in common coordinates.
inline ExponentReport deformation_exponent(const ContextPtr<Integer> &from, const ContextPtr<Integer> &to, int d) {
    if (!(from->root_system() == to->root_system()) || from->trunc() != to->trunc())
        throw Error("deformation exponent needs two laws on the same root system and truncation");
    return inclusion_multiplier(ideal_graded_lattice(to, d), ideal_graded_lattice(from, d),
                                tau_bound(from->root_system(), d, from->law(), to->law()), from->trunc());
}

inline VerificationReport tau_check(const ContextPtr<Integer> &from, const ContextPtr<Integer> &to, int d) {
    VerificationReport rep;
    rep.suite = "tau";
    rep.instance = make_instance(from, d);
    rep.instance.fgls.push_back(to->law().name());
    add_truncation_caveat(rep, from);
    auto e = deformation_exponent(from, to, d);
    rep.computed["exponent"] = to_json(e);
    rep.bound = int_json(*e.bound);
    rep.add("tau divides bound", e.divides_bound(), multiplier_text(e));
    return rep;
}

/// Multiplier from the kernel model at x+y-xy into the ideal lattice of F, against zeta_d.
inline VerificationReport multiplicative_comparison_check(const ContextPtr<Integer> &ctx, int d) {
    const auto &rs = ctx->root_system();
    VerificationReport rep;
    rep.suite = "multiplicative_comparison";
    rep.instance = make_instance(ctx, d);
    rep.instance.fgls.insert(rep.instance.fgls.begin(), "multiplicative:a=1");
    add_truncation_caveat(rep, ctx);
    rep.caveats.push_back(kKernelModelCaveat);

    auto fm = make_context(rs, make_multiplicative<Integer>(Integer(1), IntegerRing{}, ctx->trunc()));
    const Integer z = zeta(rs, d);
    rep.bound = int_json(z);
    auto kernel = kernel_model(fm, d);
    auto ideal = ideal_graded_lattice(ctx, d);
    auto m = inclusion_multiplier(kernel, ideal, z, ctx->trunc());
    rep.computed["kernel_to_ideal"] = to_json(m);
    rep.add("multiplier divides zeta_d", divides(m, z), multiplier_text(m));

    // for x+y-xy the kernel of the characteristic map is the invariant ideal itself
    auto ideal_m = ideal_graded_lattice(fm, d);
    auto mi = inclusion_multiplier(ideal_m, ideal, z, ctx->trunc());
    rep.computed["ideal_to_ideal"] = to_json(mi);
    rep.add("ideal multiplier divides zeta_d", divides(mi, z), multiplier_text(mi));
    return rep;
}

} // namespace fgalab
