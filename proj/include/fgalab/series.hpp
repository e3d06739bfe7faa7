#pragma once
// Sparse multivariate power series truncated above a fixed total degree.

#include "fgalab/exactnum.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace fgalab {

inline constexpr int kMaxVars = 8;
inline constexpr int kMaxTrunc = 250;

/// Exponent vector of a monomial in at most kMaxVars variables.
struct Monomial {
    std::array<std::uint8_t, kMaxVars> exp{};
    std::uint16_t degree = 0;

    Monomial() = default;
    explicit Monomial(std::span<const int> e) {
        if (e.size() > static_cast<std::size_t>(kMaxVars))
            throw Error("too many variables");
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] > 255)
                throw Error("exponent out of range");
            exp[i] = static_cast<std::uint8_t>(e[i]);
            degree = static_cast<std::uint16_t>(degree + e[i]);
        }
    }
    Monomial(std::initializer_list<int> e)
        : Monomial(std::span<const int>(e.begin(), e.size())) {}

    static Monomial variable(int i) {
        Monomial m;
        m.exp[static_cast<std::size_t>(i)] = 1;
        m.degree = 1;
        return m;
    }

    int operator[](int i) const { return exp[static_cast<std::size_t>(i)]; }

    friend Monomial operator*(const Monomial &a, const Monomial &b) {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i)
            r.exp[i] = static_cast<std::uint8_t>(a.exp[i] + b.exp[i]);
        r.degree = static_cast<std::uint16_t>(a.degree + b.degree);
        return r;
    }

    friend bool operator==(const Monomial &a, const Monomial &b) { return a.exp == b.exp; }

    std::vector<int> exponents(int nvars) const {
        return std::vector<int>(exp.begin(), exp.begin() + nvars);
    }
};

/// Graded lexicographic order: lower total degree first, then within a
/// degree x_1^k before x_2^k (lexicographically larger exponent first).
struct GrlexLess {
    bool operator()(const Monomial &a, const Monomial &b) const {
        if (a.degree != b.degree)
            return a.degree < b.degree;
        return a.exp > b.exp;
    }
};

/// All monomials of total degree d in n variables, in graded-lex order.
inline std::vector<Monomial> monomials_of_degree(int nvars, int d) {
    std::vector<Monomial> out;
    std::vector<int> e(static_cast<std::size_t>(nvars), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == nvars - 1) {
            e[static_cast<std::size_t>(pos)] = left;
            out.emplace_back(std::span<const int>(e));
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[static_cast<std::size_t>(pos)] = k;
            rec(pos + 1, left - k);
        }
    };
    if (nvars == 0) {
        if (d == 0)
            out.emplace_back();
        return out;
    }
    rec(0, d);
    return out;
}

template <Coefficient C> class TruncSeries {
  public:
    using traits = coeff_traits<C>;
    using Ring = typename traits::ring_type;
    using TermMap = std::map<Monomial, C, GrlexLess>;

    TruncSeries(Ring ring, int nvars, int trunc) : ring_(std::move(ring)), nvars_(nvars), trunc_(trunc) {
        if (nvars < 1 || nvars > kMaxVars)
            throw Error("series needs between 1 and " + std::to_string(kMaxVars) + " variables");
        if (trunc < 0 || trunc > kMaxTrunc)
            throw Error("truncation degree out of range");
    }

    static TruncSeries constant(Ring ring, int nvars, int trunc, const C &c) {
        TruncSeries s(std::move(ring), nvars, trunc);
        s.add_term(Monomial{}, c);
        return s;
    }
    static TruncSeries constant(Ring ring, int nvars, int trunc, long c) {
        TruncSeries s(ring, nvars, trunc);
        s.add_term(Monomial{}, traits::from_int(ring, Integer(c)));
        return s;
    }
    /// The variable x_{i+1} (zero-based index i).
    static TruncSeries variable(Ring ring, int nvars, int trunc, int i) {
        if (i < 0 || i >= nvars)
            throw Error("variable index out of range");
        TruncSeries s(ring, nvars, trunc);
        s.add_term(Monomial::variable(i), traits::from_int(ring, Integer(1)));
        return s;
    }

    const Ring &ring() const { return ring_; }
    int nvars() const { return nvars_; }
    int trunc() const { return trunc_; }
    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    C zero_coeff() const { return traits::from_int(ring_, Integer(0)); }
    C coeff(const Monomial &m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? zero_coeff() : it->second;
    }
    C constant_term() const { return coeff(Monomial{}); }

    /// Lowest degree carrying a nonzero term, or -1 for the zero series.
    int order() const { return terms_.empty() ? -1 : terms_.begin()->first.degree; }

    void add_term(const Monomial &m, const C &c) {
        if (m.degree > trunc_ || fgalab::is_zero(c))
            return;
        for (int i = nvars_; i < kMaxVars; ++i)
            if (m.exp[static_cast<std::size_t>(i)] != 0)
                throw Error("monomial uses a variable outside the series");
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (fgalab::is_zero(it->second))
                terms_.erase(it);
        }
    }

    bool compatible(const TruncSeries &o) const {
        return nvars_ == o.nvars_ && trunc_ == o.trunc_ && traits::same_ring(ring_, o.ring_);
    }
    void require_compatible(const TruncSeries &o) const {
        if (!compatible(o))
            throw Error("incompatible series operands (variables, truncation or ring differ)");
    }

    TruncSeries &operator+=(const TruncSeries &o) {
        require_compatible(o);
        for (const auto &[m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }
    TruncSeries &operator-=(const TruncSeries &o) {
        require_compatible(o);
        for (const auto &[m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }
    friend TruncSeries operator+(TruncSeries a, const TruncSeries &b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries &b) { return a -= b; }
    friend TruncSeries operator-(const TruncSeries &a) {
        TruncSeries r(a.ring_, a.nvars_, a.trunc_);
        for (const auto &[m, c] : a.terms_)
            r.terms_.emplace_hint(r.terms_.end(), m, -c);
        return r;
    }

    TruncSeries scaled(const C &k) const {
        TruncSeries r(ring_, nvars_, trunc_);
        if (fgalab::is_zero(k))
            return r;
        for (const auto &[m, c] : terms_) {
            C v = c * k;
            if (!fgalab::is_zero(v))
                r.terms_.emplace_hint(r.terms_.end(), m, std::move(v));
        }
        return r;
    }
    TruncSeries scaled(long k) const { return scaled(traits::from_int(ring_, Integer(k))); }

    friend TruncSeries operator*(const TruncSeries &a, const TruncSeries &b) { return mul(a, b); }
    TruncSeries &operator*=(const TruncSeries &o) { return *this = mul(*this, o); }

    friend bool operator==(const TruncSeries &a, const TruncSeries &b) {
        return a.compatible(b) && a.terms_ == b.terms_;
    }

    /// Same series viewed with a different truncation (terms above it drop).
    TruncSeries with_trunc(int trunc) const {
        TruncSeries r(ring_, nvars_, trunc);
        for (const auto &[m, c] : terms_) {
            if (m.degree > trunc)
                break;
            r.terms_.emplace_hint(r.terms_.end(), m, c);
        }
        return r;
    }

    /// Same coefficients in a larger variable set (variables keep their index).
    TruncSeries with_nvars(int nvars) const {
        if (nvars < nvars_)
            throw Error("cannot drop variables");
        TruncSeries r(ring_, nvars, trunc_);
        r.terms_ = terms_;
        return r;
    }

    template <class F> auto map_coefficients(F &&f) const {
        using D = std::decay_t<decltype(f(std::declval<const C &>()))>;
        using DR = typename coeff_traits<D>::ring_type;
        DR ring;
        if constexpr (std::is_same_v<DR, Ring>)
            ring = ring_;
        TruncSeries<D> r(ring, nvars_, trunc_);
        for (const auto &[m, c] : terms_)
            r.add_term(m, f(c));
        return r;
    }

    std::string str() const {
        if (terms_.empty())
            return "0";
        std::string s;
        bool first = true;
        for (const auto &[m, c] : terms_) {
            if (!first)
                s += " + ";
            first = false;
            s += "(" + coeff_str(c) + ")";
            for (int i = 0; i < nvars_; ++i) {
                int e = m[i];
                if (e == 0)
                    continue;
                s += "*x" + std::to_string(i + 1);
                if (e > 1)
                    s += "^" + std::to_string(e);
            }
        }
        return s;
    }

  private:
    static TruncSeries mul(const TruncSeries &a, const TruncSeries &b) {
        a.require_compatible(b);
        TruncSeries r(a.ring_, a.nvars_, a.trunc_);
        for (const auto &[ma, ca] : a.terms_) {
            int room = a.trunc_ - ma.degree;
            if (room < 0)
                break;
            for (const auto &[mb, cb] : b.terms_) {
                if (mb.degree > room)
                    break;
                Monomial m = ma * mb;
                auto [it, inserted] = r.terms_.try_emplace(m, ca * cb);
                if (!inserted)
                    it->second += ca * cb;
            }
        }
        for (auto it = r.terms_.begin(); it != r.terms_.end();)
            it = fgalab::is_zero(it->second) ? r.terms_.erase(it) : std::next(it);
        return r;
    }

    Ring ring_;
    int nvars_;
    int trunc_;
    TermMap terms_;
};

template <Coefficient C> TruncSeries<C> pow(const TruncSeries<C> &base, unsigned e) {
    auto r = TruncSeries<C>::constant(base.ring(), base.nvars(), base.trunc(), 1);
    auto b = base;
    while (e > 0) {
        if (e & 1u)
            r *= b;
        e >>= 1u;
        if (e > 0)
            b *= b;
    }
    return r;
}

template <Coefficient C> TruncSeries<C> homogeneous_component(const TruncSeries<C> &f, int d) {
    if (d < 0 || d > f.trunc())
        throw Error("beyond truncation");
    TruncSeries<C> r(f.ring(), f.nvars(), f.trunc());
    for (const auto &[m, c] : f.terms())
        if (m.degree == d)
            r.add_term(m, c);
    return r;
}

/// Substitute args[i] for the i-th variable of f. Every argument must have
/// zero constant term; products are truncated at the arguments' truncation.
template <Coefficient C>
TruncSeries<C> compose(const TruncSeries<C> &f, std::span<const TruncSeries<C>> args) {
    if (args.size() != static_cast<std::size_t>(f.nvars()))
        throw Error("compose: expected " + std::to_string(f.nvars()) + " arguments");
    if (args.empty())
        throw Error("compose: no arguments");
    for (const auto &a : args) {
        a.require_compatible(args[0]);
        if (!is_zero(a.constant_term()))
            throw Error("substitution requires augmentation-zero argument");
    }
    if (!coeff_traits<C>::same_ring(f.ring(), args[0].ring()))
        throw Error("compose: ring mismatch");
    const auto &proto = args[0];
    const int k = f.nvars();

    // Horner in the first variable, recursing on the rest.
    using TermPtr = const std::pair<const Monomial, C> *;
    std::function<TruncSeries<C>(int, const std::vector<TermPtr> &)> eval =
        [&](int var, const std::vector<TermPtr> &terms) {
            TruncSeries<C> out(proto.ring(), proto.nvars(), proto.trunc());
            if (var == k) {
                for (auto *t : terms)
                    out.add_term(Monomial{}, t->second);
                return out;
            }
            std::map<int, std::vector<TermPtr>> groups;
            for (auto *t : terms)
                groups[t->first[var]].push_back(t);
            const auto &arg = args[static_cast<std::size_t>(var)];
            for (int e = groups.rbegin()->first; e >= 0; --e) {
                if (auto g = groups.find(e); g != groups.end())
                    out += eval(var + 1, g->second);
                if (e > 0 && !out.is_zero())
                    out *= arg;
            }
            return out;
        };
    if (f.is_zero())
        return TruncSeries<C>(proto.ring(), proto.nvars(), proto.trunc());
    std::vector<TermPtr> all;
    for (const auto &t : f.terms())
        all.push_back(&t);
    return eval(0, all);
}

template <Coefficient C>
TruncSeries<C> compose(const TruncSeries<C> &f, std::initializer_list<TruncSeries<C>> args) {
    std::vector<TruncSeries<C>> v(args);
    return compose(f, std::span<const TruncSeries<C>>(v));
}

/// gcd of every integer coefficient (across parameter monomials); 0 for zero.
template <Coefficient C> Integer content_gcd(const TruncSeries<C> &f) {
    if constexpr (std::is_same_v<C, Dyadic>) {
        throw Error("content of a dyadic series is undefined");
    } else {
        Integer g = 0;
        for (const auto &[m, c] : f.terms())
            g = gcd(g, content(c));
        return g;
    }
}

template <Coefficient C> TruncSeries<C> mod2_reduce(const TruncSeries<C> &f) {
    if constexpr (!coeff_traits<C>::admits_mod2)
        throw Error("cannot reduce dyadic mod 2");
    else
        return f.map_coefficients([](const C &c) { return mod2_reduce(c); });
}

/// f / m when m divides every coefficient.
template <Coefficient C>
std::optional<TruncSeries<C>> exact_div_int(const TruncSeries<C> &f, const Integer &m) {
    if (m == 0)
        throw Error("division by zero");
    TruncSeries<C> r(f.ring(), f.nvars(), f.trunc());
    for (const auto &[mono, c] : f.terms()) {
        auto q = exact_div_int(c, m);
        if (!q)
            return std::nullopt;
        r.add_term(mono, *q);
    }
    return r;
}

/// Elementary symmetric polynomial e_r of the given series.
template <Coefficient C>
TruncSeries<C> elementary_symmetric(std::span<const TruncSeries<C>> vars, int r) {
    if (vars.empty())
        throw Error("elementary_symmetric needs at least one series");
    const int k = static_cast<int>(vars.size());
    if (r < 0 || r > k)
        throw Error("elementary_symmetric: r out of range");
    const auto &p = vars[0];
    // e_j of the first i inputs, built column by column
    std::vector<TruncSeries<C>> e;
    e.push_back(TruncSeries<C>::constant(p.ring(), p.nvars(), p.trunc(), 1));
    for (int j = 1; j <= r; ++j)
        e.emplace_back(p.ring(), p.nvars(), p.trunc());
    for (int i = 0; i < k; ++i) {
        vars[static_cast<std::size_t>(i)].require_compatible(p);
        for (int j = std::min(r, i + 1); j >= 1; --j)
            e[static_cast<std::size_t>(j)] += e[static_cast<std::size_t>(j - 1)] * vars[static_cast<std::size_t>(i)];
    }
    return e[static_cast<std::size_t>(r)];
}

/// Compositional inverse of a one-variable series f = u*x + ... with u = +-1.
template <Coefficient C> TruncSeries<C> reversion(const TruncSeries<C> &f) {
    using traits = coeff_traits<C>;
    if (f.nvars() != 1)
        throw Error("reversion needs a one-variable series");
    if (!is_zero(f.constant_term()))
        throw Error("reversion requires augmentation-zero argument");
    const C lead = f.coeff(Monomial{1});
    const C one = traits::from_int(f.ring(), Integer(1));
    const C minus_one = traits::from_int(f.ring(), Integer(-1));
    if (!(lead == one || lead == minus_one))
        throw Error("reversion requires a unit linear coefficient");
    auto x = TruncSeries<C>::variable(f.ring(), 1, f.trunc(), 0);
    auto g = x.scaled(lead); // lead^{-1} = lead
    for (int k = 2; k <= f.trunc(); ++k) {
        auto fg = compose(f, {g});
        C ck = fg.coeff(Monomial{k});
        if (!is_zero(ck)) {
            TruncSeries<C> corr(f.ring(), 1, f.trunc());
            corr.add_term(Monomial{k}, -(ck * lead));
            g += corr;
        }
    }
    return g;
}

/// Terms in graded-lex order, coefficients as canonical strings.
template <Coefficient C> nlohmann::json to_json(const TruncSeries<C> &f) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &[m, c] : f.terms())
        terms.push_back({{"exp", m.exponents(f.nvars())}, {"coeff", coeff_str(c)}});
    return {{"vars", f.nvars()}, {"trunc", f.trunc()}, {"terms", std::move(terms)}};
}

inline TruncSeries<Integer> series_from_json(const nlohmann::json &j) {
    TruncSeries<Integer> f(IntegerRing{}, j.at("vars").get<int>(), j.at("trunc").get<int>());
    for (const auto &t : j.at("terms")) {
        auto e = t.at("exp").get<std::vector<int>>();
        if (static_cast<int>(e.size()) != f.nvars())
            throw Error("series JSON: exponent length mismatch");
        f.add_term(Monomial(std::span<const int>(e)), Integer(t.at("coeff").get<std::string>()));
    }
    return f;
}

} // namespace fgalab
