#pragma once
// Exact coefficient arithmetic: big integers, dyadic rationals (the ring
// Z[1/2]) and integer polynomials in named parameters.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace fgalab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline std::string to_string(const Integer &z) { return z.get_str(); }

/// Largest e with 2^e | n.
inline unsigned two_adic_valuation(const Integer &n) {
    if (n == 0)
        throw Error("valuation of zero undefined");
    return static_cast<unsigned>(mpz_scan1(n.get_mpz_t(), 0));
}

inline unsigned two_adic_valuation(long n) { return two_adic_valuation(Integer(n)); }

inline Integer pow2(unsigned e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

inline Integer gcd(const Integer &a, const Integer &b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm(const Integer &a, const Integer &b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Integer factorial(unsigned n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// floor division and matching nonnegative remainder for positive divisors
inline Integer floor_div(const Integer &a, const Integer &b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline bool divisible(const Integer &a, const Integer &m) {
    return mpz_divisible_p(a.get_mpz_t(), m.get_mpz_t()) != 0;
}

// ---------------------------------------------------------------------------
// Dyadic rationals

/// An element of Z[1/2], stored as numerator / 2^exponent in lowest terms:
/// either the exponent is zero or the numerator is odd.
class Dyadic {
  public:
    Dyadic() = default;
    Dyadic(long n) : num_(n) {}
    Dyadic(Integer n) : num_(std::move(n)) {}
    Dyadic(Integer num, unsigned exp) : num_(std::move(num)), exp_(exp) { normalize(); }

    const Integer &numerator() const { return num_; }
    unsigned exponent() const { return exp_; }
    bool is_zero() const { return num_ == 0; }
    bool is_integral() const { return exp_ == 0; }

    /// 1/2^e
    static Dyadic inverse_pow2(unsigned e) { return Dyadic(Integer(1), e); }

    friend Dyadic operator+(const Dyadic &a, const Dyadic &b) {
        unsigned e = std::max(a.exp_, b.exp_);
        Integer n = a.num_ * pow2(e - a.exp_) + b.num_ * pow2(e - b.exp_);
        return Dyadic(std::move(n), e);
    }
    friend Dyadic operator-(const Dyadic &a) {
        Dyadic r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend Dyadic operator-(const Dyadic &a, const Dyadic &b) { return a + (-b); }
    friend Dyadic operator*(const Dyadic &a, const Dyadic &b) {
        return Dyadic(Integer(a.num_ * b.num_), a.exp_ + b.exp_);
    }
    Dyadic &operator+=(const Dyadic &o) { return *this = *this + o; }
    Dyadic &operator-=(const Dyadic &o) { return *this = *this - o; }
    Dyadic &operator*=(const Dyadic &o) { return *this = *this * o; }
    friend bool operator==(const Dyadic &a, const Dyadic &b) {
        return a.exp_ == b.exp_ && a.num_ == b.num_;
    }

    std::string str() const {
        if (exp_ == 0)
            return num_.get_str();
        return num_.get_str() + "/" + pow2(exp_).get_str();
    }

  private:
    void normalize() {
        if (num_ == 0) {
            exp_ = 0;
            return;
        }
        unsigned v = std::min(exp_, two_adic_valuation(num_));
        if (v > 0) {
            mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), v);
            exp_ -= v;
        }
    }

    Integer num_ = 0;
    unsigned exp_ = 0;
};

// ---------------------------------------------------------------------------
// Parameter polynomials

/// The ring Z[p_1, ..., p_k] with named parameters. Identity of the ring is
/// the list of names; values from rings with different names never mix.
class ParamRing {
  public:
    explicit ParamRing(std::vector<std::string> names) : names_(std::move(names)) {
        std::set<std::string> seen;
        for (const auto &n : names_) {
            if (n.empty())
                throw Error("parameter names must be nonempty");
            if (!seen.insert(n).second)
                throw Error("duplicate parameter name '" + n + "'");
        }
    }
    const std::vector<std::string> &names() const { return names_; }
    std::size_t size() const { return names_.size(); }
    std::size_t index_of(const std::string &name) const {
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end())
            throw Error("unknown parameter '" + name + "'");
        return static_cast<std::size_t>(it - names_.begin());
    }
    friend bool operator==(const ParamRing &a, const ParamRing &b) { return a.names_ == b.names_; }

  private:
    std::vector<std::string> names_;
};

using ParamRingPtr = std::shared_ptr<const ParamRing>;

inline ParamRingPtr make_param_ring(std::vector<std::string> names) {
    return std::make_shared<const ParamRing>(std::move(names));
}

inline bool same_param_ring(const ParamRingPtr &a, const ParamRingPtr &b) {
    return a == b || (a && b && *a == *b);
}

namespace detail {
// graded lexicographic: total degree first, then lexicographic on exponents
struct ParamMonomialLess {
    bool operator()(const std::vector<unsigned> &a, const std::vector<unsigned> &b) const {
        unsigned da = 0, db = 0;
        for (unsigned e : a)
            da += e;
        for (unsigned e : b)
            db += e;
        if (da != db)
            return da < db;
        return a > b;
    }
};
} // namespace detail

/// Integer polynomial in the parameters of a ParamRing. Zero terms are never
/// stored, so structural equality is mathematical equality.
class ParamPoly {
  public:
    using Exponents = std::vector<unsigned>;
    using TermMap = std::map<Exponents, Integer, detail::ParamMonomialLess>;

    ParamPoly() = default;
    explicit ParamPoly(ParamRingPtr ring) : ring_(std::move(ring)) { require_ring(); }
    ParamPoly(ParamRingPtr ring, const Integer &c) : ring_(std::move(ring)) {
        require_ring();
        if (c != 0)
            terms_.emplace(Exponents(ring_->size(), 0), c);
    }

    static ParamPoly variable(const ParamRingPtr &ring, const std::string &name) {
        ParamPoly p(ring);
        Exponents e(ring->size(), 0);
        e[ring->index_of(name)] = 1;
        p.terms_.emplace(std::move(e), Integer(1));
        return p;
    }

    const ParamRingPtr &ring() const { return ring_; }
    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Integer coefficient of a parameter monomial.
    Integer coefficient(const Exponents &e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Integer(0) : it->second;
    }

    /// Replace each parameter by an integer value.
    Integer evaluate(const std::vector<Integer> &values) const {
        if (values.size() != ring_->size())
            throw Error("parameter value count mismatch");
        Integer acc = 0;
        for (const auto &[e, c] : terms_) {
            Integer t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (unsigned k = 0; k < e[i]; ++k)
                    t *= values[i];
            acc += t;
        }
        return acc;
    }

    template <class F> ParamPoly map_coefficients(F &&f) const {
        ParamPoly r(ring_);
        for (const auto &[e, c] : terms_) {
            Integer v = f(c);
            if (v != 0)
                r.terms_.emplace(e, std::move(v));
        }
        return r;
    }

    friend ParamPoly operator+(const ParamPoly &a, const ParamPoly &b) {
        ParamPoly r = a;
        r += b;
        return r;
    }
    friend ParamPoly operator-(const ParamPoly &a) {
        return a.map_coefficients([](const Integer &c) { return Integer(-c); });
    }
    friend ParamPoly operator-(const ParamPoly &a, const ParamPoly &b) {
        ParamPoly r = a;
        r -= b;
        return r;
    }
    friend ParamPoly operator*(const ParamPoly &a, const ParamPoly &b) {
        check_compatible(a, b);
        ParamPoly r(a.ring_);
        for (const auto &[ea, ca] : a.terms_)
            for (const auto &[eb, cb] : b.terms_) {
                Exponents e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] = ea[i] + eb[i];
                r.terms_[e] += ca * cb;
            }
        r.prune();
        return r;
    }
    ParamPoly &operator+=(const ParamPoly &o) { return accumulate(o, 1); }
    ParamPoly &operator-=(const ParamPoly &o) { return accumulate(o, -1); }
    ParamPoly &operator*=(const ParamPoly &o) { return *this = *this * o; }

    friend bool operator==(const ParamPoly &a, const ParamPoly &b) {
        return same_param_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
    }

    /// Canonical text, highest graded-lex term first, e.g. "a1*a2 - 3*a3".
    std::string str() const {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto &[e, c] = *it;
            Integer mag = abs(c);
            if (first)
                os << (c < 0 ? "-" : "");
            else
                os << (c < 0 ? " - " : " + ");
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0)
                    continue;
                if (!mono.empty())
                    mono += "*";
                mono += ring_->names()[i];
                if (e[i] > 1)
                    mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty())
                os << mag.get_str();
            else if (mag == 1)
                os << mono;
            else
                os << mag.get_str() << "*" << mono;
        }
        return os.str();
    }

  private:
    void require_ring() const {
        if (!ring_)
            throw Error("parameter polynomial requires a ring");
    }
    static void check_compatible(const ParamPoly &a, const ParamPoly &b) {
        if (!same_param_ring(a.ring_, b.ring_))
            throw Error("coefficients from different parameter rings");
    }
    ParamPoly &accumulate(const ParamPoly &o, int sign) {
        check_compatible(*this, o);
        for (const auto &[e, c] : o.terms_) {
            auto &slot = terms_[e];
            if (sign > 0)
                slot += c;
            else
                slot -= c;
            if (slot == 0)
                terms_.erase(e);
        }
        return *this;
    }
    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = it->second == 0 ? terms_.erase(it) : std::next(it);
    }

    ParamRingPtr ring_;
    TermMap terms_;
};

// ---------------------------------------------------------------------------
// Coefficient rings as seen by the generic series code

struct IntegerRing {
    friend bool operator==(IntegerRing, IntegerRing) { return true; }
};
struct DyadicRing {
    friend bool operator==(DyadicRing, DyadicRing) { return true; }
};

/// Runtime description of a coefficient ring.
struct CoeffRing {
    enum class Kind { Integers, Dyadic, ParamPoly };
    Kind kind = Kind::Integers;
    std::vector<std::string> parameters;

    std::string name() const {
        switch (kind) {
        case Kind::Integers:
            return "Z";
        case Kind::Dyadic:
            return "Z[1/2]";
        case Kind::ParamPoly: {
            std::string s = "Z[";
            for (std::size_t i = 0; i < parameters.size(); ++i)
                s += (i ? "," : "") + parameters[i];
            return s + "]";
        }
        }
        return "?";
    }
};

template <class C> struct coeff_traits;

template <> struct coeff_traits<Integer> {
    using ring_type = IntegerRing;
    static constexpr bool admits_mod2 = true;
    static Integer from_int(const ring_type &, const Integer &v) { return v; }
    static bool is_zero(const Integer &c) { return c == 0; }
    static ring_type ring_of(const Integer &) { return {}; }
    static bool same_ring(const ring_type &, const ring_type &) { return true; }
    static std::string str(const Integer &c) { return c.get_str(); }
    static CoeffRing describe(const ring_type &) { return {CoeffRing::Kind::Integers, {}}; }
};

template <> struct coeff_traits<Dyadic> {
    using ring_type = DyadicRing;
    static constexpr bool admits_mod2 = false;
    static Dyadic from_int(const ring_type &, const Integer &v) { return Dyadic(v); }
    static bool is_zero(const Dyadic &c) { return c.is_zero(); }
    static ring_type ring_of(const Dyadic &) { return {}; }
    static bool same_ring(const ring_type &, const ring_type &) { return true; }
    static std::string str(const Dyadic &c) { return c.str(); }
    static CoeffRing describe(const ring_type &) { return {CoeffRing::Kind::Dyadic, {}}; }
};

template <> struct coeff_traits<ParamPoly> {
    using ring_type = ParamRingPtr;
    static constexpr bool admits_mod2 = true;
    static ParamPoly from_int(const ring_type &r, const Integer &v) { return ParamPoly(r, v); }
    static bool is_zero(const ParamPoly &c) { return c.is_zero(); }
    static ring_type ring_of(const ParamPoly &c) { return c.ring(); }
    static bool same_ring(const ring_type &a, const ring_type &b) { return same_param_ring(a, b); }
    static std::string str(const ParamPoly &c) { return c.str(); }
    static CoeffRing describe(const ring_type &r) {
        return {CoeffRing::Kind::ParamPoly, r ? r->names() : std::vector<std::string>{}};
    }
};

template <class C>
concept Coefficient = requires(const C &a, const C &b) {
    typename coeff_traits<C>::ring_type;
    { a + b } -> std::convertible_to<C>;
    { a - b } -> std::convertible_to<C>;
    { a * b } -> std::convertible_to<C>;
    { -a } -> std::convertible_to<C>;
    { a == b } -> std::convertible_to<bool>;
};

template <class C> bool is_zero(const C &c) { return coeff_traits<C>::is_zero(c); }
template <class C> std::string coeff_str(const C &c) { return coeff_traits<C>::str(c); }

// ---------------------------------------------------------------------------
// mod 2 and exact division

/// Reduce every integer coefficient into {0, 1}.
inline Integer mod2_reduce(const Integer &c) { return Integer(mpz_odd_p(c.get_mpz_t()) ? 1 : 0); }

inline ParamPoly mod2_reduce(const ParamPoly &c) {
    return c.map_coefficients([](const Integer &v) { return mod2_reduce(v); });
}

[[noreturn]] inline Dyadic mod2_reduce(const Dyadic &) {
    throw Error("cannot reduce dyadic mod 2");
}

/// c / m when every integer coefficient of c is divisible by m.
inline std::optional<Integer> exact_div_int(const Integer &c, const Integer &m) {
    if (m == 0)
        throw Error("division by zero");
    if (!divisible(c, m))
        return std::nullopt;
    Integer q;
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    return q;
}

inline std::optional<ParamPoly> exact_div_int(const ParamPoly &c, const Integer &m) {
    if (m == 0)
        throw Error("division by zero");
    for (const auto &[e, v] : c.terms())
        if (!divisible(v, m))
            return std::nullopt;
    return c.map_coefficients([&](const Integer &v) { return *exact_div_int(v, m); });
}

/// In Z[1/2] division by a power of two always succeeds; the odd part of m
/// must divide the numerator.
inline std::optional<Dyadic> exact_div_int(const Dyadic &c, const Integer &m) {
    if (m == 0)
        throw Error("division by zero");
    unsigned v = two_adic_valuation(m);
    Integer odd = m;
    mpz_fdiv_q_2exp(odd.get_mpz_t(), odd.get_mpz_t(), v);
    auto q = exact_div_int(c.numerator(), odd);
    if (!q)
        return std::nullopt;
    return Dyadic(std::move(*q), c.exponent() + v);
}

/// Greatest common divisor of the integer coefficients (nonnegative).
inline Integer content(const Integer &c) { return abs(c); }
inline Integer content(const ParamPoly &c) {
    Integer g = 0;
    for (const auto &[e, v] : c.terms())
        g = gcd(g, v);
    return g;
}

} // namespace fgalab
