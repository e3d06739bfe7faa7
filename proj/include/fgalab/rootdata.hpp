#pragma once
// Weight lattices and Weyl groups of the simply connected types B_n and D_n.
//
// Coordinates: weights in the fundamental-weight basis w_1..w_n; vectors of
// R^n in the basis e_1..e_n, stored doubled so spin weights stay integral.
//   B_n: e_1 = w_1, e_i = w_i - w_{i-1}, e_n = 2w_n - w_{n-1}
//   D_n: e_1 = w_1, e_i = w_i - w_{i-1} (i <= n-2),
//        e_{n-1} = w_n - w_{n-1}, e_n = w_n + w_{n-1} - w_{n-2}

#include "fgalab/exactnum.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fgalab {

enum class Family { B, D };

inline char family_char(Family f) { return f == Family::B ? 'B' : 'D'; }

class RootSystem {
  public:
    RootSystem(Family family, int rank) : family_(family), rank_(rank) {
        if (family == Family::B && rank < 3)
            throw Error("type B needs rank >= 3");
        if (family == Family::D && rank < 4)
            throw Error("type D needs rank >= 4");
        if (rank > 8)
            throw Error("rank above 8 is not supported");
    }

    /// "B3", "D5", ...
    static RootSystem parse(const std::string &s) {
        if (s.size() < 2 || (s[0] != 'B' && s[0] != 'D' && s[0] != 'b' && s[0] != 'd'))
            throw Error("root system must look like B3 or D4, got '" + s + "'");
        int n = 0;
        for (std::size_t i = 1; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9' || n > 100)
                throw Error("root system must look like B3 or D4, got '" + s + "'");
            n = 10 * n + (s[i] - '0');
        }
        return RootSystem((s[0] == 'B' || s[0] == 'b') ? Family::B : Family::D, n);
    }

    Family family() const { return family_; }
    int rank() const { return rank_; }
    std::string name() const { return std::string(1, family_char(family_)) + std::to_string(rank_); }

    friend bool operator==(const RootSystem &, const RootSystem &) = default;

  private:
    Family family_;
    int rank_;
};

/// Coordinates in the fundamental-weight basis.
struct Weight {
    std::vector<long> coords;

    static Weight zero(int n) { return {std::vector<long>(static_cast<std::size_t>(n), 0)}; }
    static Weight fundamental(int n, int j) {
        auto w = zero(n);
        w.coords.at(static_cast<std::size_t>(j)) = 1;
        return w;
    }
    int size() const { return static_cast<int>(coords.size()); }
    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(), [](long c) { return c == 0; });
    }
    friend Weight operator+(Weight a, const Weight &b) {
        if (a.coords.size() != b.coords.size())
            throw Error("weight length mismatch");
        for (std::size_t i = 0; i < a.coords.size(); ++i)
            a.coords[i] += b.coords[i];
        return a;
    }
    friend Weight operator-(Weight a) {
        for (auto &c : a.coords)
            c = -c;
        return a;
    }
    friend Weight operator-(const Weight &a, const Weight &b) { return a + (-b); }
    friend bool operator==(const Weight &, const Weight &) = default;
};

/// Twice the e-coordinates.
struct HalfVector {
    std::vector<long> doubled;
    friend bool operator==(const HalfVector &, const HalfVector &) = default;
};

/// Signed permutation g(e_i) = signs[i] * e_{perm[i]} (zero-based indices).
class WeylElement {
  public:
    WeylElement(std::vector<int> perm, std::vector<int> signs) : perm_(std::move(perm)), signs_(std::move(signs)) {
        if (perm_.size() != signs_.size())
            throw Error("Weyl element: permutation and signs differ in length");
        std::vector<int> sorted = perm_;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != static_cast<int>(i))
                throw Error("Weyl element: not a permutation");
        for (int s : signs_)
            if (s != 1 && s != -1)
                throw Error("Weyl element: signs must be +1 or -1");
    }

    static WeylElement identity(int n) {
        std::vector<int> p(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            p[static_cast<std::size_t>(i)] = i;
        return {p, std::vector<int>(static_cast<std::size_t>(n), 1)};
    }

    int size() const { return static_cast<int>(perm_.size()); }
    const std::vector<int> &perm() const { return perm_; }
    const std::vector<int> &signs() const { return signs_; }
    int negative_signs() const { return static_cast<int>(std::count(signs_.begin(), signs_.end(), -1)); }

    /// (g * h)(e_i) = g(h(e_i))
    friend WeylElement operator*(const WeylElement &g, const WeylElement &h) {
        if (g.size() != h.size())
            throw Error("Weyl element size mismatch");
        std::vector<int> p(h.perm_.size()), s(h.perm_.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            auto j = static_cast<std::size_t>(h.perm_[i]);
            p[i] = g.perm_[j];
            s[i] = h.signs_[i] * g.signs_[j];
        }
        return {p, s};
    }
    friend bool operator==(const WeylElement &, const WeylElement &) = default;
    friend auto operator<=>(const WeylElement &a, const WeylElement &b) {
        if (auto c = a.perm_ <=> b.perm_; c != 0)
            return c;
        return a.signs_ <=> b.signs_;
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < perm_.size(); ++i) {
            if (i)
                s += " ";
            s += "e" + std::to_string(i + 1) + "->" + (signs_[i] < 0 ? "-" : "") + "e" + std::to_string(perm_[i] + 1);
        }
        return s + "]";
    }

  private:
    std::vector<int> perm_;
    std::vector<int> signs_;
};

inline void require_valid(const RootSystem &rs, const WeylElement &g) {
    if (g.size() != rs.rank())
        throw Error("Weyl element has wrong size for " + rs.name());
    if (rs.family() == Family::D && g.negative_signs() % 2 != 0)
        throw Error("type D Weyl elements change an even number of signs");
}

namespace detail {

/// Row i: e_{i+1} in the fundamental-weight basis.
inline std::vector<std::vector<long>> e_in_omega(const RootSystem &rs) {
    const int n = rs.rank();
    std::vector<std::vector<long>> E(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n), 0));
    auto at = [&](int i, int j) -> long & { return E[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
    at(0, 0) = 1;
    if (rs.family() == Family::B) {
        for (int i = 1; i < n - 1; ++i) {
            at(i, i) = 1;
            at(i, i - 1) = -1;
        }
        at(n - 1, n - 1) = 2;
        at(n - 1, n - 2) = -1;
    } else {
        for (int i = 1; i < n - 2; ++i) {
            at(i, i) = 1;
            at(i, i - 1) = -1;
        }
        at(n - 2, n - 1) = 1;
        at(n - 2, n - 2) = -1;
        at(n - 1, n - 1) = 1;
        at(n - 1, n - 2) = 1;
        at(n - 1, n - 3) = -1;
    }
    return E;
}

/// Row j: 2 w_{j+1} in e-coordinates.
inline std::vector<std::vector<long>> omega_doubled(const RootSystem &rs) {
    const int n = rs.rank();
    std::vector<std::vector<long>> W(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n), 0));
    const int plain = rs.family() == Family::B ? n - 1 : n - 2;
    for (int j = 0; j < plain; ++j)
        for (int i = 0; i <= j; ++i)
            W[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = 2;
    for (int i = 0; i < n; ++i)
        W[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i)] = 1;
    if (rs.family() == Family::D) {
        for (int i = 0; i < n; ++i)
            W[static_cast<std::size_t>(n - 2)][static_cast<std::size_t>(i)] = 1;
        W[static_cast<std::size_t>(n - 2)][static_cast<std::size_t>(n - 2)] = -1;
    }
    return W;
}

} // namespace detail

inline void require_length(const RootSystem &rs, std::size_t len, const char *what) {
    if (static_cast<int>(len) != rs.rank())
        throw Error(std::string(what) + " length differs from rank of " + rs.name());
}

inline HalfVector weight_to_e(const RootSystem &rs, const Weight &w) {
    require_length(rs, w.coords.size(), "weight");
    const auto W = detail::omega_doubled(rs);
    HalfVector v{std::vector<long>(w.coords.size(), 0)};
    for (std::size_t j = 0; j < w.coords.size(); ++j)
        for (std::size_t i = 0; i < v.doubled.size(); ++i)
            v.doubled[i] += w.coords[j] * W[j][i];
    return v;
}

inline Weight e_to_weight(const RootSystem &rs, const HalfVector &v) {
    require_length(rs, v.doubled.size(), "vector");
    const auto E = detail::e_in_omega(rs);
    Weight w = Weight::zero(rs.rank());
    for (std::size_t i = 0; i < v.doubled.size(); ++i)
        for (std::size_t j = 0; j < w.coords.size(); ++j)
            w.coords[j] += v.doubled[i] * E[i][j];
    for (auto &c : w.coords) {
        if (c % 2 != 0)
            throw Error("not a weight");
        c /= 2;
    }
    return w;
}

/// e_{i+1} as a weight.
inline Weight e_weight(const RootSystem &rs, int i) {
    HalfVector v{std::vector<long>(static_cast<std::size_t>(rs.rank()), 0)};
    v.doubled.at(static_cast<std::size_t>(i)) = 2;
    return e_to_weight(rs, v);
}

inline Weight apply_weyl(const RootSystem &rs, const WeylElement &g, const Weight &w) {
    require_valid(rs, g);
    auto v = weight_to_e(rs, w);
    HalfVector out{std::vector<long>(v.doubled.size(), 0)};
    for (std::size_t i = 0; i < v.doubled.size(); ++i)
        out.doubled[static_cast<std::size_t>(g.perm()[i])] += g.signs()[i] * v.doubled[i];
    return e_to_weight(rs, out);
}

/// Simple reflections as signed permutations.
inline std::vector<WeylElement> weyl_generators(const RootSystem &rs) {
    const int n = rs.rank();
    std::vector<WeylElement> gens;
    for (int i = 0; i + 1 < n; ++i) {
        auto id = WeylElement::identity(n);
        auto p = id.perm();
        std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i + 1)]);
        gens.emplace_back(p, id.signs());
    }
    auto id = WeylElement::identity(n);
    auto p = id.perm();
    auto s = id.signs();
    if (rs.family() == Family::B) {
        s[static_cast<std::size_t>(n - 1)] = -1;
    } else {
        std::swap(p[static_cast<std::size_t>(n - 2)], p[static_cast<std::size_t>(n - 1)]);
        s[static_cast<std::size_t>(n - 2)] = -1;
        s[static_cast<std::size_t>(n - 1)] = -1;
    }
    gens.emplace_back(p, s);
    return gens;
}

/// Every element of W. Only for rank <= 4; invariance under the generators
/// is what the rest of the library relies on.
inline std::vector<WeylElement> enumerate_weyl_group(const RootSystem &rs) {
    if (rs.rank() > 4)
        throw Error("full Weyl group enumeration is limited to rank <= 4");
    auto gens = weyl_generators(rs);
    std::set<WeylElement> seen{WeylElement::identity(rs.rank())};
    std::vector<WeylElement> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
        std::vector<WeylElement> next;
        for (const auto &h : frontier)
            for (const auto &g : gens) {
                auto gh = g * h;
                if (seen.insert(gh).second)
                    next.push_back(gh);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------------------
// Constants r, zeta, eta

/// Total degree of the i-th basic invariant (1 <= i <= n).
inline int theta_degree(const RootSystem &rs, int i) {
    if (i < 1 || i > rs.rank())
        throw Error("invariant index out of range");
    if (rs.family() == Family::D && i == rs.rank())
        return rs.rank();
    return 2 * i;
}

inline bool is_power_of_two(long d) { return d > 0 && (d & (d - 1)) == 0; }

/// r_i for the i-th basic invariant.
inline Integer r_index(const RootSystem &rs, int i) {
    if (i < 1 || i > rs.rank())
        throw Error("invariant index out of range");
    if (rs.family() == Family::D && i == rs.rank())
        return pow2(static_cast<unsigned>(rs.rank()));
    return is_power_of_two(i) ? 2 : 1;
}

inline Integer zeta(const RootSystem &rs, int d) {
    if (d < 1)
        throw Error("degree must be positive");
    const int n = rs.rank();
    if (rs.family() == Family::D && d >= n)
        return pow2(static_cast<unsigned>((d / n) * n));
    return pow2(static_cast<unsigned>(d / 2));
}

inline Integer eta(const RootSystem &rs, int d) {
    if (d < 1)
        throw Error("degree must be positive");
    const int n = rs.rank();
    if (d == 1)
        return 1;
    if (d == 2 || d == 3)
        return 2;
    if (d == 4 && (rs.family() == Family::B || n >= 5))
        return 4;
    const int cap = rs.family() == Family::B ? 2 * n : 2 * n - 2;
    const int d0 = std::min(d, cap);
    return pow2(static_cast<unsigned>(d) + two_adic_valuation(factorial(static_cast<unsigned>(d0 / 2))));
}

struct Constants {
    std::optional<Integer> r; // only when d indexes a basic invariant
    Integer zeta;
    Integer eta;
};

inline Constants constants(const RootSystem &rs, int d) {
    Constants c{std::nullopt, zeta(rs, d), eta(rs, d)};
    if (d <= rs.rank())
        c.r = r_index(rs, d);
    return c;
}

} // namespace fgalab
