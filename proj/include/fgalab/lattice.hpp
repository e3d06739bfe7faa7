#pragma once
// Sublattices of Z^k in fixed monomial coordinates.

#include "fgalab/intmat.hpp"
#include "fgalab/report.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace fgalab {

class IntLattice {
  public:
    IntLattice(std::size_t ambient_dim, const Matrix &generators, std::string basis_label = {})
        : ambient_(ambient_dim), label_(std::move(basis_label)), hnf_(check_dim(ambient_dim, generators)) {}

    static IntLattice zero(std::size_t dim, std::string label = {}) { return {dim, Matrix::empty(dim), std::move(label)}; }
    static IntLattice full(std::size_t dim, std::string label = {}) {
        return {dim, Matrix::identity(dim), std::move(label)};
    }

    std::size_t ambient_dim() const { return ambient_; }
    const std::string &basis_label() const { return label_; }
    /// Canonical basis; two lattices are equal iff these agree.
    const Matrix &hnf() const { return hnf_; }
    std::size_t rank() const { return hnf_.rows(); }
    bool is_zero() const { return hnf_.rows() == 0; }

    /// Coefficients of v in the HNF basis, if v lies in the rational span.
    std::optional<std::vector<Rational>> rational_coordinates(const IntVec &v) const {
        if (v.size() != ambient_)
            throw Error("vector dimension " + std::to_string(v.size()) + " does not match lattice dimension " +
                        std::to_string(ambient_));
        std::vector<Rational> rest(v.begin(), v.end());
        std::vector<Rational> coords;
        auto piv = pivot_columns(hnf_);
        for (std::size_t i = 0; i < hnf_.rows(); ++i) {
            Rational c = rest[piv[i]] / Rational(hnf_(i, piv[i]));
            coords.push_back(c);
            if (c != 0)
                for (std::size_t j = piv[i]; j < ambient_; ++j)
                    if (hnf_(i, j) != 0)
                        rest[j] -= c * Rational(hnf_(i, j));
        }
        for (const auto &r : rest)
            if (r != 0)
                return std::nullopt;
        return coords;
    }

    bool contains(const IntVec &v) const {
        auto c = rational_coordinates(v);
        if (!c)
            return false;
        for (const auto &x : *c)
            if (x.get_den() != 1)
                return false;
        return true;
    }

    /// Every vector of `other` lies in this lattice.
    bool contains(const IntLattice &other) const {
        for (const auto &r : other.hnf().row_list())
            if (!contains(r))
                return false;
        return true;
    }

    IntLattice scaled(const Integer &k) const {
        Matrix m = hnf_;
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (auto &x : m.row(i))
                x *= k;
        return {ambient_, m, label_};
    }

    friend bool operator==(const IntLattice &a, const IntLattice &b) {
        return a.ambient_ == b.ambient_ && a.hnf_ == b.hnf_;
    }

  private:
    static Matrix check_dim(std::size_t dim, const Matrix &g) {
        if (g.cols() != dim && g.rows() > 0)
            throw Error("generator length does not match ambient dimension");
        if (g.rows() == 0)
            return Matrix::empty(dim);
        return fgalab::hnf(g);
    }

    std::size_t ambient_;
    std::string label_;
    Matrix hnf_;
};

inline nlohmann::json to_json(const IntVec &v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto &x : v)
        a.push_back(int_json(x));
    return a;
}

inline nlohmann::json to_json(const IntLattice &l) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &r : l.hnf().row_list())
        rows.push_back(to_json(r));
    return {{"basis", l.basis_label()}, {"ambient_dim", l.ambient_dim()}, {"hnf", rows}};
}

inline IntLattice lattice_from_json(const nlohmann::json &j) {
    const auto dim = j.at("ambient_dim").get<std::size_t>();
    Matrix m = Matrix::empty(dim);
    for (const auto &row : j.at("hnf")) {
        IntVec r;
        for (const auto &x : row)
            r.push_back(x.is_string() ? Integer(x.get<std::string>()) : Integer(x.get<long>()));
        m.push_row(std::move(r));
    }
    return IntLattice(dim, m, j.value("basis", std::string{}));
}

/// Least tau >= 1 with tau * source inside target; no value means no multiple fits.
struct ExponentReport {
    std::optional<Integer> tau;
    std::optional<Integer> bound;
    std::optional<IntVec> witness; // a source vector needing the full multiplier
    int certified_trunc = 0;

    bool finite() const { return tau.has_value(); }
    bool divides_bound() const { return tau && bound && divisible(*bound, *tau); }
};

inline nlohmann::json to_json(const ExponentReport &e) {
    nlohmann::json j;
    j["tau"] = e.tau ? int_json(*e.tau) : nlohmann::json("infinite");
    j["paper_bound"] = e.bound ? int_json(*e.bound) : nlohmann::json(nullptr);
    j["divides_bound"] = e.divides_bound();
    j["witness"] = e.witness ? to_json(*e.witness) : nlohmann::json(nullptr);
    j["certified_trunc"] = e.certified_trunc;
    return j;
}

inline ExponentReport inclusion_multiplier(const IntLattice &source, const IntLattice &target,
                                           std::optional<Integer> bound = std::nullopt, int trunc = 0) {
    if (source.ambient_dim() != target.ambient_dim())
        throw Error("inclusion_multiplier: lattices live in different dimensions");
    ExponentReport rep;
    rep.bound = std::move(bound);
    rep.certified_trunc = trunc;
    Integer tau = 1;
    Integer worst = 1;
    for (const auto &row : source.hnf().row_list()) {
        auto c = target.rational_coordinates(row);
        if (!c) {
            rep.witness = row;
            return rep;
        }
        Integer den = 1;
        for (const auto &x : *c)
            den = lcm(den, x.get_den());
        tau = lcm(tau, den);
        if (den > worst || !rep.witness) {
            worst = den;
            rep.witness = row;
        }
    }
    rep.tau = tau;
    return rep;
}

/// {v in ambient : 2^k v in L for some k}. Works in the coordinates of the
/// ambient basis: the elementary divisors of L there lose their 2-parts.
inline IntLattice saturate2(const IntLattice &l, const IntLattice &ambient) {
    if (l.ambient_dim() != ambient.ambient_dim())
        throw Error("saturate2: dimension mismatch");
    if (l.is_zero())
        return l;
    const Matrix &A = ambient.hnf();
    Matrix coords = Matrix::empty(A.rows());
    for (const auto &row : l.hnf().row_list()) {
        auto c = ambient.rational_coordinates(row);
        if (!c)
            throw Error("saturate2: lattice is not contained in the ambient lattice");
        IntVec r;
        for (const auto &x : *c) {
            if (x.get_den() != 1)
                throw Error("saturate2: lattice is not contained in the ambient lattice");
            r.push_back(x.get_num());
        }
        coords.push_row(std::move(r));
    }
    auto s = snf(coords);
    Matrix gens = Matrix::empty(l.ambient_dim());
    for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
        Integer d = s.diagonal[i];
        if (d == 0)
            continue;
        mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), two_adic_valuation(d));
        // d * (row i of V^{-1}) in ambient coordinates, then mapped to Z^k
        IntVec v(l.ambient_dim(), 0);
        for (std::size_t k = 0; k < A.rows(); ++k) {
            Integer c = d * s.Vinv(i, k);
            if (c != 0)
                for (std::size_t j = 0; j < v.size(); ++j)
                    v[j] += c * A(k, j);
        }
        gens.push_row(std::move(v));
    }
    return IntLattice(l.ambient_dim(), gens, l.basis_label());
}

} // namespace fgalab
