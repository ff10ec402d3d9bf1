#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cycleforge/rational.hpp"

namespace cycleforge::ratpoly {

/// Dense univariate polynomial over Rational, coefficients ascending by
/// degree. The workhorse behind Sturm chains and root isolation.
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
    static UniPoly constant(const Rational& c) { return UniPoly({c}); }

    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
    const Rational& lc() const { return c_.back(); }
    const Rational& operator[](std::size_t i) const { return c_[i]; }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    double eval_d(double x) const {
        double acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * x + it->get_d();
        return acc;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(i);
        return UniPoly(std::move(d));
    }

    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(UniPoly a, const Rational& s) {
        for (auto& x : a.c_) x *= s;
        a.trim();
        return a;
    }

    /// Field division: returns (quotient, remainder).
    static std::pair<UniPoly, UniPoly> divmod(UniPoly a, const UniPoly& b) {
        if (b.is_zero()) throw std::invalid_argument("divmod: zero divisor");
        UniPoly q;
        if (a.degree() < b.degree()) return {q, a};
        q.c_.assign(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
        while (!a.is_zero() && a.degree() >= b.degree()) {
            auto shift = static_cast<std::size_t>(a.degree() - b.degree());
            Rational f = a.lc() / b.lc();
            q.c_[shift] = f;
            for (std::size_t i = 0; i < b.c_.size(); ++i)
                a.c_[i + shift] -= f * b.c_[i];
            a.trim_known_lead();
        }
        q.trim();
        return {q, a};
    }

    /// Scaled by a positive rational to integer-coprime coefficients; the
    /// sign pattern is untouched (safe inside Sturm chains).
    UniPoly positive_scaled() const {
        if (is_zero()) return *this;
        Integer num_gcd(0), den_lcm(1);
        for (const auto& c : c_) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
                    mpq_numref(c.get_mpq_t()));
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                    mpq_denref(c.get_mpq_t()));
        }
        Rational scale(den_lcm, num_gcd);
        scale.canonicalize();
        if (sgn(scale) < 0) scale = -scale;
        return *this * scale;
    }

    /// Integer-content-normalized primitive part with positive leading
    /// coefficient.
    UniPoly primitive() const {
        if (is_zero()) return *this;
        UniPoly r = positive_scaled();
        if (sgn(r.lc()) < 0) r = -r;
        return r;
    }

    static UniPoly gcd(UniPoly a, UniPoly b) {
        a = a.primitive();
        b = b.primitive();
        while (!b.is_zero()) {
            UniPoly r = divmod(a, b).second.primitive();
            a = std::move(b);
            b = std::move(r);
        }
        return a.primitive();
    }

    /// p / gcd(p, p'), content-normalized.
    UniPoly squarefree_part() const {
        if (is_zero()) throw std::invalid_argument("squarefree_part of zero");
        if (degree() == 0) return UniPoly::constant(1);
        UniPoly g = gcd(*this, derivative());
        if (g.degree() == 0) return primitive();
        return divmod(*this, g).first.primitive();
    }

    /// Cauchy bound: all real roots lie in (-B, B).
    Rational root_bound() const {
        if (is_zero() || degree() == 0) return Rational(1);
        Rational m(0);
        for (std::size_t i = 0; i + 1 < c_.size(); ++i)
            m = std::max(m, rat_abs(c_[i] / c_.back()));
        return m + 1;
    }

  private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }
    void trim_known_lead() {
        if (!c_.empty()) c_.pop_back();
        trim();
    }
    std::vector<Rational> c_;
};

/// Sturm chain of a squarefree polynomial (the caller squarefree-reduces).
class SturmChain {
  public:
    explicit SturmChain(const UniPoly& p) {
        chain_.push_back(p.positive_scaled());
        chain_.push_back(p.derivative().positive_scaled());
        while (!chain_.back().is_zero() && chain_.back().degree() >= 0) {
            const auto& a = chain_[chain_.size() - 2];
            const auto& b = chain_.back();
            if (b.degree() == 0) break;
            UniPoly r = UniPoly::divmod(a, b).second;
            if (r.is_zero()) break;
            chain_.push_back((-r).positive_scaled());
        }
    }

    /// Sign variations of the chain at x.
    int variations(const Rational& x) const {
        int v = 0, prev = 0;
        for (const auto& p : chain_) {
            int s = sgn(p.eval(x));
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    }

    /// Number of distinct real roots in (lo, hi].
    int count(const Rational& lo, const Rational& hi) const {
        return variations(lo) - variations(hi);
    }

  private:
    std::vector<UniPoly> chain_;
};

}  // namespace cycleforge::ratpoly
