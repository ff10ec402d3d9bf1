#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cycleforge/multipoly.hpp"
#include "cycleforge/unipoly.hpp"

namespace cycleforge::ratpoly {

/// A multivariate polynomial viewed as univariate in `main_var`, with
/// coefficients in the remaining variables. coeffs[k] is the coefficient of
/// main_var^k; the leading coefficient is nonzero.
class UniView {
  public:
    UniView(MultiPoly base, std::string main_var)
        : base_(std::move(base)), var_(std::move(main_var)) {
        int vi = base_.var_index(var_);
        if (vi < 0) {
            if (!base_.is_zero()) coeffs_.push_back(base_);
        } else {
            auto u = static_cast<std::size_t>(vi);
            std::int64_t d = base_.degree_in(var_);
            if (d >= 0)
                coeffs_.assign(static_cast<std::size_t>(d + 1), MultiPoly(base_.vars()));
            for (const auto& t : base_.terms()) {
                MultiPoly mono(base_.vars());
                MultiPoly::Term nt = t;
                auto k = nt.exps[u];
                nt.exps[u] = 0;
                mono.terms_.push_back(std::move(nt));
                coeffs_[k] = coeffs_[k] + mono;
            }
            trim();
        }
    }

    static UniView from_coeffs(std::vector<MultiPoly> coeffs, std::string main_var,
                               const std::vector<std::string>& vars) {
        UniView v(MultiPoly(vars), main_var);
        v.coeffs_ = std::move(coeffs);
        for (auto& c : v.coeffs_) {
            MultiPoly u(vars);
            MultiPoly::unify(c, u);
        }
        v.trim();
        v.base_ = v.reassemble();
        return v;
    }

    const std::string& main_var() const { return var_; }
    const MultiPoly& base() const { return base_; }
    const std::vector<MultiPoly>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    std::int64_t degree() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }

    const MultiPoly& lc() const {
        if (coeffs_.empty()) throw std::logic_error("lc of zero UniView");
        return coeffs_.back();
    }

    MultiPoly coeff(std::size_t k) const {
        return k < coeffs_.size() ? coeffs_[k]
                                  : MultiPoly(base_.vars());
    }

    MultiPoly reassemble() const {
        MultiPoly acc(base_.vars());
        MultiPoly x = base_.var_index(var_) >= 0
                          ? MultiPoly::variable(var_, base_.vars())
                          : MultiPoly::constant(0, base_.vars());
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    /// All coefficients free of every variable (a genuinely univariate view).
    bool coeffs_constant() const {
        for (const auto& c : coeffs_)
            if (!c.is_constant()) return false;
        return true;
    }

    UniPoly to_unipoly() const {
        std::vector<Rational> c;
        c.reserve(coeffs_.size());
        for (const auto& p : coeffs_) {
            if (!p.is_constant())
                throw std::invalid_argument("to_unipoly: coefficients not constant");
            c.push_back(p.constant_value());
        }
        return UniPoly(std::move(c));
    }

    /// Specializes all non-main variables, yielding a dense univariate.
    UniPoly specialize(const std::map<std::string, Rational>& point) const {
        std::vector<Rational> c;
        c.reserve(coeffs_.size());
        for (const auto& p : coeffs_) {
            MultiPoly q = p;
            for (const auto& [name, val] : point) q = q.subst(name, val);
            if (!q.is_constant())
                throw std::invalid_argument("specialize: unbound variable remains");
            c.push_back(q.constant_value());
        }
        return UniPoly(std::move(c));
    }

  private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    MultiPoly base_;
    std::string var_;
    std::vector<MultiPoly> coeffs_;
};

struct PseudoDivision {
    unsigned multiplications = 0;  // m in lc(B)^m * A = Q*B + R
    MultiPoly quotient;
    MultiPoly remainder;
};

/// Pseudo-division in the main variable: lc(B)^m * A = Q*B + R with
/// deg(R) < deg(B) and m <= deg(A) - deg(B) + 1.
inline PseudoDivision pseudo_division(const UniView& A, const UniView& B) {
    if (B.is_zero()) throw std::invalid_argument("pseudo_division: B = 0");
    if (A.main_var() != B.main_var())
        throw std::invalid_argument("pseudo_division: main variable mismatch");
    const auto& var = A.main_var();
    std::vector<std::string> vars = A.base().vars();
    {
        MultiPoly a = A.base(), b = B.base();
        MultiPoly::unify(a, b);
        vars = a.vars();
    }
    const std::int64_t db = B.degree();
    std::vector<MultiPoly> R;
    for (std::int64_t k = 0; k <= A.degree(); ++k) R.push_back(A.coeff(k));
    auto deg_of = [](const std::vector<MultiPoly>& v) {
        std::int64_t d = static_cast<std::int64_t>(v.size()) - 1;
        while (d >= 0 && v[static_cast<std::size_t>(d)].is_zero()) --d;
        return d;
    };
    std::vector<MultiPoly> Q;
    const MultiPoly lcB = B.lc();
    unsigned m = 0;
    std::int64_t dr = deg_of(R);
    if (dr >= db)
        Q.assign(static_cast<std::size_t>(dr - db + 1), MultiPoly(vars));
    while (dr >= db && dr >= 0) {
        MultiPoly lead = R[static_cast<std::size_t>(dr)];
        auto shift = static_cast<std::size_t>(dr - db);
        for (auto& q : Q) q = q * lcB;
        Q[shift] = Q[shift] + lead;
        for (auto& r : R) r = r * lcB;
        for (std::int64_t k = 0; k <= db; ++k)
            R[shift + static_cast<std::size_t>(k)] =
                R[shift + static_cast<std::size_t>(k)] - lead * B.coeff(static_cast<std::size_t>(k));
        ++m;
        dr = deg_of(R);
    }
    PseudoDivision out;
    out.multiplications = m;
    MultiPoly x = MultiPoly::variable(var, vars);
    MultiPoly qp(vars), rp(vars);
    for (auto it = Q.rbegin(); it != Q.rend(); ++it) qp = qp * x + *it;
    for (auto it = R.rbegin(); it != R.rend(); ++it) rp = rp * x + *it;
    out.quotient = qp;
    out.remainder = rp;
    return out;
}

namespace detail {

inline MultiPoly exact_div_or_throw(const MultiPoly& p, const MultiPoly& q,
                                    const char* who) {
    auto r = MultiPoly::divide_exact(p, q);
    if (!r) throw std::logic_error(std::string(who) + ": inexact ring division");
    return *r;
}

}  // namespace detail

/// Sylvester resultant with respect to the view's main variable, computed by
/// the subresultant PRS. Convention: determinant of the Sylvester matrix
/// with deg(B) rows of A's coefficients first.
inline MultiPoly resultant(UniView A, UniView B) {
    if (A.is_zero() || B.is_zero())
        throw std::invalid_argument("resultant: zero input");
    if (A.degree() < 1 || B.degree() < 1)
        throw std::invalid_argument("resultant: degree-0 input");
    const std::string var = A.main_var();
    int s = 1;
    if (A.degree() < B.degree()) {
        if ((A.degree() % 2) && (B.degree() % 2)) s = -s;
        std::swap(A, B);
    }
    std::vector<std::string> vars;
    {
        MultiPoly a = A.base(), b = B.base();
        MultiPoly::unify(a, b);
        vars = a.vars();
        A = UniView(a, var);
        B = UniView(b, var);
    }
    const MultiPoly one = MultiPoly::constant(1, vars);
    MultiPoly g = one, h = one;
    MultiPoly t = one;  // no content extraction: exact divisions stay valid over Q
    for (;;) {
        std::int64_t da = A.degree(), db = B.degree();
        auto delta = static_cast<unsigned>(da - db);
        if ((da % 2) && (db % 2)) s = -s;
        PseudoDivision pd = pseudo_division(A, B);
        MultiPoly R = pd.remainder;
        if (pd.multiplications < delta + 1) {
            MultiPoly scale = B.lc().pow(delta + 1 - pd.multiplications);
            R = R * scale;
        }
        A = B;
        MultiPoly divisor = g * h.pow(delta);
        MultiPoly Bnext = R.is_zero()
                              ? R
                              : detail::exact_div_or_throw(R, divisor, "resultant");
        B = UniView(Bnext, var);
        if (B.is_zero()) return MultiPoly(vars);  // common factor: resultant 0
        g = A.lc();
        if (delta >= 1) {
            MultiPoly gd = g.pow(delta);
            h = (delta == 1) ? gd
                             : detail::exact_div_or_throw(gd, h.pow(delta - 1),
                                                          "resultant");
        }
        if (B.degree() == 0) {
            auto dA = static_cast<unsigned>(A.degree());
            MultiPoly num = B.lc().pow(dA);
            MultiPoly res = (dA <= 1)
                                ? num
                                : detail::exact_div_or_throw(num, h.pow(dA - 1),
                                                             "resultant");
            return s < 0 ? MultiPoly(vars) - res : res;
        }
    }
}

/// Fraction-free Bareiss determinant of the Sylvester matrix; the slow dual
/// route used to cross-check the PRS on small inputs.
inline MultiPoly resultant_sylvester(const UniView& A, const UniView& B) {
    if (A.degree() < 1 || B.degree() < 1)
        throw std::invalid_argument("resultant_sylvester: degree-0 input");
    std::vector<std::string> vars;
    {
        MultiPoly a = A.base(), b = B.base();
        MultiPoly::unify(a, b);
        vars = a.vars();
    }
    auto da = static_cast<std::size_t>(A.degree());
    auto db = static_cast<std::size_t>(B.degree());
    std::size_t n = da + db;
    std::vector<std::vector<MultiPoly>> M(n, std::vector<MultiPoly>(n, MultiPoly(vars)));
    for (std::size_t r = 0; r < db; ++r)
        for (std::size_t k = 0; k <= da; ++k) {
            MultiPoly c = A.coeff(da - k);
            MultiPoly u(vars);
            MultiPoly::unify(c, u);
            M[r][r + k] = c;
        }
    for (std::size_t r = 0; r < da; ++r)
        for (std::size_t k = 0; k <= db; ++k) {
            MultiPoly c = B.coeff(db - k);
            MultiPoly u(vars);
            MultiPoly::unify(c, u);
            M[db + r][r + k] = c;
        }
    int s = 1;
    MultiPoly prev = MultiPoly::constant(1, vars);
    for (std::size_t p = 0; p + 1 < n; ++p) {
        if (M[p][p].is_zero()) {
            std::size_t q = p + 1;
            while (q < n && M[q][p].is_zero()) ++q;
            if (q == n) return MultiPoly(vars);
            std::swap(M[p], M[q]);
            s = -s;
        }
        for (std::size_t i = p + 1; i < n; ++i)
            for (std::size_t j = p + 1; j < n; ++j) {
                MultiPoly num = M[i][j] * M[p][p] - M[i][p] * M[p][j];
                M[i][j] = num.is_zero()
                              ? num
                              : detail::exact_div_or_throw(num, prev, "bareiss");
            }
        prev = M[p][p];
    }
    MultiPoly det = M[n - 1][n - 1];
    return s < 0 ? MultiPoly(vars) - det : det;
}

/// Recursive primitive-PRS multivariate gcd (monic-normalized content at the
/// constant level; adequate for squarefree reduction, not a factoring tool).
inline MultiPoly multi_gcd(MultiPoly p, MultiPoly q) {
    MultiPoly::unify(p, q);
    if (p.is_zero()) return q;
    if (q.is_zero()) return p;
    if (p.is_constant() || q.is_constant())
        return MultiPoly::constant(1, p.vars());
    // First variable actually appearing in either polynomial.
    std::string v;
    for (const auto& name : p.vars()) {
        if (p.degree_in(name) > 0 || q.degree_in(name) > 0) {
            v = name;
            break;
        }
    }
    UniView pv(p, v), qv(q, v);
    auto content = [&](const UniView& u) {
        MultiPoly c(u.base().vars());
        for (const auto& co : u.coeffs()) c = multi_gcd(c, co);
        return c;
    };
    MultiPoly cp = content(pv), cq = content(qv);
    MultiPoly a = detail::exact_div_or_throw(p, cp, "multi_gcd");
    MultiPoly b = detail::exact_div_or_throw(q, cq, "multi_gcd");
    UniView av(a, v), bv(b, v);
    if (av.degree() < bv.degree()) std::swap(av, bv);
    while (!bv.is_zero() && bv.degree() > 0) {
        MultiPoly r = pseudo_division(av, bv).remainder;
        UniView rv(r, v);
        if (!rv.is_zero()) {
            MultiPoly cr(r.vars());
            for (const auto& co : rv.coeffs()) cr = multi_gcd(cr, co);
            rv = UniView(detail::exact_div_or_throw(r, cr, "multi_gcd"), v);
        }
        av = bv;
        bv = rv;
    }
    MultiPoly ccontent = multi_gcd(cp, cq);
    if (!bv.is_zero())  // degree dropped to 0: the primitive parts are coprime
        return ccontent;
    MultiPoly prim = av.reassemble();
    // Normalize sign so the grlex-leading coefficient is positive.
    if (!prim.is_zero() && sgn(prim.terms().front().coeff) < 0)
        prim = MultiPoly(prim.vars()) - prim;
    return ccontent * prim;
}

/// p / gcd(p, dp/dvar), content-normalized: the squarefree part in the view's
/// main variable.
inline MultiPoly squarefree_part(const UniView& p) {
    if (p.is_zero()) throw std::invalid_argument("squarefree_part: zero input");
    if (p.coeffs_constant()) {
        UniPoly sq = p.to_unipoly().squarefree_part();
        MultiPoly acc(p.base().vars());
        MultiPoly x = p.base().var_index(p.main_var()) >= 0
                          ? MultiPoly::variable(p.main_var(), p.base().vars())
                          : MultiPoly(p.base().vars());
        if (sq.degree() > 0) {
            for (std::int64_t k = sq.degree(); k >= 0; --k)
                acc = acc * x + MultiPoly::constant(sq[static_cast<std::size_t>(k)],
                                                    p.base().vars());
            return acc;
        }
        return MultiPoly::constant(sq.is_zero() ? Rational(0) : sq[0], p.base().vars());
    }
    MultiPoly d = p.base().derivative(p.main_var());
    MultiPoly g = multi_gcd(p.base(), d);
    if (g.is_constant()) return p.base();
    MultiPoly out = detail::exact_div_or_throw(p.base(), g, "squarefree_part");
    // Integer-content normalization.
    Integer num_gcd(0), den_lcm(1);
    for (const auto& t : out.terms()) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
                mpq_numref(t.coeff.get_mpq_t()));
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                mpq_denref(t.coeff.get_mpq_t()));
    }
    if (sgn(num_gcd) != 0) {
        Rational scale(den_lcm, num_gcd);
        scale.canonicalize();
        out = out * scale;
    }
    if (!out.is_zero() && sgn(out.terms().front().coeff) < 0)
        out = MultiPoly(out.vars()) - out;
    return out;
}

/// Exact number of distinct real roots of a univariate view in (lo, hi].
/// Root endpoints are nudged outward by 2^-128 (documented perturbation).
inline int sturm_count(const UniView& p, Rational lo, Rational hi) {
    if (p.is_zero()) throw std::invalid_argument("sturm_count: zero polynomial");
    if (!(lo < hi)) throw std::invalid_argument("sturm_count: empty interval");
    UniPoly u = p.to_unipoly().squarefree_part();
    if (u.degree() <= 0) return 0;
    const Rational eps = dyadic_eps(128);
    if (sgn(u.eval(lo)) == 0) lo -= eps;
    if (sgn(u.eval(hi)) == 0) hi += eps;
    return SturmChain(u).count(lo, hi);
}

}  // namespace cycleforge::ratpoly
