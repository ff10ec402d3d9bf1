#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cycleforge/rational.hpp"

namespace cycleforge::ratpoly {

using ExpVec = std::vector<std::uint32_t>;

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)),
          position(pos) {}
};

inline std::uint64_t total_degree(const ExpVec& e) {
    std::uint64_t s = 0;
    for (auto x : e) s += x;
    return s;
}

/// Graded lexicographic order: total degree first, then lex on the exponent
/// vector in declared variable order. Returns <0, 0, >0 like strcmp.
inline int grlex_cmp(const ExpVec& a, const ExpVec& b) {
    auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

/// Sparse exact multivariate polynomial over Rational. Terms are kept in
/// canonical form: strictly descending graded-lex order, no zero
/// coefficients, exponent vectors sized to the variable list.
class MultiPoly {
  public:
    struct Term {
        ExpVec exps;
        Rational coeff;
    };

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(const Rational& c, std::vector<std::string> vars = {}) {
        MultiPoly p(std::move(vars));
        if (sgn(c) != 0) p.terms_.push_back({ExpVec(p.vars_.size(), 0), c});
        return p;
    }

    static MultiPoly variable(const std::string& name,
                              const std::vector<std::string>& vars) {
        MultiPoly p(vars);
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end())
            throw std::invalid_argument("variable '" + name + "' not in universe");
        ExpVec e(vars.size(), 0);
        e[static_cast<std::size_t>(it - vars.begin())] = 1;
        p.terms_.push_back({std::move(e), Rational(1)});
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && total_degree(terms_[0].exps) == 0);
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant())
            throw std::logic_error("constant_value on non-constant polynomial");
        return terms_[0].coeff;
    }

    std::uint64_t degree() const {
        return terms_.empty() ? 0 : total_degree(terms_[0].exps);
    }

    int var_index(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
    }

    std::int64_t degree_in(const std::string& name) const {
        int vi = var_index(name);
        if (vi < 0) return 0;
        std::int64_t d = -1;
        for (const auto& t : terms_)
            d = std::max<std::int64_t>(d, t.exps[static_cast<std::size_t>(vi)]);
        return terms_.empty() ? -1 : d;
    }

    bool operator==(const MultiPoly& o) const {
        if (vars_ == o.vars_) return terms_equal(o);
        // Mathematical equality across different universes: compare on the
        // union universe.
        MultiPoly a = *this, b = o;
        unify(a, b);
        return a.terms_equal(b);
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    friend MultiPoly operator+(MultiPoly a, MultiPoly b) {
        unify(a, b);
        return merged(std::move(a), std::move(b), false);
    }
    friend MultiPoly operator-(MultiPoly a, MultiPoly b) {
        unify(a, b);
        return merged(std::move(a), std::move(b), true);
    }

    friend MultiPoly operator*(MultiPoly a, MultiPoly b) {
        unify(a, b);
        MultiPoly out(a.vars_);
        if (a.is_zero() || b.is_zero()) return out;
        std::map<ExpVec, Rational> acc;
        for (const auto& ta : a.terms_) {
            for (const auto& tb : b.terms_) {
                ExpVec e(ta.exps.size());
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] = ta.exps[i] + tb.exps[i];
                auto [it, fresh] = acc.try_emplace(std::move(e), Rational(0));
                it->second += ta.coeff * tb.coeff;
            }
        }
        out.terms_.reserve(acc.size());
        for (auto& [e, c] : acc)
            if (sgn(c) != 0) out.terms_.push_back({e, std::move(c)});
        std::reverse(out.terms_.begin(), out.terms_.end());
        std::sort(out.terms_.begin(), out.terms_.end(), term_desc);
        return out;
    }

    friend MultiPoly operator*(MultiPoly a, const Rational& c) {
        if (sgn(c) == 0) return MultiPoly(a.vars_);
        for (auto& t : a.terms_) t.coeff *= c;
        return a;
    }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) {
        return std::move(a) * c;
    }

    MultiPoly pow(unsigned e) const {
        MultiPoly r = MultiPoly::constant(1, vars_);
        MultiPoly base = *this;
        while (e) {
            if (e & 1u) r = r * base;
            base = (e >>= 1) ? base * base : base;
        }
        return r;
    }

    MultiPoly derivative(const std::string& var) const {
        int vi = var_index(var);
        MultiPoly out(vars_);
        if (vi < 0) return out;
        auto u = static_cast<std::size_t>(vi);
        for (const auto& t : terms_) {
            if (t.exps[u] == 0) continue;
            Term nt{t.exps, t.coeff * Rational(t.exps[u])};
            nt.exps[u] -= 1;
            out.terms_.push_back(std::move(nt));
        }
        std::sort(out.terms_.begin(), out.terms_.end(), term_desc);
        return out;
    }

    /// Exact evaluation; every variable must be bound.
    Rational eval(const std::vector<Rational>& point) const {
        if (point.size() != vars_.size())
            throw std::invalid_argument("eval: point arity mismatch");
        return eval_rec(terms_, 0, point);
    }

    Rational eval(const std::map<std::string, Rational>& point) const {
        std::vector<Rational> v;
        v.reserve(vars_.size());
        for (const auto& name : vars_) {
            auto it = point.find(name);
            if (it == point.end())
                throw std::invalid_argument("eval: unbound variable '" + name + "'");
            v.push_back(it->second);
        }
        return eval(v);
    }

    /// Partial substitution var := value; result loses that variable's
    /// dependence but keeps the universe.
    MultiPoly subst(const std::string& var, const Rational& value) const {
        int vi = var_index(var);
        if (vi < 0) return *this;
        auto u = static_cast<std::size_t>(vi);
        std::map<ExpVec, Rational> acc;
        for (const auto& t : terms_) {
            ExpVec e = t.exps;
            auto k = e[u];
            e[u] = 0;
            Rational c = t.coeff * pow_rat(value, k);
            if (sgn(c) == 0) continue;
            acc[std::move(e)] += c;
        }
        return from_map(vars_, acc);
    }

    /// Substitution var := q (a polynomial over the same universe).
    MultiPoly subst(const std::string& var, const MultiPoly& q) const {
        int vi = var_index(var);
        if (vi < 0) return *this;
        auto u = static_cast<std::size_t>(vi);
        // Horner over descending powers of var.
        std::int64_t d = degree_in(var);
        std::vector<MultiPoly> coeff_by_pow(static_cast<std::size_t>(d + 1),
                                            MultiPoly(vars_));
        for (const auto& t : terms_) {
            Term nt = t;
            auto k = nt.exps[u];
            nt.exps[u] = 0;
            coeff_by_pow[k].terms_.push_back(std::move(nt));
        }
        for (auto& c : coeff_by_pow)
            std::sort(c.terms_.begin(), c.terms_.end(), term_desc);
        MultiPoly qq = q;
        MultiPoly self_universe(vars_);
        unify(qq, self_universe);
        MultiPoly acc = coeff_by_pow[static_cast<std::size_t>(d)];
        for (std::int64_t k = d - 1; k >= 0; --k)
            acc = acc * qq + coeff_by_pow[static_cast<std::size_t>(k)];
        return acc;
    }

    /// den^deg * p(var -> num/den): the cleared-denominator substitution of a
    /// rational function.
    MultiPoly subst_rational_function(const std::string& var, const MultiPoly& num,
                                      const MultiPoly& den) const {
        std::int64_t d = degree_in(var);
        if (d <= 0) return *this;
        int vi = var_index(var);
        auto u = static_cast<std::size_t>(vi);
        std::vector<MultiPoly> coeff_by_pow(static_cast<std::size_t>(d + 1),
                                            MultiPoly(vars_));
        for (const auto& t : terms_) {
            Term nt = t;
            auto k = nt.exps[u];
            nt.exps[u] = 0;
            coeff_by_pow[k].terms_.push_back(std::move(nt));
        }
        for (auto& c : coeff_by_pow)
            std::sort(c.terms_.begin(), c.terms_.end(), term_desc);
        MultiPoly acc = coeff_by_pow[static_cast<std::size_t>(d)];
        for (std::int64_t k = d - 1; k >= 0; --k)
            acc = acc * num + coeff_by_pow[static_cast<std::size_t>(k)] *
                                  den_power(den, static_cast<unsigned>(d - k));
        return acc;
    }

    /// Exact polynomial division: returns quotient iff divisor | dividend.
    static std::optional<MultiPoly> divide_exact(MultiPoly p, MultiPoly q) {
        unify(p, q);
        if (q.is_zero()) throw std::invalid_argument("divide_exact: zero divisor");
        MultiPoly quot(p.vars_);
        const auto& qlead = q.terms_.front();
        while (!p.is_zero()) {
            const auto& plead = p.terms_.front();
            ExpVec e(plead.exps.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (plead.exps[i] < qlead.exps[i]) return std::nullopt;
                e[i] = plead.exps[i] - qlead.exps[i];
            }
            MultiPoly mono(p.vars_);
            mono.terms_.push_back({std::move(e), plead.coeff / qlead.coeff});
            quot = quot + mono;
            p = p - mono * q;
        }
        return quot;
    }

    /// Renames the variable universe (used by the b -> -b style reflections).
    MultiPoly with_vars(std::vector<std::string> vars) const {
        if (vars.size() != vars_.size())
            throw std::invalid_argument("with_vars: arity mismatch");
        MultiPoly r = *this;
        r.vars_ = std::move(vars);
        return r;
    }

    /// p with one variable negated (var -> -var), same universe.
    MultiPoly negate_var(const std::string& var) const {
        int vi = var_index(var);
        if (vi < 0) return *this;
        auto u = static_cast<std::size_t>(vi);
        MultiPoly r = *this;
        for (auto& t : r.terms_)
            if (t.exps[u] & 1u) t.coeff = -t.coeff;
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            Rational c = t.coeff;
            if (first) {
                first = false;
                if (sgn(c) < 0) {
                    os << "-";
                    c = -c;
                }
            } else {
                os << (sgn(c) < 0 ? "-" : "+");
                if (sgn(c) < 0) c = -c;
            }
            bool has_var = total_degree(t.exps) > 0;
            if (c != 1 || !has_var) {
                os << c.get_str();
                if (has_var) os << "*";
            }
            bool firstv = true;
            for (std::size_t i = 0; i < t.exps.size(); ++i) {
                if (t.exps[i] == 0) continue;
                if (!firstv) os << "*";
                firstv = false;
                os << vars_[i];
                if (t.exps[i] > 1) os << "^" << t.exps[i];
            }
        }
        return os.str();
    }

    /// Parses the canonical polynomial text grammar over declared variables:
    ///   poly := term (('+'|'-') term)*
    ///   term := factor ('*' factor)*
    ///   factor := rational | var ('^' uint)?
    /// Whitespace is insignificant. Coefficients may be integers, p/q
    /// fractions, or terminating decimals.
    static MultiPoly parse(const std::string& text,
                           const std::vector<std::string>& vars);

    /// Extends both polynomials to the union variable universe.
    static void unify(MultiPoly& a, MultiPoly& b) {
        if (a.vars_ == b.vars_) return;
        std::vector<std::string> u = a.vars_;
        for (const auto& v : b.vars_)
            if (std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
        a.reindex(u);
        b.reindex(u);
    }

  private:
    static bool term_desc(const Term& x, const Term& y) {
        return grlex_cmp(x.exps, y.exps) > 0;
    }

    bool terms_equal(const MultiPoly& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].exps != o.terms_[i].exps ||
                terms_[i].coeff != o.terms_[i].coeff)
                return false;
        return true;
    }

    static MultiPoly from_map(const std::vector<std::string>& vars,
                              const std::map<ExpVec, Rational>& acc) {
        MultiPoly out(vars);
        for (const auto& [e, c] : acc)
            if (sgn(c) != 0) out.terms_.push_back({e, c});
        std::sort(out.terms_.begin(), out.terms_.end(), term_desc);
        return out;
    }

    static MultiPoly merged(MultiPoly a, MultiPoly b, bool subtract) {
        MultiPoly out(a.vars_);
        out.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            int cmp;
            if (i == a.terms_.size())
                cmp = -1;
            else if (j == b.terms_.size())
                cmp = 1;
            else
                cmp = grlex_cmp(a.terms_[i].exps, b.terms_[j].exps);
            if (cmp > 0) {
                out.terms_.push_back(std::move(a.terms_[i++]));
            } else if (cmp < 0) {
                Term t = std::move(b.terms_[j++]);
                if (subtract) t.coeff = -t.coeff;
                out.terms_.push_back(std::move(t));
            } else {
                Rational c = subtract ? Rational(a.terms_[i].coeff - b.terms_[j].coeff)
                                      : Rational(a.terms_[i].coeff + b.terms_[j].coeff);
                if (sgn(c) != 0)
                    out.terms_.push_back({a.terms_[i].exps, std::move(c)});
                ++i;
                ++j;
            }
        }
        return out;
    }

    void reindex(const std::vector<std::string>& target) {
        std::vector<std::size_t> where(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = std::find(target.begin(), target.end(), vars_[i]);
            where[i] = static_cast<std::size_t>(it - target.begin());
        }
        for (auto& t : terms_) {
            ExpVec e(target.size(), 0);
            for (std::size_t i = 0; i < t.exps.size(); ++i) e[where[i]] = t.exps[i];
            t.exps = std::move(e);
        }
        vars_ = target;
        std::sort(terms_.begin(), terms_.end(), term_desc);
    }

    static MultiPoly den_power(const MultiPoly& den, unsigned e) {
        return den.pow(e);
    }

    static Rational eval_rec(const std::vector<Term>& terms, std::size_t var,
                             const std::vector<Rational>& point);

    std::vector<std::string> vars_;
    std::vector<Term> terms_;

    friend class UniView;
};

// ------------------------------------------------------------------ eval

inline Rational MultiPoly::eval_rec(const std::vector<Term>& terms, std::size_t var,
                                    const std::vector<Rational>& point) {
    if (terms.empty()) return Rational(0);
    if (var == point.size()) {
        Rational s(0);
        for (const auto& t : terms) s += t.coeff;
        return s;
    }
    // Group by exponent of `var` (terms are grlex-sorted, not sorted by this
    // exponent, so bucket first), then Horner over descending powers.
    std::map<std::uint32_t, std::vector<Term>> buckets;
    for (const auto& t : terms) buckets[t.exps[var]].push_back(t);
    Rational acc(0);
    std::uint32_t prev_exp = 0;
    bool first = true;
    for (auto it = buckets.rbegin(); it != buckets.rend(); ++it) {
        if (!first) acc *= pow_rat(point[var], prev_exp - it->first);
        acc += eval_rec(it->second, var + 1, point);
        prev_exp = it->first;
        first = false;
    }
    if (prev_exp > 0) acc *= pow_rat(point[var], prev_exp);
    return acc;
}

// ----------------------------------------------------------------- parser

namespace detail {

class PolyParser {
  public:
    PolyParser(const std::string& text, const std::vector<std::string>& vars)
        : s_(text), vars_(vars) {}

    MultiPoly run() {
        MultiPoly acc(vars_);
        skip_ws();
        bool negate = false;
        if (peek() == '+' || peek() == '-') negate = (get() == '-');
        for (;;) {
            MultiPoly term = parse_term();
            acc = negate ? acc - term : acc + term;
            skip_ws();
            if (pos_ >= s_.size()) break;
            char c = get();
            if (c == '+')
                negate = false;
            else if (c == '-')
                negate = true;
            else
                throw ParseError("expected '+' or '-', got '" + std::string(1, c) + "'",
                                 pos_ - 1);
        }
        return acc;
    }

  private:
    MultiPoly parse_term() {
        MultiPoly t = parse_factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                get();
                t = t * parse_factor();
            } else {
                return t;
            }
        }
    }

    MultiPoly parse_factor() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return parse_variable();
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }

    MultiPoly parse_number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
            ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
        }
        try {
            return MultiPoly::constant(parse_rational(s_.substr(start, pos_ - start)),
                                       vars_);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), start);
        }
    }

    MultiPoly parse_variable() {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        if (std::find(vars_.begin(), vars_.end(), name) == vars_.end())
            throw ParseError("unknown variable '" + name + "'", start);
        MultiPoly v = MultiPoly::variable(name, vars_);
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            std::size_t es = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (es == pos_) throw ParseError("expected exponent", pos_);
            unsigned long e = std::stoul(s_.substr(es, pos_ - es));
            v = v.pow(static_cast<unsigned>(e));
        }
        return v;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return s_[pos_++]; }

    const std::string& s_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline MultiPoly MultiPoly::parse(const std::string& text,
                                  const std::vector<std::string>& vars) {
    return detail::PolyParser(text, vars).run();
}

}  // namespace cycleforge::ratpoly
