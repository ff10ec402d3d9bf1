#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cycleforge/multipoly.hpp"

namespace cycleforge::isolate {

using ratpoly::MultiPoly;
using ratpoly::Rational;

struct Interval {
    Rational lo, hi;

    Interval() = default;
    Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (this->lo > this->hi)
            throw std::invalid_argument("Interval: lo > hi");
    }

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool is_point() const { return lo == hi; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool intersects(const Interval& o) const { return !(hi < o.lo || o.hi < lo); }
    bool contains_interval(const Interval& o) const {
        return lo <= o.lo && o.hi <= hi;
    }
};

/// Product of per-variable intervals, ordered like the ambient variable list.
struct Box {
    std::vector<std::string> vars;
    std::vector<Interval> iv;

    Box() = default;
    Box(std::vector<std::string> v, std::vector<Interval> i)
        : vars(std::move(v)), iv(std::move(i)) {
        if (vars.size() != iv.size())
            throw std::invalid_argument("Box: arity mismatch");
        if (vars.empty()) throw std::invalid_argument("Box: empty");
    }

    const Interval& of(const std::string& name) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return iv[i];
        throw std::invalid_argument("Box: no variable '" + name + "'");
    }

    Rational max_width() const {
        Rational w(0);
        for (const auto& i : iv) w = std::max(w, i.width());
        return w;
    }

    std::vector<Rational> midpoint() const {
        std::vector<Rational> m;
        m.reserve(iv.size());
        for (const auto& i : iv) m.push_back(i.mid());
        return m;
    }

    bool contains(const Box& o) const {
        if (vars != o.vars) return false;
        for (std::size_t i = 0; i < iv.size(); ++i)
            if (!iv[i].contains_interval(o.iv[i])) return false;
        return true;
    }
};

enum class SignStatus { Positive, Negative, Indeterminate };

inline const char* to_string(SignStatus s) {
    switch (s) {
        case SignStatus::Positive: return "Positive";
        case SignStatus::Negative: return "Negative";
        default: return "Indeterminate";
    }
}

/// Rigorous range enclosure of a polynomial over a box, with the sign verdict
/// the bounds certify.
struct SignCert {
    SignStatus status = SignStatus::Indeterminate;
    Rational lower_bound;
    Rational upper_bound;
};

/// Signals a box straddling zero in some variable; the corner rule needs a
/// bisection at zero first.
struct StraddlesZero : std::runtime_error {
    std::string variable;
    explicit StraddlesZero(const std::string& var)
        : std::runtime_error("box straddles zero in variable '" + var +
                             "'; bisect at zero first"),
          variable(var) {}
};

/// Range enclosure by the signed-corner rule: split p into its positive- and
/// negative-coefficient parts; on a box inside the closed positive orthant,
///   upper = p+(upper corner) + p-(lower corner),
///   lower = p+(lower corner) + p-(upper corner).
/// Variables with nonpositive range are reflected (v -> -v) first.
inline SignCert box_sign(const MultiPoly& p, const Box& box) {
    MultiPoly q = p;
    std::vector<Rational> lo(box.vars.size()), hi(box.vars.size());
    for (std::size_t i = 0; i < box.vars.size(); ++i) {
        const auto& I = box.iv[i];
        if (sgn(I.lo) >= 0) {
            lo[i] = I.lo;
            hi[i] = I.hi;
        } else if (sgn(I.hi) <= 0) {
            q = q.negate_var(box.vars[i]);
            lo[i] = -I.hi;
            hi[i] = -I.lo;
        } else {
            throw StraddlesZero(box.vars[i]);
        }
    }
    // Bind in the polynomial's own variable order; variables of p that are
    // not in the box are rejected.
    std::vector<Rational> up_pt(q.vars().size()), lo_pt(q.vars().size());
    for (std::size_t i = 0; i < q.vars().size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < box.vars.size(); ++j) {
            if (box.vars[j] == q.vars()[i]) {
                lo_pt[i] = lo[j];
                up_pt[i] = hi[j];
                found = true;
                break;
            }
        }
        if (!found && q.degree_in(q.vars()[i]) > 0)
            throw std::invalid_argument("box_sign: unbound variable '" +
                                        q.vars()[i] + "'");
    }
    Rational upper(0), lower(0);
    for (const auto& t : q.terms()) {
        Rational mon_lo(1), mon_hi(1);
        for (std::size_t i = 0; i < t.exps.size(); ++i) {
            if (t.exps[i] == 0) continue;
            mon_lo *= ratpoly::pow_rat(lo_pt[i], t.exps[i]);
            mon_hi *= ratpoly::pow_rat(up_pt[i], t.exps[i]);
        }
        if (sgn(t.coeff) > 0) {
            lower += t.coeff * mon_lo;
            upper += t.coeff * mon_hi;
        } else {
            lower += t.coeff * mon_hi;
            upper += t.coeff * mon_lo;
        }
    }
    SignCert cert;
    cert.lower_bound = lower;
    cert.upper_bound = upper;
    if (sgn(lower) > 0)
        cert.status = SignStatus::Positive;
    else if (sgn(upper) < 0)
        cert.status = SignStatus::Negative;
    else
        cert.status = SignStatus::Indeterminate;
    return cert;
}

}  // namespace cycleforge::isolate
