#pragma once

#include <map>
#include <string>
#include <vector>

#include "cycleforge/interval.hpp"
#include "cycleforge/isolate.hpp"

namespace cycleforge::isolate {

using ratpoly::MultiPoly;
using ratpoly::Rational;

/// Parameter-space regions of the reduced model, in the (K, a, b) universe.
/// Square roots in the definitions are rewritten as polynomial case splits:
///   b > -2*sqrt(a)              <=>  b >= 0  or  b^2 < 4a
///   b > 1/K - 1 - 2*sqrt(a/K)   <=>  T >= 0  or  T^2 < 4aK,  T = Kb+K-1
///   b < 1/K - 1 - 2*sqrt(a/K)   <=>  T < 0  and  T^2 > 4aK
enum class Region { Lambda, Sigma1, Sigma2, Sigma3 };

inline const char* to_string(Region r) {
    switch (r) {
        case Region::Lambda: return "Lambda";
        case Region::Sigma1: return "Sigma1";
        case Region::Sigma2: return "Sigma2";
        default: return "Sigma3";
    }
}

namespace region_detail {

inline const std::vector<std::string>& kab() {
    static const std::vector<std::string> v{"K", "a", "b"};
    return v;
}

struct Polys {
    MultiPoly K_minus_1, a, b, d, e, disc_a, T, disc_T, s3;
};

inline const Polys& polys() {
    static const Polys P = [] {
        const auto& v = kab();
        auto parse = [&](const char* s) { return MultiPoly::parse(s, v); };
        Polys p;
        p.K_minus_1 = parse("K - 1");
        p.a = parse("a");
        p.b = parse("b");
        p.d = parse("K*b + 2*K + a - 1");
        p.e = parse("K*a - K - 2*a - b");
        p.disc_a = parse("4*a - b^2");           // > 0 <=> |b| < 2 sqrt a
        p.T = parse("K*b + K - 1");
        p.disc_T = parse("4*a*K") - p.T * p.T;   // > 0 <=> T^2 < 4aK
        p.s3 = parse("1 - K - 2*a - K*b");       // > 0 <=> Kb+K+2a-1 < 0
        return p;
    }();
    return P;
}

/// Tri-state "> 0" for a point (never Undetermined) or a box.
inline Membership pos_at(const MultiPoly& p, const std::vector<Rational>& pt) {
    return sgn(p.eval(pt)) > 0 ? Membership::Inside : Membership::Outside;
}
inline Membership pos_on(const MultiPoly& p, const Box& box) {
    SignCert c;
    try {
        c = box_sign(p, box);
    } catch (const StraddlesZero&) {
        return Membership::Undetermined;
    }
    if (c.status == SignStatus::Positive) return Membership::Inside;
    if (c.status == SignStatus::Negative) return Membership::Outside;
    if (sgn(c.upper_bound) == 0) return Membership::Outside;  // p <= upper = 0
    return Membership::Undetermined;
}
inline Membership nonneg_on(const MultiPoly& p, const Box& box) {
    SignCert c;
    try {
        c = box_sign(p, box);
    } catch (const StraddlesZero&) {
        return Membership::Undetermined;
    }
    if (sgn(c.lower_bound) >= 0) return Membership::Inside;
    if (c.status == SignStatus::Negative) return Membership::Outside;
    return Membership::Undetermined;
}
inline Membership nonzero_on(const MultiPoly& p, const Box& box) {
    SignCert c;
    try {
        c = box_sign(p, box);
    } catch (const StraddlesZero&) {
        return Membership::Undetermined;
    }
    return c.status == SignStatus::Indeterminate ? Membership::Undetermined
                                                 : Membership::Inside;
}

template <class PosFn, class NonnegFn, class NonzeroFn>
Membership eval_region(Region r, PosFn pos, NonnegFn nonneg, NonzeroFn nonzero) {
    using namespace k3;
    const auto& P = polys();
    Membership base = conj(pos(P.K_minus_1), pos(P.a));
    Membership b_gt_m2sqrta = disj(nonneg(P.b), pos(P.disc_a));
    switch (r) {
        case Region::Lambda:
            return conj(conj(base, b_gt_m2sqrta), conj(pos(P.d), pos(P.e)));
        case Region::Sigma1: {
            Membership lower = disj(nonneg(P.T), pos(P.disc_T));
            return conj(conj(base, b_gt_m2sqrta), conj(lower, pos(P.e)));
        }
        case Region::Sigma2: {
            // b < 1/K-1-2 sqrt(a/K)  <=>  T < 0 and T^2 > 4aK
            Membership t_neg = neg(nonneg(P.T));
            Membership t2_big = neg(nonneg(P.disc_T));  // T^2 - 4aK > 0
            Membership upper = conj(t_neg, t2_big);
            return conj(conj(base, b_gt_m2sqrta), conj(upper, nonzero(P.d)));
        }
        case Region::Sigma3:
        default:
            return conj(pos(P.d), pos(P.s3));
    }
}

}  // namespace region_detail

/// Certified membership of an exact point (K, a, b).
inline Membership region_membership(const std::vector<Rational>& point, Region r) {
    using namespace region_detail;
    auto pos = [&](const MultiPoly& p) { return pos_at(p, point); };
    auto nonneg = [&](const MultiPoly& p) {
        return sgn(p.eval(point)) >= 0 ? Membership::Inside : Membership::Outside;
    };
    auto nonzero = [&](const MultiPoly& p) {
        return sgn(p.eval(point)) != 0 ? Membership::Inside : Membership::Outside;
    };
    return eval_region(r, pos, nonneg, nonzero);
}

/// Certified membership of a whole box: Inside/Outside only when every point
/// of the box is certified; boxes straddling a predicate boundary come back
/// Undetermined.
inline Membership region_membership(const Box& box, Region r) {
    using namespace region_detail;
    auto pos = [&](const MultiPoly& p) { return pos_on(p, box); };
    auto nonneg = [&](const MultiPoly& p) { return nonneg_on(p, box); };
    auto nonzero = [&](const MultiPoly& p) { return nonzero_on(p, box); };
    return eval_region(r, pos, nonneg, nonzero);
}

/// Conjunction of strict "p > 0" predicates (custom region support).
inline Membership region_membership(const std::vector<Rational>& point,
                                    const std::vector<MultiPoly>& positive_preds) {
    Membership m = Membership::Inside;
    for (const auto& p : positive_preds)
        m = k3::conj(m, region_detail::pos_at(p, point));
    return m;
}

inline Membership region_membership(const Box& box,
                                    const std::vector<MultiPoly>& positive_preds) {
    Membership m = Membership::Inside;
    for (const auto& p : positive_preds)
        m = k3::conj(m, region_detail::pos_on(p, box));
    return m;
}

}  // namespace cycleforge::isolate
