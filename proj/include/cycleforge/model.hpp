#pragma once
#include <limits>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cycleforge/isolate.hpp"
#include "cycleforge/multipoly.hpp"
#include "cycleforge/unipoly.hpp"
#include "cycleforge/uniview.hpp"

namespace cycleforge::model {

using isolate::Interval;
using ratpoly::Rational;
using ratpoly::UniPoly;

/// Original 7-parameter system: prey logistic growth with a sigmoidal
/// predation term, predator of Leslie form with prey-proportional capacity.
struct ModelParams {
    Rational r, K, m, a, s, h, b;

    /// r,K,m,a,s,h > 0 and b > -2 sqrt(a)  (so a x^2 + b x + 1 > 0 on x > 0).
    bool valid() const {
        if (sgn(r) <= 0 || sgn(K) <= 0 || sgn(m) <= 0 || sgn(a) <= 0 ||
            sgn(s) <= 0 || sgn(h) <= 0)
            return false;
        return sgn(b) >= 0 || b * b < 4 * a;
    }
};

/// Reduced 4-parameter form (equilibrium scaled to (1,1)).
struct ReducedParams {
    Rational s, K, a, b;

    bool in_domain() const {
        if (sgn(s) <= 0 || K <= 1 || sgn(a) <= 0) return false;
        return sgn(b) >= 0 || b * b < 4 * a;
    }
};

struct JacobianData {
    Rational trace, det;
    Rational d;  // K b + 2 K + a - 1
    Rational e;  // K a - K - 2 a - b
};

inline JacobianData jacobian_interior(const ReducedParams& q) {
    JacobianData j;
    j.d = q.K * q.b + 2 * q.K + q.a - 1;
    j.e = q.K * q.a - q.K - 2 * q.a - q.b;
    Rational ks = q.K * q.s * (q.a + q.b + 1);
    j.trace = j.e - ks;
    j.det = ks * j.d;
    return j;
}

struct DiscriminantBundle {
    Rational Delta;      // original-parameter cubic discriminant-style value
    Rational DeltaBar;   // (Kb+K-1)^2 - 4aK for the reduced quadratic factor
    Rational mu2, mu1, mu0;  // psi(s) = mu2 s^2 + mu1 s + mu0
    Rational DeltaTilde;     // mu1^2 - 4 mu2 mu0
};

inline DiscriminantBundle discriminants(const ModelParams& p) {
    DiscriminantBundle d;
    Rational c2 = p.K * p.m * p.h / p.r + p.b - p.K * p.a;
    Rational A = c2 * c2 + 3 * p.a * (p.K * p.b - 1);
    Rational B =
        27 * p.a * p.a * p.K + 9 * p.a * (1 - p.K * p.b) * c2 - 2 * c2 * c2 * c2;
    d.Delta = B * B - 4 * A * A * A;
    d.DeltaBar = (p.K * p.b + p.K - 1) * (p.K * p.b + p.K - 1) - 4 * p.a * p.K;
    Rational apb1 = p.a + p.b + 1;
    d.mu2 = p.K * p.K * apb1 * apb1;
    d.mu1 = -2 * p.K * apb1 * (p.K * p.a + 2 * p.K * p.b + 3 * p.K - p.b - 2);
    Rational e = p.K * p.a - p.K - 2 * p.a - p.b;
    d.mu0 = e * e;
    d.DeltaTilde = d.mu1 * d.mu1 - 4 * d.mu2 * d.mu0;
    return d;
}

inline DiscriminantBundle discriminants(const ReducedParams& q) {
    // reduced form has m = (a+b+1)(1-1/K), h = 1, r = 1
    ModelParams p{Rational(1), q.K, (q.a + q.b + 1) * (1 - Rational(1) / q.K),
                  q.a, q.s, Rational(1), q.b};
    return discriminants(p);
}

// ------------------------------------------------------------- equilibria

struct RootInfo {
    std::optional<Rational> exact;  // set when the root is rational
    Interval box;                   // always an enclosure
    int multiplicity = 1;
    double approx = 0.0;
};

/// Smallest-denominator rational inside [lo, hi] (Stern-Brocot walk); used to
/// recognize exact rational roots from isolating intervals.
inline Rational simplest_rational_in(const Rational& lo, const Rational& hi) {
    if (lo == hi) return lo;
    if (sgn(lo) < 0 && sgn(hi) >= 0) return Rational(0);
    if (sgn(hi) < 0) return -simplest_rational_in(-hi, -lo);
    // 0 <= lo < hi: continued-fraction style descent
    ratpoly::Integer fl = ratpoly::Integer(lo.get_num() / lo.get_den());
    if (Rational(fl) >= lo) return Rational(fl);  // integer inside
    if (Rational(fl + 1) <= hi) return Rational(fl + 1);
    Rational lo_f = lo - Rational(fl), hi_f = hi - Rational(fl);
    Rational inner = simplest_rational_in(Rational(1) / hi_f, Rational(1) / lo_f);
    return Rational(fl) + Rational(1) / inner;
}

/// Roots of a rational-coefficient polynomial inside (lo, hi), ascending,
/// with multiplicity flags and exact values when the roots are rational.
inline std::vector<RootInfo> poly_roots_in(const UniPoly& p, const Interval& dom,
                                           const Rational& width) {
    std::vector<RootInfo> out;
    UniPoly sf = p.squarefree_part();
    if (sf.degree() < 1) return out;
    auto boxes = isolate::isolate_univariate(sf, dom, width);
    UniPoly g = UniPoly::gcd(p, p.derivative());
    for (auto iv : boxes) {
        RootInfo info;
        iv = isolate::refine_root(sf, iv, std::min(width, ratpoly::dyadic_eps(80)));
        Rational cand = simplest_rational_in(iv.lo, iv.hi);
        if (sgn(p.eval(cand)) == 0) {
            info.exact = cand;
            info.box = Interval(cand, cand);
        } else {
            info.box = iv;
        }
        // multiplicity via the derivative-gcd filtration
        UniPoly q = g;
        while (q.degree() >= 1) {
            bool has = info.exact ? sgn(q.eval(*info.exact)) == 0
                                  : ratpoly::SturmChain(q.squarefree_part())
                                            .count(info.box.lo, info.box.hi) > 0;
            if (!has) break;
            ++info.multiplicity;
            q = UniPoly::gcd(q, q.derivative());
        }
        info.approx = info.exact ? info.exact->get_d()
                                 : (info.box.lo.get_d() + info.box.hi.get_d()) / 2;
        out.push_back(std::move(info));
    }
    return out;
}

/// Interior equilibrium abscissas of the original system: roots of
///   a x^3 + (K m h / r + b - K a) x^2 + (1 - K b) x - K  in (0, K).
inline std::vector<RootInfo> interior_equilibria(const ModelParams& p) {
    UniPoly cubic({-p.K, 1 - p.K * p.b, p.K * p.m * p.h / p.r + p.b - p.K * p.a,
                   p.a});
    return poly_roots_in(cubic, Interval(Rational(0), p.K),
                         ratpoly::dyadic_eps(40));
}

/// Interior equilibria of the reduced system: roots of
///   (x - 1)(a x^2 + (K b + K - 1) x + K)  in (0, K).
inline std::vector<RootInfo> reduced_equilibria(const ReducedParams& q) {
    UniPoly p = UniPoly({Rational(-1), Rational(1)}) *
                UniPoly({q.K, q.K * q.b + q.K - 1, q.a});
    return poly_roots_in(p, Interval(Rational(0), q.K), ratpoly::dyadic_eps(40));
}

/// Parameter projection onto the reduced form at an interior equilibrium:
/// (s, K, a, b) -> (s/r, K/x*, a x*^2, b x*). The equilibrium identity
/// m h x*^2 / r = (1 - x*/K)(a x*^2 + b x* + 1) is verified exactly.
inline ReducedParams normalize(const ModelParams& p, const Rational& x_star) {
    if (!(sgn(x_star) > 0 && x_star < p.K))
        throw std::invalid_argument("normalize: x* outside (0, K)");
    Rational lhs = p.m * p.h * x_star * x_star / p.r;
    Rational rhs =
        (1 - x_star / p.K) * (p.a * x_star * x_star + p.b * x_star + 1);
    if (lhs != rhs)
        throw std::invalid_argument("normalize: x* is not an interior equilibrium");
    return ReducedParams{p.s / p.r, p.K / x_star, p.a * x_star * x_star,
                         p.b * x_star};
}

// ---------------------------------------------------------- classification

enum class EquilibriumTag {
    HyperbolicSaddle,
    Degenerate,
    StableNode,
    StableFocus,
    UnstableNode,
    UnstableFocus,
    WeakFocusOrCenter,
};

inline const char* to_string(EquilibriumTag t) {
    switch (t) {
        case EquilibriumTag::HyperbolicSaddle: return "HyperbolicSaddle";
        case EquilibriumTag::Degenerate: return "Degenerate";
        case EquilibriumTag::StableNode: return "StableNode";
        case EquilibriumTag::StableFocus: return "StableFocus";
        case EquilibriumTag::UnstableNode: return "UnstableNode";
        case EquilibriumTag::UnstableFocus: return "UnstableFocus";
        default: return "WeakFocusOrCenter";
    }
}

struct EquilibriumReport {
    Rational x_star{1}, y_star{1};
    Rational trace, det;
    EquilibriumTag tag;
    /// set when s falls exactly on a node/focus boundary (s = s1, s2 or s3,
    /// which the closed-interval cases of the classification leave implicit)
    bool node_focus_boundary = false;
    std::optional<Rational> s_star;  // e/(K(a+b+1)), exact, when e > 0
    std::optional<Rational> s1;      // -mu1/mu2, exact, when e = 0
    double s2 = std::numeric_limits<double>::quiet_NaN();
    double s3 = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {
/// Exact comparison of s against s2/s3 = (g -+ 2 sqrt(rad)) / (K(a+b+1)):
/// returns -1 (s < s2), 0 (s = s2), +1 (s2 < s < s3), 2 (s = s3), 3 (s > s3).
/// rad = (K-1)(a+b+1) d must be > 0.
inline int position_vs_s23(const Rational& s, const Rational& g,
                           const Rational& denom, const Rational& rad) {
    Rational t = g - denom * s;  // s < s2 <=> t > 2 sqrt(rad), etc.
    Rational t2 = t * t, four_rad = 4 * rad;
    if (sgn(t) > 0 && t2 > four_rad) return -1;
    if (sgn(t) > 0 && t2 == four_rad) return 0;
    if (sgn(t) < 0 && t2 == four_rad) return 2;
    if (sgn(t) < 0 && t2 > four_rad) return 3;
    return 1;
}
}  // namespace detail

/// Stability classification of the interior equilibrium E*(1,1) of the
/// reduced system -- the full decision tree over (d, e, g, s).
inline EquilibriumReport classify_interior(const ReducedParams& q) {
    EquilibriumReport rep;
    JacobianData j = jacobian_interior(q);
    rep.trace = j.trace;
    rep.det = j.det;
    const Rational& d = j.d;
    const Rational& e = j.e;
    if (sgn(d) < 0) {
        rep.tag = EquilibriumTag::HyperbolicSaddle;
        return rep;
    }
    if (sgn(d) == 0) {
        rep.tag = EquilibriumTag::Degenerate;
        return rep;
    }
    Rational g = q.K * q.a + 2 * q.K * q.b + 3 * q.K - q.b - 2;
    Rational denom = q.K * (q.a + q.b + 1);
    Rational rad = (q.K - 1) * (q.a + q.b + 1) * d;
    double sq = std::sqrt(rad.get_d());
    rep.s2 = (g.get_d() - 2 * sq) / denom.get_d();
    rep.s3 = (g.get_d() + 2 * sq) / denom.get_d();

    if (sgn(e) > 0) rep.s_star = e / denom;

    if (sgn(e) < 0) {
        // locally asymptotically stable; node vs focus by psi(s)
        if (sgn(g) <= 0) {
            rep.tag = EquilibriumTag::StableNode;
            return rep;
        }
        int pos = detail::position_vs_s23(q.s, g, denom, rad);
        rep.tag = pos == 1 ? EquilibriumTag::StableFocus : EquilibriumTag::StableNode;
        rep.node_focus_boundary = (pos == 0 || pos == 2);
        return rep;
    }
    if (sgn(e) == 0) {
        // g = 2d > 0; psi has zeros {0, s1}
        Rational s1 = 2 * g / denom;  // -mu1/mu2
        rep.s1 = s1;
        if (q.s > s1)
            rep.tag = EquilibriumTag::StableNode;
        else if (q.s == s1) {
            rep.tag = EquilibriumTag::StableNode;
            rep.node_focus_boundary = true;
        } else
            rep.tag = EquilibriumTag::StableFocus;
        return rep;
    }
    // e > 0: s* = e/denom lies in (s2, s3)
    Rational s_star = *rep.s_star;
    if (q.s == s_star) {
        rep.tag = EquilibriumTag::WeakFocusOrCenter;
        return rep;
    }
    int pos = detail::position_vs_s23(q.s, g, denom, rad);
    if (pos == 3) {
        rep.tag = EquilibriumTag::StableNode;
    } else if (pos == -1) {
        rep.tag = EquilibriumTag::UnstableNode;
    } else if (pos == 0 || pos == 2) {
        rep.tag = q.s > s_star ? EquilibriumTag::StableNode
                               : EquilibriumTag::UnstableNode;
        rep.node_focus_boundary = true;
    } else {
        rep.tag = q.s > s_star ? EquilibriumTag::StableFocus
                               : EquilibriumTag::UnstableFocus;
    }
    return rep;
}

// ------------------------------------------------------------- layout

enum class LayoutCase {
    UniqueAntiSaddle,   // b above the tangency threshold
    UniqueDegenerate,   // tangency with a = K
    TwoEquilibriaOuter, // tangency elsewhere: E* plus a degenerate E2*
    TwoEquilibriaInner, // d = 0: E*(1,1) degenerate plus an anti-saddle
    ThreeDistinct,
};

inline const char* to_string(LayoutCase c) {
    switch (c) {
        case LayoutCase::UniqueAntiSaddle: return "UniqueAntiSaddle";
        case LayoutCase::UniqueDegenerate: return "UniqueDegenerate";
        case LayoutCase::TwoEquilibriaOuter: return "TwoEquilibriaOuter";
        case LayoutCase::TwoEquilibriaInner: return "TwoEquilibriaInner";
        default: return "ThreeDistinct";
    }
}

struct LayoutReport {
    LayoutCase layout;
    // abscissas of the further interior equilibria (besides x = 1), doubles
    std::vector<double> other_roots;
};

/// Number/kind of interior equilibria of the reduced system as a function of
/// (K, a, b): the quadratic factor a x^2 + (Kb+K-1) x + K against x = 1.
inline LayoutReport classify_layout(const Rational& K, const Rational& a,
                                    const Rational& b) {
    if (!(K > 1) || sgn(a) <= 0)
        throw std::invalid_argument("classify_layout: need K > 1, a > 0");
    if (sgn(b) < 0 && b * b >= 4 * a)
        throw std::invalid_argument("classify_layout: need b > -2 sqrt(a)");
    LayoutReport rep;
    Rational T = K * b + K - 1;
    Rational disc = T * T - 4 * a * K;  // DeltaBar
    bool below = sgn(T) < 0 && sgn(disc) > 0;   // b < 1/K - 1 - 2 sqrt(a/K)
    bool at = sgn(T) < 0 && sgn(disc) == 0;     // equality
    if (!below && !at) {
        rep.layout = LayoutCase::UniqueAntiSaddle;
        return rep;
    }
    if (at) {
        if (a == K) {
            rep.layout = LayoutCase::UniqueDegenerate;
        } else {
            rep.layout = LayoutCase::TwoEquilibriaOuter;
            rep.other_roots.push_back(std::sqrt(Rational(K / a).get_d()));
        }
        return rep;
    }
    Rational d = K * b + 2 * K + a - 1;
    if (sgn(d) == 0) {  // b = (1-a)/K - 2: x=1 is a double root
        rep.layout = LayoutCase::TwoEquilibriaInner;
        rep.other_roots.push_back(Rational(K / a).get_d());
        return rep;
    }
    rep.layout = LayoutCase::ThreeDistinct;
    double sq = std::sqrt(disc.get_d());
    double x2 = (Rational(1 - K * b - K).get_d() - sq) / (2 * a.get_d());
    double x3 = (Rational(1 - K * b - K).get_d() + sq) / (2 * a.get_d());
    rep.other_roots = {x2, x3};
    return rep;
}

// ------------------------------------------------------------- origin

struct OriginReport {
    std::vector<double> directions;  // characteristic angles in [0, pi/2]
    int case_index;                  // 1: s<1, 2: s=1, 3: s>1
};

/// Characteristic directions at the origin from
///   G(theta) = K sin(theta) cos(theta) [ (s-1) cos(theta) - s sin(theta) ].
inline OriginReport origin_analysis(const Rational& s) {
    if (sgn(s) <= 0) throw std::invalid_argument("origin_analysis: s > 0 required");
    OriginReport rep;
    rep.directions = {0.0, std::asin(1.0)};  // 0 and pi/2
    if (s < 1)
        rep.case_index = 1;
    else if (s == 1)
        rep.case_index = 2;
    else {
        rep.case_index = 3;
        double sd = s.get_d();
        rep.directions.insert(rep.directions.begin() + 1,
                              std::atan(1.0 - 1.0 / sd));
    }
    return rep;
}

// --------------------------------------------- three-equilibria new charts

/// (K, alpha, beta, s) with 1 < alpha < beta < K: the roots of the interior
/// cubic become {1, alpha, beta}.
struct ThreeEqParams {
    Rational K, alpha, beta, s;

    /// 1 < alpha < beta < K, s > 0, and the positivity constraint
    /// alpha beta - K alpha - K beta - K alpha beta + 2 K sqrt(K alpha beta) > 0
    /// (equivalently b > -2 sqrt(a) after the parameter map).
    bool valid() const {
        if (!(1 < alpha && alpha < beta && beta < K) || sgn(s) <= 0) return false;
        Rational W = K * alpha + K * beta + K * alpha * beta - alpha * beta;
        if (sgn(W) <= 0) return true;
        return 4 * K * K * K * alpha * beta > W * W;
    }
};

/// Vieta inversion: a = K/(alpha beta), b = 1/K - 1/alpha - 1/beta - 1.
inline ReducedParams three_eq_reparam(const ThreeEqParams& t) {
    if (!t.valid()) throw std::invalid_argument("three_eq_reparam: invalid chart");
    return ReducedParams{t.s, t.K, t.K / (t.alpha * t.beta),
                         Rational(1) / t.K - Rational(1) / t.alpha -
                             Rational(1) / t.beta - 1};
}

/// Traces of the equivalent time-rescaled three-equilibria system at the two
/// anti-saddles E*(1,1) and E3*(beta,beta) (first Lyapunov quantities V1).
inline Rational trace_E1(const ThreeEqParams& t) {
    const Rational &K = t.K, &al = t.alpha, &be = t.beta, &s = t.s;
    return -K * K * al * be + K * K * K + K * al * be - 2 * K * K + K * al +
           K * be - al * be - s * K * (K - al) * (K - be);
}

inline Rational trace_E3(const ThreeEqParams& t) {
    const Rational &K = t.K, &al = t.alpha, &be = t.beta, &s = t.s;
    Rational head = (K * K * K * be - 2 * K * K * be * be + K * al * be * be -
                     K * K * al + K * al * be + K * be * be - al * be * be) *
                    be * be;
    return head - s * K * be * be * be * (K - 1) * (K - al);
}

struct SimultaneousHopf {
    Rational s0, alpha0;
    Rational V1_at_E1, V1_at_E3;  // both exactly zero at (s0, alpha0)
    ThreeEqParams params;         // (K, alpha0, beta, s0)
};

/// Simultaneous weak-focus condition: the unique (s, alpha) zeroing both
/// traces, in closed form.
inline SimultaneousHopf simultaneous_hopf(const Rational& K, const Rational& beta) {
    if (!(1 < beta && beta < K))
        throw std::invalid_argument("simultaneous_hopf: need 1 < beta < K");
    Rational l = (beta + 1) * K * K - 4 * beta * K + beta * beta + beta;
    // l(K) > l(1) = (beta-1)^2 > 0 on K > beta > 1
    Rational s0 = (K * K * K * beta - 2 * K * K * beta * beta + K * K * K -
                   2 * K * K * beta + 3 * K * beta * beta - 2 * K * K +
                   3 * K * beta - 2 * beta * beta) /
                  (K * l);
    Rational alpha0 = K * beta * (3 * K * K - 2 * K * beta - 2 * K + beta) /
                      ((K * beta + K - beta) * (K * K - beta));
    SimultaneousHopf out;
    out.s0 = s0;
    out.alpha0 = alpha0;
    out.params = ThreeEqParams{K, alpha0, beta, s0};
    out.V1_at_E1 = trace_E1(out.params);
    out.V1_at_E3 = trace_E3(out.params);
    return out;
}

/// First-order trace responses to the perturbation s = s0 + eps at fixed
/// alpha0: both traces are exactly linear in eps.
inline Rational trace_E1_response(const Rational& K, const Rational& beta,
                                  const Rational& alpha0, const Rational& eps) {
    return -K * (K - beta) * (K - alpha0) * eps;
}
inline Rational trace_E3_response(const Rational& K, const Rational& beta,
                                  const Rational& alpha0, const Rational& eps) {
    return -K * beta * beta * beta * (K - 1) * (K - alpha0) * eps;
}

struct F1Result {
    Rational value;  // F1 = (K-1)^6 Fbar1 / (eps+1)^6, eps = (K-beta)/(beta-1)
    int sign;        // always +1 on 1 < beta < K
    Rational fbar1;
};

/// The 7-coefficient polynomial in eps whose positivity settles the sign of
/// the first focal value at E*(1,1) of the three-equilibria chart.
inline Rational fbar1_eval(const Rational& K, const Rational& eps) {
    auto c = [&](long a5, long a4, long a3, long a2, long a1, long a0) {
        return ((((Rational(a5) * K + a4) * K + a3) * K + a2) * K + a1) * K + a0;
    };
    Rational C6 = c(0, 0, 24, 0, -4, 4);
    Rational C5 = c(0, 24, 45, -21, 7, 5);
    Rational C4 = c(6, 75, -4, -11, 12, 2);
    Rational C3 = c(33, 42, -18, 3, 6, 0);
    Rational C2 = c(29, 7, -9, 6, 0, 0);
    Rational C1 = c(11, -4, 2, 0, 0, 0);
    Rational C0 = c(1, 0, 0, 0, 0, 0);
    return (((((C6 * eps + C5) * eps + C4) * eps + C3) * eps + C2) * eps + C1) *
               eps + C0;
}

inline F1Result f1_via_fbar(const Rational& K, const Rational& beta) {
    if (!(1 < beta && beta < K))
        throw std::invalid_argument("f1_via_fbar: need 1 < beta < K");
    Rational eps = (K - beta) / (beta - 1);
    F1Result out;
    out.fbar1 = fbar1_eval(K, eps);
    Rational km1 = K - 1, ep1 = eps + 1;
    out.value = ratpoly::pow_rat(km1, 6) * out.fbar1 / ratpoly::pow_rat(ep1, 6);
    out.sign = sgn(out.value);
    return out;
}

}  // namespace cycleforge::model
