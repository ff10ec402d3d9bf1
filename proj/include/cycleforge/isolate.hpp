#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cycleforge/interval.hpp"
#include "cycleforge/unipoly.hpp"
#include "cycleforge/uniview.hpp"

namespace cycleforge::isolate {

using ratpoly::Rational;
using ratpoly::SturmChain;
using ratpoly::UniPoly;
using ratpoly::UniView;

/// Certified isolating intervals for the real roots of a univariate
/// polynomial in `domain`: pairwise disjoint, width <= `width`, Sturm count
/// exactly one each, and their union covers every root in the domain.
/// Intervals are half-open (lo, hi]; root endpoints of the domain are nudged
/// outward by 2^-128.
inline std::vector<Interval> isolate_univariate(const UniPoly& poly,
                                                Interval domain,
                                                const Rational& width) {
    if (poly.is_zero())
        throw std::invalid_argument("isolate_univariate: zero polynomial");
    if (sgn(width) <= 0)
        throw std::invalid_argument("isolate_univariate: width must be positive");
    if (!(domain.lo < domain.hi))
        throw std::invalid_argument("isolate_univariate: empty domain");
    UniPoly p = poly.squarefree_part();
    if (p.degree() <= 0) return {};
    const Rational eps = ratpoly::dyadic_eps(128);
    if (sgn(p.eval(domain.lo)) == 0) domain.lo -= eps;
    if (sgn(p.eval(domain.hi)) == 0) domain.hi += eps;
    SturmChain chain(p);
    std::vector<Interval> out;
    struct Work {
        Rational lo, hi;
        int count;
    };
    std::vector<Work> stack{{domain.lo, domain.hi, chain.count(domain.lo, domain.hi)}};
    while (!stack.empty()) {
        Work w = std::move(stack.back());
        stack.pop_back();
        if (w.count == 0) continue;
        if (w.count == 1 && w.hi - w.lo <= width) {
            out.push_back(Interval(w.lo, w.hi));
            continue;
        }
        Rational mid = (w.lo + w.hi) / 2;
        if (sgn(p.eval(mid)) == 0) {
            // Exact root at the midpoint: keep it strictly inside the right
            // piece by shifting the cut.
            mid -= std::min(width, Rational(w.hi - w.lo)) / 4;
        }
        int left = chain.count(w.lo, mid);
        stack.push_back({mid, w.hi, w.count - left});
        stack.push_back({w.lo, mid, left});
    }
    std::sort(out.begin(), out.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    return out;
}

inline std::vector<Interval> isolate_univariate(const UniView& p, Interval domain,
                                                const Rational& width) {
    return isolate_univariate(p.to_unipoly(), std::move(domain), width);
}

/// Refine an isolating interval of p (exactly one root inside) to width
/// <= `width` by Sturm bisection.
inline Interval refine_root(const UniPoly& poly, Interval iv, const Rational& width) {
    UniPoly p = poly.squarefree_part();
    SturmChain chain(p);
    if (chain.count(iv.lo, iv.hi) != 1)
        throw std::invalid_argument("refine_root: interval does not isolate");
    while (iv.width() > width) {
        Rational mid = iv.mid();
        if (sgn(p.eval(mid)) == 0) mid -= iv.width() / 4;
        if (chain.count(iv.lo, mid) == 1)
            iv = Interval(iv.lo, mid);
        else
            iv = Interval(mid, iv.hi);
    }
    return iv;
}

// ------------------------------------------------------------- triangular

struct TriangularOptions {
    Rational width = ratpoly::dyadic_eps(16);
    int max_box_splits = 24;
};

struct TriangularError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

using ratpoly::MultiPoly;

/// Certifies that p (univariate in `var` over `outer`) has exactly one root
/// in (c, d) for every point of `outer`: definite opposite signs at the two
/// faces and a definite-sign derivative over the slab.
inline bool certify_unique_root(const MultiPoly& p, const std::string& var,
                                const Box& outer, const Interval& yiv) {
    auto face = [&](const Rational& y) {
        Box b = outer;
        b.vars.push_back(var);
        b.iv.push_back(Interval(y, y));
        return box_sign(p, b);
    };
    SignCert at_lo, at_hi;
    try {
        at_lo = face(yiv.lo);
        at_hi = face(yiv.hi);
    } catch (const StraddlesZero&) {
        return false;
    }
    if (at_lo.status == SignStatus::Indeterminate ||
        at_hi.status == SignStatus::Indeterminate || at_lo.status == at_hi.status)
        return false;
    Box slab = outer;
    slab.vars.push_back(var);
    slab.iv.push_back(yiv);
    try {
        return box_sign(p.derivative(var), slab).status != SignStatus::Indeterminate;
    } catch (const StraddlesZero&) {
        return false;
    }
}

/// True when p has certified constant sign on outer x gap (no root passes).
inline bool certify_no_root(const MultiPoly& p, const std::string& var,
                            const Box& outer, const Interval& gap, int depth) {
    if (!(gap.lo < gap.hi)) return true;
    Box slab = outer;
    slab.vars.push_back(var);
    slab.iv.push_back(gap);
    try {
        if (box_sign(p, slab).status != SignStatus::Indeterminate) return true;
    } catch (const StraddlesZero&) {
        Rational z(0);
        if (gap.contains(z))
            return depth > 0 &&
                   certify_no_root(p, var, outer, Interval(gap.lo, z), depth - 1) &&
                   certify_no_root(p, var, outer, Interval(z, gap.hi), depth - 1);
        return false;
    }
    if (depth <= 0) return false;
    Rational mid = gap.mid();
    return certify_no_root(p, var, outer, Interval(gap.lo, mid), depth - 1) &&
           certify_no_root(p, var, outer, Interval(mid, gap.hi), depth - 1);
}

/// Halves every coordinate of `outer` around the (unique) solution of the
/// prefix triangular system it isolates. Returns false when no coordinate
/// could be shrunk (face signs indeterminate everywhere).
inline bool refine_outer(const std::vector<MultiPoly>& system,
                         const std::vector<std::string>& vars, Box& outer) {
    bool any = false;
    for (std::size_t j = 0; j < outer.iv.size(); ++j) {
        Interval& iv = outer.iv[j];
        if (iv.is_point()) continue;
        Rational mid = iv.mid();
        if (j == 0) {
            // Univariate level: Sturm decides which half holds the root.
            UniPoly p = UniView(system[0], vars[0]).to_unipoly().squarefree_part();
            if (sgn(p.eval(mid)) == 0) mid -= iv.width() / 4;
            ratpoly::SturmChain chain(p);
            iv = chain.count(iv.lo, mid) == 1 ? Interval(iv.lo, mid)
                                              : Interval(mid, iv.hi);
            any = true;
            continue;
        }
        Box prefix;
        prefix.vars.assign(outer.vars.begin(),
                           outer.vars.begin() + static_cast<std::ptrdiff_t>(j));
        prefix.iv.assign(outer.iv.begin(),
                         outer.iv.begin() + static_cast<std::ptrdiff_t>(j));
        auto face_sign = [&](const Rational& y) {
            Box f = prefix;
            f.vars.push_back(outer.vars[j]);
            f.iv.push_back(Interval(y, y));
            return box_sign(system[j], f).status;
        };
        try {
            SignStatus at_mid = face_sign(mid);
            if (at_mid == SignStatus::Indeterminate) continue;
            SignStatus at_lo = face_sign(iv.lo);
            if (at_lo == SignStatus::Indeterminate) continue;
            iv = at_lo != at_mid ? Interval(iv.lo, mid) : Interval(mid, iv.hi);
            any = true;
        } catch (const StraddlesZero&) {
            continue;
        }
    }
    return any;
}

}  // namespace detail

/// Real-root isolation of a triangular system p1(x1), p2(x1,x2), ...,
/// by lifting: isolate the first variable, then certify one new root per
/// level over each isolated outer box, bisecting outer boxes when the
/// certificates fail to apply. Returns disjoint boxes, one solution each.
inline std::vector<Box> isolate_triangular(
    const std::vector<ratpoly::MultiPoly>& system,
    const std::vector<std::string>& vars, const Box& domain,
    const TriangularOptions& opt = {}) {
    using ratpoly::MultiPoly;
    if (system.empty() || system.size() != vars.size())
        throw std::invalid_argument("isolate_triangular: shape mismatch");
    for (std::size_t k = 0; k < system.size(); ++k)
        for (std::size_t j = k + 1; j < vars.size(); ++j)
            if (system[k].degree_in(vars[j]) > 0)
                throw std::invalid_argument(
                    "isolate_triangular: system is not triangular (" + vars[j] +
                    " appears too early)");

    // Level 1: univariate isolation.
    std::vector<Box> level;
    {
        UniView v(system[0], vars[0]);
        auto roots = isolate_univariate(v.to_unipoly(), domain.of(vars[0]), opt.width);
        for (auto& iv : roots)
            level.push_back(Box({vars[0]}, {iv}));
    }

    for (std::size_t k = 1; k < system.size(); ++k) {
        const MultiPoly& pk = system[k];
        const std::string& var = vars[k];
        const Interval dom = domain.of(var);
        std::vector<Box> next;
        for (const auto& outer0 : level) {
            Box outer = outer0;
            int budget = opt.max_box_splits;
            for (;;) {
                // Candidate roots from the midpoint specialization.
                std::map<std::string, Rational> mid;
                for (std::size_t i = 0; i < outer.vars.size(); ++i)
                    mid[outer.vars[i]] = outer.iv[i].mid();
                UniPoly spec = UniView(pk, var).specialize(mid);
                if (spec.is_zero() || spec.degree() < 1) {
                    if (budget-- <= 0 ||
                        !detail::refine_outer(system, vars, outer))
                        throw TriangularError(
                            "isolate_triangular: degenerate specialization at level " +
                            std::to_string(k + 1));
                    continue;
                }
                auto cands = isolate_univariate(spec, dom, opt.width);
                bool ok = true;
                // Inflate candidates so the true root stays inside while the
                // base point moves across the outer box, then certify.
                std::vector<Interval> certified;
                Rational prev_hi = dom.lo;
                for (std::size_t c = 0; c < cands.size() && ok; ++c) {
                    Rational pad =
                        2 * std::max({opt.width, cands[c].width(), outer.max_width()});
                    Interval inflated(std::max(dom.lo, Rational(cands[c].lo - pad)),
                                      std::min(dom.hi, Rational(cands[c].hi + pad)));
                    if (!certified.empty() && inflated.lo <= certified.back().hi)
                        inflated.lo = certified.back().hi;
                    if (!detail::certify_unique_root(pk, var, outer, inflated)) {
                        ok = false;
                        break;
                    }
                    if (!detail::certify_no_root(pk, var, outer,
                                                 Interval(prev_hi, inflated.lo), 8)) {
                        ok = false;
                        break;
                    }
                    // Shrink back toward the requested width by face-sign
                    // bisection while the certificate stays decisive.
                    Interval iv = inflated;
                    while (iv.width() > opt.width) {
                        Rational mid = iv.mid();
                        Box face = outer;
                        face.vars.push_back(var);
                        face.iv.push_back(Interval(mid, mid));
                        SignCert sc;
                        try {
                            sc = box_sign(pk, face);
                        } catch (const StraddlesZero&) {
                            break;
                        }
                        if (sc.status == SignStatus::Indeterminate) break;
                        Box lo_face = outer;
                        lo_face.vars.push_back(var);
                        lo_face.iv.push_back(Interval(iv.lo, iv.lo));
                        SignCert at_lo = box_sign(pk, lo_face);
                        if (at_lo.status != sc.status)
                            iv = Interval(iv.lo, mid);
                        else
                            iv = Interval(mid, iv.hi);
                    }
                    certified.push_back(iv);
                    prev_hi = iv.hi;
                }
                if (ok && !detail::certify_no_root(pk, var, outer,
                                                   Interval(prev_hi, dom.hi), 8))
                    ok = false;
                if (!ok) {
                    if (budget-- <= 0 || !detail::refine_outer(system, vars, outer))
                        throw TriangularError(
                            "isolate_triangular: cannot certify level " +
                            std::to_string(k + 1) +
                            " (leading/derivative sign indeterminate over box)");
                    continue;
                }
                for (const auto& iv : certified) {
                    Box b = outer;
                    b.vars.push_back(var);
                    b.iv.push_back(iv);
                    next.push_back(b);
                }
                break;
            }
        }
        level = std::move(next);
    }
    return level;
}

// ---------------------------------------------------------------- regions

enum class Membership { Inside, Outside, Undetermined };

inline const char* to_string(Membership m) {
    switch (m) {
        case Membership::Inside: return "Inside";
        case Membership::Outside: return "Outside";
        default: return "Undetermined";
    }
}

namespace k3 {
// Three-valued logic: And/Or/Not over Membership.
inline Membership neg(Membership a) {
    if (a == Membership::Inside) return Membership::Outside;
    if (a == Membership::Outside) return Membership::Inside;
    return Membership::Undetermined;
}
inline Membership conj(Membership a, Membership b) {
    if (a == Membership::Outside || b == Membership::Outside)
        return Membership::Outside;
    if (a == Membership::Inside && b == Membership::Inside)
        return Membership::Inside;
    return Membership::Undetermined;
}
inline Membership disj(Membership a, Membership b) {
    if (a == Membership::Inside || b == Membership::Inside)
        return Membership::Inside;
    if (a == Membership::Outside && b == Membership::Outside)
        return Membership::Outside;
    return Membership::Undetermined;
}
}  // namespace k3

}  // namespace cycleforge::isolate
