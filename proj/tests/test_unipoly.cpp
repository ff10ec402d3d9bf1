#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cycleforge/unipoly.hpp"
#include "cycleforge/uniview.hpp"

using namespace cycleforge::ratpoly;

namespace {

UniPoly from_ints(std::initializer_list<long> cs) {
    std::vector<Rational> v;
    for (long c : cs) v.emplace_back(c);
    return UniPoly(std::move(v));
}

// (x-1)(x-2)(x-4) = x^3 - 7x^2 + 14x - 8
const UniPoly kCubic = from_ints({-8, 14, -7, 1});

UniPoly random_unipoly(std::mt19937& rng, int maxdeg = 4) {
    std::uniform_int_distribution<int> degd(1, maxdeg), coeff(-9, 9);
    int d = degd(rng);
    std::vector<Rational> c(static_cast<std::size_t>(d) + 1);
    for (auto& x : c) x = Rational(coeff(rng));
    if (sgn(c.back()) == 0) c.back() = 1;
    return UniPoly(std::move(c));
}

}  // namespace

TEST_CASE("sturm counts on the spec cubic", "[unipoly]") {
    SturmChain chain(kCubic);
    CHECK(chain.count(Rational(0), Rational(10)) == 3);
    CHECK(chain.count(Rational(3, 2), Rational(10)) == 2);
    SturmChain none(from_ints({1, 0, 1}));  // x^2 + 1
    CHECK(none.count(Rational(-10), Rational(10)) == 0);
}

TEST_CASE("sturm endpoint at a root counts via (lo, hi]", "[unipoly]") {
    SturmChain chain(kCubic);
    // roots 1,2,4: (1, 4] holds 2 and 4
    CHECK(chain.count(Rational(1), Rational(4)) == 2);
    CHECK(chain.count(Rational(0), Rational(4)) == 3);
}

TEST_CASE("squarefree part", "[unipoly]") {
    auto xm1 = from_ints({-1, 1});
    CHECK((xm1 * xm1).squarefree_part().coeffs() == xm1.coeffs());
    CHECK(kCubic.squarefree_part().coeffs() == kCubic.primitive().coeffs());
    auto p = from_ints({-1, 0, 1}) * xm1;  // (x^2-1)(x-1)
    CHECK(p.squarefree_part().coeffs() == from_ints({-1, 0, 1}).coeffs());
}

TEST_CASE("sturm count agrees with a sampling-and-isolation oracle",
          "[unipoly][property]") {
    std::mt19937 rng(123);
    int done = 0;
    while (done < 1000) {
        UniPoly p = random_unipoly(rng);
        if (p.degree() < 2) continue;
        UniPoly sf = p.squarefree_part();
        if (sf.degree() < 1) continue;
        ++done;
        Rational B = sf.root_bound();
        // Oracle: adaptive sign-change grid with a Lipschitz exclusion test.
        // A cell is discarded when |p(mid)| > M * w/2 (M bounding |p'| on the
        // cell), certifying no root; a cell narrower than the Mahler
        // separation bound of a squarefree integer polynomial cannot hide two
        // roots, so a sign change there is exactly one root.
        const Rational sep(1, 4000000);  // below Mahler bound for deg<=4, |c|<=9
        UniPoly dsf = sf.derivative();
        auto deriv_bound = [&](const Rational& lo, const Rational& hi) {
            Rational R = std::max(rat_abs(lo), rat_abs(hi)), M(0);
            for (std::size_t i = 0; i < dsf.coeffs().size(); ++i)
                M += rat_abs(dsf[i]) * pow_rat(R, i);
            return M;
        };
        struct Cell {
            Rational lo, hi;
        };
        std::vector<Cell> stack{{-B, B}};
        int oracle = 0;
        while (!stack.empty()) {
            Cell c = stack.back();
            stack.pop_back();
            Rational w = c.hi - c.lo;
            int slo = sgn(sf.eval(c.lo)), shi = sgn(sf.eval(c.hi));
            bool change = slo * shi < 0;
            if (w < sep) {
                if (change) ++oracle;
                continue;
            }
            Rational mid = (c.lo + c.hi) / 2;
            Rational fmid = sf.eval(mid);
            if (sgn(fmid) == 0) {
                ++oracle;  // exact root at the cut; no second root within sep
                stack.push_back({c.lo, mid - sep / 2});
                stack.push_back({mid + sep / 2, c.hi});
                continue;
            }
            if (!change && rat_abs(fmid) > deriv_bound(c.lo, c.hi) * w / 2)
                continue;  // certified root-free
            stack.push_back({c.lo, mid});
            stack.push_back({mid, c.hi});
        }
        SturmChain chain(sf);
        INFO("p = degree " << sf.degree());
        REQUIRE(chain.count(-B, B) == oracle);
    }
}

TEST_CASE("pseudo-division identity lc(B)^m A = QB + R", "[unipoly][property]") {
    const std::vector<std::string> XY{"x", "y"};
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> coeff(-5, 5), degd(0, 3);
    int done = 0;
    while (done < 1000) {
        MultiPoly a(XY), b(XY);
        for (int t = 0; t < 4; ++t) {
            int ca = coeff(rng), cb = coeff(rng);
            std::ostringstream sa, sb;
            sa << (ca == 0 ? 1 : ca) << "*x^" << degd(rng) << "*y^" << degd(rng);
            sb << (cb == 0 ? 1 : cb) << "*x^" << degd(rng) << "*y^" << degd(rng);
            a = a + MultiPoly::parse(sa.str(), XY);
            b = b + MultiPoly::parse(sb.str(), XY);
        }
        UniView A(a, "x"), B(b, "x");
        if (B.is_zero() || A.degree() < B.degree()) continue;
        ++done;
        auto pd = pseudo_division(A, B);
        MultiPoly lcm = B.lc().pow(pd.multiplications);
        REQUIRE(lcm * a - pd.quotient * b - pd.remainder == MultiPoly(XY));
        REQUIRE(pd.multiplications <=
                static_cast<unsigned>(A.degree() - B.degree() + 1));
        UniView R(pd.remainder, "x");
        REQUIRE((R.is_zero() || R.degree() < B.degree()));
    }
}

TEST_CASE("pseudo-division spec cases", "[unipoly]") {
    const std::vector<std::string> X{"x"};
    UniView A(MultiPoly::parse("x^2", X), "x");
    UniView B(MultiPoly::parse("2*x + 1", X), "x");
    auto pd = pseudo_division(A, B);
    CHECK(pd.multiplications == 2);
    CHECK(pd.remainder == MultiPoly::parse("1", X));

    UniView A2(MultiPoly::parse("x^2 - 1", X), "x");
    UniView B2(MultiPoly::parse("x - 1", X), "x");
    CHECK(pseudo_division(A2, B2).remainder.is_zero());

    REQUIRE_THROWS_AS(pseudo_division(A, UniView(MultiPoly(X), "x")),
                      std::invalid_argument);
}

TEST_CASE("uniview reassembles its base", "[unipoly]") {
    const std::vector<std::string> XY{"x", "y"};
    auto p = MultiPoly::parse("3*x^2*y - x*y^2 + 7*y - 2", XY);
    UniView v(p, "x");
    REQUIRE(v.reassemble() == p);
    REQUIRE(v.degree() == 2);
    REQUIRE(v.lc() == MultiPoly::parse("3*y", XY));
}

TEST_CASE("multivariate squarefree part", "[unipoly]") {
    const std::vector<std::string> X{"x"};
    UniView p1(MultiPoly::parse("x^2 - 2*x + 1", X), "x");  // (x-1)^2
    CHECK(squarefree_part(p1) == MultiPoly::parse("x - 1", X));

    UniView p2(MultiPoly::parse("x^3 - 7*x^2 + 14*x - 8", X), "x");
    CHECK(squarefree_part(p2) == MultiPoly::parse("x^3 - 7*x^2 + 14*x - 8", X));

    auto q = MultiPoly::parse("x^2 - 1", X) * MultiPoly::parse("x - 1", X);
    CHECK(squarefree_part(UniView(q, "x")) == MultiPoly::parse("x^2 - 1", X));

    // parametric: (x - y)^2 (x + y) in x
    const std::vector<std::string> XY{"x", "y"};
    auto xy = MultiPoly::parse("x - y", XY);
    auto m = xy * xy * MultiPoly::parse("x + y", XY);
    auto sf = squarefree_part(UniView(m, "x"));
    CHECK(sf == MultiPoly::parse("x^2 - y^2", XY));
}

TEST_CASE("sturm_count via UniView with endpoint nudge", "[unipoly]") {
    const std::vector<std::string> X{"x"};
    UniView cubic(MultiPoly::parse("x^3 - 7*x^2 + 14*x - 8", X), "x");
    CHECK(sturm_count(cubic, Rational(0), Rational(10)) == 3);
    CHECK(sturm_count(cubic, Rational(3, 2), Rational(10)) == 2);
    UniView no_roots(MultiPoly::parse("x^2 + 1", X), "x");
    CHECK(sturm_count(no_roots, Rational(-10), Rational(10)) == 0);
    REQUIRE_THROWS_AS(sturm_count(UniView(MultiPoly(X), "x"), Rational(0), Rational(1)),
                      std::invalid_argument);
}
