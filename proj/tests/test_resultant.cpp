#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "cycleforge/uniview.hpp"

using namespace cycleforge::ratpoly;

namespace {

const std::vector<std::string> X{"x"};
const std::vector<std::string> XY{"x", "y"};

MultiPoly random_bivariate(std::mt19937& rng, int terms, int maxexp) {
    std::uniform_int_distribution<int> coeff(-6, 6), degd(0, maxexp);
    MultiPoly p(XY);
    for (int t = 0; t < terms; ++t) {
        int c = coeff(rng);
        if (c == 0) c = 2;
        std::ostringstream s;
        s << c << "*x^" << degd(rng) << "*y^" << degd(rng);
        p = p + MultiPoly::parse(s.str(), XY);
    }
    return p;
}

UniPoly random_monic_simple_roots(std::mt19937& rng, int deg,
                                  std::vector<Rational>* out_roots = nullptr) {
    // distinct small rational roots => simple roots guaranteed
    std::vector<Rational> roots;
    std::uniform_int_distribution<int> num(-12, 12);
    while (static_cast<int>(roots.size()) < deg) {
        Rational r(num(rng), 1 + (num(rng) & 3));
        r.canonicalize();
        if (std::find(roots.begin(), roots.end(), r) == roots.end())
            roots.push_back(r);
    }
    UniPoly p = UniPoly::constant(1);
    for (const auto& r : roots) p = p * UniPoly({-r, Rational(1)});
    if (out_roots) *out_roots = roots;
    return p;
}

UniView lift(const UniPoly& p, const std::string& var = "x",
             const std::vector<std::string>& vars = X) {
    std::vector<MultiPoly> cs;
    for (const auto& c : p.coeffs()) cs.push_back(MultiPoly::constant(c, vars));
    return UniView::from_coeffs(cs, var, vars);
}


}  // namespace

TEST_CASE("resultant determinant convention", "[resultant]") {
    auto A = UniView(MultiPoly::parse("x - 1", X), "x");
    auto B = UniView(MultiPoly::parse("x - 2", X), "x");
    CHECK(resultant(A, B) == MultiPoly::parse("0 - 1", X));

    auto C = UniView(MultiPoly::parse("x^2 - 1", X), "x");
    auto D = UniView(MultiPoly::parse("x - 1", X), "x");
    CHECK(resultant(C, D).is_zero());

    REQUIRE_THROWS_AS(resultant(UniView(MultiPoly::parse("3", X), "x"), A),
                      std::invalid_argument);
}

TEST_CASE("resultant equals lc(B)^degA * prod A(beta_i) numerically",
          "[resultant][property]") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> degd(2, 4);
    for (int i = 0; i < 50; ++i) {
        std::vector<Rational> beta;
        UniPoly A = random_monic_simple_roots(rng, degd(rng));
        UniPoly B = random_monic_simple_roots(rng, degd(rng), &beta);
        MultiPoly res = resultant(lift(A), lift(B));
        // Res(A,B) = (-1)^(degA degB) lc(B)^degA prod_i A(beta_i)
        double prod = std::pow(B.lc().get_d(), static_cast<double>(A.degree()));
        for (const auto& z : beta) prod *= A.eval_d(z.get_d());
        if ((A.degree() * B.degree()) % 2) prod = -prod;
        double got = res.constant_value().get_d();
        INFO("deg A=" << A.degree() << " deg B=" << B.degree());
        REQUIRE(std::abs(got - prod) <= 1e-9 * (1 + std::abs(prod)));
    }
}

TEST_CASE("subresultant PRS matches Bareiss-Sylvester determinant",
          "[resultant][property]") {
    std::mt19937 rng(7);
    int done = 0;
    while (done < 300) {
        MultiPoly a = random_bivariate(rng, 4, 3);
        MultiPoly b = random_bivariate(rng, 4, 3);
        UniView A(a, "x"), B(b, "x");
        if (A.degree() < 1 || B.degree() < 1) continue;
        ++done;
        REQUIRE(resultant(A, B) == resultant_sylvester(A, B));
    }
}

TEST_CASE("resultant symmetry and multiplicativity", "[resultant][property]") {
    std::mt19937 rng(21);
    int done = 0;
    while (done < 350) {
        MultiPoly a = random_bivariate(rng, 3, 2);
        MultiPoly b = random_bivariate(rng, 3, 2);
        MultiPoly c = random_bivariate(rng, 3, 2);
        UniView A(a, "x"), B(b, "x"), C(c, "x");
        if (A.degree() < 1 || B.degree() < 1 || C.degree() < 1) continue;
        ++done;
        // Res(A,B) = (-1)^(degA degB) Res(B,A)
        MultiPoly rab = resultant(A, B);
        MultiPoly rba = resultant(B, A);
        if ((A.degree() * B.degree()) % 2)
            CHECK(rab == MultiPoly(rab.vars()) - rba);
        else
            CHECK(rab == rba);
        // Res(A, B*C) = Res(A,B) * Res(A,C)
        UniView BC(b * c, "x");
        CHECK(resultant(A, BC) == rab * resultant(A, C));
    }
}

TEST_CASE("resultant specialization commutes when lc does not vanish",
          "[resultant][property]") {
    const std::vector<std::string> KAB{"K", "a", "b"};
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coeff(-5, 5), degd(0, 2), pt(1, 6);
    int done = 0;
    while (done < 350) {
        MultiPoly a(KAB), b(KAB);
        for (int t = 0; t < 4; ++t) {
            std::ostringstream sa, sb;
            int ca = coeff(rng), cb = coeff(rng);
            sa << (ca ? ca : 3) << "*K^" << degd(rng) << "*a^" << degd(rng) << "*b^"
               << degd(rng);
            sb << (cb ? cb : 3) << "*K^" << degd(rng) << "*a^" << degd(rng) << "*b^"
               << degd(rng);
            a = a + MultiPoly::parse(sa.str(), KAB);
            b = b + MultiPoly::parse(sb.str(), KAB);
        }
        UniView A(a, "b"), B(b, "b");
        if (A.degree() < 1 || B.degree() < 1) continue;
        Rational K0(pt(rng), pt(rng)), a0(pt(rng), pt(rng));
        K0.canonicalize();
        a0.canonicalize();
        std::map<std::string, Rational> at{{"K", K0}, {"a", a0}};
        // guard Lemma-style degree drops: leading coefficients must survive
        UniPoly sA = A.specialize(at), sB = B.specialize(at);
        if (sA.degree() != A.degree() || sB.degree() != B.degree()) continue;
        ++done;
        MultiPoly res = resultant(A, B);
        Rational lhs = res.eval({K0, a0, Rational(0)});
        MultiPoly rs = resultant(lift(sA, "b", KAB), lift(sB, "b", KAB));
        REQUIRE(lhs == rs.constant_value());
    }
}
