#include "support.hpp"

using namespace splitrad;
using namespace splitrad::testing;

TEST(Parse, PolynomialGrammar) {
    const QPoly f = parse_poly("z^3 + (1/5)*z^2");
    EXPECT_EQ(f, (QPoly{0, 0, Rational(1, 5), 1}));
    EXPECT_EQ(parse_poly("z^3 + z^2/5"), f);
    EXPECT_EQ(parse_poly("2z^2 - 3 z + 1"), (QPoly{1, -3, 2}));
    EXPECT_EQ(parse_poly("(z-1)^2"), (QPoly{1, -2, 1}));
    EXPECT_EQ(parse_poly("-(2/9)*z^3 - z^2"), (QPoly{0, 0, -1, Rational(-2, 9)}));
    EXPECT_EQ(parse_poly("z^3 + (1/p)*z^2", {{"p", Rational(7)}}), (QPoly{0, 0, Rational(1, 7), 1}));
}

TEST(Parse, Errors) {
    EXPECT_THROW(parse_poly("z"), DomainError);
    EXPECT_THROW(parse_poly("z^2 +"), ParseError);
    EXPECT_THROW(parse_poly("1/z + z^2"), ParseError);
    EXPECT_THROW(parse_poly("z^2 + t"), ParseError);
    EXPECT_THROW(parse_poly("z^2/0"), ParseError);
    EXPECT_THROW(parse_poly("(z^2"), ParseError);
    try {
        parse_poly("z^2 + $");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("column 7"), std::string::npos) << e.what();
    }
}

TEST(Format, RoundTripsThroughParser) {
    Gen g(31);
    for (int i = 0; i < 100; ++i) {
        std::vector<Rational> c;
        const int d = static_cast<int>(g.range(2, 5));
        for (int k = 0; k < d; ++k) c.push_back(g.rational(20, 9));
        c.push_back(g.nonzero_rational(20, 9));
        const QPoly f(c);
        EXPECT_EQ(parse_poly(to_string(f)), f) << to_string(f);
    }
    EXPECT_EQ(to_string(parse_poly("z^3 + z^2/5")), "z^3 + (1/5)*z^2");
}

TEST(Polynomial, DivisionAndGcd) {
    Gen g(32);
    for (int i = 0; i < 50; ++i) {
        const QPoly a = g.tpoly(static_cast<int>(g.range(1, 6)), 9), b = g.tpoly(static_cast<int>(g.range(1, 3)), 9);
        if (b.is_zero()) continue;
        const auto [q, r] = divmod(a, b);
        EXPECT_EQ(q * b + r, a);
        if (!r.is_zero()) {
            EXPECT_LT(r.degree(), b.degree());
        }
        const QPoly c = g.tpoly(2, 5);
        if (c.degree() >= 1 && !a.is_zero()) {
            EXPECT_GE(gcd(a * c, b * c).degree(), c.degree());
        }
    }
}

TEST(Polynomial, CompositionAndConjugation) {
    const QPoly f = parse_poly("z^2 - 1");
    EXPECT_EQ(compose_power(f, 2), parse_poly("(z^2-1)^2 - 1"));
    // mu(z) = 2z + 3: mu f mu^-1 evaluated at mu(x) equals mu(f(x)).
    const QPoly h = conjugate(f, Rational(2), Rational(3));
    Gen g(33);
    for (int i = 0; i < 20; ++i) {
        const Rational x = g.rational(50, 7);
        EXPECT_EQ(h(Rational(2) * x + 3), Rational(2) * f(x) + 3);
    }
    const auto c = center(parse_poly("z^3 + 3z^2 + 1"));
    EXPECT_TRUE(c.poly.coeff(2).is_zero());
    EXPECT_EQ(c.shift, Rational(1));
}

TEST(FactorQ, KnownFactorizations) {
    const auto f = factor(parse_poly("z^4 + 4"));
    ASSERT_EQ(f.factors.size(), 2u);
    EXPECT_EQ(f.factors[0].first * f.factors[1].first, parse_poly("z^4 + 4"));
    EXPECT_EQ(factor(parse_poly("z^4 - 10z^2 + 1")).factors.size(), 1u);
    const auto sq = factor(parse_poly("2*(z - 1/2)^3*(z^2 + 1)"));
    EXPECT_EQ(sq.unit, Rational(2));
    ASSERT_EQ(sq.factors.size(), 2u);
    EXPECT_EQ(sq.factors[0], std::make_pair(QPoly{Rational(-1, 2), Rational(1)}, 3u));
}

TEST(FactorQ, RandomProductsRecoverFactors) {
    Gen g(34);
    for (int i = 0; i < 30; ++i) {
        QPoly prod{Rational(1)};
        for (int k = 0; k < 3; ++k) {
            QPoly q = g.tpoly(static_cast<int>(g.range(1, 3)), 6);
            if (q.degree() < 1) q = QPoly{Rational(g.range(-5, 5)), Rational(1)};
            prod = prod * q;
        }
        const auto fac = factor(prod);
        QPoly back = QPoly::constant(fac.unit);
        for (const auto& [p, m] : fac.factors) {
            EXPECT_TRUE(p.is_monic());
            back = back * p.pow(m);
        }
        EXPECT_EQ(back, prod);
    }
}

TEST(FactorQ, RationalRoots) {
    const auto r = rational_roots(parse_poly("(z + 3)*(2z + 9)*z^2*(z^2 + 1)"));
    ASSERT_EQ(r.size(), 3u);
    EXPECT_EQ(r[0], std::make_pair(Rational(-9, 2), 1u));
    EXPECT_EQ(r[1], std::make_pair(Rational(-3), 1u));
    EXPECT_EQ(r[2], std::make_pair(Rational(0), 2u));
}

TEST(FiniteField, FactorsAndGcd) {
    const fp::Field F(Integer(5));
    // x^2 + 1 = (x - 2)(x - 3) over F_5.
    const auto parts = F.factor_squarefree(F.make({1, 0, 1}));
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0].degree() + parts[1].degree(), 2);
    EXPECT_EQ(F.factor_squarefree(F.make({2, 0, 1})).size(), 1u);  // 2 is not a square mod 5
    // x^2 + 4 = (x - 1)(x + 1) shares the root 1 with x + 4 and nothing with x + 3.
    EXPECT_EQ(F.gcd(F.make({4, 0, 1}), F.make({4, 1})).degree(), 1);
    EXPECT_EQ(F.gcd(F.make({4, 0, 1}), F.make({3, 1})).degree(), 0);
}

TEST(RationalFunction, FieldOperations) {
    const auto a = parse_rational_function("(t^2 - 1)/(t + 1)");
    EXPECT_EQ(a, parse_rational_function("t - 1"));
    EXPECT_TRUE(a.is_polynomial());
    const auto b = parse_rational_function("1/t");
    EXPECT_EQ(a * b + b.inverse(), parse_rational_function("(t^2 + t - 1)/t"));
    EXPECT_EQ(to_string(parse_rational_function("(t^2+1)/(t-1)")), "(t^2+1)/(t-1)");
}
