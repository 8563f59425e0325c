#include "support.hpp"

using namespace splitrad;
using namespace splitrad::testing;

// Frozen with mpmath at 30 digits.
constexpr double kLog15 = 2.70805020110221006599600457015;
constexpr double kLog3MinusLog2 = 0.405465108108164381978013115464;

TEST(Rational, ParsesAndPrintsCanonically) {
    EXPECT_EQ(Rational::parse("6/-4").str(), "-3/2");
    EXPECT_EQ(Rational::parse("+7").str(), "7");
    EXPECT_EQ(Rational::parse("0/5"), Rational(0));
    EXPECT_THROW(Rational::parse("1/0"), DomainError);
    EXPECT_THROW(Rational::parse("x"), DomainError);
}

TEST(Rational, ExpressionLiterals) {
    EXPECT_EQ(Q("1e-8"), Rational(1, 100'000'000));
    EXPECT_EQ(Q("2.5"), Rational(5, 2));
    EXPECT_EQ(Q("-1.5E+1"), Rational(-15));
    EXPECT_EQ(Q("-1/5 + 1/25"), Rational(-4, 25));
    EXPECT_EQ(Q("(2/3)^3"), Rational(8, 27));
}

TEST(Rational, FromDoubleIsExact) {
    EXPECT_EQ(Rational::from_double(0.1), Rational(Integer("3602879701896397"), Integer("36028797018963968")));
    EXPECT_EQ(Rational::from_double(-0.75), Rational(-3, 4));
}

TEST(Rational, FieldAxiomsOnRandomSamples) {
    Gen g(11);
    for (int i = 0; i < 200; ++i) {
        const Rational a = g.rational(1000, 1000), b = g.rational(1000, 1000), c = g.nonzero_rational(1000, 1000);
        EXPECT_EQ((a + b) * c, a * c + b * c);
        EXPECT_EQ(a / c * c, a);
        EXPECT_EQ(a - a, Rational(0));
        EXPECT_EQ(Rational::parse((a * b).str()), a * b);
    }
}

TEST(Interval, LogEnclosuresContainOracle) {
    const Interval l15 = Interval::log_of(Integer(15));
    EXPECT_TRUE(l15.contains(kLog15));
    EXPECT_LT(l15.width(), 1e-13);
    const Interval q = Interval::log_abs(Rational(-3, 2));
    EXPECT_TRUE(q.contains(kLog3MinusLog2));
}

TEST(Interval, ArithmeticIsOutward) {
    Gen g(12);
    for (int i = 0; i < 200; ++i) {
        const Rational a = g.rational(100, 97), b = g.nonzero_rational(100, 89);
        const Interval ia = Interval::from_rational(a), ib = Interval::from_rational(b);
        EXPECT_TRUE((ia + ib).contains((a + b).to_double()));
        EXPECT_TRUE((ia * ib).contains((a * b).to_double()));
        EXPECT_TRUE((ia / ib).contains((a / b).to_double()));
    }
}

TEST(LogValue, ExactAlgebra) {
    const LogValue h = log_integer(Integer(15));
    EXPECT_EQ(h, L(3) + L(5));
    EXPECT_TRUE(h.is_exact());
    EXPECT_EQ(h.str(), "log(3) + log(5)");
    EXPECT_EQ(Rational(2) * L(3) - log_integer(Integer(9)), LogValue());
    EXPECT_TRUE((L(3) - L(3)).is_zero());
    EXPECT_TRUE(h.enclosure().contains(kLog15));
}

TEST(LogValue, CompareExactAndNumeric) {
    EXPECT_EQ(compare(L(5), L(3)), Ordering::greater);
    EXPECT_EQ(compare(L(2, "1/2"), Rational(1, 4) * log_integer(Integer(4))), Ordering::equal);
    EXPECT_EQ(compare(LogValue::numeric({0.1, 0.2}), LogValue::numeric({0.15, 0.3})), Ordering::undetermined);
    EXPECT_EQ(compare(LogValue::numeric({0.1, 0.2}), LogValue::rational(1)), Ordering::less);
    // 2 log 3 vs 3 log 2: 9 > 8.
    EXPECT_EQ(compare(L(3, "2"), L(2, "3")), Ordering::greater);
}

TEST(LogValue, MaxExact) {
    EXPECT_EQ(max_exact(L(5), L(3)), L(5));
    EXPECT_EQ(max_exact(LogValue(), L(7, "1/3")), L(7, "1/3"));
}

TEST(Factor, KnownFactorizations) {
    const auto f = factorize(Integer("600851475143"));
    ASSERT_EQ(f.size(), 4u);
    EXPECT_EQ(f[0].prime, 71);
    EXPECT_EQ(f[3].prime, 6857);
    EXPECT_TRUE(is_prime(Integer("2305843009213693951")));
    EXPECT_FALSE(is_prime(Integer("3215031751")));  // strong pseudoprime to bases 2, 3, 5, 7
    const auto big = factorize(Integer("1000000016000000063"));  // 1000000007 * 1000000009
    ASSERT_EQ(big.size(), 2u);
    EXPECT_EQ(big[0].prime, Integer("1000000007"));
}

TEST(Factor, RandomProductsRoundTrip) {
    Gen g(13);
    for (int i = 0; i < 60; ++i) {
        Integer n = 1;
        for (int k = 0; k < 4; ++k) n *= Integer(g.range(2, 100'000));
        Integer back = 1;
        for (const auto& [p, e] : factorize(n)) {
            EXPECT_TRUE(is_prime(p));
            for (unsigned j = 0; j < e; ++j) back *= p;
        }
        EXPECT_EQ(back, n);
    }
}

TEST(ProductFormula, ZeroOverQForRandomElements) {
    Gen g(14);
    for (int i = 0; i < 100; ++i) {
        const Rational x = g.nonzero_rational(1'000'000, 1'000'000);
        const LogValue s = product_formula_check(x);
        EXPECT_TRUE(s.formal_part().is_zero()) << x;
        EXPECT_TRUE(s.enclosure().contains(0.0)) << x;
    }
}

TEST(ProductFormula, ZeroOverQtForRandomElements) {
    Gen g(15);
    for (int i = 0; i < 100; ++i) {
        QPoly num = g.tpoly(static_cast<int>(g.range(0, 4)), 5), den = g.tpoly(static_cast<int>(g.range(0, 3)), 5);
        if (num.is_zero()) num = QPoly{Rational(1)};
        if (den.is_zero()) den = QPoly{Rational(2)};
        const RationalFunction x(num, den);
        EXPECT_TRUE(product_formula_check(x).is_zero()) << to_string(x);
    }
}

TEST(Heights, NaiveHeightAndRadical) {
    const ProjectivePoint<Rational> P(Qs({"1", "8", "-9"}));
    EXPECT_EQ(naive_height(P), L(3, "2"));
    EXPECT_EQ(radical(P), L(2) + L(3));
    const ProjectivePoint<Rational> scaled = P.scaled(Rational(5, 7));
    EXPECT_EQ(naive_height(scaled), naive_height(P));
    EXPECT_EQ(radical(scaled), radical(P));
}
