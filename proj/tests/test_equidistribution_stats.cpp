#include "support.hpp"

using namespace splitrad;
using namespace splitrad::testing;

namespace {

const QPoly& cubic() {
    static const QPoly f = parse_poly("z^3 + z^2/5");
    return f;
}

// Nine points: two 5-adic units in A(1), five points in the wing of 0 and
// four in the wing of -1/5.
const std::vector<Rational>& balanced() {
    static const auto T = Qs({"1", "2", "5", "10", "25", "-1/5", "4/5", "-6/5", "9/5"});
    return T;
}

}  // namespace

TEST(Equidistribution, PreperiodicSetFails) {
    const auto r = equidistribution_report(cubic(), Qs({"0", "-1/5"}), Rational(1, 2), 1);
    ASSERT_EQ(r.places.size(), 1u);
    const auto& p = r.places[0];
    EXPECT_EQ(p.place, P(5));
    EXPECT_EQ(p.lambda_crit, L(5));
    EXPECT_EQ(p.annulus_count, 0);
    EXPECT_EQ(p.annulus_mass, Rational(2, 9));
    EXPECT_EQ(p.wing_counts, (std::vector<long>{1, 1}));
    EXPECT_FALSE(p.verdict);
    EXPECT_EQ(r.achieved_delta_exact, std::optional<Rational>(Rational(0)));
}

TEST(Equidistribution, BalancedSetPasses) {
    const auto r = equidistribution_report(cubic(), balanced(), Rational(1, 2), 1);
    const auto& p = r.places.at(0);
    EXPECT_EQ(p.annulus_count, 2);
    EXPECT_EQ(p.wing_counts, (std::vector<long>{5, 4}));
    EXPECT_TRUE(p.annulus_ok);
    EXPECT_TRUE(p.wings_ok);
    EXPECT_TRUE(p.verdict);
    EXPECT_EQ(r.achieved_delta_exact, std::optional<Rational>(Rational(1)));
    ASSERT_TRUE(r.achieved_delta.has_value());
    EXPECT_EQ(r.achieved_delta->lo(), 1.0);
}

TEST(Equidistribution, RegressionThresholds) {
    // Annulus count 3 of 9 against mass 2/9 needs eps > 1/2; wing counts 3
    // and 1 need eps > 2/3.
    const auto T = Qs({"1", "2", "3", "1/5", "2/5", "3/5", "-1/5", "-4/25", "-3/25"});
    auto at = [&](const char* e) { return equidistribution_report(cubic(), T, Q(e), 1).places.at(0); };
    const auto half = at("1/2");
    EXPECT_EQ(half.annulus_count, 3);
    EXPECT_EQ(half.wing_counts, (std::vector<long>{3, 1}));
    EXPECT_FALSE(half.annulus_ok);
    EXPECT_TRUE(at("501/1000").annulus_ok);
    EXPECT_FALSE(at("2/3").wings_ok);
    EXPECT_TRUE(at("667/1000").wings_ok);
    EXPECT_FALSE(at("2/3").verdict);
    EXPECT_TRUE(at("667/1000").verdict);
}

TEST(Equidistribution, VerdictMonotoneInEps) {
    Gen g(61);
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<Rational> T;
        const int n = static_cast<int>(g.range(3, 12));
        for (int i = 0; i < n; ++i) {
            const long e = g.range(-2, 1);
            T.push_back(Rational(Integer(g.nonzero(30))) * Rational(5).pow(e) - (g.next() & 1 ? Rational(1, 5) : Rational(0)));
        }
        bool passed = false;
        for (int k = 1; k < 20; ++k) {
            const auto r = equidistribution_report(cubic(), T, Rational(k, 20), 1);
            const bool v = r.places.at(0).verdict;
            EXPECT_TRUE(!passed || v) << "trial " << trial << " eps " << k << "/20";
            passed = passed || v;
            const auto& d = r.achieved_delta_exact;
            ASSERT_TRUE(d.has_value());
            EXPECT_EQ(*d, v ? Rational(1) : Rational(0));
        }
    }
}

TEST(Equidistribution, Preconditions) {
    EXPECT_THROW(equidistribution_report(cubic(), {}, Rational(1, 2), 1), DomainError);
    EXPECT_THROW(equidistribution_report(cubic(), balanced(), Rational(0), 1), DomainError);
    EXPECT_THROW(equidistribution_report(cubic(), balanced(), Rational(1), 1), DomainError);
    EXPECT_THROW(equidistribution_report(cubic(), balanced(), Rational(1, 2), 0), DomainError);
    EXPECT_THROW(equidistribution_report(parse_poly("2z^3 + z^2"), balanced(), Rational(1, 2), 1), DomainError);
}

TEST(EpsilonGood, ThresholdAtLogFiveOverLogFifteen) {
    // log 5 / log 15 = 0.594316...
    const auto T = Qs({"0", "-1/5"});
    const auto below = epsilon_good_fraction(cubic(), T, Q("5943/10000"));
    const auto above = epsilon_good_fraction(cubic(), T, Q("5944/10000"));
    EXPECT_EQ(below.h_crit.formal_part(), L(3) + L(5));
    for (const auto& w : below.witnesses) {
        EXPECT_EQ(w.sum, L(5));
        EXPECT_EQ(w.good, std::optional<bool>(false));
    }
    for (const auto& w : above.witnesses) EXPECT_EQ(w.good, std::optional<bool>(true));
    EXPECT_EQ(above.fraction, Rational(1));
    EXPECT_EQ(below.fraction, Rational(0));
}

TEST(EpsilonGood, DegenerateWhenPostCriticallyFinite) {
    const auto r = epsilon_good_fraction(parse_poly("-(2/9)*z^3 - z^2"), Qs({"0", "-3"}), Rational(1, 2));
    EXPECT_TRUE(r.degenerate);
    EXPECT_TRUE(r.h_crit.is_zero());
}

TEST(PairMoment, CubicPreperiodicPair) {
    const auto m = pair_moment(cubic(), Qs({"0", "-1/5"}), Rational(1, 10));
    EXPECT_EQ(m.average, L(5));
    EXPECT_EQ(m.pairs, 2u);
    EXPECT_EQ(m.meeting, 2u);
    EXPECT_EQ(m.undetermined, 0u);
}

TEST(Abc, RationalTriples) {
    const auto q = abc_quality(Qs({"1", "8", "-9"}));
    EXPECT_EQ(q.h, L(3, "2"));
    EXPECT_EQ(q.rad, L(2) + L(3));
    EXPECT_EQ(q.quality, L(3) - L(2));
    const auto r = abc_quality(Qs({"3", "5", "-8"}));
    EXPECT_EQ(r.h, L(2, "3"));
    EXPECT_EQ(r.rad, L(2) + L(3) + L(5));
    EXPECT_EQ(compare(r.quality, LogValue()), Ordering::less);
    EXPECT_THROW(abc_quality(Qs({"1", "2", "3"})), DomainError);
    EXPECT_THROW(abc_quality(Qs({"0", "1", "-1"})), DomainError);
}

TEST(Abc, FunctionFieldTriple) {
    std::vector<RationalFunction> t{parse_rational_function("t^2"), parse_rational_function("-(t-1)^2"),
                                    parse_rational_function("-2t+1")};
    const auto q = abc_quality(t);
    EXPECT_EQ(q.h, LogValue::rational(2));
    EXPECT_EQ(q.rad, LogValue::rational(4));
    EXPECT_EQ(q.quality, LogValue::rational(-2));
}

TEST(Abc, InvariantUnderScaling) {
    Gen g(62);
    for (int i = 0; i < 30; ++i) {
        const Rational a = g.nonzero_rational(200, 50), b = g.nonzero_rational(200, 50);
        if ((a + b).is_zero()) continue;
        const std::vector<Rational> T{a, b, -(a + b)};
        const Rational s = g.nonzero_rational(99, 99);
        const std::vector<Rational> S{s * a, s * b, -s * (a + b)};
        EXPECT_EQ(abc_quality(T).quality.formal_part(), abc_quality(S).quality.formal_part());
    }
}

TEST(Abc, MasonStothersOnRandomCoprimeTriples) {
    Gen g(63);
    int checked = 0;
    while (checked < 50) {
        const QPoly a = g.tpoly(static_cast<int>(g.range(1, 4)), 4), b = g.tpoly(static_cast<int>(g.range(0, 4)), 4);
        const QPoly c = -(a + b);
        if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
        if (gcd(a, b).degree() > 0) continue;
        if (a.degree() < 1 && b.degree() < 1 && c.degree() < 1) continue;
        ++checked;
        const std::vector<RationalFunction> T{RationalFunction(a), RationalFunction(b), RationalFunction(c)};
        const auto q = abc_quality(T);
        EXPECT_EQ(compare(q.quality, LogValue::rational(-1)) != Ordering::greater, true)
            << to_string(a, 't') << " | " << to_string(b, 't') << " quality " << q.quality;
    }
}

TEST(Experiment, CubicFamily) {
    const auto r = theorem_experiment("z^3 + (1/p)*z^2", Qs({"5", "7", "11"}), 1, Rational(1, 2));
    ASSERT_EQ(r.rows.size(), 3u);
    EXPECT_TRUE(r.skipped.empty());
    for (const auto& row : r.rows) {
        const long p = std::stol(row.family_param);
        EXPECT_EQ(row.h_crit.formal_part(), L(3) + L(p));
        EXPECT_NE(compare(row.h_crit, L(p)), Ordering::less);
        EXPECT_EQ(row.n_preperiodic, 2u);
        EXPECT_EQ(row.verdicts, std::to_string(p) + ":false");
    }
}

TEST(Experiment, SkipReasons) {
    const auto r = theorem_experiment("c*z^3 - z^2", Qs({"1", "-2/9"}), 1, Rational(1, 2));
    ASSERT_EQ(r.skipped.size(), 2u);
    EXPECT_EQ(r.skipped[0].reason, "no bad place");
    EXPECT_EQ(r.skipped[1].reason, "not monic");
    const auto z3 = theorem_experiment("z^3 + c*z^2", Qs({"0"}), 1, Rational(1, 2));
    ASSERT_EQ(z3.skipped.size(), 1u);
    EXPECT_EQ(z3.skipped[0].reason, "no bad place");
    EXPECT_THROW(theorem_experiment("a*z^3 + b*z^2", Qs({"1"}), 1, Rational(1, 2)), DomainError);
}
