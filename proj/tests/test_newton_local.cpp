#include "support.hpp"

using namespace splitrad;
using namespace splitrad::testing;

// Archimedean escape rates frozen from mpmath (60 digits, 60 iterates of
// d^-n log|f^n z| with the log|a_d|/(d-1) correction).
constexpr double kLambdaInfOne = 0.0816772363969287658;   // z^3 + z^2/5 at 1
constexpr double kLambdaInfTwo = 0.727424851128126821;    // z^3 + z^2/5 at 2
constexpr double kLambdaInfF2 = 2.182274553384380464;     // z^3 + z^2/5 at f(2) = 44/5
constexpr double kCritCubicIrr = 0.1059342318932302847;   // z^3 + z/2 + 1, roots of z^2 + 1/6
constexpr double kCritQuarticIrr = 0.04937067448299192404; // z^4 + z^2/5 + 1, roots of z^2 + 1/10

const QPoly& cubic() {
    static const QPoly f = parse_poly("z^3 + z^2/5");
    return f;
}

TEST(EscapeNonArch, ExactValues) {
    const NonArchEscape e5(cubic(), Integer(5));
    EXPECT_EQ(e5.rate(Rational(1)), L(5, "1/3"));
    EXPECT_TRUE(e5.rate(Rational(0)).is_zero());
    EXPECT_TRUE(e5.rate(Rational(-1, 5)).is_zero());
    EXPECT_EQ(e5.rate(Rational(-2, 15)), L(5));
    EXPECT_EQ(e5.rate(Rational(1, 5)), L(5));  // f(1/5) = 2/125 lies past the threshold
}

TEST(EscapeNonArch, GoodReductionIsLogPlus) {
    Gen g(41);
    const NonArchEscape e7(cubic(), Integer(7));
    for (int i = 0; i < 50; ++i) {
        const Rational z = g.rational(400, 400);
        const long v = z.is_zero() ? 0 : vp(z, Integer(7));
        EXPECT_EQ(e7.rate(z), L(7, std::to_string(std::max(0L, -v)).c_str())) << z;
    }
}

TEST(EscapeNonArch, FunctionalEquation) {
    Gen g(42);
    for (const char* fs : {"z^3 + z^2/5", "z^3 - z + 1/5", "z^2 + 1/25", "-(2/9)*z^3 - z^2"}) {
        const QPoly f = parse_poly(fs);
        for (long p : {2L, 3L, 5L}) {
            const NonArchEscape E(f, Integer(p));
            for (int i = 0; i < 15; ++i) {
                const Rational z = g.rational(60, 60);
                EXPECT_EQ(E.rate(f(z)), Rational(f.degree()) * E.rate(z)) << fs << " p=" << p << " z=" << z;
            }
        }
    }
}

TEST(EscapeNonArch, IrrationalCriticalPoints) {
    EXPECT_EQ(NonArchEscape(parse_poly("z^3 + z/3"), Integer(3)).max_rate_exponent_over_roots(parse_poly("z^2 + 1/9")),
              Rational(1));
    EXPECT_EQ(NonArchEscape(parse_poly("z^3 + z/2 + 1"), Integer(3)).max_rate_exponent_over_roots(parse_poly("z^2 + 1/6")),
              Rational(1, 2));
    const QPoly h = parse_poly("z^3 - 2z/3 + 1/7");
    EXPECT_EQ(NonArchEscape(h, Integer(3)).max_rate_exponent_over_roots(parse_poly("z^2 - 2/9")), Rational(1));
    EXPECT_EQ(NonArchEscape(h, Integer(7)).max_rate_exponent_over_roots(parse_poly("z^2 - 2/9")), Rational(1, 3));
    const QPoly q = parse_poly("z^4 + z^2/5 + 1");
    for (long p : {2L, 5L})
        EXPECT_EQ(NonArchEscape(q, Integer(p)).max_rate_exponent_over_roots(parse_poly("z^2 + 1/10")), Rational(1, 2));
}

TEST(EscapeArch, OracleValues) {
    const ArchEscape A(cubic());
    for (const auto& [z, oracle] : std::vector<std::pair<Rational, double>>{
             {Rational(1), kLambdaInfOne}, {Rational(2), kLambdaInfTwo}, {Rational(44, 5), kLambdaInfF2}}) {
        const Interval e = A.rate(z, 1e-12).enclosure();
        EXPECT_TRUE(e.widened(1e-15).contains(oracle)) << z << " " << e;
        EXPECT_LE(e.width(), 1e-12);
    }
    EXPECT_TRUE(A.rate(Rational(0), 1e-8).is_zero());
    EXPECT_TRUE(A.rate(Rational(-1, 5), 1e-8).is_zero());
}

TEST(EscapeArch, IrrationalCriticalOracles) {
    const Interval c = ArchEscape(parse_poly("z^3 + z/2 + 1")).max_rate_over_roots(parse_poly("z^2 + 1/6"), 1e-10).enclosure();
    EXPECT_TRUE(c.widened(1e-14).contains(kCritCubicIrr)) << c;
    const Interval q = ArchEscape(parse_poly("z^4 + z^2/5 + 1")).max_rate_over_roots(parse_poly("z^2 + 1/10"), 1e-10).enclosure();
    EXPECT_TRUE(q.widened(1e-14).contains(kCritQuarticIrr)) << q;
}

TEST(EscapeArch, AttractingBasinCertified) {
    // Critical points +-1/sqrt(3) of z^3 - z + 1/5 lie in an attracting basin.
    const ArchEscape A(parse_poly("z^3 - z + 1/5"));
    EXPECT_TRUE(A.max_rate_over_roots(parse_poly("z^2 - 1/3"), 1e-8).is_zero());
}

TEST(EscapeArch, StableUnderExtraIterations) {
    const ArchEscape A(cubic());
    const Interval e = A.rate(Rational(1), 1e-6).enclosure();
    EXPECT_LE(e.width(), 1e-6);
    // First n whose enclosure is already that tight; earlier iterates may
    // sit below the escape threshold and have no enclosure at all.
    auto width_at = [&](unsigned n) {
        try {
            return A.enclosure_after(Rational(1), n).width();
        } catch (const Undetermined&) {
            return 1.0;
        }
    };
    unsigned n = 1;
    while (width_at(n) > 1e-6) ++n;
    const Interval later = A.enclosure_after(Rational(1), n + 5);
    EXPECT_TRUE(overlaps(e, later));
    EXPECT_LE(later.width(), e.width() + 1e-9);
}

TEST(EscapeArch, FunctionalEquationOverlaps) {
    Gen g(43);
    const ArchEscape A(cubic());
    for (int i = 0; i < 20; ++i) {
        const Rational z = g.rational(30, 7);
        const Interval a = A.rate(z, 1e-9).enclosure(), b = A.rate(cubic()(z), 1e-9).enclosure();
        EXPECT_TRUE(overlaps(Rational(3) * a, b, 4e-9)) << z;
    }
}

TEST(EscapeArch, RejectsBadTolerance) {
    EXPECT_THROW(ArchEscape(cubic()).rate(Rational(1), 0.0), DomainError);
}

TEST(CanonicalHeight, ExactValue) {
    EXPECT_EQ(canonical_height(cubic(), Rational(1, 2)).formal_part(), L(2) + L(5, "2/9"));
    EXPECT_EQ(canonical_height(parse_poly("z^2 - 1"), Rational(1, 2)), L(2));
}

TEST(CanonicalHeight, ScalesUnderIterationOnRandomPoints) {
    Gen g(44);
    const double tol = 1e-8;
    for (const char* fs : {"z^3 + z^2/5", "z^2 - 1", "z^3 - z + 1/5"}) {
        EscapeOptions o;
        o.tol = tol;
        const HeightEngine H(parse_poly(fs), o);
        const Rational d(H.degree());
        for (int i = 0; i < 20; ++i) {
            const Rational P = g.rational(25, 12);
            const LogValue h = H.canonical_height(P), hf = H.canonical_height(H.poly()(P));
            EXPECT_EQ(hf.formal_part(), d * h.formal_part()) << fs << " " << P;
            EXPECT_TRUE(overlaps((d * h).enclosure(), hf.enclosure(), 2 * tol)) << fs << " " << P;
        }
    }
}

TEST(Preperiodic, KnownSets) {
    auto values = [](const char* fs) {
        std::vector<Rational> v;
        for (const auto& p : preperiodic_points(parse_poly(fs))) v.push_back(p.value);
        return v;
    };
    EXPECT_EQ(values("z^3 + z^2/5"), Qs({"-1/5", "0"}));
    EXPECT_EQ(values("z^2 - 1"), Qs({"-1", "0", "1"}));
    const auto pcf = values("-(2/9)*z^3 - z^2");
    for (const auto& x : Qs({"0", "-3", "-9/2"})) EXPECT_NE(std::find(pcf.begin(), pcf.end(), x), pcf.end()) << x;
}

TEST(Preperiodic, EveryPointVerifiesAndHasZeroHeight) {
    for (const char* fs : {"z^3 + z^2/5", "z^2 - 1", "-(2/9)*z^3 - z^2", "z^2 - 3/4"}) {
        const QPoly f = parse_poly(fs);
        const HeightEngine H(f);
        for (const auto& p : preperiodic_points(f)) {
            const auto orbit = iterate(f, p.value, p.preperiod + p.period);
            EXPECT_EQ(orbit[p.preperiod], orbit[p.preperiod + p.period]) << fs << " " << p.value;
            EXPECT_TRUE(H.canonical_height(p.value).is_zero()) << fs << " " << p.value;
        }
    }
}

TEST(Preperiodic, ThreadCountDoesNotChangeResult) {
    const QPoly f = parse_poly("-(2/9)*z^3 - z^2");
    const SearchBox box = preperiodic_search_box(f);
    const long N = box.radius.get_si() * box.denominator_bound.get_si();
    auto whole = detail::scan_preperiodic(f, box, -N, N + 1);
    auto left = detail::scan_preperiodic(f, box, -N, 0), right = detail::scan_preperiodic(f, box, 0, N + 1);
    left.insert(left.end(), right.begin(), right.end());
    std::sort(left.begin(), left.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
    std::sort(whole.begin(), whole.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
    EXPECT_EQ(left, whole);
}
