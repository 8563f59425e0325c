#include "support.hpp"

using namespace splitrad;
using namespace splitrad::testing;

namespace {

const QPoly& cubic() {
    static const QPoly f = parse_poly("z^3 + z^2/5");
    return f;
}

}  // namespace

TEST(DiskChain, CubicAtFiveDepthSix) {
    const DiskChain c = inner_disk_chain(cubic(), P(5), 6);
    EXPECT_EQ(c.g, Rational(1));
    ASSERT_EQ(c.levels.size(), 6u);
    ASSERT_EQ(c.moduli.size(), 6u);
    for (int i = 1; i <= 6; ++i) {
        const auto& l = c.levels[static_cast<std::size_t>(i - 1)];
        EXPECT_EQ(l.t, Rational(2).pow(1 - i) - 1) << i;
        EXPECT_EQ(l.k, 2);
        EXPECT_EQ(l.mass, Rational(2, 3).pow(i));
        EXPECT_EQ(Rational(l.q), Rational(2).pow(i - 1));
        EXPECT_EQ(c.moduli[static_cast<std::size_t>(i - 1)], Rational(2).pow(-i));
    }
}

TEST(DiskChain, ModulusBoundsHoldWithEquality) {
    const DiskChain c = inner_disk_chain(cubic(), P(5), 6);
    const auto bounds = modulus_bounds(c);
    ASSERT_EQ(bounds.size(), 6u);
    for (const auto& b : bounds) {
        EXPECT_TRUE(b.holds());
        EXPECT_EQ(b.lower, b.modulus);
        EXPECT_EQ(b.modulus, b.upper);
    }
    EXPECT_TRUE(covering_moduli_consistent(c));
    EXPECT_EQ(all_moduli(c).front(), Rational(1));
}

TEST(DiskChain, BoundsHoldAcrossAFamily) {
    // z^3 + a z^2 with v_p(a) < 0 at primes p > 3.
    Gen g(51);
    for (int i = 0; i < 12; ++i) {
        const long p = std::vector<long>{5, 7, 11, 13}[static_cast<std::size_t>(g.range(0, 3))];
        const long e = g.range(1, 3), u = g.nonzero(4);
        if (u % p == 0) continue;
        const QPoly f{0, 0, Rational(u) / Rational(p).pow(e), 1};
        const DiskChain c = inner_disk_chain(f, P(p), 5);
        for (const auto& b : modulus_bounds(c)) EXPECT_TRUE(b.holds()) << to_string(f) << " i=" << b.i;
        EXPECT_TRUE(covering_moduli_consistent(c)) << to_string(f);
        for (std::size_t j = 1; j < c.levels.size(); ++j) EXPECT_LT(c.levels[j].t, c.levels[j - 1].t);
    }
}

TEST(DiskChain, Preconditions) {
    EXPECT_THROW(inner_disk_chain(cubic(), P(3), 4), DomainError);        // in S_3
    EXPECT_THROW(inner_disk_chain(cubic(), P(7), 4), DomainError);        // good reduction
    EXPECT_THROW(inner_disk_chain(parse_poly("z^3 + z/5"), P(5), 4), DomainError);  // 0 not superattracting
    EXPECT_THROW(inner_disk_chain(parse_poly("2z^3 + z^2/5"), P(5), 4), DomainError);
    EXPECT_THROW(inner_disk_chain(cubic(), P(5), 0), DomainError);
}

TEST(DiskChain, PeriodTwoThroughIterate) {
    // z^2 - 1 has the superattracting 2-cycle {0, -1}.
    const Normalized N = normalize_superattracting(parse_poly("z^2 - 1"));
    EXPECT_EQ(N.period, 2u);
    EXPECT_TRUE(N.F(Rational(0)).is_zero());
    EXPECT_TRUE(N.F.derivative()(Rational(0)).is_zero());
}

TEST(WingClusters, CubicAtFive) {
    const WingClusters w = wing_clusters(cubic(), P(5));
    ASSERT_EQ(w.clusters.size(), 2u);
    EXPECT_EQ(w.clusters[0].mass, Rational(2, 3));
    EXPECT_EQ(w.clusters[1].mass, Rational(1, 3));
    EXPECT_EQ(w.clusters[0].center, std::optional<Rational>(Rational(0)));
    EXPECT_EQ(w.clusters[1].center, std::optional<Rational>(Rational(-1, 5)));
    EXPECT_EQ(w.clusters[0].components, std::optional<unsigned>(1));
    // Cross distance: log_5 |0 - (-1/5)|_5 = 1.
    EXPECT_EQ(-vp(*w.clusters[0].center - *w.clusters[1].center, Integer(5)), 1);
    Rational total = 0;
    for (const auto& c : w.clusters) total += c.mass;
    EXPECT_EQ(total, Rational(1));
}

TEST(WingClusters, MassesSumToOneOnRandomBadCubics) {
    Gen g(52);
    int checked = 0;
    for (int i = 0; i < 40 && checked < 15; ++i) {
        const long p = std::vector<long>{5, 7, 11}[static_cast<std::size_t>(g.range(0, 2))];
        const Rational a(Integer(g.nonzero(6)), Integer(p));
        const Rational b = g.rational(6, 1);
        const QPoly f{b, 0, a, 1};
        if (reduction_is_bad(f, P(p)) != true) continue;
        ++checked;
        const WingClusters w = wing_clusters(f, P(p));
        Rational total = 0;
        unsigned roots = 0;
        for (const auto& c : w.clusters) total += c.mass, roots += c.roots;
        EXPECT_EQ(total, Rational(1)) << to_string(f) << " at " << p;
        EXPECT_EQ(roots, 3u) << to_string(f);
        EXPECT_GE(w.clusters.size(), 2u) << to_string(f);
    }
    EXPECT_GE(checked, 5);
}

TEST(WingClusters, ClusterOfPoints) {
    const WingClusters w = wing_clusters(cubic(), P(5));
    EXPECT_EQ(cluster_of(w, Rational(0)), std::optional<std::size_t>(0));
    EXPECT_EQ(cluster_of(w, Rational(1)), std::optional<std::size_t>(0));
    EXPECT_EQ(cluster_of(w, Rational(-1, 5)), std::optional<std::size_t>(1));
    EXPECT_EQ(cluster_of(w, Rational(4, 5)), std::optional<std::size_t>(1));
    EXPECT_EQ(cluster_of(w, Rational(1, 25)), std::nullopt);
}

TEST(Annulus, Membership) {
    EXPECT_EQ(annulus_membership(cubic(), P(5), Rational(1), 1), AnnulusClass::inside);
    EXPECT_EQ(annulus_membership(cubic(), P(5), Rational(5), 1), AnnulusClass::deeper);
    EXPECT_EQ(annulus_membership(cubic(), P(5), Rational(0), 1), AnnulusClass::deeper);
    EXPECT_EQ(annulus_membership(cubic(), P(5), Rational(1, 5), 1), AnnulusClass::not_in_wing);
    EXPECT_EQ(annulus_membership(cubic(), P(5), Rational(-1, 5), 1), AnnulusClass::not_in_wing);
    const DiskChain c = inner_disk_chain(cubic(), P(5), 3);
    EXPECT_EQ(annulus_mass(c, 1), Rational(2, 3) - Rational(4, 9));
}

TEST(Energy, HsiaEnergy) {
    EXPECT_EQ(hsia_energy(Qs({"0", "-1/5", "1"}), P(5)), L(5, "2/3"));
    EXPECT_EQ(hsia_energy(Qs({"1", "2"}), P(5)), LogValue());
    EXPECT_THROW(hsia_energy(Qs({"1"}), P(5)), DomainError);
}
