#include "support.hpp"

using namespace splitrad;
using namespace splitrad::testing;

namespace {

const QPoly& cubic() {
    static const QPoly f = parse_poly("z^3 + z^2/5");
    return f;
}

const std::vector<double>& figure_levels() {
    static const std::vector<double> l{0.02, 0.1, 0.5, 1, 2};
    return l;
}

}  // namespace

TEST(Json, ReportsRoundTrip) {
    EXPECT_TRUE(json_round_trips(analyze(cubic())));
    EXPECT_TRUE(json_round_trips(analyze(parse_poly_qt("z^2 + 1/t"))));
    EXPECT_TRUE(json_round_trips(preperiodic_points(cubic())));
    EXPECT_TRUE(json_round_trips(inner_disk_chain(cubic(), P(5), 4)));
    EXPECT_TRUE(json_round_trips(wing_clusters(cubic(), P(5))));
    EXPECT_TRUE(json_round_trips(equidistribution_report(cubic(), Qs({"0", "-1/5", "1"}), Rational(1, 2), 1)));
    EXPECT_TRUE(json_round_trips(epsilon_good_fraction(cubic(), Qs({"0", "-1/5"}), Rational(3, 5))));
    EXPECT_TRUE(json_round_trips(pair_moment(cubic(), Qs({"0", "-1/5"}), Rational(1, 10))));
    EXPECT_TRUE(json_round_trips(abc_quality(Qs({"1", "8", "-9"}))));
}

TEST(Json, RandomLogValuesRoundTrip) {
    Gen g(71);
    for (int i = 0; i < 50; ++i) {
        LogValue v = LogValue::rational(g.rational(30, 9));
        for (long p : {2L, 3L, 7L})
            if (g.next() & 1) v = v + LogValue::log_prime(Integer(p), g.rational(10, 5));
        EXPECT_TRUE(json_round_trips(v)) << v;
    }
}

TEST(Json, AnalyzeFieldsUseExactStrings) {
    const json j = analyze(cubic());
    EXPECT_EQ(j.at("h_crit").at("logs"), (json{{"3", "1"}, {"5", "1"}}));
    EXPECT_EQ(j.at("bad_places").size(), 1u);
    EXPECT_EQ(j.at("bad_places")[0].at("p"), 5);
}

TEST(Csv, DiskChainRows) {
    const std::string csv = disk_chain_csv(inner_disk_chain(cubic(), P(5), 3));
    EXPECT_EQ(csv,
              "level,t_i,k_i,mass_i,q_i,modulus_i\n"
              "1,0,2,2/3,1,1/2\n"
              "2,-1/2,2,4/9,2,1/4\n"
              "3,-3/4,2,8/27,4,1/8\n");
}

TEST(Csv, FieldsAreQuoted) {
    EXPECT_EQ(detail::csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(detail::csv_field("say \"x\""), "\"say \"\"x\"\"\"");
    EXPECT_EQ(detail::csv_field("plain"), "plain");
}

TEST(Csv, ExperimentHasOneRowPerParameter) {
    const auto r = theorem_experiment("z^3 + (1/p)*z^2", Qs({"5", "7"}), 1, Rational(1, 2));
    const std::string csv = experiment_csv(r);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "family_param,h_crit,n_preperiodic,triple,h,rad,quality,achieved_delta,verdicts");
}

TEST(Svg, FigureNestingAndOriginComponent) {
    const QPoly f = parse_poly("(1/5)*z^3 - z^2");
    const auto e = equipotential_contours(f, {-20, 20, -17, 17}, figure_levels(), 600);
    EXPECT_GE(nested_depth(e), 5u);
    EXPECT_TRUE(separate_loop_around(e, 0, 0, 0).has_value());
}

TEST(Svg, ByteDeterministic) {
    const QPoly f = parse_poly("(1/5)*z^3 - z^2");
    const auto a = equipotential_svg(equipotential_contours(f, {-7, 7, -6, 6}, figure_levels(), 200), "f");
    const auto b = equipotential_svg(equipotential_contours(f, {-7, 7, -6, 6}, figure_levels(), 200), "f");
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.rfind("<svg", 0), 0u);
    EXPECT_NE(a.find("data-level=\"0.02\""), std::string::npos);
}

TEST(Svg, SquareMapGivesCircle) {
    // lambda(z) = log|z| for z^2, so level 1 is the circle |z| = e.
    const auto e = equipotential_contours(parse_poly("z^2"), {-4, 4, -4, 4}, {1.0}, 400);
    ASSERT_EQ(e.levels[0].loops.size(), 1u);
    const auto& loop = e.levels[0].loops[0];
    EXPECT_TRUE(loop.closed);
    for (const auto& [x, y] : loop.points) EXPECT_NEAR(std::hypot(x, y), std::exp(1.0), 0.02);
}

TEST(Svg, RejectsDegenerateInput) {
    const QPoly f = parse_poly("z^2");
    EXPECT_THROW(equipotential_contours(f, {1, 1, -1, 1}, {1.0}, 100), DomainError);
    EXPECT_THROW(equipotential_contours(f, {0, 1, 0, NAN}, {1.0}, 100), DomainError);
    EXPECT_THROW(equipotential_contours(f, {-1, 1, -1, 1}, {0.0}, 100), DomainError);
    EXPECT_THROW(equipotential_contours(f, {-1, 1, -1, 1}, {1.0}, 1), DomainError);
}

TEST(Config, Validation) {
    RunConfig c;
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.escape_options().max_iter, 60u);
    c.tol = Rational(0);
    EXPECT_THROW(c.validate(), DomainError);
    c = RunConfig{};
    c.field = "R";
    EXPECT_THROW(c.validate(), DomainError);
    c = RunConfig{};
    c.format = "xml";
    EXPECT_THROW(c.validate(), DomainError);
    c = RunConfig{};
    c.max_iter = 0;
    EXPECT_THROW(c.validate(), DomainError);
}
