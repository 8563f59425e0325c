// splitrad command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 domain error, 3 undetermined
// certificate.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "splitrad/splitrad.hpp"

using namespace splitrad;

namespace {

struct Args {
    RunConfig cfg;
    std::string poly, place, tol = "1e-8", eps = "1/2", point, points, triple, family, params;
    std::string window = "-7,7,-6,6", levels = "0.02,0.1,0.5,1,2";
    int depth = 6, m0 = 1, grid = 600;
    bool eps_good = false, pair = false;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        const auto a = item.find_first_not_of(" \t"), b = item.find_last_not_of(" \t");
        if (a == std::string::npos) throw DomainError("empty entry in list '" + s + "'");
        out.push_back(item.substr(a, b - a + 1));
    }
    if (out.empty()) throw DomainError("empty list");
    return out;
}

std::vector<Rational> rational_list(const std::string& s) {
    std::vector<Rational> out;
    for (const auto& x : split_list(s)) out.push_back(parse_rational(x));
    return out;
}

std::vector<double> double_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& x : split_list(s)) out.push_back(parse_rational(x).to_double());
    return out;
}

void require(const std::string& value, const char* flag) {
    if (value.empty()) throw DomainError(std::string(flag) + " is required");
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream os(cfg.out, std::ios::binary);
    if (!os) throw DomainError("cannot write '" + cfg.out + "'");
    os << text;
    if (!text.empty() && text.back() != '\n') os << '\n';
}

std::string format_or(const RunConfig& cfg, const std::string& fallback, std::initializer_list<const char*> allowed) {
    const std::string f = cfg.format.empty() ? fallback : cfg.format;
    for (const char* a : allowed)
        if (f == a) return f;
    throw DomainError("format '" + f + "' is not available for this subcommand");
}

bool over_qt(const RunConfig& cfg) { return cfg.field == "Qt"; }

void require_q(const RunConfig& cfg, const char* what) {
    if (over_qt(cfg)) throw DomainError(std::string(what) + " is only available over Q");
}

Place prime_place(const std::string& text) {
    require(text, "--place");
    const Place v = parse_place(text);
    if (!v.is_finite_prime()) throw DomainError("--place must be a prime for this subcommand");
    return v;
}

void run_analyze(const Args& a) {
    require(a.poly, "--poly");
    format_or(a.cfg, "json", {"json"});
    const json j = over_qt(a.cfg) ? json(analyze(parse_poly_qt(a.poly)))
                                  : json(analyze(parse_poly(a.poly), a.cfg.escape_options()));
    emit(a.cfg, j.dump(2));
}

void run_hcrit(const Args& a) {
    require(a.poly, "--poly");
    format_or(a.cfg, "json", {"json"});
    json j;
    if (over_qt(a.cfg)) {
        if (!a.place.empty()) throw DomainError("--place is not supported over Q(t); all places are reported");
        const auto f = parse_poly_qt(a.poly);
        const auto h = critical_height_global(f);
        j = {{"poly", to_string(f)}, {"field", "Qt"}, {"h_crit", h.total}, {"places", h.profiles}};
    } else {
        const HeightEngine H(parse_poly(a.poly), a.cfg.escape_options());
        j = {{"poly", to_string(H.poly())}, {"field", "Q"}};
        if (!a.place.empty()) {
            j["profile"] = H.local_profile(parse_place(a.place));
        } else {
            const auto h = H.critical_height_global();
            j["h_crit"] = h.total;
            j["places"] = h.profiles;
        }
    }
    emit(a.cfg, j.dump(2));
}

void run_canonical_height(const Args& a) {
    require(a.poly, "--poly");
    require(a.point, "--point");
    require_q(a.cfg, "canonical-height");
    format_or(a.cfg, "json", {"json"});
    const HeightEngine H(parse_poly(a.poly), a.cfg.escape_options());
    const Rational P = parse_rational(a.point);
    json j = {{"poly", to_string(H.poly())}, {"point", P}};
    if (!a.place.empty()) {
        const Place v = parse_place(a.place);
        j["place"] = v;
        j["lambda"] = H.escape_rate(P, v);
    } else {
        json local = json::array();
        LogValue total;
        for (const auto& v : H.height_places(P)) {
            const LogValue l = H.escape_rate(P, v);
            total += v.r() * l;
            local.push_back({{"place", v}, {"lambda", l}});
        }
        j["h_hat"] = total;
        j["local"] = local;
    }
    emit(a.cfg, j.dump(2));
}

void run_preperiodic(const Args& a) {
    require(a.poly, "--poly");
    require_q(a.cfg, "preperiodic");
    format_or(a.cfg, "json", {"json"});
    const QPoly f = parse_poly(a.poly);
    const SearchBox box = preperiodic_search_box(f);
    const json j = {{"poly", to_string(f)},
                    {"search_box", {{"denominator_bound", box.denominator_bound}, {"radius", box.radius}}},
                    {"points", preperiodic_points(f)}};
    emit(a.cfg, j.dump(2));
}

void run_disk_chain(const Args& a) {
    require(a.poly, "--poly");
    require_q(a.cfg, "disk-chain");
    const std::string fmt = format_or(a.cfg, "csv", {"csv", "json"});
    const Normalized N = normalize_superattracting(parse_poly(a.poly));
    if (N.period != 1 || !N.p0.is_zero())
        std::cerr << "note: chain of f^" << N.period << " about the superattracting point " << N.p0 << '\n';
    const DiskChain c = inner_disk_chain(N.F, prime_place(a.place), a.depth);
    if (fmt == "csv") {
        emit(a.cfg, disk_chain_csv(c));
        return;
    }
    json j = c;
    j["p0"] = N.p0;
    j["period"] = N.period;
    json bounds = json::array();
    for (const auto& b : modulus_bounds(c))
        bounds.push_back({{"i", b.i}, {"lower", b.lower}, {"modulus", b.modulus}, {"upper", b.upper}, {"holds", b.holds()}});
    j["modulus_bounds"] = bounds;
    j["covering_consistent"] = covering_moduli_consistent(c);
    emit(a.cfg, j.dump(2));
}

void run_wings(const Args& a) {
    require(a.poly, "--poly");
    require_q(a.cfg, "wings");
    format_or(a.cfg, "json", {"json"});
    const QPoly f = parse_poly(a.poly);
    if (!f.is_monic()) throw DomainError("a monic polynomial is required");
    emit(a.cfg, json(wing_clusters(f, prime_place(a.place))).dump(2));
}

void run_equidistribution(const Args& a) {
    require(a.poly, "--poly");
    require(a.points, "--points");
    require_q(a.cfg, "equidistribution");
    format_or(a.cfg, "json", {"json"});
    const QPoly f = parse_poly(a.poly);
    const auto T = rational_list(a.points);
    const Rational eps = parse_rational(a.eps);
    json j = equidistribution_report(f, T, eps, a.m0);
    if (a.eps_good || a.pair) {
        const HeightEngine H(f, a.cfg.escape_options());
        if (a.eps_good) j["epsilon_good"] = epsilon_good_fraction(H, T, eps);
        if (a.pair) j["pair_moment"] = pair_moment(H, T, eps);
    }
    emit(a.cfg, j.dump(2));
}

void run_abc(const Args& a) {
    require(a.triple, "--triple");
    format_or(a.cfg, "json", {"json"});
    const auto items = split_list(a.triple);
    json j;
    if (over_qt(a.cfg)) {
        std::vector<RationalFunction> t;
        for (const auto& x : items) t.push_back(parse_rational_function(x));
        j = abc_quality(t);
    } else {
        std::vector<Rational> t;
        for (const auto& x : items) t.push_back(parse_rational(x));
        j = abc_quality(t);
    }
    j["field"] = a.cfg.field;
    j["triple"] = items;
    emit(a.cfg, j.dump(2));
}

void run_experiment(const Args& a) {
    require(a.family, "--family");
    require(a.params, "--params");
    require_q(a.cfg, "experiment");
    format_or(a.cfg, "csv", {"csv"});
    const auto r = theorem_experiment(a.family, rational_list(a.params), a.m0, parse_rational(a.eps),
                                      a.cfg.escape_options());
    for (const auto& s : r.skipped) std::cerr << "skipped " << s.family_param << ": " << s.reason << '\n';
    emit(a.cfg, experiment_csv(r));
}

void run_equipotential(const Args& a) {
    require(a.poly, "--poly");
    require_q(a.cfg, "equipotential");
    format_or(a.cfg, "svg", {"svg"});
    const QPoly f = parse_poly(a.poly);
    const auto w = double_list(a.window);
    if (w.size() != 4) throw DomainError("--window takes x0,x1,y0,y1");
    const auto e = equipotential_contours(f, {w[0], w[1], w[2], w[3]}, double_list(a.levels), a.grid);
    emit(a.cfg, equipotential_svg(e, "equipotential curves of " + to_string(f)));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Splitting radii, critical heights and Berkovich disk data of polynomial maps"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file supplying defaults for any flag");

    Args a;
    app.add_option("--poly", a.poly, "polynomial in z, e.g. \"z^3 + (1/5)*z^2\"");
    app.add_option("--field", a.cfg.field, "ground field")->check(CLI::IsMember({"Q", "Qt"}));
    app.add_option("--place", a.place, "place: inf, a prime, t_infinity or a monic irreducible in t");
    app.add_option("--depth", a.depth, "disk chain depth")->check(CLI::PositiveNumber);
    app.add_option("--m0", a.m0, "annulus level m0")->check(CLI::PositiveNumber);
    app.add_option("--eps", a.eps, "epsilon as a rational");
    app.add_option("--tol", a.tol, "archimedean tolerance, a positive rational");
    app.add_option("--out", a.cfg.out, "output path, stdout when absent");
    app.add_option("--format", a.cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "svg"}));
    app.add_option("--max-iter", a.cfg.max_iter, "exact orbit iteration cap");
    app.add_option("--charpoly-depth", a.cfg.charpoly_depth, "iterations for irrational critical points");
    app.add_option("--float-iter", a.cfg.float_iter, "archimedean ball iteration cap");
    app.add_option("--point", a.point, "a rational point");
    app.add_option("--points", a.points, "comma separated rational points");
    app.add_flag("--epsilon-good", a.eps_good, "add the epsilon-good fraction");
    app.add_flag("--pair-moment", a.pair, "add the pair moment");
    app.add_option("--triple", a.triple, "comma separated triple summing to zero");
    app.add_option("--family", a.family, "family with one parameter, e.g. \"z^3 + (1/p)*z^2\"");
    app.add_option("--params", a.params, "comma separated parameter values");
    app.add_option("--window", a.window, "x0,x1,y0,y1");
    app.add_option("--levels", a.levels, "comma separated positive levels");
    app.add_option("--grid", a.grid, "grid cells across");

    using Runner = void (*)(const Args&);
    const std::vector<std::tuple<const char*, const char*, Runner>> commands = {
        {"analyze", "critical height and bad places (JSON)", run_analyze},
        {"hcrit", "critical height, globally or at --place (JSON)", run_hcrit},
        {"canonical-height", "canonical height of --point (JSON)", run_canonical_height},
        {"preperiodic", "all rational preperiodic points (JSON)", run_preperiodic},
        {"disk-chain", "inner disk chain at --place (CSV or JSON)", run_disk_chain},
        {"wings", "wing clusters at --place (JSON)", run_wings},
        {"equidistribution", "annulus and wing counts of --points (JSON)", run_equidistribution},
        {"abc-quality", "height minus radical of --triple (JSON)", run_abc},
        {"experiment", "family sweep over --params (CSV)", run_experiment},
        {"equipotential", "equipotential curves at infinity (SVG)", run_equipotential},
    };
    std::vector<std::pair<CLI::App*, Runner>> subs;
    for (const auto& [name, help, run] : commands) subs.emplace_back(app.add_subcommand(name, help), run);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 1;
    }

    try {
        a.cfg.tol = parse_rational(a.tol);
        a.cfg.validate();
        for (const auto& [sub, run] : subs)
            if (sub->parsed()) run(a);
        return 0;
    } catch (const Undetermined& e) {
        std::cerr << "undetermined: " << e.what() << '\n';
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
