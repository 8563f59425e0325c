#pragma once

#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "splitrad/berkovich/berkovich.hpp"
#include "splitrad/dynamics/parse.hpp"
#include "splitrad/local/heights.hpp"
#include "splitrad/poly/format.hpp"

namespace splitrad {

/// ε-equidistribution data of a point set at one bad place outside S_d.
struct PlaceEquidistribution {
    Place place;
    LogValue lambda_crit;
    long annulus_count = 0;
    Rational annulus_mass;
    std::vector<long> wing_counts;  // one per cluster of E_1, in cluster order
    std::vector<Rational> wing_masses;
    bool annulus_ok = false;
    bool wings_ok = false;
    bool verdict = false;
    friend bool operator==(const PlaceEquidistribution&, const PlaceEquidistribution&) = default;
};

struct EquidistributionReport {
    Rational p0;             // superattracting point used
    unsigned period = 1;     // the map studied is f^period
    int degree = 0;          // degree of f^period
    std::size_t points = 0;  // |T| after removing duplicates
    Rational eps;
    int m0 = 1;
    std::vector<PlaceEquidistribution> places;
    // sum over passing places of lambda_crit over the sum over all listed
    // places; nullopt when no bad place exists.
    std::optional<Interval> achieved_delta;
    std::optional<Rational> achieved_delta_exact;  // set when it is 0 or 1
    friend bool operator==(const EquidistributionReport&, const EquidistributionReport&) = default;
};

namespace detail {

inline std::vector<Rational> distinct(const std::vector<Rational>& T) {
    std::set<Rational> s(T.begin(), T.end());
    return {s.begin(), s.end()};
}

/// Finite places v outside S_d where the monic f has bad reduction.
inline std::vector<Place> bad_places_outside_small(const QPoly& f) {
    std::vector<Place> out;
    for (const auto& p : coefficient_primes(f)) {
        const Place v = Place::finite(p);
        if (!in_small_places(v, f.degree()) && reduction_is_bad(f, v) == true) out.push_back(v);
    }
    return out;
}

}  // namespace detail

/// Checks, at every bad place v outside S_d,
///     (1-eps) mu(A(m0)) < |T cap A(m0)|/|T| < (1+eps) mu(A(m0))
/// and that every cluster of E_1 holds more than (1-eps)/d |T| points; the
/// smallest wing of any wing decomposition is a single cluster, so this is
/// the condition for all wing decompositions. A superattracting cycle of
/// period m > 1 is handled by passing to f^m.
inline EquidistributionReport equidistribution_report(const QPoly& f, const std::vector<Rational>& T,
                                                      const Rational& eps, int m0) {
    if (T.empty()) throw DomainError("equidistribution needs a nonempty point set");
    if (eps.sign() <= 0 || eps >= 1) throw DomainError("eps must lie in (0, 1)");
    if (m0 < 1) throw DomainError("m0 must be at least 1");
    const Normalized N = normalize_superattracting(f);
    const auto pts = detail::distinct(T);
    EquidistributionReport out;
    out.p0 = N.p0;
    out.period = N.period;
    out.degree = N.F.degree();
    out.points = pts.size();
    out.eps = eps;
    out.m0 = m0;
    const Rational n(static_cast<long>(pts.size()));
    const Rational wing_floor = (Rational(1) - eps) / Rational(out.degree) * n;
    LogValue total, passing;
    for (const auto& v : detail::bad_places_outside_small(f)) {
        const Rational g = detail::wing_radius(N.F, v);
        const DiskChain chain = detail::disk_chain_from(N.F, v, g, m0 + 1);
        const WingClusters wings = detail::wing_clusters_from(N.F, v, g);
        PlaceEquidistribution pe{v, g * v.weight(), 0, Rational(), {}, {}, false, false, false};
        pe.annulus_mass = annulus_mass(chain, m0);
        pe.wing_counts.assign(wings.clusters.size(), 0);
        for (const auto& c : wings.clusters) pe.wing_masses.push_back(c.mass);
        for (const auto& z : pts) {
            const Rational w = z - N.p0;
            if (classify_annulus(chain, w, m0) == AnnulusClass::inside) ++pe.annulus_count;
            if (const auto i = cluster_of(wings, w)) ++pe.wing_counts[*i];
        }
        const Rational frac = Rational(pe.annulus_count) / n;
        pe.annulus_ok = (Rational(1) - eps) * pe.annulus_mass < frac && frac < (Rational(1) + eps) * pe.annulus_mass;
        pe.wings_ok = std::all_of(pe.wing_counts.begin(), pe.wing_counts.end(),
                                  [&](long c) { return Rational(c) > wing_floor; });
        pe.verdict = pe.annulus_ok && pe.wings_ok;
        total += pe.lambda_crit;
        if (pe.verdict) passing += pe.lambda_crit;
        out.places.push_back(std::move(pe));
    }
    if (!out.places.empty()) {
        const auto npass = std::count_if(out.places.begin(), out.places.end(), [](const auto& p) { return p.verdict; });
        if (npass == 0) {
            out.achieved_delta_exact = Rational(0);
            out.achieved_delta = Interval(0.0);
        } else if (static_cast<std::size_t>(npass) == out.places.size()) {
            out.achieved_delta_exact = Rational(1);
            out.achieved_delta = Interval(1.0);
        } else {
            const Interval r = passing.enclosure() / total.enclosure();
            out.achieved_delta = Interval(std::max(0.0, r.lo()), std::min(1.0, r.hi()));
        }
    }
    return out;
}

struct EpsGoodWitness {
    Rational alpha;
    LogValue sum;              // sum over S_1 and S_2 of r_v log|1/alpha|_v
    std::optional<bool> good;  // nullopt when the certified comparison is undetermined
    friend bool operator==(const EpsGoodWitness&, const EpsGoodWitness&) = default;
};

struct EpsGoodResult {
    LogValue h_crit;
    bool degenerate = false;  // h_crit = 0, every comparison is against 0
    std::size_t good = 0, undetermined = 0, total = 0;
    Rational fraction;        // good / total
    std::vector<EpsGoodWitness> witnesses;
    friend bool operator==(const EpsGoodResult&, const EpsGoodResult&) = default;
};

/// alpha is eps-good when sum_{v in S_1 cup S_2} r_v log|1/alpha|_v <=
/// eps h_crit(f), with S_1 = S_d and the archimedean place and S_2 the good
/// places: every place except the bad ones outside S_d. For p outside S_d,
/// bad means lambda_crit,p > 0, which for monic f is the splitting radius.
inline EpsGoodResult epsilon_good_fraction(const HeightEngine& H, const std::vector<Rational>& T, const Rational& eps) {
    const auto pts = detail::distinct(T);
    if (pts.size() < 2) throw DomainError("epsilon_good_fraction needs at least two distinct points");
    const auto ch = H.critical_height_global();
    std::set<Integer, IntegerLess> excluded;
    for (const auto& pr : ch.profiles)
        if (pr.place.is_finite_prime() && !in_small_places(pr.place, H.degree()) && !pr.lambda_crit.is_zero())
            excluded.insert(pr.place.prime());
    EpsGoodResult out;
    out.h_crit = ch.total;
    out.degenerate = ch.total.is_zero();
    const LogValue bound = eps * ch.total;
    std::set<Rational> diffs;
    for (const auto& a : pts)
        for (const auto& b : pts)
            if (a != b) diffs.insert(b - a);
    for (const auto& alpha : diffs) {
        LogValue sum = -local_abs_log(alpha, Place::archimedean());
        for (const auto& p : prime_support(alpha))
            if (!excluded.count(p)) sum -= local_abs_log(alpha, Place::finite(p));
        EpsGoodWitness w{alpha, sum, std::nullopt};
        switch (compare(sum, bound)) {
            case Ordering::less:
            case Ordering::equal: w.good = true; break;
            case Ordering::greater: w.good = false; break;
            case Ordering::undetermined: break;
        }
        if (!w.good) ++out.undetermined;
        else if (*w.good) ++out.good;
        out.witnesses.push_back(std::move(w));
    }
    out.total = diffs.size();
    out.fraction = Rational(static_cast<long>(out.good), static_cast<long>(out.total));
    return out;
}

inline EpsGoodResult epsilon_good_fraction(const QPoly& f, const std::vector<Rational>& T, const Rational& eps) {
    return epsilon_good_fraction(HeightEngine(f), T, eps);
}

struct PairMoment {
    LogValue average;  // over ordered pairs of distinct points
    std::size_t pairs = 0;
    std::size_t meeting = 0;       // pairs with value >= (1/d^2 - eps) h_crit
    std::size_t undetermined = 0;  // pairs whose comparison is not certified
    friend bool operator==(const PairMoment&, const PairMoment&) = default;
};

/// Average of sum_{finite v outside S_d} r_v log max(|P_i|_v, |P_j|_v) over
/// ordered pairs of distinct points, and the number of pairs at or above
/// (1/d^2 - eps) h_crit.
inline PairMoment pair_moment(const HeightEngine& H, const std::vector<Rational>& T, const Rational& eps) {
    const auto pts = detail::distinct(T);
    if (pts.size() < 2) throw DomainError("pair_moment needs at least two distinct points");
    const int d = H.degree();
    const LogValue threshold = (Rational(1, d * d) - eps) * H.critical_height_global().total;
    PairMoment out;
    LogValue sum;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            std::set<Integer, IntegerLess> primes;
            for (const auto* x : {&pts[i], &pts[j]})
                if (!x->is_zero())
                    for (const auto& p : prime_support(*x)) primes.insert(p);
            LogValue s;
            for (const auto& p : primes) {
                if (in_small_places(Place::finite(p), d)) continue;
                // log max(|x|_p, |y|_p) = -min(v(x), v(y)) log p, with v(0) = +inf.
                std::optional<long> m;
                for (const auto* x : {&pts[i], &pts[j]})
                    if (!x->is_zero()) m = m ? std::min(*m, vp(*x, p)) : vp(*x, p);
                s += LogValue::log_prime(p, Rational(-*m));
            }
            switch (compare(s, threshold)) {
                case Ordering::greater:
                case Ordering::equal: ++out.meeting; break;
                case Ordering::undetermined: ++out.undetermined; break;
                case Ordering::less: break;
            }
            sum += s;
            ++out.pairs;
        }
    out.average = Rational(1, static_cast<long>(out.pairs)) * sum;
    return out;
}

inline PairMoment pair_moment(const QPoly& f, const std::vector<Rational>& T, const Rational& eps) {
    return pair_moment(HeightEngine(f), T, eps);
}

template <class K>
struct AbcQuality {
    LogValue h;
    LogValue rad;
    LogValue quality;  // h - rad
    friend bool operator==(const AbcQuality&, const AbcQuality&) = default;
};

/// Height, radical and h - rad of (z1, z2, z3) with z1 + z2 + z3 = 0.
template <class K>
AbcQuality<K> abc_quality(const std::vector<K>& coords) {
    if (coords.size() != 3) throw DomainError("an abc triple has three coordinates");
    for (const auto& x : coords)
        if (x == K(0)) throw DomainError("abc triple coordinates must be nonzero");
    if (!(coords[0] + coords[1] + coords[2] == K(0))) throw DomainError("abc triple must sum to zero");
    const ProjectivePoint<K> P(coords);
    AbcQuality<K> out{naive_height(P), radical(P), {}};
    out.quality = out.h - out.rad;
    return out;
}

struct ExperimentRow {
    std::string family_param;
    LogValue h_crit;
    std::size_t n_preperiodic = 0;
    std::string triple;  // empty when fewer than three preperiodic points
    std::optional<AbcQuality<Rational>> abc;
    std::string achieved_delta;
    std::string verdicts;  // "p:true;q:false"
};

struct ExperimentSkip {
    std::string family_param;
    std::string reason;
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    std::vector<ExperimentSkip> skipped;
};

/// The single identifier other than z in a family expression.
inline std::string free_parameter(std::string_view text) {
    std::set<std::string> names;
    for (std::size_t i = 0; i < text.size();) {
        if (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
            std::string name(text.substr(i, j - i));
            if (name != "z") names.insert(name);
            i = j;
        } else {
            ++i;
        }
    }
    if (names.size() != 1) throw DomainError("family must contain exactly one parameter besides z");
    return *names.begin();
}

inline std::string format_interval(const Interval& x) {
    std::ostringstream os;
    os.precision(10);
    os << "[" << x.lo() << ", " << x.hi() << "]";
    return os.str();
}

/// Runs the height, preperiodic-point, abc and equidistribution pipeline on
/// each member of a one-parameter family. For preperiodic points P1, P2, P3
/// (P1 < P2, P3 distinct from both) the triple is (-P1', P2', P1' - P2')
/// with Pi' = Pi - P3.
inline ExperimentResult theorem_experiment(std::string_view family, const std::vector<Rational>& params,
                                           int m0, const Rational& eps, EscapeOptions opts = {}) {
    const std::string name = free_parameter(family);
    ExperimentResult out;
    for (const auto& c : params) {
        const std::string label = c.str();
        try {
            const QPoly f = parse_poly(family, Bindings{{name, c}});
            if (!f.is_monic()) {
                out.skipped.push_back({label, "not monic"});
                continue;
            }
            if (detail::bad_places_outside_small(f).empty()) {
                out.skipped.push_back({label, "no bad place"});
                continue;
            }
            const HeightEngine H(f, opts);
            const LogValue hcrit = H.critical_height_global().total;
            const auto pre = preperiodic_points(f);
            std::vector<Rational> P;
            for (const auto& x : pre) P.push_back(x.value);
            const auto rep = equidistribution_report(f, P, eps, m0);
            std::string verdicts, delta;
            for (const auto& pl : rep.places)
                verdicts += (verdicts.empty() ? "" : ";") + pl.place.str() + ":" + (pl.verdict ? "true" : "false");
            if (rep.achieved_delta_exact) delta = rep.achieved_delta_exact->str();
            else if (rep.achieved_delta) delta = format_interval(*rep.achieved_delta);
            ExperimentRow base{label, hcrit, P.size(), "", std::nullopt, delta, verdicts};
            bool any = false;
            for (std::size_t i = 0; i < P.size(); ++i)
                for (std::size_t j = i + 1; j < P.size(); ++j)
                    for (std::size_t k = 0; k < P.size(); ++k) {
                        if (k == i || k == j) continue;
                        const Rational a = P[i] - P[k], b = P[j] - P[k];
                        const std::vector<Rational> triple{-a, b, a - b};
                        ExperimentRow row = base;
                        row.triple = "(" + triple[0].str() + " " + triple[1].str() + " " + triple[2].str() + ")";
                        row.abc = abc_quality(triple);
                        out.rows.push_back(std::move(row));
                        any = true;
                    }
            if (!any) out.rows.push_back(base);
        } catch (const Undetermined& e) {
            out.skipped.push_back({label, std::string("undetermined: ") + e.what()});
        } catch (const DomainError& e) {
            out.skipped.push_back({label, e.what()});
        }
    }
    return out;
}

}  // namespace splitrad
