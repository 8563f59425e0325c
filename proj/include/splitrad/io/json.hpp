#pragma once

#include <json.hpp>

#include "splitrad/dynamics/parse.hpp"
#include "splitrad/io/report.hpp"
#include "splitrad/stats/stats.hpp"

// Serializers for the report types. Every type round-trips:
// j.get<T>() == x for j = json(x).

namespace nlohmann {

template <>
struct adl_serializer<splitrad::Rational> {
    static void to_json(json& j, const splitrad::Rational& q) { j = q.str(); }
    static splitrad::Rational from_json(const json& j) { return splitrad::Rational::parse(j.get<std::string>()); }
};

template <>
struct adl_serializer<splitrad::Integer> {
    static void to_json(json& j, const splitrad::Integer& n) { j = n.get_str(); }
    static splitrad::Integer from_json(const json& j) { return splitrad::Integer(j.get<std::string>()); }
};

template <>
struct adl_serializer<splitrad::Interval> {
    static void to_json(json& j, const splitrad::Interval& x) { j = json::array({x.lo(), x.hi()}); }
    static splitrad::Interval from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }
};

template <>
struct adl_serializer<splitrad::LogValue> {
    static void to_json(json& j, const splitrad::LogValue& v) {
        j = json::object();
        j["text"] = v.str();
        j["approx"] = v.approx();
        j["constant"] = v.constant();
        json logs = json::object();
        for (const auto& [p, q] : v.logs()) logs[p.get_str()] = q;
        j["logs"] = logs;
        if (!v.is_exact()) j["arch"] = v.arch();
    }
    static splitrad::LogValue from_json(const json& j) {
        auto v = splitrad::LogValue::rational(j.at("constant").get<splitrad::Rational>());
        for (const auto& [p, q] : j.at("logs").items())
            v += splitrad::LogValue::log_prime(splitrad::Integer(p), q.get<splitrad::Rational>());
        if (j.contains("arch")) v += splitrad::LogValue::numeric(j.at("arch").get<splitrad::Interval>());
        return v;
    }
};

template <>
struct adl_serializer<splitrad::Place> {
    static void to_json(json& j, const splitrad::Place& v) {
        using K = splitrad::Place::Kind;
        switch (v.kind()) {
            case K::arch: j = {{"kind", "arch"}}; break;
            case K::finite: j = {{"kind", "finite"}, {"p", json::parse(v.prime().get_str())}}; break;
            case K::finite_poly: j = {{"kind", "finite_poly"}, {"pi", v.str()}}; break;
            case K::t_infinity: j = {{"kind", "t_infinity"}}; break;
        }
    }
    static splitrad::Place from_json(const json& j) {
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "arch") return splitrad::Place::archimedean();
        if (kind == "finite") return splitrad::Place::finite(splitrad::Integer(j.at("p").dump()));
        if (kind == "finite_poly") return splitrad::parse_place(j.at("pi").get<std::string>());
        if (kind == "t_infinity") return splitrad::Place::t_infinity();
        throw splitrad::DomainError("unknown place kind '" + kind + "'");
    }
};

template <class T>
struct adl_serializer<std::optional<T>> {
    static void to_json(json& j, const std::optional<T>& x) {
        if (x) j = *x;
        else j = nullptr;
    }
    static std::optional<T> from_json(const json& j) {
        if (j.is_null()) return std::nullopt;
        return j.get<T>();
    }
};

template <>
struct adl_serializer<splitrad::LocalProfile> {
    static void to_json(json& j, const splitrad::LocalProfile& p) {
        j = {{"place", p.place}, {"is_bad", p.is_bad}, {"g_v", p.g_v}, {"lambda_crit", p.lambda_crit}};
    }
    static splitrad::LocalProfile from_json(const json& j) {
        return {j.at("place").get<splitrad::Place>(), j.at("is_bad").get<std::optional<bool>>(),
                j.at("g_v").get<std::optional<splitrad::LogValue>>(), j.at("lambda_crit").get<splitrad::LogValue>()};
    }
};

template <>
struct adl_serializer<splitrad::AnalyzeReport> {
    static void to_json(json& j, const splitrad::AnalyzeReport& r) {
        j = {{"poly", r.poly},     {"field", r.field},   {"degree", r.degree},         {"monic", r.monic},
             {"h_crit", r.h_crit}, {"places", r.places}, {"bad_places", r.bad_places}};
    }
    static splitrad::AnalyzeReport from_json(const json& j) {
        return {j.at("poly").get<std::string>(),
                j.at("field").get<std::string>(),
                j.at("degree").get<int>(),
                j.at("monic").get<bool>(),
                j.at("h_crit").get<splitrad::LogValue>(),
                j.at("places").get<std::vector<splitrad::LocalProfile>>(),
                j.at("bad_places").get<std::vector<splitrad::Place>>()};
    }
};

template <>
struct adl_serializer<splitrad::PreperiodicPoint> {
    static void to_json(json& j, const splitrad::PreperiodicPoint& p) {
        j = {{"value", p.value}, {"preperiod", p.preperiod}, {"period", p.period}};
    }
    static splitrad::PreperiodicPoint from_json(const json& j) {
        return {j.at("value").get<splitrad::Rational>(), j.at("preperiod").get<unsigned>(), j.at("period").get<unsigned>()};
    }
};

template <>
struct adl_serializer<splitrad::DiskLevel> {
    static void to_json(json& j, const splitrad::DiskLevel& l) {
        j = {{"t", l.t}, {"k", l.k}, {"mass", l.mass}, {"q", l.q}};
    }
    static splitrad::DiskLevel from_json(const json& j) {
        return {j.at("t").get<splitrad::Rational>(), j.at("k").get<int>(), j.at("mass").get<splitrad::Rational>(),
                j.at("q").get<splitrad::Integer>()};
    }
};

template <>
struct adl_serializer<splitrad::DiskChain> {
    static void to_json(json& j, const splitrad::DiskChain& c) {
        j = {{"place", c.place}, {"degree", c.degree}, {"g", c.g}, {"levels", c.levels}, {"moduli", c.moduli}};
    }
    static splitrad::DiskChain from_json(const json& j) {
        return {j.at("place").get<splitrad::Place>(), j.at("degree").get<int>(), j.at("g").get<splitrad::Rational>(),
                j.at("levels").get<std::vector<splitrad::DiskLevel>>(),
                j.at("moduli").get<std::vector<splitrad::Rational>>()};
    }
};

template <>
struct adl_serializer<splitrad::fp::Poly> {
    static void to_json(json& j, const splitrad::fp::Poly& p) { j = p.c; }
    static splitrad::fp::Poly from_json(const json& j) { return {j.get<std::vector<splitrad::Integer>>()}; }
};

template <>
struct adl_serializer<splitrad::WingCluster> {
    static void to_json(json& j, const splitrad::WingCluster& c) {
        j = {{"center", c.center},         {"mass", c.mass},          {"roots", c.roots},
             {"components", c.components}, {"residue", c.residue}};
    }
    static splitrad::WingCluster from_json(const json& j) {
        return {j.at("center").get<std::optional<splitrad::Rational>>(), j.at("mass").get<splitrad::Rational>(),
                j.at("roots").get<unsigned>(), j.at("components").get<std::optional<unsigned>>(),
                j.at("residue").get<splitrad::fp::Poly>()};
    }
};

template <>
struct adl_serializer<splitrad::WingClusters> {
    static void to_json(json& j, const splitrad::WingClusters& w) {
        j = {{"place", w.place}, {"g", w.g}, {"shift", w.shift}, {"clusters", w.clusters}};
    }
    static splitrad::WingClusters from_json(const json& j) {
        return {j.at("place").get<splitrad::Place>(), j.at("g").get<splitrad::Rational>(),
                j.at("shift").get<splitrad::Rational>(), j.at("clusters").get<std::vector<splitrad::WingCluster>>()};
    }
};

template <>
struct adl_serializer<splitrad::PlaceEquidistribution> {
    static void to_json(json& j, const splitrad::PlaceEquidistribution& p) {
        j = {{"place", p.place},
             {"lambda_crit", p.lambda_crit},
             {"annulus_count", p.annulus_count},
             {"annulus_mass", p.annulus_mass},
             {"wing_counts", p.wing_counts},
             {"wing_masses", p.wing_masses},
             {"annulus_ok", p.annulus_ok},
             {"wings_ok", p.wings_ok},
             {"verdict", p.verdict}};
    }
    static splitrad::PlaceEquidistribution from_json(const json& j) {
        return {j.at("place").get<splitrad::Place>(),
                j.at("lambda_crit").get<splitrad::LogValue>(),
                j.at("annulus_count").get<long>(),
                j.at("annulus_mass").get<splitrad::Rational>(),
                j.at("wing_counts").get<std::vector<long>>(),
                j.at("wing_masses").get<std::vector<splitrad::Rational>>(),
                j.at("annulus_ok").get<bool>(),
                j.at("wings_ok").get<bool>(),
                j.at("verdict").get<bool>()};
    }
};

template <>
struct adl_serializer<splitrad::EquidistributionReport> {
    static void to_json(json& j, const splitrad::EquidistributionReport& r) {
        j = {{"p0", r.p0},
             {"period", r.period},
             {"degree", r.degree},
             {"points", r.points},
             {"eps", r.eps},
             {"m0", r.m0},
             {"places", r.places},
             {"achieved_delta", r.achieved_delta},
             {"achieved_delta_exact", r.achieved_delta_exact}};
    }
    static splitrad::EquidistributionReport from_json(const json& j) {
        splitrad::EquidistributionReport r;
        r.p0 = j.at("p0").get<splitrad::Rational>();
        r.period = j.at("period").get<unsigned>();
        r.degree = j.at("degree").get<int>();
        r.points = j.at("points").get<std::size_t>();
        r.eps = j.at("eps").get<splitrad::Rational>();
        r.m0 = j.at("m0").get<int>();
        r.places = j.at("places").get<std::vector<splitrad::PlaceEquidistribution>>();
        r.achieved_delta = j.at("achieved_delta").get<std::optional<splitrad::Interval>>();
        r.achieved_delta_exact = j.at("achieved_delta_exact").get<std::optional<splitrad::Rational>>();
        return r;
    }
};

template <>
struct adl_serializer<splitrad::EpsGoodWitness> {
    static void to_json(json& j, const splitrad::EpsGoodWitness& w) {
        j = {{"alpha", w.alpha}, {"sum", w.sum}, {"good", w.good}};
    }
    static splitrad::EpsGoodWitness from_json(const json& j) {
        return {j.at("alpha").get<splitrad::Rational>(), j.at("sum").get<splitrad::LogValue>(),
                j.at("good").get<std::optional<bool>>()};
    }
};

template <>
struct adl_serializer<splitrad::EpsGoodResult> {
    static void to_json(json& j, const splitrad::EpsGoodResult& r) {
        j = {{"h_crit", r.h_crit},     {"degenerate", r.degenerate}, {"good", r.good},
             {"undetermined", r.undetermined}, {"total", r.total}, {"fraction", r.fraction},
             {"witnesses", r.witnesses}};
    }
    static splitrad::EpsGoodResult from_json(const json& j) {
        splitrad::EpsGoodResult r;
        r.h_crit = j.at("h_crit").get<splitrad::LogValue>();
        r.degenerate = j.at("degenerate").get<bool>();
        r.good = j.at("good").get<std::size_t>();
        r.undetermined = j.at("undetermined").get<std::size_t>();
        r.total = j.at("total").get<std::size_t>();
        r.fraction = j.at("fraction").get<splitrad::Rational>();
        r.witnesses = j.at("witnesses").get<std::vector<splitrad::EpsGoodWitness>>();
        return r;
    }
};

template <>
struct adl_serializer<splitrad::PairMoment> {
    static void to_json(json& j, const splitrad::PairMoment& m) {
        j = {{"average", m.average}, {"pairs", m.pairs}, {"meeting", m.meeting}, {"undetermined", m.undetermined}};
    }
    static splitrad::PairMoment from_json(const json& j) {
        return {j.at("average").get<splitrad::LogValue>(), j.at("pairs").get<std::size_t>(),
                j.at("meeting").get<std::size_t>(), j.at("undetermined").get<std::size_t>()};
    }
};

template <class K>
struct adl_serializer<splitrad::AbcQuality<K>> {
    static void to_json(json& j, const splitrad::AbcQuality<K>& q) {
        j = {{"h", q.h}, {"rad", q.rad}, {"quality", q.quality}};
    }
    static splitrad::AbcQuality<K> from_json(const json& j) {
        return {j.at("h").get<splitrad::LogValue>(), j.at("rad").get<splitrad::LogValue>(),
                j.at("quality").get<splitrad::LogValue>()};
    }
};

}  // namespace nlohmann

namespace splitrad {

using json = nlohmann::json;

/// Parses the printed form back and compares, for every emitted report.
template <class T>
bool json_round_trips(const T& x) {
    return json::parse(json(x).dump()).template get<T>() == x;
}

}  // namespace splitrad
