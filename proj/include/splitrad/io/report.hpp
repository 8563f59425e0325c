#pragma once

#include <string>
#include <vector>

#include "splitrad/local/heights.hpp"
#include "splitrad/poly/format.hpp"

namespace splitrad {

/// Reduction and critical-height data of one map at every place that can
/// contribute to h_crit.
struct AnalyzeReport {
    std::string poly;
    std::string field;  // "Q" or "Qt"
    int degree = 0;
    bool monic = false;
    LogValue h_crit;
    std::vector<LocalProfile> places;
    std::vector<Place> bad_places;  // places with a "bad" verdict
    friend bool operator==(const AnalyzeReport&, const AnalyzeReport&) = default;
};

namespace detail {

inline std::vector<Place> bad_from(const std::vector<LocalProfile>& ps) {
    std::vector<Place> out;
    for (const auto& p : ps)
        if (p.is_bad == true) out.push_back(p.place);
    return out;
}

}  // namespace detail

inline AnalyzeReport analyze(const QPoly& f, EscapeOptions opts = {}) {
    const auto ch = HeightEngine(f, opts).critical_height_global();
    return {to_string(f), "Q", f.degree(), f.is_monic(), ch.total, ch.profiles, detail::bad_from(ch.profiles)};
}

inline AnalyzeReport analyze(const Polynomial<RationalFunction>& f) {
    const auto ch = critical_height_global(f);
    return {to_string(f), "Qt", f.degree(), f.is_monic(), ch.total, ch.profiles, detail::bad_from(ch.profiles)};
}

}  // namespace splitrad
