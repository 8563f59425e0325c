#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "splitrad/berkovich/berkovich.hpp"
#include "splitrad/stats/stats.hpp"

namespace splitrad {

namespace detail {

/// RFC 4180 quoting: only fields with a comma, quote or newline are quoted.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

inline std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    return out + '\n';
}

}  // namespace detail

/// level, t_i, k_i, mass_i, q_i, modulus_i with modulus_i = t_i - t_{i+1}.
inline std::string disk_chain_csv(const DiskChain& c) {
    std::string out = detail::csv_row({"level", "t_i", "k_i", "mass_i", "q_i", "modulus_i"});
    for (std::size_t i = 0; i < c.levels.size(); ++i) {
        const auto& l = c.levels[i];
        out += detail::csv_row({std::to_string(i + 1), l.t.str(), std::to_string(l.k), l.mass.str(), l.q.get_str(),
                                c.moduli.at(i).str()});
    }
    return out;
}

/// family_param, h_crit, n_preperiodic, triple, h, rad, quality,
/// achieved_delta, verdicts.
inline std::string experiment_csv(const ExperimentResult& r) {
    std::string out = detail::csv_row(
        {"family_param", "h_crit", "n_preperiodic", "triple", "h", "rad", "quality", "achieved_delta", "verdicts"});
    for (const auto& row : r.rows) {
        out += detail::csv_row({row.family_param, row.h_crit.str(), std::to_string(row.n_preperiodic), row.triple,
                                row.abc ? row.abc->h.str() : "", row.abc ? row.abc->rad.str() : "",
                                row.abc ? row.abc->quality.str() : "", row.achieved_delta, row.verdicts});
    }
    return out;
}

}  // namespace splitrad
