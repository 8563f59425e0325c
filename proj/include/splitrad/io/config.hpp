#pragma once

#include <string>

#include "splitrad/dynamics/parse.hpp"
#include "splitrad/local/escape.hpp"

namespace splitrad {

/// Settings shared by every subcommand.
struct RunConfig {
    std::string field = "Q";                 // "Q" or "Qt"
    Rational tol = Rational(1, 100'000'000);  // width target of archimedean enclosures
    unsigned max_iter = 60;                  // exact orbit iterations
    unsigned charpoly_depth = 8;             // iterations for irrational critical points
    unsigned float_iter = 400;               // ball iterations at infinity
    std::string out;                         // output path, empty for stdout
    std::string format;                      // json, csv or svg; empty picks the subcommand default

    /// Throws DomainError unless tol > 0, every cap >= 1 and the field and
    /// format are known.
    void validate() const {
        if (field != "Q" && field != "Qt") throw DomainError("field must be Q or Qt, got '" + field + "'");
        if (tol.sign() <= 0) throw DomainError("tolerance must be positive");
        if (max_iter < 1 || charpoly_depth < 1 || float_iter < 1) throw DomainError("iteration caps must be at least 1");
        if (!format.empty() && format != "json" && format != "csv" && format != "svg")
            throw DomainError("format must be json, csv or svg, got '" + format + "'");
    }

    EscapeOptions escape_options() const {
        validate();
        EscapeOptions o;
        o.max_iter = max_iter;
        o.charpoly_depth = charpoly_depth;
        o.float_iter = float_iter;
        o.tol = tol.to_double();
        return o;
    }
};

}  // namespace splitrad
