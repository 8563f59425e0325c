#pragma once

// Everything: exact arithmetic, places and heights, polynomials, local
// escape rates, Berkovich disk data, statistics and the emitters.

#include "splitrad/errors.hpp"
#include "splitrad/exact/rational.hpp"
#include "splitrad/exact/interval.hpp"
#include "splitrad/exact/log_value.hpp"
#include "splitrad/exact/factor.hpp"
#include "splitrad/arith/place.hpp"
#include "splitrad/arith/valuation.hpp"
#include "splitrad/arith/heights.hpp"
#include "splitrad/poly/polynomial.hpp"
#include "splitrad/poly/rational_function.hpp"
#include "splitrad/poly/fp_poly.hpp"
#include "splitrad/poly/factor_q.hpp"
#include "splitrad/poly/format.hpp"
#include "splitrad/dynamics/dynamics.hpp"
#include "splitrad/dynamics/parse.hpp"
#include "splitrad/local/newton.hpp"
#include "splitrad/local/complex_ball.hpp"
#include "splitrad/local/escape.hpp"
#include "splitrad/local/heights.hpp"
#include "splitrad/berkovich/berkovich.hpp"
#include "splitrad/stats/stats.hpp"
#include "splitrad/io/report.hpp"
#include "splitrad/io/config.hpp"
#include "splitrad/io/json.hpp"
#include "splitrad/io/csv.hpp"
#include "splitrad/io/svg.hpp"
