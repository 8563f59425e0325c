#pragma once

#include <optional>
#include <vector>

#include "splitrad/arith/heights.hpp"
#include "splitrad/dynamics/dynamics.hpp"

namespace splitrad {

/// ord_v(x) for nonzero x at a non-archimedean place of its field.
inline long ord(const Rational& x, const Place& v) {
    if (!v.is_finite_prime()) throw DomainError("place " + v.str() + " is not a finite place of Q");
    return vp(x, v.prime());
}
inline long ord(const RationalFunction& x, const Place& v) {
    switch (v.kind()) {
        case Place::Kind::finite_poly: return valuation(x, v.uniformizer()).value();
        case Place::Kind::t_infinity: return valuation_at_infinity(x).value();
        default: throw DomainError("place " + v.str() + " is not a place of Q(t)");
    }
}

/// Lower convex hull of the points (i, ord(a_i)). A segment of slope s and
/// length l carries l roots of absolute value |pi|^{-s}, i.e. log-size s in
/// units of the place weight. Roots at 0 are not represented.
struct NewtonPolygon {
    struct Segment {
        Rational slope;
        int length = 0;
        friend bool operator==(const Segment&, const Segment&) = default;
    };
    std::vector<std::pair<int, long>> vertices;
    std::vector<Segment> segments;

    /// Largest slope, i.e. the log-size of the largest nonzero root.
    std::optional<Rational> max_slope() const {
        if (segments.empty()) return std::nullopt;
        return segments.back().slope;
    }
    friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;
};

inline NewtonPolygon newton_polygon_from(const std::vector<std::pair<int, long>>& pts) {
    NewtonPolygon np;
    auto& hull = np.vertices;
    for (const auto& pt : pts) {
        // Pop while the last vertex lies on or above the segment to pt.
        while (hull.size() >= 2) {
            const auto& [x1, y1] = hull[hull.size() - 2];
            const auto& [x2, y2] = hull.back();
            const Rational s12(y2 - y1, x2 - x1), s13(pt.second - y1, pt.first - x1);
            if (s13 <= s12)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    for (std::size_t i = 0; i + 1 < hull.size(); ++i)
        np.segments.push_back({Rational(hull[i + 1].second - hull[i].second, hull[i + 1].first - hull[i].first),
                               hull[i + 1].first - hull[i].first});
    return np;
}

/// Newton polygon of f at a non-archimedean place.
template <class K>
NewtonPolygon newton_polygon(const Polynomial<K>& f, const Place& v) {
    if (f.is_zero()) throw DomainError("Newton polygon of the zero polynomial");
    std::vector<std::pair<int, long>> pts;
    for (int i = 0; i <= f.degree(); ++i) {
        const K& a = f.coeffs()[static_cast<std::size_t>(i)];
        if (!(a == K(0))) pts.emplace_back(i, ord(a, v));
    }
    return newton_polygon_from(pts);
}

inline NewtonPolygon newton_polygon(const QPoly& f, const Integer& p) {
    return newton_polygon(f, Place::finite(p));
}

/// max_{0<=i<=d-2} -ord(a_i)/(d-i) on an already centered polynomial;
/// nullopt when every low coefficient vanishes (f = z^d).
template <class K>
std::optional<Rational> splitting_exponent_of_centered(const Polynomial<K>& g, const Place& v) {
    const int d = g.degree();
    std::optional<Rational> s;
    for (int i = 0; i <= d - 2; ++i) {
        const K& a = g.coeffs()[static_cast<std::size_t>(i)];
        if (a == K(0)) continue;
        const Rational r(-ord(a, v), d - i);
        if (!s || r > *s) s = r;
    }
    return s;
}

/// Verdict of the splitting-radius test. `exponent` is s* in units of the
/// place weight (log_p units over Q) and is set only when bad.
struct SplittingVerdict {
    bool bad = false;
    std::optional<Rational> exponent;
};

namespace detail {

inline bool is_small_place(const Place& v, int d) { return in_small_places(v, d); }

template <class K>
SplittingVerdict splitting_verdict(const Polynomial<K>& f, const Place& v) {
    if (!f.is_monic()) throw DomainError("splitting radius needs a monic polynomial");
    if (f.degree() < 2) throw DomainError("degree must be at least 2");
    const auto g = center(f).poly;
    const auto s = splitting_exponent_of_centered(g, v);
    if (s && s->sign() > 0) return {true, s};
    return {false, std::nullopt};
}

}  // namespace detail

/// Logarithmic splitting radius g_v = s* N_v for monic f at v outside S_d;
/// nullopt for good reduction.
template <class K>
std::optional<LogValue> splitting_radius(const Polynomial<K>& f, const Place& v) {
    if (v.is_arch()) throw DomainError("splitting radius is defined at non-archimedean places");
    if (detail::is_small_place(v, f.degree()))
        throw DomainError("place " + v.str() + " lies in S_d; use critical_height_local");
    const auto verdict = detail::splitting_verdict(f, v);
    if (!verdict.bad) return std::nullopt;
    return *verdict.exponent * v.weight();
}

/// Reduction type: true (bad), false (good) or nullopt (no claim).
/// Claims are made for monic f: outside S_d by the splitting radius; inside
/// S_d only "good", and only when the centered form is integral at v.
template <class K>
std::optional<bool> reduction_is_bad(const Polynomial<K>& f, const Place& v) {
    if (v.is_arch() || !f.is_monic()) return std::nullopt;
    const auto verdict = detail::splitting_verdict(f, v);
    if (!detail::is_small_place(v, f.degree())) return verdict.bad;
    const auto g = center(f).poly;
    for (const auto& a : g.coeffs())
        if (!(a == K(0)) && ord(a, v) < 0) return std::nullopt;
    return false;
}

}  // namespace splitrad
