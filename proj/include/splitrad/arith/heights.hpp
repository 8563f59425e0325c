#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "splitrad/arith/place.hpp"

namespace splitrad {

/// Integers above this many bits get a numeric log enclosure instead of an
/// exact prime decomposition.
inline constexpr std::size_t kExactLogBits = 100;

/// ln n for n >= 1, exact as sum e_p log p when n is small enough to
/// factor, otherwise a certified enclosure.
inline LogValue log_integer(const Integer& n) {
    if (n <= 0) throw DomainError("log of non-positive integer");
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > kExactLogBits) return LogValue::numeric(Interval::log_of(n));
    LogValue out;
    for (const auto& [p, e] : factorize(n)) out += LogValue::log_prime(p, static_cast<long>(e));
    return out;
}

/// log|x|_v for x in Q. Exact at finite places; at the archimedean place
/// log|x| = log|num| - log den, exact whenever both factor.
inline LogValue local_abs_log(const Rational& x, const Place& v) {
    if (x.is_zero()) throw DomainError("log|0| is -infinity");
    switch (v.kind()) {
        case Place::Kind::finite: return LogValue::log_prime(v.prime(), -vp(x, v.prime()));
        case Place::Kind::arch: return log_integer(abs(x.num())) - log_integer(x.den());
        default: throw DomainError("place " + v.str() + " is not a place of Q");
    }
}

/// log|x|_v for x in Q(t): -ord_v(x) * deg v, as a plain rational.
inline LogValue local_abs_log(const RationalFunction& x, const Place& v) {
    if (x.is_zero()) throw DomainError("log|0| is -infinity");
    switch (v.kind()) {
        case Place::Kind::finite_poly:
            return LogValue::rational(-valuation(x, v.uniformizer()).value() * v.uniformizer().degree());
        case Place::Kind::t_infinity: return LogValue::rational(x.degree());
        default: throw DomainError("place " + v.str() + " is not a place of Q(t)");
    }
}

/// A point of projective space: coordinates up to a common nonzero scalar.
template <class K>
class ProjectivePoint {
public:
    explicit ProjectivePoint(std::vector<K> coords) : c_(std::move(coords)) {
        if (c_.size() < 2) throw DomainError("projective point needs at least two coordinates");
        if (std::all_of(c_.begin(), c_.end(), [](const K& x) { return x == K(0); }))
            throw DomainError("projective point with all coordinates zero");
    }
    const std::vector<K>& coords() const { return c_; }
    std::size_t size() const { return c_.size(); }
    bool all_nonzero() const {
        return std::none_of(c_.begin(), c_.end(), [](const K& x) { return x == K(0); });
    }
    ProjectivePoint scaled(const K& s) const {
        if (s == K(0)) throw DomainError("scaling by zero");
        std::vector<K> c = c_;
        for (auto& x : c) x = x * s;
        return ProjectivePoint(std::move(c));
    }
    /// Equality in projective space: all 2x2 minors vanish.
    friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = i + 1; j < a.c_.size(); ++j)
                if (!(a.c_[i] * b.c_[j] == a.c_[j] * b.c_[i])) return false;
        return true;
    }

private:
    std::vector<K> c_;
};

namespace detail {

inline void require_nonzero(const auto& P) {
    if (!P.all_nonzero()) throw DomainError("point has a zero coordinate");
}

/// Monic irreducible factors of numerators and denominators of the coordinates.
inline std::vector<QPoly> candidate_uniformizers(const std::vector<RationalFunction>& xs) {
    std::vector<QPoly> out;
    auto add = [&](const QPoly& p) {
        if (p.degree() < 1) return;
        for (const auto& [f, m] : factor(p).factors)
            if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    };
    for (const auto& x : xs) {
        add(x.num());
        add(x.den());
    }
    std::sort(out.begin(), out.end(), qpoly_less);
    return out;
}

}  // namespace detail

/// I(P): places where the coordinate valuations are not all equal.
inline std::vector<Place> support(const ProjectivePoint<Rational>& P) {
    detail::require_nonzero(P);
    std::set<Integer, IntegerLess> primes;
    for (const auto& x : P.coords())
        for (const auto& p : prime_support(x)) primes.insert(p);
    std::vector<Place> out;
    for (const auto& p : primes) {
        const long v0 = vp(P.coords()[0], p);
        for (const auto& x : P.coords())
            if (vp(x, p) != v0) {
                out.push_back(Place::finite(p));
                break;
            }
    }
    return out;
}

inline std::vector<Place> support(const ProjectivePoint<RationalFunction>& P) {
    detail::require_nonzero(P);
    std::vector<Place> out;
    for (const auto& pi : detail::candidate_uniformizers(P.coords())) {
        const long v0 = valuation(P.coords()[0], pi).value();
        for (const auto& x : P.coords())
            if (valuation(x, pi).value() != v0) {
                out.push_back(Place::finite_poly(pi));
                break;
            }
    }
    const int d0 = P.coords()[0].degree();
    for (const auto& x : P.coords())
        if (x.degree() != d0) {
            out.push_back(Place::t_infinity());
            break;
        }
    return out;
}

/// Coordinates scaled to coprime integers.
inline std::vector<Integer> primitive_integer_coords(const ProjectivePoint<Rational>& P) {
    Integer l = 1, g = 0;
    for (const auto& x : P.coords()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
    std::vector<Integer> n;
    for (const auto& x : P.coords()) n.push_back(x.num() * (l / x.den()));
    for (const auto& x : n) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    for (auto& x : n) x /= g;
    return n;
}

/// Coordinates scaled to coprime polynomials.
inline std::vector<QPoly> primitive_poly_coords(const ProjectivePoint<RationalFunction>& P) {
    QPoly l = QPoly::constant(1);
    for (const auto& x : P.coords()) l = l / gcd(l, x.den()) * x.den();
    std::vector<QPoly> n;
    for (const auto& x : P.coords()) n.push_back(x.num() * (l / x.den()));
    QPoly g;
    for (const auto& x : n) g = gcd(g, x);
    for (auto& x : n) x = x / g;
    return n;
}

/// Weil height: sum over finite places of -min v(z_i) N_v plus log max|z_i|
/// at the archimedean place. Over Q this is log max |n_i| for the coprime
/// integer representative.
inline LogValue naive_height(const ProjectivePoint<Rational>& P) {
    Integer m = 0;
    for (const auto& x : primitive_integer_coords(P)) m = std::max(m, Integer(abs(x)));
    return log_integer(m);
}

/// Over Q(t): the maximal degree of a coprime polynomial representative.
inline LogValue naive_height(const ProjectivePoint<RationalFunction>& P) {
    int m = 0;
    for (const auto& x : primitive_poly_coords(P)) m = std::max(m, x.degree());
    return LogValue::rational(m);
}

/// rad(P) = sum of N_v over the support I(P).
template <class K>
LogValue radical(const ProjectivePoint<K>& P) {
    LogValue out;
    for (const auto& v : support(P)) out += v.weight();
    return out;
}

/// sum over all places of r_v log|x|_v; exactly zero by the product formula.
inline LogValue product_formula_check(const Rational& x) {
    if (x.is_zero()) throw DomainError("product formula needs a nonzero element");
    LogValue out = local_abs_log(x, Place::archimedean());
    for (const auto& p : prime_support(x)) out += local_abs_log(x, Place::finite(p));
    return out;
}

inline LogValue product_formula_check(const RationalFunction& x) {
    if (x.is_zero()) throw DomainError("product formula needs a nonzero element");
    LogValue out = local_abs_log(x, Place::t_infinity());
    for (const auto& pi : detail::candidate_uniformizers({x})) out += local_abs_log(x, Place::finite_poly(pi));
    return out;
}

}  // namespace splitrad
