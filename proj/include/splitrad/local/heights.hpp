#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "splitrad/local/escape.hpp"

namespace splitrad {

/// Local data of f at one place.
struct LocalProfile {
    Place place;
    std::optional<bool> is_bad;   // nullopt: no verdict claimed
    std::optional<LogValue> g_v;  // splitting radius, present iff is_bad == true
    LogValue lambda_crit;
    friend bool operator==(const LocalProfile&, const LocalProfile&) = default;
};

struct CriticalHeight {
    LogValue total;                      // h_crit = sum_v r_v lambda_crit,v
    std::vector<LocalProfile> profiles;  // every place that can contribute, in place order
};

namespace detail {

/// Upper envelope of two archimedean values (escape rates are >= 0).
inline LogValue arch_max(const LogValue& a, const LogValue& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return LogValue::numeric(max(a.enclosure(), b.enclosure()));
}

/// Primes dividing a numerator or denominator of a coefficient.
inline std::set<Integer, IntegerLess> coefficient_primes(const QPoly& f) {
    std::set<Integer, IntegerLess> out;
    for (const auto& a : f.coeffs())
        if (!a.is_zero())
            for (const auto& p : prime_support(a)) out.insert(p);
    return out;
}

}  // namespace detail

/// Escape rates, critical heights and canonical heights of one polynomial
/// over Q, with per-prime contexts cached.
class HeightEngine {
public:
    explicit HeightEngine(QPoly f, EscapeOptions opts = {})
        : f_(std::move(f)), opts_(opts), cycles_(detail::small_cycles(f_)), crit_(critical_points(f_)) {
        if (f_.degree() < 2) throw DomainError("degree must be at least 2");
    }

    const QPoly& poly() const { return f_; }
    int degree() const { return f_.degree(); }
    const EscapeOptions& options() const { return opts_; }
    const CriticalPoints& critical() const { return crit_; }

    const NonArchEscape& at_prime(const Integer& p) const {
        auto it = nonarch_.find(p);
        if (it == nonarch_.end())
            it = nonarch_.emplace(p, std::make_unique<NonArchEscape>(f_, p, cycles_, opts_)).first;
        return *it->second;
    }
    const ArchEscape& at_infinity() const {
        if (!arch_) arch_ = std::make_unique<ArchEscape>(f_, cycles_, opts_);
        return *arch_;
    }

    /// lambda_v(z).
    LogValue escape_rate(const Rational& z, const Place& v) const {
        if (v.is_arch()) return at_infinity().rate(z, opts_.tol);
        return at_prime(v.prime()).rate(z);
    }

    /// Places where f can have nonzero critical height: infinity, primes
    /// <= d and primes of the coefficients. Elsewhere f has an integral
    /// model with unit leading coefficient and integral critical points.
    std::vector<Place> critical_places() const {
        auto primes = detail::coefficient_primes(f_);
        for (const auto& p : primes_up_to(degree())) primes.insert(p);
        std::vector<Place> out{Place::archimedean()};
        for (const auto& p : primes) out.push_back(Place::finite(p));
        return out;
    }

    /// max over finite critical points a of lambda_v(a).
    LogValue critical_height_local(const Place& v) const {
        if (v.is_arch()) {
            LogValue best;
            const auto& A = at_infinity();
            for (const auto& [c, m] : crit_.rational) best = detail::arch_max(best, A.rate(c, opts_.tol));
            for (const auto& [q, m] : crit_.irrational) best = detail::arch_max(best, A.max_rate_over_roots(q, opts_.tol));
            return best;
        }
        if (!v.is_finite_prime()) throw DomainError("place " + v.str() + " is not a place of Q");
        if (f_.is_monic() && !in_small_places(v, degree())) {
            const auto g = splitting_radius(f_, v);
            return g ? *g : LogValue{};
        }
        const auto& E = at_prime(v.prime());
        std::optional<Rational> best;
        auto take = [&](const Rational& r) {
            if (!best || r > *best) best = r;
        };
        for (const auto& [c, m] : crit_.rational) take(E.rate_exponent(c));
        for (const auto& [q, m] : crit_.irrational) take(E.max_rate_exponent_over_roots(q));
        return best ? LogValue::log_prime(v.prime(), *best) : LogValue{};
    }

    LocalProfile local_profile(const Place& v) const {
        LocalProfile out{v, std::nullopt, std::nullopt, critical_height_local(v)};
        if (!v.is_arch()) {
            out.is_bad = reduction_is_bad(f_, v);
            if (out.is_bad && *out.is_bad) out.g_v = splitting_radius(f_, v);
        }
        return out;
    }

    CriticalHeight critical_height_global() const {
        CriticalHeight out;
        for (const auto& v : critical_places()) {
            out.profiles.push_back(local_profile(v));
            out.total += v.r() * out.profiles.back().lambda_crit;
        }
        return out;
    }

    /// Places where lambda_v(P) can differ from log+|P|_v = 0.
    std::vector<Place> height_places(const Rational& P) const {
        auto primes = detail::coefficient_primes(f_);
        for (const auto& p : prime_support(Rational(P.den()))) primes.insert(p);
        std::vector<Place> out{Place::archimedean()};
        for (const auto& p : primes) out.push_back(Place::finite(p));
        return out;
    }

    /// sum_v r_v lambda_v(P).
    LogValue canonical_height(const Rational& P) const {
        LogValue out;
        for (const auto& v : height_places(P)) out += v.r() * escape_rate(P, v);
        return out;
    }

private:
    QPoly f_;
    EscapeOptions opts_;
    detail::SmallCycles cycles_;
    CriticalPoints crit_;
    mutable std::map<Integer, std::unique_ptr<NonArchEscape>, IntegerLess> nonarch_;
    mutable std::unique_ptr<ArchEscape> arch_;
};

inline LogValue escape_rate_nonarch(const QPoly& f, const Place& v, const Rational& z, EscapeOptions opts = {}) {
    return NonArchEscape(f, v.prime(), opts).rate(z);
}

inline LogValue escape_rate_arch(const QPoly& f, const Rational& z, double tol, EscapeOptions opts = {}) {
    opts.tol = tol;
    return ArchEscape(f, opts).rate(z, tol);
}

inline LogValue critical_height_local(const QPoly& f, const Place& v, EscapeOptions opts = {}) {
    return HeightEngine(f, opts).critical_height_local(v);
}

inline CriticalHeight critical_height_global(const QPoly& f, EscapeOptions opts = {}) {
    return HeightEngine(f, opts).critical_height_global();
}

inline LogValue canonical_height(const QPoly& f, const Rational& P, EscapeOptions opts = {}) {
    return HeightEngine(f, opts).canonical_height(P);
}

/// Over Q(t) only monic polynomials are handled: every place has residue
/// characteristic 0, so lambda_crit,v is the splitting radius.
inline CriticalHeight critical_height_global(const Polynomial<RationalFunction>& f) {
    if (!f.is_monic()) throw Undetermined("critical heights over Q(t) are only computed for monic polynomials");
    std::vector<RationalFunction> coeffs(f.coeffs().begin(), f.coeffs().end());
    std::vector<Place> places;
    for (const auto& pi : detail::candidate_uniformizers(coeffs)) places.push_back(Place::finite_poly(pi));
    places.push_back(Place::t_infinity());
    CriticalHeight out;
    for (const auto& v : places) {
        const auto g = splitting_radius(f, v);
        LocalProfile prof{v, g.has_value(), g, g ? *g : LogValue{}};
        out.total += prof.lambda_crit;
        out.profiles.push_back(prof);
    }
    return out;
}

}  // namespace splitrad
