#pragma once

#include <compare>
#include <ostream>
#include <string>

#include "splitrad/arith/valuation.hpp"
#include "splitrad/exact/log_value.hpp"
#include "splitrad/poly/factor_q.hpp"
#include "splitrad/poly/format.hpp"

namespace splitrad {

/// Ground field of a computation.
enum class FieldKind { Q, Qt };

/// A normalized place of Q or Q(t).
///
///   arch         the usual absolute value on Q
///   finite       p-adic, |p|_p = 1/p, weight log p
///   finite_poly  pi-adic on Q(t), pi monic irreducible, weight deg pi
///   t_infinity   degree valuation on Q(t), weight 1
///
/// Every place has r_v = 1.
class Place {
public:
    enum class Kind { arch, finite, finite_poly, t_infinity };

    static Place archimedean() { return Place(Kind::arch); }
    static Place finite(const Integer& p) {
        if (!is_prime(p)) throw DomainError("place: " + p.get_str() + " is not prime");
        Place v(Kind::finite);
        v.p_ = p;
        return v;
    }
    static Place finite_poly(const QPoly& pi) {
        if (pi.degree() < 1) throw DomainError("place: uniformizer must have positive degree");
        const QPoly m = pi.monic();
        const auto f = factor(m);
        if (f.factors.size() != 1 || f.factors[0].second != 1)
            throw DomainError("place: " + to_string(m, 't', true) + " is not irreducible");
        Place v(Kind::finite_poly);
        v.pi_ = m;
        return v;
    }
    static Place t_infinity() { return Place(Kind::t_infinity); }

    Kind kind() const { return kind_; }
    bool is_arch() const { return kind_ == Kind::arch; }
    bool is_finite_prime() const { return kind_ == Kind::finite; }
    FieldKind field() const {
        return (kind_ == Kind::arch || kind_ == Kind::finite) ? FieldKind::Q : FieldKind::Qt;
    }
    const Integer& prime() const {
        if (kind_ != Kind::finite) throw DomainError("place has no prime");
        return p_;
    }
    const QPoly& uniformizer() const {
        if (kind_ != Kind::finite_poly) throw DomainError("place has no polynomial uniformizer");
        return pi_;
    }

    /// N_v: log p, deg pi, 1 at t = infinity, 1 at the archimedean place.
    LogValue weight() const {
        switch (kind_) {
            case Kind::finite: return LogValue::log_prime(p_);
            case Kind::finite_poly: return LogValue::rational(pi_.degree());
            case Kind::t_infinity:
            case Kind::arch: return LogValue::rational(1);
        }
        return {};
    }
    Rational r() const { return 1; }

    /// Label used on the command line and as a JSON key: "inf", "5",
    /// "t-1", "t_infinity".
    std::string str() const {
        switch (kind_) {
            case Kind::arch: return "inf";
            case Kind::finite: return p_.get_str();
            case Kind::finite_poly: return to_string(pi_, 't', true);
            case Kind::t_infinity: return "t_infinity";
        }
        return {};
    }
    friend std::ostream& operator<<(std::ostream& os, const Place& v) { return os << v.str(); }

    friend bool operator==(const Place& a, const Place& b) {
        return a.kind_ == b.kind_ && a.p_ == b.p_ && a.pi_ == b.pi_;
    }
    /// arch < finite (by p) < finite_poly (by degree, coefficients) < t_infinity.
    friend std::strong_ordering operator<=>(const Place& a, const Place& b) {
        if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
        if (a.kind_ == Kind::finite) {
            const int c = cmp(a.p_, b.p_);
            return c < 0 ? std::strong_ordering::less
                         : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
        }
        if (a.kind_ == Kind::finite_poly) {
            if (detail::qpoly_less(a.pi_, b.pi_)) return std::strong_ordering::less;
            if (detail::qpoly_less(b.pi_, a.pi_)) return std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

private:
    explicit Place(Kind k) : kind_(k) {}
    Kind kind_;
    Integer p_ = 0;
    QPoly pi_;
};

/// The set S_d of places above primes <= d (empty over Q(t)).
inline std::vector<Place> small_places(int d, FieldKind field = FieldKind::Q) {
    std::vector<Place> out;
    if (field == FieldKind::Qt) return out;
    for (const auto& p : primes_up_to(d)) out.push_back(Place::finite(p));
    return out;
}

inline bool in_small_places(const Place& v, int d) {
    return v.is_finite_prime() && v.prime() <= d;
}

}  // namespace splitrad
