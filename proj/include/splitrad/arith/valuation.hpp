#pragma once

#include <compare>
#include <limits>
#include <ostream>
#include <string>

#include "splitrad/errors.hpp"
#include "splitrad/exact/factor.hpp"
#include "splitrad/exact/rational.hpp"
#include "splitrad/poly/rational_function.hpp"

namespace splitrad {

/// Integer valuation with a +infinity element (the valuation of zero).
class Valuation {
public:
    constexpr Valuation() = default;
    constexpr Valuation(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    static constexpr Valuation infinity() {
        Valuation v;
        v.inf_ = true;
        return v;
    }

    constexpr bool is_infinite() const { return inf_; }
    long value() const {
        if (inf_) throw DomainError("valuation is infinite");
        return v_;
    }

    friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
    friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
        return a.v_ <=> b.v_;
    }
    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.inf_ || b.inf_) return infinity();
        return Valuation(a.v_ + b.v_);
    }

    std::string str() const { return inf_ ? "+inf" : std::to_string(v_); }
    friend std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.str(); }

private:
    long v_ = 0;
    bool inf_ = false;
};

/// Multiplicity of the prime p in the integer n != 0.
inline long integer_valuation(const Integer& n, const Integer& p) {
    if (n == 0) throw DomainError("valuation of zero integer");
    if (mpz_cmp_ui(p.get_mpz_t(), 2) < 0) throw DomainError("valuation base must be at least 2");
    Integer m = n;
    return static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
}

/// v_p(x) with v_p(0) = +inf. Checks that p is prime.
inline Valuation valuation(const Rational& x, const Integer& p) {
    if (!is_prime(p)) throw DomainError("valuation: " + p.get_str() + " is not prime");
    if (x.is_zero()) return Valuation::infinity();
    return integer_valuation(x.num(), p) - integer_valuation(x.den(), p);
}

/// Same as valuation() without the primality check; for hot loops where p
/// is already known to be prime. x must be nonzero.
inline long vp(const Rational& x, const Integer& p) {
    return integer_valuation(x.num(), p) - integer_valuation(x.den(), p);
}

/// Order of vanishing of a polynomial at the monic irreducible pi.
inline long poly_order(const QPoly& a, const QPoly& pi) {
    if (a.is_zero()) throw DomainError("order of zero polynomial");
    long k = 0;
    QPoly cur = a;
    for (;;) {
        auto [q, r] = divmod(cur, pi);
        if (!r.is_zero()) return k;
        cur = std::move(q);
        ++k;
    }
}

/// ord_pi(x) for x in Q(t); +inf at zero.
inline Valuation valuation(const RationalFunction& x, const QPoly& pi) {
    if (pi.degree() < 1 || !pi.is_monic()) throw DomainError("valuation: pi must be monic of positive degree");
    if (x.is_zero()) return Valuation::infinity();
    return poly_order(x.num(), pi) - poly_order(x.den(), pi);
}

/// Valuation at t = infinity: deg den - deg num.
inline Valuation valuation_at_infinity(const RationalFunction& x) {
    if (x.is_zero()) return Valuation::infinity();
    return -static_cast<long>(x.degree());
}

}  // namespace splitrad
