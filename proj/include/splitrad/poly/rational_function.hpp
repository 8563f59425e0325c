#pragma once

#include <string>

#include "splitrad/errors.hpp"
#include "splitrad/poly/polynomial.hpp"

namespace splitrad {

/// Element of Q(t): num/den with den monic and gcd(num, den) = 1.
class RationalFunction {
public:
    RationalFunction() : den_(QPoly::constant(1)) {}
    RationalFunction(int c) : RationalFunction(Rational(c)) {}   // NOLINT(google-explicit-constructor)
    RationalFunction(long c) : RationalFunction(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    RationalFunction(const Rational& c) : num_(QPoly::constant(c)), den_(QPoly::constant(1)) {}  // NOLINT
    RationalFunction(const QPoly& p) : num_(p), den_(QPoly::constant(1)) {}                     // NOLINT
    RationalFunction(const QPoly& num, const QPoly& den) {
        if (den.is_zero()) throw DomainError("rational function with zero denominator");
        if (num.is_zero()) {
            den_ = QPoly::constant(1);
            return;
        }
        const QPoly g = gcd(num, den);
        num_ = num / g;
        den_ = den / g;
        const Rational lc = den_.leading();
        num_ = num_ * (Rational(1) / lc);
        den_ = den_ * (Rational(1) / lc);
    }

    static RationalFunction t() { return RationalFunction(QPoly::x()); }

    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    /// deg num - deg den; the negative of the valuation at t = infinity.
    int degree() const {
        if (is_zero()) throw DomainError("degree of zero rational function");
        return num_.degree() - den_.degree();
    }

    RationalFunction inverse() const {
        if (is_zero()) throw DomainError("inverse of zero");
        return RationalFunction(den_, num_);
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        if (a.den_ == b.den_) return RationalFunction(a.num_ - b.num_, a.den_);
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a) {
        RationalFunction r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero() || b.is_zero()) return {};
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw DomainError("division by zero rational function");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    friend bool operator==(const RationalFunction&, const RationalFunction&) = default;


private:
    QPoly num_;
    QPoly den_;
};

}  // namespace splitrad
