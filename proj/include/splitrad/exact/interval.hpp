#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "splitrad/errors.hpp"
#include "splitrad/exact/rational.hpp"

namespace splitrad {

/// Closed interval [lo, hi] of doubles. Every operation rounds outward by a
/// few ulps so the true real result stays enclosed even though the libm
/// functions underneath are only faithfully rounded.
class Interval {
public:
    constexpr Interval() = default;
    constexpr explicit Interval(double x) : lo_(x), hi_(x) {}
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(lo <= hi)) throw DomainError("interval with lo > hi");
    }

    static Interval from_rational(const Rational& r) {
        const double d = r.to_double();
        if (Rational::from_double(d) == r) return Interval(d);
        return Interval(down(d, 1), up(d, 1));
    }

    /// Enclosure of ln(n) for n >= 1, including huge n.
    static Interval log_of(const Integer& n) {
        if (n <= 0) throw DomainError("log of non-positive integer");
        if (n == 1) return Interval(0.0);
        long exp2 = 0;
        const double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
        // n in [mant, mant + 2^-53) * 2^exp2, mant in [0.5, 1)
        const double v = std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
        const double slack = 8 * std::numeric_limits<double>::epsilon() * (std::abs(v) + 1.0);
        return Interval(v - slack, v + slack);
    }

    /// Enclosure of ln|r| for r != 0.
    static Interval log_abs(const Rational& r) {
        if (r.is_zero()) throw DomainError("log of zero");
        return log_of(abs(r.num())) - log_of(r.den());
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const { return lo_ + (hi_ - lo_) / 2; }
    double width() const { return hi_ - lo_; }
    bool is_point() const { return lo_ == hi_; }
    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool overlaps(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
    bool subset_of(const Interval& o) const { return o.lo_ <= lo_ && hi_ <= o.hi_; }

    /// Largest and smallest absolute value over the interval.
    double mag() const { return std::max(std::abs(lo_), std::abs(hi_)); }
    double mig() const { return contains(0.0) ? 0.0 : std::min(std::abs(lo_), std::abs(hi_)); }

    Interval widened(double by) const { return Interval(down(lo_ - by, 1), up(hi_ + by, 1)); }

    Interval& operator+=(const Interval& o) {
        const double lo = lo_ + o.lo_, hi = hi_ + o.hi_;
        lo_ = is_exact_sum(lo_, o.lo_, lo) ? lo : down(lo, 1);
        hi_ = is_exact_sum(hi_, o.hi_, hi) ? hi : up(hi, 1);
        return *this;
    }
    Interval& operator-=(const Interval& o) { return *this += -o; }
    friend Interval operator+(Interval a, const Interval& b) { return a += b; }
    friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
    friend Interval operator-(const Interval& a) { return Interval(-a.hi_, -a.lo_); }

    friend Interval operator*(const Interval& a, const Interval& b) {
        const double c[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
        const double lo = *std::min_element(c, c + 4), hi = *std::max_element(c, c + 4);
        if (a.is_point() && b.is_point() && (a.lo_ == 0 || b.lo_ == 0)) return Interval(0.0);
        return Interval(down(lo, 1), up(hi, 1));
    }

    /// Multiplication by an exact rational.
    friend Interval operator*(const Rational& q, const Interval& a) {
        if (q.is_zero()) return Interval(0.0);
        if (q == 1) return a;
        return Interval::from_rational(q) * a;
    }

    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains(0.0)) throw DomainError("interval division by an interval containing zero");
        const double c[4] = {a.lo_ / b.lo_, a.lo_ / b.hi_, a.hi_ / b.lo_, a.hi_ / b.hi_};
        return Interval(down(*std::min_element(c, c + 4), 1), up(*std::max_element(c, c + 4), 1));
    }

    friend Interval log(const Interval& a) {
        if (a.lo_ <= 0) throw DomainError("log of interval touching zero");
        const double lo = std::log(a.lo_), hi = std::log(a.hi_);
        return Interval(down(lo, 4), up(hi, 4));
    }

    friend Interval max(const Interval& a, const Interval& b) {
        return Interval(std::max(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
    }

    friend bool operator==(const Interval&, const Interval&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Interval& a) {
        return os << '[' << a.lo_ << ", " << a.hi_ << ']';
    }

    static double down(double x, int ulps) {
        for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -std::numeric_limits<double>::infinity());
        return x;
    }
    static double up(double x, int ulps) {
        for (int i = 0; i < ulps; ++i) x = std::nextafter(x, std::numeric_limits<double>::infinity());
        return x;
    }

private:
    static bool is_exact_sum(double a, double b, double s) {
        // Two-sum error term; zero means s == a + b exactly.
        if (!std::isfinite(s)) return false;
        const double bb = s - a;
        const double err = (a - (s - bb)) + (b - bb);
        return err == 0.0;
    }

    double lo_ = 0.0;
    double hi_ = 0.0;
};

}  // namespace splitrad
