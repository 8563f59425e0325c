#pragma once

#include <gtest/gtest.h>

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "splitrad/splitrad.hpp"

namespace splitrad::testing {

inline std::vector<Rational> Qs(std::initializer_list<const char*> xs) {
    std::vector<Rational> v;
    for (const char* x : xs) v.push_back(parse_rational(x));
    return v;
}

inline Rational Q(const char* x) { return parse_rational(x); }
inline Place P(long p) { return Place::finite(Integer(p)); }
inline LogValue L(long p, const char* q = "1") { return LogValue::log_prime(Integer(p), parse_rational(q)); }

/// SplitMix64: a small fixed-seed source for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    long range(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

    /// Nonzero integer with |n| <= bound.
    long nonzero(long bound) {
        const long n = range(1, bound);
        return next() & 1 ? n : -n;
    }

    Rational rational(long num_bound, long den_bound) { return Rational(Integer(range(-num_bound, num_bound)), Integer(range(1, den_bound))); }
    Rational nonzero_rational(long num_bound, long den_bound) {
        return Rational(Integer(nonzero(num_bound)), Integer(range(1, den_bound)));
    }

    /// Polynomial in t of degree <= deg with small integer coefficients.
    QPoly tpoly(int deg, long bound) {
        std::vector<Rational> c;
        for (int i = 0; i <= deg; ++i) c.push_back(Rational(range(-bound, bound)));
        return QPoly(std::move(c));
    }

private:
    std::uint64_t s_;
};

/// Hull containment with slack, for enclosures built along different paths.
inline bool overlaps(const Interval& a, const Interval& b, double slack = 0) {
    return a.lo() - slack <= b.hi() && b.lo() - slack <= a.hi();
}

}  // namespace splitrad::testing
