#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "splitrad/errors.hpp"

namespace splitrad {

using Integer = mpz_class;

inline std::size_t hash_integer(const Integer& n) {
    std::size_t h = std::hash<long>{}(static_cast<long>(mpz_size(n.get_mpz_t())) * mpz_sgn(n.get_mpz_t()));
    const std::size_t limbs = mpz_size(n.get_mpz_t());
    for (std::size_t i = 0; i < limbs; ++i)
        h ^= std::hash<mp_limb_t>{}(mpz_getlimbn(n.get_mpz_t(), static_cast<mp_size_t>(i))) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Thin value wrapper over mpq_class.
class Rational {
public:
    Rational() = default;
    Rational(int n) : q_(n) {}                 // NOLINT(google-explicit-constructor)
    Rational(long n) : q_(n) {}                // NOLINT(google-explicit-constructor)
    Rational(const Integer& n) : q_(n) {}      // NOLINT(google-explicit-constructor)
    Rational(const Integer& num, const Integer& den) {
        if (den == 0) throw DomainError("rational with zero denominator");
        q_.get_num() = num;
        q_.get_den() = den;
        q_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    /// Parses "p", "-p", "p/q". Whitespace is not accepted.
    static Rational parse(std::string_view text) {
        const auto slash = text.find('/');
        auto parse_int = [](std::string_view s) {
            if (s.empty()) throw DomainError("empty integer literal");
            std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
            if (i == s.size()) throw DomainError("bad integer literal");
            for (std::size_t j = i; j < s.size(); ++j)
                if (s[j] < '0' || s[j] > '9') throw DomainError("bad integer literal '" + std::string(s) + "'");
            std::string body(s[0] == '+' ? s.substr(1) : s);
            return Integer(body, 10);
        };
        if (slash == std::string_view::npos) return Rational(parse_int(text));
        return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }

    /// Exact conversion of a finite double.
    static Rational from_double(double x) {
        mpq_class q;
        mpq_set_d(q.get_mpq_t(), x);
        return Rational(q);
    }

    Integer num() const { return q_.get_num(); }
    Integer den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational abs() const { return Rational(::abs(q_)); }
    Rational inverse() const {
        if (is_zero()) throw DomainError("inverse of zero");
        return Rational(mpq_class(1) / q_);
    }
    double to_double() const { return q_.get_d(); }

    /// Exact integer power; negative exponents invert.
    Rational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
        return Rational(n, d);
    }

    Integer floor() const {
        Integer r;
        mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
        return r;
    }
    Integer ceil() const {
        Integer r;
        mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
        return r;
    }

    /// Total bit length of numerator and denominator.
    std::size_t bits() const {
        return mpz_sizeinbase(q_.get_num_mpz_t(), 2) + mpz_sizeinbase(q_.get_den_mpz_t(), 2);
    }

    std::string str() const { return q_.get_str(); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DomainError("division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

struct RationalHash {
    std::size_t operator()(const Rational& r) const {
        return hash_integer(r.num()) * 31 + hash_integer(r.den());
    }
};

/// Total order on Integer usable as a std::map key comparator.
struct IntegerLess {
    bool operator()(const Integer& a, const Integer& b) const { return cmp(a, b) < 0; }
};

}  // namespace splitrad
