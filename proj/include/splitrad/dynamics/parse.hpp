#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>

#include "splitrad/arith/place.hpp"
#include "splitrad/errors.hpp"
#include "splitrad/poly/format.hpp"
#include "splitrad/poly/rational_function.hpp"

namespace splitrad {

/// Values bound to parameter names while parsing a family, e.g. {"p": 5}.
using Bindings = std::map<std::string, Rational, std::less<>>;

namespace detail {

/// Recursive-descent reader for
///
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := unary (['*'|'/'] unary)*       juxtaposition means '*'
///   unary  := '-' unary | power
///   power  := atom ['^' integer]
///   atom   := number | name | '(' expr ')'
///   number := digits ['.' digits] [('e'|'E') ['+'|'-'] digits]
///
/// The value is a polynomial in z with coefficients in Q(t); division is
/// only allowed by expressions free of z.
class ExprParser {
public:
    using Value = Polynomial<RationalFunction>;

    ExprParser(std::string_view text, bool allow_t, const Bindings& bindings)
        : s_(text), allow_t_(allow_t), bind_(bindings) {}

    Value parse() {
        skip();
        if (pos_ == s_.size()) fail("empty expression");
        Value v = expr();
        skip();
        if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_ + 1, what); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool starts_atom() {
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
               c == '_' || c == '(';
    }

    Value expr() {
        Value acc;
        bool negate = false;
        if (peek() == '+' || peek() == '-') negate = s_[pos_++] == '-';
        acc = term();
        if (negate) acc = -acc;
        for (;;) {
            const char c = peek();
            if (c != '+' && c != '-') return acc;
            ++pos_;
            const Value rhs = term();
            acc = c == '+' ? acc + rhs : acc - rhs;
        }
    }

    Value term() {
        Value acc = unary();
        for (;;) {
            const char c = peek();
            if (c == '*') {
                ++pos_;
                acc = acc * unary();
            } else if (c == '/') {
                ++pos_;
                const std::size_t at = pos_;
                const Value rhs = unary();
                if (rhs.degree() > 0) {
                    pos_ = at;
                    fail("division by an expression in z");
                }
                if (rhs.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                acc = acc * rhs.leading().inverse();
            } else if (starts_atom()) {
                acc = acc * unary();
            } else {
                return acc;
            }
        }
    }

    Value unary() {
        if (peek() == '-') {
            ++pos_;
            return -unary();
        }
        return power();
    }

    Value power() {
        Value base = atom();
        if (peek() != '^') return base;
        ++pos_;
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a non-negative integer exponent");
        const std::string digits(s_.substr(start, pos_ - start));
        if (digits.size() > 4) {
            pos_ = start;
            fail("exponent too large");
        }
        return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }

    Value atom() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Value v = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            auto digits = [&] {
                const std::size_t from = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                return std::string(s_.substr(from, pos_ - from));
            };
            std::string mant = digits();
            long exp10 = 0;
            if (pos_ < s_.size() && s_[pos_] == '.') {
                ++pos_;
                const std::string frac = digits();
                mant += frac;
                exp10 -= static_cast<long>(frac.size());
            }
            // Scientific suffix such as 1e-8; a bare 'e' stays a name.
            if (pos_ + 1 < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
                std::size_t k = pos_ + 1;
                if (s_[k] == '+' || s_[k] == '-') ++k;
                if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
                    const bool neg = s_[pos_ + 1] == '-';
                    pos_ = k;
                    const std::string e = digits();
                    if (e.size() > 4) fail("exponent too large");
                    exp10 += neg ? -std::stol(e) : std::stol(e);
                }
            }
            Rational q{Integer(mant)};
            Integer ten_pow;
            mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
            q = exp10 < 0 ? q / Rational(ten_pow) : q * Rational(ten_pow);
            return Value::constant(RationalFunction(q));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            const std::string_view name = s_.substr(start, pos_ - start);
            if (name == "z") return Value::x();
            if (name == "t") {
                if (!allow_t_) {
                    pos_ = start;
                    fail("variable t is only allowed over Q(t)");
                }
                return Value::constant(RationalFunction::t());
            }
            if (auto it = bind_.find(name); it != bind_.end()) return Value::constant(RationalFunction(it->second));
            pos_ = start;
            fail("unknown name '" + std::string(name) + "'");
        }
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view s_;
    bool allow_t_;
    const Bindings& bind_;
    std::size_t pos_ = 0;
};

inline void require_dynamical_degree(int d) {
    if (d < 2) throw DomainError("polynomial must have degree at least 2 (got " + std::to_string(d) + ")");
}

}  // namespace detail

/// Parses a polynomial over Q, e.g. "z^3 + (1/5)*z^2". Degree must be >= 2.
inline QPoly parse_poly(std::string_view text, const Bindings& bindings = {}) {
    const auto v = detail::ExprParser(text, false, bindings).parse();
    std::vector<Rational> c;
    for (const auto& x : v.coeffs()) c.push_back(x.num().coeff(0));
    QPoly f(std::move(c));
    detail::require_dynamical_degree(f.degree());
    return f;
}

/// Parses a polynomial over Q(t), e.g. "z^2 + t*z".
inline Polynomial<RationalFunction> parse_poly_qt(std::string_view text, const Bindings& bindings = {}) {
    auto f = detail::ExprParser(text, true, bindings).parse();
    detail::require_dynamical_degree(f.degree());
    return f;
}

/// Parses a rational number given as an expression without z, e.g. "-1/5".
inline Rational parse_rational(std::string_view text, const Bindings& bindings = {}) {
    const auto v = detail::ExprParser(text, false, bindings).parse();
    if (v.degree() > 0) throw ParseError(1, "expected a constant, found an expression in z");
    return v.is_zero() ? Rational(0) : v.leading().num().coeff(0);
}

/// Parses an element of Q(t), e.g. "(t^2+1)/(t-1)".
inline RationalFunction parse_rational_function(std::string_view text, const Bindings& bindings = {}) {
    const auto v = detail::ExprParser(text, true, bindings).parse();
    if (v.degree() > 0) throw ParseError(1, "expected an element of Q(t), found an expression in z");
    return v.is_zero() ? RationalFunction(0) : v.leading();
}

/// Parses a place label: "inf" or "arch", a prime, "t_infinity", or a
/// monic irreducible polynomial in t such as "t-1".
inline Place parse_place(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "inf" || s == "arch" || s == "infinity") return Place::archimedean();
    if (s == "t_infinity" || s == "t_inf") return Place::t_infinity();
    if (!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        return Place::finite(Integer(s));
    const RationalFunction r = parse_rational_function(s);
    if (!r.is_polynomial()) throw DomainError("place: '" + s + "' is not a polynomial in t");
    return Place::finite_poly(r.num());
}

}  // namespace splitrad
