#pragma once

#include <sstream>
#include <string>

#include "splitrad/poly/polynomial.hpp"
#include "splitrad/poly/rational_function.hpp"

namespace splitrad {

namespace detail {

inline std::string power(char var, int k) {
    if (k == 0) return "";
    if (k == 1) return std::string(1, var);
    return std::string(1, var) + "^" + std::to_string(k);
}

}  // namespace detail

/// Prints a polynomial over Q in the input grammar, highest degree first,
/// e.g. "z^3 + (1/5)*z^2". With compact = true there are no spaces
/// ("t-1"), the form used for place labels.
inline std::string to_string(const QPoly& p, char var = 'z', bool compact = false) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        const Rational c = p.coeff(static_cast<std::size_t>(k));
        if (c.is_zero()) continue;
        const bool neg = c.sign() < 0;
        if (first) {
            if (neg) os << '-';
        } else {
            os << (compact ? (neg ? "-" : "+") : (neg ? " - " : " + "));
        }
        first = false;
        const Rational a = c.abs();
        const std::string coeff = a.is_integer() ? a.str() : "(" + a.str() + ")";
        if (k == 0)
            os << coeff;
        else if (a == 1)
            os << detail::power(var, k);
        else
            os << coeff << '*' << detail::power(var, k);
    }
    return os.str();
}

/// Prints an element of Q(t), e.g. "t", "(1/2)*t^2-1", "(t^2+1)/(t-1)".
inline std::string to_string(const RationalFunction& r) {
    const std::string n = to_string(r.num(), 't', true);
    if (r.is_polynomial()) return n;
    const bool wrap_num = r.num().degree() > 0 && n.find_first_of("+-", 1) != std::string::npos;
    return (wrap_num ? "(" + n + ")" : n) + "/(" + to_string(r.den(), 't', true) + ")";
}

/// Polynomial in z with Q(t) coefficients; nonconstant coefficients are
/// parenthesised unless they are a bare power of t.
inline std::string to_string(const Polynomial<RationalFunction>& p, char var = 'z') {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        const RationalFunction c = p.coeff(static_cast<std::size_t>(k));
        if (c.is_zero()) continue;
        std::string body;
        bool neg = false;
        if (c.is_constant()) {
            const Rational a = c.num().coeff(0);
            neg = a.sign() < 0;
            const Rational b = a.abs();
            if (k > 0 && b == 1)
                body = detail::power(var, k);
            else
                body = (b.is_integer() ? b.str() : "(" + b.str() + ")") + (k > 0 ? "*" + detail::power(var, k) : "");
        } else {
            const QPoly& n = c.num();
            const bool bare = c.is_polynomial() && n.is_monic() && n.order_at_zero() == n.degree();
            const std::string cs = bare ? detail::power('t', n.degree()) : "(" + to_string(c) + ")";
            body = cs + (k > 0 ? "*" + detail::power(var, k) : "");
        }
        if (first) {
            if (neg) os << '-';
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        os << body;
    }
    return os.str();
}

}  // namespace splitrad
