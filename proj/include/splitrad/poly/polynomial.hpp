#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "splitrad/errors.hpp"
#include "splitrad/exact/rational.hpp"

namespace splitrad {

/// Exact field usable as polynomial coefficients.
template <class F>
concept ExactField = std::regular<F> && requires(F a, F b) {
    { a + b } -> std::convertible_to<F>;
    { a - b } -> std::convertible_to<F>;
    { a * b } -> std::convertible_to<F>;
    { a / b } -> std::convertible_to<F>;
    { -a } -> std::convertible_to<F>;
    F(0);
    F(1);
};

/// Dense univariate polynomial a_0 + a_1 x + ... + a_n x^n over an exact
/// field. The coefficient vector never has a trailing zero; the zero
/// polynomial is the empty vector and has degree -1.
template <ExactField F>
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<F> coeffs) : c_(coeffs) { trim(); }
    explicit Polynomial(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Polynomial constant(const F& a) { return Polynomial(std::vector<F>{a}); }
    static Polynomial monomial(const F& a, std::size_t k) {
        std::vector<F> c(k + 1, F(0));
        c[k] = a;
        return Polynomial(std::move(c));
    }
    static Polynomial x() { return monomial(F(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<F>& coeffs() const { return c_; }
    std::span<const F> span() const { return c_; }
    F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : F(0); }
    F operator[](std::size_t i) const { return coeff(i); }
    const F& leading() const {
        if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back() == F(1); }

    /// Lowest index with a nonzero coefficient (order of vanishing at 0).
    int order_at_zero() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!(c_[i] == F(0))) return static_cast<int>(i);
        return -1;
    }

    template <class X>
    X eval(const X& x) const {
        X acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + X(*it);
        return acc;
    }
    F operator()(const F& x) const { return eval<F>(x); }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<F> d(c_.size() - 1, F(0));
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = F(static_cast<long>(i)) * c_[i];
        return Polynomial(std::move(d));
    }

    Polynomial monic() const {
        if (is_zero()) return {};
        return *this * (F(1) / leading());
    }

    /// p(q(x)).
    Polynomial compose(const Polynomial& q) const {
        Polynomial acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it);
        return acc;
    }

    Polynomial pow(unsigned e) const {
        Polynomial result = constant(F(1)), base = *this;
        while (e) {
            if (e & 1) result = result * base;
            base = base * base;
            e >>= 1;
        }
        return result;
    }

    /// Euclidean division; divisor must be nonzero.
    friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
        if (b.is_zero()) throw DomainError("polynomial division by zero");
        if (a.degree() < b.degree()) return {Polynomial{}, a};
        std::vector<F> r = a.c_;
        std::vector<F> q(a.c_.size() - b.c_.size() + 1, F(0));
        const F inv = F(1) / b.leading();
        for (int k = a.degree() - b.degree(); k >= 0; --k) {
            const F t = r[k + b.degree()] * inv;
            q[k] = t;
            if (t == F(0)) continue;
            for (int j = 0; j <= b.degree(); ++j) r[k + j] = r[k + j] - t * b.c_[j];
        }
        r.resize(b.c_.size() - 1);
        return {Polynomial(std::move(q)), Polynomial(std::move(r))};
    }
    friend Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).first; }
    friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

    /// Monic gcd (zero if both are zero).
    friend Polynomial gcd(Polynomial a, Polynomial b) {
        while (!b.is_zero()) {
            Polynomial r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(const Polynomial& a) {
        std::vector<F> c = a.c_;
        for (auto& x : c) x = -x;
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<F> c(a.c_.size() + b.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == F(0)) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const Polynomial& a, const F& s) {
        if (s == F(0)) return {};
        std::vector<F> c = a.c_;
        for (auto& x : c) x = x * s;
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const F& s, const Polynomial& a) { return a * s; }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim() {
        while (!c_.empty() && c_.back() == F(0)) c_.pop_back();
    }

    std::vector<F> c_;
};

using QPoly = Polynomial<Rational>;

/// Squarefree decomposition (Yun): returns (A_k, k) with p = lc * prod A_k^k,
/// each A_k monic, squarefree and pairwise coprime. Characteristic zero.
template <ExactField F>
std::vector<std::pair<Polynomial<F>, unsigned>> squarefree_decomposition(const Polynomial<F>& p) {
    std::vector<std::pair<Polynomial<F>, unsigned>> out;
    if (p.degree() < 1) return out;
    const Polynomial<F> P = p.monic();
    const Polynomial<F> dP = P.derivative();
    const Polynomial<F> a = gcd(P, dP);
    Polynomial<F> b = P / a;
    Polynomial<F> c = dP / a;
    Polynomial<F> d = c - b.derivative();
    unsigned k = 1;
    while (b.degree() > 0) {
        Polynomial<F> g = gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g, k);
        b = b / g;
        c = d / g;
        d = c - b.derivative();
        ++k;
    }
    return out;
}

}  // namespace splitrad
