#pragma once

#include <random>
#include <tuple>
#include <utility>
#include <vector>

#include "splitrad/errors.hpp"
#include "splitrad/exact/rational.hpp"

namespace splitrad::fp {

/// Polynomial over F_p with coefficients normalised to [0, p), low degree
/// first, no trailing zeros.
struct Poly {
    std::vector<Integer> c;
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    friend bool operator==(const Poly&, const Poly&) = default;
};

class Field {
public:
    explicit Field(Integer p) : p_(std::move(p)) {}
    const Integer& modulus() const { return p_; }

    Integer reduce(const Integer& a) const {
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p_.get_mpz_t());
        return r;
    }
    Integer inverse(const Integer& a) const {
        Integer r;
        if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p_.get_mpz_t()) == 0)
            throw DomainError("non-invertible element mod p");
        return r;
    }
    /// Image of a rational with denominator prime to p.
    Integer image(const Rational& q) const {
        return reduce(q.num() * inverse(reduce(q.den())));
    }

    Poly make(std::vector<Integer> c) const {
        for (auto& x : c) x = reduce(x);
        Poly out{std::move(c)};
        trim(out);
        return out;
    }
    Poly one() const { return Poly{{Integer(1)}}; }
    Poly x() const { return Poly{{Integer(0), Integer(1)}}; }

    Poly add(const Poly& a, const Poly& b) const {
        Poly r = a.c.size() >= b.c.size() ? a : b;
        const Poly& s = a.c.size() >= b.c.size() ? b : a;
        for (std::size_t i = 0; i < s.c.size(); ++i) r.c[i] = reduce(r.c[i] + s.c[i]);
        trim(r);
        return r;
    }
    Poly sub(const Poly& a, const Poly& b) const { return add(a, scale(b, p_ - 1)); }
    Poly scale(const Poly& a, const Integer& s) const {
        Poly r = a;
        for (auto& x : r.c) x = reduce(x * s);
        trim(r);
        return r;
    }
    Poly mul(const Poly& a, const Poly& b) const {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Integer> c(a.c.size() + b.c.size() - 1, Integer(0));
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
        return make(std::move(c));
    }
    std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const {
        if (b.is_zero()) throw DomainError("F_p polynomial division by zero");
        if (a.degree() < b.degree()) return {Poly{}, a};
        std::vector<Integer> r = a.c;
        std::vector<Integer> q(a.c.size() - b.c.size() + 1, Integer(0));
        const Integer inv = inverse(b.c.back());
        for (int k = a.degree() - b.degree(); k >= 0; --k) {
            const Integer t = reduce(r[k + b.degree()] * inv);
            q[k] = t;
            if (t == 0) continue;
            for (int j = 0; j <= b.degree(); ++j) r[k + j] = reduce(r[k + j] - t * b.c[j]);
        }
        r.resize(b.c.size() - 1);
        return {make(std::move(q)), make(std::move(r))};
    }
    Poly rem(const Poly& a, const Poly& b) const { return divmod(a, b).second; }
    Poly monic(const Poly& a) const {
        if (a.is_zero()) return a;
        return scale(a, inverse(a.c.back()));
    }
    Poly gcd(Poly a, Poly b) const {
        while (!b.is_zero()) {
            Poly r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }
    /// (g, s, t) with s*a + t*b = g monic.
    std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) const {
        Poly r0 = a, r1 = b, s0 = one(), s1{}, t0{}, t1 = one();
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            Poly s2 = sub(s0, mul(q, s1)), t2 = sub(t0, mul(q, t1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        const Integer inv = inverse(r0.c.back());
        return {scale(r0, inv), scale(s0, inv), scale(t0, inv)};
    }
    Poly derivative(const Poly& a) const {
        if (a.c.size() <= 1) return {};
        std::vector<Integer> d(a.c.size() - 1);
        for (std::size_t i = 1; i < a.c.size(); ++i) d[i - 1] = a.c[i] * static_cast<unsigned long>(i);
        return make(std::move(d));
    }
    Poly powmod(Poly base, Integer e, const Poly& m) const {
        Poly result = one();
        base = rem(base, m);
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) result = rem(mul(result, base), m);
            base = rem(mul(base, base), m);
            e >>= 1;
        }
        return result;
    }

    /// Squarefree decomposition (Yun). Requires deg a < p so the derivative
    /// of a nonconstant factor never vanishes identically.
    std::vector<std::pair<Poly, unsigned>> squarefree(const Poly& a) const {
        std::vector<std::pair<Poly, unsigned>> out;
        if (a.degree() < 1) return out;
        if (Integer(a.degree()) >= p_) throw DomainError("F_p squarefree decomposition needs deg < p");
        const Poly P = monic(a);
        const Poly dP = derivative(P);
        const Poly g = gcd(P, dP);
        Poly b = divmod(P, g).first, c = divmod(dP, g).first;
        Poly d = sub(c, derivative(b));
        unsigned k = 1;
        while (b.degree() > 0) {
            Poly h = gcd(b, d);
            if (h.degree() > 0) out.emplace_back(h, k);
            b = divmod(b, h).first;
            c = divmod(d, h).first;
            d = sub(c, derivative(b));
            ++k;
        }
        return out;
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs (product of all irreducible factors of degree k, k).
    std::vector<std::pair<Poly, int>> distinct_degree(Poly f) const {
        std::vector<std::pair<Poly, int>> out;
        Poly h = x();
        for (int k = 1; 2 * k <= f.degree(); ++k) {
            h = powmod(h, p_, f);
            Poly g = gcd(f, sub(h, x()));
            if (g.degree() > 0) {
                out.emplace_back(g, k);
                f = divmod(f, g).first;
                h = rem(h, f);
            }
        }
        if (f.degree() > 0) out.emplace_back(f, f.degree());
        return out;
    }

    /// Cantor-Zassenhaus equal-degree splitting (p odd), fixed seed.
    std::vector<Poly> equal_degree(const Poly& f, int k, std::mt19937_64& rng) const {
        if (f.degree() == k) return {f};
        const Integer e = (pow_int(p_, k) - 1) / 2;
        for (;;) {
            std::vector<Integer> rc(static_cast<std::size_t>(f.degree()));
            for (auto& v : rc) v = Integer(static_cast<unsigned long>(rng())) % p_;
            Poly a = make(std::move(rc));
            if (a.degree() < 1) continue;
            Poly g = gcd(f, sub(powmod(a, e, f), one()));
            if (g.degree() > 0 && g.degree() < f.degree()) {
                auto left = equal_degree(g, k, rng);
                auto right = equal_degree(divmod(f, g).first, k, rng);
                left.insert(left.end(), right.begin(), right.end());
                return left;
            }
        }
    }

    /// Monic irreducible factors of a monic squarefree polynomial.
    std::vector<Poly> factor_squarefree(const Poly& f) const {
        if (p_ == 2) throw DomainError("F_2 factoring not supported");
        std::mt19937_64 rng(0xfac7'0123ULL);
        std::vector<Poly> out;
        for (auto& [g, k] : distinct_degree(monic(f))) {
            auto parts = equal_degree(g, k, rng);
            out.insert(out.end(), parts.begin(), parts.end());
        }
        return out;
    }

    static Integer pow_int(const Integer& b, unsigned long e) {
        Integer r;
        mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
        return r;
    }

private:
    static void trim(Poly& a) {
        while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
    }

    Integer p_;
};

}  // namespace splitrad::fp
