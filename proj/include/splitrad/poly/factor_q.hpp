#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "splitrad/exact/factor.hpp"
#include "splitrad/poly/fp_poly.hpp"
#include "splitrad/poly/polynomial.hpp"

namespace splitrad {

/// p = unit * prod factors[i].first ^ factors[i].second with every factor
/// monic and irreducible over Q. Factors are sorted by (degree, coefficients).
struct QFactorization {
    Rational unit;
    std::vector<std::pair<QPoly, unsigned>> factors;
};

namespace detail {

using ZPoly = std::vector<Integer>;

inline void ztrim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Primitive integer polynomial with positive leading coefficient
/// proportional to q.
inline ZPoly primitive_part(const QPoly& q) {
    Integer l = 1;
    for (const auto& c : q.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
    ZPoly z;
    for (const auto& c : q.coeffs()) z.push_back(c.num() * (l / c.den()));
    Integer g = 0;
    for (const auto& c : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g != 0)
        for (auto& c : z) c /= g;
    if (!z.empty() && z.back() < 0)
        for (auto& c : z) c = -c;
    return z;
}

inline QPoly to_qpoly(const ZPoly& z) {
    std::vector<Rational> c;
    c.reserve(z.size());
    for (const auto& x : z) c.emplace_back(x);
    return QPoly(std::move(c));
}

inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    ztrim(c);
    return c;
}

inline ZPoly zmod(ZPoly a, const Integer& m, bool symmetric) {
    const Integer half = m / 2;
    for (auto& x : a) {
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
        if (symmetric && x > half) x -= m;
    }
    ztrim(a);
    return a;
}

inline ZPoly from_fp(const fp::Poly& a) { return a.c; }

/// Linear Hensel lifting of f = g*h (mod p) to modulus p^k; g monic.
inline std::pair<ZPoly, ZPoly> hensel_lift(const ZPoly& f, const fp::Poly& g, const fp::Poly& h,
                                           const fp::Field& F, unsigned k) {
    auto [one, s, t] = F.xgcd(g, h);
    if (one.degree() != 0) throw DomainError("Hensel lift: factors not coprime mod p");
    ZPoly G = from_fp(g), H = from_fp(h);
    Integer m = F.modulus();
    for (unsigned j = 1; j < k; ++j) {
        ZPoly gh = zmul(G, H);
        ZPoly diff(std::max(f.size(), gh.size()), Integer(0));
        for (std::size_t i = 0; i < f.size(); ++i) diff[i] += f[i];
        for (std::size_t i = 0; i < gh.size(); ++i) diff[i] -= gh[i];
        for (auto& x : diff) {
            if (!mpz_divisible_p(x.get_mpz_t(), m.get_mpz_t())) throw DomainError("Hensel lift invariant broken");
            x /= m;
        }
        const fp::Poly e = F.make(diff);
        auto [q, dG] = F.divmod(F.mul(t, e), g);
        const fp::Poly dH = F.add(F.mul(s, e), F.mul(q, h));
        G.resize(std::max(G.size(), dG.c.size()), Integer(0));
        for (std::size_t i = 0; i < dG.c.size(); ++i) G[i] += m * dG.c[i];
        H.resize(std::max(H.size(), dH.c.size()), Integer(0));
        for (std::size_t i = 0; i < dH.c.size(); ++i) H[i] += m * dH.c[i];
        m *= F.modulus();
        G = zmod(G, m, false);
        H = zmod(H, m, false);
    }
    return {G, H};
}

/// Irreducible factors over Z of a squarefree primitive polynomial.
inline std::vector<ZPoly> zassenhaus(const ZPoly& A) {
    const int n = static_cast<int>(A.size()) - 1;
    if (n <= 1) return {A};
    const Integer lc = A.back();

    // Pick, among a handful of admissible primes, the one with fewest
    // modular factors.
    Integer best_p = 0;
    std::vector<fp::Poly> best_factors;
    int admissible = 0;
    for (std::uint32_t p : small_primes()) {
        if (p < 3) continue;
        if (mpz_divisible_ui_p(lc.get_mpz_t(), p)) continue;
        fp::Field F{Integer(p)};
        const fp::Poly a = F.make(A);
        if (F.gcd(a, F.derivative(a)).degree() != 0) continue;
        auto facs = F.factor_squarefree(a);
        if (best_p == 0 || facs.size() < best_factors.size()) {
            best_p = p;
            best_factors = std::move(facs);
        }
        if (++admissible >= 5 || best_factors.size() == 1) break;
    }
    if (best_factors.size() <= 1) return {A};

    // Mignotte-style bound on factor coefficients (generous).
    Integer maxabs = 0;
    for (const auto& c : A) maxabs = std::max(maxabs, Integer(abs(c)));
    Integer bound = maxabs * abs(lc) * (n + 1);
    bound <<= static_cast<unsigned>(n);
    bound *= 2;
    unsigned k = 1;
    Integer pk = best_p;
    while (pk <= bound) {
        pk *= best_p;
        ++k;
    }

    fp::Field F{best_p};
    std::vector<ZPoly> lifted;
    ZPoly cur = A;
    for (std::size_t i = 0; i + 1 < best_factors.size(); ++i) {
        fp::Poly rest = F.make({lc});
        for (std::size_t j = i + 1; j < best_factors.size(); ++j) rest = F.mul(rest, best_factors[j]);
        auto [G, H] = hensel_lift(cur, best_factors[i], rest, F, k);
        lifted.push_back(G);
        cur = H;
    }
    {
        Integer inv;
        mpz_invert(inv.get_mpz_t(), cur.back().get_mpz_t(), pk.get_mpz_t());
        for (auto& c : cur) c *= inv;
        lifted.push_back(zmod(cur, pk, false));
    }

    std::vector<ZPoly> result;
    ZPoly rem = A;
    std::size_t s = 1;
    while (2 * s <= lifted.size()) {
        bool found = false;
        std::vector<int> pick(s);
        for (std::size_t i = 0; i < s; ++i) pick[i] = static_cast<int>(i);
        for (;;) {
            ZPoly g{rem.back()};
            for (int idx : pick) g = zmod(zmul(g, lifted[static_cast<std::size_t>(idx)]), pk, true);
            ZPoly cand = primitive_part(to_qpoly(g));
            if (!cand.empty() && cand.size() > 1) {
                auto [q, r] = divmod(to_qpoly(rem), to_qpoly(cand));
                bool integral = r.is_zero();
                if (integral)
                    for (const auto& c : q.coeffs()) integral = integral && c.is_integer();
                if (integral) {
                    result.push_back(cand);
                    rem = primitive_part(q);
                    std::vector<ZPoly> keep;
                    for (std::size_t i = 0; i < lifted.size(); ++i)
                        if (std::find(pick.begin(), pick.end(), static_cast<int>(i)) == pick.end())
                            keep.push_back(lifted[i]);
                    lifted = std::move(keep);
                    found = true;
                    break;
                }
            }
            // next combination
            int i = static_cast<int>(s) - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] == static_cast<int>(lifted.size() - s) + i) --i;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
            for (std::size_t j = static_cast<std::size_t>(i) + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
        }
        if (!found) ++s;
    }
    if (rem.size() > 1) result.push_back(rem);
    return result;
}

inline bool qpoly_less(const QPoly& a, const QPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        const auto ai = a.coeff(static_cast<std::size_t>(i)), bi = b.coeff(static_cast<std::size_t>(i));
        if (ai != bi) return ai < bi;
    }
    return false;
}

}  // namespace detail

/// Complete factorization over Q into monic irreducibles.
inline QFactorization factor(const QPoly& p) {
    if (p.is_zero()) throw DomainError("factor: zero polynomial");
    QFactorization out{p.leading(), {}};
    for (auto& [part, mult] : squarefree_decomposition(p)) {
        for (const auto& z : detail::zassenhaus(detail::primitive_part(part)))
            out.factors.emplace_back(detail::to_qpoly(z).monic(), mult);
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return detail::qpoly_less(a.first, b.first); });
    return out;
}

/// Rational roots with multiplicity, increasing.
inline std::vector<std::pair<Rational, unsigned>> rational_roots(const QPoly& p) {
    std::vector<std::pair<Rational, unsigned>> out;
    if (p.is_zero()) throw DomainError("rational_roots: zero polynomial");
    if (p.degree() < 1) return out;
    for (const auto& [f, m] : factor(p).factors)
        if (f.degree() == 1) out.emplace_back(-f.coeff(0), m);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace splitrad
