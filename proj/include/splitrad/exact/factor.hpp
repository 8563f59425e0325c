#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "splitrad/errors.hpp"
#include "splitrad/exact/rational.hpp"

namespace splitrad {

struct PrimePower {
    Integer prime;
    unsigned exponent = 0;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

namespace detail {

inline constexpr std::uint32_t kTrialBound = 1'000'000;

inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(kTrialBound + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= kTrialBound; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j <= kTrialBound; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

inline bool miller_rabin_round(const Integer& n, const Integer& a, const Integer& d, unsigned s) {
    Integer x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    const Integer nm1 = n - 1;
    if (x == 1 || x == nm1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = (x * x) % n;
        if (x == nm1) return true;
    }
    return false;
}

inline Integer pollard_brent(const Integer& n, std::uint64_t seed) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    std::mt19937_64 rng(seed);
    for (;;) {
        Integer y = Integer(static_cast<unsigned long>(rng() % 1'000'003)) % n;
        const Integer c = Integer(static_cast<unsigned long>(rng() % 1'000'003 + 1)) % n;
        const unsigned long m = 128;
        Integer g = 1, q = 1, x, ys;
        unsigned long r = 1;
        auto step = [&](const Integer& v) -> Integer { return (v * v + c) % n; };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = step(y);
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = step(y);
                    Integer diff = x - y;
                    q = (q * abs(diff)) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = step(ys);
                Integer diff = x - ys;
                Integer a = abs(diff);
                mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
        seed = rng();
    }
}

}  // namespace detail

/// Primality test. Deterministic for n < 2^64 (Miller-Rabin with the first
/// twelve prime bases); above that, 32 Miller-Rabin rounds with bases drawn
/// from a fixed-seed generator.
inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    Integer d = n - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d /= 2;
        ++s;
    }
    const bool below_2_64 = mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
    if (below_2_64) {
        for (unsigned a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u})
            if (!detail::miller_rabin_round(n, a, d, s)) return false;
        return true;
    }
    std::mt19937_64 rng(0x5eed'1234'abcdULL);
    for (int round = 0; round < 32; ++round) {
        Integer a = Integer(static_cast<unsigned long>(rng())) % (n - 3) + 2;
        if (!detail::miller_rabin_round(n, a, d, s)) return false;
    }
    return true;
}

/// Prime factorization of |n| with strictly increasing primes.
/// Trial division up to 10^6, then Pollard-Brent rho.
inline std::vector<PrimePower> factorize(const Integer& n) {
    if (n == 0) throw DomainError("factorize: zero has no factorization");
    Integer m = abs(n);
    std::map<Integer, unsigned> found;
    for (std::uint32_t p : detail::small_primes()) {
        if (Integer(p) * p > m) break;
        if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
        unsigned e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        found[Integer(p)] += e;
    }
    std::vector<Integer> stack;
    if (m > 1) stack.push_back(m);
    std::uint64_t seed = 1;
    while (!stack.empty()) {
        Integer x = stack.back();
        stack.pop_back();
        if (x == 1) continue;
        if (is_prime(x)) {
            found[x] += 1;
            continue;
        }
        Integer root;
        if (mpz_perfect_square_p(x.get_mpz_t())) {
            mpz_sqrt(root.get_mpz_t(), x.get_mpz_t());
            stack.push_back(root);
            stack.push_back(root);
            continue;
        }
        Integer f = detail::pollard_brent(x, seed++);
        stack.push_back(f);
        stack.push_back(x / f);
    }
    std::vector<PrimePower> out;
    out.reserve(found.size());
    for (auto& [p, e] : found) out.push_back({p, e});
    return out;
}

/// Distinct primes dividing the numerator or denominator of x (x != 0).
inline std::vector<Integer> prime_support(const Rational& x) {
    if (x.is_zero()) return {};
    std::vector<Integer> out;
    for (const auto& pp : factorize(x.num())) out.push_back(pp.prime);
    for (const auto& pp : factorize(x.den())) out.push_back(pp.prime);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Primes p with p <= bound.
inline std::vector<Integer> primes_up_to(long bound) {
    std::vector<Integer> out;
    for (std::uint32_t p : detail::small_primes()) {
        if (p > static_cast<unsigned long>(std::max(bound, 0L))) break;
        out.emplace_back(p);
    }
    return out;
}

}  // namespace splitrad
