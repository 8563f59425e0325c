#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <unordered_map>
#include <vector>

#include "splitrad/arith/valuation.hpp"
#include "splitrad/exact/factor.hpp"
#include "splitrad/poly/factor_q.hpp"

namespace splitrad {

/// z, f(z), ..., f^n(z).
template <ExactField K>
std::vector<K> iterate(const Polynomial<K>& f, const K& z, unsigned n) {
    std::vector<K> orbit{z};
    orbit.reserve(n + 1);
    for (unsigned i = 0; i < n; ++i) orbit.push_back(f(orbit.back()));
    return orbit;
}

/// f composed with itself m times.
template <ExactField K>
Polynomial<K> compose_power(const Polynomial<K>& f, unsigned m) {
    if (m == 0) return Polynomial<K>::x();
    Polynomial<K> g = f;
    for (unsigned i = 1; i < m; ++i) g = f.compose(g);
    return g;
}

/// mu o f o mu^{-1} for mu(z) = a z + b.
template <ExactField K>
Polynomial<K> conjugate(const Polynomial<K>& f, const K& a, const K& b) {
    if (a == K(0)) throw DomainError("conjugate: a must be nonzero");
    const K ainv = K(1) / a;
    const Polynomial<K> mu_inv{-b * ainv, ainv};
    return f.compose(mu_inv) * a + Polynomial<K>::constant(b);
}

template <ExactField K>
struct Centered {
    Polynomial<K> poly;
    K shift;  // centered = conjugate(f, 1, shift)
};

/// Translation conjugate of a monic f with vanishing z^{d-1} coefficient.
template <ExactField K>
Centered<K> center(const Polynomial<K>& f) {
    if (!f.is_monic()) throw DomainError("center: polynomial must be monic");
    const int d = f.degree();
    const K shift = f.coeff(static_cast<std::size_t>(d - 1)) / K(static_cast<long>(d));
    return {conjugate(f, K(1), shift), shift};
}

struct CriticalPoints {
    std::vector<std::pair<Rational, unsigned>> rational;  // root, multiplicity
    std::vector<std::pair<QPoly, unsigned>> irrational;   // monic irreducible factor of f', multiplicity
};

/// Finite critical points: roots of f', rational ones exactly and the rest
/// as irreducible factors.
inline CriticalPoints critical_points(const QPoly& f) {
    CriticalPoints out;
    const QPoly df = f.derivative();
    if (df.degree() < 1) return out;
    for (const auto& [g, m] : factor(df).factors) {
        if (g.degree() == 1)
            out.rational.emplace_back(-g.coeff(0), m);
        else
            out.irrational.emplace_back(g, m);
    }
    std::sort(out.rational.begin(), out.rational.end());
    return out;
}

struct Cycle {
    std::vector<Rational> points;  // orbit order, starting at the smallest point
    unsigned period = 0;
    friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// Q-rational cycles of period <= m_max through a rational critical point.
/// Every such cycle is superattracting: (f^m)' is a product of f' over the
/// cycle and one factor vanishes.
inline std::vector<Cycle> superattracting_cycles(const QPoly& f, unsigned m_max) {
    if (m_max < 1) throw DomainError("superattracting_cycles: m_max must be at least 1");
    std::vector<Cycle> out;
    for (const auto& [c, mult] : critical_points(f).rational) {
        Rational z = c;
        for (unsigned m = 1; m <= m_max; ++m) {
            z = f(z);
            if (z != c) continue;
            std::vector<Rational> pts = iterate(f, c, m - 1);
            std::rotate(pts.begin(), std::min_element(pts.begin(), pts.end()), pts.end());
            Cycle cyc{pts, m};
            if (std::find(out.begin(), out.end(), cyc) == out.end()) out.push_back(cyc);
            break;
        }
    }
    std::sort(out.begin(), out.end(), [](const Cycle& a, const Cycle& b) {
        return a.period != b.period ? a.period < b.period : a.points.front() < b.points.front();
    });
    return out;
}

/// Derivative of f^m at z via the chain rule.
inline Rational iterate_derivative(const QPoly& f, const Rational& z, unsigned m) {
    const QPoly df = f.derivative();
    Rational acc = 1, w = z;
    for (unsigned i = 0; i < m; ++i) {
        acc *= df(w);
        w = f(w);
    }
    return acc;
}

struct PreperiodicPoint {
    Rational value;
    unsigned preperiod = 0;
    unsigned period = 1;
    friend bool operator==(const PreperiodicPoint&, const PreperiodicPoint&) = default;
};

/// Region that contains every Q-rational preperiodic point: denominators
/// divide `denominator_bound` and |x| <= `radius`.
struct SearchBox {
    Integer denominator_bound;
    Integer radius;
    Integer grid_points() const { return Integer(2 * radius * denominator_bound + 1); }
};

/// Worker count from SPLITRAD_THREADS (default 1).
inline unsigned configured_threads() {
    if (const char* env = std::getenv("SPLITRAD_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(std::min<long>(n, 256));
    }
    return 1;
}

/// Box bounds from the escape thresholds. At a prime p,
///   theta_p = max(max_{i<d} |a_i/a_d|^{1/(d-i)}, |a_d|^{-1/(d-1)})
/// and every point with |z|_p > theta_p escapes, so v_p(x) >=
/// -floor(log_p theta_p). At infinity, with S = sum_{i<d} |a_i/a_d|, any
/// |z| >= max(1, 2S) with |z|^{d-1} >= 4/|a_d| satisfies |f(z)| >= 2|z|.
inline SearchBox preperiodic_search_box(const QPoly& f) {
    const int d = f.degree();
    if (d < 2) throw DomainError("degree must be at least 2");
    const Rational ad = f.leading();
    std::vector<Integer> primes;
    for (const auto& a : f.coeffs())
        if (!a.is_zero())
            for (const auto& p : prime_support(a))
                if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    Integer B = 1;
    for (const auto& p : primes) {
        // log_p theta_p = max over the two kinds of terms; compare exactly.
        Rational s = Rational(vp(ad, p), d - 1);
        for (int i = 0; i < d; ++i) {
            const Rational a = f.coeff(static_cast<std::size_t>(i));
            if (a.is_zero()) continue;
            s = std::max(s, Rational(vp(ad, p) - vp(a, p), d - i));
        }
        if (s.sign() > 0) {
            Integer pe;
            mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), s.floor().get_ui());
            B *= pe;
        }
    }
    Rational S = 0;
    for (int i = 0; i < d; ++i) S += (f.coeff(static_cast<std::size_t>(i)) / ad).abs();
    Integer R = std::max(Integer(1), (2 * S).ceil());
    Integer r = 1;
    const Rational need = Rational(4) / ad.abs();
    while (Rational(r).pow(d - 1) < need) ++r;
    R = std::max(R, r);
    return {B, R};
}

namespace detail {

struct OrbitStatus {
    bool preperiodic = false;
    unsigned preperiod = 0;
    unsigned period = 0;
};

/// Classifies every grid point a/B for a in [lo, hi).
inline std::vector<PreperiodicPoint> scan_preperiodic(const QPoly& f, const SearchBox& box, long lo, long hi) {
    const Rational R(box.radius);
    std::unordered_map<Rational, OrbitStatus, RationalHash> known;
    std::vector<PreperiodicPoint> found;
    auto in_box = [&](const Rational& z) {
        return z.abs() <= R && mpz_divisible_p(box.denominator_bound.get_mpz_t(), z.den().get_mpz_t());
    };
    for (long a = lo; a < hi; ++a) {
        const Rational x(Integer(a), box.denominator_bound);
        if (known.count(x)) continue;
        std::vector<Rational> orbit;
        std::unordered_map<Rational, std::size_t, RationalHash> index;
        Rational z = x;
        OrbitStatus tail;
        std::size_t tail_at = 0;
        for (;;) {
            if (!in_box(z)) {
                tail = {false, 0, 0};
                tail_at = orbit.size();
                break;
            }
            if (auto it = known.find(z); it != known.end()) {
                tail = it->second;
                tail_at = orbit.size();
                break;
            }
            if (auto it = index.find(z); it != index.end()) {
                const std::size_t i = it->second;
                const auto per = static_cast<unsigned>(orbit.size() - i);
                for (std::size_t j = i; j < orbit.size(); ++j) known[orbit[j]] = {true, 0, per};
                tail = {true, 0, per};
                tail_at = i;
                break;
            }
            index.emplace(z, orbit.size());
            orbit.push_back(z);
            z = f(z);
        }
        for (std::size_t j = 0; j < tail_at; ++j) {
            OrbitStatus s = tail;
            if (s.preperiodic) s.preperiod += static_cast<unsigned>(tail_at - j);
            known[orbit[j]] = s;
        }
    }
    for (const auto& [z, s] : known)
        if (s.preperiodic) {
            // Only report points of this worker's slice so the merge has no
            // duplicates.
            const Rational scaled = z * Rational(box.denominator_bound);
            if (scaled.is_integer() && scaled.num() >= lo && scaled.num() < hi)
                found.push_back({z, s.preperiod, s.period});
        }
    return found;
}

}  // namespace detail

inline constexpr double kMaxPreperiodicGrid = 5e7;

/// Every Q-rational preperiodic point of f with its minimal preperiod and
/// period, sorted by value. Throws Undetermined if the box is too large to
/// enumerate.
inline std::vector<PreperiodicPoint> preperiodic_points(const QPoly& f) {
    const SearchBox box = preperiodic_search_box(f);
    if (box.grid_points().get_d() > kMaxPreperiodicGrid)
        throw Undetermined("preperiodic search box has " + box.grid_points().get_str() + " points");
    const long N = Integer(box.radius * box.denominator_bound).get_si();
    const unsigned threads = std::max(1u, std::min<unsigned>(configured_threads(), static_cast<unsigned>(2 * N + 1)));
    std::vector<std::vector<PreperiodicPoint>> parts(threads);
    const long total = 2 * N + 1;
    auto slice = [&](unsigned k) {
        const long lo = -N + total * static_cast<long>(k) / threads;
        const long hi = -N + total * static_cast<long>(k + 1) / threads;
        parts[k] = detail::scan_preperiodic(f, box, lo, hi);
    };
    if (threads == 1) {
        slice(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < threads; ++k) pool.emplace_back(slice, k);
        for (auto& t : pool) t.join();
    }
    std::vector<PreperiodicPoint> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
    return out;
}

}  // namespace splitrad
