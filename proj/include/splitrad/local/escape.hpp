#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <unordered_set>
#include <vector>

#include "splitrad/local/complex_ball.hpp"
#include "splitrad/local/newton.hpp"

namespace splitrad {

/// Caps shared by the escape-rate certificates.
struct EscapeOptions {
    unsigned max_iter = 60;          // exact iterations for a rational orbit
    std::size_t max_bits = 200'000;  // bit size guard on exact iterates
    unsigned charpoly_depth = 8;     // iterations for irrational critical points
    double tol = 1e-8;               // target width of archimedean enclosures
    unsigned float_iter = 400;       // ball iterations at the archimedean place
};

namespace detail {

/// Rational points of period 1 and 2, used as centers of invariant disks.
struct SmallCycles {
    std::vector<Rational> fixed;
    std::vector<Rational> two_cycle;  // points of exact period 2
};

inline SmallCycles small_cycles(const QPoly& f) {
    SmallCycles out;
    for (const auto& [r, m] : rational_roots(f - QPoly::x())) out.fixed.push_back(r);
    for (const auto& [r, m] : rational_roots(f.compose(f) - QPoly::x()))
        if (std::find(out.fixed.begin(), out.fixed.end(), r) == out.fixed.end()) out.two_cycle.push_back(r);
    return out;
}

/// Coefficients b_i of f^m(c + w) - c.
inline QPoly recentered_return_map(const QPoly& f, const Rational& c, unsigned m) {
    const QPoly shift{c, Rational(1)};
    return compose_power(f, m).compose(shift) - QPoly::constant(c);
}

/// Charpoly det(x - M_w) of multiplication by w in Q[z]/(q), by
/// Faddeev-LeVerrier.
inline QPoly charpoly_mod(const QPoly& w, const QPoly& q) {
    const auto k = static_cast<std::size_t>(q.degree());
    std::vector<std::vector<Rational>> A(k, std::vector<Rational>(k, Rational(0)));
    QPoly col = w % q;
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < k; ++i) A[i][j] = col.coeff(i);
        col = (col * QPoly::x()) % q;
    }
    auto matmul = [&](const std::vector<std::vector<Rational>>& X, const std::vector<std::vector<Rational>>& Y) {
        std::vector<std::vector<Rational>> Z(k, std::vector<Rational>(k, Rational(0)));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t l = 0; l < k; ++l) {
                if (X[i][l].is_zero()) continue;
                for (std::size_t j = 0; j < k; ++j) Z[i][j] += X[i][l] * Y[l][j];
            }
        return Z;
    };
    std::vector<Rational> c(k + 1, Rational(0));
    c[k] = 1;
    std::vector<std::vector<Rational>> M(k, std::vector<Rational>(k, Rational(0)));
    for (std::size_t i = 1; i <= k; ++i) {
        M = matmul(A, M);
        for (std::size_t j = 0; j < k; ++j) M[j][j] += c[k - i + 1];
        const auto AM = matmul(A, M);
        Rational tr = 0;
        for (std::size_t j = 0; j < k; ++j) tr += AM[j][j];
        c[k - i] = -tr / Rational(static_cast<long>(i));
    }
    return QPoly(std::move(c));
}

/// Real interval m * 2^e with the mantissa interval kept near unit size,
/// so escaping orbits can be followed far past the double range.
class ScaledInterval {
public:
    explicit ScaledInterval(const Interval& m, long e = 0) : m_(m), e_(e) { normalize(); }

    long exponent() const { return e_; }
    double mantissa_mig() const { return m_.mig(); }

    /// Enclosure of log|x|; requires 0 outside the interval.
    Interval log_abs() const {
        return log(Interval(m_.mig(), m_.mag())) + Interval(static_cast<double>(e_)) * Interval::log_of(2);
    }

    friend ScaledInterval operator*(const ScaledInterval& a, const ScaledInterval& b) {
        return ScaledInterval(a.m_ * b.m_, a.e_ + b.e_);
    }
    friend ScaledInterval operator+(const ScaledInterval& a, const ScaledInterval& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const long e = std::max(a.e_, b.e_);
        return ScaledInterval(shift(a.m_, a.e_ - e) + shift(b.m_, b.e_ - e), e);
    }

    /// The same set as a complex ball, when it fits in the double range.
    std::optional<ComplexBall> to_ball() const {
        if (e_ > 900 || e_ < -900) return std::nullopt;
        const double lo = Interval::down(std::ldexp(m_.lo(), static_cast<int>(e_)), 1);
        const double hi = Interval::up(std::ldexp(m_.hi(), static_cast<int>(e_)), 1);
        const double mid = lo + (hi - lo) / 2;
        const double r = Interval::up(std::max(mid - lo, hi - mid), 2);
        return ComplexBall({mid, 0.0}, r);
    }

    /// Upper bound for x * 2^s with x >= 0.
    static double ldexp_up(double x, long s) {
        if (s > 2000) return std::numeric_limits<double>::infinity();
        if (s < -2000) return std::numeric_limits<double>::denorm_min();
        return Interval::up(std::ldexp(x, static_cast<int>(s)), 1);
    }

private:
    bool is_zero() const { return m_.lo() == 0.0 && m_.hi() == 0.0; }

    static Interval shift(const Interval& m, long s) {
        if (s == 0) return m;
        if (s < -2000) {
            const double t = std::numeric_limits<double>::denorm_min();
            return Interval(m.lo() < 0 ? -t : 0.0, m.hi() > 0 ? t : 0.0);
        }
        const double lo = std::ldexp(m.lo(), static_cast<int>(s)), hi = std::ldexp(m.hi(), static_cast<int>(s));
        return Interval(Interval::down(lo, 1), Interval::up(hi, 1));
    }

    void normalize() {
        if (is_zero()) {
            e_ = 0;
            return;
        }
        const int k = std::ilogb(m_.mag()) + 1;
        // Scaling by a power of two is exact unless it lands in the
        // subnormal range; round outward in that case.
        double lo = std::ldexp(m_.lo(), -k), hi = std::ldexp(m_.hi(), -k);
        if (std::ldexp(lo, k) != m_.lo()) lo = Interval::down(lo, 1);
        if (std::ldexp(hi, k) != m_.hi()) hi = Interval::up(hi, 1);
        m_ = Interval(lo, hi);
        e_ += k;
    }

    Interval m_;
    long e_ = 0;
};

inline std::size_t poly_bits(const QPoly& p) {
    std::size_t b = 0;
    for (const auto& c : p.coeffs()) b += c.bits();
    return b;
}

}  // namespace detail

/// Exact non-archimedean escape rates of one polynomial at one prime.
///
/// theta_p = max(max_{i<d} |a_i/a_d|^{1/(d-i)}, |a_d|^{-1/(d-1)}); once
/// |w| > theta_p every later step satisfies |f(w)| = |a_d||w|^d, so
///     lambda(w) = log|w| + log|a_d|/(d-1).
/// Boundedness is certified by an exact repeat or by entering a disk
/// D(c, p^s) with f^m(D) contained in D.
class NonArchEscape {
public:
    NonArchEscape(const QPoly& f, Integer p, EscapeOptions opts = {})
        : NonArchEscape(f, std::move(p), detail::small_cycles(f), opts) {}

    NonArchEscape(QPoly f, Integer p, const detail::SmallCycles& cycles, EscapeOptions opts)
        : f_(std::move(f)), p_(std::move(p)), opts_(opts) {
        if (!is_prime(p_)) throw DomainError("escape rate: " + p_.get_str() + " is not prime");
        d_ = f_.degree();
        if (d_ < 2) throw DomainError("degree must be at least 2");
        const long vd = vp(f_.leading(), p_);
        lead_term_ = Rational(-vd, d_ - 1);
        threshold_ = Rational(vd, d_ - 1);
        for (int i = 0; i < d_; ++i) {
            const Rational& a = f_.coeffs()[static_cast<std::size_t>(i)];
            if (!a.is_zero()) threshold_ = std::max(threshold_, Rational(vd - vp(a, p_), d_ - i));
        }
        add_disk(Rational(0), 1);
        for (const auto& c : cycles.fixed) add_disk(c, 1);
        for (const auto& c : cycles.two_cycle) add_disk(c, 2);
    }

    const Integer& prime() const { return p_; }
    /// log_p theta_p.
    const Rational& threshold() const { return threshold_; }

    /// Escape rate in log_p units; throws Undetermined past the caps.
    Rational rate_exponent(const Rational& z) const {
        std::unordered_set<Rational, RationalHash> seen;
        Rational w = z;
        Rational scale = 1;
        for (unsigned n = 0; n <= opts_.max_iter; ++n) {
            if (!w.is_zero()) {
                const Rational size(-vp(w, p_));
                if (size > threshold_) return scale * (size + lead_term_);
            }
            if (in_disk(w)) return 0;
            if (!seen.insert(w).second) return 0;
            if (w.bits() > opts_.max_bits) break;
            w = f_(w);
            scale /= d_;
        }
        throw Undetermined("no escape or boundedness certificate at p = " + p_.get_str());
    }

    LogValue rate(const Rational& z) const { return LogValue::log_prime(p_, rate_exponent(z)); }

    /// max of the escape rate over the roots of the irreducible q, read
    /// from the Newton polygon of the characteristic polynomial of f^n(z)
    /// in Q[z]/(q). Log_p units.
    Rational max_rate_exponent_over_roots(const QPoly& q) const {
        if (q.degree() == 1) return rate_exponent(-q.coeff(0) / q.coeff(1));
        const QPoly qm = q.monic();
        QPoly w = QPoly::x();
        std::vector<QPoly> history;
        Rational scale = 1;
        for (unsigned n = 0; n <= opts_.charpoly_depth; ++n) {
            const QPoly chi = detail::charpoly_mod(w, qm);
            if (const auto top = newton_polygon(chi, p_).max_slope(); top && *top > threshold_)
                return scale * (*top + lead_term_);
            if (std::find(history.begin(), history.end(), chi) != history.end()) return 0;
            history.push_back(chi);
            for (const auto& disk : disks_) {
                const QPoly shifted = detail::charpoly_mod(w - QPoly::constant(disk.center), qm);
                const auto top = newton_polygon(shifted, p_).max_slope();
                if (!top || *top <= disk.exponent) return 0;
            }
            if (detail::poly_bits(w) > opts_.max_bits) break;
            w = f_.compose(w) % qm;
            scale /= d_;
        }
        throw Undetermined("no certificate for the roots of an irreducible critical factor at p = " + p_.get_str());
    }

private:
    struct Disk {
        Rational center;
        Rational exponent;  // log_p radius
    };

    void add_disk(const Rational& c, unsigned m) {
        const QPoly b = detail::recentered_return_map(f_, c, m);
        std::optional<Rational> s;
        for (int i = 2; i <= b.degree(); ++i) {
            const Rational& bi = b.coeffs()[static_cast<std::size_t>(i)];
            if (bi.is_zero()) continue;
            const Rational r(vp(bi, p_), i - 1);
            if (!s || r < *s) s = r;
        }
        if (!s) return;
        if (!b.coeff(1).is_zero() && vp(b.coeff(1), p_) < 0) return;
        if (!b.coeff(0).is_zero() && Rational(-vp(b.coeff(0), p_)) > *s) return;
        disks_.push_back({c, *s});
    }

    bool in_disk(const Rational& w) const {
        for (const auto& disk : disks_) {
            const Rational diff = w - disk.center;
            if (diff.is_zero() || Rational(-vp(diff, p_)) <= disk.exponent) return true;
        }
        return false;
    }

    QPoly f_;
    Integer p_;
    EscapeOptions opts_;
    int d_ = 0;
    Rational threshold_;
    Rational lead_term_;  // log_p|a_d| / (d-1)
    std::vector<Disk> disks_;
};

/// Archimedean escape rates with certified enclosures.
///
/// With S = sum_{i<d} |a_i/a_d| and
///     Theta = 2 max(1, S, |a_d|^{-1/(d-1)}),
/// every |w| >= Theta has f(w) = a_d w^d (1 + u) with |u| <= S/|w| <= 1/2,
/// the orbit stays above Theta, and summing the telescoping errors gives
///     |lambda(z) - d^{-n}(log|f^n z| + log|a_d|/(d-1))|
///         <= d^{-n} E_n / (d-1),   E_n = -log(1 - S/|f^n z|) <= log 2.
/// Boundedness is certified exactly by a repeat or by entering a disk
/// D(c, r) at a rational point c of period m <= 2 with sum_i |b_i| r^i <= r
/// for f^m(c + w) - c = sum b_i w^i.
class ArchEscape {
public:
    explicit ArchEscape(const QPoly& f, EscapeOptions opts = {}) : ArchEscape(f, detail::small_cycles(f), opts) {}

    ArchEscape(QPoly f, const detail::SmallCycles& cycles, EscapeOptions opts) : f_(std::move(f)), opts_(opts) {
        d_ = f_.degree();
        if (d_ < 2) throw DomainError("degree must be at least 2");
        const Rational ad = f_.leading();
        for (int i = 0; i < d_; ++i) S_ += (f_.coeffs()[static_cast<std::size_t>(i)] / ad).abs();
        const double inv_root = std::pow(1.0 / std::abs(ad.to_double()), 1.0 / (d_ - 1)) * (1 + 1e-9);
        theta_ = 2 * std::max({1.0, Interval::from_rational(S_).hi(), inv_root});
        lead_term_ = Interval::log_abs(ad) / Interval(static_cast<double>(d_ - 1));
        coeffs_ = ball_coefficients(f_);
        add_disk(Rational(0), 1);
        for (const auto& c : cycles.fixed) add_disk(c, 1);
        for (const auto& c : cycles.two_cycle) add_disk(c, 2);
    }

    /// Enclosure of lambda(z) of width <= tol (exact 0 when bounded).
    LogValue rate(const Rational& z, double tol) const {
        if (!(tol > 0)) throw DomainError("tolerance must be positive");
        if (exactly_bounded(z)) return {};
        Interval x = Interval::from_rational(z);
        return LogValue::numeric(iterate_real(x, tol, std::nullopt));
    }
    LogValue rate(const Rational& z) const { return rate(z, opts_.tol); }

    /// Enclosure after exactly n iterations (no stopping rule), for
    /// stability checks. Requires |f^n z| >= Theta.
    Interval enclosure_after(const Rational& z, unsigned n) const {
        if (exactly_bounded(z)) return Interval(0.0);
        return iterate_real(Interval::from_rational(z), 0.0, n);
    }

    /// max of the escape rate over all complex roots of q.
    LogValue max_rate_over_roots(const QPoly& q, double tol) const {
        if (q.degree() == 1) return rate(-q.coeff(0) / q.coeff(1), tol);
        std::optional<Interval> best;
        for (const auto& ball : isolate_roots(q.monic())) {
            const auto r = iterate_ball(ball, tol);
            best = best ? max(*best, r) : r;
        }
        if (best->lo() == 0.0 && best->hi() == 0.0) return {};
        return LogValue::numeric(*best);
    }

    double theta() const { return theta_; }

private:
    struct Disk {
        Rational center;
        Rational radius;
    };

    void add_disk(const Rational& c, unsigned m) {
        const QPoly b = detail::recentered_return_map(f_, c, m);
        for (int k = 6; k >= -40; --k) {
            const Rational r = Rational(2).pow(k);
            Rational sum = 0, rp = 1;
            for (const auto& bi : b.coeffs()) {
                sum += bi.abs() * rp;
                rp *= r;
            }
            if (sum <= r) {
                disks_.push_back({c, r});
                return;
            }
        }
    }

    bool exactly_bounded(const Rational& z) const {
        std::unordered_set<Rational, RationalHash> seen;
        Rational w = z;
        const Rational big(Integer(static_cast<long>(theta_) + 1));
        for (unsigned n = 0; n <= opts_.max_iter; ++n) {
            for (const auto& disk : disks_)
                if ((w - disk.center).abs() <= disk.radius) return true;
            if (!seen.insert(w).second) return true;
            if (w.abs() >= big || w.bits() > 4096) return false;
            w = f_(w);
        }
        return false;
    }

    /// d^{-n} (log|x| + log|a_d|/(d-1) +- E/(d-1)) from an enclosure of
    /// log|x| and an upper bound for S/|x|.
    Interval tail_enclosure(const Interval& log_size, double ratio, unsigned n) const {
        const Interval one_minus = Interval(1.0) - Interval(ratio);
        const double E = one_minus.lo() >= 1.0 ? 0.0 : -log(one_minus).lo();
        const double e = (Interval(E) / Interval(static_cast<double>(d_ - 1))).hi();
        const Interval core = log_size + lead_term_ + Interval(-e, e);
        Integer dn;
        mpz_ui_pow_ui(dn.get_mpz_t(), static_cast<unsigned long>(d_), n);
        return Rational(Integer(1), dn) * core;
    }

    Interval tail_enclosure(double mig, double mag, unsigned n) const {
        const double ratio = (Interval::from_rational(S_) / Interval(mig)).hi();
        return tail_enclosure(log(Interval(mig, mag)), ratio, n);
    }

    Interval iterate_real(const Interval& x0, double tol, std::optional<unsigned> fixed_n) const {
        std::vector<detail::ScaledInterval> c;
        for (const auto& a : f_.coeffs()) c.push_back(detail::ScaledInterval(Interval::from_rational(a)));
        const Interval S = Interval::from_rational(S_);
        const double log_theta = log(Interval(theta_)).hi();
        detail::ScaledInterval x(x0);
        const unsigned cap = fixed_n ? *fixed_n : opts_.float_iter;
        for (unsigned n = 0;; ++n) {
            if (x.mantissa_mig() > 0) {
                const Interval log_size = x.log_abs();
                if (log_size.lo() >= log_theta) {
                    const double ratio = detail::ScaledInterval::ldexp_up((S / Interval(x.mantissa_mig())).hi(), -x.exponent());
                    const Interval enc = tail_enclosure(log_size, ratio, n);
                    if (fixed_n ? n == *fixed_n : enc.width() <= tol) return enc;
                }
            }
            if (n >= cap) break;
            if (!fixed_n && n % 4 == 3) {
                if (const auto ball = x.to_ball(); ball && trapped(*ball)) return Interval(0.0);
            }
            detail::ScaledInterval acc = c.back();
            for (int i = d_ - 1; i >= 0; --i) acc = acc * x + c[static_cast<std::size_t>(i)];
            x = acc;
        }
        throw Undetermined("archimedean escape rate did not reach the requested tolerance");
    }

    /// True if z lies in a ball B with f^k(B) inside B for some k <= 4.
    /// B is centered at a numerically located attracting k-cycle point w
    /// and the inclusion is checked on the Taylor form of f^k at w, whose
    /// linear term carries the multiplier without overestimation.
    bool trapped(const ComplexBall& z) const {
        if (!z.finite() || z.mag() > 1e100) return false;
        for (const auto& disk : disks_)
            if (z.inside_disk(disk.center.to_double(), disk.radius.to_double() * (1 - 1e-12))) return true;
        int dk = 1;
        for (unsigned k = 1; k <= 4; ++k) {
            dk *= d_;
            if (dk > 256) break;
            const auto w = attracting_point(z.center(), k);
            if (!w) continue;
            const auto T = taylor_of_iterate(*w, k);
            const double dist = std::abs(z.center() - *w) * (1 + 4e-16) + z.radius();
            for (const double grow : {1.0 + 1e-6, 1.5, 3.0}) {
                const double rho = dist * grow + 1e-280;
                double sum = std::abs(T[0].center() - *w) + T[0].radius();
                double rp = 1;
                for (std::size_t i = 1; i < T.size(); ++i) {
                    rp *= rho;
                    sum += (std::abs(T[i].center()) + T[i].radius()) * rp;
                }
                if (sum * (1 + 1e-12) < rho) return true;
            }
        }
        return false;
    }

    /// Newton iteration for f^k(w) = w from w0; returned when it converges
    /// to a point with |(f^k)'(w)| < 1.
    std::optional<std::complex<double>> attracting_point(std::complex<double> w, unsigned k) const {
        using C = std::complex<double>;
        std::vector<C> a, da;
        for (const auto& c : f_.coeffs()) a.emplace_back(c.to_double(), 0.0);
        for (int i = 1; i <= d_; ++i) da.push_back(a[static_cast<std::size_t>(i)] * static_cast<double>(i));
        auto horner = [](const std::vector<C>& cs, C x) {
            C acc = cs.back();
            for (int i = static_cast<int>(cs.size()) - 2; i >= 0; --i) acc = acc * x + cs[static_cast<std::size_t>(i)];
            return acc;
        };
        auto step = [&](C x, C& deriv) {
            deriv = 1;
            for (unsigned j = 0; j < k; ++j) {
                deriv *= horner(da, x);
                x = horner(a, x);
            }
            return x;
        };
        for (int it = 0; it < 100; ++it) {
            C deriv;
            const C g = step(w, deriv) - w;
            const C delta = g / (deriv - 1.0);
            if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) return std::nullopt;
            w -= delta;
            if (std::abs(delta) <= 1e-15 * std::max(1.0, std::abs(w))) {
                step(w, deriv);
                if (std::abs(deriv) < 1 - 1e-9) return w;
                return std::nullopt;
            }
        }
        return std::nullopt;
    }

    /// Ball coefficients of f^k(w + u) as a polynomial in u.
    std::vector<ComplexBall> taylor_of_iterate(std::complex<double> w, unsigned k) const {
        using Poly = std::vector<ComplexBall>;
        auto mul = [](const Poly& x, const Poly& y) {
            Poly out(x.size() + y.size() - 1);
            for (std::size_t i = 0; i < x.size(); ++i)
                for (std::size_t j = 0; j < y.size(); ++j) out[i + j] = out[i + j] + x[i] * y[j];
            return out;
        };
        Poly T{ComplexBall(w, 0.0), ComplexBall({1.0, 0.0}, 0.0)};
        for (unsigned j = 0; j < k; ++j) {
            Poly acc{coeffs_.back()};
            for (int i = d_ - 1; i >= 0; --i) {
                acc = mul(acc, T);
                acc[0] = acc[0] + coeffs_[static_cast<std::size_t>(i)];
            }
            T = std::move(acc);
        }
        return T;
    }

    Interval iterate_ball(ComplexBall z, double tol) const {
        for (unsigned n = 0; n <= opts_.float_iter; ++n) {
            if (n % 4 == 0 && trapped(z)) return Interval(0.0);
            if (!z.finite() || z.mag() > 1e150) break;
            if (z.mig() >= theta_) {
                const Interval enc = tail_enclosure(z.mig(), z.mag(), n);
                if (enc.width() <= tol) return enc;
            }
            z = eval_ball(f_, coeffs_, z);
        }
        throw Undetermined("no certificate for an irrational critical point at the archimedean place");
    }

    QPoly f_;
    EscapeOptions opts_;
    int d_ = 0;
    Rational S_;
    double theta_ = 0;
    Interval lead_term_;
    std::vector<ComplexBall> coeffs_;
    std::vector<Disk> disks_;
};

}  // namespace splitrad
