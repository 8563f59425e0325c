#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "splitrad/errors.hpp"
#include "splitrad/exact/rational.hpp"
#include "splitrad/poly/polynomial.hpp"

namespace splitrad {

/// Disk {z : |z - center| <= radius} in C. Each operation adds a
/// conservative bound for the floating-point error of computing the new
/// center, so the exact result of the exact operation on any members of
/// the inputs stays inside.
class ComplexBall {
public:
    using C = std::complex<double>;

    ComplexBall() = default;
    ComplexBall(C c, double r) : c_(c), r_(r) {}
    static ComplexBall from_rational(const Rational& q) {
        const double d = q.to_double();
        return {C(d, 0.0), Rational::from_double(d) == q ? 0.0 : up(std::abs(d) * kEps + kTiny)};
    }

    const C& center() const { return c_; }
    double radius() const { return r_; }
    double mag() const { return up(std::abs(c_) * (1 + 4 * kEps) + r_); }
    double mig() const { return std::max(0.0, std::abs(c_) * (1 - 4 * kEps) - r_); }
    bool finite() const { return std::isfinite(c_.real()) && std::isfinite(c_.imag()) && std::isfinite(r_); }

    friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
        const C c = a.c_ + b.c_;
        return {c, up(a.r_ + b.r_ + rounding(std::abs(c.real()) + std::abs(c.imag())))};
    }
    friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
        const C c = a.c_ - b.c_;
        return {c, up(a.r_ + b.r_ + rounding(std::abs(c.real()) + std::abs(c.imag())))};
    }
    friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
        const C c = a.c_ * b.c_;
        const double ma = std::abs(a.c_), mb = std::abs(b.c_);
        const double r = ma * b.r_ + mb * a.r_ + a.r_ * b.r_ + rounding(4 * ma * mb);
        return {c, up(r)};
    }
    /// Encloses 1/b; b must not contain 0.
    ComplexBall inverse() const {
        const double m = std::abs(c_) * (1 - 4 * kEps) - r_;
        if (!(m > 0)) throw DomainError("inverse of a ball containing zero");
        const C c = 1.0 / c_;
        const double r = r_ / (std::abs(c_) * m) + rounding(4 * std::abs(c));
        return {c, up(r)};
    }

    /// Whether the ball lies inside the closed disk D(p, rho) for a real p.
    bool inside_disk(double p, double rho) const {
        return up(std::abs(c_ - C(p, 0.0)) * (1 + 4 * kEps) + r_) <= rho;
    }

private:
    static constexpr double kEps = std::numeric_limits<double>::epsilon();
    static constexpr double kTiny = std::numeric_limits<double>::denorm_min() * 16;
    static double up(double x) { return std::nextafter(x * (1 + 2 * kEps), std::numeric_limits<double>::infinity()); }
    static double rounding(double scale) { return 4 * kEps * scale + kTiny; }

    C c_{};
    double r_ = 0.0;
};

/// Horner evaluation of a rational polynomial on a ball.
inline ComplexBall eval_ball(const QPoly& f, const std::vector<ComplexBall>& coeffs, const ComplexBall& z) {
    ComplexBall acc = coeffs.back();
    for (int i = f.degree() - 1; i >= 0; --i) acc = acc * z + coeffs[static_cast<std::size_t>(i)];
    return acc;
}

inline std::vector<ComplexBall> ball_coefficients(const QPoly& f) {
    std::vector<ComplexBall> out;
    for (const auto& a : f.coeffs()) out.push_back(ComplexBall::from_rational(a));
    return out;
}

/// Aberth-Ehrlich simultaneous iteration for the roots of f (degree >= 1).
inline std::vector<std::complex<double>> aberth_roots(const QPoly& f, int max_iter = 500) {
    using C = std::complex<double>;
    const int n = f.degree();
    std::vector<C> a;
    for (const auto& c : f.coeffs()) a.emplace_back(c.to_double(), 0.0);
    const QPoly df = f.derivative();
    std::vector<C> da;
    for (const auto& c : df.coeffs()) da.emplace_back(c.to_double(), 0.0);
    auto horner = [](const std::vector<C>& cs, C z) {
        C acc = cs.back();
        for (int i = static_cast<int>(cs.size()) - 2; i >= 0; --i) acc = acc * z + cs[static_cast<std::size_t>(i)];
        return acc;
    };
    double bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(a[static_cast<std::size_t>(i)] / a.back()));
    bound = 1 + bound;
    std::vector<C> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        z[static_cast<std::size_t>(k)] = std::polar(bound * 0.5, 2 * M_PI * k / n + 0.4);
    for (int it = 0; it < max_iter; ++it) {
        double worst = 0;
        for (int k = 0; k < n; ++k) {
            const C zk = z[static_cast<std::size_t>(k)];
            const C ratio = horner(a, zk) / horner(da, zk);
            C sum = 0;
            for (int j = 0; j < n; ++j)
                if (j != k) sum += 1.0 / (zk - z[static_cast<std::size_t>(j)]);
            const C w = ratio / (1.0 - ratio * sum);
            if (std::isfinite(w.real()) && std::isfinite(w.imag())) z[static_cast<std::size_t>(k)] -= w;
            worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(zk)));
        }
        if (worst < 1e-17) break;
    }
    return z;
}

/// Certified isolating balls for the roots of a squarefree f: Aberth
/// approximations z_j and Weierstrass corrections W_j; when the disks
/// D(z_j, n|W_j|) are pairwise disjoint each holds exactly one root.
inline std::vector<ComplexBall> isolate_roots(const QPoly& f) {
    const int n = f.degree();
    if (n < 1) return {};
    const auto z = aberth_roots(f);
    const auto coeffs = ball_coefficients(f);
    const ComplexBall lead = ComplexBall::from_rational(f.leading());
    std::vector<ComplexBall> out;
    for (int j = 0; j < n; ++j) {
        const ComplexBall zj(z[static_cast<std::size_t>(j)], 0.0);
        ComplexBall denom = lead;
        for (int i = 0; i < n; ++i)
            if (i != j) denom = denom * (zj - ComplexBall(z[static_cast<std::size_t>(i)], 0.0));
        const ComplexBall W = eval_ball(f, coeffs, zj) * denom.inverse();
        const double rad = std::nextafter(n * (std::abs(W.center()) + W.radius()) * (1 + 1e-12),
                                          std::numeric_limits<double>::infinity());
        out.emplace_back(z[static_cast<std::size_t>(j)], rad);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const auto& a = out[static_cast<std::size_t>(i)];
            const auto& b = out[static_cast<std::size_t>(j)];
            if (std::abs(a.center() - b.center()) * (1 - 1e-12) <= a.radius() + b.radius())
                throw Undetermined("root isolation failed: inclusion disks overlap");
        }
    return out;
}

}  // namespace splitrad
