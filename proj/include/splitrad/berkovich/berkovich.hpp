#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "splitrad/local/newton.hpp"
#include "splitrad/poly/fp_poly.hpp"

namespace splitrad {

/// One disk B_i = D(p0, p^{t_i}) of the chain around the superattracting
/// point, with the local degree k_i of f on it, its equilibrium mass and the
/// denominator q_i of t_i.
struct DiskLevel {
    Rational t;
    int k = 0;
    Rational mass;
    Integer q;
    friend bool operator==(const DiskLevel&, const DiskLevel&) = default;
};

/// Radii are log_p radii, so t_i is a Type II radius iff q_i = 1.
struct DiskChain {
    Place place;
    int degree = 0;
    Rational g;                    // log_p radius of the disk B_0 containing K_v
    std::vector<DiskLevel> levels; // B_1, B_2, ...
    std::vector<Rational> moduli;  // mod(A_i) = t_i - t_{i+1}, i = 1..depth
    friend bool operator==(const DiskChain&, const DiskChain&) = default;
};

/// A monic polynomial conjugated so that a superattracting point of period
/// m sits at 0, replaced by its m-th iterate.
struct Normalized {
    QPoly F;
    Rational p0;
    unsigned period = 1;
};

/// Uses 0 when f(0) = 0 = f'(0); otherwise the first superattracting cycle
/// of period <= max_period, translated to 0.
inline Normalized normalize_superattracting(const QPoly& f, unsigned max_period = 4) {
    if (!f.is_monic()) throw DomainError("a monic polynomial is required");
    if (f(Rational(0)).is_zero() && f.derivative()(Rational(0)).is_zero()) return {f, Rational(0), 1};
    const auto cycles = superattracting_cycles(f, max_period);
    if (cycles.empty()) throw DomainError("no rational superattracting cycle of period <= " + std::to_string(max_period));
    const Cycle& c = cycles.front();
    const Rational p0 = c.points.front();
    return {conjugate(compose_power(f, c.period), Rational(1), -p0), p0, c.period};
}

namespace detail {

/// log_p radius of the smallest disk containing K_v for monic f with p
/// not dividing deg f, from the centered coefficients.
inline Rational wing_radius(const QPoly& f, const Place& v) {
    const auto s = splitting_exponent_of_centered(center(f).poly, v);
    if (!s || s->sign() <= 0) throw DomainError("f has good reduction at " + v.str());
    return *s;
}

/// Largest t with max_{i>=1} (i t - v(c_i)) <= target, where c_i are the
/// coefficients of h(x + w) - h(w); the preimage component of a disk of
/// log radius `target` around h(w) that contains w has log radius t.
inline Rational gauss_solve(const QPoly& h, const Rational& w, const Rational& target, const Integer& p) {
    const QPoly shifted = h.compose(QPoly{w, Rational(1)});
    std::optional<Rational> t;
    for (int i = 1; i <= shifted.degree(); ++i) {
        const Rational& c = shifted.coeffs()[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        const Rational r = (target + Rational(vp(c, p))) / Rational(i);
        if (!t || r < *t) t = r;
    }
    return *t;
}

/// Number of roots of F (with multiplicity) of log_p size <= t.
inline int roots_within(const QPoly& F, const Integer& p, const Rational& t) {
    int zero_mult = 0;
    while (F.coeffs()[static_cast<std::size_t>(zero_mult)].is_zero()) ++zero_mult;
    int k = zero_mult;
    for (const auto& seg : newton_polygon(F, p).segments)
        if (seg.slope <= t) k += seg.length;
    return k;
}

/// Chain for F(0) = 0 = F'(0), monic of degree D, with B_0 of log radius g.
inline DiskChain disk_chain_from(const QPoly& F, const Place& v, const Rational& g, int depth) {
    if (depth < 1) throw DomainError("depth must be at least 1");
    const Integer& p = v.prime();
    DiskChain out{v, F.degree(), g, {}, {}};
    Rational target = g, mass = 1;
    for (int j = 0; j <= depth; ++j) {
        const Rational t = gauss_solve(F, Rational(0), target, p);
        if (t >= target) throw DomainError("disk chain does not descend at " + v.str());
        if (j > 0) out.moduli.push_back(target - t);
        if (j == depth) break;
        const int k = roots_within(F, p, t);
        mass = mass * Rational(k, F.degree());
        out.levels.push_back({t, k, mass, t.den()});
        target = t;
    }
    return out;
}

inline void require_superattracting_zero(const QPoly& f) {
    if (!f.is_monic()) throw DomainError("a monic polynomial is required");
    if (!f(Rational(0)).is_zero() || !f.derivative()(Rational(0)).is_zero())
        throw DomainError("0 is not a superattracting fixed point");
}

inline void require_bad_outside_small(const QPoly& f, const Place& v) {
    if (!v.is_finite_prime()) throw DomainError("place " + v.str() + " is not a finite place of Q");
    if (in_small_places(v, f.degree())) throw DomainError("place " + v.str() + " lies in S_d");
    if (reduction_is_bad(f, v) != true) throw DomainError("f has good reduction at " + v.str());
}

}  // namespace detail

/// Descending chain B_1 > B_2 > ... of disk components of f^{-i}(B_0)
/// containing the superattracting fixed point 0. t_1 solves
///     max_{i>=1} (i t - v_p(a_i)) = g_v
/// and t_{j+1} solves the same equation with target t_j.
inline DiskChain inner_disk_chain(const QPoly& f, const Place& v, int depth) {
    detail::require_superattracting_zero(f);
    detail::require_bad_outside_small(f, v);
    return detail::disk_chain_from(f, v, detail::wing_radius(f, v), depth);
}

/// mod(A_0) = g - t_1 followed by the chain moduli.
inline std::vector<Rational> all_moduli(const DiskChain& c) {
    std::vector<Rational> out{c.g - c.levels.front().t};
    out.insert(out.end(), c.moduli.begin(), c.moduli.end());
    return out;
}

struct ModulusBound {
    int i = 0;
    Rational lower, modulus, upper;
    bool holds() const { return lower <= modulus && modulus <= upper; }
};

/// g/(d-1)^i <= mod(A_i) <= (d-1) g / 2^{i+1} for each computed A_i.
inline std::vector<ModulusBound> modulus_bounds(const DiskChain& c) {
    std::vector<ModulusBound> out;
    const Rational dm1(c.degree - 1);
    for (std::size_t j = 0; j < c.moduli.size(); ++j) {
        const int i = static_cast<int>(j) + 1;
        out.push_back({i, c.g / dm1.pow(i), c.moduli[j], dm1 * c.g / Rational(2).pow(i + 1)});
    }
    return out;
}

/// Where A_i holds no roots (k_i = k_{i+1}) f maps it onto A_{i-1} as a
/// degree k covering, so mod(A_i) k = mod(A_{i-1}). False if any such
/// identity fails.
inline bool covering_moduli_consistent(const DiskChain& c) {
    const auto mods = all_moduli(c);
    for (std::size_t i = 1; i < c.levels.size(); ++i) {
        const int k_i = c.levels[i - 1].k, k_next = c.levels[i].k;
        if (k_i == k_next && mods[i] * Rational(k_next) != mods[i - 1]) return false;
    }
    return true;
}

/// A class of components of E_1 = f^{-1}(B_0) under log_p distance < g.
struct WingCluster {
    std::optional<Rational> center;  // a point of the cluster, when one lies in Q
    Rational mass;                   // preimages of a point of B_0 in the cluster, over d
    unsigned roots = 0;              // those preimages, with multiplicity
    std::optional<unsigned> components;
    fp::Poly residue;                // irreducible factor of the reduced model for this class
    friend bool operator==(const WingCluster&, const WingCluster&) = default;
};

struct WingClusters {
    Place place;
    Rational g;     // log_p distance between distinct clusters
    Rational shift; // B_0 = D(-shift, p^g)
    std::vector<WingCluster> clusters;
    friend bool operator==(const WingClusters&, const WingClusters&) = default;
};

namespace detail {

/// Residue class mod p of p^g (z + shift) for a rational z in B_0; nullopt
/// outside B_0.
inline std::optional<Integer> wing_residue(const Rational& z, const Rational& shift, const Rational& g,
                                           const Integer& p) {
    const Rational x = z + shift;
    if (x.is_zero()) return Integer(0);
    const Rational lx(-vp(x, p));
    if (lx > g) return std::nullopt;
    if (lx < g) return Integer(0);
    return fp::Field(p).image(x * Rational(p).pow(g.num().get_si()));
}

/// Wing clusters of monic f whose K_v lies in B_0 = D(-b, p^g), b = a_{d-1}/d.
/// With x = z + b and u = p^g x, H(u) = p^{gd} (f_c(x) - w) is integral and
/// its reduction mod p does not depend on w in B_0. Roots of f - w are at
/// distance < p^g iff their u-values have equal residues, so clusters are
/// the roots of the reduction in the algebraic closure of F_p.
inline WingClusters wing_clusters_from(const QPoly& f, const Place& v, const Rational& g) {
    const Integer& p = v.prime();
    const int d = f.degree();
    const auto cen = center(f);
    const fp::Field F(p);
    std::vector<Integer> red(static_cast<std::size_t>(d + 1), Integer(0));
    for (int i = 0; i <= d; ++i) {
        const Rational& a = cen.poly.coeffs()[static_cast<std::size_t>(i)];
        if (a.is_zero()) continue;
        const Rational e = g * Rational(d - i) + Rational(vp(a, p));
        if (e.sign() < 0) throw DomainError("internal: wing radius too small");
        if (e.is_zero()) red[static_cast<std::size_t>(i)] = F.image(a / Rational(p).pow(vp(a, p)));
    }
    const fp::Poly H = F.make(red);

    const bool zero_in_b0 = cen.shift.is_zero() || Rational(-vp(cen.shift, p)) <= g;
    const Rational w = zero_in_b0 ? Rational(0) : -cen.shift;
    const QPoly h = f - QPoly::constant(w);
    const auto rat = rational_roots(h);

    WingClusters out{v, g, cen.shift, {}};
    for (const auto& [sq, e] : F.squarefree(H)) {
        for (const auto& phi : F.factor_squarefree(sq)) {
            WingCluster proto;
            proto.mass = Rational(static_cast<long>(e), d);
            proto.roots = e;
            proto.residue = phi;
            if (e == 1) proto.components = 1;
            if (phi.degree() > 1) {
                // Conjugate residues: one cluster each, none holds a point of Q.
                for (int copy = 0; copy < phi.degree(); ++copy) out.clusters.push_back(proto);
                continue;
            }
            WingCluster c = proto;
            const Integer a = F.reduce(-phi.c[0]);
            std::vector<std::pair<Rational, unsigned>> members;
            unsigned counted = 0;
            for (const auto& [r, m] : rat)
                if (wing_residue(r, cen.shift, g, p) == a) {
                    members.emplace_back(r, m);
                    counted += m;
                }
            if (!members.empty()) {
                std::sort(members.begin(), members.end(), [](const auto& x, const auto& y) {
                    return x.second != y.second ? x.second > y.second : x.first.abs() < y.first.abs();
                });
                c.center = members.front().first;
            } else if (g.is_integer()) {
                c.center = Rational(a) / Rational(p).pow(g.num().get_si()) - cen.shift;
            }
            if (counted == e) {
                // Every preimage is rational: a component is a class under
                // |r - r'| <= radius of the component of r.
                std::vector<int> cls(members.size(), -1);
                unsigned n = 0;
                for (std::size_t i = 0; i < members.size(); ++i) {
                    if (cls[i] >= 0) continue;
                    const Rational radius = gauss_solve(h, members[i].first, g, p);
                    cls[i] = static_cast<int>(n);
                    for (std::size_t j = i + 1; j < members.size(); ++j)
                        if (cls[j] < 0 && Rational(-vp(members[i].first - members[j].first, p)) <= radius)
                            cls[j] = static_cast<int>(n);
                    ++n;
                }
                c.components = n;
            }
            out.clusters.push_back(std::move(c));
        }
    }
    std::stable_sort(out.clusters.begin(), out.clusters.end(), [](const WingCluster& a, const WingCluster& b) {
        if (a.mass != b.mass) return a.mass > b.mass;
        if (a.center && b.center) return *a.center > *b.center;
        return a.center.has_value() && !b.center.has_value();
    });
    return out;
}

}  // namespace detail

/// Clusters of E_1 for monic f at a bad place outside S_d.
inline WingClusters wing_clusters(const QPoly& f, const Place& v) {
    detail::require_bad_outside_small(f, v);
    return detail::wing_clusters_from(f, v, detail::wing_radius(f, v));
}

/// Index of the cluster containing the rational point z, if any.
inline std::optional<std::size_t> cluster_of(const WingClusters& w, const Rational& z) {
    const Integer& p = w.place.prime();
    const auto r = detail::wing_residue(z, w.shift, w.g, p);
    if (!r) return std::nullopt;
    for (std::size_t i = 0; i < w.clusters.size(); ++i) {
        const auto& phi = w.clusters[i].residue;
        if (phi.degree() == 1 && fp::Field(p).reduce(-phi.c[0]) == *r) return i;
    }
    return std::nullopt;
}

enum class AnnulusClass { inside, deeper, outside, not_in_wing };

inline const char* to_string(AnnulusClass c) {
    switch (c) {
        case AnnulusClass::inside: return "inside";
        case AnnulusClass::deeper: return "deeper";
        case AnnulusClass::outside: return "outside";
        case AnnulusClass::not_in_wing: return "not_in_wing";
    }
    return "";
}

/// Position of z relative to A(m0) = B_{m0} minus B_{m0+1}, both centered
/// at p0 = 0: inside iff t_{m0+1} < log_p|z| <= t_{m0}. Points outside
/// B_{m0} are further split by whether they lie in the wing of p0, the open
/// disk of log radius g around it.
inline AnnulusClass classify_annulus(const DiskChain& chain, const Rational& z, int m0) {
    if (m0 < 1 || static_cast<std::size_t>(m0) >= chain.levels.size() + 1)
        throw DomainError("chain too short for level " + std::to_string(m0));
    if (z.is_zero()) return AnnulusClass::deeper;
    const Rational lz(-vp(z, chain.place.prime()));
    const auto& outer = chain.levels[static_cast<std::size_t>(m0 - 1)].t;
    if (lz >= chain.g) return AnnulusClass::not_in_wing;
    if (lz > outer) return AnnulusClass::outside;
    if (static_cast<std::size_t>(m0) >= chain.levels.size()) throw DomainError("chain too short for level " + std::to_string(m0));
    const auto& inner = chain.levels[static_cast<std::size_t>(m0)].t;
    return lz > inner ? AnnulusClass::inside : AnnulusClass::deeper;
}

inline AnnulusClass annulus_membership(const QPoly& f, const Place& v, const Rational& z, int m0) {
    if (m0 < 1) throw DomainError("m0 must be at least 1");
    return classify_annulus(inner_disk_chain(f, v, m0 + 1), z, m0);
}

/// Equilibrium mass of A(m0): mass(B_{m0}) - mass(B_{m0+1}).
inline Rational annulus_mass(const DiskChain& chain, int m0) {
    return chain.levels[static_cast<std::size_t>(m0 - 1)].mass - chain.levels[static_cast<std::size_t>(m0)].mass;
}

/// log d_v(T) = (1/(n(n-1))) sum_{i != j} log|z_i - z_j|_v.
inline LogValue hsia_energy(const std::vector<Rational>& T, const Place& v) {
    if (!v.is_finite_prime()) throw DomainError("hsia_energy needs a finite place of Q");
    if (T.size() < 2) throw DomainError("hsia_energy needs at least two points");
    std::set<Rational> seen(T.begin(), T.end());
    if (seen.size() != T.size()) throw DomainError("hsia_energy: points must be distinct");
    const long n = static_cast<long>(T.size());
    long total = 0;
    for (std::size_t i = 0; i < T.size(); ++i)
        for (std::size_t j = i + 1; j < T.size(); ++j) total -= 2 * vp(T[i] - T[j], v.prime());
    return LogValue::log_prime(v.prime(), Rational(total, n * (n - 1)));
}

}  // namespace splitrad
