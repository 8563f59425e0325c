#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "splitrad/exact/interval.hpp"
#include "splitrad/exact/rational.hpp"

namespace splitrad {

/// Result of comparing two LogValues. `undetermined` means the certified
/// enclosures overlap and the exact parts did not settle the question.
enum class Ordering { less, equal, greater, undetermined };

/// A height-valued quantity
///
///     constant + sum_p q_p * log p + arch
///
/// where `constant` and the q_p are exact rationals and `arch` is a
/// certified enclosure of a transcendental remainder (archimedean escape
/// rates). Over Q the constant stays 0; over Q(t) every height is a plain
/// rational and lives entirely in `constant`.
class LogValue {
public:
    LogValue() = default;

    static LogValue log_prime(const Integer& p, const Rational& coeff = 1) {
        LogValue v;
        if (!coeff.is_zero()) v.logs_[p] = coeff;
        return v;
    }
    static LogValue rational(const Rational& c) {
        LogValue v;
        v.constant_ = c;
        return v;
    }
    static LogValue numeric(const Interval& arch) {
        LogValue v;
        v.arch_ = arch;
        return v;
    }

    const Rational& constant() const { return constant_; }
    const std::map<Integer, Rational>& logs() const { return logs_; }
    const Interval& arch() const { return arch_; }

    Rational coefficient(const Integer& p) const {
        auto it = logs_.find(p);
        return it == logs_.end() ? Rational(0) : it->second;
    }

    /// True when the numeric part is the degenerate interval [0, 0].
    bool is_exact() const { return arch_.lo() == 0.0 && arch_.hi() == 0.0; }
    /// True when the formal part (constant and log coefficients) vanishes.
    bool formal_zero() const { return constant_.is_zero() && logs_.empty(); }
    bool is_zero() const { return is_exact() && formal_zero(); }

    /// Same value with the numeric part dropped.
    LogValue formal_part() const {
        LogValue v = *this;
        v.arch_ = Interval(0.0);
        return v;
    }

    /// Certified enclosure of the real number represented.
    Interval enclosure() const {
        Interval acc = Interval::from_rational(constant_);
        for (const auto& [p, q] : logs_) acc += q * Interval::log_of(p);
        return acc + arch_;
    }
    double approx() const { return enclosure().mid(); }

    LogValue& operator+=(const LogValue& o) {
        constant_ += o.constant_;
        for (const auto& [p, q] : o.logs_) add_log(p, q);
        if (!o.is_exact()) arch_ = is_exact() ? o.arch_ : arch_ + o.arch_;
        return *this;
    }
    LogValue& operator-=(const LogValue& o) { return *this += -o; }
    friend LogValue operator+(LogValue a, const LogValue& b) { return a += b; }
    friend LogValue operator-(LogValue a, const LogValue& b) { return a -= b; }
    friend LogValue operator-(const LogValue& a) { return Rational(-1) * a; }

    friend LogValue operator*(const Rational& s, const LogValue& a) {
        LogValue v;
        if (s.is_zero()) return v;
        v.constant_ = s * a.constant_;
        for (const auto& [p, q] : a.logs_) v.logs_[p] = s * q;
        v.arch_ = a.is_exact() ? Interval(0.0) : s * a.arch_;
        return v;
    }

    /// Sign of (a - b). Decided exactly when the difference is an exact
    /// zero; otherwise from the certified enclosure.
    friend Ordering compare(const LogValue& a, const LogValue& b) {
        const LogValue diff = a - b;
        if (diff.is_zero()) return Ordering::equal;
        const Interval e = diff.enclosure();
        if (e.hi() < 0) return Ordering::less;
        if (e.lo() > 0) return Ordering::greater;
        return Ordering::undetermined;
    }

    /// Componentwise max for values with exact parts on a single prime or a
    /// single constant; general maxima go through the enclosure.
    friend LogValue max_exact(const LogValue& a, const LogValue& b) {
        switch (compare(a, b)) {
            case Ordering::less: return b;
            case Ordering::greater:
            case Ordering::equal: return a;
            case Ordering::undetermined: break;
        }
        // Only reachable when both carry numeric parts; hull of both.
        LogValue v = a.formal_part();
        const Interval ea = a.enclosure(), eb = b.enclosure();
        const Interval hull(std::max(ea.lo(), eb.lo()), std::max(ea.hi(), eb.hi()));
        v.arch_ = hull - a.formal_part().enclosure();
        return v;
    }

    friend bool operator==(const LogValue& a, const LogValue& b) {
        return a.constant_ == b.constant_ && a.logs_ == b.logs_ && a.arch_ == b.arch_;
    }

    /// Canonical text, e.g. "log(3) + 1/3*log(5) + [0.0816, 0.0817]".
    std::string str() const {
        std::ostringstream os;
        bool first = true;
        auto sep = [&](bool negative) {
            if (first) {
                if (negative) os << '-';
            } else {
                os << (negative ? " - " : " + ");
            }
            first = false;
        };
        if (!constant_.is_zero()) {
            sep(constant_.sign() < 0);
            os << constant_.abs();
        }
        for (const auto& [p, q] : logs_) {
            sep(q.sign() < 0);
            if (q.abs() != 1) os << q.abs() << '*';
            os << "log(" << p.get_str() << ')';
        }
        if (!is_exact()) {
            sep(false);
            os.precision(17);
            os << '[' << arch_.lo() << ", " << arch_.hi() << ']';
        }
        if (first) os << '0';
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const LogValue& v) { return os << v.str(); }

private:
    void add_log(const Integer& p, const Rational& q) {
        auto [it, inserted] = logs_.try_emplace(p, q);
        if (!inserted) it->second += q;
        if (it->second.is_zero()) logs_.erase(it);
    }

    Rational constant_;
    std::map<Integer, Rational> logs_;
    Interval arch_;
};

}  // namespace splitrad
