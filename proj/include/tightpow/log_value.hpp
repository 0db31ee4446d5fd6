#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tightpow {

/// Nonnegative magnitude stored as its natural log. Zero is log = -inf.
class LogValue {
public:
    static constexpr double kTolerance = 1e-12;

    constexpr LogValue() = default;

    static LogValue zero() { return LogValue(-std::numeric_limits<double>::infinity()); }
    static LogValue one() { return LogValue(0.0); }
    static LogValue from_log(double l) {
        if (std::isnan(l) || l == std::numeric_limits<double>::infinity())
            throw std::domain_error("LogValue: log must be finite or -inf");
        return LogValue(l);
    }
    static LogValue from_linear(double x) {
        if (!(x >= 0.0) || std::isinf(x)) throw std::domain_error("LogValue: value must be finite and >= 0");
        return LogValue(x == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(x));
    }

    double log() const { return log_; }
    bool is_zero() const { return std::isinf(log_); }
    /// Linear value; +inf when it does not fit a double.
    double linear() const { return std::exp(log_); }
    /// True when linear() is a finite, normal (or zero) double.
    bool representable() const { return is_zero() || (log_ < 709.0 && log_ > -708.0); }

    LogValue pow(double e) const {
        if (is_zero()) {
            if (e > 0) return zero();
            if (e == 0) return one();
            throw std::domain_error("LogValue: zero to a negative power");
        }
        return LogValue(log_ * e);
    }

    friend LogValue operator*(LogValue a, LogValue b) { return LogValue(a.log_ + b.log_); }
    friend LogValue operator/(LogValue a, LogValue b) {
        if (b.is_zero()) throw std::domain_error("LogValue: division by zero");
        return LogValue(a.log_ - b.log_);
    }
    friend bool operator<(LogValue a, LogValue b) { return a.log_ < b.log_; }
    friend bool operator>(LogValue a, LogValue b) { return b < a; }
    friend bool operator<=(LogValue a, LogValue b) { return !(b < a); }
    friend bool operator>=(LogValue a, LogValue b) { return !(a < b); }

    /// Equality in log space up to kTolerance (both zero counts as equal).
    bool approx_equal(LogValue o, double tol = kTolerance) const {
        if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
        return std::fabs(log_ - o.log_) <= tol;
    }

private:
    explicit constexpr LogValue(double l) : log_(l) {}
    double log_ = -std::numeric_limits<double>::infinity();
};

}  // namespace tightpow
