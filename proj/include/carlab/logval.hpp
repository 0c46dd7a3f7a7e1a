#ifndef CARLAB_LOGVAL_HPP
#define CARLAB_LOGVAL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace carlab {

/// Nonnegative quantity stored as its natural log. The Carleman weights
/// reach e^{+-10000} inside the sweeps, far outside double range, so every
/// weighted norm and every ratio of norms is carried in log form.
class LogVal {
  public:
    LogVal() : lg_(-std::numeric_limits<double>::infinity()) {}

    static LogVal from_value(double v) {
        if (v < 0.0) throw std::domain_error("LogVal: negative value");
        LogVal x;
        x.lg_ = (v == 0.0) ? -std::numeric_limits<double>::infinity() : std::log(v);
        return x;
    }
    static LogVal from_log(double lg) {
        LogVal x;
        x.lg_ = lg;
        return x;
    }
    static LogVal zero() { return LogVal(); }

    bool is_zero() const { return std::isinf(lg_) && lg_ < 0; }
    double log() const { return lg_; }
    double log10() const { return lg_ / std::log(10.0); }
    double to_double() const { return is_zero() ? 0.0 : std::exp(lg_); }

    friend LogVal operator*(const LogVal& a, const LogVal& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        return from_log(a.lg_ + b.lg_);
    }
    friend LogVal operator/(const LogVal& a, const LogVal& b) {
        if (b.is_zero()) throw std::domain_error("LogVal: division by zero");
        if (a.is_zero()) return zero();
        return from_log(a.lg_ - b.lg_);
    }
    friend LogVal operator+(const LogVal& a, const LogVal& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        double m = std::max(a.lg_, b.lg_);
        return from_log(m + std::log(std::exp(a.lg_ - m) + std::exp(b.lg_ - m)));
    }
    LogVal& operator+=(const LogVal& o) { return *this = *this + o; }
    LogVal& operator*=(const LogVal& o) { return *this = *this * o; }

    LogVal pow(double e) const {
        if (is_zero()) {
            if (e <= 0.0) throw std::domain_error("LogVal: 0^nonpositive");
            return zero();
        }
        return from_log(lg_ * e);
    }

    friend bool operator<(const LogVal& a, const LogVal& b) { return a.lg_ < b.lg_; }
    friend bool operator>(const LogVal& a, const LogVal& b) { return b < a; }
    friend bool operator<=(const LogVal& a, const LogVal& b) { return !(b < a); }
    friend bool operator>=(const LogVal& a, const LogVal& b) { return !(a < b); }

    /// ratio a/b as a plain double (finite whenever the logs are comparable)
    static double ratio(const LogVal& a, const LogVal& b) { return (a / b).to_double(); }

  private:
    double lg_;
};

/// log-sum-exp accumulator for quadrature sums Sum w_i * g_i with g_i >= 0
/// given as logs; exact up to rounding, immune to overflow.
class LogSum {
  public:
    void add_log(double lg) {
        if (std::isinf(lg) && lg < 0) return;
        terms_.push_back(lg);
    }
    void add(const LogVal& v) {
        if (!v.is_zero()) terms_.push_back(v.log());
    }
    LogVal total() const {
        if (terms_.empty()) return LogVal::zero();
        double m = *std::max_element(terms_.begin(), terms_.end());
        if (std::isinf(m)) return LogVal::from_log(m);
        double s = 0.0;
        for (double t : terms_) s += std::exp(t - m);
        return LogVal::from_log(m + std::log(s));
    }

  private:
    std::vector<double> terms_;
};

}  // namespace carlab

#endif
