#ifndef CARLAB_RATIONAL_HPP
#define CARLAB_RATIONAL_HPP

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace carlab {

/// Exact fraction over 64-bit integers. All exponent formulas are evaluated
/// in this type; conversion to double happens only at the reporting boundary.
class Rat {
  public:
    constexpr Rat() : num_(0), den_(1) {}
    constexpr Rat(std::int64_t n) : num_(n), den_(1) {}
    Rat(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat::from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat::from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat::from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
        return Rat::from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rat operator-() const { return Rat(-num_, den_); }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return i128(a.num_) * b.den_ < i128(b.num_) * a.den_; }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    bool positive() const { return num_ > 0; }
    bool negative() const { return num_ < 0; }
    bool is_zero() const { return num_ == 0; }

  private:
    using i128 = __int128;

    static Rat from128(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr i128 lim = INT64_MAX;
        if (n > lim || n < -lim || d > lim) throw std::overflow_error("Rat: overflow");
        Rat r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        if (den_ == 0) throw std::domain_error("Rat: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    std::int64_t num_, den_;
};

/// Extended rational: a finite fraction or +infinity. Used for the Lebesgue
/// exponents s and p, which the admissibility intervals close off at +inf.
class ExtRat {
  public:
    ExtRat() : inf_(false), v_() {}
    ExtRat(Rat v) : inf_(false), v_(v) {}
    ExtRat(std::int64_t v) : inf_(false), v_(Rat(v)) {}
    static ExtRat infinity() {
        ExtRat e;
        e.inf_ = true;
        return e;
    }

    bool is_inf() const { return inf_; }
    const Rat& finite() const {
        if (inf_) throw std::domain_error("ExtRat: infinite value used as finite");
        return v_;
    }
    double to_double() const { return inf_ ? std::numeric_limits<double>::infinity() : v_.to_double(); }
    std::string str() const { return inf_ ? "inf" : v_.str(); }

    friend bool operator==(const ExtRat& a, const ExtRat& b) {
        if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
        return a.v_ == b.v_;
    }
    // finite < inf; inf == inf
    friend bool operator<(const ExtRat& a, const ExtRat& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator>(const ExtRat& a, const ExtRat& b) { return b < a; }
    friend bool operator<=(const ExtRat& a, const ExtRat& b) { return !(b < a); }
    friend bool operator>=(const ExtRat& a, const ExtRat& b) { return !(a < b); }

  private:
    bool inf_;
    Rat v_;
};

/// (a*x + b) / (c*x + d) evaluated at a finite or infinite x, taking the
/// x -> inf limit a/c in the infinite case. Every exponent formula that
/// depends on s or p is linear-fractional in it, so this is the single
/// evaluation path for the "formulas are evaluated as limits" rule.
inline Rat mobius(const Rat& a, const Rat& b, const Rat& c, const Rat& d, const ExtRat& x) {
    if (x.is_inf()) {
        if (c.is_zero()) throw std::domain_error("mobius: divergent limit at infinity");
        return a / c;
    }
    const Rat& t = x.finite();
    return (a * t + b) / (c * t + d);
}

}  // namespace carlab

#endif
