#ifndef CARLAB_LAURENT_HPP
#define CARLAB_LAURENT_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace carlab {

/// Polynomial in 1/t: sum_j c[j] t^{-j}. The conjugated-operator
/// coefficients a, b and every integration-by-parts coefficient are of this
/// form, so sums, products and t-derivatives stay exact.
class LaurentPoly {
  public:
    LaurentPoly() = default;
    explicit LaurentPoly(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }
    static LaurentPoly constant(double v) { return LaurentPoly({v}); }
    /// c * t^{-j}
    static LaurentPoly term(double coeff, int j) {
        std::vector<double> v(static_cast<std::size_t>(j) + 1, 0.0);
        v[static_cast<std::size_t>(j)] = coeff;
        return LaurentPoly(std::move(v));
    }

    double eval(double t) const {
        double s = 0.0, p = 1.0;
        for (double ci : c_) {
            s += ci * p;
            p /= t;
        }
        return s;
    }

    LaurentPoly deriv() const {
        std::vector<double> d(c_.size() + 1, 0.0);
        for (std::size_t j = 1; j < c_.size(); ++j) d[j + 1] = -static_cast<double>(j) * c_[j];
        return LaurentPoly(std::move(d));
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        std::vector<double> s(std::max(a.c_.size(), b.c_.size()), 0.0);
        for (std::size_t j = 0; j < a.c_.size(); ++j) s[j] += a.c_[j];
        for (std::size_t j = 0; j < b.c_.size(); ++j) s[j] += b.c_[j];
        return LaurentPoly(std::move(s));
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        return a + (b * -1.0);
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.c_.empty() || b.c_.empty()) return LaurentPoly();
        std::vector<double> s(a.c_.size() + b.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) s[i + j] += a.c_[i] * b.c_[j];
        return LaurentPoly(std::move(s));
    }
    friend LaurentPoly operator*(const LaurentPoly& a, double s) {
        LaurentPoly r = a;
        for (double& ci : r.c_) ci *= s;
        return r;
    }
    friend LaurentPoly operator*(double s, const LaurentPoly& a) { return a * s; }

    const std::vector<double>& coeffs() const { return c_; }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
    }
    std::vector<double> c_;
};

}  // namespace carlab

#endif
