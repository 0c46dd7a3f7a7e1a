#ifndef CARLAB_POLAR_HPP
#define CARLAB_POLAR_HPP

#include <limits>
#include <string>
#include <vector>

#include "carlab/logval.hpp"
#include "carlab/profile.hpp"

namespace carlab {

/// phi(r) = log r + log((log r)^2) = t + 2 log|t|, t = log r < 0
double phi(double r);
double phi_from_t(double t);
/// phi'(r) = 1/r + 2/(r log r)
double phi_prime(double r);

constexpr double kPInf = std::numeric_limits<double>::infinity();

/// Weight e^{-tau phi(r)} (log r)^{sigma2 + log_power} r^{sigma1}.
/// sigma2 is the bookkeeping power the estimates shift between sides;
/// log_power carries the extra (log r)^{-m}-type factor.
struct WeightSpec {
    double tau = 0.0;
    int sigma1 = 0;
    int sigma2 = 0;
    int log_power = 0;

    void validate() const;
    /// log of |weight| at t
    double log_weight(double t) const;
    int log_exponent() const { return sigma2 + log_power; }
};

enum class Measure {
    RadialQuotient,  // r^{-n} dx: per mode, plain dt
    Plain            // dx: per mode, e^{n t} dt
};

/// ||w f||_{L^p(measure)} per mode, reduced to a 1-D integral in t with
/// unit angular factor (angular measure normalized to int |Y_k|^2 = 1).
/// p = kPInf returns the weighted sup over the evaluation nodes.
LogVal weighted_lp_norm(const ModeFunction& f, const WeightSpec& w, double p, Measure measure);

/// Same, on an explicit t-window [t_lo, t_hi]; analytic profiles use
/// composite Gauss-Legendre panels so window ends need not be grid nodes.
LogVal weighted_lp_norm_window(const ModeFunction& f, const WeightSpec& w, double p,
                               Measure measure, double t_lo, double t_hi);

/// eigenvalue of -Delta_omega on degree-k spherical harmonics: k(k+n-2)
double angular_eigenvalue(int k, int n);

/// Coefficient polynomial of r^2 Delta on a mode: d^2 + (n-2) d - k(k+n-2).
std::vector<double> laplacian_mode_coeffs(int k, int n);

/// Coefficient polynomial of r^{2m} Delta^m on a mode, i.e. the product of
/// the shifted factors L_{-2j}(d) = (d-2j)^2 + (n-2)(d-2j) - k(k+n-2).
std::vector<double> polyharmonic_mode_coeffs(int k, int n, int m);

/// profile of r^2 Delta (f Y_k)
ModeFunction apply_laplacian_mode(const ModeFunction& f);

/// profile of r^{2m} Delta^m (f Y_k)
ModeFunction apply_polyharmonic_mode(const ModeFunction& f, int m);

/// Serializes a profile on its grid as CSV: header "t,<descriptor>".
std::string profile_csv(const ModeFunction& f);

}  // namespace carlab

#endif
