#ifndef CARLAB_FITTING_HPP
#define CARLAB_FITTING_HPP

#include <string>
#include <vector>

namespace carlab {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// least-squares line through (x_i, y_i)
LineFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

struct SweepPoint {
    double tau = 0.0;
    double ratio = 0.0;
};

struct FitResult {
    double C_hat = 0.0;     // max ratio over the stable tail
    double tau0_hat = 0.0;  // smallest tau after which the ratio stays within slack of C_hat
    bool stabilized = false;
    double tail_slope = 0.0;  // log-log slope on the tail
    std::string note;
};

/// Estimates the constant and threshold a bounded-ratio sweep exhibits.
/// Requires >= 8 samples spanning >= 3 doublings of tau. A tail that keeps
/// growing (log-log slope above the threshold) is flagged unstabilized.
FitResult fit_constant_and_tau0(std::vector<SweepPoint> sweep, double slack = 0.10,
                                double slope_threshold = 0.05);

/// Largest factor between max ratios of consecutive tau doubling octaves;
/// the bounded-constant checks require this below 2.
double max_doubling_drift(const std::vector<SweepPoint>& sweep);

}  // namespace carlab

#endif
