#ifndef CARLAB_UCP_HPP
#define CARLAB_UCP_HPP

#include <vector>

#include "carlab/check_report.hpp"
#include "carlab/exponents.hpp"
#include "carlab/polar.hpp"
#include "carlab/potential_norms.hpp"

namespace carlab {

/// sup of |u| over the ball of radius r (angular convention sup|Y_k| = 1)
double sup_ball(const ModeFunction& u, double r);

/// sup of |u| over the radial segment [max(d - rho, r_min), d + rho]: the
/// ball B_rho centered at distance d on a ray, for mode-decomposed u
/// evaluated along the ray.
double ray_sup(const ModeFunction& u, double center_dist, double rho);

/// log-log slope of sup_ball against r across the given radii (decreasing,
/// >= 6 values spanning >= 2 decades in r).
double vanishing_order_fit(const ModeFunction& u, const std::vector<double>& radii);

struct OrderBoundCheck {
    double measured_order = 0.0;
    double bound = 0.0;
    double pointwise_c = 0.0;  // largest c with sup_ball(r) >= c r^{bound} on the window
    bool passed = false;
};

/// measured vanishing order against C(1 + sum A^mu + A0^nu), plus the
/// pointwise lower-bound fit.
OrderBoundCheck order_bound_check(const ModeFunction& u, const ProblemParams& params,
                                  const PotentialNorms& norms, double C,
                                  const std::vector<double>& radii);

/// Derivative sums over an annulus against the solution norm on a larger
/// annulus, ratio normalized by the potential aggregate. Radii are the
/// fractions (c1 > c2 > c3 > c4) of R0.
CheckReport caccioppoli_check(const ModeFunction& u, const PotentialNorms& norms, int m,
                              double R0, double c1, double c2, double c3, double c4);

/// sup bound by the scaled L^2 mass of the double ball.
CheckReport linfty_check(const ModeFunction& u, const PotentialNorms& norms, int m, double r,
                         const ProblemParams& params);

/// interpolation exponent of the three-ball inequality
double k0_compute(double r0, double r1, double R1);

struct ThreeBallConfig {
    double r0 = 0.0, r1 = 0.0, R1 = 0.0;
    double beta = 1.0;  // aggregate C(1 + sum A_a + A0)
    double k0 = 0.0;

    static ThreeBallConfig from_radii(double r0, double r1, double R1, double beta = 1.0);
    /// the radii map r0 = r/2, r1 = 4r, R1 = 10r used by the order bound
    static ThreeBallConfig from_small_radius(double r, double beta = 1.0);
    void validate() const;
};

struct ThreeBallBound {
    LogVal bound;
    int branch = 1;      // 1: interpolation branch, 2: threshold branch
    double tau1 = 0.0;   // optimizing parameter of branch one
};

/// middle-ball bound from (U1, B1) and (U2, B2) with the two-branch choice
/// at tau_min.
ThreeBallBound three_ball_bound(double U1, double U2, double B1, double B2,
                                const ThreeBallConfig& cfg, double tau_min);

/// sup-norm three-ball inequality with the additive threshold term; fitted
/// constant reported per profile (sweep column carries the family index).
CheckReport three_ball_check(const std::vector<ModeFunction>& family,
                             const PotentialNorms& norms, const ThreeBallConfig& cfg,
                             const ProblemParams& params, double C0);

struct PropagationStep {
    double delta = 0.0;        // measured sup on B_r(x_i)
    double chain_sup = 0.0;    // measured sup on B_3r(x_i)
    double exponent = 0.0;     // k0^i
    double log_power_sum = 0.0;   // accumulated 1 + k0 + ... (log factors)
    double aggregate_sum = 0.0;   // same accumulation on the exp factor
};

struct PropagationResult {
    double k0 = 0.0;
    double C_step = 0.0;          // single fitted constant making every step true
    double derived_log_lower = 0.0;  // log of the derived lower bound on delta_0
    double measured_delta0 = 0.0;
    std::vector<PropagationStep> steps;
    bool passed = false;  // derived lower bound does not exceed the measured sup
};

/// Iterates the three-ball inequality along a collinear chain of `links`
/// balls of radius r marching outward from the origin; u is normalized by
/// its sup on the final ball.
PropagationResult propagate_smallness(const ModeFunction& u, int links, double r,
                                      const ProblemParams& params, const PotentialNorms& norms,
                                      double C0);

/// norms of the rescaled coefficients at scale R
PotentialNorms scaled_norms(double R, const ProblemParams& params, const PotentialNorms& norms);

/// lower bound c exp(-C R^Theta log R) on the infimum of sup-ball values at
/// distance R
LogVal infinity_bound(double R, const ProblemParams& params, const PotentialNorms& norms,
                      double C, double c);

struct InfinityConsistency {
    Rat order_bound_exponent;  // R-exponent of order_bound(scaled_norms(R))
    Rat theta;                 // growth exponent reported by theta_infinity
    bool equal = false;
};

/// rational comparison of the scaled-norm route with the direct exponent
InfinityConsistency infinity_consistency(const ProblemParams& params);

/// rows of the experiment CSV: family, lambda_or_k, measured_order, bound,
/// C_fit, passed
struct OrderExperimentRow {
    std::string family;
    double lambda_or_k = 0.0;
    double measured_order = 0.0;
    double bound = 0.0;
    double C_fit = 0.0;
    bool passed = false;
};

}  // namespace carlab

#endif
