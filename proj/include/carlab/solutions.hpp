#ifndef CARLAB_SOLUTIONS_HPP
#define CARLAB_SOLUTIONS_HPP

#include <memory>
#include <utility>
#include <vector>

#include "carlab/polar.hpp"
#include "carlab/potential_norms.hpp"
#include "carlab/profile.hpp"

namespace carlab {

/// C^inf compactly supported mode profile
/// exp(-1/(1-((t-c)/w)^2)) cos(eta t) on |t - c| < w.
ModeFunction bump_mode(std::shared_ptr<const RadialGrid> grid, int k, int n, double center,
                       double width, double eta = 0.0);

/// r^a on mode k, with the exact coefficient chain
/// c_j = (a-2j)(a-2j+n-2) - k(k+n-2) and Delta^m (r^a Y_k) = prod c_j r^{a-2m}.
struct PowerSolution {
    ModeFunction u;
    std::vector<double> coeff_chain;   // c_0 .. c_{m-1}
    double image_coeff = 0.0;          // prod c_j
    double image_exponent = 0.0;       // a - 2m
};
PowerSolution polyharmonic_power(double a, int k, int n, int m,
                                 std::shared_ptr<const RadialGrid> grid);

/// Regular radial eigenmode: Delta u = -lambda u, normalized to leading
/// coefficient 1 at r^k; solves Delta^m u + V0 u = 0 with the constant
/// V0 = -(-lambda)^m, so ||V0||_inf = lambda^m. Vanishing order k.
struct EigenSolution {
    ModeFunction u;
    double lambda = 0.0;
    double V0 = 0.0;
    double V0_Linf = 0.0;
    int vanishing_order = 0;
};
EigenSolution eigen_solution(double lambda, int k, int n, int m,
                             std::shared_ptr<const RadialGrid> grid);

/// radial drift coefficient V_alpha(t) paired with its order |alpha|
struct DriftTerm {
    int order = 1;
    ProfilePtr coefficient;
};

/// Potential sampled on the grid, with its L^s norm on the region where it
/// is supported (plain measure, unit angular factor).
struct SampledPotential {
    std::shared_ptr<GridProfile> V0;
    double Ls_norm = 0.0;
    ExtRat s;
    double region_lo = 0.0, region_hi = 0.0;
};

/// V0 = -(Delta^m u + sum V_a D^a u)/u pointwise on the sub-window of the
/// support where |u| >= floor_frac * max|u|; zero outside. Drifts act
/// through the radial representative D^a -> e^{-|a| t} d_t^{|a|}.
SampledPotential manufactured(const ModeFunction& u, int m, const std::vector<DriftTerm>& drifts,
                              double floor_frac, const ExtRat& s);

/// Relative on-grid residual of Delta^m u + V0 u with constant V0, measured
/// against the larger of the two terms.
double pde_residual_const(const ModeFunction& u, int m, double V0);

/// Relative residual of Delta^m u + sum V_a D^a u + V0 u with sampled V0.
double pde_residual(const ModeFunction& u, int m, const std::vector<DriftTerm>& drifts,
                    const SampledPotential& V0);

}  // namespace carlab

#endif
