#ifndef CARLAB_CONJUGATION_HPP
#define CARLAB_CONJUGATION_HPP

#include <string>
#include <vector>

#include "carlab/laurent.hpp"
#include "carlab/polar.hpp"
#include "carlab/profile.hpp"

namespace carlab {

/// The operator obtained by sandwiching r^2 Delta between the weight
/// e^{-tau phi} e^{sigma1 t} t^{sigma2} and its inverse, restricted to a
/// degree-k mode. Profiles it acts on must be supported in t < t0_support.
struct ConjugatedOperator {
    double tau = 2.0;  // > 1
    int sigma1 = 0;
    int sigma2 = 0;
    int n = 3;
    int k = 0;
    double t0_support = -3.0;

    void validate() const;
    double kappa() const { return angular_eigenvalue(k, n); }
};

/// a(t) = -2 sigma1 - 2 sigma2 / t
double coeff_a(double t, int sigma1, int sigma2);
/// b(t) = -(n-2)(s1 + s2/t) + s2/t^2 + (s1 - s2/t)^2 - 2(tau + 2 tau/t)(s1 + s2/t)
double coeff_b(double t, double tau, int sigma1, int sigma2, int n);
double coeff_a_prime(double t, int sigma2);
double coeff_b_prime(double t, double tau, int sigma1, int sigma2, int n);

/// exact Laurent forms of the operator's coefficient functions
LaurentPoly a_poly(int sigma1, int sigma2);
LaurentPoly b_poly(double tau, int sigma1, int sigma2, int n);
/// w(t) = tau (1 + 2/t)
LaurentPoly w_poly(double tau);

/// v = e^{-tau (phi(t) - phi_ref)} e^{sigma1 t} t^{sigma2} u. phi_ref shifts
/// the weight by a constant so extreme tau stays inside double range; use
/// the same phi_ref in the matching unconjugate call.
ModeFunction conjugate(const ModeFunction& u, const WeightSpec& w, double phi_ref = 0.0);
ModeFunction unconjugate(const ModeFunction& v, const WeightSpec& w, double phi_ref = 0.0);

/// Delta_tau v (expanded form, per mode); `stencil` replaces the analytic
/// derivatives of v by grid finite differences.
ModeFunction apply_delta_tau(const ModeFunction& v, const ConjugatedOperator& op,
                             bool stencil = false);
ModeFunction apply_delta_tau_minus(const ModeFunction& v, const ConjugatedOperator& op,
                                   bool stencil = false);

struct EnergyValue {
    double direct;     // from the defining norms
    double expansion;  // from the inner-product expansion
};
/// I = ||Delta_tau v||^2 - ||Delta_tau^- v||^2, both routes
EnergyValue energy_I(const ModeFunction& v, const ConjugatedOperator& op);
/// J = ||t^{-1} Delta_tau v||^2 + ||t^{-1} Delta_tau^- v||^2, both routes
EnergyValue energy_J(const ModeFunction& v, const ConjugatedOperator& op);

struct IbpResult {
    std::string id;
    double lhs = 0.0;       // literal inner-product form
    double rhs = 0.0;       // boundary-free form
    double gap = 0.0;       // |lhs-rhs| / max(|lhs|, 1)
    double residual = 0.0;  // lhs minus the explicitly printed terms
    double envelope = 0.0;  // analytic bound the residual must obey
    bool envelope_ok = true;
};

/// ids of the cataloged integration-by-parts identities
const std::vector<std::string>& ibp_catalog();

/// evaluates one identity on a compactly supported smooth mode profile
IbpResult ibp_identity(const std::string& id, const ModeFunction& v,
                       const ConjugatedOperator& op);

struct CombinedBound {
    double delta_tau_sq = 0.0;     // ||Delta_tau v||^2
    double tau_sum = 0.0;          // sum_{j+|a|<=2} tau^{3-2(j+|a|)} ||t^{-1} d^j O^a v||^2
    double admissible_C = 0.0;     // delta_tau_sq / tau_sum
    double tau_I_plus_J = 0.0;     // tau I + J
    double shape_sum = 0.0;        // leading-coefficient shape of the lower bound
    double shape_C = 0.0;          // tau_I_plus_J / shape_sum
    double energy_upper = 0.0;     // (tau+1) ||Delta_tau v||^2
    bool energy_inequality_ok = false;
    double U = 0.0;                // per-mode complete-square combination
    bool U_nonneg = false;
    double I_direct = 0.0;
    double I_lower = 0.0;          // guaranteed lower bound with analytic slack
    bool I_bound_ok = false;
};

/// Evaluates the combined energy lower bound and its side conditions on one
/// profile. Fitting across a family is the caller's loop.
CombinedBound combined_lower_bound(const ModeFunction& v, const ConjugatedOperator& op);

}  // namespace carlab

#endif
