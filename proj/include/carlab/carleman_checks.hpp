#ifndef CARLAB_CARLEMAN_CHECKS_HPP
#define CARLAB_CARLEMAN_CHECKS_HPP

#include <stdexcept>
#include <vector>

#include "carlab/check_report.hpp"
#include "carlab/exponents.hpp"
#include "carlab/fitting.hpp"
#include "carlab/polar.hpp"
#include "carlab/solutions.hpp"

namespace carlab {

/// tau below the absorption threshold: a precondition violation, not an
/// inequality failure
class AbsorptionPreconditionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// test input built from compactly supported polyharmonic images that
/// vanish identically: signals a broken test construction, not a result
class VacuousCheckError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// (t, mode)-frame surrogate of ||W r^{A} D^A u||_{L^2(r^{-n}dx)}: the
/// multi-index derivatives are replaced by sum_{j+i=A} kappa^i |d_t^j f|^2,
/// the r^{A} cancelling against the e^{-t}-per-derivative scaling.
LogVal surrogate_norm(const ModeFunction& u, const WeightSpec& weight, int A);

/// L^2 estimate of the conjugated second-order operator mapped back to the
/// solution frame: three derivative orders against r^{sigma1+2} Delta u.
CheckReport step_carleman_check(const std::vector<ModeFunction>& us, int sigma1, int sigma2,
                                const std::vector<double>& taus);

/// Order-m L^2 estimate: derivative orders 0..2m-1 against
/// r^{sigma1+2m} Delta^m u.
CheckReport l2_carleman_check(const std::vector<ModeFunction>& us, const ProblemParams& params,
                              int sigma1, int sigma2, const std::vector<double>& taus);

/// Adds the tau^{beta0} L^p u-term (case-dependent measure) to the L^2
/// check at sigma1 = sigma2 = 0.
CheckReport lp_carleman_check(const std::vector<ModeFunction>& us, const ProblemParams& params,
                              const std::vector<double>& taus,
                              std::optional<ExtRat> p = std::nullopt);

/// Full lower-order absorption check: the right side carries
/// r^{2m}(Delta^m u + sum V_a D^a u + V0 u). When enforce_threshold is set,
/// sweeping below order_bound(params, norms, C0) raises
/// AbsorptionPreconditionError.
CheckReport potential_carleman_check(const std::vector<ModeFunction>& us,
                                     const ProblemParams& params, const PotentialNorms& norms,
                                     const SampledPotential* V0,
                                     const std::vector<DriftTerm>& drifts,
                                     const std::vector<double>& taus, double C0,
                                     bool enforce_threshold = true);

struct HolderSide {
    std::string name;
    double lhs_log10 = 0.0;  // weighted norm of the potential term
    double rhs_log10 = 0.0;  // norm-product bound
    double envelope_sup = 0.0;
    double envelope_exponent = 0.0;  // must be positive for a finite envelope
    bool holder_ok = false;
};

struct AbsorptionMargin {
    HolderSide potential;
    std::vector<HolderSide> drift;
    bool envelope_finite = false;
};

/// Verifies the Hoelder splits that absorb the lower-order terms, term by
/// term, at one tau. Throws when the weight envelope diverges (exponent
/// bookkeeping bug).
AbsorptionMargin absorption_margin(const ModeFunction& u, const ProblemParams& params,
                                   const SampledPotential& V0,
                                   const std::vector<DriftTerm>& drifts, double tau, double R0);

struct IterationPoint {
    double tau = 0.0;
    double direct_log10 = 0.0;    // order-2 right side
    double composed_log10 = 0.0;  // two-step composition of the order-1 left side
    double ratio = 0.0;           // composed / direct
};

/// The two-step route: compose the order-1 estimate with itself and compare
/// with the direct order-2 right side on the same profile.
std::vector<IterationPoint> iterate_compose_check(const ModeFunction& u, int sigma1, int sigma2,
                                                  const std::vector<double>& taus);

}  // namespace carlab

#endif
