#ifndef CARLAB_EXPONENTS_HPP
#define CARLAB_EXPONENTS_HPP

#include <map>
#include <optional>
#include <string>

#include "carlab/potential_norms.hpp"
#include "carlab/rational.hpp"

namespace carlab {

/// Dimension regime of the operator Delta^m in R^n. The three regimes
/// correspond to which Sobolev embedding closes the L^p estimate.
enum class Case { I, II, III };

std::string case_name(Case c);

/// Parameters of the operator Delta^m + sum_{|a|<=alpha0} V_a D^a + V_0
/// with V_a in L^inf and V_0 in L^s.
struct ProblemParams {
    int n = 3;           // spatial dimension, >= 2
    int m = 1;           // half-order of the principal part, >= 1
    int alpha0 = 0;      // maximal drift order, >= 0
    ExtRat s;            // Lebesgue exponent of V_0, in (admissible bound, inf]
    std::optional<Rat> eps;  // interpolation slack, present exactly in case II

    Case case_tag() const;
    /// throws std::invalid_argument naming the offending field
    void validate() const;
};

/// Largest admissible drift order for a given m.
int max_alpha0(int m);

/// Case classification: I iff n > 4m-2, II iff n = 4m-2, III iff 2 <= n < 4m-2.
Case classify(int n, int m);

/// Dual-type exponent p* = 2s/(s-2); p* = 2 at s = inf. Requires s > 2.
ExtRat p_star(const ExtRat& s);

/// All exponents attached to one parameter set, exact.
struct ExponentTable {
    Case case_tag = Case::I;
    std::map<int, Rat> mu;          // |a| -> 2/(3m-2|a|), |a| = 1..alpha0
    Rat nu;                         // case variant: nu, nu~, nu-
    std::map<int, Rat> beta_alpha;  // |a| -> (3m-2|a|)/2, |a| = 0..2m-1
    Rat beta0;                      // case variant: beta0, beta0~, beta0-
    ExtRat p;                       // Lebesgue exponent the L^p term uses
    Rat theta;                      // case variant: Theta, Theta~, Theta-
    Rat theta_threshold;            // alpha0 threshold of the branch rule
    bool theta_nu_branch = false;   // true when the potential branch won
};

/// mu(|a|) = 2/(3m - 2|a|).
Rat mu_exponent(int m, int abs_alpha);

/// beta_a = (3m - 2|a|)/2.
Rat beta_alpha_exponent(int m, int abs_alpha);

/// Case variant of nu at the table's defaults (s and, in case II, eps).
Rat nu_variant(const ProblemParams& params);

/// Case variant of beta0 at a given p (defaults to p_star(s)).
Rat beta0_variant(const ProblemParams& params, const ExtRat& p);

/// Admissible p interval for the case; upper end inf in cases II/III.
struct PRange {
    ExtRat lo, hi;
    bool hi_open = false;  // case II: p < inf strictly
};
PRange admissible_p_range(Case c, int n, int m);

/// Builds the full table. p defaults to p_star(s). Throws on inadmissible
/// s, eps or p.
ExponentTable exponent_table(const ProblemParams& params, std::optional<ExtRat> p = std::nullopt);

/// Interpolation split between the L^2 estimate and the embedding endpoint.
struct InterpolationTheta {
    Rat theta;
    Rat one_minus_theta;
    std::optional<Rat> eps;  // case II only: (p-2)/(p'-2)
};
InterpolationTheta interpolation_theta(Case c, const ExtRat& p, int n, int m,
                                       std::optional<ExtRat> p_prime = std::nullopt);

/// Growth exponent Theta of the vanishing rate at infinity, with the
/// alpha0 threshold that decides between the drift and potential branches.
struct ThetaInfinity {
    Rat theta;
    Rat threshold;
    bool nu_branch;  // true when the potential term supplied the max
};
ThetaInfinity theta_infinity(const ProblemParams& params);

/// C * (1 + sum_{|a|=1..alpha0} A_a^{mu(|a|)} + A_0^{nu}). Doubles as the
/// tau threshold below which potential absorption is not guaranteed.
double order_bound(const ProblemParams& params, const PotentialNorms& norms, double C);

}  // namespace carlab

#endif
