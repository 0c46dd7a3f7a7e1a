#include "carlab/exponents.hpp"

#include <cmath>
#include <stdexcept>

namespace carlab {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw std::invalid_argument("params." + field + ": " + why);
}

/// smallest admissible s for the case (open lower bound)
Rat s_lower_bound(Case c, int n, int m) {
    if (c == Case::I) return Rat(2 * n, 3 * m);
    return Rat(4 * (2 * m - 1), 3 * m);
}

}  // namespace

std::string case_name(Case c) {
    switch (c) {
        case Case::I: return "I";
        case Case::II: return "II";
        default: return "III";
    }
}

int max_alpha0(int m) {
    // floor(3m/2) - 1 for even m, floor(3m/2) for odd m
    return (m % 2 == 0) ? (3 * m / 2 - 1) : ((3 * m - 1) / 2);
}

Case classify(int n, int m) {
    if (n < 2) throw std::invalid_argument("classify: n < 2");
    if (m < 1) throw std::invalid_argument("classify: m < 1");
    if (n > 4 * m - 2) return Case::I;
    if (n == 4 * m - 2) return Case::II;
    return Case::III;
}

Case ProblemParams::case_tag() const { return classify(n, m); }

void ProblemParams::validate() const {
    Case c = classify(n, m);  // throws on bad n, m
    if (alpha0 < 0) fail("alpha0", "must be >= 0");
    if (alpha0 > max_alpha0(m))
        fail("alpha0", "exceeds the admissible maximum " + std::to_string(max_alpha0(m)) +
                           " for m = " + std::to_string(m));
    Rat lb = s_lower_bound(c, n, m);
    if (!(s > ExtRat(lb)))
        fail("s", "must exceed " + lb.str() + " in case " + case_name(c));
    if (!s.is_inf() && s.finite() <= Rat(2)) fail("s", "must exceed 2");
    if (c == Case::II) {
        if (!eps) fail("eps", "required in case II");
        if (!(eps->positive() && *eps < Rat(1))) fail("eps", "must lie in (0,1)");
        // nu~ must stay positive: eps < (3ms - 4(2m-1)) / (2(2m-1)(s-2))
        Rat cap = mobius(Rat(3 * m), Rat(-4 * (2 * m - 1)), Rat(2 * (2 * m - 1)),
                         Rat(-4 * (2 * m - 1)), s);
        if (!(*eps < cap))
            fail("eps", "too large: the case-II exponent degenerates at eps >= " + cap.str());
    } else if (eps) {
        fail("eps", "only meaningful in case II (n = 4m-2)");
    }
}

ExtRat p_star(const ExtRat& s) {
    if (!s.is_inf() && s.finite() <= Rat(2))
        throw std::invalid_argument("p_star: requires s > 2");
    // 2s/(s-2); limit 2 at s = inf
    return ExtRat(mobius(Rat(2), Rat(0), Rat(1), Rat(-2), s));
}

Rat mu_exponent(int m, int abs_alpha) {
    if (3 * m - 2 * abs_alpha <= 0)
        throw std::invalid_argument("mu_exponent: 3m - 2|alpha| must be positive");
    return Rat(2, 3 * m - 2 * abs_alpha);
}

Rat beta_alpha_exponent(int m, int abs_alpha) { return Rat(3 * m - 2 * abs_alpha, 2); }

Rat nu_variant(const ProblemParams& params) {
    const int n = params.n, m = params.m;
    switch (params.case_tag()) {
        case Case::I:
            // 2s/(3ms - 2n)
            return mobius(Rat(2), Rat(0), Rat(3 * m), Rat(-2 * n), params.s);
        case Case::II: {
            // 2s/(3ms - 4(2m-1) - 2(2m-1)(s-2) eps)
            const Rat e = *params.eps;
            Rat c = Rat(3 * m) - Rat(2 * (2 * m - 1)) * e;
            Rat d = Rat(-4 * (2 * m - 1)) + Rat(4 * (2 * m - 1)) * e;
            return mobius(Rat(2), Rat(0), c, d, params.s);
        }
        default:
            // 2s/(3ms - 4(2m-1))
            return mobius(Rat(2), Rat(0), Rat(3 * m), Rat(-4 * (2 * m - 1)), params.s);
    }
}

Rat beta0_variant(const ProblemParams& params, const ExtRat& p) {
    const int n = params.n, m = params.m;
    switch (params.case_tag()) {
        case Case::I:
            // (3mp - n(p-2)) / (2p)
            return mobius(Rat(3 * m - n), Rat(2 * n), Rat(2), Rat(0), p);
        case Case::II: {
            // (4m-2)(1-eps)/p - (m-2)/2
            const Rat e = *params.eps;
            Rat a = -Rat(m - 2, 2);
            Rat b = Rat(4 * m - 2) * (Rat(1) - e);
            return mobius(a, b, Rat(1), Rat(0), p);
        }
        default:
            // (4m-2)/p - (m-2)/2
            return mobius(-Rat(m - 2, 2), Rat(4 * m - 2), Rat(1), Rat(0), p);
    }
}

PRange admissible_p_range(Case c, int n, int m) {
    PRange r;
    r.lo = ExtRat(Rat(2));
    switch (c) {
        case Case::I:
            r.hi = ExtRat(Rat(2 * n, n - 4 * m + 2));
            break;
        case Case::II:
            r.hi = ExtRat::infinity();
            r.hi_open = true;
            break;
        default:
            r.hi = ExtRat::infinity();
            break;
    }
    return r;
}

ExponentTable exponent_table(const ProblemParams& params, std::optional<ExtRat> p_opt) {
    params.validate();
    const int n = params.n, m = params.m;
    ExponentTable t;
    t.case_tag = params.case_tag();
    t.p = p_opt ? *p_opt : p_star(params.s);

    PRange pr = admissible_p_range(t.case_tag, n, m);
    if (t.p < pr.lo || t.p > pr.hi || (pr.hi_open && t.p == pr.hi))
        throw std::invalid_argument("exponent_table: p = " + t.p.str() +
                                    " outside the admissible range for case " +
                                    case_name(t.case_tag));

    for (int a = 1; a <= params.alpha0; ++a) t.mu[a] = mu_exponent(m, a);
    for (int a = 0; a <= 2 * m - 1; ++a) t.beta_alpha[a] = beta_alpha_exponent(m, a);
    t.nu = nu_variant(params);
    t.beta0 = beta0_variant(params, t.p);
    if (!t.nu.positive())
        throw std::invalid_argument("exponent_table: nu-variant not positive (inadmissible s)");
    // positivity of beta0 is guaranteed at the default p = p*(s); explicit
    // endpoint choices (p at the case-I upper end, p = inf in case III) may
    // drive it to zero and are allowed
    if (!p_opt && !t.beta0.positive())
        throw std::invalid_argument("exponent_table: beta0-variant not positive");

    ThetaInfinity th = theta_infinity(params);
    t.theta = th.theta;
    t.theta_threshold = th.threshold;
    t.theta_nu_branch = th.nu_branch;
    return t;
}

InterpolationTheta interpolation_theta(Case c, const ExtRat& p, int n, int m,
                                       std::optional<ExtRat> p_prime) {
    InterpolationTheta out;
    switch (c) {
        case Case::I: {
            PRange pr = admissible_p_range(c, n, m);
            if (p < pr.lo || p > pr.hi)
                throw std::invalid_argument("interpolation_theta: p outside [2, 2n/(n-4m+2)]");
            // theta = (2n - p(n-4m+2)) / ((4m-2)p), 1-theta = (p-2)n / ((4m-2)p)
            out.theta = mobius(Rat(-(n - 4 * m + 2)), Rat(2 * n), Rat(4 * m - 2), Rat(0), p);
            out.one_minus_theta = mobius(Rat(n), Rat(-2 * n), Rat(4 * m - 2), Rat(0), p);
            break;
        }
        case Case::II: {
            if (!p_prime) throw std::invalid_argument("interpolation_theta: case II needs p'");
            if (p.is_inf() || p_prime->is_inf())
                throw std::invalid_argument("interpolation_theta: case II needs finite p < p'");
            const Rat pv = p.finite(), pp = p_prime->finite();
            if (!(Rat(2) < pv && pv < pp))
                throw std::invalid_argument("interpolation_theta: need 2 < p < p' in case II");
            out.theta = Rat(2) * (pp - pv) / (pv * (pp - Rat(2)));
            out.one_minus_theta = Rat(1) - out.theta;
            out.eps = (pv - Rat(2)) / (pp - Rat(2));
            break;
        }
        default: {
            if (p < ExtRat(Rat(2)))
                throw std::invalid_argument("interpolation_theta: p < 2");
            out.theta = mobius(Rat(0), Rat(2), Rat(1), Rat(0), p);  // 2/p, 0 at p = inf
            out.one_minus_theta = Rat(1) - out.theta;
            break;
        }
    }
    return out;
}

ThetaInfinity theta_infinity(const ProblemParams& params) {
    params.validate();
    const int n = params.n, m = params.m;
    ThetaInfinity out;

    // potential branch value: (2m - n/s) * nu-variant == 2(2ms-n)/denominator(s)
    Rat n_over_s = mobius(Rat(0), Rat(n), Rat(1), Rat(0), params.s);
    Rat nu = nu_variant(params);
    Rat nu_branch_value = (Rat(2 * m) - n_over_s) * nu;

    switch (params.case_tag()) {
        case Case::I:
            out.threshold = n_over_s;
            break;
        case Case::II: {
            // (8m(2m-1) - 3mn + 4m(2m-1)(s-2) eps) / (ms + 4(2m-1) - 2n + 2(2m-1)(s-2) eps)
            const Rat e = *params.eps;
            Rat na = Rat(4 * m * (2 * m - 1)) * e;
            Rat nb = Rat(8 * m * (2 * m - 1) - 3 * m * n) - Rat(8 * m * (2 * m - 1)) * e;
            Rat da = Rat(m) + Rat(2 * (2 * m - 1)) * e;
            Rat db = Rat(4 * (2 * m - 1) - 2 * n) - Rat(4 * (2 * m - 1)) * e;
            out.threshold = mobius(na, nb, da, db, params.s);
            break;
        }
        default:
            out.threshold = mobius(Rat(0), Rat(8 * m * (2 * m - 1) - 3 * m * n), Rat(m),
                                   Rat(4 * (2 * m - 1) - 2 * n), params.s);
            break;
    }

    if (params.alpha0 == 0 || Rat(params.alpha0) < out.threshold) {
        out.theta = nu_branch_value;
        out.nu_branch = true;
    } else {
        // (2m - |a|) mu(|a|) is strictly increasing in |a|, so the drift
        // branch maximum sits at |a| = alpha0
        out.theta = Rat(2 * (2 * m - params.alpha0), 3 * m - 2 * params.alpha0);
        out.nu_branch = false;
    }
    return out;
}

double order_bound(const ProblemParams& params, const PotentialNorms& norms, double C) {
    params.validate();
    norms.validate();
    if (C <= 0.0) throw std::invalid_argument("order_bound: C must be positive");
    double total = 1.0;
    for (int a = 1; a <= params.alpha0; ++a) {
        auto it = norms.A_alpha.find(a);
        double A = (it == norms.A_alpha.end()) ? 0.0 : it->second;
        if (A > 0.0) total += std::pow(A, mu_exponent(params.m, a).to_double());
    }
    if (norms.A0 > 0.0) total += std::pow(norms.A0, nu_variant(params).to_double());
    return C * total;
}

}  // namespace carlab
