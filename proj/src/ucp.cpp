#include "carlab/ucp.hpp"

#include <cmath>
#include <sstream>

#include "carlab/fitting.hpp"

namespace carlab {

namespace {
std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}
}  // namespace

double sup_ball(const ModeFunction& u, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("sup_ball: r must be positive");
    const double tr = std::log(r);
    if (tr < u.grid->t_min() || tr > u.grid->t_max())
        throw std::invalid_argument("sup_ball: radius outside the grid");
    double best = 0.0;
    for (double t : u.grid->samples()) {
        if (t > tr) break;
        best = std::max(best, std::abs(u.value(t)));
    }
    return best;
}

double ray_sup(const ModeFunction& u, double center_dist, double rho) {
    const double r_min = std::exp(u.grid->t_min());
    const double lo = std::max(center_dist - rho, r_min);
    const double hi = center_dist + rho;
    if (hi <= lo) throw std::invalid_argument("ray_sup: empty segment");
    if (std::log(hi) > u.grid->t_max())
        throw std::invalid_argument("ray_sup: segment leaves the grid");
    double best = 0.0;
    for (double t : u.grid->samples()) {
        const double r = std::exp(t);
        if (r < lo || r > hi) continue;
        best = std::max(best, std::abs(u.value(t)));
    }
    return best;
}

double vanishing_order_fit(const ModeFunction& u, const std::vector<double>& radii) {
    if (radii.size() < 6)
        throw std::invalid_argument("vanishing_order_fit: need >= 6 radii");
    double rmin = radii.front(), rmax = radii.front();
    for (double r : radii) {
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
    }
    if (rmax < 100.0 * rmin)
        throw std::invalid_argument("vanishing_order_fit: radii must span >= 2 decades");
    std::vector<double> lx, ly;
    for (double r : radii) {
        const double s = sup_ball(u, r);
        if (s == 0.0)
            throw std::invalid_argument(
                "vanishing_order_fit: sup vanishes at r = " + fmt(r) +
                " — order at or beyond the window resolution");
        lx.push_back(std::log(r));
        ly.push_back(std::log(s));
    }
    return linear_fit(lx, ly).slope;
}

OrderBoundCheck order_bound_check(const ModeFunction& u, const ProblemParams& params,
                                  const PotentialNorms& norms, double C,
                                  const std::vector<double>& radii) {
    OrderBoundCheck out;
    out.measured_order = vanishing_order_fit(u, radii);
    out.bound = order_bound(params, norms, C);
    double c_fit = std::numeric_limits<double>::infinity();
    for (double r : radii) {
        const double s = sup_ball(u, r);
        c_fit = std::min(c_fit, s / std::pow(r, out.bound));
    }
    out.pointwise_c = c_fit;
    out.passed = out.measured_order <= out.bound + 0.05;
    return out;
}

namespace {
/// ||u||_{L^2(annulus, dx)} per mode (plain measure, unit angular factor)
LogVal annulus_l2(const ModeFunction& u, double r_in, double r_out) {
    return weighted_lp_norm_window(u, WeightSpec{0.0, 0, 0, 0}, 2.0, Measure::Plain,
                                   std::log(r_in), std::log(r_out));
}

/// frame surrogate of ||r^A D^A u||_{L^2(annulus, dx)}
LogVal annulus_deriv_l2(const ModeFunction& u, int A, double r_in, double r_out) {
    const double kappa = angular_eigenvalue(u.k, u.n);
    auto surr = [&, kappa](double t, int) {
        double S = 0.0;
        double kp = 1.0;
        for (int ang = 0; ang <= A; ++ang) {
            const double d = u.value(t, A - ang);
            S += kp * d * d;
            kp *= kappa;
        }
        return std::sqrt(S);
    };
    ModeFunction g = u;
    g.profile = std::make_shared<FunctionProfile>(surr, 0, "deriv_surrogate", false);
    return weighted_lp_norm_window(g, WeightSpec{0.0, 0, 0, 0}, 2.0, Measure::Plain,
                                   std::log(r_in), std::log(r_out));
}

double norms_aggregate(const PotentialNorms& norms) {
    double beta = 1.0 + norms.A0;
    for (const auto& [o, v] : norms.A_alpha) beta += v;
    return beta;
}
}  // namespace

CheckReport caccioppoli_check(const ModeFunction& u, const PotentialNorms& norms, int m,
                              double R0, double c1, double c2, double c3, double c4) {
    if (!(0.0 < c4 && c4 < c3 && c3 < c2 && c2 < c1))
        throw std::invalid_argument("caccioppoli_check: need 0 < c4 < c3 < c2 < c1");
    norms.validate();
    CheckReport rep;
    rep.tag = "eq4.1";
    rep.metadata = "m=" + std::to_string(m) + " R0=" + fmt(R0);
    const double beta = norms_aggregate(norms);
    LogSum lhs_acc;
    CheckRow row;
    row.tau = 0.0;
    for (int A = 0; A <= 2 * m - 1; ++A) {
        const LogVal term = annulus_deriv_l2(u, A, c3 * R0, c2 * R0);
        row.lhs_terms_log10["alpha" + std::to_string(A)] = term.log10();
        lhs_acc.add(term);
    }
    const LogVal lhs = lhs_acc.total();
    const LogVal rhs =
        LogVal::from_value(std::pow(beta, 2 * m - 1)) * annulus_l2(u, c4 * R0, c1 * R0);
    row.lhs_total_log10 = lhs.log10();
    row.rhs_log10 = rhs.log10();
    row.ratio = LogVal::ratio(lhs, rhs);
    rep.rows.push_back(row);
    rep.fitted_C = row.ratio;
    rep.stabilized = true;
    rep.passed = std::isfinite(row.ratio);
    return rep;
}

CheckReport linfty_check(const ModeFunction& u, const PotentialNorms& norms, int m, double r,
                         const ProblemParams& params) {
    norms.validate();
    params.validate();
    // admissibility: s/(2ms - n) <= 1 iff s >= n/(2m-1)
    if (!params.s.is_inf()) {
        const Rat s = params.s.finite();
        if (s < Rat(params.n, 2 * m - 1))
            throw std::invalid_argument("linfty_check: inadmissible s < n/(2m-1)");
    }
    CheckReport rep;
    rep.tag = "eq4.14";
    rep.metadata = "m=" + std::to_string(m) + " r=" + fmt(r);
    const double beta = norms_aggregate(norms);
    CheckRow row;
    row.tau = 0.0;
    const double lhs = sup_ball(u, r);
    const LogVal mass = annulus_l2(u, std::exp(u.grid->t_min()), 2.0 * r);
    const LogVal rhs = LogVal::from_value(std::pow(beta, 0.5 * params.n) *
                                          std::pow(r, -0.5 * params.n)) *
                       mass;
    row.lhs_terms_log10["sup"] = std::log10(std::max(lhs, 1e-300));
    row.lhs_total_log10 = row.lhs_terms_log10["sup"];
    row.rhs_log10 = rhs.log10();
    row.ratio = LogVal::ratio(LogVal::from_value(lhs), rhs);
    rep.rows.push_back(row);
    rep.fitted_C = row.ratio;
    rep.stabilized = true;
    rep.passed = std::isfinite(row.ratio);
    return rep;
}

double k0_compute(double r0, double r1, double R1) {
    if (!(0.0 < r0 && r0 < r1 && r1 < R1 && R1 < 1.0))
        throw std::invalid_argument("k0_compute: need 0 < r0 < r1 < R1 < 1");
    if (!(r1 < 0.5 * R1))
        throw std::invalid_argument("k0_compute: need r1 < R1/2 for a positive exponent");
    const double num = phi(0.5 * R1) - phi(r1);
    const double den = phi(0.5 * R1) - phi(r0);
    return num / den;
}

ThreeBallConfig ThreeBallConfig::from_radii(double r0, double r1, double R1, double beta) {
    ThreeBallConfig cfg;
    cfg.r0 = r0;
    cfg.r1 = r1;
    cfg.R1 = R1;
    cfg.beta = beta;
    cfg.k0 = k0_compute(r0, r1, R1);
    return cfg;
}

ThreeBallConfig ThreeBallConfig::from_small_radius(double r, double beta) {
    return from_radii(0.5 * r, 4.0 * r, 10.0 * r, beta);
}

void ThreeBallConfig::validate() const {
    if (!(k0 > 0.0 && k0 < 1.0))
        throw std::invalid_argument("ThreeBallConfig: k0 outside (0,1)");
}

ThreeBallBound three_ball_bound(double U1, double U2, double B1, double B2,
                                const ThreeBallConfig& cfg, double tau_min) {
    if (!(U1 > 0.0 && U2 > 0.0 && B1 > 0.0 && B2 > 0.0))
        throw std::invalid_argument("three_ball_bound: U and B factors must be positive");
    cfg.validate();
    ThreeBallBound out;
    const double dphi1 = phi(0.5 * cfg.R1) - phi(cfg.r1);
    const double dphi0 = phi(0.5 * cfg.R1) - phi(cfg.r0);
    out.tau1 = cfg.k0 / dphi1 * (std::log(B2 * U2) - std::log(B1 * U1));
    if (out.tau1 >= tau_min) {
        out.branch = 1;
        out.bound = LogVal::from_value(2.0) *
                    LogVal::from_value(B1 * U1).pow(cfg.k0) *
                    LogVal::from_value(B2 * U2).pow(1.0 - cfg.k0);
    } else {
        out.branch = 2;
        out.bound = LogVal::from_value(B1 / B2) * LogVal::from_log(tau_min * dphi0) *
                    LogVal::from_value(U1);
    }
    return out;
}

CheckReport three_ball_check(const std::vector<ModeFunction>& family,
                             const PotentialNorms& norms, const ThreeBallConfig& cfg,
                             const ProblemParams& params, double C0) {
    cfg.validate();
    norms.validate();
    CheckReport rep;
    rep.tag = "eq4.25";
    rep.metadata = "r0=" + fmt(cfg.r0) + " r1=" + fmt(cfg.r1) + " R1=" + fmt(cfg.R1) +
                   " k0=" + fmt(cfg.k0);
    const int m = params.m, n = params.n;
    const double beta = cfg.beta;
    const double agg = order_bound(params, norms, C0);
    const double dphi0 = phi(0.5 * cfg.R1) - phi(cfg.r0);
    double worst = 0.0;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const ModeFunction& u = family[i];
        const double lhs = sup_ball(u, 0.75 * cfg.r1);
        const double U1 = sup_ball(u, 2.0 * cfg.r0);
        const double U2 = sup_ball(u, cfg.R1);
        if (U1 == 0.0 || U2 == 0.0)
            throw std::invalid_argument("three_ball_check: vanishing sup on an input ball");
        const LogVal term1 =
            LogVal::from_value(std::pow(beta, 2.0 * m + 0.5 * n) *
                               std::pow(std::abs(std::log(cfg.r1)), m)) *
            LogVal::from_value(U1).pow(cfg.k0) * LogVal::from_value(U2).pow(1.0 - cfg.k0);
        const LogVal term2 = LogVal::from_value(std::pow(beta, 0.5 * n) *
                                                std::pow(cfg.R1 / cfg.r1, 0.5 * n)) *
                             LogVal::from_log(agg * dphi0) * LogVal::from_value(U1);
        const LogVal rhs = term1 + term2;
        CheckRow row;
        row.tau = static_cast<double>(i);
        row.lhs_terms_log10["sup_mid"] = std::log10(lhs);
        row.lhs_terms_log10["interp_term"] = term1.log10();
        row.lhs_terms_log10["threshold_term"] = term2.log10();
        row.lhs_total_log10 = std::log10(lhs);
        row.rhs_log10 = rhs.log10();
        row.ratio = LogVal::ratio(LogVal::from_value(lhs), rhs);
        rep.rows.push_back(row);
        worst = std::max(worst, row.ratio);
    }
    rep.fitted_C = worst;
    rep.stabilized = true;
    rep.passed = std::isfinite(worst);
    return rep;
}

PropagationResult propagate_smallness(const ModeFunction& u, int links, double r,
                                      const ProblemParams& params, const PotentialNorms& norms,
                                      double C0) {
    if (links < 0) throw std::invalid_argument("propagate_smallness: negative link count");
    const double step = 0.95 * r;
    const double outer_reach = (links * step) + 10.0 * r;
    if (std::log(outer_reach) > u.grid->t_max())
        throw std::invalid_argument("propagate_smallness: chain leaves the grid");

    PropagationResult out;
    const ThreeBallConfig cfg = ThreeBallConfig::from_small_radius(r, norms_aggregate(norms));
    out.k0 = cfg.k0;
    const int m = params.m, n = params.n;
    const double agg = order_bound(params, norms, C0);
    const double dphi0 = phi(5.0 * r) - phi(0.5 * r);
    const double logfac = std::pow(std::abs(std::log(r)), m);

    // normalize by the sup on the final ball: delta_end = 1
    const double end_dist = links * step;
    const double unit = ray_sup(u, end_dist, r);
    if (unit == 0.0) throw std::invalid_argument("propagate_smallness: u vanishes on the end ball");

    // global bound playing the role of the a-priori sup
    const double Chat = ray_sup(u, 0.0, end_dist + 10.0 * r) / unit;

    // measured per-step quantities and the single fitted step constant
    std::vector<double> delta(static_cast<std::size_t>(links) + 1);
    std::vector<double> sup3r(static_cast<std::size_t>(links) + 1);
    double C_step = 0.0;
    for (int i = 0; i <= links; ++i) {
        const double d = i * step;
        delta[static_cast<std::size_t>(i)] = ray_sup(u, d, r) / unit;
        sup3r[static_cast<std::size_t>(i)] = ray_sup(u, d, 3.0 * r) / unit;
        const double Ui = ray_sup(u, d, 10.0 * r) / unit;
        const double t1 = std::pow(cfg.beta, 2.0 * m + 0.5 * n) * logfac *
                          std::pow(delta[static_cast<std::size_t>(i)], cfg.k0) *
                          std::pow(Ui, 1.0 - cfg.k0);
        const double t2 = std::pow(cfg.beta, 0.5 * n) * std::exp(std::min(600.0, agg * dphi0)) *
                          delta[static_cast<std::size_t>(i)];
        C_step = std::max(C_step, sup3r[static_cast<std::size_t>(i)] / (t1 + t2));
    }
    out.C_step = C_step;

    // G bounds one link: delta_{i+1} <= G delta_i^{k0} for delta_i <= 1
    const double logG =
        std::log(C_step) +
        std::log(std::pow(cfg.beta, 2.0 * m + 0.5 * n) * logfac * std::pow(Chat, 1.0 - cfg.k0) +
                 std::pow(cfg.beta, 0.5 * n) * std::exp(std::min(600.0, agg * dphi0)));

    // unroll: delta_end <= G^{S} delta_0^{k0^d}, S = 1 + k0 + ... + k0^{d-1}
    double expnt = 1.0;
    double S = 0.0;
    out.steps.resize(static_cast<std::size_t>(links) + 1);
    for (int i = 0; i <= links; ++i) {
        auto& st = out.steps[static_cast<std::size_t>(i)];
        st.delta = delta[static_cast<std::size_t>(i)];
        st.chain_sup = sup3r[static_cast<std::size_t>(i)];
        st.exponent = expnt;
        st.log_power_sum = S;
        st.aggregate_sum = S;
        if (i < links) {
            S = S * cfg.k0 + 1.0;  // equivalently sum_{j<i+1} k0^j after rescaling
            expnt *= cfg.k0;
        }
    }
    // after d links: delta_end <= G^{(1-k0^d)/(1-k0)} delta_0^{k0^d}
    const double Ssum = (links == 0) ? 0.0
                                     : (1.0 - std::pow(cfg.k0, links)) / (1.0 - cfg.k0);
    const double k0d = out.steps.back().exponent;
    out.derived_log_lower = (std::log(delta[static_cast<std::size_t>(links)]) - Ssum * logG) / k0d;
    out.measured_delta0 = delta[0];
    out.passed = out.derived_log_lower <= std::log(out.measured_delta0) + 1e-9;
    return out;
}

PotentialNorms scaled_norms(double R, const ProblemParams& params, const PotentialNorms& norms) {
    if (!(R >= 1.0)) throw std::invalid_argument("scaled_norms: R must be >= 1");
    params.validate();
    norms.validate();
    PotentialNorms out = norms;
    const int m = params.m;
    for (auto& [order, v] : out.A_alpha) v *= std::pow(R, 2.0 * m - order);
    const double ns = params.s.is_inf() ? 0.0
                                        : static_cast<double>(params.n) / params.s.to_double();
    out.A0 *= std::pow(R, 2.0 * m - ns);
    return out;
}

LogVal infinity_bound(double R, const ProblemParams& params, const PotentialNorms& norms,
                      double C, double c) {
    if (!(R >= 1.0)) throw std::invalid_argument("infinity_bound: R must be >= 1");
    const ThetaInfinity th = theta_infinity(params);
    (void)norms;
    const double theta = th.theta.to_double();
    return LogVal::from_value(c) *
           LogVal::from_log(-C * std::pow(R, theta) * std::log(R));
}

InfinityConsistency infinity_consistency(const ProblemParams& params) {
    params.validate();
    InfinityConsistency out;
    const int m = params.m, n = params.n;
    // R-exponent of each order_bound term under the scaled norms:
    // (2m - |a|) mu(|a|) for the drifts, (2m - n/s) nu for the potential
    Rat best(0);
    bool any = false;
    for (int a = 1; a <= params.alpha0; ++a) {
        const Rat e = Rat(2 * m - a) * mu_exponent(m, a);
        if (!any || best < e) best = e;
        any = true;
    }
    const Rat n_over_s = mobius(Rat(0), Rat(n), Rat(1), Rat(0), params.s);
    const Rat epot = (Rat(2 * m) - n_over_s) * nu_variant(params);
    if (!any || best < epot) best = epot;
    out.order_bound_exponent = best;
    out.theta = theta_infinity(params).theta;
    out.equal = (out.order_bound_exponent == out.theta);
    return out;
}

}  // namespace carlab
