// Acceptance suite: runs every top-level criterion at its stated tolerance
// and prints one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "carlab/carleman_checks.hpp"
#include "carlab/conjugation.hpp"
#include "carlab/solutions.hpp"
#include "carlab/ucp.hpp"
#include "carlab/util.hpp"
#include "test_support.hpp"

using namespace carlab;
using carlab::testing::random_params;
using carlab::testing::shared_default_grid;

namespace {

struct Harness {
    int failures = 0;
    int index = 0;

    void run(const std::string& name, const std::function<bool(std::string&)>& fn) {
        ++index;
        std::string detail;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %2d (%6.2fs): %s%s%s\n", ok ? "PASS" : "FAIL", index, secs,
                    name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

ProblemParams bk_params() {  // m = 1, s = inf, alpha0 = 0, n = 3
    ProblemParams p;
    p.n = 3;
    p.m = 1;
    p.alpha0 = 0;
    p.s = ExtRat::infinity();
    return p;
}

std::vector<double> half_octave_taus(double lo, double hi) {
    std::vector<double> out;
    for (double t = lo; t <= hi * 1.0000001; t *= std::sqrt(2.0)) out.push_back(t);
    return out;
}

std::vector<double> geometric_radii(double lo, double hi, int count) {
    std::vector<double> out;
    for (int i = 0; i < count; ++i)
        out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
    return out;
}

std::vector<ModeFunction> default_bump_family(int n) {
    const auto grid = shared_default_grid();
    std::vector<ModeFunction> out;
    const double centers[3] = {-25.0, -20.0, -30.0};
    const double widths[3] = {5.0, 8.0, 6.0};
    const double etas[3] = {0.0, 0.7, 1.5};
    for (int k = 0; k <= 3; ++k)
        for (int i = 0; i < 3; ++i) out.push_back(bump_mode(grid, k, n, centers[i], widths[i], etas[i]));
    return out;
}

// 1. exponent reductions nu = 2/3, Theta = 4/3, exact
bool criterion_1(std::string& detail) {
    const ExponentTable t = exponent_table(bk_params());
    const ThetaInfinity th = theta_infinity(bk_params());
    detail = "nu=" + t.nu.str() + " theta=" + th.theta.str();
    return t.nu == Rat(2, 3) && th.theta == Rat(4, 3) && t.case_tag == Case::I;
}

// 2. exponent self-consistency on randomized admissible parameters
bool criterion_2(std::string& detail) {
    Rng rng(424242);
    for (int i = 0; i < 100; ++i) {
        const ProblemParams p = random_params(rng, Case::I);
        const ExponentTable t = exponent_table(p);
        const Rat alt = mobius(Rat(3 * p.m), Rat(-2 * p.n), Rat(2), Rat(0), p.s);
        if (t.beta0 != alt) {
            detail = "beta0 mismatch at n=" + std::to_string(p.n) + " m=" + std::to_string(p.m) +
                     " s=" + p.s.str();
            return false;
        }
    }
    for (int i = 0; i < 30; ++i) {
        const ProblemParams p = random_params(rng, Case::I);
        const auto lo = interpolation_theta(Case::I, ExtRat(Rat(2)), p.n, p.m);
        const auto hi = interpolation_theta(
            Case::I, ExtRat(Rat(2 * p.n, p.n - 4 * p.m + 2)), p.n, p.m);
        if (lo.theta != Rat(1) || hi.theta != Rat(0)) {
            detail = "interpolation endpoints off";
            return false;
        }
    }
    // case II limit: nu~ -> nu- as eps -> 0+, from above
    ProblemParams q;
    q.n = 6;
    q.m = 2;
    q.alpha0 = 0;
    q.s = ExtRat(Rat(5));
    const Rat nu_bar = mobius(Rat(2), Rat(0), Rat(3 * q.m), Rat(-4 * (2 * q.m - 1)), q.s);
    Rat gap_prev;
    bool first = true;
    for (int k = 2; k <= 12; k += 2) {
        q.eps = Rat(1, 1 << k);
        const Rat gap = nu_variant(q) - nu_bar;
        if (!gap.positive()) {
            detail = "nu~ did not stay above nu-";
            return false;
        }
        if (!first && !(gap < gap_prev)) {
            detail = "nu~ -> nu- not monotone";
            return false;
        }
        gap_prev = gap;
        first = false;
    }
    detail = "100 beta0 identities, endpoints, eps-limit";
    return true;
}

// 3. conjugation identity on ten bumps with grid-doubling improvement
bool criterion_3(std::string& detail) {
    const auto grid = shared_default_grid();
    const auto fine = grid->refined(2);
    Rng rng(99);
    double worst = 0.0, worst_fine = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const int k = static_cast<int>(rng.integer(0, 3));
        const double tau = rng.uniform(3.0, 10.0);
        const WeightSpec w{tau, 1, 2, 0};
        auto run = [&](std::shared_ptr<const RadialGrid> g) {
            ModeFunction u = bump_mode(g, k, 3, rng.uniform(-24.0, -14.0), 3.0, 0.0);
            // reuse the same shape on both grids by regenerating with the
            // stored center; the rng must not advance inside
            return u;
        };
        const double center = rng.uniform(-24.0, -14.0);
        const double width = rng.uniform(2.0, 4.5);
        const double eta = rng.uniform() < 0.5 ? 0.0 : 0.9;
        double errs[2];
        int gi = 0;
        for (const auto& g : {grid, fine}) {
            const ModeFunction u = bump_mode(g, k, 3, center, width, eta);
            const double ref = phi_from_t(center);
            const ModeFunction v = conjugate(u, w, ref);
            ConjugatedOperator op;
            op.tau = tau;
            op.sigma1 = 1;
            op.sigma2 = 2;
            op.n = 3;
            op.k = k;
            const ModeFunction rhs = apply_delta_tau(v, op, /*stencil=*/true);
            const ModeFunction lap = apply_laplacian_mode(u);
            double err2 = 0.0, scale2 = 0.0;
            for (std::size_t i = 0; i < g->size(); ++i) {
                const double t = g->samples()[i];
                if (t < u.support_lo || t > u.support_hi) continue;
                // weight on Delta u is e^{s1 t + 2t} t^{s2}; the r^2-laplacian
                // profile already carries the e^{2t}
                const double wgt =
                    std::exp(-tau * (phi_from_t(t) - ref) + 1.0 * t) * t * t;
                const double lhs = wgt * lap.value(t);
                const double diff = lhs - rhs.value(t);
                err2 += g->quad_weights()[i] * diff * diff;
                scale2 += g->quad_weights()[i] * lhs * lhs;
            }
            errs[gi++] = std::sqrt(err2 / scale2);
        }
        worst = std::max(worst, errs[0]);
        worst_fine = std::max(worst_fine, errs[1]);
        (void)run;
    }
    detail = "worst rel L2 err " + num_str(worst) + ", refined " + num_str(worst_fine);
    return worst <= 1e-6 && worst_fine <= worst * 1.05;
}

// 4. the 18-identity catalog at gap <= 1e-6
bool criterion_4(std::string& detail) {
    const auto grid = shared_default_grid();
    Rng rng(512);
    std::vector<std::array<double, 3>> shapes;
    for (int i = 0; i < 5; ++i)
        shapes.push_back({rng.uniform(-30.0, -14.0), rng.uniform(2.0, 5.0),
                          rng.uniform() < 0.5 ? 0.0 : rng.uniform(0.5, 1.5)});
    double worst = 0.0;
    int count = 0;
    for (const std::string& id : ibp_catalog())
        for (double tau : {5.0, 20.0, 80.0})
            for (int k : {0, 1, 3})
                for (const auto& sh : shapes) {
                    ConjugatedOperator op;
                    op.tau = tau;
                    op.sigma1 = 1;
                    op.sigma2 = 2;
                    op.n = 3;
                    op.k = k;
                    const ModeFunction v = bump_mode(grid, k, 3, sh[0], sh[1], sh[2]);
                    const IbpResult r = ibp_identity(id, v, op);
                    ++count;
                    worst = std::max(worst, r.gap);
                    if (r.gap > 1e-6 || !r.envelope_ok) {
                        detail = "identity " + id + " gap " + num_str(r.gap);
                        return false;
                    }
                }
    detail = std::to_string(count) + " checks, worst gap " + num_str(worst);
    return true;
}

// 5. second-order estimate: bounded ratio, stable constant, energy bound
bool criterion_5(std::string& detail) {
    const std::vector<ModeFunction> family = default_bump_family(3);
    const std::vector<double> taus = half_octave_taus(20.0, 320.0);
    const CheckReport rep = step_carleman_check(family, 0, 0, taus);
    std::vector<SweepPoint> sweep;
    for (const CheckRow& r : rep.rows) sweep.push_back({r.tau, r.ratio});
    const double drift = max_doubling_drift(sweep);
    if (!(drift < 2.0)) {
        detail = "octave drift " + num_str(drift);
        return false;
    }
    // energy inequality on every profile at the sweep ends
    for (const ModeFunction& u : family)
        for (double tau : {20.0, 320.0}) {
            ConjugatedOperator op;
            op.tau = tau;
            op.sigma1 = 0;
            op.sigma2 = 0;
            op.n = 3;
            op.k = u.k;
            const CombinedBound cb = combined_lower_bound(u, op);
            if (!cb.energy_inequality_ok) {
                detail = "energy inequality failed on " + u.descriptor();
                return false;
            }
        }
    detail = "C=" + num_str(rep.fitted_C) + " octave drift " + num_str(drift);
    return rep.stabilized;
}

// 6. order-2 estimate bounded; composition route dominated by one constant
bool criterion_6(std::string& detail) {
    ProblemParams p;
    p.n = 3;
    p.m = 2;
    p.alpha0 = 0;
    p.s = ExtRat(Rat(4));
    const std::vector<ModeFunction> family = default_bump_family(3);
    const std::vector<double> taus = half_octave_taus(20.0, 320.0);
    const CheckReport rep = l2_carleman_check(family, p, 0, 0, taus);
    std::vector<SweepPoint> sweep;
    for (const CheckRow& r : rep.rows) sweep.push_back({r.tau, r.ratio});
    const double drift = max_doubling_drift(sweep);
    if (!rep.stabilized || !(drift < 2.0)) {
        detail = "m=2 ratio unstable, drift " + num_str(drift);
        return false;
    }
    double cmax = 0.0;
    for (const ModeFunction& u : family)
        for (const IterationPoint& pt : iterate_compose_check(u, 0, 0, taus)) {
            if (!std::isfinite(pt.ratio)) {
                detail = "composition ratio not finite";
                return false;
            }
            cmax = std::max(cmax, pt.ratio);
        }
    detail = "direct C=" + num_str(rep.fitted_C) + ", composition constant " + num_str(cmax);
    return true;
}

// 7. absorption threshold behaviour and the envelope exponent
bool criterion_7(std::string& detail) {
    const auto grid = shared_default_grid();
    const ProblemParams p = bk_params();
    const Rat nu(2, 3);
    double C0_fit = 0.0;
    struct Member {
        ModeFunction u;
        SampledPotential V0;
        PotentialNorms norms;
    };
    std::vector<Member> members;
    for (double w : {2.0, 1.2, 0.8}) {
        Member m{bump_mode(grid, 0, 3, -16.0, w, 0.0), {}, {}};
        m.V0 = manufactured(m.u, p.m, {}, 1e-4, p.s);
        m.norms.s = p.s;
        m.norms.A0 = m.V0.Ls_norm;
        members.push_back(std::move(m));
    }
    // fit C0 from the empirical stabilization point of each member
    for (Member& m : members) {
        const double agg = 1.0 + std::pow(m.norms.A0, nu.to_double());
        std::vector<double> taus;
        for (double f = 0.4; f <= 52.0; f *= std::sqrt(2.0)) taus.push_back(agg * f);
        const CheckReport rep =
            potential_carleman_check({m.u}, p, m.norms, &m.V0, {}, taus, 1e-6, false);
        std::vector<SweepPoint> sweep;
        for (const CheckRow& r : rep.rows) sweep.push_back({r.tau, r.ratio});
        const FitResult fr = fit_constant_and_tau0(sweep);
        C0_fit = std::max(C0_fit, fr.tau0_hat / agg);
    }
    // with the fitted threshold: bounded above it, growth a factor 4 below
    for (Member& m : members) {
        const double thr = C0_fit * (1.0 + std::pow(m.norms.A0, nu.to_double()));
        std::vector<double> above = half_octave_taus(thr, 16.0 * thr);
        const CheckReport rep_above =
            potential_carleman_check({m.u}, p, m.norms, &m.V0, {}, above, 1e-6, false);
        const CheckReport rep_below = potential_carleman_check(
            {m.u}, p, m.norms, &m.V0, {}, {thr / 4.0}, 1e-6, false);
        if (!rep_above.stabilized) {
            detail = "ratio above the fitted threshold not stabilized (A0=" +
                     num_str(m.norms.A0) + ")";
            return false;
        }
        if (!(rep_below.rows[0].ratio > 1.2 * rep_above.fitted_C)) {
            detail = "no growth below threshold: below " + num_str(rep_below.rows[0].ratio) +
                     " vs C " + num_str(rep_above.fitted_C);
            return false;
        }
    }
    // envelope exponent 2m + n/p - n/2 = 2m - n/s > 0 on random case-I sets
    Rng rng(777);
    for (int i = 0; i < 100; ++i) {
        const ProblemParams q = random_params(rng, Case::I);
        const Rat n_over_s = mobius(Rat(0), Rat(q.n), Rat(1), Rat(0), q.s);
        const Rat expo = Rat(2 * q.m) - n_over_s;
        if (!expo.positive()) {
            detail = "envelope exponent not positive at n=" + std::to_string(q.n);
            return false;
        }
    }
    detail = "C0_fit=" + num_str(C0_fit) + ", 100 envelope exponents positive";
    return true;
}

// 8. vanishing-order estimator on homogeneous and eigen profiles
bool criterion_8(std::string& detail) {
    const auto grid = shared_default_grid();
    const std::vector<double> radii = geometric_radii(std::exp(-9.0), std::exp(-4.0), 12);
    double worst = 0.0;
    for (int k = 0; k <= 6; ++k) {
        const ModeFunction u = polyharmonic_power(k, k, 3, 1, grid).u;
        worst = std::max(worst, std::abs(vanishing_order_fit(u, radii) - k));
    }
    for (double lam : {16.0, 64.0, 256.0, 1024.0}) {
        const int k = static_cast<int>(std::floor(std::sqrt(lam)));
        const EigenSolution es = eigen_solution(lam, k, 3, 1, grid);
        worst = std::max(worst, std::abs(vanishing_order_fit(es.u, radii) - k));
    }
    detail = "worst order error " + num_str(worst);
    return worst <= 0.05;
}

// 9. order bound on the eigen family with one constant fitted at lambda=16
bool criterion_9(std::string& detail) {
    const auto grid = shared_default_grid();
    const std::vector<double> radii = geometric_radii(std::exp(-9.0), std::exp(-4.0), 12);
    for (int m : {1, 2}) {
        ProblemParams p = bk_params();
        p.m = m;
        double C_shared = 0.0;
        for (double lam : {16.0, 64.0, 256.0, 1024.0}) {
            const int k = static_cast<int>(std::floor(std::sqrt(lam)));
            const EigenSolution es = eigen_solution(lam, k, 3, m, grid);
            PotentialNorms norms;
            norms.s = p.s;
            norms.A0 = es.V0_Linf;  // lambda^m, so A0^{2/(3m)} = lambda^{2/3}
            if (lam == 16.0) {
                const double measured = vanishing_order_fit(es.u, radii);
                C_shared = measured / order_bound(p, norms, 1.0);
            }
            const OrderBoundCheck ob = order_bound_check(es.u, p, norms, C_shared, radii);
            if (!ob.passed) {
                detail = "bound failed at m=" + std::to_string(m) + " lambda=" + num_str(lam) +
                         ": order " + num_str(ob.measured_order) + " > " + num_str(ob.bound);
                return false;
            }
        }
    }
    detail = "m in {1,2}, lambda up to 1024, single constant per m";
    return true;
}

// 10. three-ball machinery: k0 range, 1/k0 growth, inequality, branches
bool criterion_10(std::string& detail) {
    Rng rng(31415);
    for (int i = 0; i < 1000; ++i) {
        const double R1 = std::exp(rng.uniform(-9.0, -3.5));
        const double r1 = 0.5 * R1 * rng.uniform(0.05, 0.95);
        const double r0 = r1 * rng.uniform(0.01, 0.9);
        const double k0 = k0_compute(r0, r1, R1);
        if (!(k0 > 0.0 && k0 < 1.0)) {
            detail = "k0 outside (0,1)";
            return false;
        }
    }
    // 1/k0 ~ log(1/r0) within 10% across three decades
    const double anchor = 1.0 / k0_compute(1e-13, 0.02, 0.08) / std::log(1e13);
    for (double r0 : {1e-9, 1e-10, 1e-11, 1e-12}) {
        const double v = 1.0 / k0_compute(r0, 0.02, 0.08) / std::log(1.0 / r0);
        if (std::abs(v - anchor) / anchor > 0.10) {
            detail = "1/k0 growth off at r0=" + num_str(r0);
            return false;
        }
    }
    // inequality with one fitted constant across harmonic and eigen members
    const auto grid = shared_default_grid();
    const ProblemParams p = bk_params();
    PotentialNorms norms;
    norms.s = p.s;
    std::vector<ModeFunction> family;
    for (int k = 0; k <= 5; ++k) family.push_back(polyharmonic_power(k, k, 3, 1, grid).u);
    double beta = 1.0;
    for (double lam : {16.0, 256.0}) {
        const int k = static_cast<int>(std::floor(std::sqrt(lam)));
        family.push_back(eigen_solution(lam, k, 3, 1, grid).u);
        norms.A0 = std::max(norms.A0, lam);
        beta = std::max(beta, 1.0 + lam);
    }
    const ThreeBallConfig cfg = ThreeBallConfig::from_radii(4e-4, 2e-3, 8e-3, beta);
    const CheckReport rep = three_ball_check(family, norms, cfg, p, 1.0);
    if (!rep.passed || !std::isfinite(rep.fitted_C)) {
        detail = "three-ball inequality failed";
        return false;
    }
    // exact branch selection around the crossing point
    const ThreeBallConfig cb = ThreeBallConfig::from_radii(0.001, 0.004, 0.02);
    const double tau_min = 7.0;
    const double dphi1 = phi(0.5 * cb.R1) - phi(cb.r1);
    const double U2_star = std::exp(tau_min * dphi1 / cb.k0);
    const bool below_two =
        three_ball_bound(1.0, U2_star * 0.999, 1.0, 1.0, cb, tau_min).branch == 2;
    const bool above_one =
        three_ball_bound(1.0, U2_star * 1.001, 1.0, 1.0, cb, tau_min).branch == 1;
    if (!below_two || !above_one) {
        detail = "branch switch not exact";
        return false;
    }
    detail = "1000 triples, growth ratio, fitted C=" + num_str(rep.fitted_C);
    return true;
}

// 11. propagation of smallness: exponents k0^d and the measured bound
bool criterion_11(std::string& detail) {
    const auto grid = shared_default_grid();
    const ProblemParams p = bk_params();
    PotentialNorms norms;
    norms.s = p.s;
    norms.A0 = 4.0;
    const EigenSolution es = eigen_solution(4.0, 2, 3, 1, grid);
    const double r = std::exp(-6.5);
    for (int d = 0; d <= 8; ++d) {
        const PropagationResult pr = propagate_smallness(es.u, d, r, p, norms, 0.2);
        const double expect = std::pow(pr.k0, d);
        if (std::abs(pr.steps.back().exponent - expect) > 1e-12 * expect) {
            detail = "exponent unrolling off at d=" + std::to_string(d);
            return false;
        }
        if (!pr.passed) {
            detail = "derived bound exceeded the measured sup at d=" + std::to_string(d);
            return false;
        }
    }
    detail = "d <= 8 exact exponents, derived <= measured";
    return true;
}

// 12. growth exponent equals the scaled-norm route exactly, both branches
bool criterion_12(std::string& detail) {
    Rng rng(161803);
    int seen_nu = 0, seen_drift = 0, done = 0;
    while (done < 20 || seen_nu == 0 || seen_drift == 0) {
        const Case c = static_cast<Case>(rng.integer(0, 2));
        const ProblemParams p = random_params(rng, c);
        const InfinityConsistency ic = infinity_consistency(p);
        if (!ic.equal) {
            detail = "exponent mismatch at n=" + std::to_string(p.n) +
                     " m=" + std::to_string(p.m) + " s=" + p.s.str();
            return false;
        }
        const ThetaInfinity th = theta_infinity(p);
        (th.nu_branch ? seen_nu : seen_drift) += 1;
        ++done;
        if (done > 400) break;
    }
    detail = std::to_string(done) + " parameter sets (" + std::to_string(seen_drift) +
             " drift-branch, " + std::to_string(seen_nu) + " potential-branch)";
    return seen_nu > 0 && seen_drift > 0;
}

}  // namespace

int main() {
    Harness h;
    h.run("exponent reductions nu=2/3, theta=4/3 (exact)", criterion_1);
    h.run("exponent self-consistency on randomized parameters", criterion_2);
    h.run("conjugation identity on 10 bumps, refining", criterion_3);
    h.run("18-identity catalog, gap <= 1e-6", criterion_4);
    h.run("second-order estimate: bounded ratio + energy bound", criterion_5);
    h.run("order-2 estimate and the composed two-step route", criterion_6);
    h.run("absorption threshold and envelope exponents", criterion_7);
    h.run("vanishing-order estimator within 0.05", criterion_8);
    h.run("eigen-family order bound with one constant", criterion_9);
    h.run("three-ball machinery: k0, growth, inequality, branches", criterion_10);
    h.run("propagation of smallness: k0^d and measured bound", criterion_11);
    h.run("scaled-norm exponent equals theta (rational, both branches)", criterion_12);
    if (h.failures) {
        std::printf("%d criterion(s) FAILED\n", h.failures);
        return 1;
    }
    std::printf("all %d criteria passed\n", h.index);
    return 0;
}
