#include "carlab/solutions.hpp"

#include <cmath>
#include <stdexcept>

namespace carlab {

ModeFunction bump_mode(std::shared_ptr<const RadialGrid> grid, int k, int n, double center,
                       double width, double eta) {
    if (!grid) throw std::invalid_argument("bump_mode: missing grid");
    if (center - width < grid->t_min() || center + width > grid->t_max())
        throw std::invalid_argument("bump_mode: support leaves the grid");
    ModeFunction f;
    f.k = k;
    f.n = n;
    f.grid = std::move(grid);
    f.profile = std::make_shared<BumpProfile>(center, width, eta);
    f.support_lo = center - width;
    f.support_hi = center + width;
    return f;
}

PowerSolution polyharmonic_power(double a, int k, int n, int m,
                                 std::shared_ptr<const RadialGrid> grid) {
    if (!grid) throw std::invalid_argument("polyharmonic_power: missing grid");
    if (m < 1) throw std::invalid_argument("polyharmonic_power: m < 1");
    PowerSolution out;
    out.u.k = k;
    out.u.n = n;
    out.u.grid = grid;
    out.u.profile = std::make_shared<PowerProfile>(a);
    out.u.support_lo = grid->t_min();
    out.u.support_hi = grid->t_max();
    const double kappa = angular_eigenvalue(k, n);
    out.image_coeff = 1.0;
    for (int j = 0; j < m; ++j) {
        const double aj = a - 2.0 * j;
        const double cj = aj * (aj + n - 2) - kappa;
        out.coeff_chain.push_back(cj);
        out.image_coeff *= cj;
    }
    out.image_exponent = a - 2.0 * m;
    return out;
}

EigenSolution eigen_solution(double lambda, int k, int n, int m,
                             std::shared_ptr<const RadialGrid> grid) {
    if (!grid) throw std::invalid_argument("eigen_solution: missing grid");
    if (lambda <= 0.0) throw std::invalid_argument("eigen_solution: lambda must be positive");
    if (m < 1) throw std::invalid_argument("eigen_solution: m < 1");
    EigenSolution out;
    out.lambda = lambda;
    out.u.k = k;
    out.u.n = n;
    out.u.grid = grid;
    out.u.profile =
        std::make_shared<SeriesRadialProfile>(lambda, k, n, std::exp(grid->t_max()));
    out.u.support_lo = grid->t_min();
    out.u.support_hi = grid->t_max();
    // Delta u = -lambda u  =>  Delta^m u = (-lambda)^m u
    out.V0 = -std::pow(-lambda, m);
    out.V0_Linf = std::pow(lambda, m);
    out.vanishing_order = k;
    return out;
}

namespace {
/// radial representative of D^a on a mode: e^{-|a| t} d_t^{|a|}
double drift_rep(const ModeFunction& u, double t, int order) {
    return std::exp(-order * t) * u.value(t, order);
}
}  // namespace

SampledPotential manufactured(const ModeFunction& u, int m, const std::vector<DriftTerm>& drifts,
                              double floor_frac, const ExtRat& s) {
    if (!u.grid) throw std::invalid_argument("manufactured: mode lacks a grid");
    if (floor_frac <= 0.0) throw std::invalid_argument("manufactured: floor must be positive");
    if (!s.is_inf() && !s.finite().positive())
        throw std::invalid_argument("manufactured: s must be positive or inf");
    const ModeFunction image = apply_polyharmonic_mode(u, m);
    const auto& ts = u.grid->samples();

    double umax = 0.0;
    for (double t : ts) umax = std::max(umax, std::abs(u.value(t)));
    if (umax == 0.0) throw std::invalid_argument("manufactured: u vanishes identically");
    const double floor = floor_frac * umax;

    // region: the widest contiguous sample window with |u| >= floor
    std::size_t best_lo = 0, best_hi = 0, cur_lo = 0;
    bool in_run = false, found = false;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (std::abs(u.value(ts[i])) >= floor) {
            if (!in_run) {
                in_run = true;
                cur_lo = i;
            }
            if (!found || i - cur_lo > best_hi - best_lo) {
                best_lo = cur_lo;
                best_hi = i;
                found = true;
            }
        } else {
            in_run = false;
        }
    }
    if (!found) throw std::invalid_argument("manufactured: |u| below floor everywhere");

    SampledPotential out;
    out.s = s;
    out.region_lo = ts[best_lo];
    out.region_hi = ts[best_hi];
    std::vector<double> vals(ts.size(), 0.0);
    for (std::size_t i = best_lo; i <= best_hi; ++i) {
        const double t = ts[i];
        const double uval = u.value(t);
        if (std::abs(uval) < floor)
            throw std::invalid_argument("manufactured: |u| dips below floor inside the region");
        // V0 = -(r^{-2m} (r^{2m} Delta^m u) + sum V_a D^a u)/u
        double num = std::exp(-2.0 * m * t) * image.value(t);
        for (const DriftTerm& d : drifts)
            num += d.coefficient->value(t) * drift_rep(u, t, d.order);
        vals[i] = -num / uval;
    }
    out.V0 = std::make_shared<GridProfile>(u.grid, std::move(vals), 8,
                                           "manufactured_V0[" + u.descriptor() + "]");

    // L^s norm on the region, plain measure (e^{nt} dt), unit angular factor
    const auto& ws = u.grid->quad_weights();
    if (s.is_inf()) {
        double mx = 0.0;
        for (std::size_t i = best_lo; i <= best_hi; ++i)
            mx = std::max(mx, std::abs(out.V0->values()[i]));
        out.Ls_norm = mx;
    } else {
        const double se = s.finite().to_double();
        LogSum acc;
        for (std::size_t i = best_lo; i <= best_hi; ++i) {
            const double av = std::abs(out.V0->values()[i]);
            if (av == 0.0) continue;
            acc.add_log(se * std::log(av) + u.n * ts[i] + std::log(ws[i]));
        }
        out.Ls_norm = acc.total().pow(1.0 / se).to_double();
    }
    return out;
}

double pde_residual_const(const ModeFunction& u, int m, double V0) {
    const ModeFunction image = apply_polyharmonic_mode(u, m);
    double worst = 0.0;
    for (double t : u.grid->samples()) {
        if (t < u.support_lo || t > u.support_hi) continue;
        const double poly = std::exp(-2.0 * m * t) * image.value(t);
        const double pot = V0 * u.value(t);
        const double scale = std::max(std::abs(poly), std::abs(pot));
        // below ~1e-240 the intermediate powers leave double range and the
        // relative comparison is meaningless
        if (scale < 1e-240) continue;
        worst = std::max(worst, std::abs(poly + pot) / scale);
    }
    return worst;
}

double pde_residual(const ModeFunction& u, int m, const std::vector<DriftTerm>& drifts,
                    const SampledPotential& V0) {
    const ModeFunction image = apply_polyharmonic_mode(u, m);
    double worst = 0.0;
    for (double t : u.grid->samples()) {
        if (t < V0.region_lo || t > V0.region_hi) continue;
        double poly = std::exp(-2.0 * m * t) * image.value(t);
        double lower = V0.V0->value(t) * u.value(t);
        for (const DriftTerm& d : drifts)
            lower += d.coefficient->value(t) * drift_rep(u, t, d.order);
        const double scale = std::max(std::abs(poly), std::abs(lower));
        if (scale < 1e-240) continue;
        worst = std::max(worst, std::abs(poly + lower) / scale);
    }
    return worst;
}

}  // namespace carlab
