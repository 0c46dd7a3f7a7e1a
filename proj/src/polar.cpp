#include "carlab/polar.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace carlab {

double phi(double r) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("phi: r must lie in (0,1)");
    return phi_from_t(std::log(r));
}

double phi_from_t(double t) {
    if (!(t < 0.0)) throw std::invalid_argument("phi_from_t: t must be negative");
    return t + 2.0 * std::log(-t);
}

double phi_prime(double r) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("phi_prime: r must lie in (0,1)");
    return 1.0 / r + 2.0 / (r * std::log(r));
}

void WeightSpec::validate() const {
    if (tau < 0.0) throw std::invalid_argument("WeightSpec: tau must be >= 0");
}

double WeightSpec::log_weight(double t) const {
    // log | e^{-tau phi} t^{sigma2+log_power} e^{sigma1 t} |
    return -tau * phi_from_t(t) + static_cast<double>(log_exponent()) * std::log(-t) +
           static_cast<double>(sigma1) * t;
}

namespace {

LogVal norm_from_nodes(const ModeFunction& f, const WeightSpec& w, double p, Measure measure,
                       const std::vector<double>& xs, const std::vector<double>& ws) {
    const bool sup = std::isinf(p);
    if (!sup && p < 1.0) throw std::invalid_argument("weighted_lp_norm: p must be >= 1 or inf");
    LogSum acc;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double t = xs[i];
        const double v = f.value(t);
        if (v == 0.0) continue;
        double lg = w.log_weight(t) + std::log(std::abs(v));
        if (sup) {
            best = std::max(best, lg);
            continue;
        }
        if (measure == Measure::Plain) {
            acc.add_log(p * lg + f.n * t + std::log(ws[i]));
        } else {
            acc.add_log(p * lg + std::log(ws[i]));
        }
    }
    if (sup) return std::isinf(best) ? LogVal::zero() : LogVal::from_log(best);
    return acc.total().pow(1.0 / p);
}

}  // namespace

LogVal weighted_lp_norm(const ModeFunction& f, const WeightSpec& w, double p, Measure measure) {
    w.validate();
    if (!f.grid) throw std::invalid_argument("weighted_lp_norm: mode lacks a grid");
    if (f.support_lo < f.grid->t_min() - 1e-12 || f.support_hi > f.grid->t_max() + 1e-12)
        throw std::invalid_argument("weighted_lp_norm: support exceeds grid");
    return norm_from_nodes(f, w, p, measure, f.grid->samples(), f.grid->quad_weights());
}

LogVal weighted_lp_norm_window(const ModeFunction& f, const WeightSpec& w, double p,
                               Measure measure, double t_lo, double t_hi) {
    w.validate();
    if (!(t_lo < t_hi)) throw std::invalid_argument("weighted_lp_norm_window: empty window");
    if (!f.grid->contains(t_lo, t_hi))
        throw std::invalid_argument("weighted_lp_norm_window: window exceeds grid");
    if (f.profile->analytic() && !std::isinf(p)) {
        const int panels =
            std::max(8, static_cast<int>(std::ceil((t_hi - t_lo) / (8.0 * f.grid->h()))));
        PanelQuadrature q = gauss_panels(t_lo, t_hi, panels);
        return norm_from_nodes(f, w, p, measure, q.x, q.w);
    }
    // node-bound profiles: restrict the grid rule to the window
    auto [i0, i1] = f.grid->index_range(t_lo, t_hi);
    std::vector<double> xs, ws;
    for (std::size_t i = i0; i <= i1; ++i) {
        xs.push_back(f.grid->samples()[i]);
        double wi = f.grid->h();
        if (i == i0 || i == i1) wi *= 0.5;
        ws.push_back(wi);
    }
    return norm_from_nodes(f, w, p, measure, xs, ws);
}

double angular_eigenvalue(int k, int n) {
    if (k < 0) throw std::invalid_argument("angular_eigenvalue: k < 0");
    if (n < 2) throw std::invalid_argument("angular_eigenvalue: n < 2");
    return static_cast<double>(k) * static_cast<double>(k + n - 2);
}

std::vector<double> laplacian_mode_coeffs(int k, int n) {
    return {-angular_eigenvalue(k, n), static_cast<double>(n - 2), 1.0};
}

namespace {
std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}
}  // namespace

std::vector<double> polyharmonic_mode_coeffs(int k, int n, int m) {
    if (m < 1) throw std::invalid_argument("polyharmonic_mode_coeffs: m < 1");
    const double kappa = angular_eigenvalue(k, n);
    std::vector<double> out{1.0};
    for (int j = 0; j < m; ++j) {
        // L_a(d) = (d+a)^2 + (n-2)(d+a) - kappa at a = -2j
        const double a = -2.0 * j;
        std::vector<double> f{a * a + (n - 2) * a - kappa, 2.0 * a + (n - 2), 1.0};
        out = poly_mul(out, f);
    }
    return out;
}

namespace {
/// routes the constant-coefficient operator through the representation-aware
/// paths: exact power rule for powers, term-wise application for series
ProfilePtr mode_op_profile(const ModeFunction& f, std::vector<double> coeffs,
                           const std::string& name) {
    if (auto pw = std::dynamic_pointer_cast<const PowerProfile>(f.profile)) {
        double q = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 0;) q = q * pw->exponent() + coeffs[i];
        return std::make_shared<ScaledProfile>(q, f.profile);
    }
    if (auto sp = std::dynamic_pointer_cast<const SeriesRadialProfile>(f.profile))
        return std::make_shared<SeriesOpProfile>(sp, std::move(coeffs), name);
    return std::make_shared<PolyOpProfile>(std::move(coeffs), f.profile, name);
}
}  // namespace

ModeFunction apply_laplacian_mode(const ModeFunction& f) {
    if (f.profile->max_deriv() < 2)
        throw std::invalid_argument("apply_laplacian_mode: profile not twice differentiable");
    ModeFunction g = f;
    g.profile = mode_op_profile(f, laplacian_mode_coeffs(f.k, f.n),
                                "r2lap[" + f.descriptor() + "]");
    return g;
}

ModeFunction apply_polyharmonic_mode(const ModeFunction& f, int m) {
    if (f.profile->max_deriv() < 2 * m)
        throw std::invalid_argument("apply_polyharmonic_mode: profile lacks 2m derivatives");
    ModeFunction g = f;
    g.profile = mode_op_profile(f, polyharmonic_mode_coeffs(f.k, f.n, m),
                                "r2mpolyharm^" + std::to_string(m) + "[" + f.descriptor() + "]");
    return g;
}

std::string profile_csv(const ModeFunction& f) {
    std::ostringstream os;
    os << "t," << f.descriptor() << "\n";
    char buf[64];
    for (double t : f.grid->samples()) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t, f.value(t));
        os << buf;
    }
    return os.str();
}

}  // namespace carlab
