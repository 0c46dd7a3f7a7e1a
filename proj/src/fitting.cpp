#include "carlab/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace carlab {

LineFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need >= 2 matched samples");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissae");
    LineFit f;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

FitResult fit_constant_and_tau0(std::vector<SweepPoint> sweep, double slack,
                                double slope_threshold) {
    if (sweep.size() < 8)
        throw std::invalid_argument("fit_constant_and_tau0: need >= 8 tau samples");
    std::sort(sweep.begin(), sweep.end(),
              [](const SweepPoint& a, const SweepPoint& b) { return a.tau < b.tau; });
    if (!(sweep.front().tau > 0.0))
        throw std::invalid_argument("fit_constant_and_tau0: tau must be positive");
    if (sweep.back().tau < 8.0 * sweep.front().tau)
        throw std::invalid_argument("fit_constant_and_tau0: sweep must span >= 3 doublings");
    for (const SweepPoint& p : sweep)
        if (!(p.ratio > 0.0) || !std::isfinite(p.ratio))
            throw std::invalid_argument("fit_constant_and_tau0: ratios must be positive finite");

    FitResult out;
    const std::size_t tail_start = sweep.size() / 2;
    std::vector<double> lx, ly;
    double tail_max = 0.0;
    for (std::size_t i = tail_start; i < sweep.size(); ++i) {
        lx.push_back(std::log(sweep[i].tau));
        ly.push_back(std::log(sweep[i].ratio));
        tail_max = std::max(tail_max, sweep[i].ratio);
    }
    out.C_hat = tail_max;
    out.tail_slope = linear_fit(lx, ly).slope;
    out.stabilized = out.tail_slope <= slope_threshold;
    if (!out.stabilized)
        out.note = "ratio not stabilizing (tail log-log slope " + std::to_string(out.tail_slope) +
                   "): estimate failure, possible sharpness violation or grid underresolution";

    // smallest tau after which every later ratio stays within slack of C_hat
    out.tau0_hat = sweep.back().tau;
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        bool ok = true;
        for (std::size_t j = i; j < sweep.size(); ++j)
            if (sweep[j].ratio > tail_max * (1.0 + slack)) {
                ok = false;
                break;
            }
        if (ok) {
            out.tau0_hat = sweep[i].tau;
            break;
        }
    }
    return out;
}

double max_doubling_drift(const std::vector<SweepPoint>& sweep) {
    if (sweep.empty()) throw std::invalid_argument("max_doubling_drift: empty sweep");
    std::vector<SweepPoint> s = sweep;
    std::sort(s.begin(), s.end(),
              [](const SweepPoint& a, const SweepPoint& b) { return a.tau < b.tau; });
    const double t0 = s.front().tau;
    std::vector<double> octave_max;
    for (const SweepPoint& p : s) {
        const auto bucket = static_cast<std::size_t>(std::floor(std::log2(p.tau / t0) + 1e-9));
        if (octave_max.size() <= bucket) octave_max.resize(bucket + 1, 0.0);
        octave_max[bucket] = std::max(octave_max[bucket], p.ratio);
    }
    double worst = 1.0;
    for (std::size_t i = 0; i + 1 < octave_max.size(); ++i) {
        if (octave_max[i] == 0.0 || octave_max[i + 1] == 0.0) continue;
        const double f = octave_max[i + 1] / octave_max[i];
        worst = std::max(worst, std::max(f, 1.0 / f));
    }
    return worst;
}

}  // namespace carlab
