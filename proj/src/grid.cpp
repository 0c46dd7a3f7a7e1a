#include "carlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace carlab {

RadialGrid::RadialGrid(double t_min, double t_max, std::size_t points) {
    if (!(t_min < t_max)) throw std::invalid_argument("RadialGrid: t_min >= t_max");
    if (t_max > 0.0) throw std::invalid_argument("RadialGrid: grid must satisfy t <= 0 (r <= 1)");
    if (points < 16) throw std::invalid_argument("RadialGrid: too few points");
    t_min_ = t_min;
    t_max_ = t_max;
    h_ = (t_max - t_min) / static_cast<double>(points - 1);
    t_.resize(points);
    w_.assign(points, h_);
    for (std::size_t i = 0; i < points; ++i) t_[i] = t_min + h_ * static_cast<double>(i);
    w_.front() = w_.back() = 0.5 * h_;
}

std::shared_ptr<const RadialGrid> RadialGrid::make_default() {
    return std::make_shared<RadialGrid>(-40.0, -3.0, 4096);
}

std::shared_ptr<const RadialGrid> RadialGrid::make(double t_min, double t_max, std::size_t points) {
    return std::make_shared<RadialGrid>(t_min, t_max, points);
}

std::pair<std::size_t, std::size_t> RadialGrid::index_range(double a, double b) const {
    auto lo = std::lower_bound(t_.begin(), t_.end(), a);
    auto hi = std::upper_bound(t_.begin(), t_.end(), b);
    if (lo >= hi) throw std::invalid_argument("RadialGrid: empty index range");
    return {static_cast<std::size_t>(lo - t_.begin()), static_cast<std::size_t>(hi - t_.begin() - 1)};
}

std::shared_ptr<const RadialGrid> RadialGrid::refined(int factor) const {
    if (factor < 1) throw std::invalid_argument("RadialGrid: refinement factor < 1");
    return make(t_min_, t_max_, (size() - 1) * static_cast<std::size_t>(factor) + 1);
}

std::vector<double> fd_weights(double x, const std::vector<double>& xs, int d) {
    // Fornberg's algorithm, weights for derivative orders 0..d at x; we
    // return the order-d row.
    const int n = static_cast<int>(xs.size()) - 1;
    if (n < d) throw std::invalid_argument("fd_weights: need more nodes than derivative order");
    std::vector<std::vector<double>> c(static_cast<std::size_t>(n + 1),
                                       std::vector<double>(static_cast<std::size_t>(d + 1), 0.0));
    double c1 = 1.0;
    double c4 = xs[0] - x;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        int mn = std::min(i, d);
        double c2 = 1.0;
        double c5 = c4;
        c4 = xs[static_cast<std::size_t>(i)] - x;
        for (int j = 0; j <= i - 1; ++j) {
            double c3 = xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                        c1 *
                        (k * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] -
                         c5 * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k)]) /
                        c2;
                c[static_cast<std::size_t>(i)][0] =
                    -c1 * c5 * c[static_cast<std::size_t>(i - 1)][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                    (c4 * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] -
                     k * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k - 1)]) /
                    c3;
            c[static_cast<std::size_t>(j)][0] =
                c4 * c[static_cast<std::size_t>(j)][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = c[i][static_cast<std::size_t>(d)];
    return out;
}

namespace {
// 16-point Gauss-Legendre on [-1, 1] (positive half; symmetric)
constexpr double kGLx[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                            0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                            0.9445750230732326, 0.9894009349916499};
constexpr double kGLw[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                            0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                            0.0622535239386479, 0.0271524594117541};
}  // namespace

PanelQuadrature gauss_panels(double a, double b, int panels) {
    if (!(a < b)) throw std::invalid_argument("gauss_panels: empty interval");
    if (panels < 1) panels = 1;
    PanelQuadrature q;
    q.x.reserve(static_cast<std::size_t>(panels) * 16);
    q.w.reserve(static_cast<std::size_t>(panels) * 16);
    const double len = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * len;
        const double half = 0.5 * len;
        for (int i = 0; i < 8; ++i) {
            q.x.push_back(mid - half * kGLx[i]);
            q.w.push_back(half * kGLw[i]);
            q.x.push_back(mid + half * kGLx[i]);
            q.w.push_back(half * kGLw[i]);
        }
    }
    return q;
}

}  // namespace carlab
