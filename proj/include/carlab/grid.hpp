#ifndef CARLAB_GRID_HPP
#define CARLAB_GRID_HPP

#include <memory>
#include <vector>

namespace carlab {

/// Uniform grid in t = log r, t < 0, with quadrature weights for int dt.
/// Log-spacing in r keeps the Carleman weights polynomially resolved.
class RadialGrid {
  public:
    RadialGrid(double t_min, double t_max, std::size_t points);

    static std::shared_ptr<const RadialGrid> make_default();
    static std::shared_ptr<const RadialGrid> make(double t_min, double t_max, std::size_t points);

    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }
    double h() const { return h_; }
    std::size_t size() const { return t_.size(); }
    const std::vector<double>& samples() const { return t_; }
    const std::vector<double>& quad_weights() const { return w_; }

    /// index range [first, last] of samples inside [a, b]
    std::pair<std::size_t, std::size_t> index_range(double a, double b) const;

    bool contains(double a, double b) const { return a >= t_min_ && b <= t_max_ && a <= b; }

    /// grid refined by an integer factor on the same interval
    std::shared_ptr<const RadialGrid> refined(int factor) const;

  private:
    double t_min_, t_max_, h_;
    std::vector<double> t_;
    std::vector<double> w_;  // composite trapezoid; positive
};

/// Finite-difference weights for the d-th derivative at point x from nodes
/// xs (Fornberg's recurrence). Used by grid-sampled profiles.
std::vector<double> fd_weights(double x, const std::vector<double>& xs, int d);

/// Nodes/weights of composite 16-point Gauss-Legendre on [a, b] split into
/// `panels` equal panels. Integrates window norms of closed-form profiles
/// whose support does not end on grid nodes.
struct PanelQuadrature {
    std::vector<double> x;
    std::vector<double> w;
};
PanelQuadrature gauss_panels(double a, double b, int panels);

}  // namespace carlab

#endif
