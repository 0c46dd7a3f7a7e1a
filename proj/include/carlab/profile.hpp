#ifndef CARLAB_PROFILE_HPP
#define CARLAB_PROFILE_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "carlab/grid.hpp"

namespace carlab {

/// Radial factor f of a spherical mode u = f(t) Y_k, as a function of
/// t = log r, exposing t-derivatives up to max_deriv().
class Profile {
  public:
    virtual ~Profile() = default;
    virtual double value(double t, int deriv = 0) const = 0;
    virtual int max_deriv() const = 0;
    virtual bool analytic() const { return true; }
    virtual std::string descriptor() const = 0;
};

using ProfilePtr = std::shared_ptr<const Profile>;

/// f = r^a = e^{a t}
class PowerProfile : public Profile {
  public:
    explicit PowerProfile(double a) : a_(a) {}
    double value(double t, int deriv = 0) const override;
    int max_deriv() const override { return 64; }
    std::string descriptor() const override;
    double exponent() const { return a_; }

  private:
    double a_;
};

/// f = exp(-1/(1 - ((t-c)/w)^2)) * cos(eta t) on |t-c| < w, zero outside.
/// Derivatives are analytic, through the pole recurrences of the mollifier.
class BumpProfile : public Profile {
  public:
    BumpProfile(double center, double width, double eta = 0.0);
    double value(double t, int deriv = 0) const override;
    int max_deriv() const override { return 12; }
    std::string descriptor() const override;
    double center() const { return c_; }
    double width() const { return w_; }

  private:
    double c_, w_, eta_;
};

/// c * f
class ScaledProfile : public Profile {
  public:
    ScaledProfile(double scale, ProfilePtr base) : s_(scale), base_(std::move(base)) {}
    double value(double t, int deriv = 0) const override { return s_ * base_->value(t, deriv); }
    int max_deriv() const override { return base_->max_deriv(); }
    bool analytic() const override { return base_->analytic(); }
    std::string descriptor() const override;

  private:
    double s_;
    ProfilePtr base_;
};

/// e^{c t} * f
class ExpShiftProfile : public Profile {
  public:
    ExpShiftProfile(double shift, ProfilePtr base) : c_(shift), base_(std::move(base)) {}
    double value(double t, int deriv = 0) const override;
    int max_deriv() const override { return base_->max_deriv(); }
    bool analytic() const override { return base_->analytic(); }
    std::string descriptor() const override;

  private:
    double c_;
    ProfilePtr base_;
};

/// P(d/dt) f for a constant-coefficient polynomial P; this is the shape of
/// r^{2m} Delta^m restricted to a mode.
class PolyOpProfile : public Profile {
  public:
    PolyOpProfile(std::vector<double> coeffs, ProfilePtr base, std::string name);
    double value(double t, int deriv = 0) const override;
    int max_deriv() const override;
    bool analytic() const override { return base_->analytic(); }
    std::string descriptor() const override { return name_; }
    const std::vector<double>& coeffs() const { return c_; }

  private:
    std::vector<double> c_;
    ProfilePtr base_;
    std::string name_;
};

/// sgn * e^{g(t)} * f with analytic g supplied through its derivatives;
/// carries the conjugation weights e^{-tau phi} e^{sigma1 t} t^{sigma2}.
class ExpWeightProfile : public Profile {
  public:
    /// g_derivs(t, j) must return d^j g / dt^j
    ExpWeightProfile(std::function<double(double, int)> g_derivs, double sign, ProfilePtr base,
                     std::string name);
    double value(double t, int deriv = 0) const override;
    int max_deriv() const override { return base_->max_deriv(); }
    bool analytic() const override { return base_->analytic(); }
    std::string descriptor() const override { return name_; }

  private:
    std::function<double(double, int)> g_;
    double sign_;
    ProfilePtr base_;
    std::string name_;
};

/// Profile backed by a callable (t, deriv) -> value.
class FunctionProfile : public Profile {
  public:
    FunctionProfile(std::function<double(double, int)> fn, int max_deriv, std::string name,
                    bool is_analytic = true)
        : fn_(std::move(fn)), maxd_(max_deriv), name_(std::move(name)), analytic_(is_analytic) {}
    double value(double t, int deriv = 0) const override { return fn_(t, deriv); }
    int max_deriv() const override { return maxd_; }
    bool analytic() const override { return analytic_; }
    std::string descriptor() const override { return name_; }

  private:
    std::function<double(double, int)> fn_;
    int maxd_;
    std::string name_;
    bool analytic_;
};

/// Values on the nodes of a RadialGrid; derivatives by centered stencils of
/// the configured accuracy order. Evaluation is node-bound.
class GridProfile : public Profile {
  public:
    GridProfile(std::shared_ptr<const RadialGrid> grid, std::vector<double> values,
                int accuracy_order, std::string name);

    /// sample an analytic profile onto a grid
    static std::shared_ptr<GridProfile> sample(const Profile& src,
                                               std::shared_ptr<const RadialGrid> grid,
                                               int accuracy_order, const std::string& name);

    double value(double t, int deriv = 0) const override;
    int max_deriv() const override { return 8; }
    bool analytic() const override { return false; }
    std::string descriptor() const override { return name_; }
    const std::vector<double>& values() const { return v_; }
    const RadialGrid& grid() const { return *grid_; }

  private:
    std::size_t node_index(double t) const;
    std::shared_ptr<const RadialGrid> grid_;
    std::vector<double> v_;
    int acc_;
    std::string name_;
};

/// Regular solution of f'' + (n-1)/r f' + (lambda - k(k+n-2)/r^2) f = 0,
/// normalized to leading behaviour r^k. Power series near the origin,
/// matched to a fixed-step RK4 integration outward of r_match.
class SeriesRadialProfile : public Profile {
  public:
    SeriesRadialProfile(double lambda, int k, int n, double r_max);
    double value(double t, int deriv = 0) const override;
    int max_deriv() const override { return 8; }
    std::string descriptor() const override;
    double r_match() const { return r_match_; }
    double series_coeff(std::size_t j) const { return j < a_.size() ? a_[j] : 0.0; }

  private:
    /// f and r-derivatives f^{(0..d)} at radius r
    std::vector<double> r_derivs(double r, int d) const;
    std::vector<double> r_derivs_init() const;
    friend class SeriesOpProfile;
    double lambda_;
    int k_, n_;
    double r_match_, r_max_;
    std::vector<double> a_;               // series coefficients of r^{k+2j}
    std::vector<double> mesh_r_, mesh_f_, mesh_fp_;  // RK4 dense data
};

/// Constant-coefficient operator P(d/dt) applied to a SeriesRadialProfile
/// term by term: the polynomial is evaluated per series power, so exact
/// leading-term cancellations (the harmonic kernel) survive in floating
/// point instead of being lost to the summed-then-combined route.
class SeriesOpProfile : public Profile {
  public:
    SeriesOpProfile(std::shared_ptr<const SeriesRadialProfile> base, std::vector<double> coeffs,
                    std::string name);
    double value(double t, int deriv = 0) const override;
    int max_deriv() const override;
    std::string descriptor() const override { return name_; }

  private:
    std::shared_ptr<const SeriesRadialProfile> base_;
    std::vector<double> c_;
    std::vector<double> qj_;  // P(k + 2j) per series term
    std::string name_;
};

/// One spherical mode u = f(t) Y_k with its grid and support window.
/// Profiles vanish outside [support_lo, support_hi].
struct ModeFunction {
    int k = 0;
    int n = 3;
    ProfilePtr profile;
    double support_lo = 0.0;
    double support_hi = 0.0;
    std::shared_ptr<const RadialGrid> grid;

    double value(double t, int deriv = 0) const {
        if (t < support_lo || t > support_hi) return 0.0;
        return profile->value(t, deriv);
    }
    bool whole_grid_support() const {
        return support_lo <= grid->t_min() && support_hi >= grid->t_max();
    }
    std::string descriptor() const { return profile ? profile->descriptor() : "(empty)"; }
};

double binomial(int n, int k);

}  // namespace carlab

#endif
