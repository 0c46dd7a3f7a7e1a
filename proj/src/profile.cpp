#include "carlab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace carlab {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace {
std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}
}  // namespace

// ---------------------------------------------------------------- Power

double PowerProfile::value(double t, int deriv) const {
    double base = std::exp(a_ * t);
    if (deriv == 0) return base;
    return std::pow(a_, deriv) * base;
}

std::string PowerProfile::descriptor() const { return "power(a=" + fmt(a_) + ")"; }

// ----------------------------------------------------------------- Bump

BumpProfile::BumpProfile(double center, double width, double eta)
    : c_(center), w_(width), eta_(eta) {
    if (width <= 0.0) throw std::invalid_argument("BumpProfile: width must be positive");
}

double BumpProfile::value(double t, int deriv) const {
    const double x = (t - c_) / w_;
    if (std::abs(x) >= 1.0) return 0.0;
    const double h = -1.0 / (1.0 - x * x);
    if (h < -700.0) return 0.0;  // value underflows; all derivatives vanish with it

    // derivatives of h in x:  h = -1/2 [ 1/(1-x) + 1/(1+x) ]
    const int d = deriv;
    std::vector<double> hd(static_cast<std::size_t>(d) + 1);
    hd[0] = h;
    double fj = 1.0;  // j!
    for (int j = 1; j <= d; ++j) {
        fj *= j;
        const double u = fj / std::pow(1.0 - x, j + 1);
        const double v = fj / std::pow(1.0 + x, j + 1);
        hd[static_cast<std::size_t>(j)] = -0.5 * (u + ((j % 2 == 0) ? v : -v));
    }
    // g_j = d^j/dx^j e^{h}: g_j = sum C(j-1,i) h^{(j-i)} g_i
    std::vector<double> g(static_cast<std::size_t>(d) + 1);
    g[0] = std::exp(h);
    for (int j = 1; j <= d; ++j) {
        double s = 0.0;
        for (int i = 0; i < j; ++i)
            s += binomial(j - 1, i) * hd[static_cast<std::size_t>(j - i)] *
                 g[static_cast<std::size_t>(i)];
        g[static_cast<std::size_t>(j)] = s;
    }
    // t-derivatives of the mollifier alone
    std::vector<double> B(static_cast<std::size_t>(d) + 1);
    for (int j = 0; j <= d; ++j)
        B[static_cast<std::size_t>(j)] = g[static_cast<std::size_t>(j)] / std::pow(w_, j);
    if (eta_ == 0.0) return B[static_cast<std::size_t>(d)];

    // Leibniz with cos(eta t)
    double out = 0.0;
    for (int j = 0; j <= d; ++j) {
        const int dc = d - j;
        double trig;
        switch (dc % 4) {
            case 0: trig = std::cos(eta_ * t); break;
            case 1: trig = -std::sin(eta_ * t); break;
            case 2: trig = -std::cos(eta_ * t); break;
            default: trig = std::sin(eta_ * t); break;
        }
        out += binomial(d, j) * B[static_cast<std::size_t>(j)] * std::pow(eta_, dc) * trig;
    }
    return out;
}

std::string BumpProfile::descriptor() const {
    return "bump(c=" + fmt(c_) + ",w=" + fmt(w_) + ",eta=" + fmt(eta_) + ")";
}

// ---------------------------------------------------------------- Scaled

std::string ScaledProfile::descriptor() const {
    return fmt(s_) + "*" + base_->descriptor();
}

// -------------------------------------------------------------- ExpShift

double ExpShiftProfile::value(double t, int deriv) const {
    double s = 0.0;
    for (int j = 0; j <= deriv; ++j)
        s += binomial(deriv, j) * std::pow(c_, deriv - j) * base_->value(t, j);
    return std::exp(c_ * t) * s;
}

std::string ExpShiftProfile::descriptor() const {
    return "exp(" + fmt(c_) + "t)*" + base_->descriptor();
}

// ---------------------------------------------------------------- PolyOp

PolyOpProfile::PolyOpProfile(std::vector<double> coeffs, ProfilePtr base, std::string name)
    : c_(std::move(coeffs)), base_(std::move(base)), name_(std::move(name)) {
    if (c_.empty()) throw std::invalid_argument("PolyOpProfile: empty coefficient list");
}

double PolyOpProfile::value(double t, int deriv) const {
    double s = 0.0;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0.0) s += c_[i] * base_->value(t, deriv + static_cast<int>(i));
    return s;
}

int PolyOpProfile::max_deriv() const {
    return base_->max_deriv() - static_cast<int>(c_.size()) + 1;
}

// ------------------------------------------------------------- ExpWeight

ExpWeightProfile::ExpWeightProfile(std::function<double(double, int)> g_derivs, double sign,
                                   ProfilePtr base, std::string name)
    : g_(std::move(g_derivs)), sign_(sign), base_(std::move(base)), name_(std::move(name)) {}

double ExpWeightProfile::value(double t, int deriv) const {
    // (e^g)^{(i)} = e^g B_i with B_0 = 1, B_i = sum C(i-1,l) g^{(i-l)} B_l
    std::vector<double> B(static_cast<std::size_t>(deriv) + 1);
    B[0] = 1.0;
    for (int i = 1; i <= deriv; ++i) {
        double s = 0.0;
        for (int l = 0; l < i; ++l)
            s += binomial(i - 1, l) * g_(t, i - l) * B[static_cast<std::size_t>(l)];
        B[static_cast<std::size_t>(i)] = s;
    }
    double out = 0.0;
    for (int i = 0; i <= deriv; ++i)
        out += binomial(deriv, i) * B[static_cast<std::size_t>(i)] *
               base_->value(t, deriv - i);
    // the weight may overflow where the base vanishes (outside the
    // support); resolve 0 * exp(huge) to 0 before exponentiating
    if (out == 0.0) return 0.0;
    return sign_ * std::exp(g_(t, 0)) * out;
}

// ------------------------------------------------------------------ Grid

GridProfile::GridProfile(std::shared_ptr<const RadialGrid> grid, std::vector<double> values,
                         int accuracy_order, std::string name)
    : grid_(std::move(grid)), v_(std::move(values)), acc_(accuracy_order), name_(std::move(name)) {
    if (v_.size() != grid_->size())
        throw std::invalid_argument("GridProfile: value count does not match grid");
    if (acc_ < 2 || acc_ % 2 != 0)
        throw std::invalid_argument("GridProfile: accuracy order must be even and >= 2");
}

std::shared_ptr<GridProfile> GridProfile::sample(const Profile& src,
                                                 std::shared_ptr<const RadialGrid> grid,
                                                 int accuracy_order, const std::string& name) {
    std::vector<double> vals(grid->size());
    for (std::size_t i = 0; i < grid->size(); ++i) vals[i] = src.value(grid->samples()[i]);
    return std::make_shared<GridProfile>(grid, std::move(vals), accuracy_order, name);
}

std::size_t GridProfile::node_index(double t) const {
    const double pos = (t - grid_->t_min()) / grid_->h();
    const auto i = static_cast<long long>(std::llround(pos));
    if (i < 0 || i >= static_cast<long long>(v_.size()) ||
        std::abs(pos - static_cast<double>(i)) > 1e-8)
        throw std::invalid_argument("GridProfile: evaluation point is not a grid node");
    return static_cast<std::size_t>(i);
}

double GridProfile::value(double t, int deriv) const {
    const std::size_t i = node_index(t);
    if (deriv == 0) return v_[i];
    const int half = (deriv + acc_) / 2;
    if (static_cast<long long>(i) - half < 0 ||
        i + static_cast<std::size_t>(half) >= v_.size())
        throw std::invalid_argument("GridProfile: insufficient margin for stencil at node");
    std::vector<double> xs, ys;
    xs.reserve(2 * static_cast<std::size_t>(half) + 1);
    ys.reserve(2 * static_cast<std::size_t>(half) + 1);
    for (int j = -half; j <= half; ++j) {
        const auto idx = static_cast<std::size_t>(static_cast<long long>(i) + j);
        xs.push_back(grid_->samples()[idx]);
        ys.push_back(v_[idx]);
    }
    const std::vector<double> w = fd_weights(t, xs, deriv);
    double s = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) s += w[j] * ys[j];
    return s;
}

// ---------------------------------------------------------------- Series

SeriesRadialProfile::SeriesRadialProfile(double lambda, int k, int n, double r_max)
    : lambda_(lambda), k_(k), n_(n), r_max_(r_max) {
    if (lambda <= 0.0) throw std::invalid_argument("SeriesRadialProfile: lambda must be positive");
    if (k < 0 || n < 2) throw std::invalid_argument("SeriesRadialProfile: bad mode");
    r_match_ = std::min(1.0, 2.0 / std::sqrt(lambda));

    // a_j = -lambda a_{j-1} / (2j (2k + 2j + n - 2)), a_0 = 1
    a_.push_back(1.0);
    const double xcap = std::min(r_match_, r_max) ;
    for (std::size_t j = 1; j < 400; ++j) {
        const double denom = 2.0 * static_cast<double>(j) *
                             (2.0 * k + 2.0 * static_cast<double>(j) + n - 2.0);
        a_.push_back(-lambda * a_[j - 1] / denom);
        if (std::abs(a_[j]) * std::pow(xcap, 2.0 * static_cast<double>(j)) < 1e-24) break;
    }

    if (r_match_ < r_max_) {
        // fixed-step RK4 on (f, f') outward from r_match
        const double period = 2.0 * M_PI / std::sqrt(lambda);
        double h = std::min(r_match_ / 200.0, period / 400.0);
        const auto steps = static_cast<std::size_t>(std::ceil((r_max_ * 1.001 - r_match_) / h));
        h = (r_max_ * 1.001 - r_match_) / static_cast<double>(steps);
        auto rhs = [this](double r, double f, double fp, double& df, double& dfp) {
            const double kappa = static_cast<double>(k_) * (k_ + n_ - 2);
            df = fp;
            dfp = -((n_ - 1) / r) * fp - (lambda_ - kappa / (r * r)) * f;
        };
        std::vector<double> fr = r_derivs_init();
        double r = r_match_, f = fr[0], fp = fr[1];
        mesh_r_.push_back(r);
        mesh_f_.push_back(f);
        mesh_fp_.push_back(fp);
        for (std::size_t i = 0; i < steps; ++i) {
            double k1f, k1p, k2f, k2p, k3f, k3p, k4f, k4p;
            rhs(r, f, fp, k1f, k1p);
            rhs(r + 0.5 * h, f + 0.5 * h * k1f, fp + 0.5 * h * k1p, k2f, k2p);
            rhs(r + 0.5 * h, f + 0.5 * h * k2f, fp + 0.5 * h * k2p, k3f, k3p);
            rhs(r + h, f + h * k3f, fp + h * k3p, k4f, k4p);
            f += h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
            fp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
            r += h;
            mesh_r_.push_back(r);
            mesh_f_.push_back(f);
            mesh_fp_.push_back(fp);
        }
    }
}

std::vector<double> SeriesRadialProfile::r_derivs(double r, int d) const {
    std::vector<double> out(static_cast<std::size_t>(d) + 1, 0.0);
    const double kappa = static_cast<double>(k_) * (k_ + n_ - 2);
    if (r <= r_match_ || mesh_r_.empty()) {
        // term-wise: f^{(i)} = sum_j a_j P(k+2j, i) r^{k+2j-i}
        for (std::size_t j = 0; j < a_.size(); ++j) {
            const double p = static_cast<double>(k_) + 2.0 * static_cast<double>(j);
            double fall = 1.0;  // falling factorial P(p, i)
            for (int i = 0; i <= d; ++i) {
                if (fall != 0.0)
                    out[static_cast<std::size_t>(i)] +=
                        a_[j] * fall * std::pow(r, p - static_cast<double>(i));
                fall *= (p - static_cast<double>(i));
            }
        }
        return out;
    }
    // Hermite dense output from the RK4 mesh for f and f'
    auto it = std::lower_bound(mesh_r_.begin(), mesh_r_.end(), r);
    std::size_t i1 = static_cast<std::size_t>(it - mesh_r_.begin());
    if (i1 == 0) i1 = 1;
    if (i1 >= mesh_r_.size()) i1 = mesh_r_.size() - 1;
    const std::size_t i0 = i1 - 1;
    const double r0 = mesh_r_[i0], r1 = mesh_r_[i1], hh = r1 - r0;
    const double sx = (r - r0) / hh;
    auto hermite = [&](double y0, double yp0, double y1, double yp1) {
        const double s2 = sx * sx, s3 = s2 * sx;
        return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + sx) * hh * yp0 +
               (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * hh * yp1;
    };
    auto fpp = [&](double rr, double f, double fp) {
        return -((n_ - 1) / rr) * fp - (lambda_ - kappa / (rr * rr)) * f;
    };
    const double f = hermite(mesh_f_[i0], mesh_fp_[i0], mesh_f_[i1], mesh_fp_[i1]);
    const double fp = hermite(mesh_fp_[i0], fpp(r0, mesh_f_[i0], mesh_fp_[i0]), mesh_fp_[i1],
                              fpp(r1, mesh_f_[i1], mesh_fp_[i1]));
    out[0] = f;
    if (d >= 1) out[1] = fp;
    // higher r-derivatives from the differentiated equation
    for (int j = 0; j + 2 <= d; ++j) {
        double s = 0.0;
        double fact = 1.0;  // i!
        for (int i = 0; i <= j; ++i) {
            if (i > 0) fact *= i;
            const double cfp = (n_ - 1) * ((i % 2 == 0) ? 1.0 : -1.0) * fact *
                               std::pow(r, -1.0 - i);
            s -= binomial(j, i) * cfp * out[static_cast<std::size_t>(j + 1 - i)];
            const double cf = (i == 0 ? lambda_ : 0.0) -
                              kappa * ((i % 2 == 0) ? 1.0 : -1.0) * fact * (i + 1.0) *
                                  std::pow(r, -2.0 - i);
            s -= binomial(j, i) * cf * out[static_cast<std::size_t>(j - i)];
        }
        out[static_cast<std::size_t>(j + 2)] = s;
    }
    return out;
}

double SeriesRadialProfile::value(double t, int deriv) const {
    const double r = std::exp(t);
    if (r <= r_match_ || mesh_r_.empty()) {
        // D_t^d r^p = p^d r^p, term-wise over the series
        double s = 0.0;
        for (std::size_t j = 0; j < a_.size(); ++j) {
            const double p = static_cast<double>(k_) + 2.0 * static_cast<double>(j);
            const double rp = std::exp(p * t);
            s += a_[j] * (deriv == 0 ? 1.0 : std::pow(p, deriv)) * rp;
        }
        return s;
    }
    // D_t^d f = sum_i S2(d, i) r^i f^{(i)}
    const std::vector<double> fr = r_derivs(r, deriv);
    if (deriv == 0) return fr[0];
    // Stirling numbers of the second kind
    std::vector<std::vector<double>> S(static_cast<std::size_t>(deriv) + 1,
                                       std::vector<double>(static_cast<std::size_t>(deriv) + 1, 0.0));
    S[0][0] = 1.0;
    for (int nn = 1; nn <= deriv; ++nn)
        for (int kk = 1; kk <= nn; ++kk)
            S[static_cast<std::size_t>(nn)][static_cast<std::size_t>(kk)] =
                kk * S[static_cast<std::size_t>(nn - 1)][static_cast<std::size_t>(kk)] +
                S[static_cast<std::size_t>(nn - 1)][static_cast<std::size_t>(kk - 1)];
    double s = 0.0;
    double ri = 1.0;
    for (int i = 1; i <= deriv; ++i) {
        ri *= r;
        s += S[static_cast<std::size_t>(deriv)][static_cast<std::size_t>(i)] * ri *
             fr[static_cast<std::size_t>(i)];
    }
    return s;
}

std::string SeriesRadialProfile::descriptor() const {
    return "eigen(lambda=" + fmt(lambda_) + ",k=" + std::to_string(k_) +
           ",n=" + std::to_string(n_) + ")";
}

std::vector<double> SeriesRadialProfile::r_derivs_init() const { return r_derivs(r_match_, 1); }

// -------------------------------------------------------------- SeriesOp

SeriesOpProfile::SeriesOpProfile(std::shared_ptr<const SeriesRadialProfile> base,
                                 std::vector<double> coeffs, std::string name)
    : base_(std::move(base)), c_(std::move(coeffs)), name_(std::move(name)) {
    if (c_.empty()) throw std::invalid_argument("SeriesOpProfile: empty coefficient list");
    qj_.reserve(base_->a_.size());
    for (std::size_t j = 0; j < base_->a_.size(); ++j) {
        const double p = static_cast<double>(base_->k_) + 2.0 * static_cast<double>(j);
        double q = 0.0;  // Horner; exact for the integer coefficient chains
        for (std::size_t i = c_.size(); i-- > 0;) q = q * p + c_[i];
        qj_.push_back(q);
    }
}

double SeriesOpProfile::value(double t, int deriv) const {
    const double r = std::exp(t);
    if (r <= base_->r_match_ || base_->mesh_r_.empty()) {
        double s = 0.0;
        for (std::size_t j = 0; j < qj_.size(); ++j) {
            if (qj_[j] == 0.0) continue;
            const double p = static_cast<double>(base_->k_) + 2.0 * static_cast<double>(j);
            s += base_->a_[j] * qj_[j] * (deriv == 0 ? 1.0 : std::pow(p, deriv)) *
                 std::exp(p * t);
        }
        return s;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0.0) s += c_[i] * base_->value(t, deriv + static_cast<int>(i));
    return s;
}

int SeriesOpProfile::max_deriv() const {
    return base_->max_deriv() - static_cast<int>(c_.size()) + 1;
}

}  // namespace carlab
