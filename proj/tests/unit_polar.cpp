#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "carlab/polar.hpp"
#include "carlab/solutions.hpp"
#include "carlab/util.hpp"
#include "test_support.hpp"

using namespace carlab;
using carlab::testing::shared_default_grid;

TEST_CASE("phi values, the two printed routes, and domain checks") {
    // route one: log r + log((log r)^2); route two: t + 2 log|t|
    for (double r : {0.3, 0.05, 0.01, 1e-6}) {
        const double t = std::log(r);
        const double route1 = std::log(r) + std::log(t * t);
        const double route2 = t + 2.0 * std::log(-t);
        CHECK(phi(r) == doctest::Approx(route1).epsilon(1e-14));
        CHECK(phi(r) == doctest::Approx(route2).epsilon(1e-14));
    }
    CHECK(phi(std::exp(-1.0)) == doctest::Approx(-1.0));
    CHECK(phi(0.05) == doctest::Approx(-0.801366).epsilon(1e-5));
    CHECK(phi(0.04) < phi(0.05));
    CHECK_THROWS_AS(phi(1.0), std::invalid_argument);
    CHECK_THROWS_AS(phi(0.0), std::invalid_argument);
    CHECK_THROWS_AS(phi(-0.5), std::invalid_argument);
    CHECK_THROWS_AS(phi_from_t(0.0), std::invalid_argument);
}

TEST_CASE("phi is strictly increasing below e^-e and diverges at 0") {
    double prev = phi(1e-12);
    for (double r = 2e-12; r < std::exp(-M_E); r *= 1.8) {
        CHECK(prev < phi(r));
        prev = phi(r);
    }
    CHECK(phi(1e-200) < -300.0);
}

TEST_CASE("phi_prime matches a finite difference of phi") {
    for (double r : {0.3, 0.05, 0.004}) {
        const double h = r * 1e-6;
        const double fd = (phi(r + h) - phi(r - h)) / (2 * h);
        CHECK(phi_prime(r) == doctest::Approx(fd).epsilon(1e-7));
    }
    // and the closed form 1/r + 2/(r log r)
    CHECK(phi_prime(0.05) ==
          doctest::Approx(1.0 / 0.05 + 2.0 / (0.05 * std::log(0.05))).epsilon(1e-14));
}

TEST_CASE("indicator norm on a window equals the window length") {
    // f = 1 on t in [-10, -5], p = 2, r^{-n}dx measure -> sqrt(5)
    const auto grid = RadialGrid::make(-12.0, -4.0, 1601);
    ModeFunction f;
    f.k = 0;
    f.n = 3;
    f.grid = grid;
    f.profile = std::make_shared<PowerProfile>(0.0);
    f.support_lo = -10.0;
    f.support_hi = -5.0;
    const WeightSpec w{0.0, 0, 0, 0};
    CHECK(weighted_lp_norm(f, w, 2.0, Measure::RadialQuotient).to_double() ==
          doctest::Approx(std::sqrt(5.0)).epsilon(2e-3));
    // window quadrature is exact for the analytic profile
    CHECK(weighted_lp_norm_window(f, w, 2.0, Measure::RadialQuotient, -10.0, -5.0).to_double() ==
          doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("norm homogeneity under scalar rescaling for p = 2, 4, inf") {
    const auto grid = shared_default_grid();
    const ModeFunction f = bump_mode(grid, 1, 3, -20.0, 4.0, 0.8);
    ModeFunction g = f;
    g.profile = std::make_shared<ScaledProfile>(3.0, f.profile);
    const WeightSpec w{2.0, 1, -1, 0};
    for (double p : {2.0, 4.0, kPInf}) {
        const double nf = weighted_lp_norm(f, w, p, Measure::RadialQuotient).to_double();
        const double ng = weighted_lp_norm(g, w, p, Measure::RadialQuotient).to_double();
        CHECK(ng == doctest::Approx(3.0 * nf).epsilon(1e-12));
    }
}

TEST_CASE("tau-dependence of a bump norm is pinched by the weight range") {
    const auto grid = shared_default_grid();
    const ModeFunction f = bump_mode(grid, 0, 3, -8.0, 0.7, 0.0);
    const double tau = 5.0, dtau = 2.5;
    const double n1 =
        weighted_lp_norm(f, WeightSpec{tau, 0, 0, 0}, 2.0, Measure::RadialQuotient).log();
    const double n2 =
        weighted_lp_norm(f, WeightSpec{tau + dtau, 0, 0, 0}, 2.0, Measure::RadialQuotient).log();
    // ratio must equal e^{-dtau phi(t*)} for some t* inside the support
    const double lo = -dtau * phi_from_t(-7.3);  // phi increasing: max at right edge
    const double hi = -dtau * phi_from_t(-8.7);
    CHECK(n2 - n1 <= std::max(lo, hi) + 1e-9);
    CHECK(n2 - n1 >= std::min(lo, hi) - 1e-9);
}

TEST_CASE("plain measure differs from the quotient measure by e^{nt}") {
    const auto grid = shared_default_grid();
    const ModeFunction f = bump_mode(grid, 0, 3, -15.0, 2.0, 0.0);
    // ||f||_{L^2(dx)}^2 = int f^2 e^{nt} dt: compare with a manually shifted profile
    ModeFunction g = f;
    g.profile = std::make_shared<ExpShiftProfile>(1.5, f.profile);  // e^{(n/2) t} f
    const double plain =
        weighted_lp_norm(f, WeightSpec{0, 0, 0, 0}, 2.0, Measure::Plain).to_double();
    const double quotient =
        weighted_lp_norm(g, WeightSpec{0, 0, 0, 0}, 2.0, Measure::RadialQuotient).to_double();
    CHECK(plain == doctest::Approx(quotient).epsilon(1e-12));
}

TEST_CASE("monte-carlo oracle recovers the per-mode integral times the sphere area") {
    // int |f|^2 r^{-n} dx over an annulus in R^3 for radial f equals
    // |S^2| * int f^2 dt; the per-mode convention drops the 4 pi factor
    const auto grid = shared_default_grid();
    ModeFunction f;
    f.k = 0;
    f.n = 3;
    f.grid = grid;
    f.profile = std::make_shared<PowerProfile>(1.0);  // f = r
    const double r1 = 0.01, r2 = 0.04;
    f.support_lo = std::log(r1);
    f.support_hi = std::log(r2);
    const double per_mode_sq =
        std::pow(weighted_lp_norm(f, WeightSpec{0, 0, 0, 0}, 2.0, Measure::RadialQuotient)
                     .to_double(),
                 2);
    Rng rng(77);
    const std::size_t N = 400000;
    double acc = 0.0;
    std::size_t kept = 0;
    const double box = 2.0 * r2;
    for (std::size_t i = 0; i < N; ++i) {
        const double x = rng.uniform(-r2, r2), y = rng.uniform(-r2, r2),
                     z = rng.uniform(-r2, r2);
        const double r = std::sqrt(x * x + y * y + z * z);
        if (r < r1 || r > r2) continue;
        ++kept;
        acc += std::pow(r, 2.0) * std::pow(r, -3.0);  // f^2 r^{-n}
    }
    const double mc = acc * box * box * box / static_cast<double>(N);
    CHECK(kept > 1000);
    CHECK(mc == doctest::Approx(4.0 * M_PI * per_mode_sq).epsilon(0.01));
}

TEST_CASE("quadrature convergence: grid doubling moves a bump norm below tolerance") {
    const auto g1 = RadialGrid::make(-40.0, -3.0, 2048);
    const auto g2 = g1->refined(2);
    ModeFunction f1 = bump_mode(g1, 2, 3, -22.0, 5.0, 1.1);
    ModeFunction f2 = f1;
    f2.grid = g2;
    const WeightSpec w{30.0, 0, 0, -1};
    const double n1 = weighted_lp_norm(f1, w, 2.0, Measure::RadialQuotient).log();
    const double n2 = weighted_lp_norm(f2, w, 2.0, Measure::RadialQuotient).log();
    CHECK(std::abs(n1 - n2) < 1e-8);
}

TEST_CASE("angular eigenvalue table") {
    CHECK(angular_eigenvalue(0, 3) == 0.0);
    CHECK(angular_eigenvalue(1, 3) == 2.0);
    CHECK(angular_eigenvalue(3, 5) == 18.0);
    CHECK_THROWS_AS(angular_eigenvalue(-1, 3), std::invalid_argument);
    CHECK_THROWS_AS(angular_eigenvalue(2, 1), std::invalid_argument);
}

TEST_CASE("mode laplacian on powers follows the exact rule") {
    const auto grid = shared_default_grid();
    // u = r^2, k = 0, n = 3: profile of r^2 Delta u = 6 r^2 (2n with n=3)
    const ModeFunction u2 = polyharmonic_power(2.0, 0, 3, 1, grid).u;
    const ModeFunction l2 = apply_laplacian_mode(u2);
    const double t = -5.0;
    CHECK(l2.value(t) == doctest::Approx(6.0 * std::exp(2.0 * t)).epsilon(1e-13));
    // harmonic power: r^k on degree k annihilates
    const ModeFunction uk = polyharmonic_power(3.0, 3, 4, 1, grid).u;
    CHECK(apply_laplacian_mode(uk).value(-6.0) == doctest::Approx(0.0).epsilon(1e-14));
    // r^4: a(a+n-2) = 4*5 = 20
    const ModeFunction u4 = polyharmonic_power(4.0, 0, 3, 1, grid).u;
    CHECK(apply_laplacian_mode(u4).value(t) ==
          doctest::Approx(20.0 * std::exp(4.0 * t)).epsilon(1e-13));
}

TEST_CASE("polyharmonic application: exact chains and the m = 1 reduction") {
    const auto grid = shared_default_grid();
    const ModeFunction u2 = polyharmonic_power(2.0, 0, 3, 1, grid).u;
    CHECK(apply_polyharmonic_mode(u2, 2).value(-5.0) == doctest::Approx(0.0).epsilon(1e-12));
    const ModeFunction u4 = polyharmonic_power(4.0, 0, 3, 1, grid).u;
    CHECK(apply_polyharmonic_mode(u4, 2).value(-5.0) ==
          doctest::Approx(120.0 * std::exp(4.0 * -5.0)).epsilon(1e-12));
    // m = 1 polyharmonic coefficients equal the laplacian coefficients exactly
    CHECK(polyharmonic_mode_coeffs(2, 4, 1) == laplacian_mode_coeffs(2, 4));
}

TEST_CASE("grid-stencil polyharmonic application matches the analytic route") {
    const auto grid = shared_default_grid();
    const ModeFunction u = bump_mode(grid, 1, 3, -20.0, 4.0, 0.9);
    ModeFunction sampled = u;
    sampled.profile = GridProfile::sample(*u.profile, grid, 8, "sampled_bump");
    const ModeFunction exact = apply_polyharmonic_mode(u, 2);
    const ModeFunction viagrid = apply_polyharmonic_mode(sampled, 2);
    double worst = 0.0, scale = 0.0;
    for (double t : grid->samples()) {
        if (t < -23.0 || t > -17.0) continue;  // interior of the support
        scale = std::max(scale, std::abs(exact.value(t)));
    }
    for (double t : grid->samples()) {
        if (t < -23.0 || t > -17.0) continue;
        worst = std::max(worst, std::abs(exact.value(t) - viagrid.value(t)));
    }
    CHECK(worst / scale < 1e-6);
}

TEST_CASE("stencil margin violations are reported") {
    const auto grid = RadialGrid::make(-10.0, -5.0, 101);
    std::vector<double> vals(grid->size(), 1.0);
    GridProfile gp(grid, vals, 8, "flat");
    CHECK_THROWS_AS(gp.value(grid->samples()[1], 2), std::invalid_argument);
    CHECK_NOTHROW(gp.value(grid->samples()[50], 2));
    CHECK_THROWS_AS(gp.value(-7.003, 0), std::invalid_argument);  // off-node
}

TEST_CASE("bump profile: center value, compact support, edge flatness") {
    BumpProfile b(-10.0, 2.0, 0.0);
    CHECK(b.value(-10.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(b.value(-12.0) == 0.0);
    CHECK(b.value(-8.0) == 0.0);
    CHECK(b.value(-14.0) == 0.0);
    for (int d = 1; d <= 6; ++d) {
        CHECK(std::abs(b.value(-11.9999, d)) < 1e-10);
        CHECK(std::abs(b.value(-8.0001, d)) < 1e-10);
    }
    // analytic derivatives against central differences
    BumpProfile bo(-10.0, 2.0, 1.3);
    const double h = 1e-5;
    for (double t : {-10.7, -9.4}) {
        const double fd = (bo.value(t + h) - bo.value(t - h)) / (2 * h);
        CHECK(bo.value(t, 1) == doctest::Approx(fd).epsilon(1e-7));
        const double fd2 = (bo.value(t + h) - 2 * bo.value(t) + bo.value(t - h)) / (h * h);
        CHECK(bo.value(t, 2) == doctest::Approx(fd2).epsilon(1e-5));
    }
}

TEST_CASE("profile csv carries the descriptor in the header") {
    const auto grid = RadialGrid::make(-8.0, -4.0, 16);
    const ModeFunction f = bump_mode(grid, 0, 3, -6.0, 1.0, 0.0);
    const std::string csv = profile_csv(f);
    CHECK(csv.rfind("t,bump", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);  // header + 16 samples
}
