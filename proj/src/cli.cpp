#include "carlab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "carlab/carleman_checks.hpp"
#include "carlab/config.hpp"
#include "carlab/conjugation.hpp"
#include "carlab/csv.hpp"
#include "carlab/solutions.hpp"
#include "carlab/ucp.hpp"
#include "carlab/util.hpp"

namespace carlab {

namespace {

ProblemParams read_params(const Config& cfg) {
    ProblemParams p;
    p.n = static_cast<int>(cfg.get_int("params", "n"));
    p.m = static_cast<int>(cfg.get_int("params", "m"));
    p.alpha0 = static_cast<int>(cfg.get_int("params", "alpha0", 0));
    p.s = cfg.get_extrat("params", "s");
    if (cfg.has("params", "eps")) {
        const ExtRat e = cfg.get_extrat("params", "eps");
        p.eps = e.finite();
    }
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("params", e.what());
    }
    return p;
}

std::shared_ptr<const RadialGrid> read_grid(const Config& cfg) {
    const double t_min = cfg.get_double("grid", "t_min", -40.0);
    const double t_max = cfg.get_double("grid", "t_max", -3.0);
    const auto points = static_cast<std::size_t>(cfg.get_int("grid", "points", 4096));
    try {
        return RadialGrid::make(t_min, t_max, points);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("grid", e.what());
    }
}

std::uint64_t read_seed(const Config& cfg) {
    if (const char* env = std::getenv("CARLEMAN_LAB_SEED")) return std::strtoull(env, nullptr, 10);
    return static_cast<std::uint64_t>(cfg.get_int("output", "seed", 12345));
}

/// bump family: every configured mode crossed with the (center, width,
/// oscillation) shape triples
std::vector<ModeFunction> read_family(const Config& cfg, std::shared_ptr<const RadialGrid> grid,
                                      int n) {
    std::vector<long long> modes{0, 1, 2, 3};
    if (cfg.has("family", "modes")) modes = cfg.get_int_list("family", "modes");
    std::vector<double> centers{-25.0, -20.0, -30.0};
    std::vector<double> widths{5.0, 8.0, 6.0};
    std::vector<double> etas{0.0, 0.7, 1.5};
    if (cfg.has("family", "centers")) centers = cfg.get_list("family", "centers");
    if (cfg.has("family", "widths")) widths = cfg.get_list("family", "widths");
    if (cfg.has("family", "oscillations")) etas = cfg.get_list("family", "oscillations");
    if (widths.size() != centers.size() || etas.size() != centers.size())
        throw ConfigError("family", "centers, widths and oscillations must have equal lengths");
    std::vector<ModeFunction> out;
    for (long long k : modes)
        for (std::size_t i = 0; i < centers.size(); ++i) {
            try {
                out.push_back(
                    bump_mode(grid, static_cast<int>(k), n, centers[i], widths[i], etas[i]));
            } catch (const std::invalid_argument& e) {
                throw ConfigError("family", e.what());
            }
        }
    return out;
}

std::vector<double> read_taus(const Config& cfg) {
    if (cfg.has("sweep", "taus")) return cfg.get_list("sweep", "taus");
    const double lo = cfg.get_double("sweep", "tau_min", 20.0);
    const double hi = cfg.get_double("sweep", "tau_max", 320.0);
    const auto per_octave = static_cast<int>(cfg.get_int("sweep", "points_per_octave", 2));
    if (!(lo > 0.0 && hi > lo)) throw ConfigError("sweep", "need 0 < tau_min < tau_max");
    std::vector<double> out;
    const double step = std::pow(2.0, 1.0 / per_octave);
    for (double t = lo; t <= hi * (1.0 + 1e-12); t *= step) out.push_back(t);
    return out;
}

std::string out_path(const CliOptions& opts, const std::string& name) {
    std::filesystem::create_directories(opts.out_dir);
    return (std::filesystem::path(opts.out_dir) / name).string();
}

// ------------------------------------------------------------- exponents

int cmd_exponents(const Config& cfg, const CliOptions& opts) {
    const ProblemParams p = read_params(cfg);
    const ExponentTable t = exponent_table(p);
    const ThetaInfinity th = theta_infinity(p);
    CsvFile csv(out_path(opts, "exponents.csv"));
    csv.header({"tag", "name", "rational", "double", "passed"});
    const std::string cs = case_name(t.case_tag);
    for (const auto& [a, mu] : t.mu)
        csv.row({"thm1." + cs, "mu|" + std::to_string(a), mu.str(), num_str(mu.to_double()), "1"});
    csv.row({"thm1." + cs, "nu", t.nu.str(), num_str(t.nu.to_double()), "1"});
    for (const auto& [a, b] : t.beta_alpha)
        csv.row({"thm3." + cs, "beta|" + std::to_string(a), b.str(), num_str(b.to_double()), "1"});
    csv.row({"thm3." + cs, "beta0", t.beta0.str(), num_str(t.beta0.to_double()), "1"});
    csv.row({"thm3." + cs, "p", t.p.str(), num_str(t.p.to_double()), "1"});
    csv.row({"thm2." + cs, "theta", th.theta.str(), num_str(th.theta.to_double()), "1"});
    csv.row({"thm2." + cs, "alpha0_threshold", th.threshold.str(),
             num_str(th.threshold.to_double()), "1"});
    csv.row({"thm2." + cs, "branch", th.nu_branch ? "nu" : "drift", "", "1"});

    bool ok = true;
    if (t.case_tag == Case::I) {
        // beta0 printed two ways must agree exactly at p = p*(s)
        const Rat alt = mobius(Rat(3 * p.m), Rat(-2 * p.n), Rat(2), Rat(0), p.s);
        const bool same = (alt == t.beta0);
        ok = ok && same;
        csv.row({"thm4.I", "beta0_identity", alt.str(), num_str(alt.to_double()),
                 same ? "1" : "0"});
    }
    // consistency of the scaled-norm exponent with theta
    const InfinityConsistency ic = infinity_consistency(p);
    ok = ok && ic.equal;
    csv.row({"thm2." + cs, "scaled_exponent", ic.order_bound_exponent.str(),
             num_str(ic.order_bound_exponent.to_double()), ic.equal ? "1" : "0"});
    std::cout << "exponents: case " << cs << " nu=" << t.nu.str() << " theta=" << th.theta.str()
              << "\n";
    if (!ok) std::cerr << "failing report: " << out_path(opts, "exponents.csv") << "\n";
    return ok ? 0 : 1;
}

// ------------------------------------------------------------ ibp-verify

int cmd_ibp_verify(const Config& cfg, const CliOptions& opts) {
    const auto grid = read_grid(cfg);
    const int n = static_cast<int>(cfg.get_int("conj", "n", 3));
    const int sigma1 = static_cast<int>(cfg.get_int("conj", "sigma1", 1));
    const int sigma2 = static_cast<int>(cfg.get_int("conj", "sigma2", 2));
    const double tol = cfg.get_double("conj", "tol", 1e-6);
    std::vector<double> taus{5.0, 20.0, 80.0};
    if (cfg.has("sweep", "taus")) taus = cfg.get_list("sweep", "taus");
    std::vector<long long> modes{0, 1, 3};
    if (cfg.has("conj", "modes")) modes = cfg.get_int_list("conj", "modes");
    const auto nbumps = static_cast<std::size_t>(cfg.get_int("conj", "bumps", 5));
    Rng rng(read_seed(cfg));
    std::vector<std::array<double, 3>> shapes;
    for (std::size_t i = 0; i < nbumps; ++i)
        shapes.push_back({rng.uniform(-30.0, -16.0), rng.uniform(2.0, 5.0),
                          rng.uniform() < 0.5 ? 0.0 : rng.uniform(0.5, 1.5)});

    struct Job {
        std::string id;
        double tau;
        int k;
        std::array<double, 3> shape;
    };
    std::vector<Job> jobs;
    for (const std::string& id : ibp_catalog())
        for (double tau : taus)
            for (long long k : modes)
                for (const auto& sh : shapes)
                    jobs.push_back({id, tau, static_cast<int>(k), sh});

    std::vector<IbpResult> results(jobs.size());
    parallel_for(
        jobs.size(),
        [&](std::size_t i) {
            const Job& j = jobs[i];
            ConjugatedOperator op;
            op.tau = j.tau;
            op.sigma1 = sigma1;
            op.sigma2 = sigma2;
            op.n = n;
            op.k = j.k;
            const ModeFunction v = bump_mode(grid, j.k, n, j.shape[0], j.shape[1], j.shape[2]);
            results[i] = ibp_identity(j.id, v, op);
        },
        opts.jobs);

    CsvFile csv(out_path(opts, "ibp.csv"));
    csv.header({"tag", "identity_id", "tau", "k", "lhs", "rhs", "gap", "passed"});
    bool ok = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const bool pass = results[i].gap <= tol && results[i].envelope_ok;
        ok = ok && pass;
        worst = std::max(worst, results[i].gap);
        csv.row({"eq" + jobs[i].id, jobs[i].id, num_str(jobs[i].tau), std::to_string(jobs[i].k),
                 num_str(results[i].lhs), num_str(results[i].rhs), num_str(results[i].gap),
                 pass ? "1" : "0"});
    }
    std::cout << "ibp-verify: " << jobs.size() << " checks, worst gap " << num_str(worst) << "\n";
    if (!ok) std::cerr << "failing report: " << out_path(opts, "ibp.csv") << "\n";
    return ok ? 0 : 1;
}

// -------------------------------------------------------- carleman-check

int cmd_carleman_check(const Config& cfg, const CliOptions& opts) {
    const std::string kind = cfg.get_str("check", "kind", "l2");
    const auto grid = read_grid(cfg);
    const std::vector<double> taus = read_taus(cfg);

    if (kind == "step") {
        const int n = static_cast<int>(cfg.get_int("check", "n", 3));
        const int sigma1 = static_cast<int>(cfg.get_int("check", "sigma1", 0));
        const int sigma2 = static_cast<int>(cfg.get_int("check", "sigma2", 0));
        const CheckReport rep =
            step_carleman_check(read_family(cfg, grid, n), sigma1, sigma2, taus);
        write_check_report_csv(out_path(opts, "carleman_step.csv"), rep);
        std::cout << "carleman-check step: C=" << num_str(rep.fitted_C) << " " << rep.note
                  << "\n";
        if (!rep.passed) std::cerr << "failing report: " << out_path(opts, "carleman_step.csv")
                                   << "\n";
        return rep.passed ? 0 : 1;
    }

    const ProblemParams p = read_params(cfg);
    const std::vector<ModeFunction> family = read_family(cfg, grid, p.n);

    if (kind == "l2") {
        const int sigma1 = static_cast<int>(cfg.get_int("check", "sigma1", 0));
        const int sigma2 = static_cast<int>(cfg.get_int("check", "sigma2", 0));
        const CheckReport rep = l2_carleman_check(family, p, sigma1, sigma2, taus);
        write_check_report_csv(out_path(opts, "carleman_l2.csv"), rep);
        std::cout << "carleman-check l2: C=" << num_str(rep.fitted_C) << " " << rep.note << "\n";
        if (!rep.passed) std::cerr << "failing report: " << out_path(opts, "carleman_l2.csv")
                                   << "\n";
        return rep.passed ? 0 : 1;
    }
    if (kind == "lp") {
        std::optional<ExtRat> pexp;
        if (cfg.has("check", "p")) pexp = cfg.get_extrat("check", "p");
        const CheckReport rep = lp_carleman_check(family, p, taus, pexp);
        write_check_report_csv(out_path(opts, "carleman_lp.csv"), rep);
        std::cout << "carleman-check lp: C=" << num_str(rep.fitted_C) << " " << rep.note << "\n";
        if (!rep.passed) std::cerr << "failing report: " << out_path(opts, "carleman_lp.csv")
                                   << "\n";
        return rep.passed ? 0 : 1;
    }
    if (kind == "potential") {
        const double floor_frac = cfg.get_double("potential", "floor", 1e-6);
        const double C0 = cfg.get_double("potential", "C0", 0.05);
        const bool enforce = cfg.get_int("potential", "enforce_threshold", 1) != 0;
        const ModeFunction& gen = family.front();
        const SampledPotential V0 = manufactured(gen, p.m, {}, floor_frac, p.s);
        PotentialNorms norms;
        norms.s = p.s;
        norms.A0 = V0.Ls_norm;
        const CheckReport rep =
            potential_carleman_check(family, p, norms, &V0, {}, taus, C0, enforce);
        write_check_report_csv(out_path(opts, "carleman_potential.csv"), rep);
        std::cout << "carleman-check potential: C=" << num_str(rep.fitted_C) << " A0="
                  << num_str(V0.Ls_norm) << "\n";
        if (!rep.passed)
            std::cerr << "failing report: " << out_path(opts, "carleman_potential.csv") << "\n";
        return rep.passed ? 0 : 1;
    }
    if (kind == "iterate") {
        const int sigma1 = static_cast<int>(cfg.get_int("check", "sigma1", 0));
        const int sigma2 = static_cast<int>(cfg.get_int("check", "sigma2", 0));
        CsvFile csv(out_path(opts, "carleman_iterate.csv"));
        csv.header({"tag", "tau", "member", "direct_log10", "composed_log10", "ratio", "passed"});
        bool ok = true;
        for (std::size_t i = 0; i < family.size(); ++i) {
            const auto pts = iterate_compose_check(family[i], sigma1, sigma2, taus);
            std::vector<SweepPoint> sweep;
            for (const auto& pt : pts) sweep.push_back({pt.tau, pt.ratio});
            const double drift = max_doubling_drift(sweep);
            const bool pass = drift < 2.0;
            ok = ok && pass;
            for (const auto& pt : pts)
                csv.row({"eq3.40", num_str(pt.tau), std::to_string(i), num_str(pt.direct_log10),
                         num_str(pt.composed_log10), num_str(pt.ratio), pass ? "1" : "0"});
        }
        std::cout << "carleman-check iterate: " << (ok ? "bounded" : "unbounded") << "\n";
        if (!ok) std::cerr << "failing report: " << out_path(opts, "carleman_iterate.csv") << "\n";
        return ok ? 0 : 1;
    }
    throw ConfigError("check.kind", "unknown kind '" + kind + "'");
}

// ------------------------------------------------------------ three-ball

int cmd_three_ball(const Config& cfg, const CliOptions& opts) {
    const auto grid = read_grid(cfg);
    const ProblemParams p = read_params(cfg);
    const double C0 = cfg.get_double("threeball", "C0", 1.0);
    PotentialNorms norms;
    norms.s = p.s;

    std::vector<ModeFunction> family;
    std::vector<std::string> names;
    std::vector<long long> harmonics{0, 1, 2, 3, 4, 5};
    if (cfg.has("threeball", "harmonic_k")) harmonics = cfg.get_int_list("threeball", "harmonic_k");
    for (long long k : harmonics) {
        family.push_back(polyharmonic_power(static_cast<double>(k), static_cast<int>(k), p.n,
                                            p.m, grid)
                             .u);
        names.push_back("harmonic_k" + std::to_string(k));
    }
    if (cfg.has("threeball", "eigen_lambdas"))
        for (double lam : cfg.get_list("threeball", "eigen_lambdas")) {
            const int k = static_cast<int>(std::floor(std::sqrt(lam)));
            family.push_back(eigen_solution(lam, k, p.n, p.m, grid).u);
            names.push_back("eigen_l" + num_str(lam));
        }

    ThreeBallConfig tb;
    if (cfg.has("threeball", "r")) {
        tb = ThreeBallConfig::from_small_radius(cfg.get_double("threeball", "r"),
                                                1.0 + norms.A0);
    } else {
        tb = ThreeBallConfig::from_radii(cfg.get_double("threeball", "r0", 2e-4),
                                         cfg.get_double("threeball", "r1", 1.6e-3),
                                         cfg.get_double("threeball", "R1", 4e-3), 1.0 + norms.A0);
    }
    const CheckReport rep = three_ball_check(family, norms, tb, p, C0);
    CsvFile csv(out_path(opts, "three_ball.csv"));
    csv.header({"tag", "member", "family", "sup_mid_log10", "rhs_log10", "ratio", "passed"});
    for (std::size_t i = 0; i < rep.rows.size(); ++i)
        csv.row({"eq4.25", std::to_string(i), names[i], num_str(rep.rows[i].lhs_total_log10),
                 num_str(rep.rows[i].rhs_log10), num_str(rep.rows[i].ratio),
                 rep.passed ? "1" : "0"});

    // interpolation exponent on random admissible triples
    Rng rng(read_seed(cfg));
    const auto triples = static_cast<std::size_t>(cfg.get_int("threeball", "random_triples", 1000));
    bool k0_ok = true;
    double k0_min = 1.0, k0_max = 0.0;
    for (std::size_t i = 0; i < triples; ++i) {
        const double R1 = std::exp(rng.uniform(-9.0, -3.5));
        const double r1 = 0.5 * R1 * rng.uniform(0.05, 0.95);
        const double r0 = r1 * rng.uniform(0.01, 0.9);
        const double k0 = k0_compute(r0, r1, R1);
        k0_ok = k0_ok && k0 > 0.0 && k0 < 1.0;
        k0_min = std::min(k0_min, k0);
        k0_max = std::max(k0_max, k0);
    }
    csv.row({"lem4.k0", "", "random_triples=" + std::to_string(triples), num_str(k0_min),
             num_str(k0_max), "", k0_ok ? "1" : "0"});

    const bool ok = rep.passed && k0_ok;
    std::cout << "three-ball: fitted C=" << num_str(rep.fitted_C) << " k0 in [" << num_str(k0_min)
              << ", " << num_str(k0_max) << "]\n";
    if (!ok) std::cerr << "failing report: " << out_path(opts, "three_ball.csv") << "\n";
    return ok ? 0 : 1;
}

// -------------------------------------------------------- vanishing-order

int cmd_vanishing_order(const Config& cfg, const CliOptions& opts) {
    const auto grid = read_grid(cfg);
    const ProblemParams p = read_params(cfg);
    const bool svg = cfg.get_int("order", "svg", 0) != 0;

    std::vector<double> radii;
    {
        const double t_lo = cfg.get_double("order", "t_lo", -9.0);
        const double t_hi = cfg.get_double("order", "t_hi", -4.0);
        const auto count = static_cast<int>(cfg.get_int("order", "radii", 12));
        for (int i = 0; i < count; ++i)
            radii.push_back(std::exp(t_lo + (t_hi - t_lo) * i / (count - 1)));
    }

    CsvFile csv(out_path(opts, "vanishing_order.csv"));
    csv.header({"tag", "family", "lambda_or_k", "measured_order", "bound", "C_fit", "passed"});
    bool ok = true;
    const double tol = cfg.get_double("order", "tol", 0.05);

    std::vector<long long> harmonics{0, 1, 2, 3, 4, 5, 6};
    if (cfg.has("order", "harmonic_k")) harmonics = cfg.get_int_list("order", "harmonic_k");
    for (long long k : harmonics) {
        const ModeFunction u =
            polyharmonic_power(static_cast<double>(k), static_cast<int>(k), p.n, p.m, grid).u;
        const double measured = vanishing_order_fit(u, radii);
        const bool pass = std::abs(measured - static_cast<double>(k)) <= tol;
        ok = ok && pass;
        csv.row({"thm1.order", "harmonic", std::to_string(k), num_str(measured),
                 std::to_string(k), "", pass ? "1" : "0"});
        if (svg) {
            std::vector<double> sups;
            for (double r : radii) sups.push_back(sup_ball(u, r));
            write_loglog_svg(out_path(opts, "order_harmonic_k" + std::to_string(k) + ".svg"),
                             "sup_ball vs r, harmonic k=" + std::to_string(k), radii, sups);
        }
    }
    if (cfg.has("order", "eigen_lambdas")) {
        const double C = cfg.get_double("order", "C", 0.0);
        for (double lam : cfg.get_list("order", "eigen_lambdas")) {
            const int k = static_cast<int>(std::floor(std::sqrt(lam)));
            const EigenSolution es = eigen_solution(lam, k, p.n, p.m, grid);
            PotentialNorms norms;
            norms.s = p.s;
            norms.A0 = es.V0_Linf;
            const double measured = vanishing_order_fit(es.u, radii);
            double bound = 0.0;
            bool pass = std::abs(measured - k) <= tol;
            if (C > 0.0) {
                bound = order_bound(p, norms, C);
                pass = pass && measured <= bound;
            }
            ok = ok && pass;
            csv.row({"thm1.order", "eigen", num_str(lam), num_str(measured), num_str(bound), "",
                     pass ? "1" : "0"});
            if (svg) {
                std::vector<double> sups;
                for (double r : radii) sups.push_back(sup_ball(es.u, r));
                write_loglog_svg(out_path(opts, "order_eigen_l" + num_str(lam) + ".svg"),
                                 "sup_ball vs r, eigen lambda=" + num_str(lam), radii, sups);
            }
        }
    }
    std::cout << "vanishing-order: " << (ok ? "all within tolerance" : "failures") << "\n";
    if (!ok) std::cerr << "failing report: " << out_path(opts, "vanishing_order.csv") << "\n";
    return ok ? 0 : 1;
}

// ----------------------------------------------------------- caccioppoli

int cmd_caccioppoli(const Config& cfg, const CliOptions& opts) {
    const auto grid = read_grid(cfg);
    const ProblemParams p = read_params(cfg);
    const double R0 = cfg.get_double("cacc", "R0", 0.04);
    const double c1 = cfg.get_double("cacc", "c1", 1.0);
    const double c2 = cfg.get_double("cacc", "c2", 0.75);
    const double c3 = cfg.get_double("cacc", "c3", 0.5);
    const double c4 = cfg.get_double("cacc", "c4", 0.25);

    CsvFile csv(out_path(opts, "caccioppoli.csv"));
    csv.header({"tag", "family", "lambda_or_k", "ratio", "passed"});
    bool ok = true;
    std::vector<long long> harmonics{0, 1, 2, 3};
    if (cfg.has("cacc", "harmonic_k")) harmonics = cfg.get_int_list("cacc", "harmonic_k");
    for (long long k : harmonics) {
        const ModeFunction u =
            polyharmonic_power(static_cast<double>(k), static_cast<int>(k), p.n, p.m, grid).u;
        PotentialNorms norms;
        norms.s = p.s;
        const CheckReport rep = caccioppoli_check(u, norms, p.m, R0, c1, c2, c3, c4);
        ok = ok && rep.passed;
        csv.row({"eq4.1", "harmonic", std::to_string(k), num_str(rep.fitted_C),
                 rep.passed ? "1" : "0"});
    }
    if (cfg.has("cacc", "eigen_lambdas"))
        for (double lam : cfg.get_list("cacc", "eigen_lambdas")) {
            const int k = static_cast<int>(std::floor(std::sqrt(lam)));
            const EigenSolution es = eigen_solution(lam, k, p.n, p.m, grid);
            PotentialNorms norms;
            norms.s = p.s;
            norms.A0 = es.V0_Linf;
            const CheckReport rep = caccioppoli_check(es.u, norms, p.m, R0, c1, c2, c3, c4);
            ok = ok && rep.passed;
            csv.row({"eq4.1", "eigen", num_str(lam), num_str(rep.fitted_C),
                     rep.passed ? "1" : "0"});
        }
    std::cout << "caccioppoli: " << (ok ? "ratios finite" : "failure") << "\n";
    if (!ok) std::cerr << "failing report: " << out_path(opts, "caccioppoli.csv") << "\n";
    return ok ? 0 : 1;
}

// -------------------------------------------------------------- infinity

int cmd_infinity(const Config& cfg, const CliOptions& opts) {
    const ProblemParams p = read_params(cfg);
    PotentialNorms norms;
    norms.s = p.s;
    norms.A0 = cfg.get_double("infinity", "A0", 1.0);
    for (int a = 1; a <= p.alpha0; ++a) norms.A_alpha[a] = 1.0;
    const double C = cfg.get_double("infinity", "C", 1.0);
    const double c = cfg.get_double("infinity", "c", 1.0);
    std::vector<double> Rs{1.0, 10.0, 100.0, 1000.0};
    if (cfg.has("infinity", "R")) Rs = cfg.get_list("infinity", "R");

    const InfinityConsistency ic = infinity_consistency(p);
    CsvFile csv(out_path(opts, "infinity.csv"));
    csv.header({"tag", "R", "bound_log10", "theta", "passed"});
    const std::string tag = "thm2." + case_name(p.case_tag());
    for (double R : Rs) {
        const LogVal b = infinity_bound(R, p, norms, C, c);
        csv.row({tag, num_str(R), num_str(b.log10()), ic.theta.str(), ic.equal ? "1" : "0"});
    }
    std::cout << "infinity: theta=" << ic.theta.str() << " consistent="
              << (ic.equal ? "yes" : "NO") << "\n";
    if (!ic.equal) std::cerr << "failing report: " << out_path(opts, "infinity.csv") << "\n";
    return ic.equal ? 0 : 1;
}

// ---------------------------------------------------------------- report

int cmd_report(const CliOptions& opts) {
    const std::string table =
        summarize_csv_dir(opts.out_dir, out_path(opts, "summary.csv"));
    std::cout << table;
    // nonzero when any aggregated row failed
    std::ifstream in(out_path(opts, "summary.csv"));
    std::string line;
    std::getline(in, line);
    bool ok = true;
    while (std::getline(in, line)) {
        const auto last = line.rfind(',');
        if (last != std::string::npos && line.substr(last + 1) != "0") ok = false;
    }
    return ok ? 0 : 1;
}

}  // namespace

int run_command(const CliOptions& opts) {
    try {
        if (opts.command == "report") return cmd_report(opts);
        const Config cfg = Config::parse_file(opts.config_path);
        if (opts.command == "exponents") return cmd_exponents(cfg, opts);
        if (opts.command == "ibp-verify") return cmd_ibp_verify(cfg, opts);
        if (opts.command == "carleman-check") return cmd_carleman_check(cfg, opts);
        if (opts.command == "three-ball") return cmd_three_ball(cfg, opts);
        if (opts.command == "vanishing-order") return cmd_vanishing_order(cfg, opts);
        if (opts.command == "caccioppoli") return cmd_caccioppoli(cfg, opts);
        if (opts.command == "infinity") return cmd_infinity(cfg, opts);
        std::cerr << "unknown command: " << opts.command << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace carlab
