#include "randq/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "randq/baselines.hpp"
#include "randq/catalog.hpp"
#include "randq/experiment.hpp"
#include "randq/kl.hpp"
#include "randq/parallel.hpp"
#include "randq/quadrature.hpp"

namespace randq {

namespace {

constexpr double kPi = std::numbers::pi;
const QaeOptions kAnalytic{Backend::analytic};

std::string fmt(const char* format, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

BooleanTable table_with_ones(std::uint64_t n, std::uint64_t ones, Rng& rng)
{
    std::vector<std::uint8_t> bits(n, 0);
    std::fill_n(bits.begin(), ones, std::uint8_t{1});
    for (std::uint64_t i = n - 1; i > 0; --i) std::swap(bits[i], bits[rng.uniform_index(i + 1)]);
    return BooleanTable(std::move(bits));
}

ExperimentResult run_config(ExperimentConfig c, int workers)
{
    if (!c.seed) c.seed = 20240601;
    return run_experiment(c, workers);
}

// 1. statevector circuit against the closed-form outcome law
AcceptanceResult backend_equivalence(int)
{
    AcceptanceResult r{1, "backend equivalence", false, {}};
    Rng rng(1001);
    double worst = 0.0;
    int circuits = 0;
    auto compare = [&](const BooleanTable& table, int t) {
        BitQueryOracle q = BitQueryOracle::boolean(table);
        const double tv = total_variation(qae_circuit_distribution(q, t), qae_exact_distribution(table.mean(), t));
        worst = std::max(worst, tv);
        ++circuits;
    };
    for (int t = 2; t <= 5; ++t) {
        // N = 8: every table; the law depends on f only through its count of
        // ones, so larger N cover every count with random placements
        for (unsigned mask = 0; mask < 256; ++mask) {
            std::vector<std::uint8_t> bits(8);
            for (int j = 0; j < 8; ++j) bits[j] = (mask >> j) & 1U;
            compare(BooleanTable(bits), t);
        }
        for (const auto& [n, placements] : {std::pair<std::uint64_t, int>{16, 4}, {64, 2}}) {
            for (std::uint64_t k = 0; k <= n; ++k) {
                for (int p = 0; p < placements; ++p) compare(table_with_ones(n, k, rng), t);
            }
        }
    }
    r.passed = worst <= 1e-9;
    r.detail = "max total variation " + fmt("%.2e", worst) + " over " + std::to_string(circuits) +
               " circuits (tolerance 1e-9)";
    return r;
}

// 2. exact worst-case L2 error against the budget
AcceptanceResult query_rate(int)
{
    AcceptanceResult r{2, "Boolean summation query rate", false, {}};
    const int grid = 2048;
    const int max_t = phase_qubits_for_budget(1024);
    std::vector<double> sup(max_t + 1, 0.0);
    for (int t = 1; t <= max_t; ++t) {
        for (int i = 0; i <= grid; ++i) sup[t] = std::max(sup[t], median_l2_error(static_cast<double>(i) / grid, t));
    }
    std::vector<double> budgets;
    std::vector<double> errors;
    std::vector<double> pow2_budgets;
    std::vector<double> pow2_errors;
    for (std::uint64_t n = 16; n <= 1024; ++n) {
        const double e = sup[phase_qubits_for_budget(n)];
        budgets.push_back(static_cast<double>(n));
        errors.push_back(e);
        if ((n & (n - 1)) == 0) {
            pow2_budgets.push_back(static_cast<double>(n));
            pow2_errors.push_back(e);
        }
    }
    const double slope = log_log_slope(budgets, errors);
    r.passed = std::abs(slope + 1.0) <= 0.1;
    r.detail = "slope " + fmt("%.4f", slope) + " over every n in [16, 1024] (target -1 +- 0.1); powers of two alone give " +
               fmt("%.4f", log_log_slope(pow2_budgets, pow2_errors));
    return r;
}

// 3. qubits against N at fixed accuracy
AcceptanceResult qubit_separation(int)
{
    AcceptanceResult r{3, "qubit separation", false, {}};
    const double eps = 0.05;
    Rng rng(1003);
    auto qubits = [&](std::uint64_t n, bool randomized) {
        const BooleanTable f = make_boolean("half", n).table;
        const Estimate e = randomized ? randomized_boolean_summation(f, eps, rng, kAnalytic)
                                      : deterministic_boolean_summation(f, eps, rng, kAnalytic);
        return e.qubits_used;
    };
    const int det_small = qubits(1 << 8, false);
    const int det_big = qubits(1 << 16, false);
    const int ran_small = qubits(1 << 8, true);
    const int ran_big = qubits(1 << 16, true);
    r.passed = det_big - det_small == 8 && ran_big == ran_small;
    r.detail = "deterministic " + std::to_string(det_small) + " -> " + std::to_string(det_big) + ", randomized " +
               std::to_string(ran_small) + " -> " + std::to_string(ran_big) + " (N = 2^8 -> 2^16, eps = 0.05)";
    return r;
}

// 4. rounding to the nearest multiple of 1/N
AcceptanceResult exact_recovery(int)
{
    AcceptanceResult r{4, "exact recovery", false, {}};
    const int offsets = 64;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    for (std::uint64_t n = 1; n <= 256; ++n) {
        for (std::uint64_t k = 0; k <= n; ++k) {
            // A = (k + s/2) / N with s on a grid of (-1, 1), plus both ends
            std::vector<double> shifts{0.0, -(1.0 - 1e-9), 1.0 - 1e-9};
            for (int i = 0; i < offsets; ++i) shifts.push_back(-1.0 + (2.0 * i + 1.0) / offsets);
            for (double s : shifts) {
                const double a = (static_cast<double>(k) + s / 2.0) / static_cast<double>(n);
                ++cases;
                if (!(recover_exact_mean(a, n) == Fraction{k, n})) ++failures;
            }
        }
    }
    r.passed = failures == 0;
    r.detail = std::to_string(failures) + " mismatches in " + std::to_string(cases) + " cases, N = 1..256";
    return r;
}

// 5. S_K(f) = B_{N 2^K}(b_f) by enumerating D
AcceptanceResult reduction_identity(int)
{
    AcceptanceResult r{5, "real summation reduction identity", false, {}};
    Rng rng(1005);
    std::uint64_t tables = 0;
    std::uint64_t failures = 0;
    double worst_gap = 0.0;
    for (std::uint64_t n = 1; n <= 16; ++n) {
        for (int k = 1; k <= 6; ++k) {
            for (int rep = 0; rep < 100; ++rep) {
                std::vector<double> v(n);
                for (double& x : v) x = rng.uniform();
                const RealTable f(std::move(v));
                const BinaryExpansion e = binary_expand(f, k);
                std::uint64_t ones = 0;
                for (std::uint64_t l = 0; l < e.domain_size(); ++l) ones += e.value_at(l);
                // both sides as integers over the common denominator N 2^K
                std::uint64_t truncated = 0;
                for (std::uint64_t j = 0; j < n; ++j) truncated += truncate_beta(f[j], k);
                const double gap = std::abs(f.mean() - e.truncated_mean());
                worst_gap = std::max(worst_gap, gap * std::ldexp(1.0, k));
                if (ones != truncated || gap > std::ldexp(1.0, -k)) ++failures;
                ++tables;
            }
        }
    }
    r.passed = failures == 0;
    r.detail = std::to_string(failures) + " failures over " + std::to_string(tables) +
               " tables; max 2^K |SUM - S_K| = " + fmt("%.4f", worst_gap);
    return r;
}

// 6. no deterministic sample set beats 0.8; randomized sampling reaches eps
AcceptanceResult r0_separation(int workers)
{
    AcceptanceResult r{6, "r = 0 separation", false, {}};
    Rng rng(1006);
    double weakest = 1.0;
    int sets = 0;
    for (int d : {1, 2}) {
        for (int k = 0; k <= 10; ++k) {
            const std::size_t count = std::size_t{1} << k;
            std::vector<std::vector<double>> random_points(count, std::vector<double>(d));
            for (auto& p : random_points) {
                for (double& x : p) x = rng.uniform();
            }
            // a regular product grid (per axis for d = 2) as a structured set
            std::vector<std::vector<double>> grid_points;
            const std::size_t side = d == 1 ? count : static_cast<std::size_t>(std::llround(std::sqrt(count)));
            for (std::size_t i = 0; i < count; ++i) {
                std::vector<double> p(d);
                std::size_t rest = i;
                for (double& x : p) {
                    x = (static_cast<double>(rest % side) + 0.5) / static_cast<double>(side);
                    rest /= side;
                }
                grid_points.push_back(p);
            }
            for (auto* pts : {&random_points, &grid_points}) {
                const AdversarialPair pair = adversarial_pair(*pts, d, 0.15);
                for (const auto& t : *pts) {
                    if (pair.f1(t) != 0.0 || pair.f2(t) != 0.0) throw std::logic_error("adversarial pair misses a point");
                }
                weakest = std::min(weakest, pair.worst_case_error_bound());
                ++sets;
            }
        }
    }

    const double eps = 0.1;
    double worst_upper = 0.0;
    std::string worst_name;
    for (int d : {1, 2}) {
        ExperimentConfig c;
        c.problem = "integrate-r0";
        c.epsilons = {eps};
        c.dimension = d;
        c.omega_draws = 200;
        const ExperimentResult result = run_config(c, workers);
        for (const FunctionError& f : result.cells.at(0).report.per_function) {
            const double upper = f.randomized_error + 3.0 * f.standard_error;
            if (upper >= worst_upper) {
                worst_upper = upper;
                worst_name = f.name + " (d = " + std::to_string(d) + ")";
            }
        }
    }
    r.passed = weakest >= 0.8 && worst_upper <= eps;
    r.detail = "min certified worst-case error " + fmt("%.4f", weakest) + " over " + std::to_string(sets) +
               " point sets; max randomized error + 3 se " + fmt("%.4f", worst_upper) + " at " + worst_name +
               " (eps = 0.1, 200 draws)";
    return r;
}

// 7. queries against eps for d = 1, r = 1
AcceptanceResult smooth_query_rate(int)
{
    AcceptanceResult r{7, "r >= 1 query rate", false, {}};
    const CatalogIntegrand f = make_integrand("sin-pi-over-pi", 1);
    Rng rng(1007);
    std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025};
    std::vector<double> queries;
    std::string counts;
    for (double eps : eps_list) {
        const Estimate e = integrate_rge1(f.f, {1, 1}, eps, QueryMode::randomized, rng, kAnalytic);
        queries.push_back(static_cast<double>(e.queries_used));
        counts += (counts.empty() ? "" : ", ") + std::to_string(e.queries_used);
    }
    const double slope = log_log_slope(eps_list, queries);
    r.passed = std::abs(slope + 0.5) <= 0.15;
    r.detail = "slope " + fmt("%.4f", slope) + " (target -0.5 +- 0.15), queries " + counts;
    return r;
}

// time average of a Brownian path sampled exactly: trapezoid over the grid
// plus the independent Brownian bridge area of each cell, N(0, h^3 / 12)
double brownian_mean_sample(int steps, Rng& rng)
{
    const double h = 1.0 / steps;
    const double bridge_sd = std::sqrt(h * h * h / 12.0);
    const double step_sd = std::sqrt(h);
    double w = 0.0;
    double area = 0.0;
    for (int s = 0; s < steps; ++s) {
        const double next = w + step_sd * rng.normal();
        area += 0.5 * (w + next) * h + bridge_sd * rng.normal();
        w = next;
    }
    return area;
}

// 8. path integration of cos(mean of the path)
AcceptanceResult path_integration(int workers)
{
    AcceptanceResult r{8, "path integration", false, {}};
    const double truth = std::exp(-1.0 / 6.0);
    const double gh = gaussian_expectation([](double z) { return std::cos(z); }, 1.0 / 3.0);
    const CatalogPath entry = make_path("cos-of-mean");

    const std::uint64_t samples = 10'000'000;
    const int chunks = 100;
    std::vector<double> sums(chunks, 0.0);
    std::vector<double> squares(chunks, 0.0);
    const Rng master(1008);
    parallel_for(chunks, workers, [&](std::size_t c) {
        Rng rng = master.derive(c);
        for (std::uint64_t i = 0; i < samples / chunks; ++i) {
            const double v = std::cos(brownian_mean_sample(16, rng));
            sums[c] += v;
            squares[c] += v * v;
        }
    });
    double sum = 0.0;
    double sq = 0.0;
    for (int c = 0; c < chunks; ++c) {
        sum += sums[c];
        sq += squares[c];
    }
    const double n = static_cast<double>(samples);
    const double mc = sum / n;
    const double se = std::sqrt((sq / n - mc * mc) / n);
    const bool oracle_ok = std::abs(gh - truth) <= 1e-12 && std::abs(entry.truth - gh) <= 1e-12 &&
                           std::abs(mc - gh) <= 3.0 * se;

    const double eps = 0.1;
    ExperimentConfig c;
    c.problem = "path-integrate";
    c.epsilons = {eps};
    c.functions = {"cos-of-mean"};
    c.omega_draws = 100;
    const ExperimentResult result = run_config(c, workers);
    const ErrorReport& report = result.cells.at(0).report;
    const int k = report.qubits;
    // qubits <= c log2(1/eps) with c = 8, and below eps^-2 log2(1/eps)
    const double log_inv = std::log2(1.0 / eps);
    const double qubit_cap = 8.0 * log_inv;
    const double deterministic_need = log_inv / (eps * eps);
    r.passed = oracle_ok && report.suite_max <= eps && k <= qubit_cap && k < deterministic_need;
    r.detail = "Gauss-Hermite " + fmt("%.12f", gh) + ", Monte Carlo " + fmt("%.6f", mc) + " +- " + fmt("%.1e", se) +
               "; randomized error " + fmt("%.4f", report.suite_max) + " (100 draws); qubits " + std::to_string(k) +
               " <= 8 log2(1/eps) = " + fmt("%.2f", qubit_cap) + " and < eps^-2 log2(1/eps) = " +
               fmt("%.1f", deterministic_need);
    return r;
}

// 9. Karhunen-Loeve eigenvalues and trace
AcceptanceResult kl_trace(int)
{
    AcceptanceResult r{9, "KL trace", false, {}};
    const double e1 = std::abs(KLBasis::eigenvalue(1) - 4.0 / (kPi * kPi));
    const double e2 = std::abs(KLBasis::eigenvalue(2) - 4.0 / (9.0 * kPi * kPi));
    double trace = 0.0;
    for (int i = 1; i <= 1000; ++i) trace += KLBasis::eigenvalue(i);
    r.passed = e1 <= 1e-12 && e2 <= 1e-12 && trace >= 0.5 - 2e-4 && trace <= 0.5;
    r.detail = "|lambda_1 err| " + fmt("%.1e", e1) + ", |lambda_2 err| " + fmt("%.1e", e2) + ", partial trace " +
               fmt("%.8f", trace);
    return r;
}

// 10. probabilistic error against delta-scaled randomized error
AcceptanceResult chebyshev(int workers)
{
    AcceptanceResult r{10, "Chebyshev relations", false, {}};
    const std::vector<double> deltas{0.05, 0.25};
    std::size_t checked = 0;
    std::vector<std::string> failed;
    double tightest = 1e300;
    auto collect = [&](const ErrorReport& report, const std::string& label) {
        for (const CheckResult& c : report.checks) {
            if (c.name.rfind("chebyshev", 0) != 0) continue;
            ++checked;
            tightest = std::min(tightest, c.margin());
            if (!c.passed) failed.push_back(label + ":" + c.name);
        }
    };

    struct Pair {
        std::string problem;
        std::vector<std::string> variants;
        double eps;
        std::uint64_t size;
    };
    for (const Pair& p : std::vector<Pair>{{"boolean-sum", {"deterministic", "randomized"}, 0.1, 256},
                                           {"real-sum", {"deterministic", "randomized"}, 0.1, 16},
                                           {"integrate-r0", {"randomized"}, 0.1, 256},
                                           {"integrate-r1", {"deterministic", "randomized"}, 0.1, 256},
                                           {"path-integrate", {"randomized"}, 0.1, 256}}) {
        ExperimentConfig c;
        c.problem = p.problem;
        c.variants = p.variants;
        c.epsilons = {p.eps};
        c.deltas = deltas;
        c.size = p.size;
        c.omega_draws = 200;
        for (const ExperimentCell& cell : run_config(c, workers).cells) collect(cell.report, p.problem);
    }

    // classical baselines on the d = 1 catalog: Monte Carlo (randomized) and
    // the midpoint rule (deterministic, on the Lipschitz members)
    Rng rng(1010);
    std::vector<SuiteMember> mc_suite;
    std::vector<SuiteMember> midpoint_suite;
    for (const CatalogIntegrand& f : integrand_suite(1, 0)) {
        mc_suite.push_back({f.name, f.truth, [f](Rng& omega) {
                                return OmegaOutcome{OutcomeLaw::point(monte_carlo(f.f, 100, 1, omega)), 100, 0};
                            }});
        if (f.smoothness >= 1) {
            midpoint_suite.push_back({f.name, f.truth, [f](Rng&) {
                                          const UnivariateFunction g = [&f](double x) {
                                              return f.f(std::span<const double>(&x, 1));
                                          };
                                          return OmegaOutcome{OutcomeLaw::point(lipschitz_quadrature(g, 25)), 25, 0};
                                      }});
        }
    }
    ErrorReport mc = randomized_error("integrate-r0", "monte-carlo", QueryKind::randomized, 0.1, mc_suite,
                                      {200, deltas, workers}, rng);
    add_chebyshev_checks(mc);
    collect(mc, "monte-carlo");
    ErrorReport midpoint = randomized_error("integrate-r1", "midpoint", QueryKind::deterministic, 0.01,
                                            midpoint_suite, {1, deltas, workers}, rng);
    add_chebyshev_checks(midpoint);
    collect(midpoint, "midpoint");

    // two-point law just past the Chebyshev bound for exponent 1/2
    const double delta = 0.25;
    const double eta = 1e-10;
    const OutcomeLaw extremal{{0.0, 1.0}, {1.0 - delta * (1.0 + eta), delta * (1.0 + eta)}};
    const CheckResult tight =
        chebyshev_check(probabilistic_error(extremal, delta), std::sqrt(extremal.mean_squared_error(0.0)), delta, 0.5);
    const bool extremal_ok = tight.passed && tight.margin() <= 1e-9 && tight.margin() >= 0.0;

    r.passed = failed.empty() && extremal_ok && checked > 0;
    r.detail = std::to_string(checked - failed.size()) + "/" + std::to_string(checked) +
               " checks pass (smallest margin " + fmt("%.3e", tightest) + "); extremal law margin " +
               fmt("%.2e", tight.margin());
    if (!failed.empty()) r.detail += "; first failure " + failed.front();
    return r;
}

// 11. qubit lower bounds and the randomized separation
AcceptanceResult lower_bounds(int)
{
    AcceptanceResult r{11, "lower-bound consistency", false, {}};
    Rng rng(1011);
    std::size_t runs = 0;
    std::vector<std::string> failed;
    auto check = [&](const std::string& label, int qubits, double eps, const LowerBoundProblem& problem,
                     QueryKind kind) {
        ++runs;
        for (const CheckResult& c : qubit_lower_bound_check(qubits, eps, problem, kind)) {
            if (!c.passed) failed.push_back(label + ":" + c.name);
        }
    };
    const std::vector<double> eps_list{0.2, 0.1, 0.05};
    for (int log_n : {4, 8, 12, 16}) {
        const std::uint64_t n = std::uint64_t{1} << log_n;
        const BooleanTable f = make_boolean("half", n).table;
        for (double eps : eps_list) {
            const std::string label = "boolean-sum N=2^" + std::to_string(log_n) + " eps=" + fmt("%g", eps);
            check(label + " deterministic", prepare_deterministic_boolean_summation(f, eps).qubits(), eps,
                  {"boolean-sum", n, 0.5}, QueryKind::deterministic);
            check(label + " randomized", prepare_randomized_boolean_summation(f, eps, rng).qubits(), eps,
                  {"boolean-sum", n, 0.5}, QueryKind::randomized);
        }
    }
    const RealTable ramp = make_real("ramp", 16).table;
    const CatalogIntegrand smooth = make_integrand("sin-pi-over-pi", 1);
    const CatalogPath path = make_path("cos-of-mean");
    for (double eps : eps_list) {
        const std::string e = " eps=" + fmt("%g", eps);
        check("real-sum deterministic" + e, prepare_real_summation_deterministic(ramp, eps).qubits(), eps,
              {"real-sum", 0, 0.5}, QueryKind::deterministic);
        check("real-sum randomized" + e, prepare_real_summation(ramp, eps, rng).qubits(), eps, {"real-sum", 0, 0.5},
              QueryKind::randomized);
        check("integrate-r0" + e, prepare_integrate_r0(smooth.f, 1, eps, rng).qubits(), eps, {"integrate-r0", 0, 1.0},
              QueryKind::randomized);
        for (QueryMode mode : {QueryMode::deterministic, QueryMode::randomized}) {
            const QueryKind kind = mode == QueryMode::deterministic ? QueryKind::deterministic : QueryKind::randomized;
            check("integrate-r1 " + to_string(kind) + e, prepare_integrate_rge1(smooth.f, {1, 1}, eps, mode, rng).qubits(),
                  eps, {"integrate-r1", 0, 1.0}, kind);
        }
        check("path-integrate" + e, prepare_path_integrate(path.integrand, eps, rng).qubits(), eps,
              {"path-integrate", 0, 1.0}, QueryKind::randomized);
    }

    const std::uint64_t big = std::uint64_t{1} << 16;
    const int k = prepare_randomized_boolean_summation(make_boolean("half", big).table, 0.05, rng).qubits();
    const CheckResult separation = qubit_separation_check(k, 0.05, big);

    r.passed = failed.empty() && separation.passed;
    r.detail = std::to_string(runs) + " runs, " + std::to_string(failed.size()) +
               " lower-bound violations; separation at N = 2^16, eps = 0.05: 2^" + std::to_string(k) + " = " +
               fmt("%.0f", separation.lhs) + (separation.passed ? " < " : " >= ") +
               fmt("%.0f", separation.rhs) + " = ceil(N (1 - 2 eps))";
    if (!failed.empty()) r.detail += "; first violation " + failed.front();
    return r;
}

// 12. Monte Carlo rate and the midpoint rule's worst case
AcceptanceResult classical_baselines(int)
{
    AcceptanceResult r{12, "classical baselines", false, {}};
    Rng rng(1012);
    const Integrand identity = [](std::span<const double> x) { return x[0]; };
    std::vector<double> ns{100, 1000, 10000};
    std::vector<double> rms;
    for (double n : ns) {
        double mse = 0.0;
        const int reps = 4000;
        for (int k = 0; k < reps; ++k) {
            mse += std::pow(monte_carlo(identity, static_cast<std::uint64_t>(n), 1, rng) - 0.5, 2);
        }
        rms.push_back(std::sqrt(mse / reps));
    }
    const double slope = log_log_slope(ns, rms);

    double worst_ratio = 0.0;
    int functions = 0;
    for (int k = 0; k < 200; ++k) {
        const PiecewiseLinear f = random_lipschitz_function(rng);
        if (f.lipschitz() > 1.0 + 1e-12) throw std::logic_error("test function is not Lipschitz-1");
        ++functions;
        for (std::uint64_t n : {2, 5, 16, 25, 100}) {
            const double err = std::abs(lipschitz_quadrature(f, n) - f.integral());
            worst_ratio = std::max(worst_ratio, err * 4.0 * static_cast<double>(n));
        }
    }
    r.passed = std::abs(slope + 0.5) <= 0.05 && worst_ratio <= 1.0 + 1e-12;
    r.detail = "Monte Carlo RMS slope " + fmt("%.4f", slope) + " (target -0.5 +- 0.05); midpoint max error * 4n = " +
               fmt("%.4f", worst_ratio) + " over " + std::to_string(functions) + " functions";
    return r;
}

} // namespace

AcceptanceResult run_acceptance_criterion(int id, int workers)
{
    using Criterion = AcceptanceResult (*)(int);
    static const Criterion criteria[kAcceptanceCount] = {
        backend_equivalence, query_rate,       qubit_separation, exact_recovery,   reduction_identity,
        r0_separation,       smooth_query_rate, path_integration, kl_trace,        chebyshev,
        lower_bounds,        classical_baselines};
    if (id < 1 || id > kAcceptanceCount) throw std::invalid_argument("no acceptance criterion " + std::to_string(id));
    try {
        return criteria[id - 1](workers);
    } catch (const std::exception& e) {
        return {id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what()};
    }
}

std::vector<AcceptanceResult> run_acceptance(const std::vector<int>& ids, int workers)
{
    std::vector<int> selected = ids;
    if (selected.empty()) {
        for (int i = 1; i <= kAcceptanceCount; ++i) selected.push_back(i);
    }
    std::sort(selected.begin(), selected.end());
    std::vector<AcceptanceResult> out;
    for (int id : selected) out.push_back(run_acceptance_criterion(id, workers));
    return out;
}

std::string format_acceptance_line(const AcceptanceResult& result)
{
    char head[16];
    std::snprintf(head, sizeof head, "%s %2d ", result.passed ? "PASS" : "FAIL", result.id);
    return head + result.name + ": " + result.detail;
}

} // namespace randq
