#include "randq/error_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "randq/baselines.hpp"
#include "randq/parallel.hpp"

namespace randq {

OmegaOutcome outcome_of(PreparedSummation& prepared, const QaeOptions& options)
{
    OmegaOutcome out;
    out.law = prepared_law(prepared, options);
    const std::uint64_t per_run = static_cast<std::uint64_t>(options.repetitions);
    std::uint64_t queries = 0;
    for (const PreparedSummation* p = &prepared; p != nullptr; p = p->negative.get()) {
        queries += per_run * qae_queries_per_run(phase_qubits_for_budget(p->budget, options.repetitions));
    }
    out.queries = queries;
    out.qubits = prepared.qubits(options.repetitions);
    return out;
}

std::string to_string(QueryKind kind) { return kind == QueryKind::deterministic ? "deterministic" : "randomized"; }

bool ErrorReport::all_checks_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

nlohmann::json ErrorReport::to_json() const
{
    nlohmann::json j;
    j["problem"] = problem;
    j["algorithm"] = algorithm;
    j["queries"] = to_string(kind);
    j["epsilon"] = epsilon;
    j["delta"] = deltas;
    j["omega_draws"] = omega_draws;
    j["per_function"] = nlohmann::json::array();
    for (const FunctionError& f : per_function) {
        nlohmann::json row;
        row["name"] = f.name;
        row["truth"] = f.truth;
        row["randomized_error"] = f.randomized_error;
        row["standard_error"] = f.standard_error;
        row["probabilistic_error"] = f.probabilistic_error;
        row["queries_mean"] = f.queries_mean;
        row["qubits"] = f.qubits;
        j["per_function"].push_back(row);
    }
    j["suite_max"] = suite_max;
    j["suite_max_probabilistic"] = suite_max_probabilistic;
    j["queries_mean"] = queries_mean;
    j["qubits"] = qubits;
    j["checks"] = nlohmann::json::object();
    for (const CheckResult& c : checks) {
        j["checks"][c.name] = {{"passed", c.passed}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"margin", c.margin()}};
    }
    return j;
}

double probabilistic_error(const OutcomeLaw& error_law, double delta)
{
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    if (error_law.size() == 0) throw std::invalid_argument("empty error law");
    double cumulative = 0.0;
    for (std::size_t i = 0; i < error_law.size(); ++i) {
        cumulative += error_law.probabilities[i];
        if (cumulative >= 1.0 - delta - 1e-13) return error_law.values[i];
    }
    return error_law.values.back();
}

void require_delta_resolution(int omega_draws, double delta, QueryKind kind)
{
    if (kind == QueryKind::randomized && static_cast<double>(omega_draws) * delta < 10.0) {
        throw std::invalid_argument("omega_draws * delta must be at least 10 (got " + std::to_string(omega_draws) +
                                    " * " + std::to_string(delta) + ")");
    }
}

ErrorReport randomized_error(const std::string& problem, const std::string& algorithm, QueryKind kind,
                             double epsilon, const std::vector<SuiteMember>& suite, const ErrorOptions& options,
                             Rng& rng)
{
    if (suite.empty()) throw std::invalid_argument("empty function suite");
    const int w_count = kind == QueryKind::deterministic ? 1 : options.omega_draws;
    if (w_count < 1) throw std::invalid_argument("omega_draws must be at least 1");
    for (double delta : options.deltas) require_delta_resolution(w_count, delta, kind);

    ErrorReport report;
    report.problem = problem;
    report.algorithm = algorithm;
    report.kind = kind;
    report.epsilon = epsilon;
    report.deltas = options.deltas;
    report.omega_draws = w_count;
    report.suite_max_probabilistic.assign(options.deltas.size(), 0.0);

    double queries_total = 0.0;
    for (const SuiteMember& member : suite) {
        if (!member.run) throw std::invalid_argument("suite member '" + member.name + "' has no algorithm");
        if (!std::isfinite(member.truth)) throw std::invalid_argument("ground truth unavailable for " + member.name);
        std::vector<Rng> omegas;
        for (int w = 0; w < w_count; ++w) omegas.push_back(rng.split());
        std::vector<OmegaOutcome> outcomes(w_count);
        parallel_for(w_count, options.workers, [&](std::size_t w) { outcomes[w] = member.run(omegas[w]); });

        FunctionError fe;
        fe.name = member.name;
        fe.truth = member.truth;
        std::vector<double> mse(w_count);
        std::vector<std::pair<double, double>> pairs;
        double queries = 0.0;
        for (int w = 0; w < w_count; ++w) {
            const OutcomeLaw& law = outcomes[w].law;
            law.validate();
            mse[w] = law.mean_squared_error(member.truth);
            for (std::size_t i = 0; i < law.size(); ++i) {
                pairs.emplace_back(std::abs(law.values[i] - member.truth), law.probabilities[i] / w_count);
            }
            queries += static_cast<double>(outcomes[w].queries);
            fe.qubits = std::max(fe.qubits, outcomes[w].qubits);
        }
        double mean = 0.0;
        for (double v : mse) mean += v;
        mean /= w_count;
        double var = 0.0;
        for (double v : mse) var += (v - mean) * (v - mean);
        var = w_count > 1 ? var / (w_count - 1) : 0.0;
        fe.randomized_error = std::sqrt(mean);
        // delta method: se(sqrt(m)) = se(m) / (2 sqrt(m))
        fe.standard_error = fe.randomized_error > 0.0 ? std::sqrt(var / w_count) / (2.0 * fe.randomized_error) : 0.0;
        fe.error_law = OutcomeLaw::from_pairs(std::move(pairs));
        for (std::size_t k = 0; k < options.deltas.size(); ++k) {
            fe.probabilistic_error.push_back(probabilistic_error(fe.error_law, options.deltas[k]));
            report.suite_max_probabilistic[k] = std::max(report.suite_max_probabilistic[k], fe.probabilistic_error[k]);
        }
        fe.queries_mean = queries / w_count;
        queries_total += fe.queries_mean;
        report.suite_max = std::max(report.suite_max, fe.randomized_error);
        report.qubits = std::max(report.qubits, fe.qubits);
        report.per_function.push_back(std::move(fe));
    }
    report.queries_mean = queries_total / static_cast<double>(suite.size());
    return report;
}

CheckResult chebyshev_check(double probabilistic, double randomized, double delta, double exponent)
{
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    CheckResult c;
    c.lhs = probabilistic;
    c.rhs = std::pow(delta, -exponent) * randomized;
    c.passed = c.lhs <= c.rhs * (1.0 + 1e-12) + 1e-15;
    return c;
}

void add_chebyshev_checks(ErrorReport& report)
{
    for (const FunctionError& f : report.per_function) {
        for (std::size_t k = 0; k < report.deltas.size(); ++k) {
            const double delta = report.deltas[k];
            const std::string tag = f.name + "@" + std::to_string(delta).substr(0, 4);
            CheckResult quantum = chebyshev_check(f.probabilistic_error[k], f.randomized_error, delta, 1.0);
            quantum.name = "chebyshev_quantum:" + tag;
            report.checks.push_back(quantum);
            CheckResult classical = chebyshev_check(f.probabilistic_error[k], f.randomized_error, delta, 0.5);
            classical.name = "chebyshev:" + tag;
            report.checks.push_back(classical);
        }
    }
}

std::vector<CheckResult> qubit_lower_bound_check(int qubits, double epsilon, const LowerBoundProblem& problem,
                                                 QueryKind kind)
{
    if (!(problem.halfwidth > 0.0)) throw std::invalid_argument("no entropy formula registered for " + problem.name);
    const double two_k = std::ldexp(1.0, qubits);
    std::vector<CheckResult> out;
    CheckResult entropy;
    entropy.name = "entropy";
    entropy.lhs = entropy_interval(epsilon, problem.halfwidth);
    entropy.rhs = qubits;
    entropy.passed = entropy.lhs <= entropy.rhs;
    out.push_back(entropy);
    if (problem.table_size == 0) return out;
    CheckResult info;
    if (kind == QueryKind::deterministic) {
        info.name = "worst_case_information";
        info.lhs = static_cast<double>(info_complexity_boolean(epsilon, problem.table_size));
    } else {
        info.name = "randomized_information";
        info.lhs = static_cast<double>(randomized_info_complexity_boolean(epsilon, problem.table_size));
    }
    info.rhs = two_k;
    info.passed = info.lhs <= info.rhs;
    out.push_back(info);
    return out;
}

CheckResult qubit_separation_check(int qubits, double epsilon, std::uint64_t table_size)
{
    CheckResult c;
    c.name = "separation";
    c.lhs = std::ldexp(1.0, qubits);
    c.rhs = static_cast<double>(info_complexity_boolean(epsilon, table_size));
    c.passed = c.lhs < c.rhs;
    return c;
}

ResourceRow resource_report(double epsilon, const std::vector<Estimate>& estimates, double truth)
{
    ResourceRow row;
    row.epsilon = epsilon;
    row.runs = estimates.size();
    if (estimates.empty()) return row;
    double queries = 0.0;
    double sq = 0.0;
    for (const Estimate& e : estimates) {
        queries += static_cast<double>(e.queries_used);
        sq += (e.value - truth) * (e.value - truth);
        row.qubits = std::max(row.qubits, e.qubits_used);
    }
    row.queries_mean = queries / static_cast<double>(estimates.size());
    row.rms_error = std::sqrt(sq / static_cast<double>(estimates.size()));
    return row;
}

} // namespace randq
