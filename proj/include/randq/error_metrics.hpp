#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "randq/amplitude_estimation.hpp"
#include "randq/outcome_law.hpp"
#include "randq/rng.hpp"

namespace randq {

/// What one draw of omega produces: the exact law of the output over
/// measurement outcomes plus the resources spent.
struct OmegaOutcome {
    OutcomeLaw law;
    std::uint64_t queries = 0;
    int qubits = 0;
};

/// An algorithm applied to one fixed function, as a map omega -> outcome.
/// Deterministic-query algorithms ignore omega.
using AlgorithmRun = std::function<OmegaOutcome(Rng& omega)>;

OmegaOutcome outcome_of(PreparedSummation& prepared, const QaeOptions& options = {});

struct SuiteMember {
    std::string name;
    double truth = 0.0;
    AlgorithmRun run;
};

enum class QueryKind { deterministic, randomized };

std::string to_string(QueryKind kind);

/// Pass/fail with both sides of the inequality lhs <= rhs.
struct CheckResult {
    std::string name;
    bool passed = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin() const { return rhs - lhs; }
};

struct FunctionError {
    std::string name;
    double truth = 0.0;
    double randomized_error = 0.0;
    /// Standard error of the omega-average, carried through the square root.
    double standard_error = 0.0;
    /// Probabilistic error at each requested delta, in request order.
    std::vector<double> probabilistic_error;
    double queries_mean = 0.0;
    int qubits = 0;
    /// Law of |S(f) - A(f)| over measurement outcomes and the omega draws.
    OutcomeLaw error_law;
};

struct ErrorReport {
    std::string problem;
    std::string algorithm;
    QueryKind kind = QueryKind::randomized;
    double epsilon = 0.0;
    std::vector<double> deltas;
    int omega_draws = 0;
    std::vector<FunctionError> per_function;
    /// Max over the finite suite, a proxy for the sup over the class.
    double suite_max = 0.0;
    std::vector<double> suite_max_probabilistic;
    double queries_mean = 0.0;
    int qubits = 0;
    std::vector<CheckResult> checks;

    bool all_checks_passed() const;
    nlohmann::json to_json() const;
};

struct ErrorOptions {
    int omega_draws = 1;
    std::vector<double> deltas;
    int workers = 1;
};

/// sqrt of (1/W) sum_omega sum_j p_{j,omega} |S(f) - A(f,omega,j)|^2 per
/// function, exact in j; W = 1 for deterministic-query algorithms.
ErrorReport randomized_error(const std::string& problem, const std::string& algorithm, QueryKind kind,
                             double epsilon, const std::vector<SuiteMember>& suite, const ErrorOptions& options,
                             Rng& rng);

/// Smallest alpha with P(error <= alpha) >= 1 - delta.
double probabilistic_error(const OutcomeLaw& error_law, double delta);

/// Rejects delta resolutions the omega sample cannot support (W delta < 10).
void require_delta_resolution(int omega_draws, double delta, QueryKind kind);

/// probabilistic error <= delta^{-exponent} randomized error, exponent 1 for
/// the quantum form and 1/2 for Chebyshev's inequality proper.
CheckResult chebyshev_check(double probabilistic, double randomized, double delta, double exponent);

/// Chebyshev checks for every function and delta of a report (quantum form
/// and Chebyshev form), appended to report.checks.
void add_chebyshev_checks(ErrorReport& report);

/// Closed-form lower-bound quantities of a problem.
struct LowerBoundProblem {
    std::string name;
    /// Size of the Boolean table, or 0 when no information complexity
    /// formula is registered.
    std::uint64_t table_size = 0;
    /// The solution set S(F) lies in an interval of this half width.
    double halfwidth = 0.5;
};

/// Deterministic queries: 2^k >= ceil(N (1 - 2 eps)) and k >= entropy.
/// Randomized queries: k >= entropy and 2^k >= randomized information proxy.
/// Without a table size only the entropy bound is checked; a nonpositive
/// half width means no formula is registered and throws.
std::vector<CheckResult> qubit_lower_bound_check(int qubits, double epsilon, const LowerBoundProblem& problem,
                                                 QueryKind kind);

/// 2^k < ceil(N (1 - 2 eps)): the randomized run beats the deterministic bound.
CheckResult qubit_separation_check(int qubits, double epsilon, std::uint64_t table_size);

struct ResourceRow {
    double epsilon = 0.0;
    double queries_mean = 0.0;
    int qubits = 0;
    double rms_error = 0.0;
    std::size_t runs = 0;
};

/// Mean queries over runs, widest register, RMS error against truth.
ResourceRow resource_report(double epsilon, const std::vector<Estimate>& estimates, double truth);

} // namespace randq
