#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "randq/oracles.hpp"
#include "randq/outcome_law.hpp"
#include "randq/rng.hpp"
#include "randq/statevector.hpp"

namespace randq {

inline constexpr int kDefaultRepetitions = 7;

/// C in the bound e(n) <= C/n for the median-of-7 estimator with
/// t = floor(log2(n/7)). Produced by randq_calibrate (measured 22.47); the
/// unit tests recompute it.
inline constexpr double kErrorConstant = 22.5;

/// Auto backend simulates circuits up to this many qubits.
inline constexpr int kDefaultStatevectorLimit = 16;

class BudgetError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Backend { statevector, analytic, automatic };

std::string to_string(Backend backend);
Backend parse_backend(std::string_view name);

struct QaeOptions {
    Backend backend = Backend::automatic;
    int statevector_limit = kDefaultStatevectorLimit;
    int qubit_cap = kDefaultQubitCap;
    int repetitions = kDefaultRepetitions;
};

struct QaeConfig {
    int phase_qubits = 1;
    int repetitions = kDefaultRepetitions;
    Backend backend = Backend::automatic;

    void validate() const;
};

/// A numerical result with the resources spent on it.
struct Estimate {
    double value = 0.0;
    std::uint64_t queries_used = 0;
    int qubits_used = 0;
    std::uint64_t seed = 0;
    /// Measured phase index y of every repetition.
    std::vector<std::uint64_t> trace;
    int phase_qubits = 0;
    /// Function values computed classically (outside any query).
    std::uint64_t classical_evaluations = 0;
};

struct SingleRun {
    std::uint64_t y = 0;
    double estimate = 0.0;
    std::uint64_t queries = 0;
    int qubits = 0;
};

/// Outcome law of the phase register for amplitude a and t phase qubits.
MeasurementDistribution qae_exact_distribution(double a, int t);

/// Simulates the amplitude-estimation circuit on the oracle and returns the
/// phase-register law. Charges qae_queries_per_run(t) queries.
MeasurementDistribution qae_circuit_distribution(BitQueryOracle& oracle, int t, int cap = kDefaultQubitCap);

/// Queries per run: none for state preparation, one per Grover iterate,
/// 1 + 2 + ... + 2^{t-1} = 2^t - 1 iterates.
std::uint64_t qae_queries_per_run(int t);

/// sin^2(pi y / 2^t), evaluated at min(y, 2^t - y) so mirrored outcomes agree bitwise.
double phase_to_estimate(std::uint64_t y, int t);

/// Law of the single-run estimate from a phase-register law.
OutcomeLaw estimate_law(const MeasurementDistribution& phase_law, int t);

/// Whether a circuit of `qubits` qubits is simulated under these options.
bool uses_statevector(int qubits, const QaeOptions& options);

SingleRun qae_single_run(BitQueryOracle& oracle, int t, Rng& rng, const QaeOptions& options = {});

/// floor(log2(n / R)); throws BudgetError unless it is at least 1.
int phase_qubits_for_budget(std::uint64_t n, int repetitions = kDefaultRepetitions);

/// Median of R single runs, each with t = phase_qubits_for_budget(n, R).
Estimate boolean_summation(BitQueryOracle& oracle, std::uint64_t n, Rng& rng, const QaeOptions& options = {});

/// Exact law of boolean_summation's output for amplitude a.
OutcomeLaw boolean_summation_law(double a, std::uint64_t n, int repetitions = kDefaultRepetitions);

/// Middle order statistic; for an even count, the lower of the two middle values.
double median_of(std::vector<double> values);

struct Fraction {
    std::uint64_t numerator = 0;
    std::uint64_t denominator = 1;

    double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
    bool operator==(const Fraction&) const = default;
};

/// (ceil(N A + 1/2) - 1) / N. Exact when |A - k/N| < 1/(2N); otherwise the
/// nearest cell is returned without any guarantee.
Fraction recover_exact_mean(double approx, std::uint64_t n);

/// Budget n = ceil(C / eps) for a deterministic-query error of eps.
std::uint64_t budget_for_accuracy(double epsilon);

struct RandomizedSummationPlan {
    std::uint64_t subsample = 0; ///< m, a power of two >= ceil(4 eps^-2)
    std::uint64_t budget = 0;    ///< n = ceil(2C / eps)
    int phase_qubits = 0;
};

RandomizedSummationPlan plan_randomized_summation(double epsilon, int repetitions = kDefaultRepetitions);

/// Everything an estimator fixes before its first measurement: the Boolean
/// query (with any random sample points already drawn), the budget, and the
/// classical map applied to the median. Signed problems attach a second
/// summation for the negative part, run afterwards on the same register:
/// value = offset + scale * median - negative_weight * negative->value.
struct PreparedSummation {
    BitQueryOracle oracle;
    std::uint64_t budget = 0;
    double offset = 0.0;
    double scale = 1.0;
    /// Nonzero: the mapped value is snapped to the nearest multiple of 1/N.
    std::uint64_t recover_denominator = 0;
    std::uint64_t classical_evaluations = 0;
    std::shared_ptr<PreparedSummation> negative = nullptr;
    double negative_weight = 1.0;

    /// Value for this summation's median and the negative part's value.
    double output(double median, double negative_value = 0.0) const;
    /// Qubits of the wider of the two summations.
    int qubits(int repetitions = kDefaultRepetitions) const;
};

Estimate run_prepared(PreparedSummation& prepared, Rng& rng, const QaeOptions& options = {});

/// Exact law of run_prepared's value (the circuit is simulated when the
/// options select the statevector backend).
OutcomeLaw prepared_law(PreparedSummation& prepared, const QaeOptions& options = {});

PreparedSummation prepare_deterministic_boolean_summation(const BooleanTable& f, double epsilon);
PreparedSummation prepare_randomized_boolean_summation(const BooleanTable& f, double epsilon, Rng& rng);

/// Deterministic queries at budget ceil(C/eps); below eps = 1/(2N) the result
/// is snapped with recover_exact_mean.
Estimate deterministic_boolean_summation(const BooleanTable& f, double epsilon, Rng& rng,
                                         const QaeOptions& options = {});

/// Subsample m points uniformly, then Boolean summation at budget ceil(2C/eps).
Estimate randomized_boolean_summation(const BooleanTable& f, double epsilon, Rng& rng,
                                      const QaeOptions& options = {});

/// ceil(8 ln(1/delta))
int boost_repetitions(double delta);

/// Median of boost_repetitions(delta) independent runs; queries add up.
Estimate boost_success(const std::function<Estimate(Rng&)>& run, double delta, Rng& rng);

/// Exact L2 error of the median-of-R estimator for amplitude a.
double median_l2_error(double a, int t, int repetitions = kDefaultRepetitions);

struct CalibrationRow {
    int phase_qubits = 0;
    std::uint64_t largest_budget = 0; ///< the largest n mapping to this t
    double worst_amplitude = 0.0;
    double worst_error = 0.0;
    double constant = 0.0; ///< largest_budget * worst_error
};

/// Sup over a in {0, 1/grid, ..., 1} of the exact error, per t in [1, max_t].
std::vector<CalibrationRow> calibrate_error_constant(int max_t, int grid, int repetitions = kDefaultRepetitions);

} // namespace randq
