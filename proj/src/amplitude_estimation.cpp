#include "randq/amplitude_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "randq/numeric.hpp"

namespace randq {

namespace {

constexpr double kPi = std::numbers::pi;

void require_phase_qubits(int t)
{
    if (t < 1 || t > 40) throw std::invalid_argument("phase qubits must lie in [1, 40], got " + std::to_string(t));
}

void require_amplitude(double a)
{
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("amplitude must lie in [0,1]");
}

void require_epsilon(double epsilon)
{
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw std::invalid_argument("epsilon must lie in (0, 0.5)");
}

/// sin^2(pi M d) / (M^2 sin^2(pi d)), the phase-estimation kernel; 1 at integers.
double fejer(double delta, double m)
{
    const double d = delta - std::round(delta);
    if (std::abs(d) < 1e-9) return 1.0 - (m * m - 1.0) * kPi * kPi * d * d / 3.0;
    const double num = std::sin(kPi * m * d);
    const double den = m * std::sin(kPi * d);
    return (num * num) / (den * den);
}

} // namespace

std::string to_string(Backend backend)
{
    switch (backend) {
    case Backend::statevector: return "statevector";
    case Backend::analytic: return "analytic";
    case Backend::automatic: return "auto";
    }
    return "auto";
}

Backend parse_backend(std::string_view name)
{
    if (name == "statevector") return Backend::statevector;
    if (name == "analytic") return Backend::analytic;
    if (name == "auto") return Backend::automatic;
    throw std::invalid_argument("backend must be statevector, analytic or auto");
}

void QaeConfig::validate() const
{
    require_phase_qubits(phase_qubits);
    if (repetitions < 1 || repetitions % 2 == 0) throw std::invalid_argument("repetitions must be odd and positive");
}

MeasurementDistribution qae_exact_distribution(double a, int t)
{
    require_amplitude(a);
    require_phase_qubits(t);
    const std::uint64_t size = std::uint64_t{1} << t;
    const double m = static_cast<double>(size);
    const double phi = std::asin(std::sqrt(a)) / kPi;
    MeasurementDistribution dist{std::vector<double>(size)};
    for (std::uint64_t y = 0; y < size; ++y) {
        const double x = static_cast<double>(y) / m;
        dist.probabilities[y] = 0.5 * fejer(x - phi, m) + 0.5 * fejer(x + phi, m);
    }
    return dist;
}

std::uint64_t qae_queries_per_run(int t)
{
    require_phase_qubits(t);
    return (std::uint64_t{1} << t) - 1;
}

double phase_to_estimate(std::uint64_t y, int t)
{
    require_phase_qubits(t);
    const std::uint64_t size = std::uint64_t{1} << t;
    if (y >= size) throw std::invalid_argument("phase index out of range");
    const std::uint64_t folded = std::min(y, size - y);
    const double s = std::sin(kPi * static_cast<double>(folded) / static_cast<double>(size));
    return std::clamp(s * s, 0.0, 1.0);
}

MeasurementDistribution qae_circuit_distribution(BitQueryOracle& oracle, int t, int cap)
{
    require_phase_qubits(t);
    if (!oracle.is_boolean()) throw OracleError("amplitude estimation needs a Boolean oracle");
    const RegisterLayout layout{oracle.index_width(), 1, t};
    layout.validate(cap);
    const Register index = layout.index();
    const int value_qubit = layout.value().offset;
    const Register phase = layout.phase();

    StateVector state = StateVector::basis(layout.total(), 0, cap);
    apply_gate(state, {gate::PauliX{value_qubit}});
    apply_gate(state, {gate::Hadamard{value_qubit}});
    apply_hadamard_all(state, index);
    apply_hadamard_all(state, phase);

    for (int p = 0; p < t; ++p) {
        const std::uint64_t control = std::uint64_t{1} << (phase.offset + p);
        for (std::uint64_t rep = 0; rep < (std::uint64_t{1} << p); ++rep) {
            // controlled G = D S_f; the Hadamards cancel when the control is off
            apply_bit_query(state, oracle, layout, control);
            apply_hadamard_all(state, index);
            apply_gate(state, {gate::ZeroReflection{index}, control});
            apply_hadamard_all(state, index);
        }
    }
    apply_inverse_qft(state, phase);
    return measurement_distribution(state, phase);
}

OutcomeLaw estimate_law(const MeasurementDistribution& phase_law, int t)
{
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(phase_law.size());
    for (std::uint64_t y = 0; y < phase_law.size(); ++y) pairs.emplace_back(phase_to_estimate(y, t), phase_law[y]);
    return OutcomeLaw::from_pairs(std::move(pairs));
}

bool uses_statevector(int qubits, const QaeOptions& options)
{
    switch (options.backend) {
    case Backend::statevector: return true;
    case Backend::analytic: return false;
    case Backend::automatic: return qubits <= options.statevector_limit && qubits <= options.qubit_cap;
    }
    return false;
}

namespace {

/// Phase-register law of one run; charges one run's queries.
MeasurementDistribution run_law(BitQueryOracle& oracle, int t, const QaeOptions& options)
{
    const int qubits = oracle.index_width() + 1 + t;
    if (uses_statevector(qubits, options)) return qae_circuit_distribution(oracle, t, options.qubit_cap);
    if (!oracle.is_boolean()) throw OracleError("amplitude estimation needs a Boolean oracle");
    oracle.record_applications(qae_queries_per_run(t));
    return qae_exact_distribution(oracle.marked_fraction(), t);
}

} // namespace

SingleRun qae_single_run(BitQueryOracle& oracle, int t, Rng& rng, const QaeOptions& options)
{
    const std::uint64_t before = oracle.applications();
    const MeasurementDistribution law = run_law(oracle, t, options);
    SingleRun run;
    run.y = sample_index(law, rng);
    run.estimate = phase_to_estimate(run.y, t);
    run.queries = oracle.applications() - before;
    run.qubits = oracle.index_width() + 1 + t;
    return run;
}

int phase_qubits_for_budget(std::uint64_t n, int repetitions)
{
    if (repetitions < 1 || repetitions % 2 == 0) throw std::invalid_argument("repetitions must be odd and positive");
    const auto r = static_cast<std::uint64_t>(repetitions);
    if (n < 2 * r) {
        throw BudgetError("budget too small: n = " + std::to_string(n) + " but at least " + std::to_string(2 * r) +
                          " queries are needed for " + std::to_string(repetitions) + " repetitions");
    }
    int t = 0;
    while (r << (t + 1) <= n) ++t;
    return t;
}

Estimate boolean_summation(BitQueryOracle& oracle, std::uint64_t n, Rng& rng, const QaeOptions& options)
{
    const int r = options.repetitions;
    const int t = phase_qubits_for_budget(n, r);
    const std::uint64_t before = oracle.applications();
    // The circuit is identical for every repetition, so its law is computed
    // once; the remaining repetitions are still charged in full.
    const MeasurementDistribution law = run_law(oracle, t, options);
    oracle.record_applications(static_cast<std::uint64_t>(r - 1) * qae_queries_per_run(t));

    Estimate est;
    est.seed = rng.seed();
    est.phase_qubits = t;
    est.qubits_used = oracle.index_width() + 1 + t;
    std::vector<double> outcomes;
    for (int i = 0; i < r; ++i) {
        Rng child = rng.split();
        const std::uint64_t y = sample_index(law, child);
        est.trace.push_back(y);
        outcomes.push_back(phase_to_estimate(y, t));
    }
    est.value = median_of(std::move(outcomes));
    est.queries_used = oracle.applications() - before;
    return est;
}

OutcomeLaw boolean_summation_law(double a, std::uint64_t n, int repetitions)
{
    const int t = phase_qubits_for_budget(n, repetitions);
    return median_law(estimate_law(qae_exact_distribution(a, t), t), repetitions);
}

double median_of(std::vector<double> values)
{
    if (values.empty()) throw std::invalid_argument("median of an empty list");
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
    std::nth_element(values.begin(), mid, values.end());
    return *mid;
}

Fraction recover_exact_mean(double approx, std::uint64_t n)
{
    if (n == 0) throw std::invalid_argument("recovery needs N >= 1");
    const double k = std::ceil(static_cast<double>(n) * approx + 0.5) - 1.0;
    const double clamped = std::clamp(k, 0.0, static_cast<double>(n));
    return {static_cast<std::uint64_t>(clamped), n};
}

std::uint64_t budget_for_accuracy(double epsilon)
{
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    return std::max<std::uint64_t>(ceil_count(kErrorConstant / epsilon), 2 * kDefaultRepetitions);
}

RandomizedSummationPlan plan_randomized_summation(double epsilon, int repetitions)
{
    require_epsilon(epsilon);
    RandomizedSummationPlan plan;
    plan.subsample = next_power_of_two(std::max<std::uint64_t>(2, ceil_count(4.0 / (epsilon * epsilon))));
    plan.budget = ceil_count(2.0 * kErrorConstant / epsilon);
    plan.phase_qubits = phase_qubits_for_budget(plan.budget, repetitions);
    return plan;
}

double PreparedSummation::output(double median, double negative_value) const
{
    const double v = offset + scale * median - (negative ? negative_weight * negative_value : 0.0);
    if (recover_denominator == 0) return v;
    return recover_exact_mean(v, recover_denominator).value();
}

int PreparedSummation::qubits(int repetitions) const
{
    const int own = oracle.index_width() + 1 + phase_qubits_for_budget(budget, repetitions);
    return negative ? std::max(own, negative->qubits(repetitions)) : own;
}

Estimate run_prepared(PreparedSummation& prepared, Rng& rng, const QaeOptions& options)
{
    Estimate est = boolean_summation(prepared.oracle, prepared.budget, rng, options);
    double negative_value = 0.0;
    if (prepared.negative) {
        const Estimate neg = run_prepared(*prepared.negative, rng, options);
        negative_value = neg.value;
        est.queries_used += neg.queries_used;
        est.qubits_used = std::max(est.qubits_used, neg.qubits_used);
        est.trace.insert(est.trace.end(), neg.trace.begin(), neg.trace.end());
    }
    est.value = prepared.output(est.value, negative_value);
    est.classical_evaluations = prepared.classical_evaluations;
    return est;
}

OutcomeLaw prepared_law(PreparedSummation& prepared, const QaeOptions& options)
{
    const int t = phase_qubits_for_budget(prepared.budget, options.repetitions);
    const MeasurementDistribution law = run_law(prepared.oracle, t, options);
    const OutcomeLaw median = median_law(estimate_law(law, t), options.repetitions);
    if (!prepared.negative) return median.map([&](double v) { return prepared.output(v); });
    // the two summations measure independently
    const OutcomeLaw neg = prepared_law(*prepared.negative, options);
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(median.size() * neg.size());
    for (std::size_t a = 0; a < median.size(); ++a) {
        for (std::size_t b = 0; b < neg.size(); ++b) {
            if (median.probabilities[a] == 0.0 || neg.probabilities[b] == 0.0) continue;
            pairs.emplace_back(prepared.output(median.values[a], neg.values[b]),
                               median.probabilities[a] * neg.probabilities[b]);
        }
    }
    return OutcomeLaw::from_pairs(std::move(pairs));
}

PreparedSummation prepare_deterministic_boolean_summation(const BooleanTable& f, double epsilon)
{
    require_epsilon(epsilon);
    PreparedSummation p{BitQueryOracle::boolean(f), budget_for_accuracy(epsilon)};
    if (epsilon < 0.5 / static_cast<double>(f.size())) p.recover_denominator = f.size();
    return p;
}

PreparedSummation prepare_randomized_boolean_summation(const BooleanTable& f, double epsilon, Rng& rng)
{
    const RandomizedSummationPlan plan = plan_randomized_summation(epsilon);
    return PreparedSummation{make_randomized_subsample_oracle(f, plan.subsample, rng), plan.budget};
}

Estimate deterministic_boolean_summation(const BooleanTable& f, double epsilon, Rng& rng, const QaeOptions& options)
{
    PreparedSummation p = prepare_deterministic_boolean_summation(f, epsilon);
    return run_prepared(p, rng, options);
}

Estimate randomized_boolean_summation(const BooleanTable& f, double epsilon, Rng& rng, const QaeOptions& options)
{
    const std::uint64_t seed = rng.seed();
    Rng omega = rng.split();
    PreparedSummation p = prepare_randomized_boolean_summation(f, epsilon, omega);
    Estimate est = run_prepared(p, rng, options);
    est.seed = seed;
    return est;
}

int boost_repetitions(double delta)
{
    if (!(delta > 0.0 && delta <= 0.25)) throw std::invalid_argument("delta must lie in (0, 1/4]");
    return static_cast<int>(ceil_count(8.0 * std::log(1.0 / delta)));
}

Estimate boost_success(const std::function<Estimate(Rng&)>& run, double delta, Rng& rng)
{
    const int reps = boost_repetitions(delta);
    Estimate out;
    out.seed = rng.seed();
    std::vector<double> values;
    for (int i = 0; i < reps; ++i) {
        Rng child = rng.split();
        Estimate e = run(child);
        values.push_back(e.value);
        out.queries_used += e.queries_used;
        out.qubits_used = std::max(out.qubits_used, e.qubits_used);
        out.phase_qubits = std::max(out.phase_qubits, e.phase_qubits);
        out.classical_evaluations += e.classical_evaluations;
        out.trace.insert(out.trace.end(), e.trace.begin(), e.trace.end());
    }
    out.value = median_of(std::move(values));
    return out;
}

double median_l2_error(double a, int t, int repetitions)
{
    const OutcomeLaw law = median_law(estimate_law(qae_exact_distribution(a, t), t), repetitions);
    return std::sqrt(law.mean_squared_error(a));
}

std::vector<CalibrationRow> calibrate_error_constant(int max_t, int grid, int repetitions)
{
    if (grid < 1) throw std::invalid_argument("calibration grid needs at least one interval");
    std::vector<CalibrationRow> rows;
    for (int t = 1; t <= max_t; ++t) {
        CalibrationRow row;
        row.phase_qubits = t;
        row.largest_budget = (static_cast<std::uint64_t>(repetitions) << (t + 1)) - 1;
        for (int i = 0; i <= grid; ++i) {
            const double a = static_cast<double>(i) / grid;
            const double e = median_l2_error(a, t, repetitions);
            if (e > row.worst_error) {
                row.worst_error = e;
                row.worst_amplitude = a;
            }
        }
        row.constant = static_cast<double>(row.largest_budget) * row.worst_error;
        rows.push_back(row);
    }
    return rows;
}

} // namespace randq
