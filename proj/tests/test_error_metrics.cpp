#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "randq/baselines.hpp"
#include "randq/catalog.hpp"
#include "randq/error_metrics.hpp"

using namespace randq;

namespace {

const QaeOptions kAnalytic{Backend::analytic};

SuiteMember fixed_law(std::string name, double truth, OutcomeLaw law)
{
    return {std::move(name), truth, [law](Rng&) { return OmegaOutcome{law, 0, 0}; }};
}

std::vector<SuiteMember> randomized_boolean_suite(std::uint64_t n, double eps)
{
    std::vector<SuiteMember> suite;
    for (CatalogBoolean& b : boolean_suite(n)) {
        auto table = std::make_shared<BooleanTable>(b.table);
        suite.push_back({b.name, table->mean(), [table, eps](Rng& omega) {
                             PreparedSummation p = prepare_randomized_boolean_summation(*table, eps, omega);
                             return outcome_of(p, kAnalytic);
                         }});
    }
    return suite;
}

} // namespace

TEST_CASE("an always-correct algorithm has zero error")
{
    Rng rng(1);
    const ErrorReport r = randomized_error("toy", "exact", QueryKind::deterministic, 0.1,
                                           {fixed_law("a", 0.3, OutcomeLaw::point(0.3)),
                                            fixed_law("b", 0.7, OutcomeLaw::point(0.7))},
                                           {1, {0.25}}, rng);
    CHECK(r.suite_max == 0.0);
    CHECK(r.per_function[0].probabilistic_error[0] == 0.0);
}

TEST_CASE("a constant offset gives exactly that error")
{
    Rng rng(2);
    const ErrorReport r = randomized_error("toy", "offset", QueryKind::randomized, 0.1,
                                           {fixed_law("a", 0.25, OutcomeLaw::point(0.25 - 0.125))}, {40, {0.25, 0.5}},
                                           rng);
    CHECK(r.per_function[0].randomized_error == 0.125);
    CHECK(r.per_function[0].standard_error == 0.0);
    CHECK(r.per_function[0].probabilistic_error == std::vector<double>{0.125, 0.125});
}

TEST_CASE("randomized error equals a brute-force enumeration of the product law")
{
    // B = 0.5 on N = 64, budget 112 gives t = 4 and seven repetitions
    std::vector<std::uint8_t> bits(64, 0);
    std::fill_n(bits.begin(), 32, std::uint8_t{1});
    const BooleanTable f(bits);
    PreparedSummation p = prepare_deterministic_boolean_summation(f, 0.3);
    p.budget = 112;
    REQUIRE(phase_qubits_for_budget(p.budget, 7) == 4);
    Rng rng(3);
    const ErrorReport r = randomized_error(
        "boolean-sum", "deterministic", QueryKind::deterministic, 0.3,
        {{"half", 0.5, [&](Rng&) { return outcome_of(p, kAnalytic); }}}, {1, {}}, rng);

    const MeasurementDistribution single = qae_exact_distribution(0.5, 4);
    std::array<double, 16> est{};
    std::array<double, 16> prob{};
    for (std::uint64_t y = 0; y < 16; ++y) {
        est[y] = phase_to_estimate(y, 4);
        prob[y] = single.probabilities[y];
    }
    // all 16^7 = 2^28 outcome tuples
    double mse = 0.0;
    std::array<int, 7> idx{};
    std::array<double, 8> weight{};
    weight[0] = 1.0;
    for (int d = 0; d < 7; ++d) weight[d + 1] = weight[d] * prob[0];
    for (;;) {
        std::array<double, 7> v{};
        for (int d = 0; d < 7; ++d) v[d] = est[idx[d]];
        std::nth_element(v.begin(), v.begin() + 3, v.end());
        mse += weight[7] * (v[3] - 0.5) * (v[3] - 0.5);
        int d = 6;
        while (d >= 0 && idx[d] == 15) idx[d--] = 0;
        if (d < 0) break;
        ++idx[d];
        for (int e = d; e < 7; ++e) weight[e + 1] = weight[e] * prob[idx[e]];
    }
    CHECK(r.per_function[0].randomized_error == doctest::Approx(std::sqrt(mse)).epsilon(1e-12));
    CHECK(r.queries_mean == 7.0 * 15.0);
}

TEST_CASE("probabilistic error is a quantile")
{
    const OutcomeLaw constant = OutcomeLaw::point(0.2);
    for (double delta : {0.01, 0.25, 0.9}) CHECK(probabilistic_error(constant, delta) == 0.2);
    const OutcomeLaw two{{0.0, 1.0}, {0.9, 0.1}};
    CHECK(probabilistic_error(two, 0.25) == 0.0);
    CHECK(probabilistic_error(two, 0.05) == 1.0);
    CHECK(probabilistic_error(two, 0.1) == 0.0);
    CHECK_THROWS(probabilistic_error(two, 0.0));
}

TEST_CASE("omega sample must resolve delta")
{
    Rng rng(4);
    const auto suite = std::vector<SuiteMember>{fixed_law("a", 0.0, OutcomeLaw::point(0.0))};
    CHECK_THROWS(randomized_error("toy", "x", QueryKind::randomized, 0.1, suite, {100, {0.05}}, rng));
    CHECK_NOTHROW(randomized_error("toy", "x", QueryKind::randomized, 0.1, suite, {200, {0.05}}, rng));
    CHECK_NOTHROW(randomized_error("toy", "x", QueryKind::deterministic, 0.1, suite, {1, {0.05}}, rng));
}

TEST_CASE("randomized Boolean summation report")
{
    Rng rng(5);
    ErrorReport r = randomized_error("boolean-sum", "randomized", QueryKind::randomized, 0.1,
                                     randomized_boolean_suite(1024, 0.1), {200, {0.05, 0.25, 0.5}}, rng);
    CHECK(r.suite_max <= 0.1);
    for (const FunctionError& f : r.per_function) {
        INFO(f.name);
        CHECK(f.probabilistic_error[0] >= f.probabilistic_error[1]);
        CHECK(f.probabilistic_error[1] >= f.probabilistic_error[2]);
        CHECK(f.randomized_error >= 0.0);
    }
    double worst = 0.0;
    for (const FunctionError& f : r.per_function) worst = std::max(worst, f.randomized_error);
    CHECK(r.suite_max == worst);

    add_chebyshev_checks(r);
    CHECK(r.checks.size() == r.per_function.size() * 3 * 2);
    CHECK(r.all_checks_passed());

    const nlohmann::json j = r.to_json();
    for (const char* key : {"problem", "algorithm", "epsilon", "delta", "per_function", "suite_max", "queries_mean",
                            "qubits", "checks"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["per_function"].size() == r.per_function.size());
}

TEST_CASE("reports do not depend on the worker count")
{
    auto run = [](int workers) {
        Rng rng(6);
        return randomized_error("boolean-sum", "randomized", QueryKind::randomized, 0.2,
                                randomized_boolean_suite(256, 0.2), {40, {0.25}, workers}, rng)
            .to_json()
            .dump();
    };
    CHECK(run(1) == run(4));
}

TEST_CASE("Chebyshev checks")
{
    CHECK(chebyshev_check(0.3, 0.3, 0.25, 1.0).passed);
    CHECK(chebyshev_check(0.3, 0.3, 0.25, 0.5).passed);

    // error a with probability just above delta: the quantile is a and the
    // L2 error is a sqrt(delta (1 + eta))
    const double delta = 0.25;
    const double eta = 1e-10;
    const OutcomeLaw extremal{{0.0, 1.0}, {1.0 - delta * (1.0 + eta), delta * (1.0 + eta)}};
    const double alpha = probabilistic_error(extremal, delta);
    const double l2 = std::sqrt(extremal.mean_squared_error(0.0));
    CHECK(alpha == 1.0);
    const CheckResult tight = chebyshev_check(alpha, l2, delta, 0.5);
    CHECK(tight.passed);
    CHECK(tight.margin() <= 1e-9);
    CHECK(tight.margin() >= 0.0);
    CHECK_FALSE(chebyshev_check(1.0, 0.4, delta, 0.5).passed);
}

TEST_CASE("qubit lower bounds")
{
    std::vector<std::uint8_t> bits(64, 0);
    bits[3] = 1;
    PreparedSummation det = prepare_deterministic_boolean_summation(BooleanTable(bits), 0.1);
    const int k = det.qubits();
    CHECK(k == 6 + 1 + phase_qubits_for_budget(det.budget, 7));
    for (const CheckResult& c : qubit_lower_bound_check(k, 0.1, {"boolean-sum", 64}, QueryKind::deterministic)) {
        INFO(c.name);
        CHECK(c.passed);
    }
    CHECK(info_complexity_boolean(0.1, 64) == 52);

    Rng rng(7);
    PreparedSummation ran = prepare_randomized_boolean_summation(BooleanTable(bits), 0.1, rng);
    const auto checks = qubit_lower_bound_check(ran.qubits(), 0.1, {"boolean-sum", 64}, QueryKind::randomized);
    CHECK(checks[0].lhs == doctest::Approx(std::log2(5.0)));
    for (const CheckResult& c : checks) CHECK(c.passed);
    CHECK(std::ceil(entropy_interval(0.1, 0.5)) == 3);

    for (const CheckResult& c : qubit_lower_bound_check(1, 0.1, {"boolean-sum", 64}, QueryKind::randomized)) {
        CHECK_FALSE(c.passed);
    }
    CHECK_THROWS(qubit_lower_bound_check(5, 0.1, {"mystery", 0, 0.0}, QueryKind::deterministic));
    CHECK(qubit_lower_bound_check(5, 0.1, {"integrate-r0", 0, 1.0}, QueryKind::deterministic).size() == 1);

    CHECK(qubit_separation_check(10, 0.05, 1 << 16).passed);
    CHECK_FALSE(qubit_separation_check(16, 0.05, 1 << 16).passed);
}

TEST_CASE("resource report")
{
    Estimate a;
    a.value = 0.5;
    a.queries_used = 8;
    a.qubits_used = 9;
    const ResourceRow one = resource_report(0.1, {a}, 0.5);
    CHECK(one.queries_mean == 8.0);
    CHECK(one.qubits == 9);
    CHECK(one.rms_error == 0.0);

    Estimate b = a;
    b.queries_used = 16;
    b.value = 0.8;
    const ResourceRow mixed = resource_report(0.1, {a, b}, 0.5);
    CHECK(mixed.queries_mean == 12.0);
    CHECK(mixed.rms_error == doctest::Approx(std::sqrt(0.09 / 2.0)));
    CHECK(resource_report(0.1, {a, a, a}, 0.5).queries_mean == 8.0);
}
