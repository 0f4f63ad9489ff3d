#include <doctest.h>

#include <cmath>
#include <numbers>

#include "randq/statevector.hpp"

using namespace randq;

namespace {

StateVector random_state(int k, Rng& rng)
{
    std::vector<Complex> amp(std::uint64_t{1} << k);
    double norm = 0.0;
    for (auto& a : amp) {
        a = Complex(rng.normal(), rng.normal());
        norm += std::norm(a);
    }
    for (auto& a : amp) a /= std::sqrt(norm);
    return StateVector::from_amplitudes(std::move(amp));
}

double distance(const StateVector& a, const StateVector& b)
{
    double s = 0.0;
    for (std::uint64_t i = 0; i < a.dimension(); ++i) s += std::norm(a.amplitude(i) - b.amplitude(i));
    return std::sqrt(s);
}

} // namespace

TEST_CASE("basis states")
{
    const StateVector s1 = new_basis_state(1, 0);
    CHECK(s1.amplitude(0) == Complex(1.0));
    CHECK(s1.amplitude(1) == Complex(0.0));

    const StateVector s2 = new_basis_state(2, 3);
    for (std::uint64_t i = 0; i < 3; ++i) CHECK(s2.amplitude(i) == Complex(0.0));
    CHECK(s2.amplitude(3) == Complex(1.0));

    CHECK_THROWS_AS(new_basis_state(1, 2), SimulationError);
    CHECK_THROWS_AS(new_basis_state(27, 0), QubitCapExceeded);
    CHECK_THROWS_AS(new_basis_state(4, 0, 3), QubitCapExceeded);
}

TEST_CASE("hadamard")
{
    StateVector s = new_basis_state(1, 0);
    apply_hadamard_all(s, {0, 1});
    CHECK(s.amplitude(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(s.amplitude(1).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

    StateVector u = new_basis_state(5, 0);
    apply_hadamard_all(u, {0, 5});
    for (std::uint64_t i = 0; i < 32; ++i) CHECK(std::abs(u.amplitude(i) - Complex(std::pow(2.0, -2.5))) < 1e-15);

    Rng rng(11);
    const StateVector r = random_state(4, rng);
    StateVector twice = r;
    apply_hadamard_all(twice, {0, 4});
    apply_hadamard_all(twice, {0, 4});
    CHECK(distance(r, twice) < kIdentityTolerance);

    CHECK_THROWS_AS(apply_hadamard_all(u, {3, 4}), SimulationError);
}

TEST_CASE("unitary sequences")
{
    Rng rng(5);
    const StateVector r = random_state(3, rng);

    StateVector same = r;
    apply_unitary(same, {});
    CHECK(distance(r, same) == 0.0);

    const GateSequence u{{gate::Hadamard{0}},
                         {gate::Phase{1, 0.7}, 1},
                         {gate::Swap{0, 2}},
                         {gate::PauliX{1}, 4},
                         {gate::Matrix{2, Mat2{Complex(0.6), Complex(0, 0.8), Complex(0, 0.8), Complex(0.6)}}},
                         {gate::ZeroReflection{{0, 2}}, 4}};
    StateVector round = r;
    apply_unitary(round, u);
    apply_unitary(round, inverse(u));
    CHECK(distance(r, round) < kNormTolerance);

    StateVector one = new_basis_state(1, 1);
    apply_gate(one, {gate::Phase{0, 0.3}});
    CHECK(std::abs(one.amplitude(1) - std::polar(1.0, 0.3)) < 1e-15);

    StateVector bad = new_basis_state(1, 0);
    CHECK_THROWS_AS(apply_gate(bad, {gate::Matrix{0, Mat2{Complex(2.0), 0, 0, Complex(1.0)}}}), NormDriftError);
    CHECK_THROWS_AS(apply_gate(bad, {gate::Hadamard{0}, 1}), SimulationError);
}

TEST_CASE("qft matches the discrete Fourier transform")
{
    for (int t = 1; t <= 5; ++t) {
        const std::uint64_t m = std::uint64_t{1} << t;
        for (std::uint64_t x = 0; x < m; ++x) {
            StateVector s = new_basis_state(t, x);
            apply_qft(s, {0, t});
            for (std::uint64_t y = 0; y < m; ++y) {
                const double angle = 2.0 * std::numbers::pi * static_cast<double>(x * y) / static_cast<double>(m);
                const Complex expect = std::polar(1.0 / std::sqrt(static_cast<double>(m)), angle);
                CHECK(std::abs(s.amplitude(y) - expect) < 1e-12);
            }
        }
    }
}

TEST_CASE("inverse qft")
{
    StateVector one = new_basis_state(1, 1);
    apply_inverse_qft(one, {0, 1});
    CHECK(std::abs(one.amplitude(0) - Complex(1 / std::sqrt(2.0))) < 1e-15);
    CHECK(std::abs(one.amplitude(1) + Complex(1 / std::sqrt(2.0))) < 1e-15);

    Rng rng(3);
    const StateVector r = random_state(5, rng);
    StateVector s = r;
    apply_qft(s, {1, 3});
    apply_inverse_qft(s, {1, 3});
    CHECK(distance(r, s) < kNormTolerance);

    StateVector u = new_basis_state(4, 0);
    apply_hadamard_all(u, {0, 4});
    apply_inverse_qft(u, {0, 4});
    CHECK(std::abs(u.amplitude(0) - Complex(1.0)) < kNormTolerance);

    StateVector w = new_basis_state(2, 0);
    CHECK_THROWS_AS(apply_inverse_qft(w, {0, 0}), SimulationError);
}

TEST_CASE("measurement distributions")
{
    const StateVector five = new_basis_state(3, 5);
    const auto d = measurement_distribution(five, {0, 3});
    for (std::uint64_t i = 0; i < 8; ++i) CHECK(d[i] == (i == 5 ? 1.0 : 0.0));

    StateVector u = new_basis_state(3, 0);
    apply_hadamard_all(u, {0, 3});
    const auto du = measurement_distribution(u, {0, 3});
    for (std::uint64_t i = 0; i < 8; ++i) CHECK(du[i] == doctest::Approx(0.125).epsilon(1e-14));
    du.validate();

    Rng rng(17);
    const StateVector r = random_state(6, rng);
    const auto full = measurement_distribution(r, {0, 6});
    const Register sub{2, 3};
    const auto direct = measurement_distribution(r, sub);
    std::vector<double> marg(sub.size(), 0.0);
    for (std::uint64_t i = 0; i < full.size(); ++i) marg[sub.extract(i)] += full[i];
    for (std::uint64_t v = 0; v < sub.size(); ++v) CHECK(std::abs(marg[v] - direct[v]) < kIdentityTolerance);
}

TEST_CASE("sampling")
{
    Rng rng(1);
    const StateVector five = new_basis_state(3, 5);
    for (int i = 0; i < 100; ++i) CHECK(sample_measurement(five, {0, 3}, rng) == 5);

    Rng gen(23);
    const StateVector r = random_state(3, gen);
    Rng a(99);
    Rng b(99);
    for (int i = 0; i < 50; ++i) CHECK(sample_measurement(r, {0, 3}, a) == sample_measurement(r, {0, 3}, b));

    // every frequency within 3 sigma, and a chi-square far below its 0.999 quantile
    const auto dist = measurement_distribution(r, {0, 3});
    const int n = 100000;
    std::vector<int> counts(8, 0);
    Rng c(7);
    for (int i = 0; i < n; ++i) ++counts[sample_index(dist, c)];
    double chi2 = 0.0;
    for (int v = 0; v < 8; ++v) {
        const double expect = n * dist[v];
        const double sigma = std::sqrt(n * dist[v] * (1 - dist[v]));
        CHECK(std::abs(counts[v] - expect) <= 3.0 * sigma + 1.0);
        chi2 += (counts[v] - expect) * (counts[v] - expect) / expect;
    }
    CHECK(chi2 < 24.32); // chi-square, 7 degrees of freedom
}

TEST_CASE("norm preservation and linearity")
{
    Rng rng(31);
    const std::vector<Gate> gates{{gate::Hadamard{1}},    {gate::PauliX{0}, 4},         {gate::Phase{2, 1.1}, 1},
                                  {gate::Swap{0, 3}},     {gate::ZeroReflection{{1, 2}}}, {gate::Hadamard{3}, 3}};
    for (const Gate& g : gates) {
        const StateVector p1 = random_state(4, rng);
        const StateVector p2 = random_state(4, rng);
        StateVector g1 = p1;
        StateVector g2 = p2;
        apply_gate(g1, g);
        apply_gate(g2, g);
        CHECK(std::abs(g1.norm() - 1.0) < kNormTolerance);

        const Complex alpha(rng.normal(), rng.normal());
        const Complex beta(rng.normal(), rng.normal());
        std::vector<Complex> mix(16);
        for (std::uint64_t i = 0; i < 16; ++i) mix[i] = alpha * p1.amplitude(i) + beta * p2.amplitude(i);
        double nrm = 0.0;
        for (auto& z : mix) nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        for (auto& z : mix) z /= nrm;
        StateVector combined = StateVector::from_amplitudes(mix);
        apply_gate(combined, g);
        for (std::uint64_t i = 0; i < 16; ++i) {
            const Complex expect = (alpha * g1.amplitude(i) + beta * g2.amplitude(i)) / nrm;
            CHECK(std::abs(combined.amplitude(i) - expect) < kNormTolerance);
        }
    }
}
