#include <doctest.h>

#include <cmath>

#include "randq/baselines.hpp"
#include "randq/catalog.hpp"
#include "randq/quadrature.hpp"

using namespace randq;

TEST_CASE("Monte Carlo on constants and its RMS error")
{
    Rng rng(1);
    const Integrand c = [](std::span<const double>) { return 0.37; };
    CHECK(monte_carlo(c, 50, 3, rng) == doctest::Approx(0.37).epsilon(1e-15));
    CHECK_THROWS(monte_carlo(c, 0, 1, rng));

    const Integrand identity = [](std::span<const double> x) { return x[0]; };
    double mse = 0.0;
    const int reps = 10000;
    for (int k = 0; k < reps; ++k) mse += std::pow(monte_carlo(identity, 100, 1, rng) - 0.5, 2);
    const double rms = std::sqrt(mse / reps);
    CHECK(rms <= 0.1);
    // variance of U[0,1] is 1/12
    CHECK(rms == doctest::Approx(std::sqrt(1.0 / 1200.0)).epsilon(0.03));
}

TEST_CASE("Monte Carlo RMS slope")
{
    Rng rng(2);
    const Integrand identity = [](std::span<const double> x) { return x[0]; };
    std::vector<double> ns{100, 1000, 10000};
    std::vector<double> rms;
    for (double n : ns) {
        double mse = 0.0;
        const int reps = 4000;
        for (int k = 0; k < reps; ++k) mse += std::pow(monte_carlo(identity, n, 1, rng) - 0.5, 2);
        rms.push_back(std::sqrt(mse / reps));
    }
    const double slope = log_log_slope(ns, rms);
    MESSAGE("Monte Carlo RMS slope " << slope);
    CHECK(std::abs(slope + 0.5) <= 0.05);
}

TEST_CASE("Monte Carlo is unbiased on the catalog")
{
    Rng rng(3);
    for (const CatalogIntegrand& f : integrand_suite(2, 0)) {
        const int reps = 100000;
        double sum = 0.0;
        double sum_sq = 0.0;
        for (int k = 0; k < reps; ++k) {
            const double v = monte_carlo(f.f, 4, 2, rng);
            sum += v;
            sum_sq += v * v;
        }
        const double mean = sum / reps;
        const double se = std::sqrt(std::max(0.0, sum_sq / reps - mean * mean) / reps);
        INFO(f.name);
        CHECK(std::abs(mean - f.truth) <= 3.0 * se + 1e-12);
    }
}

TEST_CASE("midpoint rule")
{
    CHECK(lipschitz_quadrature([](double) { return 0.25; }, 7) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(lipschitz_quadrature([](double x) { return x; }, 9) == doctest::Approx(0.5).epsilon(1e-15));
    const double kink = lipschitz_quadrature([](double x) { return std::abs(x - 1.0 / 3.0); }, 25);
    CHECK(std::abs(kink - 5.0 / 18.0) <= 0.01);
    CHECK_THROWS(lipschitz_quadrature([](double x) { return x; }, 1));
    CHECK(lipschitz_quadrature_size(0.01) == 25);
    CHECK(lipschitz_quadrature_size(0.1) == 3);
}

TEST_CASE("midpoint rule worst case over random Lipschitz functions")
{
    Rng rng(4);
    for (std::uint64_t n : {2, 5, 16, 25, 100}) {
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            const PiecewiseLinear f = random_lipschitz_function(rng);
            REQUIRE(f.lipschitz() <= 1.0 + 1e-12);
            worst = std::max(worst, std::abs(lipschitz_quadrature(f, n) - f.integral()));
        }
        CHECK(worst <= 1.0 / (4.0 * n) + 1e-15);
    }
}

TEST_CASE("piecewise-linear integral is exact")
{
    const PiecewiseLinear f({0.0, 0.5, 0.25});
    CHECK(f.integral() == doctest::Approx(0.5 * (0.25 + 0.375)));
    CHECK(f(0.25) == doctest::Approx(0.25));
    CHECK(f.lipschitz() == doctest::Approx(1.0));
}

TEST_CASE("rescaling a Lipschitz function")
{
    const RescaledLipschitz big = rescale_lipschitz([](double) { return 1000.0; });
    CHECK(big.g(0.7) == 0.0);
    CHECK(big.shift == 1000.0);

    const RescaledLipschitz id = rescale_lipschitz([](double x) { return x; });
    CHECK(id.g(0.3) == 0.3);
    CHECK(lipschitz_quadrature(id.g, 10) == doctest::Approx(0.5));

    Rng rng(5);
    for (int k = 0; k < 100; ++k) {
        const PiecewiseLinear f = random_lipschitz_function(rng, 64, 10.0);
        std::vector<double> shifted(f.knots().begin(), f.knots().end());
        for (double& v : shifted) v -= f.knots()[0];
        const PiecewiseLinear g(shifted);
        const RescaledLipschitz r = rescale_lipschitz(f);
        CHECK(g.integral() >= -0.5);
        CHECK(g.integral() <= 0.5);
        CHECK(g.integral() + r.shift == doctest::Approx(f.integral()).epsilon(1e-12));
        for (double x : {0.0, 0.1, 0.55, 1.0}) {
            CHECK(r.g(x) == doctest::Approx(g(x)).epsilon(1e-12));
            CHECK(std::abs(r.g(x)) <= x + 1e-12);
        }
    }
}

TEST_CASE("adversarial pair")
{
    const AdversarialPair empty = adversarial_pair({}, 1, 0.1);
    CHECK(empty.integral_lower_bound == 1.0);
    CHECK(empty.f1(std::vector<double>{0.4}) == 1.0);

    Rng rng(6);
    std::vector<std::vector<double>> pts;
    for (int k = 0; k < 10; ++k) pts.push_back({rng.uniform()});
    const AdversarialPair pair = adversarial_pair(pts, 1, 0.2);
    CHECK(pair.integral_lower_bound >= 0.8);
    for (const auto& t : pts) {
        CHECK(pair.f1(t) == 0.0);
        CHECK(pair.f2(t) == 0.0);
    }
    // the exact trapezoid integral agrees with a fine midpoint sum
    double fine = 0.0;
    const int cells = 200000;
    for (int k = 0; k < cells; ++k) fine += pair.f1(std::vector<double>{(k + 0.5) / cells});
    CHECK(fine / cells == doctest::Approx(pair.integral_lower_bound).epsilon(1e-6));
    for (int k = 0; k < 1000; ++k) {
        const std::vector<double> x{rng.uniform()};
        CHECK(std::abs(pair.f1(x)) <= 1.0);
        CHECK(pair.f2(x) == -pair.f1(x));
    }
    CHECK_THROWS(adversarial_pair(pts, 1, 0.0));
    CHECK_THROWS(adversarial_pair(pts, 2, 0.5));
}

TEST_CASE("adversarial pair defeats every point set up to 1024 points")
{
    Rng rng(7);
    for (int d : {1, 2}) {
        for (int k = 0; k <= 10; ++k) {
            std::vector<std::vector<double>> pts(std::size_t{1} << k, std::vector<double>(d));
            for (auto& p : pts) {
                for (double& x : p) x = rng.uniform();
            }
            const AdversarialPair pair = adversarial_pair(pts, d, 0.2);
            CHECK(pair.worst_case_error_bound() >= 0.8);
            for (const auto& t : pts) REQUIRE(pair.f1(t) == 0.0);
        }
    }
}

TEST_CASE("Boolean information complexity")
{
    CHECK(info_complexity_boolean(0.0, 64) == 64);
    CHECK(info_complexity_boolean(0.5, 64) == 0);
    CHECK(info_complexity_boolean(0.1, 100) == 80);
    CHECK(info_complexity_boolean(0.1, 64) == 52);
    CHECK_THROWS(info_complexity_boolean(0.6, 64));
    std::uint64_t previous = info_complexity_boolean(0.0, 1000);
    for (int k = 1; k <= 50; ++k) {
        const std::uint64_t v = info_complexity_boolean(k / 100.0, 1000);
        CHECK(v <= previous);
        previous = v;
    }
    CHECK(randomized_info_complexity_boolean(0.05, 1 << 16) == 81);
    CHECK(randomized_info_complexity_boolean(0.05, 16) == 15);
}

TEST_CASE("interval entropy")
{
    CHECK(entropy_interval(0.5, 0.5) == 0.0);
    CHECK(entropy_interval(0.125, 0.5) == 2.0);
    CHECK(entropy_interval(0.01, 0.5) == doctest::Approx(std::log2(50.0)));
    // log eps^-1 + O(1)
    for (double eps : {0.1, 0.01, 0.001, 1e-4}) {
        CHECK(std::abs(entropy_interval(eps, 0.5) - std::log2(1.0 / eps)) <= 1.0);
    }
}

TEST_CASE("Gauss-Hermite rule")
{
    // exact for polynomials of degree below 2n: E Z^2 = v, E Z^4 = 3 v^2, E Z^6 = 15 v^3
    const double v = 0.7;
    CHECK(gaussian_expectation([](double) { return 1.0; }, v, 4) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gaussian_expectation([](double z) { return z * z; }, v, 4) == doctest::Approx(v).epsilon(1e-14));
    CHECK(gaussian_expectation([](double z) { return std::pow(z, 4); }, v, 4) ==
          doctest::Approx(3.0 * v * v).epsilon(1e-13));
    CHECK(gaussian_expectation([](double z) { return std::pow(z, 6); }, v, 4) ==
          doctest::Approx(15.0 * v * v * v).epsilon(1e-13));
    CHECK(gaussian_expectation([](double z) { return std::pow(z, 5); }, v, 3) == doctest::Approx(0.0));
    const auto [x, w] = gauss_hermite_rule(1);
    CHECK(x[0] == doctest::Approx(0.0));
    CHECK(w[0] == doctest::Approx(std::sqrt(std::acos(-1.0))));
    CHECK_THROWS(gauss_hermite_rule(0));
}

TEST_CASE("log-log slope of a power law")
{
    CHECK(log_log_slope({1.0, 2.0, 4.0, 8.0}, {3.0, 1.5, 0.75, 0.375}) == doctest::Approx(-1.0));
    CHECK(log_log_slope({10.0, 1000.0}, {1.0, 10.0}) == doctest::Approx(0.5));
    CHECK_THROWS(log_log_slope({1.0}, {1.0}));
}
