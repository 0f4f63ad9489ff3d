#include "randq/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "randq/numeric.hpp"

namespace randq {

double monte_carlo(const Integrand& f, std::uint64_t n, int d, Rng& rng)
{
    if (n < 1) throw std::invalid_argument("Monte Carlo needs at least one sample");
    if (d < 1) throw std::invalid_argument("dimension must be at least 1");
    std::vector<double> x(d);
    double sum = 0.0;
    for (std::uint64_t l = 0; l < n; ++l) {
        for (double& xi : x) xi = rng.uniform();
        sum += f(x);
    }
    return sum / static_cast<double>(n);
}

double lipschitz_quadrature(const UnivariateFunction& f, std::uint64_t n)
{
    if (n < 2) throw std::invalid_argument("Lipschitz quadrature needs n >= 2");
    const double dn = static_cast<double>(n);
    double sum = 0.0;
    for (std::uint64_t j = 1; j <= n; ++j) sum += f((2.0 * static_cast<double>(j) - 1.0) / (2.0 * dn));
    return sum / dn;
}

std::uint64_t lipschitz_quadrature_size(double epsilon)
{
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    return std::max<std::uint64_t>(2, ceil_count(1.0 / (4.0 * epsilon)));
}

RescaledLipschitz rescale_lipschitz(const UnivariateFunction& f)
{
    const double f0 = f(0.0);
    return {[f, f0](double x) { return f(x) - f0; }, f0};
}

PiecewiseLinear::PiecewiseLinear(std::vector<double> knots) : knots_(std::move(knots))
{
    if (knots_.size() < 2) throw std::invalid_argument("a piecewise-linear function needs two knots");
}

double PiecewiseLinear::operator()(double x) const
{
    const std::size_t grid = knots_.size() - 1;
    const double u = std::clamp(x, 0.0, 1.0) * static_cast<double>(grid);
    const std::size_t k = std::min(static_cast<std::size_t>(u), grid - 1);
    const double s = u - static_cast<double>(k);
    return (1.0 - s) * knots_[k] + s * knots_[k + 1];
}

double PiecewiseLinear::integral() const
{
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < knots_.size(); ++k) sum += 0.5 * (knots_[k] + knots_[k + 1]);
    return sum / static_cast<double>(knots_.size() - 1);
}

double PiecewiseLinear::lipschitz() const
{
    double worst = 0.0;
    const double grid = static_cast<double>(knots_.size() - 1);
    for (std::size_t k = 0; k + 1 < knots_.size(); ++k) worst = std::max(worst, std::abs(knots_[k + 1] - knots_[k]) * grid);
    return worst;
}

PiecewiseLinear random_lipschitz_function(Rng& rng, int grid, double offset)
{
    if (grid < 1) throw std::invalid_argument("grid must be positive");
    std::vector<double> knots(grid + 1);
    knots[0] = offset * (2.0 * rng.uniform() - 1.0);
    for (int k = 1; k <= grid; ++k) knots[k] = knots[k - 1] + (2.0 * rng.uniform() - 1.0) / grid;
    return PiecewiseLinear(std::move(knots));
}

double adversarial_integral_1d(std::span<const double> points, double radius)
{
    // f1 is linear between consecutive breakpoints, so the trapezoid rule on
    // them is exact
    std::vector<double> t(points.begin(), points.end());
    std::sort(t.begin(), t.end());
    std::vector<double> knots{0.0, 1.0};
    for (std::size_t j = 0; j < t.size(); ++j) {
        knots.push_back(t[j]);
        knots.push_back(t[j] - radius);
        knots.push_back(t[j] + radius);
        if (j + 1 < t.size()) knots.push_back(0.5 * (t[j] + t[j + 1]));
    }
    std::erase_if(knots, [](double x) { return x < 0.0 || x > 1.0; });
    std::sort(knots.begin(), knots.end());
    auto value = [&](double x) {
        double dist = std::numeric_limits<double>::infinity();
        const auto it = std::lower_bound(t.begin(), t.end(), x);
        if (it != t.end()) dist = std::min(dist, *it - x);
        if (it != t.begin()) dist = std::min(dist, x - *(it - 1));
        return std::min(1.0, dist / radius);
    };
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        sum += 0.5 * (value(knots[k]) + value(knots[k + 1])) * (knots[k + 1] - knots[k]);
    }
    return sum;
}

AdversarialPair adversarial_pair(std::vector<std::vector<double>> points, int d, double gamma)
{
    if (d < 1) throw std::invalid_argument("dimension must be at least 1");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
    for (const auto& p : points) {
        if (static_cast<int>(p.size()) != d) throw std::invalid_argument("point has the wrong dimension");
    }
    AdversarialPair pair;
    const double n = static_cast<double>(points.size());
    if (points.empty()) {
        pair.f1 = [](std::span<const double>) { return 1.0; };
        pair.f2 = [](std::span<const double>) { return -1.0; };
        pair.integral_lower_bound = 1.0;
        return pair;
    }
    // n cubes of side 2 rho excise at most n (2 rho)^d = gamma
    const double rho = 0.5 * std::pow(gamma / n, 1.0 / d);
    if (rho < 1e-12) throw std::invalid_argument("gamma too small for the number of points");
    pair.radius = rho;
    auto shared = std::make_shared<const std::vector<std::vector<double>>>(std::move(points));
    pair.f1 = [shared, rho](std::span<const double> x) {
        double dist = std::numeric_limits<double>::infinity();
        for (const auto& t : *shared) {
            double inf = 0.0;
            for (std::size_t a = 0; a < t.size(); ++a) inf = std::max(inf, std::abs(x[a] - t[a]));
            dist = std::min(dist, inf);
        }
        return std::min(1.0, dist / rho);
    };
    pair.f2 = [f1 = pair.f1](std::span<const double> x) { return -f1(x); };
    if (d == 1) {
        std::vector<double> t;
        for (const auto& p : *shared) t.push_back(p[0]);
        pair.integral_lower_bound = adversarial_integral_1d(t, rho);
    } else {
        pair.integral_lower_bound = 1.0 - n * std::pow(2.0 * rho, d);
    }
    return pair;
}

std::uint64_t info_complexity_boolean(double epsilon, std::uint64_t n)
{
    if (!(epsilon >= 0.0 && epsilon <= 0.5)) throw std::invalid_argument("epsilon must lie in [0, 0.5]");
    return ceil_count(static_cast<double>(n) * (1.0 - 2.0 * epsilon));
}

std::uint64_t randomized_info_complexity_boolean(double epsilon, std::uint64_t n)
{
    const std::uint64_t worst = info_complexity_boolean(epsilon, n);
    if (epsilon == 0.0) return worst;
    const double root = std::max(0.0, 1.0 / (2.0 * epsilon) - 1.0);
    return std::min(worst, ceil_count(root * root));
}

double entropy_interval(double epsilon, double halfwidth)
{
    if (!(epsilon > 0.0 && halfwidth > 0.0)) throw std::invalid_argument("epsilon and halfwidth must be positive");
    return std::log2(static_cast<double>(std::max<std::uint64_t>(1, ceil_count(halfwidth / epsilon))));
}

} // namespace randq
