#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "randq/reductions.hpp"
#include "randq/rng.hpp"

namespace randq {

using UnivariateFunction = std::function<double(double)>;

/// (1/n) sum f(t_l) with t_l iid uniform on [0,1]^d.
double monte_carlo(const Integrand& f, std::uint64_t n, int d, Rng& rng);

/// Composite midpoint rule (1/n) sum_j f((2j-1)/(2n)); worst-case error
/// 1/(4n) on Lipschitz-1 functions.
double lipschitz_quadrature(const UnivariateFunction& f, std::uint64_t n);

/// n = ceil(1/(4 eps)), the smallest n with 1/(4n) <= eps.
std::uint64_t lipschitz_quadrature_size(double epsilon);

/// g(x) = f(x) - f(0), so |g(x)| <= x and S(f) = S(g) + shift.
struct RescaledLipschitz {
    UnivariateFunction g;
    double shift = 0.0;
};

RescaledLipschitz rescale_lipschitz(const UnivariateFunction& f);

/// Piecewise-linear function on [0,1] with breakpoints k/grid.
class PiecewiseLinear {
public:
    explicit PiecewiseLinear(std::vector<double> knots);

    double operator()(double x) const;
    /// Exact integral (trapezoid rule on the knots).
    double integral() const;
    /// Largest |slope| over the pieces.
    double lipschitz() const;
    std::span<const double> knots() const { return knots_; }

private:
    std::vector<double> knots_;
};

/// Random Lipschitz-1 piecewise-linear function: f(0) uniform in
/// [-offset, offset], slopes uniform in [-1,1] on a 1/grid mesh.
PiecewiseLinear random_lipschitz_function(Rng& rng, int grid = 64, double offset = 1.0);

/// Two functions vanishing at every given point with integrals near +1 and -1.
/// f1(x) = min(1, min_j |x - t_j|_inf / rho), f2 = -f1.
struct AdversarialPair {
    Integrand f1;
    Integrand f2;
    double radius = 0.0;
    /// Certified lower bound on the integral of f1: exact for d = 1, the
    /// union bound 1 - n (2 rho)^d otherwise.
    double integral_lower_bound = 0.0;

    /// Any algorithm sees identical information on f1 and f2, so its worst
    /// case error is at least half the integral gap.
    double worst_case_error_bound() const { return integral_lower_bound; }
};

/// gamma in (0,1) is the mass the tents may excise.
AdversarialPair adversarial_pair(std::vector<std::vector<double>> points, int d, double gamma);

/// Exact integral over [0,1] of the d = 1 adversarial function.
double adversarial_integral_1d(std::span<const double> points, double radius);

/// comp^{inf-wor}(eps) for Boolean summation: ceil(N (1 - 2 eps)).
std::uint64_t info_complexity_boolean(double epsilon, std::uint64_t n);

/// Randomized information complexity proxy for Boolean summation:
/// min(ceil(N (1 - 2 eps)), ceil((1/(2 eps) - 1)^2)). The second term inverts
/// the optimal randomized error 1/(2(1 + sqrt n)) for means of [0,1]-valued
/// functions.
std::uint64_t randomized_info_complexity_boolean(double epsilon, std::uint64_t n);

/// log2 ceil(h / eps): cells of diameter 2 eps covering [-h, h].
double entropy_interval(double epsilon, double halfwidth);

} // namespace randq
