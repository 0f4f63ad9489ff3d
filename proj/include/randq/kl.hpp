#pragma once

#include <functional>
#include <vector>

#include "randq/rng.hpp"

namespace randq {

/// Karhunen-Loeve eigenpairs of the Wiener covariance min(s,t) on [0,1]:
/// eta_i(x) = sqrt(2) sin((2i-1) pi x / 2), lambda_i = 4 / (pi^2 (2i-1)^2).
struct KLBasis {
    static double eigenvalue(int i);
    static double eigenfunction(int i, double x);
    /// Closed form of the integral of eta_i over [0,1]: 2 sqrt(2) / ((2i-1) pi).
    static double eigenfunction_integral(int i);
    /// Upper bound 1 / (pi^2 d) on sum_{i>d} lambda_i.
    static double tail_bound(int d);
};

struct KLEigenpair {
    std::function<double(double)> eta;
    double lambda;
};

KLEigenpair kl_eigenpair(int i);

/// Smallest d with L / (pi sqrt(d)) <= eps / 3, i.e. ceil(9 L^2 / (pi^2 eps^2)).
int truncation_dimension(double epsilon, double lipschitz = 1.0);

/// Draw from mu_d: independent t_i ~ N(0, lambda_i).
std::vector<double> gaussian_sample_mu_d(int d, Rng& rng);

} // namespace randq
