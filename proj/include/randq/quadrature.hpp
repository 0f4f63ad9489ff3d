#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace randq {

/// Nodes and weights for the integral of e^{-x^2} g(x) over the real line,
/// found by Newton's method on the orthonormal Hermite recurrence.
std::pair<std::vector<double>, std::vector<double>> gauss_hermite_rule(int n);

/// E g(Z) for Z ~ N(0, variance).
double gaussian_expectation(const std::function<double(double)>& g, double variance, int nodes = 60);

/// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace randq
