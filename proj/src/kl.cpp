#include "randq/kl.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace randq {

namespace {

void require_index(int i)
{
    if (i < 1) throw std::invalid_argument("KL index must be at least 1, got " + std::to_string(i));
}

double odd(int i) { return 2.0 * i - 1.0; }

} // namespace

double KLBasis::eigenvalue(int i)
{
    require_index(i);
    const double w = odd(i) * std::numbers::pi;
    return 4.0 / (w * w);
}

double KLBasis::eigenfunction(int i, double x)
{
    require_index(i);
    return std::numbers::sqrt2 * std::sin(odd(i) * std::numbers::pi * x / 2.0);
}

double KLBasis::eigenfunction_integral(int i)
{
    require_index(i);
    return 2.0 * std::numbers::sqrt2 / (odd(i) * std::numbers::pi);
}

double KLBasis::tail_bound(int d)
{
    if (d < 1) throw std::invalid_argument("tail bound needs d >= 1");
    // 1/(2i-1)^2 is convex in i, so each term is at most its integral over
    // [i-1/2, i+1/2]; the tail integral from d+1/2 is 1/(4d).
    return 1.0 / (std::numbers::pi * std::numbers::pi * d);
}

KLEigenpair kl_eigenpair(int i)
{
    require_index(i);
    return {[i](double x) { return KLBasis::eigenfunction(i, x); }, KLBasis::eigenvalue(i)};
}

int truncation_dimension(double epsilon, double lipschitz)
{
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    if (!(lipschitz > 0.0 && lipschitz <= 1.0)) throw std::invalid_argument("Lipschitz constant must lie in (0, 1]");
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double x = 9.0 * lipschitz * lipschitz / (pi2 * epsilon * epsilon);
    return static_cast<int>(std::ceil(x - 1e-9));
}

std::vector<double> gaussian_sample_mu_d(int d, Rng& rng)
{
    if (d < 1) throw std::invalid_argument("mu_d needs d >= 1");
    std::vector<double> t(d);
    for (int i = 0; i < d; ++i) t[i] = std::sqrt(KLBasis::eigenvalue(i + 1)) * rng.normal();
    return t;
}

} // namespace randq
