#include "randq/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace randq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kAllOrders = 99;

std::uint64_t name_seed(std::string_view name)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

[[noreturn]] void unknown(std::string_view what, std::string_view name)
{
    throw std::invalid_argument("unknown " + std::string(what) + " '" + std::string(name) + "'");
}

} // namespace

std::string to_string(GroundTruth oracle)
{
    switch (oracle) {
    case GroundTruth::closed_form: return "closed-form";
    case GroundTruth::brute_force: return "brute-force";
    case GroundTruth::symmetry: return "symmetry";
    }
    return "closed-form";
}

std::vector<std::string> integrand_names()
{
    return {"kink", "one", "sin-pi-over-pi", "sin-prod", "sin-prod-unit", "tent", "zero"};
}

CatalogIntegrand make_integrand(std::string_view name, int d)
{
    if (d < 1) throw std::invalid_argument("dimension must be at least 1");
    CatalogIntegrand c;
    c.name = std::string(name);
    c.dimension = d;
    if (name == "zero") {
        c.smoothness = kAllOrders;
        c.f = [](std::span<const double>) { return 0.0; };
        c.truth = 0.0;
    } else if (name == "one") {
        c.smoothness = kAllOrders;
        c.f = [](std::span<const double>) { return 1.0; };
        c.truth = 1.0;
    } else if (name == "sin-prod") {
        // prod sin(pi x_i); derivatives reach pi, so only the r = 0 ball
        c.smoothness = 0;
        c.f = [](std::span<const double> x) {
            double v = 1.0;
            for (double xi : x) v *= std::sin(kPi * xi);
            return v;
        };
        c.truth = std::pow(2.0 / kPi, d);
    } else if (name == "sin-prod-unit") {
        c.smoothness = kAllOrders;
        c.f = [](std::span<const double> x) {
            double v = 1.0;
            for (double xi : x) v *= std::sin(xi);
            return v;
        };
        c.truth = std::pow(1.0 - std::cos(1.0), d);
    } else if (name == "sin-pi-over-pi") {
        c.smoothness = 1;
        c.f = [](std::span<const double> x) { return std::sin(kPi * x[0]) / kPi; };
        c.truth = 2.0 / (kPi * kPi);
    } else if (name == "tent") {
        c.smoothness = 0;
        c.f = [](std::span<const double> x) {
            double v = 1.0;
            for (double xi : x) v *= 1.0 - std::abs(2.0 * xi - 1.0);
            return v;
        };
        c.truth = std::pow(0.5, d);
    } else if (name == "kink") {
        c.smoothness = 0;
        c.f = [](std::span<const double> x) {
            double v = 1.0;
            for (double xi : x) v *= std::abs(xi - 1.0 / 3.0);
            return v;
        };
        c.truth = std::pow(5.0 / 18.0, d);
    } else {
        unknown("integrand", name);
    }
    return c;
}

std::vector<CatalogIntegrand> integrand_suite(int dimension, int smoothness)
{
    std::vector<CatalogIntegrand> suite;
    for (const std::string& n : integrand_names()) {
        CatalogIntegrand c = make_integrand(n, dimension);
        if (c.smoothness >= smoothness) suite.push_back(std::move(c));
    }
    return suite;
}

double path_mean(std::span<const double> coefficients)
{
    double s = 0.0;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        s += coefficients[i] * KLBasis::eigenfunction_integral(static_cast<int>(i) + 1);
    }
    return s;
}

std::vector<std::string> path_names() { return {"cos-of-half-mean", "cos-of-mean", "sin-of-mean", "zero"}; }

CatalogPath make_path(std::string_view name)
{
    // The time average is 1-Lipschitz in L2 and has variance 1/3 under the
    // Wiener measure, so E cos(s mean) = exp(-s^2 / 6).
    CatalogPath c;
    c.name = std::string(name);
    c.integrand.name = c.name;
    if (name == "zero") {
        c.integrand.evaluate = [](std::span<const double>) { return 0.0; };
        c.truth = 0.0;
        c.oracle = GroundTruth::symmetry;
    } else if (name == "cos-of-mean") {
        c.integrand.evaluate = [](std::span<const double> t) { return std::cos(path_mean(t)); };
        c.truth = std::exp(-1.0 / 6.0);
    } else if (name == "cos-of-half-mean") {
        c.integrand.evaluate = [](std::span<const double> t) { return std::cos(0.5 * path_mean(t)); };
        c.integrand.lipschitz = 0.5;
        c.truth = std::exp(-1.0 / 24.0);
    } else if (name == "sin-of-mean") {
        c.integrand.evaluate = [](std::span<const double> t) { return std::sin(path_mean(t)); };
        c.truth = 0.0;
        c.oracle = GroundTruth::symmetry;
    } else {
        unknown("path functional", name);
    }
    return c;
}

std::vector<CatalogPath> path_suite()
{
    std::vector<CatalogPath> suite;
    for (const std::string& n : path_names()) suite.push_back(make_path(n));
    return suite;
}

std::vector<std::string> boolean_names()
{
    return {"all-one", "all-zero", "half", "random-0.3", "random-0.77", "sparse-1/8"};
}

CatalogBoolean make_boolean(std::string_view name, std::uint64_t n)
{
    double density = 0.0;
    if (name == "all-zero") {
        density = 0.0;
    } else if (name == "all-one") {
        density = 1.0;
    } else if (name == "half") {
        density = 0.5;
    } else if (name == "sparse-1/8") {
        density = 0.125;
    } else if (name == "random-0.3") {
        density = 0.3;
    } else if (name == "random-0.77") {
        density = 0.77;
    } else {
        unknown("Boolean table", name);
    }
    const auto ones = static_cast<std::uint64_t>(std::llround(density * static_cast<double>(n)));
    std::vector<std::uint8_t> bits(n, 0);
    std::fill_n(bits.begin(), std::min(ones, n), std::uint8_t{1});
    Rng rng(name_seed(name) ^ n);
    for (std::uint64_t i = n; i > 1; --i) std::swap(bits[i - 1], bits[rng.uniform_index(i)]);
    return {std::string(name), BooleanTable(std::move(bits)), GroundTruth::brute_force};
}

std::vector<CatalogBoolean> boolean_suite(std::uint64_t n)
{
    std::vector<CatalogBoolean> suite;
    for (const std::string& name : boolean_names()) suite.push_back(make_boolean(name, n));
    return suite;
}

std::vector<std::string> real_names() { return {"half", "ramp", "sine", "uniform", "zero"}; }

CatalogReal make_real(std::string_view name, std::uint64_t n)
{
    if (n < 1) throw std::invalid_argument("table size must be positive");
    std::vector<double> v(n);
    const double dn = static_cast<double>(n);
    if (name == "zero") {
        std::fill(v.begin(), v.end(), 0.0);
    } else if (name == "half") {
        std::fill(v.begin(), v.end(), 0.5);
    } else if (name == "ramp") {
        for (std::uint64_t j = 0; j < n; ++j) v[j] = n == 1 ? 0.0 : static_cast<double>(j) / (dn - 1.0);
    } else if (name == "sine") {
        for (std::uint64_t j = 0; j < n; ++j) v[j] = 0.5 + 0.5 * std::sin(2.0 * kPi * static_cast<double>(j) / dn);
    } else if (name == "uniform") {
        Rng rng(name_seed(name) ^ n);
        for (double& x : v) x = rng.uniform();
    } else {
        unknown("real table", name);
    }
    return {std::string(name), RealTable(std::move(v)), GroundTruth::brute_force};
}

std::vector<CatalogReal> real_suite(std::uint64_t n)
{
    std::vector<CatalogReal> suite;
    for (const std::string& name : real_names()) suite.push_back(make_real(name, n));
    return suite;
}

std::vector<CatalogEntry> list_catalog(std::string_view filter)
{
    std::vector<CatalogEntry> all{
        {"problem", "boolean-sum", "brute-force", "mean of a Boolean table of size N"},
        {"problem", "integrate-r0", "closed-form", "integral over [0,1]^d of a bounded function"},
        {"problem", "integrate-r1", "closed-form", "integral over [0,1]^d of a C^r function, r >= 1"},
        {"problem", "path-integrate", "closed-form", "Wiener-measure integral of a Lipschitz functional"},
        {"problem", "real-sum", "brute-force", "mean of a [0,1]-valued table of size N"},
    };
    for (const std::string& n : boolean_names()) {
        all.push_back({"boolean-sum", n, to_string(GroundTruth::brute_force), "Boolean table"});
    }
    for (const std::string& n : real_names()) {
        all.push_back({"real-sum", n, to_string(GroundTruth::brute_force), "real table"});
    }
    for (const std::string& n : integrand_names()) {
        const CatalogIntegrand c = make_integrand(n, 1);
        const std::string r = c.smoothness >= kAllOrders ? "all r" : "r <= " + std::to_string(c.smoothness);
        all.push_back({"integrate-r0", n, to_string(c.oracle), "integrand in the unit ball for " + r});
        if (c.smoothness >= 1) {
            all.push_back({"integrate-r1", n, to_string(c.oracle), "integrand in the unit ball for " + r});
        }
    }
    for (const std::string& n : path_names()) {
        const CatalogPath c = make_path(n);
        all.push_back({"path-integrate", n, to_string(c.oracle),
                       "Lipschitz constant " + std::to_string(c.integrand.lipschitz).substr(0, 4)});
    }
    std::sort(all.begin(), all.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
        return std::tie(a.kind, a.name) < std::tie(b.kind, b.name);
    });
    if (filter.empty()) return all;
    std::vector<CatalogEntry> kept;
    for (const CatalogEntry& e : all) {
        if (e.kind.find(filter) != std::string::npos || e.name.find(filter) != std::string::npos) kept.push_back(e);
    }
    return kept;
}

} // namespace randq
