#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "randq/oracles.hpp"
#include "randq/reductions.hpp"

namespace randq {

/// How the true value of a catalog entry is known.
enum class GroundTruth { closed_form, brute_force, symmetry };

std::string to_string(GroundTruth oracle);

/// A function on [0,1]^d with |f| <= 1 and its exact integral.
struct CatalogIntegrand {
    std::string name;
    int dimension = 1;
    /// Largest r with f in the unit ball of C^r([0,1]^d) (99 for "all r").
    int smoothness = 0;
    Integrand f;
    double truth = 0.0;
    GroundTruth oracle = GroundTruth::closed_form;
};

struct CatalogPath {
    std::string name;
    PathIntegrand integrand;
    double truth = 0.0;
    GroundTruth oracle = GroundTruth::closed_form;
};

struct CatalogBoolean {
    std::string name;
    BooleanTable table;
    GroundTruth oracle = GroundTruth::brute_force;
};

struct CatalogReal {
    std::string name;
    RealTable table;
    GroundTruth oracle = GroundTruth::brute_force;
};

std::vector<std::string> integrand_names();
CatalogIntegrand make_integrand(std::string_view name, int dimension);
/// Every integrand in the unit ball of C^r([0,1]^d).
std::vector<CatalogIntegrand> integrand_suite(int dimension, int smoothness);

std::vector<std::string> path_names();
CatalogPath make_path(std::string_view name);
std::vector<CatalogPath> path_suite();

/// Integral of the KL eigenfunctions, c_i = 2 sqrt(2) / ((2i-1) pi), so that
/// the time average of a path with coefficients t is sum_i c_i t_i.
double path_mean(std::span<const double> coefficients);

std::vector<std::string> boolean_names();
CatalogBoolean make_boolean(std::string_view name, std::uint64_t n);
std::vector<CatalogBoolean> boolean_suite(std::uint64_t n);

std::vector<std::string> real_names();
CatalogReal make_real(std::string_view name, std::uint64_t n);
std::vector<CatalogReal> real_suite(std::uint64_t n);

struct CatalogEntry {
    std::string kind; ///< "problem" or the problem a function belongs to
    std::string name;
    std::string oracle;
    std::string description;
};

/// Problems and test functions sorted by (kind, name), keeping those whose
/// kind or name contains `filter`.
std::vector<CatalogEntry> list_catalog(std::string_view filter = {});

} // namespace randq
