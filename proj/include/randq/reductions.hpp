#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "randq/amplitude_estimation.hpp"
#include "randq/kl.hpp"
#include "randq/oracles.hpp"

namespace randq {

/// A function on [0,1]^d (or on KL coefficient vectors for path functionals).
using Integrand = std::function<double(std::span<const double>)>;

/// An integrand returned a value outside its declared bound.
class IntegrandRangeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The residual f - P(f) exceeded the bound used to rescale it.
class ResidualBoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// b_f on D = {(i,j,p) : 1 <= i <= K, 0 <= j < N, 1 <= p <= 2^{K-i}}:
/// b_f(i,j,p) is bit i (most significant first) of the K-bit truncation of
/// f(j). Each bit i is repeated 2^{K-i} times, so summing b_f over D weighs it
/// by 2^{-i} relative to 2^K.
class BinaryExpansion {
public:
    struct Triple {
        int i = 1;
        std::uint64_t j = 0;
        std::uint64_t p = 1;
        bool operator==(const Triple&) const = default;
    };

    /// codes[j] = beta_K(f(j)), each below 2^K.
    BinaryExpansion(std::vector<std::uint64_t> codes, int bits);

    int bits() const { return bits_; }
    std::uint64_t source_size() const { return codes_.size(); }
    std::uint64_t block_size() const { return (std::uint64_t{1} << bits_) - 1; }
    /// |D| = N (2^K - 1)
    std::uint64_t domain_size() const { return source_size() * block_size(); }
    std::uint64_t code(std::uint64_t j) const { return codes_[j]; }

    Triple triple_at(std::uint64_t flat) const;
    std::uint64_t flat_index(const Triple& triple) const;
    bool bit(const Triple& triple) const;
    bool value_at(std::uint64_t flat) const { return bit(triple_at(flat)); }

    /// sum_j beta_K(f(j)), which equals the number of ones of b_f on D.
    std::uint64_t truncated_sum() const;
    /// S_K(f) = truncated_sum / (N 2^K) = B_{N 2^K}(b_f).
    double truncated_mean() const;

private:
    std::vector<std::uint64_t> codes_;
    int bits_;
};

BinaryExpansion binary_expand(const RealTable& f, int bits);

/// K = ceil(log2 eps^-2)
int bit_depth_for(double epsilon);

PreparedSummation prepare_real_summation(const RealTable& f, double epsilon, Rng& omega);
PreparedSummation prepare_real_summation_deterministic(const RealTable& f, double epsilon);

/// Truncate to K bits, subsample D uniformly, Boolean summation at eps - eps^2.
Estimate real_summation(const RealTable& f, double epsilon, Rng& rng, const QaeOptions& options = {});
/// Boolean summation with deterministic queries over all of D (zero padded to
/// a power of two).
Estimate real_summation_deterministic(const RealTable& f, double epsilon, Rng& rng, const QaeOptions& options = {});

PreparedSummation prepare_integrate_r0(const Integrand& f, int d, double epsilon, Rng& omega);

/// m = ceil(4 eps^-2) uniform points; the positive and negative parts of the
/// values are each summed by randomized real summation at eps/4.
Estimate integrate_r0(const Integrand& f, int d, double epsilon, Rng& rng, const QaeOptions& options = {});

struct SmoothClassDescriptor {
    int dimension = 1;
    int smoothness = 0;
    double norm_bound = 1.0;

    void validate() const;
};

enum class QueryMode { deterministic, randomized };

/// Lebesgue constant of degree-r interpolation at r+1 equispaced nodes.
double lebesgue_constant(int r);
/// max_s sum_l |s - s_l| |l_l'(s)| for the same nodes; bounds the derivative
/// of the interpolant of a Lipschitz-1 function.
double derivative_lebesgue_constant(int r);

struct ControlVariatePlan {
    int cells_per_axis = 1;          ///< n0
    double interpolation_constant = 0.0; ///< c_interp = (1 + Lambda_r^d) (d/2)^r / r!
    double residual_bound = 0.0;     ///< Delta = c_interp n0^{-r}
};

/// n0 = max(1, floor((c_interp / eps)^{1/(d+r)})).
ControlVariatePlan plan_control_variate(const SmoothClassDescriptor& cls, double epsilon);

/// Piecewise tensor-product Lagrange interpolant of degree r on n0^d cells.
class TensorInterpolant {
public:
    TensorInterpolant(const Integrand& f, int dimension, int degree, int cells_per_axis);

    double operator()(std::span<const double> x) const;
    /// Exact integral of the interpolant over [0,1]^d.
    double integral() const;
    std::uint64_t evaluations() const { return values_.size(); }

private:
    int dimension_;
    int degree_;
    int cells_;
    int nodes_per_axis_;
    std::vector<double> values_;
};

PreparedSummation prepare_integrate_rge1(const Integrand& f, const SmoothClassDescriptor& cls, double epsilon,
                                         QueryMode mode, Rng& omega);

/// Classical integral of the interpolant plus a quantum estimate of the
/// integral of the residual, rescaled by Delta.
Estimate integrate_rge1(const Integrand& f, const SmoothClassDescriptor& cls, double epsilon, QueryMode mode, Rng& rng,
                        const QaeOptions& options = {});

/// f(t_1 eta_1 + ... + t_d eta_d) as a function of the KL coefficients.
struct PathIntegrand {
    std::string name;
    Integrand evaluate;
    double lipschitz = 1.0;
    double sup_bound = 1.0;
};

/// n = ceil(9 eps^-2)
std::uint64_t path_sample_count(double epsilon);

PreparedSummation prepare_path_integrate(const PathIntegrand& f, double epsilon, Rng& omega);

/// eps/3 truncation, eps/3 Monte Carlo over mu_d, eps/3 quantum summation.
Estimate path_integrate(const PathIntegrand& f, double epsilon, Rng& rng, const QaeOptions& options = {});

} // namespace randq
