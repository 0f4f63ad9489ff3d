#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

#include "randq/rng.hpp"
#include "randq/statevector.hpp"

namespace randq {

class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A problem instance would need more memory than the simulator allows.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// f : {0,...,N-1} -> {0,1} with N = 2^m, m >= 1.
class BooleanTable {
public:
    explicit BooleanTable(std::vector<std::uint8_t> bits);

    std::uint64_t size() const { return bits_.size(); }
    int index_width() const { return index_width_; }
    bool operator[](std::uint64_t j) const { return bits_[j] != 0; }
    std::span<const std::uint8_t> bits() const { return bits_; }
    std::uint64_t ones() const;
    /// B_N(f)
    double mean() const;

private:
    std::vector<std::uint8_t> bits_;
    int index_width_ = 0;
};

/// f : {0,...,N-1} -> [0,1]; N need not be a power of two.
class RealTable {
public:
    explicit RealTable(std::vector<double> values);

    std::uint64_t size() const { return values_.size(); }
    double operator[](std::uint64_t j) const { return values_[j]; }
    std::span<const double> values() const { return values_; }
    /// SUM_N(f)
    double mean() const;

private:
    std::vector<double> values_;
};

BooleanTable read_boolean_table(std::istream& in);
RealTable read_real_table(std::istream& in);
void write_table(std::ostream& out, const BooleanTable& table);
void write_table(std::ostream& out, const RealTable& table);

/// The m2 most significant bits of value, clamped to 2^m2 - 1.
std::uint64_t truncate_beta(double value, int value_width);

/// Where a query's sample point lives: an index into a finite set, a point of
/// a continuous domain, or both.
struct SamplePoint {
    std::uint64_t index = 0;
    std::vector<double> coords;

    bool operator==(const SamplePoint&) const = default;
};

enum class CodingMode {
    truncate, ///< beta keeps the leading m2 bits
    exact,    ///< values must be exact multiples of 2^-m2 below 1
};

/// tau places index j at a sample point; beta codes a real value into m2 bits.
struct CodingMaps {
    int value_width = 1;
    CodingMode mode = CodingMode::truncate;
    std::function<SamplePoint(std::uint64_t)> tau; ///< identity on indices when empty

    SamplePoint point(std::uint64_t j) const { return tau ? tau(j) : SamplePoint{j, {}}; }
    std::uint64_t beta(double value) const;
};

/// Q_f |j>|i> = |j>|i (+) beta(f(tau(j)))>. Sample points and coded values are
/// fixed when the oracle is built; only the application counter moves.
class BitQueryOracle {
public:
    static BitQueryOracle boolean(const BooleanTable& table);
    static BitQueryOracle real(const RealTable& table, const CodingMaps& coding);
    /// Generic constructor; `coded.size()` must be 2^index_width.
    static BitQueryOracle from_coded(int value_width, std::vector<std::uint64_t> coded,
                                     std::vector<SamplePoint> points);

    int index_width() const { return index_width_; }
    int value_width() const { return value_width_; }
    std::uint64_t size() const { return coded_.size(); }
    std::uint64_t coded_value(std::uint64_t j) const { return coded_[j]; }
    std::span<const std::uint64_t> coded_values() const { return coded_; }
    std::span<const SamplePoint> sample_points() const { return points_; }
    bool is_boolean() const { return value_width_ == 1; }

    /// Mean of beta(...)/2^m2 over the indices.
    double coded_mean() const;
    /// Fraction of indices with a nonzero code; for a Boolean oracle this is
    /// B_N(f), the amplitude seen by amplitude estimation.
    double marked_fraction() const;

    std::uint64_t applications() const { return counter_; }
    /// Charges `count` applications without touching a state (analytic backend).
    void record_applications(std::uint64_t count) { counter_ += count; }
    void record_application() { ++counter_; }

private:
    BitQueryOracle(int value_width, std::vector<std::uint64_t> coded, std::vector<SamplePoint> points);

    int index_width_ = 0;
    int value_width_ = 1;
    std::vector<std::uint64_t> coded_;
    std::vector<SamplePoint> points_;
    std::uint64_t counter_ = 0;
};

/// Boolean query on (index, one value qubit): |j>|i> -> |j>|i xor f(j)>.
void apply_bit_query(StateVector& state, BitQueryOracle& oracle, const RegisterLayout& layout,
                     std::uint64_t controls = 0);

/// Real query: value register shifted by beta(f(tau(j))) modulo 2^m2
/// (or shifted back when `inverse`).
void apply_real_bit_query(StateVector& state, BitQueryOracle& oracle, const RegisterLayout& layout,
                          std::uint64_t controls = 0, bool inverse = false);

/// Negates amplitudes whose index register holds a marked j. Equivalent to one
/// bit query with the value qubit in |->, and charged as one.
void phase_flip_query(StateVector& state, BitQueryOracle& oracle, Register index_register,
                      std::uint64_t controls = 0);

std::uint64_t query_count(const BitQueryOracle& oracle);

// Distributions of the random element omega.

struct UniformIndexDraw {
    std::uint64_t population;
};
/// Test hook: omega_l = l mod population.
struct IdentityIndexDraw {
    std::uint64_t population;
};
struct UniformCubeDraw {
    int dimension;
};
/// The Gaussian measure mu_d with independent N(0, lambda_i) coordinates.
struct GaussianKLDraw {
    int dimension;
};

using OmegaDistribution = std::variant<UniformIndexDraw, IdentityIndexDraw, UniformCubeDraw, GaussianKLDraw>;

/// `count` independent draws t_{1,omega}, ..., t_{count,omega}.
std::vector<SamplePoint> draw_sample_points(const OmegaDistribution& distribution, std::uint64_t count, Rng& rng);

/// Produces randomized queries Q_{f,omega}: draws sample points from the
/// omega-distribution and codes f at them. The distribution never depends on f.
class RandomizedOracleFactory {
public:
    using Coder = std::function<std::uint64_t(const SamplePoint&)>;

    RandomizedOracleFactory(OmegaDistribution distribution, Coder coder, int value_width, std::uint64_t subsample);

    static RandomizedOracleFactory for_table(const BooleanTable& table, std::uint64_t subsample);
    static RandomizedOracleFactory for_table(const RealTable& table, const CodingMaps& coding,
                                             std::uint64_t subsample);

    std::uint64_t subsample() const { return subsample_; }
    std::uint64_t padded_size() const;

    /// The `count` realized points t_{1,omega}, ..., t_{count,omega}.
    std::vector<SamplePoint> draw_points(std::uint64_t count, Rng& rng) const;
    /// Oracle over the subsample rounded up to a power of two; padded slots
    /// repeat realized draws chosen uniformly.
    BitQueryOracle draw(Rng& rng) const;

private:
    OmegaDistribution distribution_;
    Coder coder_;
    int value_width_;
    std::uint64_t subsample_;
};

BitQueryOracle make_randomized_subsample_oracle(const BooleanTable& f, std::uint64_t m, Rng& rng);
BitQueryOracle make_randomized_subsample_oracle(const RealTable& f, const CodingMaps& coding, std::uint64_t m,
                                                Rng& rng);

std::uint64_t next_power_of_two(std::uint64_t x);
int log2_exact(std::uint64_t power_of_two);

} // namespace randq
