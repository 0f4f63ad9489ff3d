#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "randq/rng.hpp"

namespace randq {

using Complex = std::complex<double>;

inline constexpr int kDefaultQubitCap = 26;

// Tolerance ladder: algebraic identities / composed pipelines / distributions.
inline constexpr double kIdentityTolerance = 1e-12;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kDistributionTolerance = 1e-9;

class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a register would need more qubits than the simulator allows.
class QubitCapExceeded : public SimulationError {
public:
    QubitCapExceeded(int requested, int cap);
    int requested() const { return requested_; }
    int cap() const { return cap_; }

private:
    int requested_;
    int cap_;
};

/// A gate moved the state off the unit sphere.
class NormDriftError : public SimulationError {
public:
    using SimulationError::SimulationError;
};

/// Contiguous block of qubits [offset, offset + width). Qubit q is bit q of
/// the basis index.
struct Register {
    int offset = 0;
    int width = 0;

    std::uint64_t size() const { return std::uint64_t{1} << width; }
    std::uint64_t mask() const { return (size() - 1) << offset; }
    std::uint64_t extract(std::uint64_t basis) const { return (basis >> offset) & (size() - 1); }
    std::uint64_t place(std::uint64_t value) const { return value << offset; }
};

/// index | value | phase, packed from the least significant qubit upwards.
struct RegisterLayout {
    int index_width = 0;
    int value_width = 0;
    int phase_width = 0;

    int total() const { return index_width + value_width + phase_width; }
    Register index() const { return {0, index_width}; }
    Register value() const { return {index_width, value_width}; }
    Register phase() const { return {index_width + value_width, phase_width}; }

    void validate(int cap = kDefaultQubitCap) const;
};

using Mat2 = std::array<Complex, 4>; // row-major

namespace gate {
struct Hadamard {
    int qubit;
};
struct PauliX {
    int qubit;
};
/// diag(1, e^{i angle})
struct Phase {
    int qubit;
    double angle;
};
struct Swap {
    int a;
    int b;
};
struct Matrix {
    int qubit;
    Mat2 m;
};
/// 2|0><0| - I on the register.
struct ZeroReflection {
    Register reg;
};
} // namespace gate

/// One structured operation on amplitude indices, optionally controlled on
/// every qubit set in `controls`.
struct Gate {
    std::variant<gate::Hadamard, gate::PauliX, gate::Phase, gate::Swap, gate::Matrix, gate::ZeroReflection> op;
    std::uint64_t controls = 0;
};

using GateSequence = std::vector<Gate>;

/// Adjoint sequence: reversed order, each gate inverted.
GateSequence inverse(const GateSequence& sequence);

/// Textbook QFT circuit on a register (Hadamards, controlled phases, swaps).
GateSequence qft_circuit(Register reg);

struct MeasurementDistribution {
    std::vector<double> probabilities;

    std::size_t size() const { return probabilities.size(); }
    double operator[](std::size_t i) const { return probabilities[i]; }
    /// Throws unless entries lie in [0,1] and sum to 1 within `tol`.
    void validate(double tol = kDistributionTolerance) const;
};

double total_variation(const MeasurementDistribution& a, const MeasurementDistribution& b);

/// Inverse-CDF draw with a single uniform variate.
std::uint64_t sample_index(const MeasurementDistribution& dist, Rng& rng);

class StateVector {
public:
    static StateVector basis(int k, std::uint64_t basis_index, int cap = kDefaultQubitCap);
    /// Takes ownership of unit-norm amplitudes; size must be a power of two.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes, int cap = kDefaultQubitCap);

    int num_qubits() const { return num_qubits_; }
    std::uint64_t dimension() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    Complex amplitude(std::uint64_t i) const { return amplitudes_[i]; }

    /// Raw access for structured operations (oracles). Callers must leave the
    /// state unit-norm; check_norm() is the enforcement point.
    std::span<Complex> mutable_amplitudes() { return amplitudes_; }

    double norm() const;
    void check_norm(const char* after) const;

private:
    StateVector(int k, std::vector<Complex> amplitudes) : num_qubits_(k), amplitudes_(std::move(amplitudes)) {}

    int num_qubits_;
    std::vector<Complex> amplitudes_;
};

StateVector new_basis_state(int k, std::uint64_t basis_index, int cap = kDefaultQubitCap);

void apply_gate(StateVector& state, const Gate& g);
void apply_unitary(StateVector& state, const GateSequence& sequence);
void apply_hadamard_all(StateVector& state, Register reg, std::uint64_t controls = 0);
void apply_qft(StateVector& state, Register reg);
void apply_inverse_qft(StateVector& state, Register reg);

/// Exact marginal law of the register's value.
MeasurementDistribution measurement_distribution(const StateVector& state, Register reg);
std::uint64_t sample_measurement(const StateVector& state, Register reg, Rng& rng);

} // namespace randq
