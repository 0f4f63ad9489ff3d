#include "randq/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace randq {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_qubit(const StateVector& s, int q, const char* what)
{
    if (q < 0 || q >= s.num_qubits()) {
        throw SimulationError(std::string(what) + ": qubit " + std::to_string(q) + " outside a " +
                              std::to_string(s.num_qubits()) + "-qubit state");
    }
}

void require_register(const StateVector& s, Register reg, const char* what)
{
    if (reg.offset < 0 || reg.width < 0 || reg.offset + reg.width > s.num_qubits()) {
        throw SimulationError(std::string(what) + ": register [" + std::to_string(reg.offset) + ", " +
                              std::to_string(reg.offset + reg.width) + ") outside a " +
                              std::to_string(s.num_qubits()) + "-qubit state");
    }
}

void require_controls(const StateVector& s, std::uint64_t controls, std::uint64_t targets)
{
    if (controls >> s.num_qubits()) {
        throw SimulationError("control mask addresses qubits outside the state");
    }
    if (controls & targets) {
        throw SimulationError("control qubits overlap the gate's targets");
    }
}

bool controlled_on(std::uint64_t i, std::uint64_t controls) { return (i & controls) == controls; }

/// Applies a 2x2 matrix to `qubit` on every amplitude pair whose controls are set.
void apply_mat2(std::span<Complex> amp, int qubit, const Mat2& m, std::uint64_t controls)
{
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    const std::uint64_t dim = amp.size();
    for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & bit) || !controlled_on(i, controls)) continue;
        const std::uint64_t j = i | bit;
        const Complex a0 = amp[i];
        const Complex a1 = amp[j];
        amp[i] = m[0] * a0 + m[1] * a1;
        amp[j] = m[2] * a0 + m[3] * a1;
    }
}

struct GateApplier {
    StateVector& state;
    std::uint64_t controls;

    void operator()(const gate::Hadamard& g) const
    {
        require_qubit(state, g.qubit, "hadamard");
        require_controls(state, controls, std::uint64_t{1} << g.qubit);
        const Mat2 h{Complex(kInvSqrt2), Complex(kInvSqrt2), Complex(kInvSqrt2), Complex(-kInvSqrt2)};
        apply_mat2(state.mutable_amplitudes(), g.qubit, h, controls);
    }

    void operator()(const gate::PauliX& g) const
    {
        require_qubit(state, g.qubit, "pauli-x");
        const std::uint64_t bit = std::uint64_t{1} << g.qubit;
        require_controls(state, controls, bit);
        auto amp = state.mutable_amplitudes();
        for (std::uint64_t i = 0; i < amp.size(); ++i) {
            if (!(i & bit) && controlled_on(i, controls)) std::swap(amp[i], amp[i | bit]);
        }
    }

    void operator()(const gate::Phase& g) const
    {
        require_qubit(state, g.qubit, "phase");
        const std::uint64_t bit = std::uint64_t{1} << g.qubit;
        require_controls(state, controls, bit);
        const Complex factor = std::polar(1.0, g.angle);
        auto amp = state.mutable_amplitudes();
        for (std::uint64_t i = 0; i < amp.size(); ++i) {
            if ((i & bit) && controlled_on(i, controls)) amp[i] *= factor;
        }
    }

    void operator()(const gate::Swap& g) const
    {
        require_qubit(state, g.a, "swap");
        require_qubit(state, g.b, "swap");
        if (g.a == g.b) return;
        const std::uint64_t ba = std::uint64_t{1} << g.a;
        const std::uint64_t bb = std::uint64_t{1} << g.b;
        require_controls(state, controls, ba | bb);
        auto amp = state.mutable_amplitudes();
        for (std::uint64_t i = 0; i < amp.size(); ++i) {
            // visit each |..1..0..> once and exchange with |..0..1..>
            if ((i & ba) && !(i & bb) && controlled_on(i, controls)) std::swap(amp[i], amp[(i & ~ba) | bb]);
        }
    }

    void operator()(const gate::Matrix& g) const
    {
        require_qubit(state, g.qubit, "matrix");
        require_controls(state, controls, std::uint64_t{1} << g.qubit);
        apply_mat2(state.mutable_amplitudes(), g.qubit, g.m, controls);
    }

    void operator()(const gate::ZeroReflection& g) const
    {
        require_register(state, g.reg, "zero-reflection");
        require_controls(state, controls, g.reg.mask());
        auto amp = state.mutable_amplitudes();
        const std::uint64_t mask = g.reg.mask();
        for (std::uint64_t i = 0; i < amp.size(); ++i) {
            if ((i & mask) && controlled_on(i, controls)) amp[i] = -amp[i];
        }
    }
};

struct GateInverter {
    Gate operator()(const gate::Hadamard& g, std::uint64_t c) const { return {g, c}; }
    Gate operator()(const gate::PauliX& g, std::uint64_t c) const { return {g, c}; }
    Gate operator()(const gate::Phase& g, std::uint64_t c) const { return {gate::Phase{g.qubit, -g.angle}, c}; }
    Gate operator()(const gate::Swap& g, std::uint64_t c) const { return {g, c}; }
    Gate operator()(const gate::Matrix& g, std::uint64_t c) const
    {
        const Mat2 a{std::conj(g.m[0]), std::conj(g.m[2]), std::conj(g.m[1]), std::conj(g.m[3])};
        return {gate::Matrix{g.qubit, a}, c};
    }
    Gate operator()(const gate::ZeroReflection& g, std::uint64_t c) const { return {g, c}; }
};

} // namespace

QubitCapExceeded::QubitCapExceeded(int requested, int cap)
    : SimulationError("state needs " + std::to_string(requested) + " qubits but the simulator cap is " +
                      std::to_string(cap) + "; use the analytic backend"),
      requested_(requested), cap_(cap)
{
}

void RegisterLayout::validate(int cap) const
{
    if (index_width < 0 || value_width < 0 || phase_width < 0) {
        throw SimulationError("register widths must be nonnegative");
    }
    if (total() > cap) throw QubitCapExceeded(total(), cap);
}

GateSequence inverse(const GateSequence& sequence)
{
    GateSequence out;
    out.reserve(sequence.size());
    for (auto it = sequence.rbegin(); it != sequence.rend(); ++it) {
        const std::uint64_t c = it->controls;
        out.push_back(std::visit([&](const auto& g) { return GateInverter{}(g, c); }, it->op));
    }
    return out;
}

GateSequence qft_circuit(Register reg)
{
    if (reg.width <= 0) throw SimulationError("QFT needs a register of width at least 1");
    GateSequence seq;
    const int t = reg.width;
    for (int j = t - 1; j >= 0; --j) {
        const int target = reg.offset + j;
        seq.push_back({gate::Hadamard{target}});
        for (int c = j - 1; c >= 0; --c) {
            const double angle = 2.0 * std::numbers::pi / static_cast<double>(std::uint64_t{1} << (j - c + 1));
            seq.push_back({gate::Phase{target, angle}, std::uint64_t{1} << (reg.offset + c)});
        }
    }
    for (int i = 0; i < t / 2; ++i) {
        seq.push_back({gate::Swap{reg.offset + i, reg.offset + t - 1 - i}});
    }
    return seq;
}

void MeasurementDistribution::validate(double tol) const
{
    double total = 0.0;
    for (double p : probabilities) {
        if (!(p >= -tol && p <= 1.0 + tol)) throw SimulationError("probability outside [0,1]");
        total += p;
    }
    if (std::abs(total - 1.0) > tol) {
        throw SimulationError("probabilities sum to " + std::to_string(total) + ", not 1");
    }
}

double total_variation(const MeasurementDistribution& a, const MeasurementDistribution& b)
{
    if (a.size() != b.size()) throw SimulationError("total variation of distributions over different supports");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return 0.5 * s;
}

std::uint64_t sample_index(const MeasurementDistribution& dist, Rng& rng)
{
    const double u = rng.uniform();
    double acc = 0.0;
    std::uint64_t last_positive = 0;
    for (std::uint64_t i = 0; i < dist.size(); ++i) {
        if (dist[i] <= 0.0) continue;
        last_positive = i;
        acc += dist[i];
        if (u < acc) return i;
    }
    // u landed in the rounding slack above the accumulated total
    return last_positive;
}

StateVector StateVector::basis(int k, std::uint64_t basis_index, int cap)
{
    if (k < 1) throw SimulationError("a state needs at least one qubit");
    if (k > cap) throw QubitCapExceeded(k, cap);
    const std::uint64_t dim = std::uint64_t{1} << k;
    if (basis_index >= dim) {
        throw SimulationError("basis index " + std::to_string(basis_index) + " out of range for " +
                              std::to_string(k) + " qubits");
    }
    std::vector<Complex> amp(dim, Complex(0.0));
    amp[basis_index] = 1.0;
    return StateVector(k, std::move(amp));
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes, int cap)
{
    const std::uint64_t dim = amplitudes.size();
    if (dim < 2 || (dim & (dim - 1)) != 0) throw SimulationError("amplitude count must be a power of two >= 2");
    int k = 0;
    while ((std::uint64_t{1} << k) < dim) ++k;
    if (k > cap) throw QubitCapExceeded(k, cap);
    StateVector s(k, std::move(amplitudes));
    s.check_norm("construction");
    return s;
}

double StateVector::norm() const
{
    double s = 0.0;
    for (const Complex& a : amplitudes_) s += std::norm(a);
    return std::sqrt(s);
}

void StateVector::check_norm(const char* after) const
{
    const double n = norm();
    if (std::abs(n - 1.0) > kNormTolerance) {
        throw NormDriftError(std::string("norm drifted to ") + std::to_string(n) + " after " + after);
    }
}

StateVector new_basis_state(int k, std::uint64_t basis_index, int cap)
{
    return StateVector::basis(k, basis_index, cap);
}

void apply_gate(StateVector& state, const Gate& g)
{
    std::visit(GateApplier{state, g.controls}, g.op);
    state.check_norm("gate");
}

void apply_unitary(StateVector& state, const GateSequence& sequence)
{
    for (const Gate& g : sequence) apply_gate(state, g);
}

void apply_hadamard_all(StateVector& state, Register reg, std::uint64_t controls)
{
    require_register(state, reg, "hadamard");
    for (int q = 0; q < reg.width; ++q) apply_gate(state, {gate::Hadamard{reg.offset + q}, controls});
}

void apply_qft(StateVector& state, Register reg)
{
    require_register(state, reg, "qft");
    apply_unitary(state, qft_circuit(reg));
}

void apply_inverse_qft(StateVector& state, Register reg)
{
    require_register(state, reg, "inverse qft");
    apply_unitary(state, inverse(qft_circuit(reg)));
}

MeasurementDistribution measurement_distribution(const StateVector& state, Register reg)
{
    require_register(state, reg, "measurement");
    MeasurementDistribution out{std::vector<double>(reg.size(), 0.0)};
    const auto amp = state.amplitudes();
    for (std::uint64_t i = 0; i < amp.size(); ++i) out.probabilities[reg.extract(i)] += std::norm(amp[i]);
    return out;
}

std::uint64_t sample_measurement(const StateVector& state, Register reg, Rng& rng)
{
    return sample_index(measurement_distribution(state, reg), rng);
}

} // namespace randq
