#include "randq/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <memory>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "randq/kl.hpp"

namespace randq {

std::uint64_t next_power_of_two(std::uint64_t x)
{
    std::uint64_t p = 1;
    while (p < x) p <<= 1;
    return p;
}

int log2_exact(std::uint64_t power_of_two)
{
    if (power_of_two == 0 || (power_of_two & (power_of_two - 1)) != 0) {
        throw OracleError(std::to_string(power_of_two) + " is not a power of two");
    }
    int m = 0;
    while ((std::uint64_t{1} << m) < power_of_two) ++m;
    return m;
}

BooleanTable::BooleanTable(std::vector<std::uint8_t> bits) : bits_(std::move(bits))
{
    if (bits_.size() < 2 || (bits_.size() & (bits_.size() - 1)) != 0) {
        throw OracleError("Boolean table size must be a power of two >= 2, got " + std::to_string(bits_.size()));
    }
    for (std::uint8_t b : bits_) {
        if (b > 1) throw OracleError("Boolean table entries must be 0 or 1");
    }
    index_width_ = log2_exact(bits_.size());
}

std::uint64_t BooleanTable::ones() const
{
    return static_cast<std::uint64_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

double BooleanTable::mean() const { return static_cast<double>(ones()) / static_cast<double>(size()); }

RealTable::RealTable(std::vector<double> values) : values_(std::move(values))
{
    if (values_.empty()) throw OracleError("real table must not be empty");
    for (double v : values_) {
        if (!(v >= 0.0 && v <= 1.0)) throw OracleError("real table value " + std::to_string(v) + " outside [0,1]");
    }
}

double RealTable::mean() const
{
    return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

namespace {

std::vector<std::string> read_table_tokens(std::istream& in)
{
    std::string line;
    std::uint64_t n = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        if (ls >> n) break;
    }
    if (n == 0) throw OracleError("table file must start with a positive size N");
    std::vector<std::string> tokens;
    tokens.reserve(n);
    std::string tok;
    while (tokens.size() < n && in >> tok) tokens.push_back(tok);
    if (tokens.size() != n) {
        throw OracleError("table declares " + std::to_string(n) + " values but holds " + std::to_string(tokens.size()));
    }
    return tokens;
}

} // namespace

BooleanTable read_boolean_table(std::istream& in)
{
    std::vector<std::uint8_t> bits;
    for (const std::string& tok : read_table_tokens(in)) {
        if (tok != "0" && tok != "1") throw OracleError("Boolean table entry '" + tok + "' is not 0 or 1");
        bits.push_back(tok == "1" ? 1 : 0);
    }
    return BooleanTable(std::move(bits));
}

RealTable read_real_table(std::istream& in)
{
    std::vector<double> values;
    for (const std::string& tok : read_table_tokens(in)) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw OracleError("real table entry '" + tok + "' is not a number");
        values.push_back(v);
    }
    return RealTable(std::move(values));
}

void write_table(std::ostream& out, const BooleanTable& table)
{
    out << table.size() << '\n';
    for (std::uint8_t b : table.bits()) out << int(b) << '\n';
}

void write_table(std::ostream& out, const RealTable& table)
{
    out << table.size() << '\n';
    const auto old = out.precision(17);
    for (double v : table.values()) out << v << '\n';
    out.precision(old);
}

std::uint64_t truncate_beta(double value, int value_width)
{
    if (value_width < 1 || value_width > 52) throw OracleError("value width must lie in [1, 52]");
    if (!(value >= 0.0 && value <= 1.0)) throw OracleError("coded value " + std::to_string(value) + " outside [0,1]");
    const std::uint64_t top = (std::uint64_t{1} << value_width) - 1;
    const auto scaled = static_cast<std::uint64_t>(std::floor(std::ldexp(value, value_width)));
    return std::min(scaled, top);
}

std::uint64_t CodingMaps::beta(double value) const
{
    if (mode == CodingMode::truncate) return truncate_beta(value, value_width);
    const double scaled = std::ldexp(value, value_width);
    const std::uint64_t top = (std::uint64_t{1} << value_width) - 1;
    if (!(value >= 0.0 && value < 1.0) || scaled != std::floor(scaled)) {
        throw OracleError("value " + std::to_string(value) + " has no exact " + std::to_string(value_width) +
                          "-bit code");
    }
    const auto code = static_cast<std::uint64_t>(scaled);
    if (code > top) throw OracleError("exact code out of range");
    return code;
}

BitQueryOracle::BitQueryOracle(int value_width, std::vector<std::uint64_t> coded, std::vector<SamplePoint> points)
    : value_width_(value_width), coded_(std::move(coded)), points_(std::move(points))
{
    if (value_width_ < 1 || value_width_ > 52) throw OracleError("value width must lie in [1, 52]");
    index_width_ = log2_exact(coded_.size());
    if (index_width_ < 1) throw OracleError("an oracle needs at least two indices");
    if (points_.size() != coded_.size()) throw OracleError("one sample point per index is required");
    const std::uint64_t top = (std::uint64_t{1} << value_width_) - 1;
    for (std::uint64_t c : coded_) {
        if (c > top) throw OracleError("coded value does not fit in the value register");
    }
}

BitQueryOracle BitQueryOracle::boolean(const BooleanTable& table)
{
    std::vector<std::uint64_t> coded(table.bits().begin(), table.bits().end());
    std::vector<SamplePoint> points(table.size());
    for (std::uint64_t j = 0; j < table.size(); ++j) points[j].index = j;
    return BitQueryOracle(1, std::move(coded), std::move(points));
}

BitQueryOracle BitQueryOracle::real(const RealTable& table, const CodingMaps& coding)
{
    const std::uint64_t n = table.size();
    if ((n & (n - 1)) != 0 || n < 2) throw OracleError("a real query needs a power-of-two table of size >= 2");
    std::vector<std::uint64_t> coded(n);
    std::vector<SamplePoint> points(n);
    for (std::uint64_t j = 0; j < n; ++j) {
        points[j] = coding.point(j);
        if (points[j].index >= n) throw OracleError("tau maps outside the table");
        coded[j] = coding.beta(table[points[j].index]);
    }
    return BitQueryOracle(coding.value_width, std::move(coded), std::move(points));
}

BitQueryOracle BitQueryOracle::from_coded(int value_width, std::vector<std::uint64_t> coded,
                                          std::vector<SamplePoint> points)
{
    return BitQueryOracle(value_width, std::move(coded), std::move(points));
}

double BitQueryOracle::coded_mean() const
{
    long double s = 0.0L;
    for (std::uint64_t c : coded_) s += static_cast<long double>(c);
    return static_cast<double>(std::ldexp(s / static_cast<long double>(coded_.size()), -value_width_));
}

double BitQueryOracle::marked_fraction() const
{
    const auto marked = std::count_if(coded_.begin(), coded_.end(), [](std::uint64_t c) { return c != 0; });
    return static_cast<double>(marked) / static_cast<double>(coded_.size());
}

namespace {

void require_layout(const StateVector& state, const BitQueryOracle& oracle, const RegisterLayout& layout)
{
    if (layout.index_width != oracle.index_width() || layout.value_width != oracle.value_width()) {
        throw OracleError("layout (" + std::to_string(layout.index_width) + ", " + std::to_string(layout.value_width) +
                          ") does not match oracle (" + std::to_string(oracle.index_width()) + ", " +
                          std::to_string(oracle.value_width()) + ")");
    }
    if (layout.total() > state.num_qubits()) throw OracleError("layout exceeds the state's qubits");
}

void require_controls(const StateVector& state, std::uint64_t controls, std::uint64_t targets)
{
    if (controls >> state.num_qubits()) throw OracleError("control mask addresses qubits outside the state");
    if (controls & targets) throw OracleError("query controls overlap its registers");
}

} // namespace

void apply_bit_query(StateVector& state, BitQueryOracle& oracle, const RegisterLayout& layout, std::uint64_t controls)
{
    if (!oracle.is_boolean()) throw OracleError("Boolean query applied with a multi-bit oracle");
    apply_real_bit_query(state, oracle, layout, controls, false);
}

void apply_real_bit_query(StateVector& state, BitQueryOracle& oracle, const RegisterLayout& layout,
                          std::uint64_t controls, bool inverse)
{
    require_layout(state, oracle, layout);
    const Register idx = layout.index();
    const Register val = layout.value();
    require_controls(state, controls, idx.mask() | val.mask());

    const std::uint64_t vsize = val.size();
    auto amp = state.mutable_amplitudes();
    std::vector<Complex> column(vsize);
    // Visit each (rest, j) once through its value-0 representative and permute
    // the value column by the modular shift.
    for (std::uint64_t base = 0; base < amp.size(); ++base) {
        if (val.extract(base) != 0) continue;
        if ((base & controls) != controls) continue;
        const std::uint64_t shift = oracle.coded_value(idx.extract(base)) % vsize;
        if (shift == 0) continue;
        const std::uint64_t s = inverse ? (vsize - shift) % vsize : shift;
        for (std::uint64_t i = 0; i < vsize; ++i) column[i] = amp[base | val.place(i)];
        for (std::uint64_t i = 0; i < vsize; ++i) amp[base | val.place((i + s) % vsize)] = column[i];
    }
    oracle.record_application();
    state.check_norm("bit query");
}

void phase_flip_query(StateVector& state, BitQueryOracle& oracle, Register index_register, std::uint64_t controls)
{
    if (!oracle.is_boolean()) throw OracleError("phase flip needs a Boolean oracle");
    if (index_register.width != oracle.index_width()) throw OracleError("index register width does not match oracle");
    if (index_register.offset < 0 || index_register.offset + index_register.width > state.num_qubits()) {
        throw OracleError("index register outside the state");
    }
    require_controls(state, controls, index_register.mask());
    auto amp = state.mutable_amplitudes();
    for (std::uint64_t i = 0; i < amp.size(); ++i) {
        if ((i & controls) == controls && oracle.coded_value(index_register.extract(i)) != 0) amp[i] = -amp[i];
    }
    oracle.record_application();
    state.check_norm("phase flip query");
}

std::uint64_t query_count(const BitQueryOracle& oracle) { return oracle.applications(); }

RandomizedOracleFactory::RandomizedOracleFactory(OmegaDistribution distribution, Coder coder, int value_width,
                                                 std::uint64_t subsample)
    : distribution_(std::move(distribution)), coder_(std::move(coder)), value_width_(value_width),
      subsample_(subsample)
{
    if (subsample_ < 1) throw OracleError("subsample size m must be at least 1");
    if (!coder_) throw OracleError("randomized oracle factory needs a coder");
    std::visit(
        [](const auto& d) {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, UniformIndexDraw> || std::is_same_v<D, IdentityIndexDraw>) {
                if (d.population < 1) throw OracleError("omega population must be nonempty");
            } else {
                if (d.dimension < 1) throw OracleError("omega dimension must be at least 1");
            }
        },
        distribution_);
}

RandomizedOracleFactory RandomizedOracleFactory::for_table(const BooleanTable& table, std::uint64_t subsample)
{
    return RandomizedOracleFactory(
        UniformIndexDraw{table.size()},
        [t = std::make_shared<const BooleanTable>(table)](const SamplePoint& p) -> std::uint64_t {
            return (*t)[p.index];
        },
        1, subsample);
}

RandomizedOracleFactory RandomizedOracleFactory::for_table(const RealTable& table, const CodingMaps& coding,
                                                           std::uint64_t subsample)
{
    return RandomizedOracleFactory(
        UniformIndexDraw{table.size()},
        [t = std::make_shared<const RealTable>(table), coding](const SamplePoint& p) {
            return coding.beta((*t)[p.index]);
        },
        coding.value_width,
        subsample);
}

std::uint64_t RandomizedOracleFactory::padded_size() const { return std::max<std::uint64_t>(2, next_power_of_two(subsample_)); }

std::vector<SamplePoint> draw_sample_points(const OmegaDistribution& distribution, std::uint64_t count, Rng& rng)
{
    std::vector<SamplePoint> points(count);
    for (std::uint64_t l = 0; l < count; ++l) {
        SamplePoint& p = points[l];
        std::visit(
            [&](const auto& d) {
                using D = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<D, UniformIndexDraw>) {
                    p.index = rng.uniform_index(d.population);
                } else if constexpr (std::is_same_v<D, IdentityIndexDraw>) {
                    p.index = l % d.population;
                } else if constexpr (std::is_same_v<D, UniformCubeDraw>) {
                    p.index = l;
                    p.coords.resize(d.dimension);
                    for (double& x : p.coords) x = rng.uniform();
                } else {
                    p.index = l;
                    p.coords = gaussian_sample_mu_d(d.dimension, rng);
                }
            },
            distribution);
    }
    return points;
}

std::vector<SamplePoint> RandomizedOracleFactory::draw_points(std::uint64_t count, Rng& rng) const
{
    return draw_sample_points(distribution_, count, rng);
}

BitQueryOracle RandomizedOracleFactory::draw(Rng& rng) const
{
    std::vector<SamplePoint> points = draw_points(subsample_, rng);
    const std::uint64_t padded = padded_size();
    while (points.size() < padded) points.push_back(points[rng.uniform_index(subsample_)]);
    std::vector<std::uint64_t> coded(padded);
    for (std::uint64_t l = 0; l < padded; ++l) coded[l] = coder_(points[l]);
    return BitQueryOracle::from_coded(value_width_, std::move(coded), std::move(points));
}

BitQueryOracle make_randomized_subsample_oracle(const BooleanTable& f, std::uint64_t m, Rng& rng)
{
    return RandomizedOracleFactory::for_table(f, m).draw(rng);
}

BitQueryOracle make_randomized_subsample_oracle(const RealTable& f, const CodingMaps& coding, std::uint64_t m,
                                                Rng& rng)
{
    return RandomizedOracleFactory::for_table(f, coding, m).draw(rng);
}

} // namespace randq
