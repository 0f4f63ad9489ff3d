#include "randq/reductions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "randq/numeric.hpp"

namespace randq {

namespace {

void require_epsilon(double epsilon)
{
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw std::invalid_argument("epsilon must lie in (0, 0.5)");
}

/// Largest table a deterministic query is built over.
constexpr std::uint64_t kMaxMaterializedDomain = std::uint64_t{1} << 26;

int floor_log2(std::uint64_t x)
{
    int r = -1;
    while (x) {
        x >>= 1;
        ++r;
    }
    return r;
}

/// Shifts the output map of an inner summation by y -> a + b y.
void compose_affine(PreparedSummation& p, double a, double b)
{
    p.offset = a + b * p.offset;
    p.scale = b * p.scale;
    p.negative_weight = b * p.negative_weight;
}

Estimate run_with_omega(const std::function<PreparedSummation(Rng&)>& prepare, Rng& rng, const QaeOptions& options)
{
    const std::uint64_t seed = rng.seed();
    Rng omega = rng.split();
    PreparedSummation p = prepare(omega);
    Estimate est = run_prepared(p, rng, options);
    est.seed = seed;
    return est;
}

double checked_value(double v, double bound, const char* what)
{
    if (!(std::abs(v) <= bound * (1.0 + 1e-12))) {
        throw IntegrandRangeError(std::string(what) + " value " + std::to_string(v) + " exceeds its bound " +
                                  std::to_string(bound));
    }
    return std::clamp(v, -bound, bound);
}

/// Positive part (sign +1) or negative part (sign -1) of values in [-1,1].
RealTable signed_part(const std::vector<double>& values, double sign)
{
    std::vector<double> g(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) g[i] = std::clamp(sign * values[i], 0.0, 1.0);
    return RealTable(std::move(g));
}

/// Sums the positive and negative parts separately, so a vanishing table
/// gives exactly 0.
PreparedSummation signed_summation(const std::vector<double>& values, double epsilon, Rng* omega)
{
    auto part = [&](double sign) {
        const RealTable t = signed_part(values, sign);
        return omega ? prepare_real_summation(t, epsilon, *omega) : prepare_real_summation_deterministic(t, epsilon);
    };
    PreparedSummation p = part(1.0);
    p.negative = std::make_shared<PreparedSummation>(part(-1.0));
    return p;
}

} // namespace

BinaryExpansion::BinaryExpansion(std::vector<std::uint64_t> codes, int bits) : codes_(std::move(codes)), bits_(bits)
{
    if (bits_ < 1 || bits_ > 40) throw std::invalid_argument("bit depth K must lie in [1, 40]");
    if (codes_.empty()) throw std::invalid_argument("binary expansion of an empty table");
    for (std::uint64_t c : codes_) {
        if (c >> bits_) throw std::invalid_argument("code wider than K bits");
    }
}

BinaryExpansion::Triple BinaryExpansion::triple_at(std::uint64_t flat) const
{
    if (flat >= domain_size()) throw std::out_of_range("index outside D");
    const std::uint64_t block = block_size();
    const std::uint64_t j = flat / block;
    const std::uint64_t o = flat % block;
    // bit i occupies offsets [2^K - 2^{K-i+1}, 2^K - 2^{K-i})
    const int i = bits_ - floor_log2(block - o);
    const std::uint64_t start = (std::uint64_t{1} << bits_) - (std::uint64_t{1} << (bits_ - i + 1));
    return {i, j, o - start + 1};
}

std::uint64_t BinaryExpansion::flat_index(const Triple& t) const
{
    if (t.i < 1 || t.i > bits_ || t.j >= source_size() || t.p < 1 || t.p > (std::uint64_t{1} << (bits_ - t.i))) {
        throw std::out_of_range("triple outside D");
    }
    const std::uint64_t start = (std::uint64_t{1} << bits_) - (std::uint64_t{1} << (bits_ - t.i + 1));
    return t.j * block_size() + start + t.p - 1;
}

bool BinaryExpansion::bit(const Triple& t) const { return (codes_[t.j] >> (bits_ - t.i)) & 1; }

std::uint64_t BinaryExpansion::truncated_sum() const
{
    return std::accumulate(codes_.begin(), codes_.end(), std::uint64_t{0});
}

double BinaryExpansion::truncated_mean() const
{
    return std::ldexp(static_cast<double>(truncated_sum()) / static_cast<double>(source_size()), -bits_);
}

BinaryExpansion binary_expand(const RealTable& f, int bits)
{
    std::vector<std::uint64_t> codes(f.size());
    for (std::uint64_t j = 0; j < f.size(); ++j) codes[j] = truncate_beta(f[j], bits);
    return BinaryExpansion(std::move(codes), bits);
}

int bit_depth_for(double epsilon)
{
    require_epsilon(epsilon);
    return static_cast<int>(ceil_count(std::log2(1.0 / (epsilon * epsilon))));
}

PreparedSummation prepare_real_summation(const RealTable& f, double epsilon, Rng& omega)
{
    const int k = bit_depth_for(epsilon);
    auto expansion = std::make_shared<const BinaryExpansion>(binary_expand(f, k));
    const RandomizedSummationPlan plan = plan_randomized_summation(epsilon - epsilon * epsilon);
    RandomizedOracleFactory factory(
        UniformIndexDraw{expansion->domain_size()},
        [expansion](const SamplePoint& p) -> std::uint64_t { return expansion->value_at(p.index); }, 1,
        plan.subsample);
    PreparedSummation p{factory.draw(omega), plan.budget};
    // uniform over D has mean S_K 2^K / (2^K - 1)
    p.scale = static_cast<double>(expansion->block_size()) / std::ldexp(1.0, k);
    return p;
}

PreparedSummation prepare_real_summation_deterministic(const RealTable& f, double epsilon)
{
    const int k = bit_depth_for(epsilon);
    const BinaryExpansion expansion = binary_expand(f, k);
    const std::uint64_t domain = expansion.domain_size();
    const std::uint64_t padded = std::max<std::uint64_t>(2, next_power_of_two(domain));
    if (padded > kMaxMaterializedDomain) {
        throw ResourceLimitError("deterministic real summation needs a query over " + std::to_string(padded) +
                                 " indices; use the randomized variant");
    }
    std::vector<std::uint64_t> coded(padded, 0);
    std::vector<SamplePoint> points(padded);
    for (std::uint64_t l = 0; l < padded; ++l) {
        points[l].index = l;
        if (l < domain) coded[l] = expansion.value_at(l);
    }
    // Boolean mean over the padded domain is S_K N 2^K / padded
    const double ratio = static_cast<double>(padded) / std::ldexp(static_cast<double>(f.size()), k);
    const double target = (epsilon - epsilon * epsilon) / ratio;
    PreparedSummation p{BitQueryOracle::from_coded(1, std::move(coded), std::move(points)), budget_for_accuracy(target)};
    p.scale = ratio;
    return p;
}

Estimate real_summation(const RealTable& f, double epsilon, Rng& rng, const QaeOptions& options)
{
    return run_with_omega([&](Rng& omega) { return prepare_real_summation(f, epsilon, omega); }, rng, options);
}

Estimate real_summation_deterministic(const RealTable& f, double epsilon, Rng& rng, const QaeOptions& options)
{
    PreparedSummation p = prepare_real_summation_deterministic(f, epsilon);
    return run_prepared(p, rng, options);
}

PreparedSummation prepare_integrate_r0(const Integrand& f, int d, double epsilon, Rng& omega)
{
    require_epsilon(epsilon);
    if (d < 1) throw std::invalid_argument("dimension must be at least 1");
    const std::uint64_t m = ceil_count(4.0 / (epsilon * epsilon));
    const auto points = draw_sample_points(UniformCubeDraw{d}, m, omega);
    std::vector<double> values(m);
    for (std::uint64_t l = 0; l < m; ++l) values[l] = checked_value(f(points[l].coords), 1.0, "integrand");
    PreparedSummation p = signed_summation(values, epsilon / 4.0, &omega);
    p.classical_evaluations = m;
    return p;
}

Estimate integrate_r0(const Integrand& f, int d, double epsilon, Rng& rng, const QaeOptions& options)
{
    return run_with_omega([&](Rng& omega) { return prepare_integrate_r0(f, d, epsilon, omega); }, rng, options);
}

void SmoothClassDescriptor::validate() const
{
    if (dimension < 1) throw std::invalid_argument("dimension must be at least 1");
    if (smoothness < 0) throw std::invalid_argument("smoothness must be nonnegative");
    if (!(norm_bound > 0.0)) throw std::invalid_argument("norm bound must be positive");
}

double lebesgue_constant(int r)
{
    // degree 2 on nodes 0, 1/2, 1: the sum is 1 + 4s(1/2 - s) on [0, 1/2],
    // peaking at s = 1/4 (and symmetrically 3/4) with value 5/4
    switch (r) {
    case 1: return 1.0;
    case 2: return 1.25;
    default: throw std::invalid_argument("interpolation constants are calibrated for r in {1, 2} only");
    }
}

double derivative_lebesgue_constant(int r)
{
    switch (r) {
    case 1: return 1.0;
    case 2: return 3.0;
    default: throw std::invalid_argument("interpolation constants are calibrated for r in {1, 2} only");
    }
}

ControlVariatePlan plan_control_variate(const SmoothClassDescriptor& cls, double epsilon)
{
    cls.validate();
    if (cls.smoothness < 1) throw std::invalid_argument("control variates need r >= 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    const int d = cls.dimension;
    const int r = cls.smoothness;
    ControlVariatePlan plan;
    plan.interpolation_constant =
        (1.0 + std::pow(lebesgue_constant(r), d)) * std::pow(d / 2.0, r) / std::tgamma(r + 1.0);
    const double n0 = std::floor(std::pow(plan.interpolation_constant / epsilon, 1.0 / (d + r)) + 1e-9);
    plan.cells_per_axis = static_cast<int>(std::max(1.0, n0));
    plan.residual_bound = plan.interpolation_constant * std::pow(plan.cells_per_axis, -static_cast<double>(r));
    return plan;
}

namespace {

/// Lagrange basis at nodes l/r, l = 0..r, evaluated at s in [0,1].
void lagrange_basis(int r, double s, std::span<double> out)
{
    for (int l = 0; l <= r; ++l) {
        double v = 1.0;
        for (int q = 0; q <= r; ++q) {
            if (q != l) v *= (s - static_cast<double>(q) / r) / (static_cast<double>(l - q) / r);
        }
        out[l] = v;
    }
}

/// Integrals over [0,1] of the Lagrange basis: trapezoid and Simpson weights.
std::vector<double> newton_cotes_weights(int r)
{
    switch (r) {
    case 1: return {0.5, 0.5};
    case 2: return {1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0};
    default: throw std::invalid_argument("interpolation constants are calibrated for r in {1, 2} only");
    }
}

std::uint64_t ipow(std::uint64_t b, int e)
{
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace

TensorInterpolant::TensorInterpolant(const Integrand& f, int dimension, int degree, int cells_per_axis)
    : dimension_(dimension), degree_(degree), cells_(cells_per_axis), nodes_per_axis_(degree * cells_per_axis + 1)
{
    if (dimension_ < 1 || degree_ < 1 || cells_ < 1) throw std::invalid_argument("invalid interpolant shape");
    newton_cotes_weights(degree_);
    const std::uint64_t total = ipow(nodes_per_axis_, dimension_);
    if (total > kMaxMaterializedDomain) throw ResourceLimitError("interpolation grid too large");
    values_.resize(total);
    std::vector<double> x(dimension_);
    for (std::uint64_t id = 0; id < total; ++id) {
        std::uint64_t rest = id;
        for (int a = 0; a < dimension_; ++a) {
            x[a] = static_cast<double>(rest % nodes_per_axis_) / (nodes_per_axis_ - 1);
            rest /= nodes_per_axis_;
        }
        values_[id] = f(x);
    }
}

double TensorInterpolant::operator()(std::span<const double> x) const
{
    if (static_cast<int>(x.size()) != dimension_) throw std::invalid_argument("point has the wrong dimension");
    std::vector<int> cell(dimension_);
    std::vector<std::array<double, 3>> basis(dimension_);
    for (int a = 0; a < dimension_; ++a) {
        const double u = std::clamp(x[a], 0.0, 1.0) * cells_;
        cell[a] = std::min(static_cast<int>(u), cells_ - 1);
        lagrange_basis(degree_, u - cell[a], basis[a]);
    }
    const int local = degree_ + 1;
    const std::uint64_t corners = ipow(local, dimension_);
    double sum = 0.0;
    for (std::uint64_t c = 0; c < corners; ++c) {
        std::uint64_t rest = c;
        std::uint64_t id = 0;
        std::uint64_t stride = 1;
        double w = 1.0;
        for (int a = 0; a < dimension_; ++a) {
            const int l = static_cast<int>(rest % local);
            rest /= local;
            w *= basis[a][l];
            id += static_cast<std::uint64_t>(cell[a] * degree_ + l) * stride;
            stride *= nodes_per_axis_;
        }
        sum += w * values_[id];
    }
    return sum;
}

double TensorInterpolant::integral() const
{
    const std::vector<double> local = newton_cotes_weights(degree_);
    std::vector<double> axis(nodes_per_axis_, 0.0);
    for (int c = 0; c < cells_; ++c) {
        for (int l = 0; l <= degree_; ++l) axis[c * degree_ + l] += local[l] / cells_;
    }
    double sum = 0.0;
    for (std::uint64_t id = 0; id < values_.size(); ++id) {
        std::uint64_t rest = id;
        double w = 1.0;
        for (int a = 0; a < dimension_; ++a) {
            w *= axis[rest % nodes_per_axis_];
            rest /= nodes_per_axis_;
        }
        sum += w * values_[id];
    }
    return sum;
}

PreparedSummation prepare_integrate_rge1(const Integrand& f, const SmoothClassDescriptor& cls, double epsilon,
                                         QueryMode mode, Rng& omega)
{
    require_epsilon(epsilon);
    cls.validate();
    const int d = cls.dimension;
    const double bound = cls.norm_bound;
    const Integrand unit = [&f, bound](std::span<const double> x) { return f(x) / bound; };
    const double eps = epsilon / bound;
    const ControlVariatePlan plan = plan_control_variate(cls, eps);
    const TensorInterpolant interp(unit, d, cls.smoothness, plan.cells_per_axis);
    const double delta = plan.residual_bound;

    auto scaled_residual = [&](std::span<const double> x) {
        const double h = unit(x) - interp(x);
        if (!(std::abs(h) <= delta * (1.0 + 1e-12))) {
            throw ResidualBoundError("residual " + std::to_string(h) + " exceeds the interpolation bound " +
                                     std::to_string(delta));
        }
        return std::clamp(h / delta, -1.0, 1.0);
    };

    auto residual_summation = [&]() -> PreparedSummation {
        if (mode == QueryMode::randomized) {
            return prepare_integrate_r0(scaled_residual, d, std::min(eps / delta, 0.45), omega);
        }
        // midpoint grid for the residual, whose coordinate Lipschitz constant
        // is at most 1 + Lambda'_r Lambda_r^{d-1}
        const double lip = 1.0 + derivative_lebesgue_constant(cls.smoothness) *
                                     std::pow(lebesgue_constant(cls.smoothness), d - 1);
        const auto g = static_cast<int>(std::max<std::uint64_t>(1, ceil_count(d * lip / (2.0 * eps))));
        const std::uint64_t total = ipow(g, d);
        if (total > kMaxMaterializedDomain) throw ResourceLimitError("residual quadrature grid too large");
        std::vector<double> values(total);
        std::vector<double> x(d);
        for (std::uint64_t id = 0; id < total; ++id) {
            std::uint64_t rest = id;
            for (int a = 0; a < d; ++a) {
                x[a] = (static_cast<double>(rest % g) + 0.5) / g;
                rest /= g;
            }
            values[id] = scaled_residual(x);
        }
        PreparedSummation q = signed_summation(values, std::min(eps / (4.0 * delta), 0.45), nullptr);
        q.classical_evaluations += total;
        return q;
    };
    PreparedSummation p = residual_summation();
    // integral of f = bound * (integral of P(f) + delta * integral of h/delta)
    compose_affine(p, bound * interp.integral(), bound * delta);
    p.classical_evaluations += interp.evaluations();
    return p;
}

Estimate integrate_rge1(const Integrand& f, const SmoothClassDescriptor& cls, double epsilon, QueryMode mode, Rng& rng,
                        const QaeOptions& options)
{
    return run_with_omega([&](Rng& omega) { return prepare_integrate_rge1(f, cls, epsilon, mode, omega); }, rng,
                          options);
}

std::uint64_t path_sample_count(double epsilon)
{
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    return ceil_count(9.0 / (epsilon * epsilon));
}

PreparedSummation prepare_path_integrate(const PathIntegrand& f, double epsilon, Rng& omega)
{
    require_epsilon(epsilon);
    if (!(f.sup_bound > 0.0 && f.sup_bound <= 1.0)) throw std::invalid_argument("path integrand sup bound must be in (0,1]");
    const int d = truncation_dimension(epsilon, f.lipschitz);
    const std::uint64_t n = path_sample_count(epsilon);
    const auto points = draw_sample_points(GaussianKLDraw{d}, n, omega);
    std::vector<double> values(n);
    for (std::uint64_t l = 0; l < n; ++l) values[l] = checked_value(f.evaluate(points[l].coords), f.sup_bound, "path integrand");
    // eps/6 for each signed part keeps the summation error within eps/3
    PreparedSummation p = signed_summation(values, epsilon / 6.0, &omega);
    p.classical_evaluations = n;
    return p;
}

Estimate path_integrate(const PathIntegrand& f, double epsilon, Rng& rng, const QaeOptions& options)
{
    return run_with_omega([&](Rng& omega) { return prepare_path_integrate(f, epsilon, omega); }, rng, options);
}

} // namespace randq
