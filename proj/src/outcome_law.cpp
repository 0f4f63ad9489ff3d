#include "randq/outcome_law.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace randq {

OutcomeLaw OutcomeLaw::from_pairs(std::vector<std::pair<double, double>> pairs)
{
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    OutcomeLaw law;
    for (const auto& [v, p] : pairs) {
        if (!law.values.empty() && law.values.back() == v) {
            law.probabilities.back() += p;
        } else {
            law.values.push_back(v);
            law.probabilities.push_back(p);
        }
    }
    return law;
}

OutcomeLaw OutcomeLaw::point(double value) { return OutcomeLaw{{value}, {1.0}}; }

double OutcomeLaw::total() const
{
    double s = 0.0;
    for (double p : probabilities) s += p;
    return s;
}

void OutcomeLaw::validate(double tol) const
{
    if (values.size() != probabilities.size() || values.empty()) throw std::logic_error("malformed outcome law");
    for (double p : probabilities) {
        if (!(p >= -tol && p <= 1.0 + tol)) throw std::logic_error("outcome probability outside [0,1]");
    }
    if (std::abs(total() - 1.0) > tol) {
        throw std::logic_error("outcome law sums to " + std::to_string(total()) + ", not 1");
    }
}

OutcomeLaw OutcomeLaw::map(const std::function<double(double)>& g) const
{
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) pairs.emplace_back(g(values[i]), probabilities[i]);
    return from_pairs(std::move(pairs));
}

double OutcomeLaw::mean() const
{
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += probabilities[i] * values[i];
    return s;
}

double OutcomeLaw::mean_squared_error(double truth) const
{
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double e = values[i] - truth;
        s += probabilities[i] * e * e;
    }
    return s;
}

OutcomeLaw median_law(const OutcomeLaw& single, int repetitions)
{
    if (repetitions < 1 || repetitions % 2 == 0) throw std::invalid_argument("median needs an odd repetition count");
    const int r = repetitions;
    const int h = (r + 1) / 2;
    std::vector<double> binom(r + 1, 1.0);
    for (int i = 1; i <= r; ++i) binom[i] = binom[i - 1] * (r - i + 1) / i;
    // P(median <= v) = P(at least h of r draws are <= v)
    auto at_least_h = [&](double f) {
        if (f >= 1.0) return 1.0;
        if (f <= 0.0) return 0.0;
        double s = 0.0;
        for (int i = h; i <= r; ++i) s += binom[i] * std::pow(f, i) * std::pow(1.0 - f, r - i);
        return s;
    };
    OutcomeLaw out;
    double cdf = 0.0;
    double prev = 0.0;
    for (std::size_t k = 0; k < single.size(); ++k) {
        cdf += single.probabilities[k];
        const double g = k + 1 == single.size() ? 1.0 : at_least_h(std::min(cdf, 1.0));
        const double p = g - prev;
        prev = g;
        if (p > 0.0) {
            out.values.push_back(single.values[k]);
            out.probabilities.push_back(p);
        }
    }
    return out;
}

} // namespace randq
