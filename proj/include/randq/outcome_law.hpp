#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace randq {

/// Finite law of a real-valued algorithm output: distinct values in
/// ascending order with their probabilities.
struct OutcomeLaw {
    std::vector<double> values;
    std::vector<double> probabilities;

    /// Sorts and merges identical values.
    static OutcomeLaw from_pairs(std::vector<std::pair<double, double>> pairs);
    static OutcomeLaw point(double value);

    std::size_t size() const { return values.size(); }
    double total() const;
    /// Throws unless probabilities are in [0,1] and sum to 1 within tol.
    void validate(double tol = 1e-9) const;

    /// Law of g(X); g need not be monotone.
    OutcomeLaw map(const std::function<double(double)>& g) const;
    double mean() const;
    /// E |X - truth|^2
    double mean_squared_error(double truth) const;
};

/// Law of the median of `repetitions` independent draws (repetitions odd).
OutcomeLaw median_law(const OutcomeLaw& single, int repetitions);

} // namespace randq
