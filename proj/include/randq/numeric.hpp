#pragma once

#include <cmath>
#include <cstdint>

namespace randq {

/// Ceiling that ignores floating-point noise just above an integer, so that
/// e.g. 4 / 0.05^2 gives 1600 rather than 1601.
inline std::uint64_t ceil_count(double x)
{
    const double c = std::ceil(x - 1e-9 * std::fmax(1.0, std::fabs(x)));
    return c <= 0.0 ? 0 : static_cast<std::uint64_t>(c);
}

inline std::uint64_t floor_count(double x)
{
    const double f = std::floor(x + 1e-9 * std::fmax(1.0, std::fabs(x)));
    return f <= 0.0 ? 0 : static_cast<std::uint64_t>(f);
}

} // namespace randq
