// Recomputes the error constant C in err <= C/n for the median-of-seven
// amplitude estimator: for each t, the exact worst L2 error over an amplitude
// grid times the largest budget mapping to t.
//
// usage: randq_calibrate [max_t = 12] [grid = 2048]

#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include "randq/amplitude_estimation.hpp"

int main(int argc, char** argv)
{
    const int max_t = argc > 1 ? std::atoi(argv[1]) : 12;
    const int grid = argc > 2 ? std::atoi(argv[2]) : 2048;
    if (max_t < 1 || max_t > 20 || grid < 1) {
        std::fprintf(stderr, "usage: randq_calibrate [max_t in 1..20] [grid >= 1]\n");
        return 2;
    }
    double constant = 0.0;
    std::printf("%3s %10s %12s %14s %10s\n", "t", "max_n", "worst_a", "worst_error", "n*error");
    for (const randq::CalibrationRow& row : randq::calibrate_error_constant(max_t, grid)) {
        std::printf("%3d %10llu %12.6f %14.6e %10.4f\n", row.phase_qubits,
                    static_cast<unsigned long long>(row.largest_budget), row.worst_amplitude, row.worst_error,
                    row.constant);
        constant = std::max(constant, row.constant);
    }
    std::printf("measured C = %.4f, shipped C = %.4f\n", constant, randq::kErrorConstant);
    return constant <= randq::kErrorConstant ? 0 : 1;
}
