#pragma once

#include <string>
#include <vector>

namespace randq {

struct AcceptanceResult {
    int id = 0;
    std::string name;
    bool passed = false;
    /// Measured quantities behind the verdict.
    std::string detail;
};

inline constexpr int kAcceptanceCount = 12;

/// Runs one criterion; exceptions become failures carrying the message.
AcceptanceResult run_acceptance_criterion(int id, int workers = 1);

/// Runs the selected criteria (all when empty) in ascending order.
std::vector<AcceptanceResult> run_acceptance(const std::vector<int>& ids = {}, int workers = 1);

/// "PASS  3 qubit separation: ..." style line.
std::string format_acceptance_line(const AcceptanceResult& result);

} // namespace randq
