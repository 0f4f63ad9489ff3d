// Runs the acceptance criteria given as arguments (all when none) and prints
// one PASS/FAIL line per criterion. Exit code 1 when any criterion fails.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "randq/acceptance.hpp"
#include "randq/parallel.hpp"

int main(int argc, char** argv)
{
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        try {
            ids.push_back(std::stoi(argv[i]));
        } catch (const std::exception&) {
            std::cerr << "usage: randq_acceptance [criterion ids 1.." << randq::kAcceptanceCount << "]\n";
            return 2;
        }
        if (ids.back() < 1 || ids.back() > randq::kAcceptanceCount) {
            std::cerr << "no acceptance criterion " << ids.back() << "\n";
            return 2;
        }
    }
    bool all = true;
    for (const randq::AcceptanceResult& r : randq::run_acceptance(ids, randq::worker_count_from_env())) {
        std::cout << randq::format_acceptance_line(r) << std::endl;
        all = all && r.passed;
    }
    return all ? 0 : 1;
}
