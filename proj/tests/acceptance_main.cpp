// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include "cabt/acceptance.hpp"

#include <chrono>
#include <iostream>

int main() {
    const auto start = std::chrono::steady_clock::now();
    int failures = 0;
    for (const auto& criterion : cabt::acceptance::run_all()) {
        std::cout << cabt::acceptance::format_line(criterion) << "\n";
        if (!criterion.passed) ++failures;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << " in "
              << elapsed.count() << " s\n";
    return failures == 0 ? 0 : 1;
}
