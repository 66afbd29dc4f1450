#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cabt::acceptance {

struct Options {
    std::uint64_t seed = 20240601;
    /// Added to the largest amplitude after every pipeline stage of the
    /// normalization criterion. Nonzero values are a negative control.
    double perturbation = 0.0;
    /// When positive, a layout of this many index qubits is built first; a
    /// width beyond the qubit cap aborts the run with ResourceError.
    int requested_width = 0;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<CriterionResult> run_all(const Options& options = {});

/// "PASS  3  name: detail"
std::string format_line(const CriterionResult& result);

} // namespace cabt::acceptance
