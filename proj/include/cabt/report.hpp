#pragma once

// JSON documents emitted by the command-line front end. Keys are sorted and
// every floating-point value is rounded to 12 significant digits, so parsing
// a document and dumping it again reproduces the same bytes.

#include "cabt/backtrack.hpp"
#include "cabt/eca.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cabt::report {

double round_significant(double value, int digits = 12);

/// Parses and re-serialises a document with the canonical settings.
std::string canonicalize(std::string_view json_text);

struct EvolutionReport {
    std::vector<eca::Configuration> rows; // rows[0] is the initial configuration
    std::string rendered;                 // one '.'/'#' line per row
    std::string json;
};

EvolutionReport evolution(int rule, std::string_view initial, int steps);

/// Exhaustive preimage listing with count and wall time.
std::string preimages_json(int rule, std::string_view target, int steps, int max_width = eca::kDefaultEnumerationCap);

struct BacktrackReport {
    std::string json;
    bool verified = false;
    backtrack::Outcome outcome = backtrack::Outcome::Ok;
};

/// Serialises an already-computed pipeline run.
std::string pipeline_json(const backtrack::ProblemInstance& instance, const backtrack::PipelineResult& result,
                          const backtrack::VerificationReport& verification);

/// Runs the pipeline, verifies it and serialises the result.
BacktrackReport backtrack(const backtrack::ProblemInstance& instance, backtrack::Mode mode, std::uint64_t shots,
                          std::uint64_t seed, int qubit_cap = statevec::kDefaultQubitCap);

/// Brute-force order of A mod N. With width > 0 also the probability that
/// continued-fraction extraction returns the order, summed exactly over the
/// simulated post-IQFT index distribution.
std::string order_json(std::int64_t base, std::int64_t modulus, int width = 0,
                       int qubit_cap = statevec::kDefaultQubitCap);

/// Same as order_json, returning the probability only.
double extraction_success_probability(std::int64_t base, std::int64_t modulus, int width,
                                      int qubit_cap = statevec::kDefaultQubitCap);

} // namespace cabt::report
