#pragma once

// Quantum backtracking pipeline for elementary cellular automata:
// uniform superposition over initial configurations, flag oracle marking the
// preimages of a target, and (in full mode) modular exponentiation plus an
// inverse Fourier transform on the index register, followed by the
// measurement queries. Includes the closed-form model of the final index
// distribution used for cross-validation.

#include "cabt/eca.hpp"
#include "cabt/statevec.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cabt::backtrack {

enum class Mode {
    MarkPostselect, // mark, then project the flag onto |1>
    FullPaper,      // mark, modexp, IQFT, sample, continued fractions
};

const char* mode_name(Mode mode) noexcept;
std::optional<Mode> parse_mode(std::string_view name) noexcept;

struct ProblemInstance {
    eca::RuleTable rule;
    eca::Configuration target;
    int steps = 1;
    /// Modexp parameters; modulus == 0 means no modexp register.
    std::int64_t base = 0;
    std::int64_t modulus = 0;

    int width() const noexcept { return target.width(); }
    bool has_modexp() const noexcept { return modulus != 0; }
};

ProblemInstance make_instance(int rule, std::string_view target, int steps, std::int64_t base = 0,
                              std::int64_t modulus = 0);

/// Throws PreconditionError naming the violated requirement. FullPaper needs
/// A >= 2, gcd(A, N) = 1, A != 1 (mod N) and ceil(log2(N^2)) == n.
void validate(const ProblemInstance& instance, Mode mode);

/// ceil(log2 N) when a modulus is set, 0 otherwise.
int modexp_width(const ProblemInstance& instance);

/// Register count n + 1 + t of the simulated circuit. The (A+1)-qubit work
/// register of the gate-level construction is uncomputed before the modexp
/// stage and is not simulated; see paper_qubit_envelope.
int qubit_budget(const ProblemInstance& instance);

/// n + (A + 1) + 1 + t, the gate-level register count.
std::int64_t paper_qubit_envelope(const ProblemInstance& instance);

/// f(k) = 1 iff decode(k, n) evolves to the target in `steps` updates.
statevec::IndexPredicate build_oracle(const ProblemInstance& instance);

/// 2^{-n/2} sum_k |k>|f(k)>|1>, on a layout with the instance's modexp width.
statevec::StateVector run_mark_stage(const ProblemInstance& instance, int qubit_cap = statevec::kDefaultQubitCap);

enum class Outcome { Ok, NothingInMeasurement };

struct PipelineResult {
    Mode mode = Mode::MarkPostselect;
    Outcome outcome = Outcome::Ok;
    int qubits = 0;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;

    std::vector<std::uint64_t> marked_indices;
    /// Probability of reading flag = 1.
    double acceptance_probability = 0.0;
    std::vector<double> index_marginal;
    /// Sampled index-register values.
    statevec::Histogram shots_histogram;

    // Full mode only.
    std::optional<std::int64_t> true_order;
    std::optional<std::int64_t> extracted_order;
    std::map<std::int64_t, std::uint64_t> extracted_orders;
    std::uint64_t extraction_failures = 0;
    double order_success_probability = 0.0;
    /// Sampled index values seen together with flag = 1.
    std::vector<std::uint64_t> flagged_samples;
    /// P(flag = 1 and the index is a preimage) on the final state.
    double flagged_preimage_probability = 0.0;

    std::vector<eca::Configuration> recovered_preimages;
    double final_norm = 0.0;
};

/// Called after every stage with the live state.
using StageObserver = std::function<void(std::string_view stage, statevec::StateVector& state)>;

struct PipelineOptions {
    int qubit_cap = statevec::kDefaultQubitCap;
    StageObserver observer;
};

PipelineResult run_pipeline(const ProblemInstance& instance, Mode mode, std::uint64_t shots, std::uint64_t seed,
                            const PipelineOptions& options = {});

/// (1/2^n) sum_{z=0}^{Z_k} exp(-2 pi sqrt(-1) i (z r + k) / 2^n), Z_k = floor((2^n - 1 - k) / r).
std::complex<double> analytic_amplitude(std::uint64_t i, std::uint64_t k, std::uint64_t r, int n);

/// Closed form of sum_k |analytic_amplitude(i, k, r, n)|^2: sum_k ((Z_k + 1)/2^n)^2
/// when i r / 2^n is an integer, the sin^2 ratio otherwise.
double analytic_index_probability(std::uint64_t i, std::uint64_t r, int n);

struct VerificationReport {
    bool passed = true;
    bool empty = false;
    bool marked_cross_checked = false;
    std::vector<std::string> failures;
};

/// Re-evolves every recovered preimage and, for n <= 20, compares the marked
/// set with exhaustive enumeration.
VerificationReport verify_result(const ProblemInstance& instance, const PipelineResult& result);

} // namespace cabt::backtrack
