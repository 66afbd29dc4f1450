#include "cabt/backtrack.hpp"

#include "cabt/errors.hpp"
#include "cabt/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace cabt::backtrack {

namespace {

constexpr int kAnalyticMaxWidth = 30;
constexpr int kCrossCheckMaxWidth = 20;

void require_analytic_args(std::uint64_t i, std::uint64_t r, int n) {
    if (n < 1 || n > kAnalyticMaxWidth) {
        throw DomainError("analytic model supports 1 <= n <= 30, got " + std::to_string(n));
    }
    const std::uint64_t dim = std::uint64_t{1} << n;
    if (i >= dim) {
        throw DomainError("outcome i = " + std::to_string(i) + " out of range for n = " + std::to_string(n));
    }
    if (r < 1 || r > dim) {
        throw DomainError("order r = " + std::to_string(r) + " must lie in [1, 2^n]");
    }
}

std::vector<std::uint8_t> oracle_table(const ProblemInstance& instance) {
    const auto f = build_oracle(instance);
    const std::uint64_t dim = std::uint64_t{1} << instance.width();
    std::vector<std::uint8_t> marks(dim);
    for (std::uint64_t k = 0; k < dim; ++k) marks[k] = static_cast<std::uint8_t>(f(k));
    return marks;
}

void notify(const PipelineOptions& options, std::string_view stage, statevec::StateVector& state) {
    if (options.observer) options.observer(stage, state);
}

statevec::StateVector mark_stage(const ProblemInstance& instance, int modexp_bits, const PipelineOptions& options,
                                 std::vector<std::uint64_t>* marked) {
    const statevec::RegisterLayout layout(instance.width(), modexp_bits, options.qubit_cap);
    auto state = statevec::initial_state(layout);
    notify(options, "initial", state);
    state = statevec::apply_hadamard_layer(std::move(state));
    notify(options, "hadamard", state);
    const auto marks = oracle_table(instance);
    state = statevec::apply_flag_oracle(std::move(state), marks);
    notify(options, "oracle", state);
    if (marked) {
        marked->clear();
        for (std::uint64_t k = 0; k < marks.size(); ++k) {
            if (marks[k]) marked->push_back(k);
        }
    }
    return state;
}

bool is_preimage(const ProblemInstance& instance, const eca::Configuration& candidate) {
    return eca::evolve(candidate, instance.rule, instance.steps) == instance.target;
}

} // namespace

const char* mode_name(Mode mode) noexcept {
    return mode == Mode::FullPaper ? "full_paper" : "mark_postselect";
}

std::optional<Mode> parse_mode(std::string_view name) noexcept {
    if (name == "mark_postselect") return Mode::MarkPostselect;
    if (name == "full_paper") return Mode::FullPaper;
    return std::nullopt;
}

ProblemInstance make_instance(int rule, std::string_view target, int steps, std::int64_t base, std::int64_t modulus) {
    ProblemInstance instance;
    instance.rule = eca::rule_table(rule);
    instance.target = eca::parse_configuration(target);
    instance.steps = steps;
    instance.base = base;
    instance.modulus = modulus;
    return instance;
}

void validate(const ProblemInstance& instance, Mode mode) {
    const int n = instance.width();
    if (n < 1 || n > eca::kMaxEncodableWidth) {
        throw PreconditionError("width n = " + std::to_string(n) + " must lie in [1, 63]");
    }
    if (instance.steps < 1) {
        throw PreconditionError("step count must be positive, got " + std::to_string(instance.steps));
    }
    if (mode == Mode::MarkPostselect) return;

    const std::int64_t a = instance.base;
    const std::int64_t big_n = instance.modulus;
    if (!instance.has_modexp()) {
        throw PreconditionError("full_paper mode needs a base A and modulus N");
    }
    if (big_n < 2 || big_n > numtheory::kBruteForceModulusCap) {
        throw PreconditionError("modulus N = " + std::to_string(big_n) + " must lie in [2, 2^20]");
    }
    if (a < 2) {
        throw PreconditionError("base A = " + std::to_string(a) + " must be at least 2");
    }
    if (const auto g = numtheory::gcd(a, big_n); g != 1) {
        throw PreconditionError("gcd(A, N) = gcd(" + std::to_string(a) + ", " + std::to_string(big_n) +
                                ") = " + std::to_string(g) + ", expected 1");
    }
    if (a % big_n == 1) {
        throw PreconditionError("A = " + std::to_string(a) + " is 1 mod N, order would be 1");
    }
    const auto n_sq = static_cast<std::uint64_t>(big_n) * static_cast<std::uint64_t>(big_n);
    if (const int coupled = numtheory::ceil_log2(n_sq); coupled != n) {
        throw PreconditionError("ceil(log2(N^2)) = " + std::to_string(coupled) + " != n = " + std::to_string(n) +
                                " (N = " + std::to_string(big_n) + ")");
    }
}

int modexp_width(const ProblemInstance& instance) {
    if (!instance.has_modexp()) return 0;
    if (instance.modulus < 1) {
        throw PreconditionError("modulus must be positive, got " + std::to_string(instance.modulus));
    }
    return numtheory::ceil_log2(static_cast<std::uint64_t>(instance.modulus));
}

int qubit_budget(const ProblemInstance& instance) {
    validate(instance, instance.has_modexp() ? Mode::FullPaper : Mode::MarkPostselect);
    return instance.width() + 1 + modexp_width(instance);
}

std::int64_t paper_qubit_envelope(const ProblemInstance& instance) {
    validate(instance, instance.has_modexp() ? Mode::FullPaper : Mode::MarkPostselect);
    return instance.width() + (instance.base + 1) + 1 + modexp_width(instance);
}

statevec::IndexPredicate build_oracle(const ProblemInstance& instance) {
    return [rule = instance.rule, target = instance.target, steps = instance.steps](std::uint64_t k) {
        return eca::evolve(eca::decode(k, target.width()), rule, steps) == target ? 1 : 0;
    };
}

statevec::StateVector run_mark_stage(const ProblemInstance& instance, int qubit_cap) {
    validate(instance, Mode::MarkPostselect);
    PipelineOptions options;
    options.qubit_cap = qubit_cap;
    return mark_stage(instance, modexp_width(instance), options, nullptr);
}

PipelineResult run_pipeline(const ProblemInstance& instance, Mode mode, std::uint64_t shots, std::uint64_t seed,
                            const PipelineOptions& options) {
    validate(instance, mode);
    if (shots < 1) {
        throw PreconditionError("shot count must be positive");
    }

    PipelineResult result;
    result.mode = mode;
    result.shots = shots;
    result.seed = seed;

    const int t = mode == Mode::FullPaper ? modexp_width(instance) : 0;
    auto state = mark_stage(instance, t, options, &result.marked_indices);
    const auto& layout = state.layout();
    result.qubits = layout.total();
    const double dim = static_cast<double>(layout.index_dimension());

    if (mode == Mode::MarkPostselect) {
        statevec::StateVector measured = state;
        try {
            auto selected = statevec::post_select(state, statevec::Register::Flag, 1);
            result.acceptance_probability = selected.acceptance;
            measured = std::move(selected.state);
        } catch (const EmptySubspaceError&) {
            result.outcome = Outcome::NothingInMeasurement;
        }
        notify(options, "postselect", measured);
        result.index_marginal = statevec::marginal(measured, statevec::Register::Index);
        result.final_norm = measured.norm_squared();
        result.shots_histogram = statevec::project_histogram(statevec::sample(measured, shots, seed), layout,
                                                             statevec::Register::Index);
        if (result.outcome == Outcome::Ok) {
            // Every surviving index carries probability 1/m >= 2^-n.
            for (std::uint64_t k = 0; k < result.index_marginal.size(); ++k) {
                if (result.index_marginal[k] > 0.5 / dim) {
                    result.recovered_preimages.push_back(eca::decode(k, instance.width()));
                }
            }
        }
        return result;
    }

    state = statevec::apply_modexp(std::move(state), instance.base, instance.modulus);
    notify(options, "modexp", state);
    state = statevec::apply_iqft(std::move(state));
    notify(options, "iqft", state);

    result.final_norm = state.norm_squared();
    result.index_marginal = statevec::marginal(state, statevec::Register::Index);
    result.acceptance_probability = statevec::marginal(state, statevec::Register::Flag)[1];
    result.true_order = numtheory::order_brute_force(instance.base, instance.modulus).order;

    const int n = instance.width();
    for (std::uint64_t i = 0; i < result.index_marginal.size(); ++i) {
        if (numtheory::extract_order(i, n, instance.base, instance.modulus) == result.true_order) {
            result.order_success_probability += result.index_marginal[i];
        }
    }

    const std::set<std::uint64_t> marked(result.marked_indices.begin(), result.marked_indices.end());
    const auto amps = state.amplitudes();
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        if (layout.flag_of(b) == 1 && marked.count(layout.index_of(b))) {
            result.flagged_preimage_probability += std::norm(amps[b]);
        }
    }

    const auto outcomes = statevec::sample(state, shots, seed);
    std::set<std::uint64_t> flagged;
    for (const auto& [basis, count] : outcomes) {
        const std::uint64_t i = layout.index_of(basis);
        result.shots_histogram[i] += count;
        if (layout.flag_of(basis) == 1) flagged.insert(i);
        if (const auto order = numtheory::extract_order(i, n, instance.base, instance.modulus)) {
            result.extracted_orders[*order] += count;
        } else {
            result.extraction_failures += count;
        }
    }
    std::uint64_t best = 0;
    for (const auto& [order, count] : result.extracted_orders) {
        if (count > best) {
            best = count;
            result.extracted_order = order;
        }
    }
    // Third query read on the Fourier-domain register: a flagged sample is
    // kept only if it re-evolves to the target.
    result.flagged_samples.assign(flagged.begin(), flagged.end());
    for (auto i : flagged) {
        auto candidate = eca::decode(i, n);
        if (is_preimage(instance, candidate)) result.recovered_preimages.push_back(std::move(candidate));
    }
    return result;
}

std::complex<double> analytic_amplitude(std::uint64_t i, std::uint64_t k, std::uint64_t r, int n) {
    require_analytic_args(i, r, n);
    if (k >= r) {
        throw DomainError("class label k = " + std::to_string(k) + " must be below r = " + std::to_string(r));
    }
    const std::uint64_t dim = std::uint64_t{1} << n;
    const std::uint64_t last = (dim - 1 - k) / r;
    std::complex<double> sum{};
    for (std::uint64_t z = 0; z <= last; ++z) {
        const std::uint64_t phase = (i * (z * r + k)) & (dim - 1);
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(dim);
        sum += std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return sum / static_cast<double>(dim);
}

double analytic_index_probability(std::uint64_t i, std::uint64_t r, int n) {
    require_analytic_args(i, r, n);
    const std::uint64_t dim = std::uint64_t{1} << n;
    const double d = static_cast<double>(dim);
    const auto sizes = numtheory::class_sizes(n, r);
    double total = 0.0;
    if ((i * r) % dim == 0) {
        for (auto s : sizes) total += (static_cast<double>(s) / d) * (static_cast<double>(s) / d);
        return total;
    }
    const double denom = std::sin(std::numbers::pi * static_cast<double>((i * r) % dim) / d);
    for (auto s : sizes) {
        const double numer = std::sin(std::numbers::pi * static_cast<double>((i * r * s) % dim) / d);
        total += (numer * numer) / (denom * denom);
    }
    return total / (d * d);
}

VerificationReport verify_result(const ProblemInstance& instance, const PipelineResult& result) {
    VerificationReport report;
    report.empty = result.recovered_preimages.empty();

    for (const auto& candidate : result.recovered_preimages) {
        if (candidate.width() != instance.width() || !is_preimage(instance, candidate)) {
            report.failures.push_back("recovered configuration " + candidate.to_string() +
                                      " does not evolve to the target");
        }
    }

    double mass = 0.0;
    for (double p : result.index_marginal) mass += p;
    if (!result.index_marginal.empty() && std::abs(mass - 1.0) > 1e-9) {
        report.failures.push_back("index marginal sums to " + std::to_string(mass));
    }

    if (instance.width() <= kCrossCheckMaxWidth) {
        report.marked_cross_checked = true;
        std::vector<std::uint64_t> expected;
        for (const auto& c : eca::preimages(instance.target, instance.rule, instance.steps,
                                            {.max_width = kCrossCheckMaxWidth})) {
            expected.push_back(eca::encode(c));
        }
        if (expected != result.marked_indices) {
            report.failures.push_back("marked set (" + std::to_string(result.marked_indices.size()) +
                                      " entries) differs from exhaustive enumeration (" +
                                      std::to_string(expected.size()) + " entries)");
        }
        if (result.mode == Mode::MarkPostselect && result.outcome == Outcome::Ok) {
            std::vector<std::uint64_t> recovered;
            for (const auto& c : result.recovered_preimages) recovered.push_back(eca::encode(c));
            if (recovered != expected) {
                report.failures.push_back("post-selected support differs from the preimage set");
            }
        }
    }

    report.passed = report.failures.empty();
    return report;
}

} // namespace cabt::backtrack
