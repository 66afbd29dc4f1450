#include "cabt/acceptance.hpp"

#include "cabt/backtrack.hpp"
#include "cabt/eca.hpp"
#include "cabt/errors.hpp"
#include "cabt/numtheory.hpp"
#include "cabt/report.hpp"
#include "cabt/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace cabt::acceptance {

namespace {

using backtrack::Mode;
using backtrack::ProblemInstance;

// Width-11 rule-254 instance with the single preimage 00000100000.
constexpr const char* kSeed11 = "00000100000";
constexpr const char* kTarget11 = "01111111110";
// Width-8 rule-254 target with no preimage in one step: the oracle is
// identically zero, so the flag register never entangles the index register.
constexpr const char* kGardenOfEden8 = "00010000";
// Width-8 rule-254 target with the single two-step preimage 00011000.
constexpr const char* kMarked8 = "01111110";

std::string fmt(const char* format, double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, format, value);
    return buffer;
}

CriterionResult guarded(int id, std::string name, const std::function<CriterionResult()>& body) {
    try {
        auto result = body();
        result.id = id;
        result.name = std::move(name);
        return result;
    } catch (const ResourceError&) {
        throw;
    } catch (const std::exception& e) {
        return {id, std::move(name), false, std::string("exception: ") + e.what()};
    }
}

CriterionResult figure_reproduction() {
    const auto rule = eca::rule_table(254);
    auto config = eca::parse_configuration(kSeed11);
    bool runs_ok = true;
    for (int s = 0; s <= 4; ++s) {
        for (int c = 0; c < config.width(); ++c) {
            const bool expected_black = std::abs(c - 5) <= s;
            if ((config.cell(c) == 1) != expected_black) runs_ok = false;
        }
        if (s < 4) config = eca::step(config, rule);
    }
    const bool final_ok = config.to_string() == kTarget11;
    return {0, "", runs_ok && final_ok,
            "step 4 = " + config.to_string() + (runs_ok ? ", black run grows by one cell per side each step" : ", row mismatch")};
}

CriterionResult oracle_equivalence(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int mismatches = 0;
    int nonempty = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int rule = static_cast<int>(rng() % 256);
        const int width = 1 + static_cast<int>(rng() % 10);
        const int steps = 1 + static_cast<int>(rng() % 4);
        auto target = eca::decode(rng() % (std::uint64_t{1} << width), width);
        if (trial % 2 == 0) target = eca::evolve(target, eca::rule_table(rule), steps);
        ProblemInstance instance = backtrack::make_instance(rule, target.to_string(), steps);

        const auto f = backtrack::build_oracle(instance);
        std::vector<std::uint64_t> marked;
        for (std::uint64_t k = 0; k < (std::uint64_t{1} << width); ++k) {
            if (f(k)) marked.push_back(k);
        }
        std::vector<std::uint64_t> enumerated;
        for (const auto& c : eca::preimages(target, instance.rule, steps)) enumerated.push_back(eca::encode(c));
        if (marked != enumerated) ++mismatches;
        if (!enumerated.empty()) ++nonempty;
    }
    return {0, "", mismatches == 0,
            std::to_string(50 - mismatches) + "/50 instances agree (" + std::to_string(nonempty) + " with preimages)"};
}

CriterionResult mark_postselect_recovery() {
    const auto instance = backtrack::make_instance(254, kTarget11, 4);
    const auto result = backtrack::run_pipeline(instance, Mode::MarkPostselect, 1024, 0);
    const double point = result.index_marginal.at(32);
    const double expected_acceptance = 1.0 / 2048.0;
    const bool ok = std::abs(point - 1.0) <= 1e-9 &&
                    std::abs(result.acceptance_probability - expected_acceptance) <= 1e-12 &&
                    result.recovered_preimages.size() == 1 &&
                    result.recovered_preimages.front().to_string() == kSeed11;
    return {0, "", ok,
            "P(index = 32) = " + fmt("%.15g", point) + ", acceptance = " +
                fmt("%.15g", result.acceptance_probability)};
}

std::vector<double> full_paper_marginal(const char* target, int steps) {
    const auto instance = backtrack::make_instance(254, target, steps, 7, 15);
    return backtrack::run_pipeline(instance, Mode::FullPaper, 1, 0).index_marginal;
}

CriterionResult analytic_vs_simulated() {
    const auto instance = backtrack::make_instance(254, kGardenOfEden8, 1, 7, 15);
    if (!eca::preimages(instance.target, instance.rule, instance.steps).empty()) {
        return {0, "", false, "reference target unexpectedly has a preimage"};
    }
    const auto marginal = backtrack::run_pipeline(instance, Mode::FullPaper, 1, 0).index_marginal;
    const std::set<std::uint64_t> peaks{0, 64, 128, 192};
    double worst_analytic = 0.0;
    double worst_support = 0.0;
    for (std::uint64_t i = 0; i < 256; ++i) {
        worst_analytic = std::max(worst_analytic, std::abs(marginal[i] - backtrack::analytic_index_probability(i, 4, 8)));
        const double expected = peaks.count(i) ? 0.25 : 0.0;
        worst_support = std::max(worst_support, std::abs(marginal[i] - expected));
    }

    // Reported, not gated: with a marked preimage the flag splits one residue
    // class and the index marginal departs from the flag-free closed form.
    const auto marked = full_paper_marginal(kMarked8, 2);
    double marked_dev = 0.0;
    for (std::uint64_t i = 0; i < 256; ++i) {
        marked_dev = std::max(marked_dev, std::abs(marked[i] - backtrack::analytic_index_probability(i, 4, 8)));
    }
    const bool ok = worst_analytic <= 1e-9 && worst_support <= 1e-9;
    return {0, "", ok,
            "F=0 instance: max |sim - analytic| = " + fmt("%.3g", worst_analytic) + ", max |sim - {1/4 on 0,64,128,192}| = " +
                fmt("%.3g", worst_support) + "; unique-preimage instance deviates by " + fmt("%.3g", marked_dev)};
}

CriterionResult closed_form_consistency() {
    const std::uint64_t orders[] = {1, 2, 3, 4, 5, 7, 12};
    double worst = 0.0;
    std::uint64_t integer_cases = 0, sine_cases = 0;
    for (int n = 1; n <= 10; ++n) {
        const std::uint64_t dim = std::uint64_t{1} << n;
        for (auto r : orders) {
            if (r > dim) continue;
            for (std::uint64_t i = 0; i < dim; ++i) {
                double direct = 0.0;
                for (std::uint64_t k = 0; k < r; ++k) direct += std::norm(backtrack::analytic_amplitude(i, k, r, n));
                worst = std::max(worst, std::abs(direct - backtrack::analytic_index_probability(i, r, n)));
                ((i * r) % dim == 0 ? integer_cases : sine_cases) += 1;
            }
        }
    }
    return {0, "", worst <= 1e-9 && integer_cases > 0 && sine_cases > 0,
            "max deviation " + fmt("%.3g", worst) + " over " + std::to_string(integer_cases) + " integer-case and " +
                std::to_string(sine_cases) + " sine-ratio points"};
}

CriterionResult order_extraction() {
    const auto marginal = full_paper_marginal(kGardenOfEden8, 1);
    const auto order = numtheory::order_brute_force(7, 15).order;
    double success = 0.0;
    std::vector<std::uint64_t> winners;
    for (std::uint64_t i = 0; i < marginal.size(); ++i) {
        if (numtheory::extract_order(i, 8, 7, 15) == order) {
            success += marginal[i];
            if (marginal[i] > 1e-9) winners.push_back(i);
        }
    }
    const bool ok = order == 4 && std::abs(success - 0.5) <= 1e-12 && winners == std::vector<std::uint64_t>{64, 192};
    return {0, "", ok, "brute-force r = " + std::to_string(order) + ", P(extract = r) = " + fmt("%.15g", success)};
}

CriterionResult group_axioms() {
    for (std::uint64_t r = 1; r <= 64; ++r) {
        const auto report = numtheory::group_axiom_check(r);
        if (!report.all_hold() || !report.exhaustive) {
            return {0, "", false, "r = " + std::to_string(r) + ": " + report.counterexample};
        }
    }
    return {0, "", true, "closure, associativity, commutativity, identity, inverses hold for r = 1..64"};
}

ProblemInstance random_full_instance(std::mt19937_64& rng) {
    for (;;) {
        const std::int64_t modulus = 3 + static_cast<std::int64_t>(rng() % 20);
        const std::int64_t base = 2 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(modulus - 2));
        if (numtheory::gcd(base, modulus) != 1 || base % modulus == 1) continue;
        const int n = numtheory::ceil_log2(static_cast<std::uint64_t>(modulus * modulus));
        const int rule = static_cast<int>(rng() % 256);
        const int steps = 1 + static_cast<int>(rng() % 3);
        const auto seed_config = eca::decode(rng() % (std::uint64_t{1} << n), n);
        const auto target = eca::evolve(seed_config, eca::rule_table(rule), steps);
        return backtrack::make_instance(rule, target.to_string(), steps, base, modulus);
    }
}

CriterionResult normalization(std::uint64_t seed, double perturbation) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    double worst_norm = 0.0;
    double worst_involution = 0.0;
    int stages = 0;

    backtrack::PipelineOptions options;
    options.observer = [&](std::string_view, statevec::StateVector& state) {
        if (perturbation != 0.0) {
            auto amps = state.amplitudes();
            auto largest = std::max_element(amps.begin(), amps.end(),
                                            [](const auto& a, const auto& b) { return std::abs(a) < std::abs(b); });
            *largest += perturbation;
        }
        worst_norm = std::max(worst_norm, std::abs(1.0 - state.norm_squared()));
        ++stages;
    };

    for (int trial = 0; trial < 20; ++trial) {
        const auto instance = random_full_instance(rng);
        backtrack::run_pipeline(instance, Mode::FullPaper, 16, seed, options);
        backtrack::run_pipeline(instance, Mode::MarkPostselect, 16, seed, options);

        const auto marked = backtrack::run_mark_stage(instance);
        const auto oracle = backtrack::build_oracle(instance);
        worst_involution = std::max(
            worst_involution,
            statevec::max_deviation(statevec::apply_hadamard_layer(statevec::apply_hadamard_layer(marked)), marked));
        worst_involution = std::max(
            worst_involution,
            statevec::max_deviation(statevec::apply_flag_oracle(statevec::apply_flag_oracle(marked, oracle), oracle),
                                    marked));
        const auto powered = statevec::apply_modexp(marked, instance.base, instance.modulus);
        worst_involution = std::max(
            worst_involution, statevec::max_deviation(statevec::apply_qft(statevec::apply_iqft(powered)), powered));
    }
    const bool ok = worst_norm < 1e-10 && worst_involution <= 1e-10;
    return {0, "", ok,
            std::to_string(stages) + " stage checks, max |1 - norm^2| = " + fmt("%.3g", worst_norm) +
                ", max involution deviation = " + fmt("%.3g", worst_involution)};
}

CriterionResult resource_accounting() {
    const auto instance = backtrack::make_instance(254, kGardenOfEden8, 1, 7, 15);
    const int budget = backtrack::qubit_budget(instance);
    const auto envelope = backtrack::paper_qubit_envelope(instance);
    const bool ok = budget == 13 && budget == instance.width() + 1 + backtrack::modexp_width(instance) &&
                    budget <= envelope;
    return {0, "", ok,
            "n + 1 + t = " + std::to_string(budget) + " <= n + (A+1) + 1 + t = " + std::to_string(envelope)};
}

CriterionResult determinism() {
    const auto mark = backtrack::make_instance(254, kTarget11, 4);
    const auto full = backtrack::make_instance(254, kMarked8, 2, 7, 15);
    const auto a = report::backtrack(mark, Mode::MarkPostselect, 1024, 7).json;
    const auto b = report::backtrack(mark, Mode::MarkPostselect, 1024, 7).json;
    const auto c = report::backtrack(full, Mode::FullPaper, 1024, 7).json;
    const auto d = report::backtrack(full, Mode::FullPaper, 1024, 7).json;
    const bool ok = a == b && c == d && report::canonicalize(a) == a && report::canonicalize(c) == c;
    return {0, "", ok, "mark_postselect " + std::to_string(a.size()) + " bytes, full_paper " + std::to_string(c.size()) +
                           " bytes, identical across runs and stable under re-serialisation"};
}

} // namespace

std::vector<CriterionResult> run_all(const Options& options) {
    if (options.requested_width > 0) {
        statevec::RegisterLayout probe(options.requested_width, 0);
        (void)probe;
    }
    std::vector<CriterionResult> results;
    results.push_back(guarded(1, "evolution figure reproduction", figure_reproduction));
    results.push_back(guarded(2, "oracle equals exhaustive preimages", [&] { return oracle_equivalence(options.seed); }));
    results.push_back(guarded(3, "mark and post-select recovery", mark_postselect_recovery));
    results.push_back(guarded(4, "simulated vs analytic index distribution", analytic_vs_simulated));
    results.push_back(guarded(5, "closed-form branch consistency", closed_form_consistency));
    results.push_back(guarded(6, "continued-fraction order extraction", order_extraction));
    results.push_back(guarded(7, "class group axioms", group_axioms));
    results.push_back(guarded(8, "normalization and involutions",
                              [&] { return normalization(options.seed, options.perturbation); }));
    results.push_back(guarded(9, "qubit accounting", resource_accounting));
    results.push_back(guarded(10, "deterministic backtrack JSON", determinism));
    return results;
}

std::string format_line(const CriterionResult& result) {
    std::ostringstream out;
    out << (result.passed ? "PASS" : "FAIL") << "  " << (result.id < 10 ? " " : "") << result.id << "  " << result.name
        << ": " << result.detail;
    return out.str();
}

} // namespace cabt::acceptance
