#include "cabt/report.hpp"

#include "cabt/errors.hpp"
#include "cabt/numtheory.hpp"
#include "cabt/statevec.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace cabt::report {

using nlohmann::json;

namespace {

std::string dump(const json& doc) {
    return doc.dump(2) + "\n";
}

std::string bitstring(std::uint64_t value, int width) {
    return eca::decode(value, width).to_string();
}

json rounded(const std::vector<double>& values) {
    json out = json::array();
    for (double v : values) out.push_back(round_significant(v));
    return out;
}

void require_order_inputs(std::int64_t base, std::int64_t modulus) {
    if (modulus < 2 || modulus > numtheory::kBruteForceModulusCap) {
        throw PreconditionError("modulus N = " + std::to_string(modulus) + " must lie in [2, 2^20]");
    }
    if (base < 2) {
        throw PreconditionError("base A = " + std::to_string(base) + " must be at least 2");
    }
    if (const auto g = numtheory::gcd(base, modulus); g != 1) {
        throw PreconditionError("gcd(A, N) = gcd(" + std::to_string(base) + ", " + std::to_string(modulus) +
                                ") = " + std::to_string(g) + ", expected 1");
    }
}

} // namespace

double round_significant(double value, int digits) {
    if (value == 0.0 || !std::isfinite(value)) return value == 0.0 ? 0.0 : value;
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
    return std::strtod(buffer, nullptr);
}

std::string canonicalize(std::string_view json_text) {
    return dump(json::parse(json_text));
}

EvolutionReport evolution(int rule, std::string_view initial, int steps) {
    const auto table = eca::rule_table(rule);
    auto config = eca::parse_configuration(initial);
    if (steps < 0) {
        throw DomainError("step count must be non-negative, got " + std::to_string(steps));
    }
    EvolutionReport report;
    report.rows.push_back(config);
    for (int s = 0; s < steps; ++s) {
        config = eca::step(config, table);
        report.rows.push_back(config);
    }
    json rows = json::array();
    for (const auto& row : report.rows) {
        report.rendered += row.render() + "\n";
        rows.push_back(row.to_string());
    }
    report.json = dump({{"rule", rule}, {"steps", steps}, {"width", config.width()}, {"rows", rows}});
    return report;
}

std::string preimages_json(int rule, std::string_view target, int steps, int max_width) {
    const auto table = eca::rule_table(rule);
    const auto goal = eca::parse_configuration(target);
    if (goal.width() > max_width) {
        throw ResourceError("width " + std::to_string(goal.width()) + " exceeds the exhaustive enumeration cap of " +
                            std::to_string(max_width) + " cells; use the backtrack subcommand instead");
    }
    const auto start = std::chrono::steady_clock::now();
    const auto found = eca::preimages(goal, table, steps, {.max_width = max_width});
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    json list = json::array();
    for (const auto& c : found) list.push_back(c.to_string());
    return dump({{"rule", rule},
                 {"steps", steps},
                 {"target", goal.to_string()},
                 {"width", goal.width()},
                 {"count", found.size()},
                 {"preimages", list},
                 {"wall_time_seconds", round_significant(elapsed.count(), 6)}});
}

std::string pipeline_json(const backtrack::ProblemInstance& instance, const backtrack::PipelineResult& result,
                          const backtrack::VerificationReport& verification) {
    const auto mode = result.mode;
    const int n = instance.width();

    json inst = {{"rule", instance.rule.number()},
                 {"width", n},
                 {"steps", instance.steps},
                 {"target", instance.target.to_string()}};
    if (mode == backtrack::Mode::FullPaper) {
        inst["base"] = instance.base;
        inst["modulus"] = instance.modulus;
    }

    json histogram = json::object();
    for (const auto& [value, count] : result.shots_histogram) histogram[bitstring(value, n)] = count;

    json orders = json::object();
    for (const auto& [order, count] : result.extracted_orders) orders[std::to_string(order)] = count;
    if (result.extraction_failures) orders["none"] = result.extraction_failures;

    json preimages = json::array();
    for (const auto& c : result.recovered_preimages) preimages.push_back(c.to_string());

    json doc = {{"instance", inst},
                {"mode", backtrack::mode_name(mode)},
                {"status", result.outcome == backtrack::Outcome::Ok ? "ok" : "nothing_in_measurement"},
                {"marked", result.marked_indices},
                {"acceptance_probability", round_significant(result.acceptance_probability)},
                {"index_marginal", rounded(result.index_marginal)},
                {"histogram", histogram},
                {"extracted_orders", orders},
                {"preimages", preimages},
                {"verified", verification.passed},
                {"verification_failures", verification.failures},
                {"qubits", result.qubits},
                {"shots", result.shots},
                {"seed", result.seed}};
    if (mode == backtrack::Mode::FullPaper) {
        doc["order"] = *result.true_order;
        doc["extracted_order"] = result.extracted_order ? json(*result.extracted_order) : json(nullptr);
        doc["order_success_probability"] = round_significant(result.order_success_probability);
        doc["flagged_samples"] = result.flagged_samples;
        doc["flagged_preimage_probability"] = round_significant(result.flagged_preimage_probability);
    }
    return dump(doc);
}

BacktrackReport backtrack(const backtrack::ProblemInstance& instance, backtrack::Mode mode, std::uint64_t shots,
                          std::uint64_t seed, int qubit_cap) {
    backtrack::PipelineOptions options;
    options.qubit_cap = qubit_cap;
    const auto result = backtrack::run_pipeline(instance, mode, shots, seed, options);
    const auto verification = backtrack::verify_result(instance, result);
    return {pipeline_json(instance, result, verification), verification.passed, result.outcome};
}

double extraction_success_probability(std::int64_t base, std::int64_t modulus, int width, int qubit_cap) {
    require_order_inputs(base, modulus);
    const auto order = numtheory::order_brute_force(base, modulus).order;
    const int t = numtheory::ceil_log2(static_cast<std::uint64_t>(modulus));
    const statevec::RegisterLayout layout(width, t, qubit_cap);
    auto state = statevec::apply_hadamard_layer(statevec::initial_state(layout));
    state = statevec::apply_iqft(statevec::apply_modexp(std::move(state), base, modulus));
    const auto probs = statevec::marginal(state, statevec::Register::Index);
    double success = 0.0;
    for (std::uint64_t i = 0; i < probs.size(); ++i) {
        if (numtheory::extract_order(i, width, base, modulus) == order) success += probs[i];
    }
    return success;
}

std::string order_json(std::int64_t base, std::int64_t modulus, int width, int qubit_cap) {
    require_order_inputs(base, modulus);
    const auto result = numtheory::order_brute_force(base, modulus);
    if (result.order == 1) {
        throw PreconditionError("A = " + std::to_string(base) + " is 1 mod N, order would be 1");
    }
    json doc = {{"base", base}, {"modulus", modulus}, {"order", result.order}, {"method", "brute_force"}};
    if (width > 0) {
        doc["extraction"] = {
            {"width", width},
            {"method", "exact_sum_over_simulated_distribution"},
            {"success_probability", round_significant(extraction_success_probability(base, modulus, width, qubit_cap))}};
    }
    return dump(doc);
}

} // namespace cabt::report
