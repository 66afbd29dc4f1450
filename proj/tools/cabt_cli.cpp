// cabt: command-line front end over the C API.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource cap.

#include "cabt/cabt.h"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct CString {
    char* ptr = nullptr;
    ~CString() { cabt_string_free(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

struct InstanceDeleter {
    void operator()(cabt_instance* p) const { cabt_instance_destroy(p); }
};
struct ResultDeleter {
    void operator()(cabt_result* p) const { cabt_result_destroy(p); }
};

int report_error(cabt_status status) {
    std::cerr << "error: " << cabt_status_string(status) << ": " << cabt_last_error() << "\n";
    switch (status) {
    case CABT_ERR_RESOURCE: return kExitResource;
    case CABT_ERR_INTERNAL: return kExitVerification;
    default: return kExitUsage;
    }
}

int usage_error(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return kExitUsage;
}

int emit(const std::string& json, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << json;
        return kExitOk;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) return usage_error("cannot open output file '" + output_path + "'");
    out << json;
    return out ? kExitOk : usage_error("failed writing '" + output_path + "'");
}

int check_width(std::optional<int> width, const std::string& bits) {
    if (width && *width != static_cast<int>(bits.size())) {
        return usage_error("--width " + std::to_string(*width) + " does not match the " + std::to_string(bits.size()) +
                           "-cell configuration");
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum backtracking simulator for elementary cellular automata"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(cabt_version()));

    int rule = 254;
    int steps = 1;
    std::string initial, target, output;
    std::optional<int> width;
    std::int64_t base = 0, modulus = 0;
    std::string mode_name = "mark_postselect";
    std::uint64_t shots = 1024, seed = 0;
    int qubit_cap = CABT_DEFAULT_QUBIT_CAP;
    double perturbation = 0.0;
    int requested_width = 0;

    auto* evolve = app.add_subcommand("evolve", "Evolve a configuration and draw one row per step");
    evolve->add_option("--rule", rule, "Wolfram rule number (0-255)")->required();
    evolve->add_option("--initial", initial, "Initial configuration as a 0/1 string")->required();
    evolve->add_option("--steps", steps, "Number of updates")->required();
    evolve->add_option("--output", output, "Write the JSON to this file");

    auto* preimage = app.add_subcommand("preimage", "Enumerate every preimage exhaustively");
    preimage->add_option("--rule", rule)->required();
    preimage->add_option("--target", target)->required();
    preimage->add_option("--steps", steps)->required();
    preimage->add_option("--width", width);
    preimage->add_option("--output", output);

    auto* backtrack = app.add_subcommand("backtrack", "Run the simulated quantum backtracking pipeline");
    backtrack->add_option("--rule", rule)->required();
    backtrack->add_option("--target", target)->required();
    backtrack->add_option("--steps", steps)->required();
    backtrack->add_option("--width", width);
    backtrack->add_option("--base", base, "Modexp base A (full_paper)");
    backtrack->add_option("--modulus", modulus, "Modexp modulus N (full_paper)");
    backtrack->add_option("--mode", mode_name)->check(CLI::IsMember({"mark_postselect", "full_paper"}));
    backtrack->add_option("--shots", shots)->check(CLI::PositiveNumber);
    backtrack->add_option("--seed", seed);
    backtrack->add_option("--qubit-cap", qubit_cap)->check(CLI::Range(1, 40));
    backtrack->add_option("--output", output);

    auto* order = app.add_subcommand("order", "Order of A modulo N");
    order->add_option("--base", base)->required();
    order->add_option("--modulus", modulus)->required();
    order->add_option("--width", width, "Index register width for the extraction probability");
    order->add_option("--output", output);

    auto* selftest = app.add_subcommand("selftest", "Run the acceptance criteria");
    selftest->add_option("--seed", seed);
    selftest->add_option("--perturb", perturbation, "Test hook: perturb amplitudes after every stage");
    selftest->add_option("--width", requested_width, "Test hook: request an index register of this width");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (evolve->parsed()) {
        CString rendered, json;
        if (auto st = cabt_evolve(rule, initial.c_str(), steps, &rendered.ptr, &json.ptr); st != CABT_OK) {
            return report_error(st);
        }
        std::cout << rendered.str();
        return emit(json.str(), output);
    }

    if (preimage->parsed()) {
        if (int code = check_width(width, target)) return code;
        CString json;
        if (auto st = cabt_preimages_json(rule, target.c_str(), steps, CABT_DEFAULT_ENUMERATION_CAP, &json.ptr);
            st != CABT_OK) {
            return report_error(st);
        }
        return emit(json.str(), output);
    }

    if (backtrack->parsed()) {
        if (int code = check_width(width, target)) return code;
        const cabt_mode mode = mode_name == "full_paper" ? CABT_MODE_FULL_PAPER : CABT_MODE_MARK_POSTSELECT;
        cabt_instance* raw_instance = nullptr;
        if (auto st = cabt_instance_create(rule, target.c_str(), steps, base, modulus, &raw_instance); st != CABT_OK) {
            return report_error(st);
        }
        std::unique_ptr<cabt_instance, InstanceDeleter> instance(raw_instance);
        cabt_result* raw_result = nullptr;
        if (auto st = cabt_run(instance.get(), mode, shots, seed, qubit_cap, &raw_result); st != CABT_OK) {
            return report_error(st);
        }
        std::unique_ptr<cabt_result, ResultDeleter> result(raw_result);
        CString json;
        if (auto st = cabt_result_json(result.get(), &json.ptr); st != CABT_OK) return report_error(st);
        if (int code = emit(json.str(), output)) return code;
        if (cabt_result_nothing_measured(result.get())) {
            std::cerr << "note: nothing in measurement (no configuration evolves to the target)\n";
        }
        return cabt_result_verified(result.get()) ? kExitOk : kExitVerification;
    }

    if (order->parsed()) {
        CString json;
        if (auto st = cabt_order_json(base, modulus, width.value_or(0), &json.ptr); st != CABT_OK) {
            return report_error(st);
        }
        return emit(json.str(), output);
    }

    cabt_selftest_options options;
    cabt_selftest_default_options(&options);
    if (selftest->count("--seed")) options.seed = seed;
    options.perturbation = perturbation;
    options.requested_width = requested_width;
    CString report;
    int failures = 0;
    if (auto st = cabt_selftest(&options, &report.ptr, &failures); st != CABT_OK) return report_error(st);
    std::cout << report.str();
    std::cout << (failures == 0 ? "all criteria passed\n" : std::to_string(failures) + " criteria failed\n");
    return failures == 0 ? kExitOk : kExitVerification;
}
