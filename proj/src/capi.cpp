#include "cabt/cabt.h"

#include "cabt/acceptance.hpp"
#include "cabt/backtrack.hpp"
#include "cabt/errors.hpp"
#include "cabt/report.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct cabt_instance {
    cabt::backtrack::ProblemInstance value;
};

struct cabt_result {
    cabt::backtrack::ProblemInstance instance;
    cabt::backtrack::PipelineResult result;
    cabt::backtrack::VerificationReport verification;
};

namespace {

thread_local std::string last_error;
thread_local std::size_t last_error_position = 0;

cabt_status fail(cabt_status status, std::string message, std::size_t position = 0) {
    last_error = std::move(message);
    last_error_position = position;
    return status;
}

cabt_status status_of(cabt::ErrorKind kind) {
    switch (kind) {
    case cabt::ErrorKind::Domain: return CABT_ERR_DOMAIN;
    case cabt::ErrorKind::Precondition: return CABT_ERR_PRECONDITION;
    case cabt::ErrorKind::Resource: return CABT_ERR_RESOURCE;
    case cabt::ErrorKind::Contract: return CABT_ERR_CONTRACT;
    case cabt::ErrorKind::EmptySubspace: return CABT_ERR_EMPTY_SUBSPACE;
    case cabt::ErrorKind::Parse: return CABT_ERR_PARSE;
    }
    return CABT_ERR_INTERNAL;
}

template <typename Body>
cabt_status guard(Body&& body) {
    last_error.clear();
    last_error_position = 0;
    try {
        body();
        return CABT_OK;
    } catch (const cabt::ParseError& e) {
        return fail(CABT_ERR_PARSE, e.what(), e.position());
    } catch (const cabt::Error& e) {
        return fail(status_of(e.kind()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(CABT_ERR_RESOURCE, "out of memory");
    } catch (const std::exception& e) {
        return fail(CABT_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(CABT_ERR_INTERNAL, "unknown exception");
    }
}

char* duplicate(const std::string& text) {
    auto* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

bool to_mode(cabt_mode mode, cabt::backtrack::Mode& out) {
    switch (mode) {
    case CABT_MODE_MARK_POSTSELECT: out = cabt::backtrack::Mode::MarkPostselect; return true;
    case CABT_MODE_FULL_PAPER: out = cabt::backtrack::Mode::FullPaper; return true;
    }
    return false;
}

} // namespace

extern "C" {

const char* cabt_version(void) {
    return "1.0.0";
}

const char* cabt_status_string(cabt_status status) {
    switch (status) {
    case CABT_OK: return "ok";
    case CABT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CABT_ERR_DOMAIN: return "domain error";
    case CABT_ERR_PRECONDITION: return "precondition failed";
    case CABT_ERR_RESOURCE: return "resource cap exceeded";
    case CABT_ERR_CONTRACT: return "contract violation";
    case CABT_ERR_EMPTY_SUBSPACE: return "nothing in measurement";
    case CABT_ERR_PARSE: return "parse error";
    case CABT_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* cabt_last_error(void) {
    return last_error.c_str();
}

size_t cabt_last_error_position(void) {
    return last_error_position;
}

void cabt_string_free(char* str) {
    std::free(str);
}

cabt_status cabt_evolve(int rule, const char* initial, int steps, char** rendered, char** json) {
    if (!initial || (!rendered && !json)) return fail(CABT_ERR_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        const auto report = cabt::report::evolution(rule, initial, steps);
        char* text = rendered ? duplicate(report.rendered) : nullptr;
        if (json) {
            try {
                *json = duplicate(report.json);
            } catch (...) {
                std::free(text);
                throw;
            }
        }
        if (rendered) *rendered = text;
    });
}

cabt_status cabt_preimages_json(int rule, const char* target, int steps, int max_width, char** json) {
    if (!target || !json) return fail(CABT_ERR_INVALID_ARGUMENT, "null argument");
    return guard([&] { *json = duplicate(cabt::report::preimages_json(rule, target, steps, max_width)); });
}

cabt_status cabt_order_json(int64_t base, int64_t modulus, int width, char** json) {
    if (!json) return fail(CABT_ERR_INVALID_ARGUMENT, "null argument");
    return guard([&] { *json = duplicate(cabt::report::order_json(base, modulus, width)); });
}

cabt_status cabt_instance_create(int rule, const char* target, int steps, int64_t base, int64_t modulus,
                                 cabt_instance** out) {
    if (!target || !out) return fail(CABT_ERR_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        *out = new cabt_instance{cabt::backtrack::make_instance(rule, target, steps, base, modulus)};
    });
}

void cabt_instance_destroy(cabt_instance* instance) {
    delete instance;
}

cabt_status cabt_instance_validate(const cabt_instance* instance, cabt_mode mode) {
    cabt::backtrack::Mode m;
    if (!instance) return fail(CABT_ERR_INVALID_ARGUMENT, "null instance");
    if (!to_mode(mode, m)) return fail(CABT_ERR_INVALID_ARGUMENT, "unknown mode");
    return guard([&] { cabt::backtrack::validate(instance->value, m); });
}

cabt_status cabt_instance_qubit_budget(const cabt_instance* instance, int* qubits) {
    if (!instance || !qubits) return fail(CABT_ERR_INVALID_ARGUMENT, "null argument");
    return guard([&] { *qubits = cabt::backtrack::qubit_budget(instance->value); });
}

cabt_status cabt_run(const cabt_instance* instance, cabt_mode mode, uint64_t shots, uint64_t seed, int qubit_cap,
                     cabt_result** out) {
    cabt::backtrack::Mode m;
    if (!instance || !out) return fail(CABT_ERR_INVALID_ARGUMENT, "null argument");
    if (!to_mode(mode, m)) return fail(CABT_ERR_INVALID_ARGUMENT, "unknown mode");
    return guard([&] {
        cabt::backtrack::PipelineOptions options;
        options.qubit_cap = qubit_cap;
        auto result = cabt::backtrack::run_pipeline(instance->value, m, shots, seed, options);
        auto verification = cabt::backtrack::verify_result(instance->value, result);
        *out = new cabt_result{instance->value, std::move(result), std::move(verification)};
    });
}

void cabt_result_destroy(cabt_result* result) {
    delete result;
}

int cabt_result_verified(const cabt_result* result) {
    return result && result->verification.passed ? 1 : 0;
}

int cabt_result_nothing_measured(const cabt_result* result) {
    return result && result->result.outcome == cabt::backtrack::Outcome::NothingInMeasurement ? 1 : 0;
}

double cabt_result_acceptance(const cabt_result* result) {
    return result ? result->result.acceptance_probability : 0.0;
}

size_t cabt_result_preimage_count(const cabt_result* result) {
    return result ? result->result.recovered_preimages.size() : 0;
}

cabt_status cabt_result_preimage(const cabt_result* result, size_t position, char** bitstring) {
    if (!result || !bitstring) return fail(CABT_ERR_INVALID_ARGUMENT, "null argument");
    if (position >= result->result.recovered_preimages.size()) {
        return fail(CABT_ERR_DOMAIN, "preimage position " + std::to_string(position) + " out of range");
    }
    return guard([&] { *bitstring = duplicate(result->result.recovered_preimages[position].to_string()); });
}

cabt_status cabt_result_json(const cabt_result* result, char** json) {
    if (!result || !json) return fail(CABT_ERR_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        *json = duplicate(cabt::report::pipeline_json(result->instance, result->result, result->verification));
    });
}

void cabt_selftest_default_options(cabt_selftest_options* options) {
    if (!options) return;
    const cabt::acceptance::Options defaults;
    options->seed = defaults.seed;
    options->perturbation = defaults.perturbation;
    options->requested_width = defaults.requested_width;
}

cabt_status cabt_selftest(const cabt_selftest_options* options, char** report, int* failures) {
    if (!report || !failures) return fail(CABT_ERR_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        cabt::acceptance::Options opts;
        if (options) {
            opts.seed = options->seed;
            opts.perturbation = options->perturbation;
            opts.requested_width = options->requested_width;
        }
        std::string text;
        int failed = 0;
        for (const auto& criterion : cabt::acceptance::run_all(opts)) {
            text += cabt::acceptance::format_line(criterion) + "\n";
            if (!criterion.passed) ++failed;
        }
        *report = duplicate(text);
        *failures = failed;
    });
}

} // extern "C"
