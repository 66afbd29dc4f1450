#include "cabt/backtrack.hpp"
#include "cabt/errors.hpp"
#include "cabt/numtheory.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace cabt;
using namespace cabt::backtrack;

namespace {

ProblemInstance figure_instance() {
    return make_instance(254, "01111111110", 4);
}

std::vector<std::uint64_t> marked_by(const ProblemInstance& instance) {
    const auto f = build_oracle(instance);
    std::vector<std::uint64_t> out;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << instance.width()); ++k) {
        if (f(k)) out.push_back(k);
    }
    return out;
}

std::vector<std::string> strings(const std::vector<eca::Configuration>& configs) {
    std::vector<std::string> out;
    for (const auto& c : configs) out.push_back(c.to_string());
    return out;
}

} // namespace

TEST(BuildOracle, Examples) {
    EXPECT_EQ(marked_by(figure_instance()), std::vector<std::uint64_t>{32});
    EXPECT_EQ(marked_by(make_instance(254, "000", 1)), std::vector<std::uint64_t>{0});
    EXPECT_TRUE(marked_by(make_instance(254, "00010000", 1)).empty());
}

TEST(BuildOracle, EqualsReferenceEnumeration) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 80; ++trial) {
        const int rule = static_cast<int>(rng() % 256);
        const int width = 1 + static_cast<int>(rng() % 12);
        const int steps = 1 + static_cast<int>(rng() % 4);
        std::uint64_t target = rng() % (std::uint64_t{1} << width);
        if (trial % 2) target = oracle::evolve(target, width, rule, steps);
        const auto instance = make_instance(rule, eca::decode(target, width).to_string(), steps);
        EXPECT_EQ(marked_by(instance), oracle::preimages(target, width, rule, steps));
    }
}

TEST(MarkStage, UniformMagnitudesAndSingleFlag) {
    const auto state = run_mark_stage(figure_instance());
    const auto& layout = state.layout();
    EXPECT_EQ(layout.total(), 12);
    int flagged = 0;
    for (std::uint64_t b = 0; b < layout.dimension(); ++b) {
        if (std::abs(state[b]) == 0.0) continue;
        EXPECT_NEAR(std::abs(state[b]), 1.0 / std::sqrt(2048.0), 1e-15);
        if (layout.flag_of(b)) {
            ++flagged;
            EXPECT_EQ(layout.index_of(b), 32u);
        }
    }
    EXPECT_EQ(flagged, 1);
}

TEST(MarkStage, GardenOfEdenLeavesFlagClear) {
    const auto state = run_mark_stage(make_instance(254, "00010000", 1));
    const auto flag = statevec::marginal(state, statevec::Register::Flag);
    EXPECT_NEAR(flag[0], 1.0, 1e-12);
    EXPECT_EQ(flag[1], 0.0);
}

TEST(MarkStage, CarriesModexpRegisterWhenConfigured) {
    const auto state = run_mark_stage(make_instance(254, "01111110", 2, 7, 15));
    EXPECT_EQ(state.layout().modexp_width(), 4);
    EXPECT_NEAR(statevec::marginal(state, statevec::Register::Modexp)[1], 1.0, 1e-12);
}

TEST(MarkPostselect, RecoversUniquePreimage) {
    const auto result = run_pipeline(figure_instance(), Mode::MarkPostselect, 256, 3);
    EXPECT_EQ(result.outcome, Outcome::Ok);
    EXPECT_EQ(strings(result.recovered_preimages), std::vector<std::string>{"00000100000"});
    EXPECT_NEAR(result.acceptance_probability, 1.0 / 2048.0, 1e-12);
    EXPECT_NEAR(result.index_marginal[32], 1.0, 1e-9);
    EXPECT_EQ(result.shots_histogram.size(), 1u);
    EXPECT_EQ(result.shots_histogram.at(32), 256u);
    EXPECT_EQ(result.qubits, 12);
}

TEST(MarkPostselect, UniformOverSeveralPreimages) {
    const auto result = run_pipeline(make_instance(254, "111", 1), Mode::MarkPostselect, 100, 0);
    EXPECT_EQ(strings(result.recovered_preimages), (std::vector<std::string>{"010", "011", "101", "110", "111"}));
    EXPECT_NEAR(result.acceptance_probability, 5.0 / 8.0, 1e-12);
    for (auto k : result.marked_indices) EXPECT_NEAR(result.index_marginal[k], 0.2, 1e-12);
}

TEST(MarkPostselect, GardenOfEdenIsNothingInMeasurement) {
    const auto instance = make_instance(254, "00010000", 1);
    const auto result = run_pipeline(instance, Mode::MarkPostselect, 10, 0);
    EXPECT_EQ(result.outcome, Outcome::NothingInMeasurement);
    EXPECT_TRUE(result.recovered_preimages.empty());
    EXPECT_EQ(result.acceptance_probability, 0.0);
    const auto report = verify_result(instance, result);
    EXPECT_TRUE(report.passed);
    EXPECT_TRUE(report.empty);
}

TEST(FullPaper, GardenOfEdenMarginalHasFourPeaks) {
    const auto result = run_pipeline(make_instance(254, "00010000", 1, 7, 15), Mode::FullPaper, 2000, 1);
    ASSERT_EQ(result.index_marginal.size(), 256u);
    for (std::uint64_t i = 0; i < 256; ++i) {
        EXPECT_NEAR(result.index_marginal[i], i % 64 == 0 ? 0.25 : 0.0, 1e-12) << i;
    }
    EXPECT_EQ(result.qubits, 13);
    EXPECT_EQ(result.true_order, 4);
    EXPECT_NEAR(result.order_success_probability, 0.5, 1e-12);
    EXPECT_EQ(result.extracted_order, 4);
    for (const auto& [i, count] : result.shots_histogram) EXPECT_EQ(i % 64, 0u);
    EXPECT_EQ(result.extracted_orders.size(), 1u);
    EXPECT_GT(result.extraction_failures, 0u);
    EXPECT_TRUE(result.flagged_samples.empty());
    EXPECT_NEAR(result.final_norm, 1.0, 1e-9);
}

TEST(FullPaper, MarkedOracleMatchesTermByTermAmplitudes) {
    // A marked preimage splits its residue class across the flag, so the index
    // marginal picks up small off-peak terms. Reference values come from the
    // brute-force amplitude sum in oracles.hpp.
    const auto instance = make_instance(254, "01111110", 2, 7, 15);
    const auto result = run_pipeline(instance, Mode::FullPaper, 64, 0);
    std::vector<int> marks(256, 0);
    for (auto k : marked_by(instance)) marks[k] = 1;
    ASSERT_EQ(marked_by(instance), std::vector<std::uint64_t>{24});

    std::vector<double> expected(256, 0.0);
    double flagged_preimage = 0.0;
    for (const auto& [key, amp] : oracle::full_pipeline_amplitudes(marks, 8, 7, 15)) {
        const auto [i, y, m] = key;
        expected[i] += std::norm(amp);
        if (y == 1 && i == 24) flagged_preimage += std::norm(amp);
    }
    for (std::uint64_t i = 0; i < 256; ++i) EXPECT_NEAR(result.index_marginal[i], expected[i], 1e-12) << i;
    EXPECT_NEAR(result.index_marginal[1], 0x1p-15, 1e-15);
    EXPECT_NEAR(result.index_marginal[0], 0.248077392578125, 1e-12);
    EXPECT_NEAR(result.flagged_preimage_probability, flagged_preimage, 1e-15);
    EXPECT_NEAR(result.flagged_preimage_probability, 0x1p-16, 1e-15);
    EXPECT_NEAR(result.acceptance_probability, 1.0 / 256.0, 1e-12);
}

TEST(FullPaper, ClassConstantOraclesMatchClosedForm) {
    // Rule 0 sends everything to all-white: a nonzero target has no preimage
    // (F = 0) and the all-white target is reached from everywhere (F = 1).
    for (auto [a, big_n] : {std::pair<std::int64_t, std::int64_t>{7, 15}, {2, 9}, {3, 7}, {5, 21}, {2, 11}}) {
        const int n = numtheory::ceil_log2(static_cast<std::uint64_t>(big_n * big_n));
        const auto r = static_cast<std::uint64_t>(numtheory::order_brute_force(a, big_n).order);
        const std::string ones(static_cast<std::size_t>(n), '1');
        const std::string zeros(static_cast<std::size_t>(n), '0');
        for (const auto& target : {ones, zeros}) {
            const auto result = run_pipeline(make_instance(0, target, 1, a, big_n), Mode::FullPaper, 8, 0);
            for (std::uint64_t i = 0; i < result.index_marginal.size(); ++i) {
                ASSERT_NEAR(result.index_marginal[i], analytic_index_probability(i, r, n), 1e-9)
                    << "A=" << a << " N=" << big_n << " i=" << i;
            }
        }
    }
}

TEST(FullPaper, SampledPeakYieldsOrderFour) {
    EXPECT_EQ(numtheory::extract_order(64, 8, 7, 15), 4);
}

TEST(Analytic, AmplitudeExamples) {
    for (std::uint64_t k = 0; k < 3; ++k) {
        const auto amp = analytic_amplitude(0, k, 3, 3);
        EXPECT_NEAR(amp.real(), static_cast<double>(numtheory::class_sizes(3, 3)[k]) / 8.0, 1e-15);
        EXPECT_NEAR(amp.imag(), 0.0, 1e-15);
    }
    EXPECT_NEAR(std::abs(analytic_amplitude(64, 0, 4, 8)), 0.25, 1e-15);
    EXPECT_NEAR(std::abs(analytic_amplitude(1, 0, 4, 8)), 0.0, 1e-15);
    EXPECT_THROW(analytic_amplitude(0, 4, 4, 8), DomainError);
}

TEST(Analytic, ProbabilityExamples) {
    EXPECT_DOUBLE_EQ(analytic_index_probability(0, 1, 6), 1.0);
    EXPECT_NEAR(analytic_index_probability(64, 4, 8), 0.25, 1e-15);
    EXPECT_NEAR(analytic_index_probability(0, 3, 3), 22.0 / 64.0, 1e-15);
    // sine-ratio branch, reference values from an independent numpy evaluation
    EXPECT_NEAR(analytic_index_probability(1, 3, 3), 0.014514565439601945, 1e-12);
    EXPECT_NEAR(analytic_index_probability(5, 3, 4), 0.22951251819299, 1e-12);
    EXPECT_NEAR(analytic_index_probability(3, 5, 6), 0.00021370972182574113, 1e-12);
    EXPECT_THROW(analytic_index_probability(8, 3, 3), DomainError);
}

TEST(Analytic, ClosedFormEqualsAmplitudeSum) {
    for (int n = 1; n <= 8; ++n) {
        const std::uint64_t dim = std::uint64_t{1} << n;
        for (std::uint64_t r = 1; r <= std::min<std::uint64_t>(dim, 16); ++r) {
            double total = 0.0;
            for (std::uint64_t i = 0; i < dim; ++i) {
                double direct = 0.0;
                for (std::uint64_t k = 0; k < r; ++k) direct += std::norm(analytic_amplitude(i, k, r, n));
                const double closed = analytic_index_probability(i, r, n);
                ASSERT_NEAR(direct, closed, 1e-9) << "n=" << n << " r=" << r << " i=" << i;
                total += closed;
            }
            ASSERT_NEAR(total, 1.0, 1e-9);
        }
    }
}

TEST(Verify, AcceptsCorrectAndFlagsInjectedNonPreimage) {
    const auto instance = figure_instance();
    auto result = run_pipeline(instance, Mode::MarkPostselect, 16, 0);
    const auto good = verify_result(instance, result);
    EXPECT_TRUE(good.passed);
    EXPECT_TRUE(good.marked_cross_checked);
    EXPECT_FALSE(good.empty);

    result.recovered_preimages.push_back(eca::decode(33, 11));
    const auto bad = verify_result(instance, result);
    EXPECT_FALSE(bad.passed);
    ASSERT_FALSE(bad.failures.empty());
    EXPECT_NE(bad.failures.front().find("00000100001"), std::string::npos);
}

TEST(Verify, FlagsTamperedMarkedSet) {
    const auto instance = figure_instance();
    auto result = run_pipeline(instance, Mode::MarkPostselect, 16, 0);
    result.marked_indices.push_back(7);
    EXPECT_FALSE(verify_result(instance, result).passed);
}

TEST(QubitBudget, Examples) {
    const auto full = make_instance(254, "00010000", 1, 7, 15);
    EXPECT_EQ(qubit_budget(full), 13);
    EXPECT_EQ(paper_qubit_envelope(full), 8 + 8 + 1 + 4);
    EXPECT_EQ(qubit_budget(figure_instance()), 12);
    EXPECT_THROW(qubit_budget(make_instance(254, "11", 1, 3, 2)), PreconditionError);
    EXPECT_THROW(qubit_budget(make_instance(254, "11", 1, 2, 2)), PreconditionError);
}

TEST(Validate, FullModeRequirements) {
    EXPECT_THROW(validate(figure_instance(), Mode::FullPaper), PreconditionError);
    EXPECT_THROW(validate(make_instance(254, "00010000", 1, 6, 15), Mode::FullPaper), PreconditionError);
    EXPECT_THROW(validate(make_instance(254, "00010000", 1, 16, 15), Mode::FullPaper), PreconditionError);
    try {
        validate(make_instance(254, "0001000", 1, 7, 15), Mode::FullPaper);
        FAIL() << "expected PreconditionError";
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("ceil(log2(N^2)) = 8 != n = 7"), std::string::npos);
    }
    EXPECT_NO_THROW(validate(make_instance(254, "00010000", 1, 7, 15), Mode::FullPaper));
    EXPECT_NO_THROW(validate(make_instance(254, "0001000", 1, 7, 15), Mode::MarkPostselect));
}

TEST(Pipeline, DeterministicForFixedSeed) {
    const auto instance = make_instance(254, "01111110", 2, 7, 15);
    const auto a = run_pipeline(instance, Mode::FullPaper, 500, 9);
    const auto b = run_pipeline(instance, Mode::FullPaper, 500, 9);
    EXPECT_EQ(a.shots_histogram, b.shots_histogram);
    EXPECT_EQ(a.extracted_orders, b.extracted_orders);
    EXPECT_EQ(a.index_marginal, b.index_marginal);
}

TEST(Pipeline, ObserverSeesEveryStage) {
    std::vector<std::string> stages;
    PipelineOptions options;
    options.observer = [&](std::string_view stage, statevec::StateVector& state) {
        stages.emplace_back(stage);
        EXPECT_NEAR(state.norm_squared(), 1.0, 1e-10);
    };
    run_pipeline(make_instance(254, "01111110", 2, 7, 15), Mode::FullPaper, 4, 0, options);
    EXPECT_EQ(stages, (std::vector<std::string>{"initial", "hadamard", "oracle", "modexp", "iqft"}));
    stages.clear();
    run_pipeline(figure_instance(), Mode::MarkPostselect, 4, 0, options);
    EXPECT_EQ(stages, (std::vector<std::string>{"initial", "hadamard", "oracle", "postselect"}));
}

TEST(Pipeline, RespectsQubitCap) {
    PipelineOptions options;
    options.qubit_cap = 10;
    EXPECT_THROW(run_pipeline(figure_instance(), Mode::MarkPostselect, 1, 0, options), ResourceError);
}
