#include "cabt/errors.hpp"
#include "cabt/report.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

using namespace cabt;
using nlohmann::json;

TEST(RoundSignificant, TwelveDigits) {
    EXPECT_EQ(report::round_significant(1.0 / 3.0), 0.333333333333);
    EXPECT_EQ(report::round_significant(0.25), 0.25);
    EXPECT_EQ(report::round_significant(0.0), 0.0);
    EXPECT_EQ(report::round_significant(1.0 / 2048.0), 0.00048828125);
}

TEST(Evolution, RendersFigureRows) {
    const auto r = report::evolution(254, "00000100000", 4);
    ASSERT_EQ(r.rows.size(), 5u);
    EXPECT_EQ(r.rows.back().to_string(), "01111111110");
    EXPECT_EQ(r.rendered,
              ".....#.....\n"
              "....###....\n"
              "...#####...\n"
              "..#######..\n"
              ".#########.\n");
    const auto doc = json::parse(r.json);
    EXPECT_EQ(doc["rows"].size(), 5u);
    EXPECT_EQ(doc["rows"][4], "01111111110");
}

TEST(Evolution, ZeroStepsAndZeroRule) {
    EXPECT_EQ(report::evolution(254, "0101", 0).rows.size(), 1u);
    EXPECT_EQ(report::evolution(0, "111", 1).rows.back().to_string(), "000");
    EXPECT_THROW(report::evolution(254, "01a", 1), ParseError);
}

TEST(PreimagesJson, ListsAndCounts) {
    const auto doc = json::parse(report::preimages_json(254, "111", 1));
    EXPECT_EQ(doc["count"], 5);
    EXPECT_EQ(doc["preimages"][0], "010");
    EXPECT_TRUE(doc.contains("wall_time_seconds"));
    EXPECT_EQ(json::parse(report::preimages_json(254, "00010000", 1))["preimages"].size(), 0u);
    EXPECT_THROW(report::preimages_json(254, std::string(25, '0'), 1), ResourceError);
}

TEST(BacktrackJson, MarkPostselectSchema) {
    const auto r = report::backtrack(backtrack::make_instance(254, "01111111110", 4), backtrack::Mode::MarkPostselect,
                                     1024, 0);
    EXPECT_TRUE(r.verified);
    const auto doc = json::parse(r.json);
    for (const char* key : {"instance", "mode", "marked", "acceptance_probability", "index_marginal", "histogram",
                            "extracted_orders", "preimages", "verified", "qubits"}) {
        EXPECT_TRUE(doc.contains(key)) << key;
    }
    EXPECT_EQ(doc["preimages"], json::array({"00000100000"}));
    EXPECT_EQ(doc["qubits"], 12);
    EXPECT_EQ(doc["histogram"]["00000100000"], 1024);
    EXPECT_EQ(doc["acceptance_probability"], 0.00048828125);
}

TEST(BacktrackJson, FullPaperOrders) {
    const auto r = report::backtrack(backtrack::make_instance(254, "00010000", 1, 7, 15), backtrack::Mode::FullPaper,
                                     4096, 1);
    const auto doc = json::parse(r.json);
    const auto& marginal = doc["index_marginal"];
    for (std::size_t i = 0; i < 256; ++i) {
        EXPECT_EQ(marginal[i].get<double>() > 1e-9, i % 64 == 0) << i;
    }
    EXPECT_EQ(doc["order"], 4);
    EXPECT_EQ(doc["extracted_order"], 4);
    EXPECT_EQ(doc["order_success_probability"], 0.5);
    const auto hits = doc["histogram"]["01000000"].get<std::uint64_t>() + doc["histogram"]["11000000"].get<std::uint64_t>();
    EXPECT_EQ(doc["extracted_orders"]["4"].get<std::uint64_t>(), hits);
    EXPECT_EQ(doc["status"], "ok");
}

TEST(BacktrackJson, CanonicalAndDeterministic) {
    const auto instance = backtrack::make_instance(254, "01111110", 2, 7, 15);
    for (std::uint64_t seed : {0u, 1u, 12345u}) {
        const auto a = report::backtrack(instance, backtrack::Mode::FullPaper, 300, seed).json;
        EXPECT_EQ(a, report::backtrack(instance, backtrack::Mode::FullPaper, 300, seed).json);
        EXPECT_EQ(report::canonicalize(a), a);
    }
}

TEST(OrderJson, BruteForceAndExtraction) {
    EXPECT_EQ(json::parse(report::order_json(7, 15))["order"], 4);
    EXPECT_EQ(json::parse(report::order_json(2, 15))["order"], 4);
    const auto doc = json::parse(report::order_json(7, 15, 8));
    EXPECT_EQ(doc["extraction"]["success_probability"], 0.5);
    EXPECT_THROW(report::order_json(1, 9), PreconditionError);
    EXPECT_THROW(report::order_json(6, 15), PreconditionError);
    EXPECT_THROW(report::order_json(10, 9), PreconditionError);
}
