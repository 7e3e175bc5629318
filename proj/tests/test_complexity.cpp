#include "mpfa/complexity.hpp"
#include "mpfa/errors.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

using namespace mpfa;

TEST(CountKernel, GroundTable) {
    struct Row {
        std::size_t n;
        KernelKind kind;
        ScaleMode mode;
        OpCount want;
    };
    const Row rows[] = {
        {3, KernelKind::Approx, ScaleMode::None, {0, 12, 2}},
        {3, KernelKind::Approx, ScaleMode::Exact, {4, 12, 2}},
        {3, KernelKind::Approx, ScaleMode::Csd, {0, 20, 10}},
        {3, KernelKind::Definition, ScaleMode::None, {12, 24, 0}},
        {11, KernelKind::Approx, ScaleMode::None, {0, 130, 40}},
        {11, KernelKind::Approx, ScaleMode::Exact, {20, 130, 40}},
        {11, KernelKind::Approx, ScaleMode::Csd, {0, 170, 80}},
        {11, KernelKind::Definition, ScaleMode::None, {300, 520, 0}},
        {31, KernelKind::Approx, ScaleMode::None, {0, 900, 300}},
        {31, KernelKind::Approx, ScaleMode::Exact, {60, 900, 300}},
        {31, KernelKind::Approx, ScaleMode::Csd, {0, 1020, 420}},
        {31, KernelKind::Definition, ScaleMode::None, {2700, 4560, 0}},
    };
    for (const Row& r : rows) {
        EXPECT_EQ(count_kernel(r.n, r.kind, r.mode), r.want) << r.n;
        EXPECT_EQ(instrumented_kernel_count(r.n, r.kind, r.mode), r.want) << r.n;
    }
    EXPECT_THROW(count_kernel(5, KernelKind::Approx), DomainError);
}

TEST(CountPlan, CallMultiplicities) {
    const auto calls = leaf_calls(plan(1023, "csd"));
    EXPECT_EQ(calls.at(31), 33u);
    EXPECT_EQ(calls.at(11), 93u);
    EXPECT_EQ(calls.at(3), 341u);
}

TEST(CountPlan, CompositionFormula) {
    const ExecutionPlan p = plan(1023, "scaled");
    const OpCount by_formula = p.scale().cost() + 33 * count_kernel(31, KernelKind::Approx) +
                               93 * count_kernel(11, KernelKind::Approx) +
                               341 * count_kernel(3, KernelKind::Approx);
    EXPECT_EQ(count_plan(p), by_formula);
    EXPECT_EQ(p.scale().cost(), (OpCount{2044, 0, 0}));
    EXPECT_EQ(plan(1023, "csd").scale().cost(), (OpCount{0, 4088, 4088}));
}

TEST(CountPlan, AllProposedRows) {
    const std::pair<const char*, OpCount> rows[] = {
        {"direct", {121092, 207024, 0}},
        {"exact", {39682, 50772, 682}},
        {"unscaled", {0, 45882, 14302}},
        {"scaled", {2044, 45882, 14302}},
        {"csd", {0, 49970, 18390}},
        {"hybrid-I", {40364, 50772, 682}},
        {"hybrid-I-csd", {39000, 53500, 3410}},
        {"hybrid-II", {32242, 49842, 4402}},
        {"hybrid-II-csd", {30382, 53562, 8122}},
        {"hybrid-III", {31684, 49842, 4402}},
        {"hybrid-III-csd", {29700, 53810, 8370}},
        {"hybrid-IV", {11962, 46812, 10582}},
        {"hybrid-IV-csd", {9982, 50772, 14542}},
        {"hybrid-V", {11324, 46812, 10582}},
        {"hybrid-V-csd", {9300, 50860, 14630}},
        {"hybrid-VI", {2722, 45882, 14302}},
        {"hybrid-VI-csd", {682, 49962, 18382}},
    };
    for (const auto& [v, want] : rows) {
        const ExecutionPlan p = plan(1023, v);
        EXPECT_EQ(count_plan(p), want) << v;
        EXPECT_EQ(instrumented_count(p), want) << v;
    }
}

TEST(CountPlan, TrivialLength) {
    EXPECT_EQ(count_plan(plan(1, "exact")), OpCount{});
}

TEST(CountingScope, Nests) {
    CountingScope outer;
    {
        CountingScope inner;
        arith::add(Counted{1.0}, Counted{2.0});
        EXPECT_EQ(inner.count(), (OpCount{0, 1, 0}));
    }
    arith::mul(Counted{1.0}, 3.0);
    EXPECT_EQ(outer.count(), (OpCount{1, 0, 0}));
}

TEST(Report, Formats) {
    const auto rows = complexity_report();
    const std::string csv = render(rows, ReportFormat::Csv);
    EXPECT_NE(csv.find("1023,F'_1023,0,49970,18390,0"), std::string::npos);
    EXPECT_NE(csv.find("F_1024 (Cooley-Tukey),10248,30728,0,1"), std::string::npos);
    const auto j = nlohmann::json::parse(render(rows, ReportFormat::Json));
    EXPECT_EQ(j.size(), rows.size());
    EXPECT_NE(render(rows, ReportFormat::Text).find("T^*_1023"), std::string::npos);
    EXPECT_THROW(report_format_from_string("xml"), DomainError);
    for (const auto& r : rows)
        EXPECT_EQ(r.external, r.group == "reference");
}
