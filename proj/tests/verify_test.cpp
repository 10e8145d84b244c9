#include <radixsum/verify.hpp>

#include <gtest/gtest.h>

using namespace radixsum;

namespace {

SweepConfig small_config(unsigned threads) {
    SweepConfig cfg;
    cfg.n_first = Natural(0);
    cfg.n_last = Natural(80);
    cfg.bases = {Natural(2), Natural(3), Natural(5), Natural(16)};
    cfg.x_den = Natural(3);
    cfg.seed = 42;
    cfg.random_count = 4;
    cfg.threads = threads;
    return cfg;
}

}  // namespace

TEST(Check, ReportsMatchAndValues) {
    const OracleReport r = check({Family::floor, Scope::single, Rational(1024), Natural(3), Natural(1)});
    EXPECT_TRUE(r.match);
    EXPECT_EQ(r.closed_value, std::optional<Rational>(Rational(510)));
    EXPECT_EQ(r.direct_value, std::optional<Rational>(Rational(510)));
    EXPECT_TRUE(r.error.empty());
}

TEST(Check, DomainErrorIsNotAMatch) {
    const OracleReport r = check({Family::frac, Scope::single, Rational(0), Natural(3), Natural(1)});
    EXPECT_FALSE(r.match);
    EXPECT_FALSE(r.error.empty());
}

TEST(Sweep, CleanAndCoversEveryCategory) {
    const SweepSummary s = run_sweep(small_config(1));
    EXPECT_EQ(s.total_mismatches(), 0u) << s.first_mismatch.value_or("");
    for (const auto& t : s.tallies) EXPECT_GT(t.checks, 0u) << t.name;
}

TEST(Sweep, ThreadCountDoesNotChangeTheResult) {
    const SweepSummary one = run_sweep(small_config(1));
    const SweepSummary four = run_sweep(small_config(4));
    for (std::size_t i = 0; i < kCategoryCount; ++i) {
        EXPECT_EQ(one.tallies[i].checks, four.tallies[i].checks);
        EXPECT_EQ(one.tallies[i].mismatches, four.tallies[i].mismatches);
    }
}

TEST(Sweep, EdgeFamilyIsIncludedByDefault) {
    SweepConfig cfg;
    cfg.n_first = Natural(0);
    cfg.n_last = Natural(0);
    cfg.bases = {Natural(2)};
    const SweepSummary s = run_sweep(cfg);
    EXPECT_EQ(s.tallies[static_cast<std::size_t>(Category::ceil_edge)].checks, 8u);  // 4 points, ceil + offset check
    EXPECT_EQ(s.total_mismatches(), 0u);
}
