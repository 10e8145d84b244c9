#include "cli.hpp"

#include <radixsum/record.hpp>
#include <radixsum/verify.hpp>

#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace radixsum;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(CliDigits, WorkedExample) {
    const CliResult r = run({"digits", "--n", "1024", "--base", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "expansion: (1101221)_3"));
    EXPECT_TRUE(contains(r.out, "digit sum: 8"));
    EXPECT_TRUE(contains(r.out, "partition: (2,2,1,1,1,1,0)"));
    EXPECT_TRUE(contains(r.out, "conjugate: (6,2)"));
}

TEST(CliDigits, ZeroAndFive) {
    CliResult r = run({"digits", "--n", "0", "--base", "2"});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "expansion: ()_2"));
    EXPECT_TRUE(contains(r.out, "digit sum: 0"));
    EXPECT_TRUE(contains(r.out, "leading position m: undefined"));

    r = run({"digits", "--n", "5", "--base", "2", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["digits"]["expansion"], "(101)_2");
    EXPECT_EQ(j["digits"]["digit_sum"], "2");
    EXPECT_EQ(j["digits"]["valuation"], "0");
    EXPECT_EQ(j["digits"]["leading_pos"], "2");
}

TEST(CliDigits, BadBaseIsUsageError) {
    EXPECT_EQ(run({"digits", "--n", "5", "--base", "1"}).code, 2);
    EXPECT_EQ(run({"digits", "--n", "-5", "--base", "3"}).code, 2);
}

TEST(CliEval, FloorBoth) {
    const CliResult r = run({"eval", "--family", "floor", "--n", "1024", "--base", "3", "--j", "1", "--mode", "both"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "closed: 510"));
    EXPECT_TRUE(contains(r.out, "direct: 510"));
    EXPECT_TRUE(contains(r.out, "match: yes"));
}

TEST(CliEval, Sawtooth) {
    const CliResult r = run({"eval", "--family", "sawtooth", "--n", "5", "--base", "2", "--j", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "closed: -1/8"));
}

TEST(CliEval, CeilDecimalWithEdgeNote) {
    const CliResult r = run({"eval", "--family", "ceil", "--x", "7.5", "--base", "2", "--j", "1", "--mode", "both"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "closed: 10"));
    EXPECT_TRUE(contains(r.out, "direct: 10"));
    EXPECT_TRUE(contains(r.out, "match: yes"));
    EXPECT_TRUE(contains(r.out, "leading-digit expression gives 11"));
}

TEST(CliEval, CeilDoubleEdgeNote) {
    const CliResult r = run({"eval", "--family", "ceil-double", "--x", "15/2", "--base", "2", "--mode", "both"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "closed: 10"));
    EXPECT_TRUE(contains(r.out, "(b-1)(m+1)+n-1 gives 11"));
}

TEST(CliEval, FracAtZeroIsEmptySum) {
    const CliResult r = run({"eval", "--family", "frac", "--n", "0", "--base", "3", "--j", "1", "--mode", "both"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "closed: 0"));
    EXPECT_TRUE(contains(r.out, "note: n = 0"));
}

TEST(CliEval, DomainViolationsExitTwo) {
    EXPECT_EQ(run({"eval", "--family", "ceil", "--x", "1/2", "--base", "2", "--j", "1"}).code, 2);
    EXPECT_EQ(run({"eval", "--family", "floor", "--n", "5", "--base", "3", "--j", "3"}).code, 2);
    EXPECT_EQ(run({"eval", "--family", "frac", "--n", "5", "--base", "3", "--j", "0"}).code, 2);
    EXPECT_EQ(run({"eval", "--family", "floor", "--n", "5", "--base", "3"}).code, 2);
    EXPECT_EQ(run({"eval", "--family", "floor", "--x", "5/2", "--base", "3", "--j", "1"}).code, 2);
    EXPECT_EQ(run({"eval", "--family", "ceil", "--x", "0.333...", "--base", "3", "--j", "1"}).code, 2);
    EXPECT_EQ(run({"eval", "--family", "nope", "--n", "5", "--base", "3", "--j", "1"}).code, 2);
    EXPECT_EQ(run({"eval", "--family", "floor", "--n", "5", "--base", "3", "--j", "1", "--mode", "x"}).code, 2);
    EXPECT_EQ(run({"eval", "--bogus"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
}

TEST(CliEval, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(CliEval, JsonOutputRoundTrips) {
    const CliResult r = run({"eval", "--family", "sawtooth", "--n", "1024", "--base", "3", "--j", "2", "--mode", "both",
                       "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    const OutputRecord rec = j.get<OutputRecord>();
    EXPECT_EQ(rec.closed_value, Rational(Integer(-1241), Integer(2187)));
    EXPECT_EQ(rec.match, std::optional<bool>(true));
    EXPECT_EQ(nlohmann::json(rec), j);
}

TEST(CliVerify, SmallSweeps) {
    CliResult r = run({"verify", "--n", "0..0", "--bases", "2"});
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_TRUE(contains(r.out, "0 mismatches"));

    r = run({"verify", "--n", "0..64", "--bases", "2,3,10", "--x-den", "4", "--seed", "42", "--count", "5"});
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_TRUE(contains(r.out, "total: "));
    EXPECT_TRUE(contains(r.out, " 0 mismatches"));
}

TEST(CliVerify, SeedDeterminesOutput) {
    const CliResult a = run({"verify", "--n", "1..2", "--seed", "42", "--count", "10", "--bases", "3", "--format", "json"});
    const CliResult b = run({"verify", "--n", "1..2", "--seed", "42", "--count", "10", "--bases", "3", "--format", "json"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto j = nlohmann::json::parse(a.out);
    EXPECT_EQ(j["mismatches"], 0);
    EXPECT_TRUE(j["first_mismatch"].is_null());
}

TEST(CliVerify, BadArgumentsExitTwo) {
    EXPECT_EQ(run({"verify", "--n", "5..2"}).code, 2);
    EXPECT_EQ(run({"verify", "--bases", "1,2"}).code, 2);
    EXPECT_EQ(run({"verify", "--x-den", "0"}).code, 2);
    EXPECT_EQ(run({"verify", "--format", "xml"}).code, 2);
}

TEST(CliTable, FracCsv) {
    const CliResult r = run({"table", "--family", "frac", "--base", "3", "--n", "1..27", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(count_lines(r.out), 28u);  // header + 27 rows
    EXPECT_TRUE(contains(r.out, "family,scope,base,j,input,closed,direct,match\n"));
    // frac sums for n = 1..4, j = 1 (Python Fraction brute force): 2/3, 0, 1, 13/9
    EXPECT_TRUE(contains(r.out, "frac,single,3,1,1,2/3,,\n"));
    EXPECT_TRUE(contains(r.out, "frac,single,3,1,2,0,,\n"));
    EXPECT_TRUE(contains(r.out, "frac,single,3,1,4,13/9,,\n"));
}

TEST(CliTable, BinaryFloorColumnEqualsN) {
    const CliResult r = run({"table", "--family", "floor", "--base", "2", "--n", "1..16", "--j", "1", "--format", "md"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(count_lines(r.out), 18u);
    for (int n = 1; n <= 16; ++n) {
        const std::string cell = "| floor | single | 2 | 1 | " + std::to_string(n) + " | " + std::to_string(n) + " |";
        EXPECT_TRUE(contains(r.out, cell)) << cell;
    }
}

TEST(CliTable, SawtoothDoubleJson) {
    const CliResult r = run({"table", "--family", "sawtooth-double", "--base", "2", "--n", "1..8", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = nlohmann::json::parse(r.out);
    ASSERT_EQ(rows.size(), 8u);
    for (unsigned long n = 1; n <= 8; ++n) {
        const Natural m = leading_pos(Natural(n), Natural(2));
        const Rational expected = Rational(1, 2) - Rational(Integer(n), Integer(pow(Natural(2), m + Natural(1))));
        EXPECT_EQ(rows[n - 1]["closed_value"], expected.to_string());
    }
}

TEST(CliTable, CeilGridAndBadFormat) {
    CliResult r = run({"table", "--family", "ceil", "--base", "2", "--n", "1..8", "--x-den", "2", "--mode", "both", "--format",
                 "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(count_lines(r.out), 16u);
    EXPECT_TRUE(contains(r.out, "ceil,single,2,1,15/2,10,10,true\n"));
    EXPECT_EQ(run({"table", "--family", "floor", "--base", "2", "--format", "yaml"}).code, 2);
}

// parse(emit(r)) == r over randomly populated records.
TEST(OutputRecordJson, RoundTripProperty) {
    std::mt19937_64 rng(99);
    auto maybe = [&] { return rng() % 2 == 0; };
    auto nat = [&] { return Natural::from_words(std::array<std::uint64_t, 2>{rng(), rng() % 3}); };
    for (int i = 0; i < 300; ++i) {
        OutputRecord r;
        r.command = maybe() ? "eval" : "table";
        if (maybe()) r.family = static_cast<Family>(rng() % 4);
        if (maybe()) r.scope = maybe() ? Scope::single : Scope::all_j;
        if (maybe()) r.n = nat();
        if (maybe()) r.x = Rational(Integer(static_cast<long>(rng() % 20001) - 10000), Integer(static_cast<long>(rng() % 97 + 1)));
        r.base = Natural(rng() % 30 + 2);
        if (maybe()) r.j = Natural(rng() % 5);
        if (maybe()) r.closed_value = Rational(Integer(nat()), Integer(nat() + Natural(1)));
        if (maybe()) r.direct_value = -Rational(Integer(nat()), Integer(nat() + Natural(1)));
        if (maybe()) r.match = maybe();
        if (maybe()) r.digits = digit_info(nat(), r.base);
        if (maybe()) r.notes = {"a note", "another \"quoted\" note"};
        const std::string text = nlohmann::json(r).dump();
        ASSERT_EQ(nlohmann::json::parse(text).get<OutputRecord>(), r) << text;
    }
}

TEST(OutputRecordJson, SchemaKeysAlwaysPresent) {
    OutputRecord r;
    r.command = "digits";
    const auto j = nlohmann::json(r);
    for (const char* key : {"command", "inputs", "closed_value", "direct_value", "match", "digits", "notes"})
        EXPECT_TRUE(j.contains(key)) << key;
    for (const char* key : {"family", "scope", "n", "x", "base", "j"}) EXPECT_TRUE(j["inputs"].contains(key)) << key;
}
