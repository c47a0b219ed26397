#include "foregone/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace foregone;
namespace cli = foregone::cli;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args, const char* env_seeds = nullptr)
{
    args.insert(args.begin(), "foregone");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    Outcome o;
    o.code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err, env_seeds);
    o.out = out.str();
    o.err = err.str();
    return o;
}

class TempFile {
public:
    explicit TempFile(const std::string& content)
        : path_(std::filesystem::temp_directory_path() /
                ("foregone-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
                 std::to_string(counter_++) + ".txt"))
    {
        std::ofstream(path_) << content;
    }
    ~TempFile() { std::filesystem::remove(path_); }
    TempFile(const TempFile&) = delete;
    TempFile& operator=(const TempFile&) = delete;
    [[nodiscard]] std::string path() const { return path_.string(); }

private:
    static inline int counter_ = 0;
    std::filesystem::path path_;
};

}  // namespace

TEST(Seeds, ListsAndRanges)
{
    EXPECT_EQ(cli::parse_seeds("0..3"), (std::vector<std::uint64_t>{0, 1, 2, 3}));
    EXPECT_EQ(cli::parse_seeds("7, 1,2..3"), (std::vector<std::uint64_t>{7, 1, 2, 3}));
    EXPECT_EQ(cli::parse_seeds("42"), (std::vector<std::uint64_t>{42}));
    EXPECT_THROW((void)cli::parse_seeds(""), cli::UsageError);
    EXPECT_THROW((void)cli::parse_seeds(" , "), cli::UsageError);
    EXPECT_THROW((void)cli::parse_seeds("3..1"), cli::UsageError);
    EXPECT_THROW((void)cli::parse_seeds("x"), cli::UsageError);
    EXPECT_THROW((void)cli::parse_seeds("-1"), cli::UsageError);
}

TEST(Overrides, ParsesGroupsCommentsAndValues)
{
    std::istringstream in("# comment\n"
                          "password.pwd = 0x6f70656e  # 'open'\n"
                          "\n"
                          "deniable/known-file.duress_enabled=0\n");
    const auto o = cli::parse_overrides(in);
    EXPECT_EQ(o.at("password").at("pwd"), Value::bytes("open"));
    EXPECT_EQ(o.at("deniable").at("duress_enabled"), Value::integer(0));
}

TEST(Overrides, RejectsMalformedLines)
{
    for (const char* bad : {"password.pwd 3\n", "pwd = 3\n", "password. = 3\n", "password.pwd = 0x6\n",
                            "password.pwd = 0xzz\n", "password.pwd = three\n"}) {
        std::istringstream in(bad);
        EXPECT_THROW((void)cli::parse_overrides(in), cli::UsageError) << bad;
    }
    std::istringstream unknown("nope.pwd = 1\n");
    EXPECT_THROW((void)cli::parse_overrides(unknown), scenarios::UnknownParameter);
    std::istringstream kind("password.pwd = 1\n");
    EXPECT_THROW((void)cli::parse_overrides(kind), scenarios::UnknownParameter);
}

TEST(List, ShowsScenariosWithCitations)
{
    const Outcome o = run({"list"});
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("password ("), std::string::npos);
    EXPECT_NE(o.out.find("otp-table/"), std::string::npos);
    const Outcome j = run({"list", "--json"});
    ASSERT_EQ(j.code, 0);
    const Json parsed = Json::parse(j.out);
    ASSERT_TRUE(parsed.is_array());
    EXPECT_EQ(parsed.size(), scenarios::registry().size());
    for (const auto& item : parsed) {
        EXPECT_FALSE(item["citation"].get<std::string>().empty());
        EXPECT_FALSE(item["expected"].empty());
    }
}

TEST(List, EmptyRegistryIsAnError)
{
    std::ostringstream out, err;
    EXPECT_NE(cli::cmd_list({}, false, out, err), 0);
    EXPECT_FALSE(err.str().empty());
}

TEST(ExitCodes, UsageErrors)
{
    EXPECT_EQ(run({}).code, cli::kUsage);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
    EXPECT_EQ(run({"run", "nope", "--check", "entailment"}).code, cli::kUsage);
    EXPECT_EQ(run({"run", "password", "--check", "nope"}).code, cli::kUsage);
    EXPECT_EQ(run({"run", "password"}).code, cli::kUsage);
    EXPECT_EQ(run({"run", "otp-table", "--check", "entailment"}).code, cli::kUsage);
    EXPECT_EQ(run({"run", "hybrid", "--check", "probe-random"}).code, cli::kUsage);
    EXPECT_EQ(run({"run", "password", "--check", "entailment", "--seeds", ""}).code, cli::kUsage);
    EXPECT_EQ(run({"run", "password", "--check", "entailment", "--overrides", "/nonexistent/file"}).code,
              cli::kUsage);
    EXPECT_EQ(run({"--help"}).code, cli::kMatch);
}

TEST(ExitCodes, MatchingRunsExitZero)
{
    EXPECT_EQ(run({"run", "password", "--check", "entailment", "--evidence", "strong"}).code, cli::kMatch);
    EXPECT_EQ(run({"run", "password", "--check", "counterexample", "--evidence", "star"}).code, cli::kMatch);
    EXPECT_EQ(run({"run", "otp-table", "--check", "audit-all", "--seeds", "0..3"}).code, cli::kMatch);
}

TEST(Mutation, DisablingTheDuressPasswordIsCaught)
{
    const TempFile f("deniable.duress_enabled = 0\n");
    const Outcome r = run({"run", "deniable", "--check", "counterexample", "--overrides", f.path()});
    EXPECT_EQ(r.code, cli::kMismatch);
    EXPECT_NE(r.err.find("expected Fails, got Holds"), std::string::npos) << r.err;
    EXPECT_EQ(run({"audit", "--overrides", f.path(), "--seeds", "0..1"}).code, cli::kMismatch);
}

TEST(Golden, DeniableCounterexampleReport)
{
    const Outcome o = run({"run", "deniable", "--check", "counterexample", "--json", "--seeds", "0..3"});
    ASSERT_EQ(o.code, 0) << o.err;
    const Json expected = Json::parse(R"({
      "scenario": "deniable",
      "check": "counterexample",
      "evidence": "weak",
      "verdict": "Fails",
      "expected": "Fails",
      "counterexample": {
        "world": "deny",
        "action": "A_duress",
        "seed": 0,
        "expected_value": "\"tax.pdf;photos\"",
        "got_value": "\"cats\""
      },
      "cells": 20,
      "seeds": [0, 1, 2, 3],
      "budget": 100000,
      "citation": "duress action conforms and overwrites the contents"
    })");
    const Json got = Json::parse(o.out);
    EXPECT_EQ(got, expected) << o.out;
    // Field order is part of the schema.
    std::vector<std::string> keys;
    for (const auto& [k, v] : got.items()) {
        keys.push_back(k);
    }
    EXPECT_EQ(keys, (std::vector<std::string>{"scenario", "check", "evidence", "verdict", "expected",
                                              "counterexample", "cells", "seeds", "budget", "citation"}));
}

TEST(Seeds, EnvironmentAppliesOnlyWithoutTheFlag)
{
    const auto seeds_of = [](const Outcome& o) { return Json::parse(o.out)["seeds"]; };
    const Outcome env = run({"run", "password", "--check", "entailment", "--evidence", "strong", "--json"}, "5,9");
    ASSERT_EQ(env.code, 0);
    EXPECT_EQ(seeds_of(env), Json::parse("[5, 9]"));
    const Outcome flag = run(
        {"run", "password", "--check", "entailment", "--evidence", "strong", "--json", "--seeds", "2"}, "5,9");
    ASSERT_EQ(flag.code, 0);
    EXPECT_EQ(seeds_of(flag), Json::parse("[2]"));
    EXPECT_EQ(run({"run", "password", "--check", "entailment"}, "").code, cli::kUsage);
}

TEST(Output, OutFlagWritesTheReport)
{
    const TempFile f("");
    const Outcome o =
        run({"run", "hybrid", "--check", "entailment", "--evidence", "weak", "--json", "--out", f.path()});
    ASSERT_EQ(o.code, 0);
    EXPECT_TRUE(o.out.empty());
    std::ifstream in(f.path());
    const Json j = Json::parse(in);
    EXPECT_EQ(j["counterexample"]["world"], "readWrite");
}

TEST(Output, MarkdownHasOneRowPerReport)
{
    const Outcome o = run({"run", "decommit", "--check", "audit-all", "--seeds", "0..1"});
    ASSERT_EQ(o.code, 0);
    std::size_t rows = 0;
    std::istringstream in(o.out);
    for (std::string line; std::getline(in, line);) {
        rows += line.rfind("| decommit", 0) == 0 ? 1 : 0;
    }
    // A scenario name wins over the group of the same name.
    const auto s = scenarios::load_scenario(*scenarios::find_entry("decommit"));
    EXPECT_EQ(rows, s.expectations.size());
}

TEST(Determinism, AuditIsByteIdentical)
{
    const Outcome a = run({"audit", "--json"});
    const Outcome b = run({"audit", "--json"});
    const Outcome c = run({"audit", "--json", "--parallel"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
}
