#include "foregone/scenarios/registry.hpp"
#include "foregone/scenarios/run.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace foregone;
using namespace foregone::scenarios;

namespace {

Verdict entailment_verdict(const std::string& name)
{
    const Scenario s = load_scenario(*find_entry(name));
    const Expectation* x = find_expectation(s, CheckKind::Entailment, "");
    EXPECT_NE(x, nullptr) << name;
    return run_check(s, CheckKind::Entailment, x->evidence).verdict;
}

}  // namespace

TEST(Registry, NamesAreUniqueAndEveryEntryLoads)
{
    std::set<std::string> names;
    for (const auto& e : registry()) {
        EXPECT_TRUE(names.insert(e.name).second) << e.name;
        EXPECT_FALSE(e.citation.empty()) << e.name;
        const Scenario s = load_scenario(e);
        EXPECT_EQ(s.name, e.name);
        EXPECT_FALSE(s.expectations.empty()) << e.name;
        EXPECT_TRUE(scenario_defects(s).empty()) << e.name;
    }
    for (const char* required : {"password", "deniable", "hybrid", "two-factor", "hash/injective", "hash/colliding",
                                 "decommit", "decommit/tf", "otp-table/enc-fixed", "unknown-goal/whereabouts",
                                 "unknown-goal/com-fresh", "coin"}) {
        EXPECT_EQ(names.count(required), 1U) << required;
    }
}

TEST(Registry, GroupsSelectTheirMembers)
{
    EXPECT_EQ(select_entries("otp-table").size(), 8U);
    EXPECT_EQ(select_entries("password").size(), 1U);
    EXPECT_TRUE(select_entries("nope").empty());
}

TEST(Registry, EveryDeclaredExpectationMatches)
{
    for (const auto& e : registry()) {
        const Scenario s = load_scenario(e);
        for (const auto& r : evaluate_all(s, CheckOptions{})) {
            EXPECT_TRUE(r.matched) << s.name << " " << to_string(r.expectation.check) << " ["
                                   << r.expectation.evidence << "] expected " << to_string(r.expectation.verdict)
                                   << ", got " << to_string(r.report.verdict);
        }
    }
}

TEST(Registry, EdgesAreStrictStrengthenings)
{
    for (const auto& e : registry()) {
        const Scenario s = e.build(e.defaults());
        for (const auto& edge : s.edges) {
            const Evidence& weak = s.variant(edge.weaker);
            const Evidence& strong = s.variant(edge.stronger);
            EXPECT_TRUE(at_least_as_strong(strong, weak)) << s.name << " " << edge.label();
            EXPECT_FALSE(at_least_as_strong(weak, strong)) << s.name << " " << edge.label();
        }
    }
}

TEST(Registry, ExemplarIsInItsFamily)
{
    for (const auto& e : registry()) {
        const Scenario s = e.build(e.defaults());
        if (!s.family.includes_exemplar) {
            continue;
        }
        bool found = false;
        for (const auto& a : s.family.actions) {
            found = found || a.label == s.exemplar.name();
        }
        EXPECT_TRUE(found) << s.name;
    }
}

TEST(Params, UnknownNamesAndKindChangesAreRejected)
{
    EXPECT_THROW((void)merge_params("password", password_defaults(), {{"nope", Value::integer(1)}}),
                 UnknownParameter);
    EXPECT_THROW((void)merge_params("password", password_defaults(), {{"pwd", Value::integer(1)}}),
                 UnknownParameter);
    EXPECT_THROW(validate_overrides({{"nope", {}}}), UnknownParameter);
    const Params p = merge_params("password", password_defaults(), {{"pwd", text("opensesame")}});
    EXPECT_EQ(p.at("pwd"), text("opensesame"));
}

TEST(Password, TargetDecryptsTheMessage)
{
    const World w = password_world("pwd-a", text("hunter2"), text("tax-records"));
    EXPECT_EQ(run_target(password_target(), w), text("tax-records"));
}

TEST(Password, KnownFileVerifierRejectsTheDuressOverwrite)
{
    const World w = deniable_world("deny", text("letmein"), text("tax.pdf;photos"), text("panic"), true);
    const Machine v = known_file_verifier("tax.pdf");
    EXPECT_TRUE(check_conformity(v, password_exemplar(), w));
    EXPECT_FALSE(check_conformity(v, duress_action(text("cats")), w));
    EXPECT_TRUE(check_conformity(password_verifier(), duress_action(text("cats")), w));
}

TEST(Password, DisabledDuressRemovesTheCounterexample)
{
    const RegistryEntry& e = *find_entry("deniable");
    const Scenario s = load_scenario(e, {{"deniable", {{"duress_enabled", Value::integer(0)}}}});
    EXPECT_EQ(run_check(s, CheckKind::Entailment, "weak").verdict, Verdict::Holds);
}

TEST(TwoFactor, WrongCodeLeavesTheDeviceLocked)
{
    const World w = two_factor_world("2fa", text("hunter2"), text("inbox"), Location{2});
    const Machine peek = Machine::program("T_peek", [](Invocation& ctx) -> Output {
        ctx.call(kDevice, "promptPwd", text("hunter2"));
        return ctx.call(Location{2}, "getCode").value_or(Value{});
    });
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const Value code = run_target(peek, w.with_seed(seed));
        ASSERT_TRUE(code.is_bytes());
        ASSERT_EQ(code.as_bytes().size(), 2U);
        std::string wrong = code.as_bytes();
        wrong[0] = static_cast<char>(wrong[0] ^ 1);
        const Machine attempt = Machine::program("T_attempt", [wrong](Invocation& ctx) -> Output {
            ctx.call(kDevice, "promptPwd", text("hunter2"));
            ctx.call(kDevice, "promptCode", text(wrong));
            return ctx.call(kDevice, "read").value_or(Value{});
        });
        EXPECT_EQ(run_target(attempt, w.with_seed(seed)), Value{});
        EXPECT_EQ(run_target(two_factor_target(), w.with_seed(seed)), text("inbox"));
    }
}

TEST(TwoFactor, CodeIsUnlockedOnlyAfterThePassword)
{
    const World w = two_factor_world("2fa", text("hunter2"), text("inbox"), Location{2});
    const Machine skip = Machine::program("T_skip", [](Invocation& ctx) -> Output {
        ctx.call(kDevice, "promptCode", Value{});
        return ctx.call(kDevice, "read").value_or(Value{});
    });
    EXPECT_EQ(run_target(skip, w), Value{});
}

TEST(Hash, CollidingCounterexampleHasEqualDigests)
{
    const Scenario s = load_scenario(*find_entry("hash/colliding"));
    const CheckReport r = run_check(s, CheckKind::Entailment, "weak");
    ASSERT_EQ(r.verdict, Verdict::Fails);
    const Cell& c = *r.counterexample;
    ASSERT_TRUE(c.got && c.got->is_bytes());
    EXPECT_NE(c.expected, *c.got);
    const auto h = toys::colliding_hash();
    EXPECT_EQ(h.evaluate(c.expected.as_bytes()), h.evaluate(c.got->as_bytes()));
}

TEST(Decommit, EquivocatedOpeningIsTheCounterexample)
{
    const Scenario s = load_scenario(*find_entry("decommit"));
    const CheckReport r = run_check(s, CheckKind::Entailment, "star");
    ASSERT_EQ(r.verdict, Verdict::Fails);
    EXPECT_EQ(r.counterexample->action, "A_equiv");
    EXPECT_EQ(r.counterexample->got, text("z"));
}

TEST(OtpTable, CellsReproduceTheTable)
{
    EXPECT_EQ(entailment_verdict("otp-table/secret-rk"), Verdict::Fails);
    EXPECT_EQ(entailment_verdict("otp-table/secret-fixed"), Verdict::Fails);
    EXPECT_EQ(entailment_verdict("otp-table/secret-sampled"), Verdict::Fails);
    EXPECT_EQ(entailment_verdict("otp-table/known-rk"), Verdict::Fails);
    EXPECT_EQ(entailment_verdict("otp-table/known-fixed"), Verdict::Holds);
    EXPECT_EQ(entailment_verdict("otp-table/known-sampled"), Verdict::Fails);
    EXPECT_EQ(entailment_verdict("otp-table/enc-fixed"), Verdict::Holds);
}

TEST(Sweeps, CryptoSweepsPass)
{
    for (const auto& s : crypto_sweeps()) {
        EXPECT_TRUE(s.passed) << s.name << ": " << s.detail;
    }
}
