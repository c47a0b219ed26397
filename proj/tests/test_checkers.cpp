#include "foregone/checkers.hpp"
#include "foregone/scenarios/registry.hpp"
#include "foregone/scenarios/run.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace foregone;
using namespace foregone::scenarios;

namespace {

Scenario password() { return build_password(password_defaults()); }

const World& world_named(const Evidence& e, const std::string& label)
{
    for (const auto& w : e.worlds()) {
        if (w.label == label) {
            return w;
        }
    }
    throw std::out_of_range(label);
}

/// Brute-force first violating cell in (world, action, seed) order.
std::optional<Cell> first_violation(const Scenario& s, const Evidence& e, const CheckOptions& opts)
{
    for (const auto& w : e.worlds()) {
        for (const auto& [label, a] : s.family.actions) {
            bool conforms = true;
            for (auto seed : opts.seeds) {
                conforms = conforms && execute(s.verifier, a, w.with_seed(seed), opts.budget).transcript.accepted();
            }
            if (!conforms) {
                continue;
            }
            for (auto seed : opts.seeds) {
                const ExecutionResult r = execute(s.verifier, a, w.with_seed(seed), opts.budget);
                const Output got = run_post_processor(s.post, r, opts.budget);
                const Value want = run_target(s.target, w.with_seed(seed), opts.budget);
                if (got != want) {
                    return Cell{w.label, label, seed, want, got};
                }
            }
        }
    }
    return std::nullopt;
}

std::vector<Scenario> all_scenarios()
{
    std::vector<Scenario> out;
    for (const auto& e : registry()) {
        out.push_back(e.build(e.defaults()));
    }
    return out;
}

bool entailment_check(CheckKind k) { return k == CheckKind::Entailment || k == CheckKind::Counterexample; }

}  // namespace

TEST(Conformity, PasswordExamples)
{
    const Scenario s = password();
    const Evidence& weak = s.variant("weak");
    EXPECT_TRUE(check_conformity(password_verifier(), password_exemplar(), world_named(weak, "pwd-a")));
    EXPECT_FALSE(check_conformity(password_verifier(), do_nothing(), world_named(weak, "pwd-a")));
    EXPECT_TRUE(check_conformity(password_verifier(), duress_action(text("cats")), world_named(weak, "deny")));
}

TEST(Conformity, BudgetCountsAsNonConforming)
{
    const Machine spin = Machine::program("A_spin", [](Invocation& ctx) -> Output {
        for (;;) {
            ctx.tick(1);
        }
    });
    CheckOptions o;
    o.budget = 100;
    EXPECT_FALSE(check_conformity(accept_all(), spin, World{}, o));
}

TEST(Demonstrability, PasswordHoldsWithAndWithoutTheDeniableWorld)
{
    const Scenario s = password();
    EXPECT_EQ(check_demonstrability(s.verifier, s.exemplar, s.variant("weak")).verdict, Verdict::Holds);
    EXPECT_EQ(check_demonstrability(s.verifier, s.exemplar, s.variant("strong")).verdict, Verdict::Holds);
}

TEST(Demonstrability, StarFailsAtTheSilentRespondent)
{
    const Scenario s = password();
    const CheckReport r = check_demonstrability(s.verifier, s.exemplar, s.variant("star"));
    ASSERT_EQ(r.verdict, Verdict::Fails);
    ASSERT_TRUE(r.counterexample);
    const World& w = world_named(s.variant("star"), r.counterexample->world);
    EXPECT_EQ(w.respondent.name(), "R_bot");
    const ExecutionResult run = execute(s.verifier, s.exemplar, w.with_seed(r.counterexample->seed));
    bool absent = false;
    for (const auto& ev : run.transcript.events) {
        absent = absent || (ev.callee == "R" && ev.method == "pwd" && !ev.output);
    }
    EXPECT_TRUE(absent);
}

TEST(Entailment, PasswordFullSpecHolds)
{
    const Scenario s = password();
    ActionFamily fam{{{"A*_pwd", password_exemplar()}, {"A_typoRetry", typo_retry_action()}}, true};
    const CheckReport r = check_entailment(s.verifier, s.target, s.post, s.variant("strong"), fam);
    EXPECT_EQ(r.verdict, Verdict::Holds);
    EXPECT_EQ(r.cells_checked, 2U * 2U * 16U);
    EXPECT_FALSE(search_entailment_counterexample(s.verifier, s.target, s.post, s.variant("strong"),
                                                  ActionFamily{{{"A*_pwd", password_exemplar()}}, true}));
}

TEST(Entailment, DuressOverwriteIsTheCounterexample)
{
    const Scenario s = password();
    const CheckReport r = check_entailment(s.verifier, s.target, s.post, s.variant("weak"), s.family);
    ASSERT_EQ(r.verdict, Verdict::Fails);
    EXPECT_EQ(r.counterexample->world, "deny");
    EXPECT_EQ(r.counterexample->action, "A_duress");
    EXPECT_EQ(r.counterexample->got, text("cats"));
    EXPECT_EQ(r.counterexample->expected, text("photos"));
}

TEST(Entailment, StarCounterexampleSitsInASilentRespondentWorld)
{
    const Scenario s = password();
    const auto c = search_entailment_counterexample(s.verifier, s.target, s.post, s.variant("star"), s.family);
    ASSERT_TRUE(c);
    EXPECT_EQ(world_named(s.variant("star"), c->world).respondent.name(), "R_bot");
    EXPECT_EQ(c->expected, Value{});
    EXPECT_NE(c->got, Output{Value{}});
}

TEST(Entailment, HybridWriteActionBreaksTheReadTarget)
{
    const Scenario s = build_hybrid(hybrid_defaults());
    const auto c = search_entailment_counterexample(s.verifier, s.target, s.post, s.variant("weak"), s.family);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->world, "readWrite");
    EXPECT_EQ(c->action, "A_write");
    EXPECT_EQ(check_entailment(s.verifier, s.target, s.post, s.variant("strong"), s.family).verdict,
              Verdict::Holds);
}

TEST(Entailment, DecommitUnderBindingHolds)
{
    const Scenario s = build_decommit(decommit_defaults());
    EXPECT_EQ(check_entailment(s.verifier, s.target, s.post, s.variant("strong"), s.family).verdict,
              Verdict::Holds);
}

TEST(Entailment, PostProcessorOverBudgetFails)
{
    const Scenario s = password();
    const Machine slow = Machine::program("P_slow", [](Invocation& ctx) -> Output {
        for (;;) {
            ctx.tick(1);
        }
    });
    CheckOptions o;
    o.budget = 1000;
    const CheckReport r = check_entailment(s.verifier, s.target, slow, s.variant("strong"),
                                           ActionFamily{{{"A*_pwd", password_exemplar()}}, true}, o);
    EXPECT_EQ(r.verdict, Verdict::Fails);
    EXPECT_FALSE(r.notes.empty());
}

TEST(Entailment, EveryFailureReplaysExactly)
{
    for (const auto& s : all_scenarios()) {
        for (const auto& x : s.expectations) {
            if (!entailment_check(x.check)) {
                continue;
            }
            const Evidence& e = s.variant(x.evidence);
            const CheckReport r = check_entailment(s.verifier, s.target, s.post, e, s.family);
            if (r.verdict != Verdict::Fails) {
                continue;
            }
            const Cell& c = *r.counterexample;
            const CellOutputs re = replay_entailment_cell(s.verifier, s.target, s.post, e, s.family, c);
            EXPECT_TRUE(re.accepted) << s.name;
            EXPECT_EQ(re.expected, c.expected) << s.name;
            EXPECT_EQ(re.got, c.got) << s.name;
        }
    }
}

TEST(Entailment, CounterexampleIsLexicographicallyFirst)
{
    const CheckOptions opts;
    for (const auto& s : all_scenarios()) {
        for (const auto& x : s.expectations) {
            if (!entailment_check(x.check)) {
                continue;
            }
            const Evidence& e = s.variant(x.evidence);
            const auto oracle = first_violation(s, e, opts);
            const auto got = check_entailment(s.verifier, s.target, s.post, e, s.family, opts).counterexample;
            ASSERT_EQ(oracle.has_value(), got.has_value()) << s.name << " " << x.evidence;
            if (oracle) {
                EXPECT_EQ(*oracle, *got) << s.name << " " << x.evidence;
            }
        }
    }
}

TEST(Entailment, SkippedActionsAreExactlyTheNonConformingOnes)
{
    const CheckOptions opts;
    for (const auto& s : all_scenarios()) {
        for (const auto& x : s.expectations) {
            if (!entailment_check(x.check)) {
                continue;
            }
            const Evidence& e = s.variant(x.evidence);
            const CheckReport r = check_entailment(s.verifier, s.target, s.post, e, s.family, opts);
            const std::set<std::string> skipped(r.skipped.begin(), r.skipped.end());
            std::size_t evaluated = 0;
            for (const auto& w : e.worlds()) {
                for (const auto& [label, a] : s.family.actions) {
                    const bool conforms = check_conformity(s.verifier, a, w, opts);
                    EXPECT_EQ(conforms, skipped.count(w.label + "/" + label) == 0) << s.name << " " << w.label;
                    evaluated += conforms ? opts.seeds.size() : 0;
                }
            }
            EXPECT_EQ(r.cells_checked, evaluated) << s.name;
        }
    }
}

TEST(Checkers, ParallelAndSerialAgree)
{
    CheckOptions serial;
    CheckOptions parallel;
    parallel.parallel = true;
    for (const auto& s : all_scenarios()) {
        for (const auto& x : s.expectations) {
            const CheckReport a = run_check(s, x.check, x.evidence, serial);
            const CheckReport b = run_check(s, x.check, x.evidence, parallel);
            EXPECT_EQ(a.verdict, b.verdict) << s.name;
            EXPECT_EQ(a.counterexample, b.counterexample) << s.name;
            EXPECT_EQ(a.cells_checked, b.cells_checked) << s.name;
            EXPECT_EQ(a.skipped, b.skipped) << s.name;
        }
    }
}

TEST(Checkers, EntailmentImpliesDemonstrability)
{
    for (const auto& s : all_scenarios()) {
        if (!s.family.includes_exemplar) {
            continue;
        }
        for (const auto& [label, e] : s.evidence) {
            if (check_entailment(s.verifier, s.target, s.post, e, s.family).verdict == Verdict::Holds) {
                EXPECT_EQ(check_demonstrability(s.verifier, s.exemplar, e).verdict, Verdict::Holds)
                    << s.name << "/" << label;
            }
        }
    }
}

// Monotonicity

TEST(Monotonicity, DeclaredEdgesAndSelfEdges)
{
    const Scenario s = password();
    EXPECT_EQ(check_monotonicity(s.verifier, s.exemplar, s.variant("weak"), s.variant("strong")).verdict,
              Verdict::Holds);
    EXPECT_EQ(check_monotonicity(s.verifier, s.exemplar, s.variant("weak"), s.variant("weak")).verdict,
              Verdict::Holds);
    EXPECT_THROW((void)check_monotonicity(s.verifier, s.exemplar, s.variant("strong"), s.variant("weak")),
                 PreconditionViolated);
}

TEST(Monotonicity, RandomSubfamiliesOfThePasswordEvidence)
{
    const Scenario s = password();
    const Evidence& star = s.variant("star");
    std::mt19937_64 rng(7);
    const CheckOptions opts{{0, 1, 2, 3}, kDefaultBudget, false};
    for (int i = 0; i < 20; ++i) {
        std::vector<bool> in1(star.worlds().size());
        std::vector<bool> in2(star.worlds().size());
        bool any = false;
        for (std::size_t j = 0; j < in1.size(); ++j) {
            in1[j] = rng() % 2 == 0 || j == 0;
            in2[j] = in1[j] && (rng() % 2 == 0);
            any = any || in2[j];
        }
        if (!any) {
            in2[0] = true;
        }
        std::size_t k1 = 0, k2 = 0;
        const Evidence e1 = star.restricted([&](const World&) { return in1[k1++]; }, "e1");
        const Evidence e2 = star.restricted([&](const World&) { return in2[k2++]; }, "e2");
        ASSERT_TRUE(at_least_as_strong(e2, e1));
        EXPECT_EQ(check_monotonicity(s.verifier, s.exemplar, e1, e2, opts).verdict, Verdict::Holds);
    }
}

// Impossibility probes

namespace {

const Expectation& probe_expectation(const Scenario& s)
{
    for (const auto& x : s.expectations) {
        if (x.check == CheckKind::ProbeUnknownGoal || x.check == CheckKind::ProbeRandom) {
            return x;
        }
    }
    throw std::logic_error("no probe expectation in " + s.name);
}

}  // namespace

TEST(Probes, WhereaboutsDefeatsEveryCandidateWithReplayableWitnesses)
{
    const Scenario s = build_whereabouts(whereabouts_defaults(), false, false);
    const Evidence& e = s.variant(probe_expectation(s).evidence);
    const CheckReport r = probe_unknown_goal(s.verifier, s.exemplar, e, s.target, s.candidates);
    ASSERT_EQ(r.verdict, Verdict::Holds);
    ASSERT_EQ(r.witnesses.size(), s.candidates.size());
    for (std::size_t i = 0; i < s.candidates.size(); ++i) {
        const Cell& c = r.witnesses[i];
        EXPECT_EQ(c.candidate, s.candidates[i].label);
        const CellOutputs re =
            replay_unknown_goal_witness(s.verifier, s.exemplar, e, s.target, s.candidates[i].machine, c);
        EXPECT_TRUE(re.accepted);
        EXPECT_EQ(re.got, c.got);
        EXPECT_EQ(re.expected, c.expected);
        const auto& lang = *e.language_of(world_named(e, c.world));
        EXPECT_TRUE(!re.got || std::find(lang.begin(), lang.end(), *re.got) == lang.end()) << c.candidate;
    }
}

TEST(Probes, OverlappingOrSingleLanguagesViolateTheHypothesis)
{
    for (const bool overlap : {true, false}) {
        const Scenario s = build_whereabouts(whereabouts_defaults(), overlap, !overlap);
        const Evidence& e = s.variant(probe_expectation(s).evidence);
        EXPECT_EQ(probe_unknown_goal(s.verifier, s.exemplar, e, s.target, s.candidates).verdict,
                  Verdict::HypothesisViolated)
            << s.name;
    }
}

TEST(Probes, RandomTargetsDefeatEveryCandidate)
{
    const Params ug = [] {
        Params p = whereabouts_defaults();
        const Params c = commitment_probe_defaults();
        p.insert(c.begin(), c.end());
        return p;
    }();
    for (const Scenario& s : {build_coin(coin_defaults(), false), build_commitment_probe(ug, "")}) {
        const Evidence& e = s.variant(probe_expectation(s).evidence);
        const CheckReport r = probe_random_target(s.verifier, s.exemplar, e, s.target, s.candidates);
        ASSERT_EQ(r.verdict, Verdict::Holds) << s.name;
        ASSERT_EQ(r.witnesses.size(), s.candidates.size()) << s.name;
        for (std::size_t i = 0; i < s.candidates.size(); ++i) {
            const Cell& c = r.witnesses[i];
            ASSERT_TRUE(c.target_seed);
            const CellOutputs re =
                replay_random_witness(s.verifier, s.exemplar, e, s.target, s.candidates[i].machine, c);
            EXPECT_TRUE(re.accepted);
            EXPECT_EQ(re.got, c.got);
            EXPECT_EQ(re.expected, c.expected);
            EXPECT_NE(re.got, Output{re.expected}) << s.name << " " << c.candidate;
        }
    }
}

TEST(Probes, ConstantTargetViolatesTheHypothesis)
{
    const Scenario s = build_coin(coin_defaults(), true);
    const Evidence& e = s.variant(probe_expectation(s).evidence);
    EXPECT_EQ(probe_random_target(s.verifier, s.exemplar, e, s.target, s.candidates).verdict,
              Verdict::HypothesisViolated);
}
