#pragma once

#include "foregone/evidence.hpp"
#include "foregone/kernel.hpp"

#include <algorithm>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace foregone {

enum class Verdict { Holds, Fails, HypothesisViolated };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Holds:
        return "Holds";
    case Verdict::Fails:
        return "Fails";
    case Verdict::HypothesisViolated:
        return "HypothesisViolated";
    }
    return "?";
}

struct NamedMachine {
    std::string label;
    Machine machine;
};

struct ActionFamily {
    std::vector<NamedMachine> actions;
    bool includes_exemplar = false;
};

/// One evaluated (world, action, seed) point. For the impossibility
/// probes `candidate` names the defeated post-processor and
/// `target_seed` the target tape that separates it.
struct Cell {
    std::string world;
    std::string action;
    std::uint64_t seed = 0;
    Value expected;
    Output got;
    std::string candidate{};
    std::optional<std::uint64_t> target_seed{};

    friend bool operator==(const Cell&, const Cell&) = default;
};

struct CheckReport {
    Verdict verdict = Verdict::Holds;
    std::optional<Cell> counterexample;
    std::vector<Cell> witnesses;
    std::size_t cells_checked = 0;
    std::size_t budget_used = 0;
    std::vector<std::string> skipped;
    std::vector<std::string> notes;
};

inline std::vector<std::uint64_t> default_seeds()
{
    std::vector<std::uint64_t> s(16);
    for (std::uint64_t i = 0; i < s.size(); ++i) {
        s[i] = i;
    }
    return s;
}

struct CheckOptions {
    std::vector<std::uint64_t> seeds = default_seeds();
    std::size_t budget = kDefaultBudget;
    bool parallel = false;
};

/// Accept under every seed of the set; Budget counts as non-accepting.
inline bool check_conformity(const Machine& v, const Machine& a, const World& w, const CheckOptions& opts = {})
{
    return std::all_of(opts.seeds.begin(), opts.seeds.end(), [&](std::uint64_t s) {
        return execute(v, a, w.with_seed(s), opts.budget).transcript.accepted();
    });
}

namespace detail {

/// Outcome of one world's cells. `first` is the smallest failing
/// (action index, seed index) in that world.
struct WorldPass {
    std::optional<Cell> first;
    std::size_t cells = 0;
    std::size_t budget = 0;
    std::vector<std::string> skipped;
    std::vector<std::string> notes;
};

/// Runs `per_world` over every world index, in parallel when asked, and
/// merges in index order so the result does not depend on scheduling.
template <typename F>
CheckReport sweep_worlds(std::size_t n, const CheckOptions& opts, F per_world)
{
    std::vector<WorldPass> passes(n);
    if (opts.parallel && n > 1) {
        std::vector<std::future<WorldPass>> jobs;
        jobs.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            jobs.push_back(std::async(std::launch::async, per_world, i));
        }
        for (std::size_t i = 0; i < n; ++i) {
            passes[i] = jobs[i].get();
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            passes[i] = per_world(i);
        }
    }
    CheckReport r;
    for (auto& p : passes) {
        r.cells_checked += p.cells;
        r.budget_used = std::max(r.budget_used, p.budget);
        r.skipped.insert(r.skipped.end(), p.skipped.begin(), p.skipped.end());
        r.notes.insert(r.notes.end(), p.notes.begin(), p.notes.end());
        if (p.first && !r.counterexample) {
            r.counterexample = p.first;
        }
    }
    r.verdict = r.counterexample ? Verdict::Fails : Verdict::Holds;
    return r;
}

inline const Event* first_failed_respondent_call(const Transcript& t)
{
    for (const auto& e : t.events) {
        if (e.caller == "A" && e.callee == "R" && e.outcome != EventOutcome::Returned) {
            return &e;
        }
    }
    return nullptr;
}

}  // namespace detail

/// Both clauses for every world and seed: the exemplar's respondent
/// calls all produce output, and the verifier accepts.
inline CheckReport check_demonstrability(const Machine& v, const Machine& exemplar, const Evidence& e,
                                         const CheckOptions& opts = {})
{
    const auto& worlds = e.worlds();
    return detail::sweep_worlds(worlds.size(), opts, [&](std::size_t i) {
        detail::WorldPass p;
        const World& w = worlds[i];
        for (std::uint64_t s : opts.seeds) {
            const ExecutionResult r = execute(v, exemplar, w.with_seed(s), opts.budget);
            ++p.cells;
            p.budget = std::max(p.budget, r.steps_used);
            if (p.first) {
                continue;
            }
            if (const Event* bad = detail::first_failed_respondent_call(r.transcript)) {
                p.first = Cell{w.label, exemplar.name(), s, bytes("output from R." + bad->method), std::nullopt};
            } else if (!r.transcript.accepted()) {
                p.first = Cell{w.label, exemplar.name(), s, bytes("Accept"),
                               bytes(to_string(*r.transcript.verdict()))};
            }
        }
        return p;
    });
}

/// The target's output and the post-processor's output on one cell.
struct CellOutputs {
    Value expected;
    Output got;
    std::size_t steps = 0;
    bool accepted = false;
    std::string note;
};

inline CellOutputs evaluate_entailment_cell(const Machine& v, const Machine& target, const Machine& post,
                                            const Machine& action, const World& w, std::uint64_t seed,
                                            std::size_t budget)
{
    CellOutputs out;
    const World pre = w.with_seed(seed);
    const ExecutionResult r = execute(v, action, pre, budget);
    out.steps = r.steps_used;
    out.accepted = r.transcript.accepted();
    out.expected = run_target(target, pre, budget);
    try {
        out.got = run_post_processor(post, r, budget);
    } catch (const BudgetExceeded& ex) {
        out.got = std::nullopt;
        out.note = std::string("post-processor: ") + ex.what();
    } catch (const KernelFault& ex) {
        out.got = std::nullopt;
        out.note = std::string("post-processor: ") + ex.what();
    }
    return out;
}

/// Exact equality of post-processor and target per (world, conforming
/// action, seed). Actions that do not conform in a world are skipped for
/// that world and listed.
inline CheckReport check_entailment(const Machine& v, const Machine& target, const Machine& post,
                                    const Evidence& e, const ActionFamily& fam, const CheckOptions& opts = {})
{
    const auto& worlds = e.worlds();
    return detail::sweep_worlds(worlds.size(), opts, [&](std::size_t i) {
        detail::WorldPass p;
        const World& w = worlds[i];
        for (const auto& [label, action] : fam.actions) {
            std::vector<ExecutionResult> runs;
            bool conforms = true;
            for (std::uint64_t s : opts.seeds) {
                runs.push_back(execute(v, action, w.with_seed(s), opts.budget));
                p.budget = std::max(p.budget, runs.back().steps_used);
                if (!runs.back().transcript.accepted()) {
                    conforms = false;
                    break;
                }
            }
            if (!conforms) {
                p.skipped.push_back(w.label + "/" + label);
                continue;
            }
            for (std::size_t k = 0; k < opts.seeds.size(); ++k) {
                const std::uint64_t s = opts.seeds[k];
                ++p.cells;
                const Value expected = run_target(target, w.with_seed(s), opts.budget);
                Output got;
                try {
                    got = run_post_processor(post, runs[k], opts.budget);
                } catch (const BudgetExceeded& ex) {
                    p.notes.push_back(w.label + "/" + label + ": post-processor " + ex.what());
                } catch (const KernelFault& ex) {
                    p.notes.push_back(w.label + "/" + label + ": post-processor " + ex.what());
                }
                if (!p.first && got != expected) {
                    p.first = Cell{w.label, label, s, expected, got};
                }
            }
        }
        return p;
    });
}

inline std::optional<Cell> search_entailment_counterexample(const Machine& v, const Machine& target,
                                                            const Machine& post, const Evidence& e,
                                                            const ActionFamily& fam, const CheckOptions& opts = {})
{
    return check_entailment(v, target, post, e, fam, opts).counterexample;
}

/// Demonstrability and per-world conformity of the exemplar must not
/// degrade from `e1` to the stronger `e2`.
inline CheckReport check_monotonicity(const Machine& v, const Machine& exemplar, const Evidence& e1,
                                      const Evidence& e2, const CheckOptions& opts = {})
{
    if (!at_least_as_strong(e2, e1)) {
        throw PreconditionViolated(e2.name() + " is not at least as strong as " + e1.name());
    }
    const CheckReport d1 = check_demonstrability(v, exemplar, e1, opts);
    const CheckReport d2 = check_demonstrability(v, exemplar, e2, opts);
    CheckReport r;
    r.cells_checked = d1.cells_checked + d2.cells_checked;
    r.budget_used = std::max(d1.budget_used, d2.budget_used);
    if (d1.verdict == Verdict::Holds && d2.verdict != Verdict::Holds) {
        r.verdict = Verdict::Fails;
        r.counterexample = d2.counterexample;
        r.notes.push_back("demonstrability degraded from " + e1.name() + " to " + e2.name());
        return r;
    }
    std::map<std::string, bool> wide;
    for (const auto& w : e1.worlds()) {
        wide[w.fingerprint()] = check_conformity(v, exemplar, w, opts);
    }
    for (const auto& w : e2.worlds()) {
        ++r.cells_checked;
        if (wide.at(w.fingerprint()) && !check_conformity(v, exemplar, w, opts)) {
            r.verdict = Verdict::Fails;
            r.counterexample = Cell{w.label, exemplar.name(), opts.seeds.front(), bytes("Accept"), std::nullopt};
            r.notes.push_back("conformity degraded in " + w.label);
            return r;
        }
    }
    return r;
}

//
// Impossibility probes
//

namespace detail {

inline bool language_contains(const std::vector<Value>& lang, const Output& x)
{
    return x && std::find(lang.begin(), lang.end(), *x) != lang.end();
}

/// Worlds sharing one nature, grouped in order of first appearance.
inline std::vector<std::vector<std::size_t>> nature_groups(const Evidence& e)
{
    std::vector<std::vector<std::size_t>> groups;
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < e.worlds().size(); ++i) {
        const std::string fp = e.worlds()[i].nature.fingerprint();
        auto [it, fresh] = index.emplace(fp, groups.size());
        if (fresh) {
            groups.emplace_back();
        }
        groups[it->second].push_back(i);
    }
    return groups;
}

}  // namespace detail

/// The unknown-goal construction: pick a nature whose respondents'
/// languages have empty intersection, run the exemplar against an
/// emulated R_0, and for each candidate find a respondent R* whose
/// language misses the candidate's (R-independent) output.
inline CheckReport probe_unknown_goal(const Machine& v, const Machine& exemplar, const Evidence& e,
                                      const Machine& target, const std::vector<NamedMachine>& candidates,
                                      const CheckOptions& opts = {})
{
    CheckReport report;
    report.notes.push_back("constructive witness over the declared candidates, not a universal proof");
    std::optional<std::vector<std::size_t>> chosen;
    for (const auto& group : detail::nature_groups(e)) {
        std::vector<Value> common;
        bool first = true;
        for (std::size_t i : group) {
            const auto* lang = e.language_of(e.worlds()[i]);
            if (lang == nullptr) {
                throw PreconditionViolated("world " + e.worlds()[i].label + " has no declared language");
            }
            if (first) {
                common = *lang;
                first = false;
            } else {
                std::vector<Value> keep;
                for (const auto& x : common) {
                    if (std::find(lang->begin(), lang->end(), x) != lang->end()) {
                        keep.push_back(x);
                    }
                }
                common = std::move(keep);
            }
        }
        if (common.empty()) {
            chosen = group;
            break;
        }
    }
    if (!chosen) {
        report.verdict = Verdict::HypothesisViolated;
        report.notes.push_back("every nature's respondent languages share an element");
        return report;
    }
    const auto& worlds = e.worlds();
    const World& w0 = worlds[chosen->front()];
    const Machine a0 = emulate_respondent(exemplar, w0.respondent, "A_0");

    // runs[k][j]: A_0 on the j-th world of the group under seed k
    std::vector<std::vector<ExecutionResult>> runs;
    for (std::uint64_t s : opts.seeds) {
        auto& row = runs.emplace_back();
        for (std::size_t i : *chosen) {
            row.push_back(execute(v, a0, worlds[i].with_seed(s), opts.budget));
            report.budget_used = std::max(report.budget_used, row.back().steps_used);
            ++report.cells_checked;
            if (!row.back().transcript.accepted()) {
                throw PreconditionViolated("A_0 is rejected in " + worlds[i].label +
                                           "; the verifier is not demonstrable over this family");
            }
        }
    }

    for (const auto& [label, post] : candidates) {
        std::optional<Cell> witness;
        Output last;
        for (std::size_t k = 0; k < opts.seeds.size() && !witness; ++k) {
            std::vector<Output> outs;
            for (const auto& r : runs[k]) {
                outs.push_back(run_post_processor(post, r, opts.budget));
            }
            if (std::adjacent_find(outs.begin(), outs.end(), std::not_equal_to<>()) != outs.end()) {
                throw std::logic_error("post-processor output depends on the respondent under A_0");
            }
            const Output x = outs.front();
            last = x;
            for (std::size_t j = 0; j < chosen->size(); ++j) {
                const World& w = worlds[(*chosen)[j]];
                const auto& lang = *e.language_of(w);
                if (detail::language_contains(lang, x)) {
                    continue;
                }
                const Value t = run_target(target, w.with_seed(opts.seeds[k]), opts.budget);
                if (std::find(lang.begin(), lang.end(), t) == lang.end()) {
                    throw PreconditionViolated("target output " + t.to_string() + " lies outside the language of " +
                                               w.label);
                }
                witness = Cell{w.label, "A_0", opts.seeds[k], t, x, label};
                break;
            }
        }
        if (witness) {
            report.witnesses.push_back(*witness);
        } else {
            report.verdict = Verdict::Fails;
            if (!report.counterexample) {
                report.counterexample = Cell{w0.label, "A_0", opts.seeds.front(), Value{}, last, label};
            }
            report.notes.push_back("candidate " + label + " is not defeated");
        }
    }
    if (report.verdict == Verdict::Holds && !report.witnesses.empty()) {
        report.counterexample = report.witnesses.front();
    }
    return report;
}

/// Assignment used by the randomness probe: the world seed plus a pinned
/// target tape.
inline RandomnessAssignment target_tape_assignment(std::uint64_t seed, std::uint64_t target_seed)
{
    return RandomnessAssignment(seed).with_override("T", TapeSource::seeded(target_seed));
}

/// The randomized-target construction: find a world and seed under which
/// the target's output varies with its own tape, run the exemplar with a
/// zero tape, and for each candidate (also on a zero tape) find a target
/// tape that disagrees with it.
inline CheckReport probe_random_target(const Machine& v, const Machine& exemplar, const Evidence& e,
                                       const Machine& target, const std::vector<NamedMachine>& candidates,
                                       const CheckOptions& opts = {})
{
    CheckReport report;
    report.notes.push_back("constructive witness over the declared candidates, not a universal proof");
    const auto& worlds = e.worlds();
    std::optional<std::size_t> wi;
    std::uint64_t seed = 0;
    std::vector<Value> support;  // target output per target tape in opts.seeds
    for (std::size_t i = 0; i < worlds.size() && !wi; ++i) {
        for (std::uint64_t s : opts.seeds) {
            std::vector<Value> outs;
            for (std::uint64_t t : opts.seeds) {
                World w = worlds[i];
                w.assignment = target_tape_assignment(s, t);
                outs.push_back(run_target(target, w, opts.budget));
                ++report.cells_checked;
            }
            std::vector<Value> distinct = outs;
            std::sort(distinct.begin(), distinct.end());
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            if (distinct.size() >= 2) {
                wi = i;
                seed = s;
                support = std::move(outs);
                break;
            }
        }
    }
    if (!wi) {
        report.verdict = Verdict::HypothesisViolated;
        report.notes.push_back("target output support has size < 2 over the probed tapes");
        return report;
    }
    const World& w = worlds[*wi];
    const Machine a0 = with_zero_tape(exemplar, "A_0");
    World pre = w;
    pre.assignment = target_tape_assignment(seed, opts.seeds.front());
    const ExecutionResult r = execute(v, a0, pre, opts.budget);
    report.budget_used = r.steps_used;
    ++report.cells_checked;
    if (!r.transcript.accepted()) {
        throw PreconditionViolated("A_0 is rejected in " + w.label + "; the verifier is not demonstrable");
    }
    for (const auto& [label, post] : candidates) {
        const Output y = run_post_processor(with_zero_tape(post, label + "_0"), r, opts.budget);
        ++report.cells_checked;
        std::optional<Cell> witness;
        for (std::size_t k = 0; k < opts.seeds.size(); ++k) {
            if (!y || *y != support[k]) {
                witness = Cell{w.label, "A_0", seed, support[k], y, label, opts.seeds[k]};
                break;
            }
        }
        if (witness) {
            report.witnesses.push_back(*witness);
        } else {
            report.verdict = Verdict::Fails;
            if (!report.counterexample) {
                report.counterexample = Cell{w.label, "A_0", seed, support.front(), y, label};
            }
            report.notes.push_back("candidate " + label + " is not defeated");
        }
    }
    if (report.verdict == Verdict::Holds && !report.witnesses.empty()) {
        report.counterexample = report.witnesses.front();
    }
    return report;
}

//
// Replay
//

/// Recompute an entailment cell from scratch through the kernel.
inline CellOutputs replay_entailment_cell(const Machine& v, const Machine& target, const Machine& post,
                                          const Evidence& e, const ActionFamily& fam, const Cell& cell,
                                          std::size_t budget = kDefaultBudget)
{
    const auto w = std::find_if(e.worlds().begin(), e.worlds().end(),
                                [&](const World& x) { return x.label == cell.world; });
    const auto a = std::find_if(fam.actions.begin(), fam.actions.end(),
                                [&](const NamedMachine& x) { return x.label == cell.action; });
    if (w == e.worlds().end() || a == fam.actions.end()) {
        throw std::invalid_argument("cell does not name a world and action of the family");
    }
    return evaluate_entailment_cell(v, target, post, a->machine, *w, cell.seed, budget);
}

/// Recompute an unknown-goal witness: A_0 built from the first world
/// sharing the witness world's nature, the candidate's output, and the
/// target's output in the witness world.
inline CellOutputs replay_unknown_goal_witness(const Machine& v, const Machine& exemplar, const Evidence& e,
                                               const Machine& target, const Machine& candidate, const Cell& cell,
                                               std::size_t budget = kDefaultBudget)
{
    const auto& worlds = e.worlds();
    const auto w = std::find_if(worlds.begin(), worlds.end(), [&](const World& x) { return x.label == cell.world; });
    if (w == worlds.end()) {
        throw std::invalid_argument("unknown witness world " + cell.world);
    }
    const auto r0 = std::find_if(worlds.begin(), worlds.end(), [&](const World& x) {
        return x.nature.fingerprint() == w->nature.fingerprint();
    });
    const Machine a0 = emulate_respondent(exemplar, r0->respondent, "A_0");
    const World pre = w->with_seed(cell.seed);
    const ExecutionResult r = execute(v, a0, pre, budget);
    CellOutputs out;
    out.accepted = r.transcript.accepted();
    out.steps = r.steps_used;
    out.got = run_post_processor(candidate, r, budget);
    out.expected = run_target(target, pre, budget);
    return out;
}

/// Recompute a randomness witness with A_0 and the candidate on zero tapes.
inline CellOutputs replay_random_witness(const Machine& v, const Machine& exemplar, const Evidence& e,
                                         const Machine& target, const Machine& candidate, const Cell& cell,
                                         std::size_t budget = kDefaultBudget)
{
    const auto& worlds = e.worlds();
    const auto w = std::find_if(worlds.begin(), worlds.end(), [&](const World& x) { return x.label == cell.world; });
    if (w == worlds.end() || !cell.target_seed) {
        throw std::invalid_argument("cell is not a randomness witness");
    }
    World pre = *w;
    pre.assignment = target_tape_assignment(cell.seed, *cell.target_seed);
    const ExecutionResult r = execute(v, with_zero_tape(exemplar, "A_0"), pre, budget);
    CellOutputs out;
    out.accepted = r.transcript.accepted();
    out.steps = r.steps_used;
    out.got = run_post_processor(with_zero_tape(candidate), r, budget);
    out.expected = run_target(target, pre, budget);
    return out;
}

}  // namespace foregone
