#pragma once

#include "foregone/checkers.hpp"
#include "foregone/crypto_toys.hpp"
#include "foregone/scenarios/registry.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace foregone::scenarios {

/// Per-world conformity of the exemplar, reported like the other checks.
inline CheckReport check_exemplar_conformity(const Scenario& s, const Evidence& e, const CheckOptions& opts)
{
    const auto& worlds = e.worlds();
    return foregone::detail::sweep_worlds(worlds.size(), opts, [&](std::size_t i) {
        foregone::detail::WorldPass p;
        const World& w = worlds[i];
        for (std::uint64_t seed : opts.seeds) {
            const ExecutionResult r = execute(s.verifier, s.exemplar, w.with_seed(seed), opts.budget);
            ++p.cells;
            p.budget = std::max(p.budget, r.steps_used);
            if (!p.first && !r.transcript.accepted()) {
                p.first = Cell{w.label, s.exemplar.name(), seed, bytes("Accept"),
                               bytes(to_string(*r.transcript.verdict()))};
            }
        }
        return p;
    });
}

inline const MonotoneEdge& edge_for(const Scenario& s, const std::string& label)
{
    for (const auto& e : s.edges) {
        if (e.label() == label) {
            return e;
        }
    }
    throw std::out_of_range("scenario " + s.name + " has no evidence edge " + label);
}

/// Runs one check against the named evidence variant (an edge label for
/// monotonicity).
inline CheckReport run_check(const Scenario& s, CheckKind kind, const std::string& evidence,
                             const CheckOptions& opts = {})
{
    switch (kind) {
    case CheckKind::Demonstrability:
        return check_demonstrability(s.verifier, s.exemplar, s.variant(evidence), opts);
    case CheckKind::Conformity:
        return check_exemplar_conformity(s, s.variant(evidence), opts);
    case CheckKind::Entailment:
    case CheckKind::Counterexample:
        return check_entailment(s.verifier, s.target, s.post, s.variant(evidence), s.family, opts);
    case CheckKind::Monotonicity: {
        const MonotoneEdge& edge = edge_for(s, evidence);
        return check_monotonicity(s.verifier, s.exemplar, s.variant(edge.weaker), s.variant(edge.stronger), opts);
    }
    case CheckKind::ProbeUnknownGoal:
        return probe_unknown_goal(s.verifier, s.exemplar, s.variant(evidence), s.target, s.candidates, opts);
    case CheckKind::ProbeRandom:
        return probe_random_target(s.verifier, s.exemplar, s.variant(evidence), s.target, s.candidates, opts);
    }
    throw std::logic_error("unhandled check");
}

/// Verdict agrees and, when the expectation pins a cell, the first
/// counterexample sits there.
inline bool matches(const Expectation& x, const CheckReport& r)
{
    if (x.verdict != r.verdict) {
        return false;
    }
    if (!x.cell) {
        return true;
    }
    return r.counterexample && r.counterexample->world == x.cell->world &&
           r.counterexample->action == x.cell->action && r.counterexample->seed == x.cell->seed;
}

/// The expectation a `run` refers to: the first with this check whose
/// evidence is `evidence`, or any evidence when `evidence` is empty. For
/// monotonicity a bare variant name selects the first edge into it.
inline const Expectation* find_expectation(const Scenario& s, CheckKind kind, const std::string& evidence)
{
    for (const auto& x : s.expectations) {
        if (x.check != kind) {
            continue;
        }
        if (evidence.empty() || x.evidence == evidence) {
            return &x;
        }
        if (kind == CheckKind::Monotonicity && x.evidence.rfind(evidence + ">=", 0) == 0) {
            return &x;
        }
    }
    return nullptr;
}

struct ExpectationResult {
    std::string scenario;
    Expectation expectation;
    CheckReport report;
    bool matched = false;
};

inline ExpectationResult evaluate(const Scenario& s, const Expectation& x, const CheckOptions& opts)
{
    ExpectationResult out{s.name, x, run_check(s, x.check, x.evidence, opts), false};
    out.matched = matches(x, out.report);
    return out;
}

inline std::vector<ExpectationResult> evaluate_all(const Scenario& s, const CheckOptions& opts)
{
    std::vector<ExpectationResult> out;
    for (const auto& x : s.expectations) {
        out.push_back(evaluate(s, x, opts));
    }
    return out;
}

struct SweepResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Exhaustive property sweeps of the toy primitives over 1-byte domains
/// (2 bytes for hash collisions).
inline std::vector<SweepResult> crypto_sweeps()
{
    std::vector<SweepResult> out;
    for (const auto& s : {toys::transparent_scheme(), toys::xor_pad_scheme(), toys::constant_scheme()}) {
        const auto bad = toys::correctness_sweep(s, 1);
        out.push_back({"correctness/" + s.name, !bad, bad ? "fails on " + Value::bytes(bad->x).to_string() : ""});
        const auto twice = toys::double_opening_sweep(s, 1);
        const bool binding = s.binding == toys::BindingClass::PerfectlyBinding;
        out.push_back({"double-opening/" + s.name, binding == !twice,
                       twice ? "opens " + Value::bytes(twice->c).to_string() + " twice" : "no double opening"});
    }
    out.push_back({"fixed-r/transparent", toys::fixed_r_hypothesis_holds(toys::transparent_scheme(), "r", 1), ""});
    out.push_back({"fixed-r/constant", !toys::fixed_r_hypothesis_holds(toys::constant_scheme(), "r", 1), ""});
    for (const auto& h : {toys::injective_hash(), toys::colliding_hash()}) {
        const auto c = toys::collision_sweep(h, 2);
        out.push_back({"collisions/" + h.name, h.injective == !c,
                       c ? Value::bytes(c->first).to_string() + " ~ " + Value::bytes(c->second).to_string() : ""});
    }
    return out;
}

}  // namespace foregone::scenarios
