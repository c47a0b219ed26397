#pragma once

#include "foregone/kernel.hpp"

#include <optional>
#include <string>
#include <vector>

namespace foregone {

struct ProbeCall {
    std::string method;
    Value input;

    friend bool operator==(const ProbeCall&, const ProbeCall&) = default;
};

struct StepOutcome {
    bool faulted = false;
    Output output;

    friend bool operator==(const StepOutcome&, const StepOutcome&) = default;

    [[nodiscard]] std::string to_string() const { return faulted ? "<fault>" : foregone::to_string(output); }
};

/// A probe sequence on which the candidate does not reproduce the spec.
struct Divergence {
    std::vector<ProbeCall> calls;  // empty when the candidate lacks a method outright
    std::string missing_method;
    StepOutcome spec;
    StepOutcome candidate;

    [[nodiscard]] std::string to_string() const
    {
        if (!missing_method.empty()) {
            return "candidate lacks method " + missing_method;
        }
        std::string out;
        for (const auto& c : calls) {
            out += c.method + "(" + c.input.to_string() + ");";
        }
        return out + " spec=" + spec.to_string() + " candidate=" + candidate.to_string();
    }
};

/// Bounds and surroundings for deciding the partial-specification order.
///
/// Every probe starts from the machines' initial state, placed at `at` in
/// a copy of `environment`, with both machines reading the same tapes.
struct ProbeSettings {
    std::size_t depth = 3;
    std::vector<Value> alphabet;
    Nature environment;
    Location at{0};
    std::uint64_t seed = 0;
    std::size_t budget = kDefaultBudget;
};

namespace detail {

inline World probe_world(const Machine& m, const ProbeSettings& s)
{
    World w;
    w.label = "probe";
    w.nature = s.environment;
    w.nature.place(s.at, m);
    w.assignment = RandomnessAssignment(s.seed);
    return w;
}

inline StepOutcome probe_step(World& w, const ProbeSettings& s, const ProbeCall& call)
{
    try {
        return StepOutcome{false, invoke(w, s.at, call.method, call.input, s.budget)};
    } catch (const KernelFault&) {
        return StepOutcome{true, std::nullopt};
    } catch (const ValueTypeError&) {
        return StepOutcome{true, std::nullopt};
    }
}

/// The candidate must match whenever the spec halts with output.
inline bool step_conforms(const StepOutcome& spec, const StepOutcome& cand)
{
    if (spec.faulted || !spec.output) {
        return true;
    }
    return !cand.faulted && cand.output == spec.output;
}

inline std::optional<Divergence> probe_dfs(const World& spec_w, const World& cand_w,
                                           const std::vector<std::string>& methods, const ProbeSettings& s,
                                           std::vector<ProbeCall>& path, std::size_t remaining)
{
    for (const auto& method : methods) {
        for (const auto& input : s.alphabet) {
            World sw = spec_w;
            World cw = cand_w;
            ProbeCall call{method, input};
            path.push_back(call);
            const StepOutcome so = probe_step(sw, s, call);
            const StepOutcome co = probe_step(cw, s, call);
            if (!step_conforms(so, co)) {
                return Divergence{path, {}, so, co};
            }
            if (remaining > 1) {
                if (auto d = probe_dfs(sw, cw, methods, s, path, remaining - 1)) {
                    return d;
                }
            }
            path.pop_back();
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Shortest probe (by iterative deepening) separating candidate from spec, if any.
/// Throws BudgetExceeded when a single probe step runs over budget.
inline std::optional<Divergence> find_divergence(const Machine& spec, const Machine& candidate,
                                                 const ProbeSettings& settings)
{
    const auto methods = spec.method_names();
    for (const auto& m : methods) {
        if (!candidate.has_method(m)) {
            Divergence d;
            d.missing_method = m;
            return d;
        }
    }
    const World spec_w = detail::probe_world(spec, settings);
    const World cand_w = detail::probe_world(candidate, settings);
    for (std::size_t d = 1; d <= settings.depth; ++d) {
        std::vector<ProbeCall> path;
        if (auto div = detail::probe_dfs(spec_w, cand_w, methods, settings, path, d)) {
            return div;
        }
    }
    return std::nullopt;
}

/// Replays one probe sequence from the initial state, reporting each step.
inline std::vector<StepOutcome> replay_probe(const Machine& m, const std::vector<ProbeCall>& calls,
                                             const ProbeSettings& settings)
{
    World w = detail::probe_world(m, settings);
    std::vector<StepOutcome> out;
    for (const auto& c : calls) {
        out.push_back(detail::probe_step(w, settings, c));
    }
    return out;
}

/// Bounded `spec ≺ candidate`.
inline bool bounded_implements(const Machine& spec, const Machine& candidate, const ProbeSettings& settings)
{
    return !find_divergence(spec, candidate, settings).has_value();
}

inline bool bounded_implements(const Machine& spec, const Machine& candidate, std::size_t depth,
                               std::vector<Value> alphabet)
{
    ProbeSettings s;
    s.depth = depth;
    s.alphabet = std::move(alphabet);
    return bounded_implements(spec, candidate, s);
}

/// Bounded `a ∼ b`: implementation in both directions.
inline bool bounded_equivalent(const Machine& a, const Machine& b, const ProbeSettings& settings)
{
    return bounded_implements(a, b, settings) && bounded_implements(b, a, settings);
}

inline bool bounded_equivalent(const Machine& a, const Machine& b, std::size_t depth, std::vector<Value> alphabet)
{
    ProbeSettings s;
    s.depth = depth;
    s.alphabet = std::move(alphabet);
    return bounded_equivalent(a, b, s);
}

}  // namespace foregone
