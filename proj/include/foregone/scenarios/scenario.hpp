#pragma once

#include "foregone/checkers.hpp"
#include "foregone/evidence.hpp"
#include "foregone/kernel.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace foregone::scenarios {

enum class CheckKind { Demonstrability, Conformity, Entailment, Counterexample, Monotonicity, ProbeUnknownGoal, ProbeRandom };

inline const char* to_string(CheckKind c)
{
    switch (c) {
    case CheckKind::Demonstrability:
        return "demonstrability";
    case CheckKind::Conformity:
        return "conformity";
    case CheckKind::Entailment:
        return "entailment";
    case CheckKind::Counterexample:
        return "counterexample";
    case CheckKind::Monotonicity:
        return "monotonicity";
    case CheckKind::ProbeUnknownGoal:
        return "probe-unknown-goal";
    case CheckKind::ProbeRandom:
        return "probe-random";
    }
    return "?";
}

inline std::optional<CheckKind> parse_check(std::string_view s)
{
    for (auto c : {CheckKind::Demonstrability, CheckKind::Conformity, CheckKind::Entailment, CheckKind::Counterexample,
                   CheckKind::Monotonicity, CheckKind::ProbeUnknownGoal, CheckKind::ProbeRandom}) {
        if (s == to_string(c)) {
            return c;
        }
    }
    return std::nullopt;
}

/// An expected verdict. For counterexample checks `cell` pins the
/// expected first failing (world, action, seed).
struct Expectation {
    CheckKind check = CheckKind::Demonstrability;
    std::string evidence;
    Verdict verdict = Verdict::Holds;
    std::string citation;
    std::optional<Cell> cell;
};

/// `stronger ⪰ weaker`, both naming evidence variants of the scenario.
struct MonotoneEdge {
    std::string weaker;
    std::string stronger;

    [[nodiscard]] std::string label() const { return stronger + ">=" + weaker; }
};

class UnknownParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using Params = std::map<std::string, Value, std::less<>>;

/// Defaults overlaid with overrides. Keys must exist in `defaults` and
/// keep their kind.
inline Params merge_params(const std::string& group, Params defaults, const Params& overrides)
{
    for (const auto& [key, v] : overrides) {
        auto it = defaults.find(key);
        if (it == defaults.end()) {
            throw UnknownParameter("scenario " + group + " has no parameter " + key);
        }
        if (it->second.kind() != v.kind()) {
            throw UnknownParameter("parameter " + group + "." + key + " expects a value like " + it->second.to_string());
        }
        it->second = v;
    }
    return defaults;
}

inline const std::string& param_bytes(const Params& p, std::string_view key) { return p.find(key)->second.as_bytes(); }
inline std::int64_t param_int(const Params& p, std::string_view key) { return p.find(key)->second.as_integer(); }

struct Scenario {
    std::string name;
    std::string citation;
    std::string summary;
    Machine verifier;
    Machine exemplar;
    Machine target;
    Machine post;
    ActionFamily family;
    std::vector<NamedMachine> candidates;  // post-processors the impossibility probes must defeat
    std::map<std::string, Evidence> evidence;
    std::vector<Expectation> expectations;
    std::vector<MonotoneEdge> edges;

    [[nodiscard]] const Evidence& variant(const std::string& label) const
    {
        auto it = evidence.find(label);
        if (it == evidence.end()) {
            throw std::out_of_range("scenario " + name + " has no " + label + " evidence");
        }
        return it->second;
    }

    void add_evidence(const std::string& label, Evidence e) { evidence.insert_or_assign(label, std::move(e)); }

    void expect(CheckKind check, std::string ev, Verdict verdict, std::string citation,
                std::optional<Cell> cell = std::nullopt)
    {
        expectations.push_back(Expectation{check, std::move(ev), verdict, std::move(citation), std::move(cell)});
    }
};

/// Expected first counterexample position.
inline Cell at_cell(std::string world, std::string action, std::uint64_t seed = 0)
{
    Cell c;
    c.world = std::move(world);
    c.action = std::move(action);
    c.seed = seed;
    return c;
}

}  // namespace foregone::scenarios
