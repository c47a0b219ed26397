#pragma once

#include "foregone/evidence.hpp"
#include "foregone/scenarios/commitment.hpp"
#include "foregone/scenarios/hash.hpp"
#include "foregone/scenarios/hybrid.hpp"
#include "foregone/scenarios/otp_table.hpp"
#include "foregone/scenarios/password.hpp"
#include "foregone/scenarios/scenario.hpp"
#include "foregone/scenarios/two_factor.hpp"
#include "foregone/scenarios/unknown_goal.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace foregone::scenarios {

/// Raised when a built scenario fails its own evidence audit or invariants.
class MalformedScenario : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Overrides keyed by parameter group, then parameter name.
using Overrides = std::map<std::string, Params, std::less<>>;

struct RegistryEntry {
    std::string name;
    std::string group;  // parameter namespace shared by related scenarios
    std::string citation;
    std::function<Params()> defaults;
    std::function<Scenario(const Params&)> build;
};

namespace detail {

inline Params merged(std::initializer_list<Params> parts)
{
    Params out;
    for (const auto& p : parts) {
        out.insert(p.begin(), p.end());
    }
    return out;
}

}  // namespace detail

/// Every scenario, in listing order.
inline const std::vector<RegistryEntry>& registry()
{
    static const std::vector<RegistryEntry> entries = [] {
        std::vector<RegistryEntry> r;
        const auto add = [&r](std::string name, std::string group, std::function<Params()> defaults,
                              std::function<Scenario(const Params&)> build) {
            const std::string citation = build(defaults()).citation;
            r.push_back({std::move(name), std::move(group), citation, std::move(defaults), std::move(build)});
        };
        add("password", "password", password_defaults, build_password);
        add("deniable", "deniable", deniable_defaults, build_deniable);
        add("deniable/known-file", "deniable", deniable_defaults, build_deniable_known_file);
        add("hybrid", "hybrid", hybrid_defaults, build_hybrid);
        add("two-factor", "two-factor", two_factor_defaults, build_two_factor);
        add("hash/injective", "hash", hash_defaults, build_hash_injective);
        add("hash/colliding", "hash", hash_defaults, build_hash_colliding);
        add("decommit", "decommit", decommit_defaults, build_decommit);
        add("decommit/tf", "decommit", decommit_defaults, build_decommit_tf);
        for (const bool known : {false, true}) {
            for (const KeyMode mode : {KeyMode::Respondent, KeyMode::Fixed, KeyMode::Sampled}) {
                add(std::string("otp-table/") + (known ? "known-" : "secret-") + to_string(mode), "otp-table",
                    otp_defaults, [known, mode](const Params& p) { return build_otp_cell(p, known, mode); });
            }
        }
        add("otp-table/enc-fixed", "otp-table", otp_defaults, [](const Params& p) { return build_enc_cell(p, false); });
        add("otp-table/enc-fresh", "otp-table", otp_defaults, [](const Params& p) { return build_enc_cell(p, true); });
        const auto ug_defaults = [] { return detail::merged({whereabouts_defaults(), commitment_probe_defaults()}); };
        add("unknown-goal/whereabouts", "unknown-goal", ug_defaults,
            [](const Params& p) { return build_whereabouts(p, false, false); });
        add("unknown-goal/whereabouts-overlap", "unknown-goal", ug_defaults,
            [](const Params& p) { return build_whereabouts(p, true, false); });
        add("unknown-goal/single", "unknown-goal", ug_defaults,
            [](const Params& p) { return build_whereabouts(p, false, true); });
        add("unknown-goal/com-fresh", "unknown-goal", ug_defaults,
            [](const Params& p) { return build_commitment_probe(p, ""); });
        add("unknown-goal/com-fixed", "unknown-goal", ug_defaults,
            [](const Params& p) { return build_commitment_probe(p, "transparent"); });
        add("unknown-goal/com-fixed-degenerate", "unknown-goal", ug_defaults,
            [](const Params& p) { return build_commitment_probe(p, "constant"); });
        add("coin", "coin", coin_defaults, [](const Params& p) { return build_coin(p, false); });
        add("coin/const", "coin", coin_defaults, [](const Params& p) { return build_coin(p, true); });
        return r;
    }();
    return entries;
}

inline const RegistryEntry* find_entry(std::string_view name)
{
    const auto& r = registry();
    auto it = std::find_if(r.begin(), r.end(), [&](const RegistryEntry& e) { return e.name == name; });
    return it == r.end() ? nullptr : &*it;
}

/// Entries named `name`, or every entry of group `name`.
inline std::vector<const RegistryEntry*> select_entries(std::string_view name)
{
    std::vector<const RegistryEntry*> out;
    if (const auto* e = find_entry(name)) {
        out.push_back(e);
        return out;
    }
    for (const auto& e : registry()) {
        if (e.group == name) {
            out.push_back(&e);
        }
    }
    return out;
}

/// Parameter groups and their defaults.
inline std::map<std::string, Params> parameter_groups()
{
    std::map<std::string, Params> out;
    for (const auto& e : registry()) {
        out.emplace(e.group, e.defaults());
    }
    return out;
}

/// Rejects overrides for unknown groups or parameters.
inline void validate_overrides(const Overrides& overrides)
{
    const auto groups = parameter_groups();
    for (const auto& [group, params] : overrides) {
        auto it = groups.find(group);
        if (it == groups.end()) {
            throw UnknownParameter("no scenario group " + group);
        }
        (void)merge_params(group, it->second, params);
    }
}

/// Structural invariants of a built scenario.
inline std::vector<std::string> scenario_defects(const Scenario& s, std::size_t budget = kDefaultBudget)
{
    std::vector<std::string> out;
    const auto& acts = s.family.actions;
    if (s.family.includes_exemplar &&
        std::none_of(acts.begin(), acts.end(), [&](const NamedMachine& a) { return a.label == s.exemplar.name(); })) {
        out.push_back(s.name + ": exemplar " + s.exemplar.name() + " is not in the action family");
    }
    for (const auto& x : s.expectations) {
        if (x.citation.empty()) {
            out.push_back(s.name + ": expectation without citation");
        }
    }
    for (const auto& [label, e] : s.evidence) {
        for (const auto& f : audit_evidence(e, budget)) {
            out.push_back(s.name + ": " + f.to_string());
        }
    }
    for (const auto& edge : s.edges) {
        const Evidence& weaker = s.variant(edge.weaker);
        const Evidence& stronger = s.variant(edge.stronger);
        if (!at_least_as_strong(stronger, weaker)) {
            out.push_back(s.name + ": " + edge.label() + " is not a strengthening");
        }
    }
    return out;
}

/// Builds an entry with its group's overrides applied and audits it.
inline Scenario load_scenario(const RegistryEntry& entry, const Overrides& overrides = {},
                              std::size_t budget = kDefaultBudget)
{
    const auto it = overrides.find(entry.group);
    const Params p = merge_params(entry.group, entry.defaults(), it == overrides.end() ? Params{} : it->second);
    Scenario s = entry.build(p);
    if (const auto defects = scenario_defects(s, budget); !defects.empty()) {
        throw MalformedScenario(defects.front());
    }
    return s;
}

}  // namespace foregone::scenarios
