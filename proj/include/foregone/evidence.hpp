#pragma once

#include "foregone/kernel.hpp"
#include "foregone/spec_order.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace foregone {

class EmptyFamily : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownAssertion : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionViolated : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using WorldCheck = std::function<bool(const World&)>;
using WorldExtension = std::function<std::optional<World>(const World&)>;
using SpecBuilder = std::function<Machine(const World&)>;

/// A human-readable assertion about every world in the family.
struct Assertion {
    std::string id;
    std::string text;
    WorldCheck check;        // empty when only declared
    bool droppable = false;
    WorldExtension extend;   // world admitted once the assertion is dropped
};

/// Where an asserted device lives: a fixed slot, or whichever slot a
/// respondent method reports.
class Locator {
public:
    static Locator at(Location l) { return Locator{l}; }
    static Locator reported_by(std::string respondent_method) { return Locator{std::move(respondent_method)}; }

    [[nodiscard]] std::optional<Location> resolve(const World& w, std::size_t budget = kDefaultBudget) const
    {
        if (const auto* l = std::get_if<Location>(&where_)) {
            return *l;
        }
        const auto& method = std::get<std::string>(where_);
        const Machine finder = Machine::program("locate", [method](Invocation& ctx) -> Output {
            return ctx.ask(method);
        });
        try {
            const Value v = run_target(finder, w, budget);
            if (v.kind() != Value::Kind::Location) {
                return std::nullopt;
            }
            return v.as_location();
        } catch (const KernelFault&) {
            return std::nullopt;
        } catch (const TargetNoOutput&) {
            return std::nullopt;
        }
    }

    [[nodiscard]] std::string to_string() const
    {
        if (const auto* l = std::get_if<Location>(&where_)) {
            return nature_id(*l);
        }
        return "N[R." + std::get<std::string>(where_) + "()]";
    }

    friend bool operator==(const Locator&, const Locator&) = default;

private:
    explicit Locator(std::variant<Location, std::string> w) : where_(std::move(w)) {}
    std::variant<Location, std::string> where_;
};

/// `spec ≺ N[where]`, or `spec ∼ N[where]` when `full` is set. The spec
/// may depend on asserted world facts (the password, the message, ...).
struct DeviceClaim {
    std::string id;
    Locator where = Locator::at(Location{0});
    SpecBuilder spec;
    std::vector<Value> alphabet;
    /// Inputs outside the spec's own domain, probed only for full claims.
    std::vector<Value> wide_alphabet;
    std::size_t depth = 3;
    bool full = false;
};

/// An enumerated, non-empty family of consistent worlds plus the
/// assertions that carve it out. Immutable once built.
class Evidence {
public:
    Evidence(std::string name, std::vector<World> worlds, std::vector<Assertion> assertions = {},
             std::vector<DeviceClaim> devices = {})
        : name_(std::move(name)), worlds_(std::move(worlds)), assertions_(std::move(assertions)),
          devices_(std::move(devices))
    {
        if (worlds_.empty()) {
            throw EmptyFamily("evidence " + name_ + " has no consistent world");
        }
        std::set<std::string> labels;
        for (const auto& w : worlds_) {
            if (!labels.insert(w.label).second) {
                throw std::invalid_argument("evidence " + name_ + " repeats world label " + w.label);
            }
        }
    }

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const std::vector<World>& worlds() const { return worlds_; }
    [[nodiscard]] const std::vector<Assertion>& assertions() const { return assertions_; }
    [[nodiscard]] const std::vector<DeviceClaim>& devices() const { return devices_; }
    [[nodiscard]] const std::map<std::string, std::vector<Value>>& languages() const { return languages_; }

    /// Declared membership language L_{R.z} of a world's respondent.
    [[nodiscard]] const std::vector<Value>* language_of(const World& w) const
    {
        auto it = languages_.find(w.label);
        return it == languages_.end() ? nullptr : &it->second;
    }

    [[nodiscard]] Evidence with_language(const std::string& world_label, std::vector<Value> language) const
    {
        Evidence copy = *this;
        copy.languages_[world_label] = std::move(language);
        return copy;
    }

    [[nodiscard]] Evidence renamed(std::string name) const
    {
        Evidence copy = *this;
        copy.name_ = std::move(name);
        return copy;
    }

    /// The subfamily of worlds satisfying `keep`, same assertions.
    [[nodiscard]] Evidence restricted(const std::function<bool(const World&)>& keep, std::string name) const
    {
        std::vector<World> kept;
        for (const auto& w : worlds_) {
            if (keep(w)) {
                kept.push_back(w);
            }
        }
        Evidence out(std::move(name), std::move(kept), assertions_, devices_);
        out.languages_ = languages_;
        return out;
    }

private:
    friend Evidence strengthen_to_full_spec(const Evidence&, const Locator&, std::string, std::size_t);
    friend Evidence strengthen_to_full_spec(const Evidence&, const Locator&, const Machine&, std::string,
                                            std::size_t);
    friend Evidence drop_assertion(const Evidence&, const std::string&, std::string);

    std::string name_;
    std::vector<World> worlds_;
    std::vector<Assertion> assertions_;
    std::vector<DeviceClaim> devices_;
    std::map<std::string, std::vector<Value>> languages_;
};

/// Membership by structural identity.
inline bool is_consistent(const Evidence& e, const World& w)
{
    const std::string fp = w.fingerprint();
    return std::any_of(e.worlds().begin(), e.worlds().end(),
                       [&](const World& x) { return x.fingerprint() == fp; });
}

/// `e2 ⪰ e1`: every world of e2 is a world of e1.
inline bool at_least_as_strong(const Evidence& e2, const Evidence& e1)
{
    std::set<std::string> wider;
    for (const auto& w : e1.worlds()) {
        wider.insert(w.fingerprint());
    }
    return std::all_of(e2.worlds().begin(), e2.worlds().end(),
                       [&](const World& w) { return wider.count(w.fingerprint()) != 0; });
}

namespace detail {

inline ProbeSettings claim_settings(const DeviceClaim& c, const World& w, Location at, std::size_t budget)
{
    ProbeSettings s;
    s.depth = c.depth;
    s.alphabet = c.alphabet;
    if (c.full) {
        s.alphabet.insert(s.alphabet.end(), c.wide_alphabet.begin(), c.wide_alphabet.end());
    }
    s.environment = w.nature;
    s.at = at;
    s.budget = budget;
    return s;
}

/// Probes the claim in one world. Empty result means it holds.
inline std::optional<std::string> claim_violation(const DeviceClaim& c, const World& w, std::size_t budget)
{
    const auto at = c.where.resolve(w, budget);
    if (!at) {
        return "cannot locate " + c.where.to_string();
    }
    if (!w.nature.contains(*at)) {
        return "no device at " + nature_id(*at);
    }
    const Machine spec = c.spec(w);
    const Machine& actual = w.nature.at(*at);
    const ProbeSettings s = claim_settings(c, w, *at, budget);
    if (auto d = find_divergence(spec, actual, s)) {
        return "device does not implement spec: " + d->to_string();
    }
    if (c.full) {
        if (auto d = find_divergence(actual, spec, s)) {
            return "device exceeds full spec: " + d->to_string();
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Replace the partial claim at `where` with a full one and keep the
/// worlds where the device is fully specified by it.
inline Evidence strengthen_to_full_spec(const Evidence& e, const Locator& where, std::string name,
                                        std::size_t budget = kDefaultBudget)
{
    auto it = std::find_if(e.devices_.begin(), e.devices_.end(),
                           [&](const DeviceClaim& c) { return c.where == where; });
    if (it == e.devices_.end()) {
        throw PreconditionViolated("evidence " + e.name() + " asserts nothing at " + where.to_string());
    }
    DeviceClaim full = *it;
    full.full = true;
    std::vector<World> kept;
    for (const auto& w : e.worlds()) {
        if (!detail::claim_violation(full, w, budget)) {
            kept.push_back(w);
        }
    }
    if (kept.empty()) {
        throw EmptyFamily("no world of " + e.name() + " is fully specified at " + where.to_string());
    }
    std::vector<DeviceClaim> devices = e.devices_;
    devices[static_cast<std::size_t>(it - e.devices_.begin())] = full;
    Evidence out(std::move(name), std::move(kept), e.assertions_, std::move(devices));
    out.languages_ = e.languages_;
    return out;
}

/// As above with an explicit spec machine, which must match every world.
inline Evidence strengthen_to_full_spec(const Evidence& e, const Locator& where, const Machine& spec,
                                        std::string name, std::size_t budget = kDefaultBudget)
{
    auto it = std::find_if(e.devices_.begin(), e.devices_.end(),
                           [&](const DeviceClaim& c) { return c.where == where; });
    if (it == e.devices_.end()) {
        throw PreconditionViolated("evidence " + e.name() + " asserts nothing at " + where.to_string());
    }
    Evidence replaced = e;
    replaced.devices_[static_cast<std::size_t>(it - e.devices_.begin())].spec = [spec](const World&) {
        return spec;
    };
    return strengthen_to_full_spec(replaced, where, std::move(name), budget);
}

/// Drop a droppable assertion. Each base world is followed by its
/// declared extension world, if any.
inline Evidence drop_assertion(const Evidence& e, const std::string& assertion_id, std::string name)
{
    auto it = std::find_if(e.assertions_.begin(), e.assertions_.end(),
                           [&](const Assertion& a) { return a.id == assertion_id; });
    if (it == e.assertions_.end()) {
        throw UnknownAssertion("evidence " + e.name() + " has no assertion " + assertion_id);
    }
    if (!it->droppable) {
        throw PreconditionViolated("assertion " + assertion_id + " is not droppable");
    }
    std::vector<World> worlds;
    std::set<std::string> seen;
    for (const auto& w : e.worlds()) {
        if (seen.insert(w.fingerprint()).second) {
            worlds.push_back(w);
        }
        if (it->extend) {
            if (auto x = it->extend(w); x && seen.insert(x->fingerprint()).second) {
                worlds.push_back(std::move(*x));
            }
        }
    }
    std::vector<Assertion> rest;
    for (const auto& a : e.assertions_) {
        if (a.id != assertion_id) {
            rest.push_back(a);
        }
    }
    Evidence out(std::move(name), std::move(worlds), std::move(rest), e.devices_);
    out.languages_ = e.languages_;
    return out;
}

struct AuditFinding {
    std::string evidence;
    std::string world;
    std::string claim;
    std::string reason;

    [[nodiscard]] std::string to_string() const
    {
        return evidence + "/" + world + ": " + claim + ": " + reason;
    }
};

/// Self-consistency: every world passes every checkable assertion and
/// every device claim, and carries a language when any world does.
inline std::vector<AuditFinding> audit_evidence(const Evidence& e, std::size_t budget = kDefaultBudget)
{
    std::vector<AuditFinding> out;
    for (const auto& w : e.worlds()) {
        for (const auto& a : e.assertions()) {
            if (a.check && !a.check(w)) {
                out.push_back({e.name(), w.label, a.id, "assertion does not hold"});
            }
        }
        for (const auto& c : e.devices()) {
            if (auto why = detail::claim_violation(c, w, budget)) {
                out.push_back({e.name(), w.label, c.id, *why});
            }
        }
        if (!e.languages().empty() && e.language_of(w) == nullptr) {
            out.push_back({e.name(), w.label, "language", "world has no declared language"});
        }
    }
    return out;
}

}  // namespace foregone
