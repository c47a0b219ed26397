#pragma once

#include "foregone/scenarios/common.hpp"
#include "foregone/scenarios/scenario.hpp"

#include <string>
#include <vector>

namespace foregone::scenarios {

//
// Devices and respondents
//

/// prompt(x) unlocks on the exact password; read() returns m once unlocked, else ⊥.
inline Machine password_device(const Value& pwd, const Value& m)
{
    Machine d("D_pwd");
    d.var("pwd", pwd).var("m", m).var("decrypted", Value::boolean(false));
    d.method("prompt", [](Invocation& ctx) -> Output {
        if (ctx.input() == ctx.get("pwd")) {
            ctx.set("decrypted", Value::boolean(true));
        }
        return std::nullopt;
    });
    d.method("read", [](Invocation& ctx) -> Output {
        return ctx.get("decrypted").as_bool() ? ctx.get("m") : Value{};
    });
    return d;
}

/// D_pwd plus a duress password: prompt((duress, m′)) replaces m with m′ and unlocks.
inline Machine deniable_device(const Value& pwd, const Value& m, const Value& duress, bool duress_enabled = true)
{
    Machine d("D_deny");
    d.var("pwd", pwd).var("m", m).var("decrypted", Value::boolean(false));
    d.var("duress", duress).var("duress_enabled", Value::boolean(duress_enabled));
    d.method("prompt", [](Invocation& ctx) -> Output {
        const Value& x = ctx.input();
        if (x == ctx.get("pwd")) {
            ctx.set("decrypted", Value::boolean(true));
        } else if (ctx.get("duress_enabled").as_bool() && x.is_pair() && x.first() == ctx.get("duress")) {
            ctx.set("m", x.second());
            ctx.set("decrypted", Value::boolean(true));
        }
        return std::nullopt;
    });
    d.method("read", [](Invocation& ctx) -> Output {
        return ctx.get("decrypted").as_bool() ? ctx.get("m") : Value{};
    });
    return d;
}

inline Machine password_respondent(const Value& pwd)
{
    Machine r("R_pwd");
    r.var("pwd", pwd);
    r.method("pwd", [](Invocation& ctx) -> Output { return ctx.get("pwd"); });
    return r;
}

inline Machine deniable_respondent(const Value& pwd, const Value& duress)
{
    Machine r("R_deny");
    r.var("pwd", pwd).var("duress", duress);
    r.method("pwd", [](Invocation& ctx) -> Output { return ctx.get("pwd"); });
    r.method("duress", [](Invocation& ctx) -> Output { return ctx.get("duress"); });
    return r;
}

/// Halts without output on every call.
inline Machine silent_respondent()
{
    Machine r("R_bot");
    r.method("pwd", [](Invocation&) -> Output { return std::nullopt; });
    return r;
}

//
// Verifier, actions, target, post-processor
//

inline Machine password_verifier()
{
    return Machine::program("V_pwd", [](Invocation& ctx) -> Output {
        const Output m = ctx.call(kDevice, "read");
        return Value::boolean(m && !m->is_null());
    });
}

/// Files listed in a device message, separated by ';'.
inline std::vector<std::string> file_entries(const std::string& m)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= m.size()) {
        const std::size_t end = m.find(';', start);
        out.push_back(m.substr(start, end == std::string::npos ? std::string::npos : end - start));
        if (end == std::string::npos) {
            break;
        }
        start = end + 1;
    }
    return out;
}

/// V_pwd that also requires `known_file` among the decrypted entries.
inline Machine known_file_verifier(const std::string& known_file)
{
    return Machine::program("V_knownFile", [known_file](Invocation& ctx) -> Output {
        const Output m = ctx.call(kDevice, "read");
        if (!m || !m->is_bytes()) {
            return Value::boolean(false);
        }
        for (const auto& f : file_entries(m->as_bytes())) {
            if (f == known_file) {
                return Value::boolean(true);
            }
        }
        return Value::boolean(false);
    });
}

inline Machine password_exemplar()
{
    return Machine::program("A*_pwd", [](Invocation& ctx) -> Output {
        ctx.call(kDevice, "prompt", ctx.ask("pwd").value_or(Value{}));
        return std::nullopt;
    });
}

/// Mistypes once, then enters the password.
inline Machine typo_retry_action()
{
    return Machine::program("A_typoRetry", [](Invocation& ctx) -> Output {
        const Value pwd = ctx.ask("pwd").value_or(Value{});
        const Value typo = pwd.is_bytes() ? text(pwd.as_bytes() + "#") : Value{};
        ctx.call(kDevice, "prompt", typo);
        ctx.call(kDevice, "prompt", pwd);
        return std::nullopt;
    });
}

/// Enters the password twice.
inline Machine double_entry_action()
{
    return Machine::program("A_twice", [](Invocation& ctx) -> Output {
        const Value pwd = ctx.ask("pwd").value_or(Value{});
        ctx.call(kDevice, "prompt", pwd);
        ctx.call(kDevice, "prompt", pwd);
        return std::nullopt;
    });
}

/// Unlocks with the duress password, replacing the contents by `msg`.
inline Machine duress_action(const Value& msg)
{
    return Machine::program("A_duress", [msg](Invocation& ctx) -> Output {
        const Output duress = ctx.ask("duress");
        ctx.call(kDevice, "prompt", Value::pair(duress.value_or(Value{}), msg));
        return std::nullopt;
    });
}

inline Machine password_target()
{
    return Machine::program("T_pwd", [](Invocation& ctx) -> Output {
        ctx.call(kDevice, "prompt", ctx.ask("pwd").value_or(Value{}));
        return ctx.call(kDevice, "read").value_or(Value{});
    });
}

inline Machine password_post() { return read_post("P_pwd", kDevice); }

//
// Worlds and evidence
//

inline World password_world(const std::string& label, const Value& pwd, const Value& m)
{
    World w;
    w.label = label;
    w.nature.place(kDevice, password_device(pwd, m));
    w.respondent = password_respondent(pwd);
    w.facts = {{"pwd", pwd}, {"m", m}};
    return w;
}

inline World deniable_world(const std::string& label, const Value& pwd, const Value& m, const Value& duress,
                            bool enabled)
{
    World w;
    w.label = label;
    w.nature.place(kDevice, deniable_device(pwd, m, duress, enabled));
    w.respondent = deniable_respondent(pwd, duress);
    w.facts = {{"pwd", pwd}, {"m", m}};
    return w;
}

/// The password assertions: a D_pwd-like device at ℓ_D with m ≠ ⊥, and
/// (starred, droppable) the respondent's pwd() returns its password.
inline Evidence password_evidence(const std::string& name, std::vector<World> worlds, const Value& duress_probe)
{
    Assertion star;
    star.id = "star";
    star.text = "R.pwd() returns D.pwd";
    star.droppable = true;
    star.check = [](const World& w) {
        try {
            return run_target(ask_target("pwd?", "pwd"), w) == w.fact("pwd");
        } catch (const std::exception&) {
            return false;
        }
    };
    star.extend = [](const World& w) -> std::optional<World> {
        World x = w;
        x.label = w.label + "+R_bot";
        x.respondent = silent_respondent();
        return x;
    };
    Assertion nonnull;
    nonnull.id = "m-nonnull";
    nonnull.text = "D.m is not ⊥";
    nonnull.check = [](const World& w) { return !w.fact("m").is_null(); };

    DeviceClaim dev;
    dev.id = "device";
    dev.where = Locator::at(kDevice);
    dev.spec = [](const World& w) { return password_device(w.fact("pwd"), w.fact("m")); };
    dev.alphabet = {Value{}, text("wrong")};
    for (const auto& w : worlds) {
        dev.alphabet.push_back(w.fact("pwd"));
    }
    dev.wide_alphabet = {Value::pair(duress_probe, text("cats"))};
    dev.depth = 3;
    return Evidence(name, std::move(worlds), {star, nonnull}, {dev});
}

inline Params password_defaults()
{
    return {
        {"pwd", text("hunter2")},        {"m", text("tax-records")},  {"pwd_alt", text("swordfish")},
        {"m_alt", text("ledger")},       {"deny_pwd", text("letmein")}, {"deny_m", text("photos")},
        {"duress", text("panic")},       {"duress_msg", text("cats")}, {"duress_enabled", Value::integer(1)},
    };
}

inline Scenario build_password(const Params& p)
{
    const Value pwd = p.at("pwd"), m = p.at("m"), duress = p.at("duress");
    Scenario s;
    s.name = "password";
    s.citation = "enter-a-password figure and claims";
    s.summary = "compelled decryption by entering a password";
    s.verifier = password_verifier();
    s.exemplar = password_exemplar();
    s.target = password_target();
    s.post = password_post();

    std::vector<World> worlds{
        password_world("pwd-a", pwd, m),
        password_world("pwd-b", p.at("pwd_alt"), p.at("m_alt")),
        deniable_world("deny", p.at("deny_pwd"), p.at("deny_m"), duress, param_int(p, "duress_enabled") != 0),
    };
    const Evidence weak = password_evidence("E_pwd", worlds, duress);
    s.add_evidence("weak", weak);
    s.add_evidence("strong", strengthen_to_full_spec(weak, Locator::at(kDevice), "E_Dpwd"));
    s.add_evidence("star", drop_assertion(weak, "star", "E_star"));

    const Machine r0 = worlds.front().respondent;
    s.family.includes_exemplar = true;
    s.family.actions = {
        {"A*_pwd", s.exemplar},
        {"A_typoRetry", typo_retry_action()},
        {"A_twice", double_entry_action()},
        {"A_nothing", do_nothing()},
        {"A_bot", emulate_respondent(s.exemplar, silent_respondent(), "A_bot")},
        {"A_0", emulate_respondent(s.exemplar, r0, "A_0")},
        {"A_duress", duress_action(p.at("duress_msg"))},
    };

    s.expect(CheckKind::Demonstrability, "weak", Verdict::Holds, "password verifier is demonstrable");
    s.expect(CheckKind::Demonstrability, "strong", Verdict::Holds, "password verifier is demonstrable");
    s.expect(CheckKind::Demonstrability, "star", Verdict::Fails,
             "without the starred assertion the respondent may halt silently");
    s.expect(CheckKind::Conformity, "strong", Verdict::Holds, "exemplar conforms in every full-spec world");
    s.expect(CheckKind::Entailment, "strong", Verdict::Holds, "password verifier entails the decryption target");
    s.expect(CheckKind::Entailment, "weak", Verdict::Fails, "deniable device is consistent with the partial spec");
    s.expect(CheckKind::Entailment, "star", Verdict::Fails, "decryption target is not entailable without the star");
    s.expect(CheckKind::Counterexample, "star", Verdict::Fails,
             "post-processor output is independent of the silent respondent", at_cell("pwd-a+R_bot", "A_0"));
    s.expect(CheckKind::Counterexample, "weak", Verdict::Fails, "duress password overwrites the contents",
             at_cell("deny", "A_duress"));
    s.expect(CheckKind::Monotonicity, "strong>=weak", Verdict::Holds, "demonstrability is monotone in evidence");
    s.expect(CheckKind::Monotonicity, "weak>=star", Verdict::Holds, "demonstrability is monotone in evidence");
    s.expect(CheckKind::Monotonicity, "strong>=star", Verdict::Holds, "demonstrability is monotone in evidence");
    s.edges = {{"weak", "strong"}, {"star", "weak"}, {"star", "strong"}};
    return s;
}

inline Params deniable_defaults()
{
    return {
        {"pwd", text("hunter2")},
        {"m", text("tax.pdf;budget.xls")},
        {"deny_pwd", text("letmein")},
        {"deny_m", text("tax.pdf;photos")},
        {"duress", text("panic")},
        {"duress_msg", text("cats")},
        {"duress_enabled", Value::integer(1)},
        {"known_file", text("tax.pdf")},
    };
}

namespace detail {

inline Scenario deniable_base(const Params& p)
{
    const Value duress = p.at("duress");
    Scenario s;
    s.exemplar = password_exemplar();
    s.target = password_target();
    s.post = password_post();
    std::vector<World> worlds{
        deniable_world("deny", p.at("deny_pwd"), p.at("deny_m"), duress, param_int(p, "duress_enabled") != 0),
        password_world("plain", p.at("pwd"), p.at("m")),
    };
    const Evidence weak = password_evidence("E_pwd+deny", worlds, duress);
    s.add_evidence("weak", weak);
    s.add_evidence("strong", strengthen_to_full_spec(weak, Locator::at(kDevice), "E_Dpwd"));
    s.family.includes_exemplar = true;
    s.family.actions = {
        {"A*_pwd", s.exemplar},
        {"A_typoRetry", typo_retry_action()},
        {"A_duress", duress_action(p.at("duress_msg"))},
        {"A_nothing", do_nothing()},
    };
    s.edges = {{"weak", "strong"}};
    return s;
}

}  // namespace detail

inline Scenario build_deniable(const Params& p)
{
    Scenario s = detail::deniable_base(p);
    s.name = "deniable";
    s.citation = "deniable encryption discussion";
    s.summary = "duress password defeats entailment but not demonstrability";
    s.verifier = password_verifier();
    s.expect(CheckKind::Demonstrability, "weak", Verdict::Holds, "the same verifier stays demonstrable");
    s.expect(CheckKind::Entailment, "weak", Verdict::Fails, "entailment fails once the device may be deniable");
    s.expect(CheckKind::Counterexample, "weak", Verdict::Fails, "duress action conforms and overwrites the contents",
             at_cell("deny", "A_duress"));
    s.expect(CheckKind::Entailment, "strong", Verdict::Holds, "full spec rules out deniability");
    s.expect(CheckKind::Monotonicity, "strong>=weak", Verdict::Holds, "demonstrability is monotone in evidence");
    return s;
}

/// V_pwd strengthened with a known file entry. Holds over the declared
/// family only: an action writing the known file under duress is not in it.
inline Scenario build_deniable_known_file(const Params& p)
{
    Scenario s = detail::deniable_base(p);
    s.name = "deniable/known-file";
    s.citation = "checking for a known file blocks the duress password";
    s.summary = "verifier requires a known file among the decrypted entries";
    s.verifier = known_file_verifier(param_bytes(p, "known_file"));
    s.expect(CheckKind::Demonstrability, "weak", Verdict::Holds, "known-file verifier is demonstrable");
    s.expect(CheckKind::Entailment, "weak", Verdict::Holds, "duress overwrite no longer conforms");
    s.expect(CheckKind::Monotonicity, "strong>=weak", Verdict::Holds, "demonstrability is monotone in evidence");
    return s;
}

}  // namespace foregone::scenarios
