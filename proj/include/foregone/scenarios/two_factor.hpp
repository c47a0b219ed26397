#pragma once

#include "foregone/scenarios/common.hpp"
#include "foregone/scenarios/scenario.hpp"

#include <string>
#include <vector>

namespace foregone::scenarios {

/// Holds the most recent code D sent it.
inline Machine second_device()
{
    Machine s("S");
    s.var("code", Value{});
    s.method("setCode", [](Invocation& ctx) -> Output {
        ctx.set("code", ctx.input());
        return std::nullopt;
    });
    s.method("getCode", [](Invocation& ctx) -> Output { return ctx.get("code"); });
    return s;
}

/// promptPwd draws a fresh 2-byte code and forwards it to S at `second`;
/// promptCode unlocks only after the password and only on that code.
inline Machine two_factor_device(const Value& pwd, const Value& m, Location second)
{
    Machine d("D_2fa");
    d.var("pwd", pwd).var("m", m).var("second", Value::location(second));
    d.var("code", Value{}).var("gotPwd", Value::boolean(false)).var("decrypted", Value::boolean(false));
    d.method("promptPwd", [](Invocation& ctx) -> Output {
        if (ctx.input() == ctx.get("pwd")) {
            const Value code = Value::bytes(ctx.tape().bytes(2));
            ctx.set("code", code);
            ctx.set("gotPwd", Value::boolean(true));
            ctx.call(ctx.get("second").as_location(), "setCode", code);
        }
        return std::nullopt;
    });
    d.method("promptCode", [](Invocation& ctx) -> Output {
        if (ctx.get("gotPwd").as_bool() && ctx.input() == ctx.get("code")) {
            ctx.set("decrypted", Value::boolean(true));
        }
        return std::nullopt;
    });
    d.method("read", [](Invocation& ctx) -> Output {
        return ctx.get("decrypted").as_bool() ? ctx.get("m") : Value{};
    });
    return d;
}

/// D_2fa plus recover(x): unlocks and replaces the contents with x.
inline Machine recoverable_device(const Value& pwd, const Value& m, Location second)
{
    Machine d = two_factor_device(pwd, m, second);
    d.method("recover", [](Invocation& ctx) -> Output {
        ctx.set("m", ctx.input());
        ctx.set("decrypted", Value::boolean(true));
        return std::nullopt;
    });
    return d;
}

inline Machine two_factor_respondent(const Value& pwd, Location second)
{
    Machine r("R_2fa");
    r.var("pwd", pwd).var("second", Value::location(second));
    r.method("pwd", [](Invocation& ctx) -> Output { return ctx.get("pwd"); });
    r.method("findSecond", [](Invocation& ctx) -> Output { return ctx.get("second"); });
    return r;
}

namespace detail {

inline void enter_both_factors(Invocation& ctx, const Value& pwd, const Value& second)
{
    ctx.call(kDevice, "promptPwd", pwd);
    const Value code = second.kind() == Value::Kind::Location ? ctx.call(second, "getCode").value_or(Value{})
                                                              : Value{};
    ctx.call(kDevice, "promptCode", code);
}

}  // namespace detail

inline Machine two_factor_verifier()
{
    return Machine::program("V_2fa", [](Invocation& ctx) -> Output {
        const Output m = ctx.call(kDevice, "read");
        return Value::boolean(m && !m->is_null());
    });
}

inline Machine two_factor_exemplar()
{
    return Machine::program("A*_2fa", [](Invocation& ctx) -> Output {
        const Value pwd = ctx.ask("pwd").value_or(Value{});
        const Value second = ctx.ask("findSecond").value_or(Value{});
        detail::enter_both_factors(ctx, pwd, second);
        return std::nullopt;
    });
}

/// Locates S before asking for the password.
inline Machine two_factor_reordered()
{
    return Machine::program("A_reordered", [](Invocation& ctx) -> Output {
        const Value second = ctx.ask("findSecond").value_or(Value{});
        const Value pwd = ctx.ask("pwd").value_or(Value{});
        detail::enter_both_factors(ctx, pwd, second);
        return std::nullopt;
    });
}

inline Machine recover_action(const Value& x)
{
    return Machine::program("A_recover", [x](Invocation& ctx) -> Output {
        ctx.call(kDevice, "recover", x);
        return std::nullopt;
    });
}

inline Machine two_factor_target()
{
    return Machine::program("T_2fa", [](Invocation& ctx) -> Output {
        const Value pwd = ctx.ask("pwd").value_or(Value{});
        const Value second = ctx.ask("findSecond").value_or(Value{});
        detail::enter_both_factors(ctx, pwd, second);
        return ctx.call(kDevice, "read").value_or(Value{});
    });
}

inline World two_factor_world(const std::string& label, const Value& pwd, const Value& m, Location second,
                              bool recoverable = false)
{
    World w;
    w.label = label;
    w.nature.place(kDevice, recoverable ? recoverable_device(pwd, m, second) : two_factor_device(pwd, m, second));
    w.nature.place(second, second_device());
    w.respondent = two_factor_respondent(pwd, second);
    w.facts = {{"pwd", pwd}, {"m", m}, {"second", Value::location(second)}};
    return w;
}

inline Params two_factor_defaults()
{
    return {
        {"pwd", text("hunter2")},     {"m", text("inbox")},     {"second", Value::integer(2)},
        {"pwd_alt", text("opensesame")}, {"m_alt", text("drafts")}, {"second_alt", Value::integer(5)},
        {"recover_msg", text("cats")},
    };
}

inline Scenario build_two_factor(const Params& p)
{
    const auto loc = [&](const char* key) { return Location{static_cast<std::uint64_t>(param_int(p, key))}; };
    Scenario s;
    s.name = "two-factor";
    s.citation = "two-factor authentication claims";
    s.summary = "password plus a code fetched from a secondary device";
    s.verifier = two_factor_verifier();
    s.exemplar = two_factor_exemplar();
    s.target = two_factor_target();
    s.post = read_post("P_2fa", kDevice);

    std::vector<World> worlds{
        two_factor_world("2fa-a", p.at("pwd"), p.at("m"), loc("second")),
        two_factor_world("2fa-b", p.at("pwd_alt"), p.at("m_alt"), loc("second_alt")),
        two_factor_world("2fa-recover", p.at("pwd"), p.at("m"), loc("second"), true),
    };

    Assertion pwd;
    pwd.id = "pwd";
    pwd.text = "R.pwd() returns D.pwd";
    pwd.check = [](const World& w) { return run_target(ask_target("pwd?", "pwd"), w) == w.fact("pwd"); };

    DeviceClaim dev;
    dev.id = "device";
    dev.where = Locator::at(kDevice);
    dev.spec = [](const World& w) {
        return two_factor_device(w.fact("pwd"), w.fact("m"), w.fact("second").as_location());
    };
    dev.alphabet = {Value{}, text("wrong")};
    for (const auto& w : worlds) {
        dev.alphabet.push_back(w.fact("pwd"));
    }
    dev.wide_alphabet = {p.at("recover_msg")};

    DeviceClaim sec;
    sec.id = "second";
    sec.where = Locator::reported_by("findSecond");
    sec.spec = [](const World&) { return second_device(); };
    sec.alphabet = {Value{}, text("00")};

    const Evidence weak("E_2fa", worlds, {pwd}, {dev, sec});
    s.add_evidence("weak", weak);
    const Evidence d_full = strengthen_to_full_spec(weak, Locator::at(kDevice), "E_D");
    s.add_evidence("strong", strengthen_to_full_spec(d_full, Locator::reported_by("findSecond"), "E_DS"));

    s.family.includes_exemplar = true;
    s.family.actions = {
        {"A*_2fa", s.exemplar},
        {"A_reordered", two_factor_reordered()},
        {"A_recover", recover_action(p.at("recover_msg"))},
        {"A_nothing", do_nothing()},
    };

    s.expect(CheckKind::Demonstrability, "weak", Verdict::Holds, "two-factor verifier is demonstrable");
    s.expect(CheckKind::Demonstrability, "strong", Verdict::Holds, "two-factor verifier is demonstrable");
    s.expect(CheckKind::Entailment, "strong", Verdict::Holds, "full specs of D and S give entailment");
    s.expect(CheckKind::Entailment, "weak", Verdict::Fails, "a recoverable device fits the partial spec");
    s.expect(CheckKind::Counterexample, "weak", Verdict::Fails, "recovery replaces the contents",
             at_cell("2fa-recover", "A_recover"));
    s.expect(CheckKind::Monotonicity, "strong>=weak", Verdict::Holds, "demonstrability is monotone in evidence");
    s.edges = {{"weak", "strong"}};
    return s;
}

}  // namespace foregone::scenarios
