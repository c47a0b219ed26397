#pragma once

#include "foregone/crypto_toys.hpp"
#include "foregone/scenarios/common.hpp"
#include "foregone/scenarios/otp_table.hpp"
#include "foregone/scenarios/scenario.hpp"

#include <string>
#include <vector>

namespace foregone::scenarios {

inline Machine whereabouts_respondent(const Value& place)
{
    Machine r("R_where");
    r.var("place", place);
    r.method("x", [](Invocation& ctx) -> Output { return ctx.get("place"); });
    return r;
}

inline World whereabouts_world(const std::string& label, const Value& place)
{
    World w;
    w.label = label;
    w.respondent = whereabouts_respondent(place);
    w.facts = {{"place", place}};
    return w;
}

inline Params whereabouts_defaults() { return {{"place", text("Boston")}, {"place_alt", text("Paris")}}; }

namespace detail {

inline Scenario probe_shell(std::string name, std::string citation, std::string summary, std::size_t width)
{
    Scenario s;
    s.name = std::move(name);
    s.citation = std::move(citation);
    s.summary = std::move(summary);
    s.verifier = accept_any_bytes();
    s.exemplar = send_answer("A*_x", "x");
    s.post = echo_post();
    s.candidates = standard_candidates(width);
    s.family.includes_exemplar = true;
    s.family.actions = {{"A*_x", s.exemplar}};
    return s;
}

}  // namespace detail

/// `overlap` gives the second respondent both places; `single` keeps one world.
inline Scenario build_whereabouts(const Params& p, bool overlap, bool single)
{
    const Value a = p.at("place");
    const Value b = p.at("place_alt");
    std::string name = "unknown-goal/whereabouts";
    if (overlap) {
        name += "-overlap";
    } else if (single) {
        name = "unknown-goal/single";
    }
    Scenario s = detail::probe_shell(name, "unknown-goal theorem, whereabouts example",
                                     "the respondent's answer lies in a language the verifier cannot check", 1);
    s.target = ask_target("T_x", "x");
    std::vector<World> worlds{whereabouts_world("at-a", a)};
    if (!single) {
        worlds.push_back(whereabouts_world("at-b", b));
    }
    Evidence e("E_lang", worlds);
    e = e.with_language("at-a", {a});
    if (!single) {
        e = e.with_language("at-b", overlap ? std::vector<Value>{a, b} : std::vector<Value>{b});
    }
    s.add_evidence("weak", e);
    s.family.actions.push_back({"A_0", emulate_respondent(s.exemplar, worlds.front().respondent, "A_0")});

    s.expect(CheckKind::Demonstrability, "weak", Verdict::Holds, "any stated place is accepted");
    if (overlap || single) {
        s.expect(CheckKind::ProbeUnknownGoal, "weak", Verdict::HypothesisViolated,
                 "the respondents' languages share an element");
    } else {
        s.expect(CheckKind::ProbeUnknownGoal, "weak", Verdict::Holds, "no candidate recovers the true place");
        s.expect(CheckKind::Entailment, "weak", Verdict::Fails, "the emulating action names the wrong place");
    }
    return s;
}

inline Params commitment_probe_defaults()
{
    return {{"x", text("a")}, {"x_alt", text("b")}, {"k", text("k")}, {"r", text("r")}};
}

/// Com(R.x; r).c with r fixed, or drawn from the tape when `r` is empty.
inline Machine commit_target(const toys::CommitmentScheme& scheme, const std::string& r)
{
    return Machine::program("T_com", [scheme, r](Invocation& ctx) -> Output {
        const Output x = ctx.ask("x");
        if (!x || !x->is_bytes()) {
            return Value{};
        }
        const std::string rr = r.empty() ? ctx.tape().bytes(x->as_bytes().size()) : r;
        return Value::bytes(scheme.commit(x->as_bytes(), rr).c);
    });
}

/// Commits to R.x with its own randomness and sends c.
inline Machine commit_exemplar(const toys::CommitmentScheme& scheme)
{
    return Machine::program("A*_com", [scheme](Invocation& ctx) -> Output {
        const Output x = ctx.ask("x");
        const std::string xs = x && x->is_bytes() ? x->as_bytes() : std::string{};
        ctx.send(Value::bytes(scheme.commit(xs, ctx.tape().bytes(xs.size())).c));
        return std::nullopt;
    });
}

/// `scheme_name` empty: fresh randomness with the XOR-pad scheme. Otherwise
/// a fixed r with the named scheme.
inline Scenario build_commitment_probe(const Params& p, const std::string& scheme_name)
{
    const bool fresh = scheme_name.empty();
    const toys::CommitmentScheme scheme =
        fresh ? toys::xor_pad_scheme() : toys::scheme_by_name(scheme_name).value();
    std::string name = "unknown-goal/com-fresh";
    if (!fresh) {
        name = scheme.binding == toys::BindingClass::PerfectlyBinding ? "unknown-goal/com-fixed"
                                                                      : "unknown-goal/com-fixed-degenerate";
    }
    const std::string r = fresh ? std::string{} : param_bytes(p, "r");
    Scenario s = detail::probe_shell(name, fresh ? "fresh commitment claim" : "fixed-randomness commitment claim",
                                     "compelled commitment to an unknown secret",
                                     scheme.commit(param_bytes(p, "x"), param_bytes(p, "r")).c.size());
    s.target = commit_target(scheme, r);
    s.exemplar = commit_exemplar(scheme);
    s.family.actions = {{"A*_com", s.exemplar}};

    Evidence e("E_secret", {
                               secret_world("xa", p.at("x"), p.at("k")),
                               secret_world("xb", p.at("x_alt"), p.at("k")),
                           });
    if (!fresh) {
        e = with_target_languages(std::move(e), s.target);
    }
    s.add_evidence("weak", e);

    s.expect(CheckKind::Demonstrability, "weak", Verdict::Holds, "any commitment string is accepted");
    if (fresh) {
        s.expect(CheckKind::ProbeRandom, "weak", Verdict::Holds, "a fresh commitment is a distribution");
    } else if (scheme.binding == toys::BindingClass::PerfectlyBinding) {
        s.expect(CheckKind::ProbeUnknownGoal, "weak", Verdict::Holds, "the commitment reveals an unknown secret");
    } else {
        s.expect(CheckKind::ProbeUnknownGoal, "weak", Verdict::HypothesisViolated,
                 "a message-independent commitment falls outside the claim");
    }
    return s;
}

inline Machine coin_target()
{
    return Machine::program("T_coin", [](Invocation& ctx) -> Output {
        return text(ctx.tape().bit() ? "heads" : "tails");
    });
}

inline Params coin_defaults() { return {{"face", text("heads")}}; }

/// `constant` replaces the fair coin by one fixed face.
inline Scenario build_coin(const Params& p, bool constant)
{
    Scenario s;
    s.name = constant ? "coin/const" : "coin";
    s.citation = "distribution theorem";
    s.summary = constant ? "a constant target has support one" : "a fair coin flipped by the target";
    s.verifier = accept_all();
    s.exemplar = do_nothing();
    s.target = constant ? const_post("T_const", p.at("face")) : coin_target();
    s.post = echo_post();
    s.candidates = {
        {"P_echo", echo_post()},
        {"P_heads", const_post("P_heads", text("heads"))},
        {"P_tails", const_post("P_tails", text("tails"))},
        {"P_guess", guess_post(1)},
    };
    World w;
    w.label = "any";
    s.add_evidence("weak", Evidence("E_any", {w}));
    s.family.includes_exemplar = true;
    s.family.actions = {{"A_nothing", s.exemplar}};
    s.expect(CheckKind::Demonstrability, "weak", Verdict::Holds, "the trivial verifier is demonstrable");
    if (constant) {
        s.expect(CheckKind::ProbeRandom, "weak", Verdict::HypothesisViolated, "support size one");
        s.expect(CheckKind::Entailment, "weak", Verdict::Fails, "no message carries the constant");
    } else {
        s.expect(CheckKind::ProbeRandom, "weak", Verdict::Holds, "the coin is not entailable");
        s.expect(CheckKind::Entailment, "weak", Verdict::Fails, "the coin is not entailable");
    }
    return s;
}

}  // namespace foregone::scenarios
