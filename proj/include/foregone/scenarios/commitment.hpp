#pragma once

#include "foregone/crypto_toys.hpp"
#include "foregone/scenarios/common.hpp"
#include "foregone/scenarios/scenario.hpp"

#include <string>
#include <vector>

namespace foregone::scenarios {

inline constexpr Location kCommitment{1};
inline constexpr Location kScheme{2};

inline Machine decom_respondent(const Value& x, const Value& d)
{
    Machine r("R_decom");
    r.var("x", x).var("d", d);
    r.method("secret", [](Invocation& ctx) -> Output { return ctx.get("x"); });
    r.method("decom", [](Invocation& ctx) -> Output { return ctx.get("d"); });
    return r;
}

namespace detail {

inline std::optional<toys::CommitmentScheme> scheme_in(Invocation& ctx)
{
    const Output name = ctx.call(kScheme, "read");
    return name && name->is_bytes() ? toys::scheme_by_name(name->as_bytes()) : std::nullopt;
}

}  // namespace detail

/// Accepts iff the first message is a pair (x′, d′) opening N[ℓ_comm] under
/// the scheme named at ℓ_scheme.
inline Machine decom_verifier()
{
    return Machine::program("V_decom", [](Invocation& ctx) -> Output {
        const Output msg = ctx.receive();
        const Output c = ctx.call(kCommitment, "read");
        const auto scheme = detail::scheme_in(ctx);
        if (!msg || !msg->is_pair() || !c || !c->is_bytes() || !scheme) {
            return Value::boolean(false);
        }
        const Value& x = msg->first();
        const Value& d = msg->second();
        if (!x.is_bytes() || !d.is_bytes()) {
            return Value::boolean(false);
        }
        try {
            return Value::boolean(scheme->check(c->as_bytes(), d.as_bytes(), x.as_bytes()));
        } catch (const toys::LengthMismatch&) {
            return Value::boolean(false);
        }
    });
}

inline Machine decom_exemplar()
{
    return Machine::program("A*_decom", [](Invocation& ctx) -> Output {
        const Value x = ctx.ask("secret").value_or(Value{});
        const Value d = ctx.ask("decom").value_or(Value{});
        ctx.send(Value::pair(x, d));
        return std::nullopt;
    });
}

/// Opens the commitment to `z` when the scheme can equivocate.
inline Machine equivocate_action(const Value& z)
{
    return Machine::program("A_equiv", [z](Invocation& ctx) -> Output {
        const Output c = ctx.call(kCommitment, "read");
        const auto scheme = detail::scheme_in(ctx);
        Value d = text("");
        if (c && c->is_bytes() && scheme && scheme->equivocate) {
            try {
                d = text(scheme->equivocate(c->as_bytes(), z.as_bytes()));
            } catch (const toys::LengthMismatch&) {
            }
        }
        ctx.send(Value::pair(z, d));
        return std::nullopt;
    });
}

/// Sends the true secret with a decommitment of the wrong length.
inline Machine sloppy_opening_action()
{
    return Machine::program("A_sloppy", [](Invocation& ctx) -> Output {
        const Value x = ctx.ask("secret").value_or(Value{});
        ctx.send(Value::pair(x, text("")));
        return std::nullopt;
    });
}

inline Value complement(const Value& v)
{
    if (!v.is_bytes()) {
        return Value{};
    }
    std::string out = v.as_bytes();
    for (auto& ch : out) {
        ch = static_cast<char>(~static_cast<unsigned char>(ch));
    }
    return Value::bytes(std::move(out));
}

inline Machine decom_target() { return ask_target("T_decom", "secret"); }

/// First component of the first message.
inline Machine decom_post()
{
    return Machine::program("P_decom", [](Invocation& ctx) -> Output {
        const auto& msgs = ctx.transcript().messages;
        return !msgs.empty() && msgs.front().is_pair() ? msgs.front().first() : Value{};
    });
}

inline Machine complement_target()
{
    return Machine::program("T_f", [](Invocation& ctx) -> Output {
        return complement(ctx.ask("secret").value_or(Value{}));
    });
}

inline Machine complement_post()
{
    return Machine::program("P_f", [](Invocation& ctx) -> Output {
        const auto& msgs = ctx.transcript().messages;
        return complement(!msgs.empty() && msgs.front().is_pair() ? msgs.front().first() : Value{});
    });
}

inline World decom_world(const std::string& label, const toys::CommitmentScheme& scheme, const std::string& x,
                         const std::string& r)
{
    const toys::Commitment com = scheme.commit(x, r);
    World w;
    w.label = label;
    w.nature.place_read_only(kCommitment, text(com.c), "commitment");
    w.nature.place_read_only(kScheme, text(scheme.name), "scheme");
    w.respondent = decom_respondent(text(x), text(com.d));
    w.facts = {{"x", text(x)}, {"r", text(r)}, {"scheme", text(scheme.name)}};
    return w;
}

inline Params decommit_defaults()
{
    return {{"x", text("a")}, {"r", text("k")}, {"x_alt", text("b")}, {"r_alt", text("q")}, {"z", text("z")}};
}

/// E_bind: the commitment opens to R's secret under a perfectly binding
/// scheme. Dropping the binding assertion admits XOR-pad twins.
inline Evidence decom_evidence(const Params& p)
{
    const auto& x = param_bytes(p, "x");
    const auto& x_alt = param_bytes(p, "x_alt");
    std::vector<World> worlds{
        decom_world("secret-a", toys::transparent_scheme(), x, param_bytes(p, "r")),
        decom_world("secret-b", toys::transparent_scheme(), x_alt, param_bytes(p, "r_alt")),
    };
    Assertion opens;
    opens.id = "opens";
    opens.text = "Check(c, R.decom(), R.secret()) = 1";
    opens.check = [](const World& w) {
        return run_target(decom_target(), w) == w.fact("x") &&
               execute(decom_verifier(), decom_exemplar(), w).transcript.accepted();
    };
    Assertion binding;
    binding.id = "binding";
    binding.text = "the scheme at ℓ_scheme is perfectly binding";
    binding.droppable = true;
    binding.check = [](const World& w) {
        const auto s = toys::scheme_by_name(w.fact("scheme").as_bytes());
        return s && s->binding == toys::BindingClass::PerfectlyBinding;
    };
    binding.extend = [](const World& w) -> std::optional<World> {
        return decom_world(w.label + "+xor", toys::xor_pad_scheme(), w.fact("x").as_bytes(),
                           w.fact("r").as_bytes());
    };
    return Evidence("E_bind", std::move(worlds), {opens, binding});
}

namespace detail {

inline Scenario decommit_base(const Params& p)
{
    Scenario s;
    s.verifier = decom_verifier();
    s.exemplar = decom_exemplar();
    const Evidence strong = decom_evidence(p);
    s.add_evidence("strong", strong);
    s.add_evidence("star", drop_assertion(strong, "binding", "E_decom"));
    s.family.includes_exemplar = true;
    s.family.actions = {
        {"A*_decom", s.exemplar},
        {"A_sloppy", sloppy_opening_action()},
        {"A_equiv", equivocate_action(p.at("z"))},
        {"A_nothing", do_nothing()},
    };
    s.edges = {{"star", "strong"}};
    return s;
}

}  // namespace detail

inline Scenario build_decommit(const Params& p)
{
    Scenario s = detail::decommit_base(p);
    s.name = "decommit";
    s.citation = "decommitment figure and binding claim";
    s.summary = "compelled opening of a commitment";
    s.target = decom_target();
    s.post = decom_post();
    s.expect(CheckKind::Demonstrability, "strong", Verdict::Holds, "opening a binding commitment is demonstrable");
    s.expect(CheckKind::Demonstrability, "star", Verdict::Holds, "binding does not affect demonstrability");
    s.expect(CheckKind::Entailment, "strong", Verdict::Holds, "binding pins the opened message");
    s.expect(CheckKind::Entailment, "star", Verdict::Fails, "an equivocable commitment opens to anything");
    s.expect(CheckKind::Counterexample, "star", Verdict::Fails, "equivocated opening conforms",
             at_cell("secret-a+xor", "A_equiv"));
    s.expect(CheckKind::Monotonicity, "strong>=star", Verdict::Holds, "demonstrability is monotone in evidence");
    return s;
}

/// Post-composition: f(R.secret()) with f the bitwise complement.
inline Scenario build_decommit_tf(const Params& p)
{
    Scenario s = detail::decommit_base(p);
    s.name = "decommit/tf";
    s.citation = "post-composed computation on the committed secret";
    s.summary = "entailment survives applying a public function";
    s.target = complement_target();
    s.post = complement_post();
    s.expect(CheckKind::Entailment, "strong", Verdict::Holds, "P composed with f entails T composed with f");
    s.expect(CheckKind::Entailment, "star", Verdict::Fails, "an equivocable commitment opens to anything");
    return s;
}

}  // namespace foregone::scenarios
