#pragma once

#include "foregone/crypto_toys.hpp"
#include "foregone/scenarios/common.hpp"
#include "foregone/scenarios/scenario.hpp"

#include <string>
#include <vector>

namespace foregone::scenarios {

inline constexpr Location kPlaintext{1};

inline Machine secret_respondent(const Value& x, const Value& k)
{
    Machine r("R_secret");
    r.var("x", x).var("k", k);
    r.method("x", [](Invocation& ctx) -> Output { return ctx.get("x"); });
    r.method("k", [](Invocation& ctx) -> Output { return ctx.get("k"); });
    return r;
}

/// E_secret world: nothing in nature reveals x or k.
inline World secret_world(const std::string& label, const Value& x, const Value& k)
{
    World w;
    w.label = label;
    w.respondent = secret_respondent(x, k);
    w.facts = {{"x", x}, {"k", k}};
    return w;
}

/// E_known world: x is also stored read-only at ℓ_x.
inline World known_world(const std::string& label, const Value& x, const Value& k)
{
    World w = secret_world(label, x, k);
    w.nature.place_read_only(kPlaintext, x, "plaintext");
    return w;
}

/// Singleton language per world: the target's output there.
inline Evidence with_target_languages(Evidence e, const Machine& target)
{
    for (const auto& w : std::vector<World>(e.worlds())) {
        e = e.with_language(w.label, {run_target(target, w)});
    }
    return e;
}

inline std::vector<NamedMachine> standard_candidates(std::size_t guess_width)
{
    return {
        {"P_echo", echo_post()},
        {"P_null", const_post("P_null", Value{})},
        {"P_zero", const_post("P_zero", Value::bytes(std::string(guess_width, '\0')))},
        {"P_guess", guess_post(guess_width)},
    };
}

namespace detail {

inline std::string bytes_or_empty(const Output& v) { return v && v->is_bytes() ? v->as_bytes() : std::string{}; }

/// OTP of R.x under a key picked by `key`, which sees R.x.
template <typename KeyFn>
Output pad_secret(Invocation& ctx, KeyFn key)
{
    const std::string x = bytes_or_empty(ctx.ask("x"));
    const std::string k = key(ctx, x);
    if (k.size() != x.size()) {
        return Value{};
    }
    return Value::bytes(toys::otp(k, x));
}

}  // namespace detail

enum class KeyMode { Respondent, Fixed, Sampled };

inline const char* to_string(KeyMode k)
{
    switch (k) {
    case KeyMode::Respondent:
        return "rk";
    case KeyMode::Fixed:
        return "fixed";
    case KeyMode::Sampled:
        return "sampled";
    }
    return "?";
}

/// OTP(k′, R.x) with k′ chosen per `mode`. Sent when `send` is set,
/// returned otherwise.
inline Machine otp_program(std::string name, KeyMode mode, const std::string& fixed_key, bool send)
{
    return Machine::program(std::move(name), [mode, fixed_key, send](Invocation& ctx) -> Output {
        const Output c = detail::pad_secret(ctx, [&](Invocation& in, const std::string& x) {
            switch (mode) {
            case KeyMode::Respondent:
                return detail::bytes_or_empty(in.ask("k"));
            case KeyMode::Fixed:
                return fixed_key;
            case KeyMode::Sampled:
                return in.tape().bytes(x.size());
            }
            return std::string{};
        });
        if (send) {
            ctx.send(c.value_or(Value{}));
            return std::nullopt;
        }
        return c;
    });
}

/// Enc(k, R.x; ρ) with ρ fixed, or drawn from the tape when `fixed_rho` is empty.
inline Machine enc_program(std::string name, const std::string& key, const std::string& fixed_rho, bool send)
{
    return Machine::program(std::move(name), [key, fixed_rho, send](Invocation& ctx) -> Output {
        const std::string x = detail::bytes_or_empty(ctx.ask("x"));
        const std::string rho = fixed_rho.empty() ? ctx.tape().bytes(x.size()) : fixed_rho;
        Value c;
        if (x.size() == key.size() && rho.size() == x.size()) {
            c = Value::bytes(toys::randomized_encrypt(key, x, rho));
        }
        if (send) {
            ctx.send(c);
            return std::nullopt;
        }
        return c;
    });
}

/// Reads ℓ_x, recomputes the expected ciphertext, and accepts iff the
/// first message equals it.
inline Machine recompute_verifier(std::string name, std::function<std::string(const std::string&)> expected)
{
    return Machine::program(std::move(name), [expected](Invocation& ctx) -> Output {
        const Output x = ctx.call(kPlaintext, "read");
        const Output msg = ctx.receive();
        if (!x || !x->is_bytes() || !msg || !msg->is_bytes()) {
            return Value::boolean(false);
        }
        try {
            return Value::boolean(msg->as_bytes() == expected(x->as_bytes()));
        } catch (const toys::LengthMismatch&) {
            return Value::boolean(false);
        }
    });
}

/// Reads ℓ_x itself instead of asking R.
inline Machine read_and_pad_action(const std::string& key)
{
    return Machine::program("A_readPad", [key](Invocation& ctx) -> Output {
        const std::string x = detail::bytes_or_empty(ctx.call(kPlaintext, "read"));
        ctx.send(x.size() == key.size() ? Value::bytes(toys::otp(key, x)) : Value{});
        return std::nullopt;
    });
}

inline Params otp_defaults()
{
    return {
        {"x", text("a")},      {"x_alt", text("b")}, {"k", text("k")},   {"k_alt", text("q")},
        {"k_fixed", text("K")}, {"rho", text("r")},
    };
}

namespace detail {

inline std::vector<World> otp_worlds(const Params& p, bool known)
{
    const auto make = known ? known_world : secret_world;
    return {
        make("xa-k", p.at("x"), p.at("k")),
        make("xa-k2", p.at("x"), p.at("k_alt")),
        make("xb-k", p.at("x_alt"), p.at("k")),
    };
}

inline Scenario otp_shell(const std::string& name, const std::string& citation, const std::string& summary)
{
    Scenario s;
    s.name = name;
    s.citation = citation;
    s.summary = summary;
    s.post = echo_post();
    s.candidates = standard_candidates(1);
    return s;
}

}  // namespace detail

/// One cell of the OTP grid: evidence (secret or known) × key mode.
inline Scenario build_otp_cell(const Params& p, bool known, KeyMode mode)
{
    const std::string ev = known ? "known" : "secret";
    const std::string k_fixed = param_bytes(p, "k_fixed");
    Scenario s = detail::otp_shell("otp-table/" + ev + "-" + to_string(mode), "OTP entailment table",
                                   "compelled one-time-pad encryption");
    s.target = otp_program("T_otp", mode, k_fixed, false);
    s.exemplar = otp_program("A*_otp", mode, k_fixed, true);
    const bool entailable = known && mode == KeyMode::Fixed;
    s.verifier = entailable ? recompute_verifier("V_known", [k_fixed](const std::string& x) {
        return toys::otp(k_fixed, x);
    })
                            : accept_any_bytes();

    Evidence e(known ? "E_known" : "E_secret", detail::otp_worlds(p, known));
    if (mode != KeyMode::Sampled) {
        e = with_target_languages(std::move(e), s.target);
    }
    s.add_evidence("weak", e);

    s.family.includes_exemplar = true;
    s.family.actions = {
        {"A*_otp", s.exemplar},
        {"A_0", emulate_respondent(s.exemplar, e.worlds().front().respondent, "A_0")},
        {"A_nothing", do_nothing()},
    };
    if (known) {
        s.family.actions.push_back({"A_readPad", read_and_pad_action(k_fixed)});
    }

    s.expect(CheckKind::Demonstrability, "weak", Verdict::Holds, "the pad verifier is demonstrable");
    if (entailable) {
        s.expect(CheckKind::Entailment, "weak", Verdict::Holds, "known plaintext with a fixed key is entailable");
    } else if (mode == KeyMode::Sampled) {
        s.expect(CheckKind::ProbeRandom, "weak", Verdict::Holds, "a key sampled by the target is not entailable");
        s.expect(CheckKind::Entailment, "weak", Verdict::Fails, "a key sampled by the target is not entailable");
    } else {
        s.expect(CheckKind::ProbeUnknownGoal, "weak", Verdict::Holds, "the pad of an unknown value is not entailable");
        s.expect(CheckKind::Entailment, "weak", Verdict::Fails, "the pad of an unknown value is not entailable");
    }
    return s;
}

/// Randomized encryption of the known plaintext under a fixed key, with
/// fixed (`fresh` unset) or target-sampled randomness.
inline Scenario build_enc_cell(const Params& p, bool fresh)
{
    const std::string key = param_bytes(p, "k_fixed");
    const std::string rho = fresh ? std::string{} : param_bytes(p, "rho");
    Scenario s = detail::otp_shell(fresh ? "otp-table/enc-fresh" : "otp-table/enc-fixed",
                                   "randomized encryption remark", "compelled randomized encryption");
    s.candidates = standard_candidates(2);
    s.target = enc_program("T_enc", key, rho, false);
    s.exemplar = enc_program("A*_enc", key, rho, true);
    if (fresh) {
        s.verifier = accept_any_bytes();
    } else {
        s.verifier = recompute_verifier("V_enc", [key, rho](const std::string& x) {
            return toys::randomized_encrypt(key, x, rho);
        });
    }
    s.add_evidence("weak", Evidence("E_known", detail::otp_worlds(p, true)));
    s.family.includes_exemplar = true;
    s.family.actions = {
        {"A*_enc", s.exemplar},
        {"A_nothing", do_nothing()},
        {"A_0", with_zero_tape(s.exemplar, "A_0")},
    };
    s.expect(CheckKind::Demonstrability, "weak", Verdict::Holds, "the encryption verifier is demonstrable");
    if (fresh) {
        s.expect(CheckKind::ProbeRandom, "weak", Verdict::Holds, "fresh encryption randomness is not entailable");
        s.expect(CheckKind::Entailment, "weak", Verdict::Fails, "fresh encryption randomness is not entailable");
    } else {
        s.expect(CheckKind::Entailment, "weak", Verdict::Holds, "fixed randomness makes encryption entailable");
    }
    return s;
}

}  // namespace foregone::scenarios
