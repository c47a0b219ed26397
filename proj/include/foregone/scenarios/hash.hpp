#pragma once

#include "foregone/crypto_toys.hpp"
#include "foregone/scenarios/common.hpp"
#include "foregone/scenarios/scenario.hpp"

#include <string>
#include <vector>

namespace foregone::scenarios {

inline Machine file_respondent(Location file)
{
    Machine r("R_file");
    r.var("file", Value::location(file));
    r.method("findFile", [](Invocation& ctx) -> Output { return ctx.get("file"); });
    return r;
}

/// R_file that also knows a second preimage of the digest.
inline Machine collider_respondent(Location file, const Value& collision)
{
    Machine r = file_respondent(file);
    r.var("collision", collision);
    r.method("collision", [](Invocation& ctx) -> Output { return ctx.get("collision"); });
    return r;
}

/// Accepts iff the first message is a byte string hashing to y.
inline Machine hash_verifier(const toys::HashSpec& h, const std::string& y)
{
    return Machine::program("V_hash", [h, y](Invocation& ctx) -> Output {
        const Output x = ctx.receive();
        return Value::boolean(x && x->is_bytes() && h.evaluate(x->as_bytes()) == y);
    });
}

inline Machine hash_exemplar()
{
    return Machine::program("A*_hash", [](Invocation& ctx) -> Output {
        const Output where = ctx.ask("findFile");
        ctx.send(ctx.call(where.value_or(Value{}), "read").value_or(Value{}));
        return std::nullopt;
    });
}

inline Machine hash_target()
{
    return Machine::program("T_hash", [](Invocation& ctx) -> Output {
        const Output where = ctx.ask("findFile");
        return ctx.call(where.value_or(Value{}), "read").value_or(Value{});
    });
}

inline World hash_world(const std::string& label, Location file, const Value& x, Machine respondent)
{
    World w;
    w.label = label;
    w.nature.place_read_only(file, x, "file");
    w.respondent = std::move(respondent);
    w.facts = {{"x", x}, {"file", Value::location(file)}};
    return w;
}

inline Params hash_defaults()
{
    return {{"file", text("ok")}, {"decoy", text("no")}, {"loc", Value::integer(3)}, {"loc_alt", Value::integer(4)}};
}

namespace detail {

inline Scenario hash_base(const Params& p, const toys::HashSpec& h, const std::string& name)
{
    const Value x = p.at("file");
    const Location loc{static_cast<std::uint64_t>(param_int(p, "loc"))};
    const Location alt{static_cast<std::uint64_t>(param_int(p, "loc_alt"))};
    const std::string y = h.evaluate(x.as_bytes());

    Scenario s;
    s.name = name;
    s.verifier = hash_verifier(h, y);
    s.exemplar = hash_exemplar();
    s.target = hash_target();
    s.post = echo_post();

    std::vector<World> worlds{
        hash_world("file-a", loc, x, file_respondent(loc)),
        hash_world("file-b", alt, x, file_respondent(alt)),
        hash_world("collider", loc, x, collider_respondent(loc, p.at("decoy"))),
    };
    Assertion found;
    found.id = "found";
    found.text = "N[R.findFile()].read() hashes to y";
    found.check = [h, y](const World& w) {
        const Value v = run_target(hash_target(), w);
        return v.is_bytes() && h.evaluate(v.as_bytes()) == y;
    };
    s.add_evidence("weak", Evidence("E_hash", std::move(worlds), {found}));

    s.family.includes_exemplar = true;
    s.family.actions = {
        {"A*_hash", s.exemplar},
        {"A_collide", send_answer("A_collide", "collision")},
        {"A_nothing", do_nothing()},
    };
    return s;
}

}  // namespace detail

inline Scenario build_hash_injective(const Params& p)
{
    Scenario s = detail::hash_base(p, toys::injective_hash(), "hash/injective");
    s.citation = "hash preimage claim, case (i)";
    s.summary = "an injective digest pins down the produced file";
    s.expect(CheckKind::Demonstrability, "weak", Verdict::Holds, "the hash verifier is demonstrable");
    s.expect(CheckKind::Entailment, "weak", Verdict::Holds, "without collisions the sent file is the target file");
    return s;
}

inline Scenario build_hash_colliding(const Params& p)
{
    const Value x = p.at("file");
    const Value decoy = p.at("decoy");
    Scenario s = detail::hash_base(p, toys::colliding_hash(x.as_bytes(), decoy.as_bytes()), "hash/colliding");
    s.citation = "hash preimage claim, case (ii)";
    s.summary = "a respondent knowing a collision sends a different preimage";
    s.expect(CheckKind::Demonstrability, "weak", Verdict::Holds, "the hash verifier is demonstrable");
    s.expect(CheckKind::Entailment, "weak", Verdict::Fails, "a collision separates the outputs");
    s.expect(CheckKind::Counterexample, "weak", Verdict::Fails, "the outputs form a hash collision",
             at_cell("collider", "A_collide"));
    return s;
}

}  // namespace foregone::scenarios
