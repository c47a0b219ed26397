#pragma once

#include "foregone/scenarios/common.hpp"
#include "foregone/scenarios/scenario.hpp"

namespace foregone::scenarios {

inline Machine read_device(const Value& m)
{
    Machine d("D_read");
    d.var("m", m);
    d.method("read", [](Invocation& ctx) -> Output { return ctx.get("m"); });
    return d;
}

/// D_read plus write(x), which sets m to x.
inline Machine read_write_device(const Value& m)
{
    Machine d("D_readWrite");
    d.var("m", m);
    d.method("read", [](Invocation& ctx) -> Output { return ctx.get("m"); });
    d.method("write", [](Invocation& ctx) -> Output {
        ctx.set("m", ctx.input());
        return std::nullopt;
    });
    return d;
}

inline Machine write_action(const Value& x)
{
    return Machine::program("A_write", [x](Invocation& ctx) -> Output {
        ctx.call(kDevice, "write", x);
        return std::nullopt;
    });
}

inline Machine read_target() { return read_post("T_read", kDevice); }

inline Params hybrid_defaults() { return {{"m", text("memo")}, {"x", text("cats")}}; }

inline Scenario build_hybrid(const Params& p)
{
    const Value m = p.at("m");
    Scenario s;
    s.name = "hybrid";
    s.citation = "read/readWrite partial-spec figure";
    s.summary = "a partially specified device may expose extra methods";
    s.verifier = accept_all();
    s.exemplar = do_nothing();
    s.target = read_target();
    s.post = read_post("P_read", kDevice);

    World r;
    r.label = "read";
    r.nature.place(kDevice, read_device(m));
    r.facts = {{"m", m}};
    World rw = r;
    rw.label = "readWrite";
    rw.nature.place(kDevice, read_write_device(m));

    DeviceClaim dev;
    dev.id = "device";
    dev.where = Locator::at(kDevice);
    dev.spec = [](const World& w) { return read_device(w.fact("m")); };
    dev.alphabet = {p.at("x"), Value{}};
    const Evidence weak("E_read", {r, rw}, {}, {dev});
    s.add_evidence("weak", weak);
    s.add_evidence("strong", strengthen_to_full_spec(weak, Locator::at(kDevice), "E_Dread"));

    s.family.includes_exemplar = true;
    s.family.actions = {{"A_nothing", s.exemplar}, {"A_write", write_action(p.at("x"))}};

    s.expect(CheckKind::Demonstrability, "weak", Verdict::Holds, "the do-nothing exemplar is accepted");
    s.expect(CheckKind::Entailment, "weak", Verdict::Fails, "the read target is not entailable under a partial spec");
    s.expect(CheckKind::Counterexample, "weak", Verdict::Fails, "a write action conforms and changes the contents",
             at_cell("readWrite", "A_write"));
    s.expect(CheckKind::Entailment, "strong", Verdict::Holds, "a full spec rules out the write method");
    s.expect(CheckKind::Monotonicity, "strong>=weak", Verdict::Holds, "demonstrability is monotone in evidence");
    s.edges = {{"weak", "strong"}};
    return s;
}

}  // namespace foregone::scenarios
