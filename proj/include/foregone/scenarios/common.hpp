#pragma once

#include "foregone/kernel.hpp"

#include <string>
#include <utility>

namespace foregone::scenarios {

inline constexpr Location kDevice{1};

inline Value text(std::string s) { return Value::bytes(std::move(s)); }

/// Accepts unconditionally.
inline Machine accept_all()
{
    return Machine::program("V_acceptAll", [](Invocation&) -> Output { return Value::boolean(true); });
}

/// Accepts iff the action sent a byte string.
inline Machine accept_any_bytes()
{
    return Machine::program("V_anyBytes", [](Invocation& ctx) -> Output {
        const Output m = ctx.receive();
        return Value::boolean(m && m->is_bytes());
    });
}

inline Machine do_nothing()
{
    return Machine::program("A_nothing", [](Invocation&) -> Output { return std::nullopt; });
}

/// Sends whatever the respondent's `method` returns.
inline Machine send_answer(std::string name, std::string method)
{
    return Machine::program(std::move(name), [method](Invocation& ctx) -> Output {
        ctx.send(ctx.ask(method).value_or(Value{}));
        return std::nullopt;
    });
}

/// Returns the respondent's answer to `method`.
inline Machine ask_target(std::string name, std::string method)
{
    return Machine::program(std::move(name), [method](Invocation& ctx) -> Output { return ctx.ask(method); });
}

/// Returns the first message the action sent, or ⊥.
inline Machine echo_post()
{
    return Machine::program("P_echo", [](Invocation& ctx) -> Output {
        const auto& msgs = ctx.transcript().messages;
        return msgs.empty() ? Value{} : msgs.front();
    });
}

inline Machine const_post(std::string name, Value v)
{
    return Machine::program(std::move(name), [v](Invocation&) -> Output { return v; });
}

/// A randomized guess: `width` bytes from its own tape.
inline Machine guess_post(std::size_t width)
{
    return Machine::program("P_guess", [width](Invocation& ctx) -> Output {
        return Value::bytes(ctx.tape().bytes(width));
    });
}

/// Reads `method` of the machine at `where` after the execution.
inline Machine read_post(std::string name, Location where, std::string method = "read")
{
    return Machine::program(std::move(name), [where, method](Invocation& ctx) -> Output {
        return ctx.call(where, method);
    });
}

}  // namespace foregone::scenarios
