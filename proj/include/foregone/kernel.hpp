#pragma once

#include "foregone/value.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace foregone {

inline constexpr std::size_t kDefaultBudget = 100000;

//
// Errors
//

class KernelFault : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The callee has no method of that name, or the caller may not reach the callee at all.
class NoSuchMethod : public KernelFault {
public:
    NoSuchMethod(std::string callee, std::string method)
        : KernelFault("no such method: " + callee + "." + method), callee_(std::move(callee)),
          method_(std::move(method))
    {
    }
    [[nodiscard]] const std::string& callee() const { return callee_; }
    [[nodiscard]] const std::string& method() const { return method_; }

private:
    std::string callee_;
    std::string method_;
};

/// A machine used a facility its role does not grant (e.g. a verifier sending messages).
class RoleViolation : public KernelFault {
public:
    using KernelFault::KernelFault;
};

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(std::size_t budget)
        : std::runtime_error("step budget of " + std::to_string(budget) + " exceeded")
    {
    }
};

class TargetNoOutput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

//
// Randomness
//

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

struct TapeSource {
    enum class Kind { Seeded, Zeros };
    Kind kind = Kind::Seeded;
    std::uint64_t seed = 0;

    static TapeSource seeded(std::uint64_t s) { return {Kind::Seeded, s}; }
    static TapeSource zeros() { return {Kind::Zeros, 0}; }

    friend bool operator==(const TapeSource&, const TapeSource&) = default;
};

/// Seed plus per-machine overrides. Every tape is a pure function of
/// (source, machine key, bit index), so two branches given equal
/// assignments read bitwise-identical tapes.
class RandomnessAssignment {
public:
    RandomnessAssignment() = default;
    explicit RandomnessAssignment(std::uint64_t seed) : seed_(seed) {}

    [[nodiscard]] std::uint64_t seed() const { return seed_; }

    [[nodiscard]] RandomnessAssignment with_override(std::string key, TapeSource source) const
    {
        RandomnessAssignment copy = *this;
        copy.overrides_[std::move(key)] = source;
        return copy;
    }

    [[nodiscard]] TapeSource source_for(std::string_view key) const
    {
        if (auto it = overrides_.find(key); it != overrides_.end()) {
            return it->second;
        }
        return TapeSource::seeded(seed_);
    }

    [[nodiscard]] std::uint64_t word(std::string_view key, std::uint64_t index) const
    {
        return word_of(source_for(key), key, index);
    }

    static std::uint64_t word_of(TapeSource source, std::string_view key, std::uint64_t index)
    {
        if (source.kind == TapeSource::Kind::Zeros) {
            return 0;
        }
        const std::uint64_t stream = detail::splitmix64(source.seed) ^ detail::fnv1a(key);
        return detail::splitmix64(stream + detail::splitmix64(index));
    }

    [[nodiscard]] std::string to_string() const
    {
        std::string out = "seed=" + std::to_string(seed_);
        for (const auto& [key, src] : overrides_) {
            out += ";" + key + "=" +
                   (src.kind == TapeSource::Kind::Zeros ? std::string("zeros") : std::to_string(src.seed));
        }
        return out;
    }

    friend bool operator==(const RandomnessAssignment&, const RandomnessAssignment&) = default;

private:
    std::uint64_t seed_;
    std::map<std::string, TapeSource, std::less<>> overrides_;
};

/// Sequential reader over one machine's tape; the cursor lives in the world.
class TapeReader {
public:
    TapeReader(TapeSource source, std::string key, std::uint64_t& cursor)
        : source_(source), key_(std::move(key)), cursor_(&cursor)
    {
    }

    bool bit()
    {
        const std::uint64_t i = (*cursor_)++;
        return (RandomnessAssignment::word_of(source_, key_, i / 64) >> (i % 64)) & 1U;
    }

    std::uint8_t byte()
    {
        std::uint8_t b = 0;
        for (int i = 0; i < 8; ++i) {
            b = static_cast<std::uint8_t>((b << 1) | (bit() ? 1 : 0));
        }
        return b;
    }

    std::string bytes(std::size_t n)
    {
        std::string out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(static_cast<char>(byte()));
        }
        return out;
    }

    [[nodiscard]] std::uint64_t position() const { return *cursor_; }

private:
    TapeSource source_;
    std::string key_;
    std::uint64_t* cursor_;
};

//
// Machines
//

class Invocation;
using Method = std::function<Output(Invocation&)>;

/// A named stateful object with a method table. The name identifies the
/// code: two machines with equal names must carry equal method tables.
class Machine {
public:
    Machine() = default;
    explicit Machine(std::string name) : name_(std::move(name)) {}

    /// A single-method machine (verifier, action, target, post-processor).
    static Machine program(std::string name, Method run)
    {
        Machine m(std::move(name));
        m.method("run", std::move(run));
        return m;
    }

    Machine& var(std::string key, Value initial)
    {
        state_[std::move(key)] = std::move(initial);
        return *this;
    }

    Machine& method(std::string name, Method body)
    {
        methods_[std::move(name)] = std::move(body);
        return *this;
    }

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] bool has_method(std::string_view m) const { return methods_.find(m) != methods_.end(); }
    [[nodiscard]] const Method& body(std::string_view m) const { return methods_.find(m)->second; }

    [[nodiscard]] std::vector<std::string> method_names() const
    {
        std::vector<std::string> out;
        for (const auto& [k, _] : methods_) {
            out.push_back(k);
        }
        return out;
    }

    /// Missing variables read as ⊥.
    [[nodiscard]] const Value& get(std::string_view key) const
    {
        static const Value kNull;
        auto it = state_.find(key);
        return it == state_.end() ? kNull : it->second;
    }
    void set(std::string_view key, Value v) { state_[std::string(key)] = std::move(v); }

    [[nodiscard]] const std::map<std::string, Value, std::less<>>& state() const { return state_; }

    [[nodiscard]] std::string fingerprint() const
    {
        std::string out = name_ + "{";
        bool first = true;
        for (const auto& [k, v] : state_) {
            out += (first ? "" : ",") + k + "=" + v.to_string();
            first = false;
        }
        out += "}[";
        for (const auto& [m, body] : methods_) {
            out += m + ";";
        }
        return out + "]";
    }

private:
    std::string name_;
    std::map<std::string, Value, std::less<>> state_;
    std::map<std::string, Method, std::less<>> methods_;
};

//
// Nature and worlds
//

class Nature {
public:
    Nature& place(Location where, Machine m)
    {
        slots_[where.index] = std::move(m);
        read_only_.erase(where.index);
        return *this;
    }

    /// A read-only slot: a store whose only method is read().
    Nature& place_read_only(Location where, Value content, std::string name = "store");

    [[nodiscard]] bool contains(Location where) const { return slots_.count(where.index) != 0; }
    [[nodiscard]] bool is_read_only(Location where) const { return read_only_.count(where.index) != 0; }
    [[nodiscard]] Machine& at(Location where) { return slots_.at(where.index); }
    [[nodiscard]] const Machine& at(Location where) const { return slots_.at(where.index); }
    [[nodiscard]] const std::map<std::uint64_t, Machine>& slots() const { return slots_; }
    [[nodiscard]] const std::set<std::uint64_t>& read_only() const { return read_only_; }

    [[nodiscard]] std::string fingerprint() const
    {
        std::string out;
        for (const auto& [loc, m] : slots_) {
            out += "N[" + std::to_string(loc) + "]" + (read_only_.count(loc) ? "ro:" : ":") + m.fingerprint() + ";";
        }
        return out;
    }

private:
    std::map<std::uint64_t, Machine> slots_;
    std::set<std::uint64_t> read_only_;
};

/// A (respondent, nature) pair with the randomness template for its tapes.
struct World {
    std::string label;
    Nature nature;
    Machine respondent{"R_none"};
    RandomnessAssignment assignment;
    std::map<std::string, std::uint64_t, std::less<>> tape_cursors;
    /// Asserted parameters (password, message, ...), used to derive per-world specs.
    std::map<std::string, Value, std::less<>> facts;

    [[nodiscard]] const Value& fact(std::string_view key) const
    {
        static const Value kNull;
        auto it = facts.find(key);
        return it == facts.end() ? kNull : it->second;
    }

    /// Structural identity: machines, their states, and asserted facts.
    [[nodiscard]] std::string fingerprint() const
    {
        std::string out = nature.fingerprint() + "|R:" + respondent.fingerprint() + "|";
        for (const auto& [k, v] : facts) {
            out += k + "=" + v.to_string() + ";";
        }
        return out;
    }

    [[nodiscard]] World with_seed(std::uint64_t seed) const
    {
        World copy = *this;
        copy.assignment = RandomnessAssignment(seed);
        return copy;
    }
};

/// Worlds are value types; a copy shares no mutable state with the original.
inline World snapshot(const World& w) { return w; }

inline std::string nature_id(Location l) { return "N[" + std::to_string(l.index) + "]"; }

//
// Transcripts
//

enum class Decision { Accept, Reject, Budget };

inline const char* to_string(Decision d)
{
    switch (d) {
    case Decision::Accept:
        return "Accept";
    case Decision::Reject:
        return "Reject";
    case Decision::Budget:
        return "Budget";
    }
    return "?";
}

enum class EventOutcome { Returned, Absent, NoSuchMethod, Aborted };

struct Event {
    std::string caller;
    std::string callee;
    std::string method;
    Value input;
    Output output;
    EventOutcome outcome = EventOutcome::Aborted;

    friend bool operator==(const Event&, const Event&) = default;
};

class Transcript {
public:
    std::vector<Event> events;
    std::vector<Value> messages;  // values the action sent toward the verifier, in order
    std::string fault;            // first fault that ended a phase, if any

    [[nodiscard]] const std::optional<Decision>& verdict() const { return verdict_; }

    void decide(Decision d)
    {
        if (verdict_) {
            throw std::logic_error("transcript verdict already set");
        }
        verdict_ = d;
    }

    [[nodiscard]] bool accepted() const { return verdict_ == Decision::Accept; }

    [[nodiscard]] std::string serialize() const
    {
        std::ostringstream os;
        for (const auto& e : events) {
            os << e.caller << " -> " << e.callee << "." << e.method << "(" << e.input.to_string() << ") = ";
            switch (e.outcome) {
            case EventOutcome::Returned:
                os << e.output->to_string();
                break;
            case EventOutcome::Absent:
                os << "<absent>";
                break;
            case EventOutcome::NoSuchMethod:
                os << "<no-such-method>";
                break;
            case EventOutcome::Aborted:
                os << "<aborted>";
                break;
            }
            os << "\n";
        }
        for (const auto& m : messages) {
            os << "msg " << m.to_string() << "\n";
        }
        if (!fault.empty()) {
            os << "fault " << fault << "\n";
        }
        os << "verdict " << (verdict_ ? to_string(*verdict_) : "unset") << "\n";
        return os.str();
    }

    friend bool operator==(const Transcript&, const Transcript&) = default;

private:
    std::optional<Decision> verdict_;
};

struct ExecutionResult {
    Transcript transcript;
    World post_world;
    std::size_t steps_used = 0;
};

//
// Invocation
//

enum class Role { Verifier, Action, Target, PostProcessor, Nature, Respondent, Probe };

namespace detail {
class Executor;
}

struct NestedOptions {
    Machine* respondent = nullptr;  // emulated respondent replacing the real one
    bool zero_tape = false;         // hardcode an all-zeros randomness tape
};

/// What a method body sees while it runs: its input, its own state, its
/// tape, and whatever oracles its role grants.
class Invocation {
public:
    [[nodiscard]] const Value& input() const { return input_; }
    [[nodiscard]] Role role() const { return role_; }
    [[nodiscard]] const std::string& id() const { return id_; }

    [[nodiscard]] const Value& get(std::string_view key) const { return self_->get(key); }
    void set(std::string_view key, Value v) { self_->set(key, std::move(v)); }

    TapeReader tape();

    /// Call a method of the machine at a nature location.
    Output call(Location where, std::string_view method, Value input = {});
    Output call(const Value& where, std::string_view method, Value input = {})
    {
        return call(where.as_location(), method, std::move(input));
    }

    /// Call a method of the respondent. Only actions and targets may.
    Output ask(std::string_view method, Value input = {});

    /// Emit a value toward the verifier (actions only).
    void send(Value v);

    /// Next buffered message from the action (verifiers only); Absent when drained.
    Output receive();

    /// The execution transcript (post-processors only).
    [[nodiscard]] const Transcript& transcript() const;

    /// Run another program's `run` method inside this one.
    Output run_nested(const Machine& program, NestedOptions options);

    /// Charge extra steps for internal loops.
    void tick(std::size_t steps = 1);

private:
    friend class detail::Executor;
    Invocation(detail::Executor& ex, Machine& self, std::string id, Role role, std::string tape_key, Value input)
        : ex_(&ex), self_(&self), id_(std::move(id)), role_(role), tape_key_(std::move(tape_key)),
          input_(std::move(input))
    {
    }

    detail::Executor* ex_;
    Machine* self_;
    std::string id_;
    Role role_;
    std::string tape_key_;
    Value input_;
    bool zero_tape_ = false;
    Machine* respondent_ = nullptr;  // overrides the world respondent when set
    std::string respondent_id_ = "R";
};

namespace detail {

class Executor {
public:
    Executor(World& world, Transcript& transcript, std::size_t budget, const Transcript* observed = nullptr)
        : world_(world), transcript_(transcript), budget_(budget), observed_(observed)
    {
    }

    [[nodiscard]] std::size_t steps() const { return steps_; }

    void tick(std::size_t n)
    {
        if (steps_ + n > budget_) {
            steps_ = budget_;
            throw BudgetExceeded(budget_);
        }
        steps_ += n;
    }

    /// Top-level entry: run a program's `run` method in the given role.
    Output run_program(const Machine& program, Role role, const std::string& id, Value input = {})
    {
        programs_.push_back(program);
        return dispatch("exec", programs_.back(), id, role, id, "run", std::move(input), false, nullptr, "R");
    }

    /// Invoke a method of the machine at `where` on behalf of a prober.
    Output probe(Location where, std::string_view method, Value input)
    {
        programs_.push_back(Machine::program("probe", [](Invocation&) -> Output { return std::nullopt; }));
        Invocation root(*this, programs_.back(), "probe", Role::Probe, "probe", Value{});
        return call_nature(root, where, method, std::move(input));
    }

    Output call_nature(const Invocation& from, Location where, std::string_view method, Value input)
    {
        const std::string callee_id = nature_id(where);
        if (from.role_ == Role::Respondent || !world_.nature.contains(where)) {
            record_missing(from.id_, callee_id, method, input);
            throw NoSuchMethod(callee_id, std::string(method));
        }
        Machine& callee = world_.nature.at(where);
        if (!world_.nature.is_read_only(where)) {
            return dispatch(from.id_, callee, callee_id, Role::Nature, callee_id, method, std::move(input), false,
                            nullptr, "R");
        }
        const auto before = callee.state();
        Output out = dispatch(from.id_, callee, callee_id, Role::Nature, callee_id, method, std::move(input), false,
                              nullptr, "R");
        if (callee.state() != before) {
            throw std::logic_error("read-only location " + callee_id + " was mutated");
        }
        return out;
    }

    Output call_respondent(const Invocation& from, std::string_view method, Value input)
    {
        const bool allowed = from.role_ == Role::Action || from.role_ == Role::Target;
        Machine& callee = from.respondent_ ? *from.respondent_ : world_.respondent;
        const std::string& callee_id = from.respondent_id_;
        if (!allowed) {
            record_missing(from.id_, callee_id, method, input);
            throw NoSuchMethod(callee_id, std::string(method));
        }
        return dispatch(from.id_, callee, callee_id, Role::Respondent, callee_id, method, std::move(input), false,
                        nullptr, "R");
    }

    Output nested(Invocation& from, const Machine& program, NestedOptions opts)
    {
        tick(1);
        programs_.push_back(program);
        Machine& local = programs_.back();
        if (!local.has_method("run")) {
            throw NoSuchMethod(local.name(), "run");
        }
        Invocation inv(*this, local, from.id_, from.role_, from.tape_key_, Value{});
        inv.zero_tape_ = from.zero_tape_ || opts.zero_tape;
        inv.respondent_ = opts.respondent ? opts.respondent : from.respondent_;
        inv.respondent_id_ = opts.respondent ? from.id_ + "/R" : from.respondent_id_;
        return local.body("run")(inv);
    }

    TapeReader tape(const Invocation& inv)
    {
        TapeSource src = inv.zero_tape_ ? TapeSource::zeros() : world_.assignment.source_for(inv.tape_key_);
        return TapeReader(src, inv.tape_key_, world_.tape_cursors[inv.tape_key_]);
    }

    void send(const Invocation& from, Value v)
    {
        if (from.role_ != Role::Action) {
            throw RoleViolation(from.id_ + " may not send to the verifier");
        }
        transcript_.messages.push_back(std::move(v));
    }

    Output receive(const Invocation& from)
    {
        if (from.role_ != Role::Verifier) {
            throw RoleViolation(from.id_ + " may not receive action messages");
        }
        if (delivered_ >= transcript_.messages.size()) {
            return std::nullopt;
        }
        return transcript_.messages[delivered_++];
    }

    const Transcript& observed(const Invocation& from) const
    {
        if (from.role_ != Role::PostProcessor || observed_ == nullptr) {
            throw RoleViolation(from.id_ + " has no transcript access");
        }
        return *observed_;
    }

private:
    void record_missing(const std::string& caller, const std::string& callee, std::string_view method,
                        const Value& input)
    {
        transcript_.events.push_back(
            Event{caller, callee, std::string(method), input, std::nullopt, EventOutcome::NoSuchMethod});
    }

    Output dispatch(const std::string& caller, Machine& callee, const std::string& callee_id, Role role,
                    const std::string& tape_key, std::string_view method, Value input, bool zero_tape,
                    Machine* respondent, const std::string& respondent_id)
    {
        tick(1);
        const std::size_t idx = transcript_.events.size();
        transcript_.events.push_back(
            Event{caller, callee_id, std::string(method), input, std::nullopt, EventOutcome::Aborted});
        if (!callee.has_method(method)) {
            transcript_.events[idx].outcome = EventOutcome::NoSuchMethod;
            throw NoSuchMethod(callee_id, std::string(method));
        }
        Invocation inv(*this, callee, callee_id, role, tape_key, std::move(input));
        inv.zero_tape_ = zero_tape;
        inv.respondent_ = respondent;
        inv.respondent_id_ = respondent_id;
        Output out = callee.body(method)(inv);
        transcript_.events[idx].output = out;
        transcript_.events[idx].outcome = out ? EventOutcome::Returned : EventOutcome::Absent;
        return out;
    }

    World& world_;
    Transcript& transcript_;
    std::size_t budget_;
    const Transcript* observed_;
    std::size_t steps_ = 0;
    std::size_t delivered_ = 0;
    std::deque<Machine> programs_;  // stable addresses for running programs
};

}  // namespace detail

inline TapeReader Invocation::tape() { return ex_->tape(*this); }
inline Output Invocation::call(Location where, std::string_view method, Value input)
{
    return ex_->call_nature(*this, where, method, std::move(input));
}
inline Output Invocation::ask(std::string_view method, Value input)
{
    return ex_->call_respondent(*this, method, std::move(input));
}
inline void Invocation::send(Value v) { ex_->send(*this, std::move(v)); }
inline Output Invocation::receive() { return ex_->receive(*this); }
inline const Transcript& Invocation::transcript() const { return ex_->observed(*this); }
inline Output Invocation::run_nested(const Machine& program, NestedOptions options)
{
    return ex_->nested(*this, program, options);
}
inline void Invocation::tick(std::size_t steps) { ex_->tick(steps); }

inline Nature& Nature::place_read_only(Location where, Value content, std::string name)
{
    Machine store(std::move(name));
    store.var("content", std::move(content));
    store.method("read", [](Invocation& ctx) -> Output { return ctx.get("content"); });
    slots_[where.index] = std::move(store);
    read_only_.insert(where.index);
    return *this;
}

//
// Operations
//

/// Invoke one method of the machine at `where`, committing state updates to `world`.
inline Output invoke(World& world, Location where, std::string_view method, Value input = {},
                     std::size_t budget = kDefaultBudget)
{
    Transcript scratch;
    detail::Executor ex(world, scratch, budget);
    return ex.probe(where, method, std::move(input));
}

/// Invoke a method of a free-standing machine (no nature around it).
inline Output invoke(Machine& machine, std::string_view method, Value input = {},
                     std::size_t budget = kDefaultBudget)
{
    World w;
    w.nature.place(Location{0}, machine);
    Output out = invoke(w, Location{0}, method, std::move(input), budget);
    machine = w.nature.at(Location{0});
    return out;
}

/// Two-phase execution: the action runs to completion, buffering its
/// messages; then the verifier consumes them and queries nature.
inline ExecutionResult execute(const Machine& verifier, const Machine& action, World world,
                               std::size_t budget = kDefaultBudget)
{
    ExecutionResult r;
    r.post_world = std::move(world);
    detail::Executor ex(r.post_world, r.transcript, budget);
    auto finish = [&](Decision d, std::string fault = {}) {
        r.transcript.fault = std::move(fault);
        r.transcript.decide(d);
        r.steps_used = ex.steps();
        return std::move(r);
    };
    try {
        ex.run_program(action, Role::Action, "A");
    } catch (const BudgetExceeded& e) {
        return finish(Decision::Budget, e.what());
    } catch (const KernelFault& e) {
        return finish(Decision::Reject, std::string("action: ") + e.what());
    } catch (const ValueTypeError& e) {
        return finish(Decision::Reject, std::string("action: ") + e.what());
    }
    try {
        Output out = ex.run_program(verifier, Role::Verifier, "V");
        const bool accept = out && out->kind() == Value::Kind::Bool && out->as_bool();
        return finish(accept ? Decision::Accept : Decision::Reject);
    } catch (const BudgetExceeded& e) {
        return finish(Decision::Budget, e.what());
    } catch (const KernelFault& e) {
        return finish(Decision::Reject, std::string("verifier: ") + e.what());
    } catch (const ValueTypeError& e) {
        return finish(Decision::Reject, std::string("verifier: ") + e.what());
    }
}

/// Run a target against (nature, respondent). Targets must produce output.
inline Value run_target(const Machine& target, World world, std::size_t budget = kDefaultBudget)
{
    Transcript scratch;
    detail::Executor ex(world, scratch, budget);
    Output out = ex.run_program(target, Role::Target, "T");
    if (!out) {
        throw TargetNoOutput("target " + target.name() + " produced no output");
    }
    return *out;
}

/// Run a post-processor on the post-execution world with the transcript as input.
inline Output run_post_processor(const Machine& post, const ExecutionResult& result,
                                 std::size_t budget = kDefaultBudget)
{
    World world = result.post_world;
    Transcript scratch;
    detail::Executor ex(world, scratch, budget, &result.transcript);
    return ex.run_program(post, Role::PostProcessor, "P");
}

/// An action that runs `action` with every respondent call answered by a
/// private copy of `emulated` instead of the real respondent.
inline Machine emulate_respondent(const Machine& action, const Machine& emulated, std::string name = {})
{
    if (name.empty()) {
        name = action.name() + "[R:=" + emulated.name() + "]";
    }
    return Machine::program(std::move(name), [action, emulated](Invocation& ctx) -> Output {
        Machine local = emulated;
        return ctx.run_nested(action, NestedOptions{&local, false});
    });
}

/// The same program with an all-zeros randomness tape hardcoded.
inline Machine with_zero_tape(const Machine& program, std::string name = {})
{
    if (name.empty()) {
        name = program.name() + "[tape:=0]";
    }
    return Machine::program(std::move(name), [program](Invocation& ctx) -> Output {
        return ctx.run_nested(program, NestedOptions{nullptr, true});
    });
}

}  // namespace foregone
