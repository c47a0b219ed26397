#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace foregone {

/// Raised when machine code asks a Value for the wrong alternative.
class ValueTypeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Index of a slot in nature.
struct Location {
    std::uint64_t index = 0;

    friend bool operator==(const Location&, const Location&) = default;
    friend auto operator<=>(const Location&, const Location&) = default;
};

/// The closed value algebra exchanged between machines.
///
/// `Value{}` is the null value (written ⊥). Equality and ordering are
/// structural and total, so any two values can be compared for the
/// exact-equality reading of ≡ used by the checkers.
class Value {
public:
    enum class Kind { Null, Bool, Integer, Bytes, Pair, Location };

    Value() = default;

    static Value null() { return Value{}; }
    static Value boolean(bool b) { return Value{Repr{std::in_place_index<1>, b}}; }
    static Value integer(std::int64_t i) { return Value{Repr{std::in_place_index<2>, i}}; }
    static Value bytes(std::string b) { return Value{Repr{std::in_place_index<3>, std::move(b)}}; }
    static Value pair(Value first, Value second);
    static Value location(Location l) { return Value{Repr{std::in_place_index<5>, l}}; }
    static Value location(std::uint64_t index) { return location(Location{index}); }

    [[nodiscard]] Kind kind() const { return static_cast<Kind>(repr_.index()); }
    [[nodiscard]] bool is_null() const { return kind() == Kind::Null; }
    [[nodiscard]] bool is_bytes() const { return kind() == Kind::Bytes; }
    [[nodiscard]] bool is_pair() const { return kind() == Kind::Pair; }

    [[nodiscard]] bool as_bool() const { return get<1>("bool"); }
    [[nodiscard]] std::int64_t as_integer() const { return get<2>("integer"); }
    [[nodiscard]] const std::string& as_bytes() const { return get<3>("bytes"); }
    [[nodiscard]] Location as_location() const { return get<5>("location"); }
    [[nodiscard]] const Value& first() const;
    [[nodiscard]] const Value& second() const;

    friend bool operator==(const Value& a, const Value& b) { return compare(a, b) == 0; }
    friend std::strong_ordering operator<=>(const Value& a, const Value& b)
    {
        const int c = compare(a, b);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// Canonical, injective rendering used in transcripts, fingerprints and reports.
    [[nodiscard]] std::string to_string() const
    {
        switch (kind()) {
        case Kind::Null:
            return "⊥";
        case Kind::Bool:
            return as_bool() ? "true" : "false";
        case Kind::Integer:
            return std::to_string(as_integer());
        case Kind::Bytes:
            return render_bytes(as_bytes());
        case Kind::Pair:
            return "(" + first().to_string() + ", " + second().to_string() + ")";
        case Kind::Location:
            return "@" + std::to_string(as_location().index);
        }
        return {};
    }

private:
    struct PairBox;
    using Repr = std::variant<std::monostate, bool, std::int64_t, std::string,
                              std::shared_ptr<const PairBox>, Location>;

    explicit Value(Repr r) : repr_(std::move(r)) {}

    template <std::size_t I>
    const std::variant_alternative_t<I, Repr>& get(const char* what) const
    {
        if (repr_.index() != I) {
            throw ValueTypeError(std::string("expected ") + what + ", got " + to_string());
        }
        return std::get<I>(repr_);
    }

    static int compare(const Value& a, const Value& b)
    {
        if (a.repr_.index() != b.repr_.index()) {
            return a.repr_.index() < b.repr_.index() ? -1 : 1;
        }
        switch (a.kind()) {
        case Kind::Null:
            return 0;
        case Kind::Bool:
            return three_way(a.as_bool(), b.as_bool());
        case Kind::Integer:
            return three_way(a.as_integer(), b.as_integer());
        case Kind::Bytes:
            return a.as_bytes().compare(b.as_bytes()) < 0 ? -1 : (a.as_bytes() == b.as_bytes() ? 0 : 1);
        case Kind::Pair: {
            const int c = compare(a.first(), b.first());
            return c != 0 ? c : compare(a.second(), b.second());
        }
        case Kind::Location:
            return three_way(a.as_location().index, b.as_location().index);
        }
        return 0;
    }

    template <typename T>
    static int three_way(const T& x, const T& y)
    {
        return x < y ? -1 : (y < x ? 1 : 0);
    }

    static std::string render_bytes(const std::string& b)
    {
        bool printable = true;
        for (unsigned char ch : b) {
            if (ch < 0x20 || ch > 0x7e || ch == '"' || ch == '\\') {
                printable = false;
                break;
            }
        }
        if (printable) {
            return "\"" + b + "\"";
        }
        static constexpr char kHex[] = "0123456789abcdef";
        std::string out = "0x";
        for (unsigned char ch : b) {
            out.push_back(kHex[ch >> 4]);
            out.push_back(kHex[ch & 0xf]);
        }
        return out;
    }

    Repr repr_;
};

struct Value::PairBox {
    Value first;
    Value second;
};

inline Value Value::pair(Value first, Value second)
{
    return Value{Repr{std::in_place_index<4>,
                      std::make_shared<const PairBox>(PairBox{std::move(first), std::move(second)})}};
}

inline const Value& Value::first() const { return get<4>("pair")->first; }
inline const Value& Value::second() const { return get<4>("pair")->second; }

/// Output of a method call. `std::nullopt` is Absent: the method halted
/// without output, which is distinct from returning ⊥.
using Output = std::optional<Value>;

inline std::string to_string(const Output& out) { return out ? out->to_string() : "<absent>"; }

inline Value bytes(std::string s) { return Value::bytes(std::move(s)); }

}  // namespace foregone
