#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace foregone::toys {

class LengthMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DomainExceeded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kMaxToyBytes = 8;

/// Bitwise XOR of equal-length strings.
inline std::string otp(const std::string& k, const std::string& m)
{
    if (k.size() != m.size()) {
        throw LengthMismatch("pad of " + std::to_string(k.size()) + " bytes for a message of " +
                             std::to_string(m.size()));
    }
    std::string out(m.size(), '\0');
    for (std::size_t i = 0; i < m.size(); ++i) {
        out[i] = static_cast<char>(static_cast<unsigned char>(k[i]) ^ static_cast<unsigned char>(m[i]));
    }
    return out;
}

/// Randomized pad encryption: ρ ‖ (k ⊕ ρ ⊕ m). All three share one length.
inline std::string randomized_encrypt(const std::string& k, const std::string& m, const std::string& rho)
{
    return rho + otp(otp(k, rho), m);
}

inline std::string randomized_decrypt(const std::string& k, const std::string& ct)
{
    const std::size_t n = ct.size() / 2;
    if (ct.size() != 2 * n || k.size() != n) {
        throw LengthMismatch("ciphertext of " + std::to_string(ct.size()) + " bytes for a key of " +
                             std::to_string(k.size()));
    }
    return otp(otp(k, ct.substr(0, n)), ct.substr(n));
}

/// Every byte string of length at most `max_len`, shortest first, then
/// lexicographic by byte value.
inline std::vector<std::string> all_strings(std::size_t max_len)
{
    std::vector<std::string> out{""};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (int b = 0; b < 256; ++b) {
                out.push_back(out[i] + static_cast<char>(b));
            }
        }
        begin = end;
    }
    return out;
}

//
// Commitments
//

enum class BindingClass { PerfectlyBinding, Equivocable };

inline const char* to_string(BindingClass b)
{
    return b == BindingClass::PerfectlyBinding ? "perfectly-binding" : "equivocable";
}

struct Commitment {
    std::string c;
    std::string d;

    friend bool operator==(const Commitment&, const Commitment&) = default;
};

struct CommitmentScheme {
    std::string name;
    BindingClass binding = BindingClass::PerfectlyBinding;
    std::function<Commitment(const std::string& x, const std::string& r)> commit;
    std::function<bool(const std::string& c, const std::string& d, const std::string& x)> check;
    /// A decommitment opening `c` to `x`; empty for binding schemes.
    std::function<std::string(const std::string& c, const std::string& x)> equivocate;
};

namespace detail {

inline void require_toy(const std::string& s, const char* what)
{
    if (s.size() > kMaxToyBytes) {
        throw DomainExceeded(std::string(what) + " of " + std::to_string(s.size()) + " bytes exceeds the toy domain");
    }
}

}  // namespace detail

/// c is the length-prefixed message; r goes only into d. c determines x.
inline CommitmentScheme transparent_scheme()
{
    CommitmentScheme s;
    s.name = "transparent";
    s.binding = BindingClass::PerfectlyBinding;
    s.commit = [](const std::string& x, const std::string& r) {
        detail::require_toy(x, "message");
        detail::require_toy(r, "randomness");
        return Commitment{std::string(1, static_cast<char>(x.size())) + x, r};
    };
    s.check = [](const std::string& c, const std::string& d, const std::string& x) {
        return x.size() <= kMaxToyBytes && d.size() <= kMaxToyBytes &&
               c == std::string(1, static_cast<char>(x.size())) + x;
    };
    return s;
}

/// c = x ⊕ r, d = r. Any c opens to any same-length x.
inline CommitmentScheme xor_pad_scheme()
{
    CommitmentScheme s;
    s.name = "xor-pad";
    s.binding = BindingClass::Equivocable;
    s.commit = [](const std::string& x, const std::string& r) {
        detail::require_toy(x, "message");
        return Commitment{otp(r, x), r};
    };
    s.check = [](const std::string& c, const std::string& d, const std::string& x) {
        return c.size() == x.size() && d.size() == x.size() && otp(d, x) == c;
    };
    s.equivocate = [](const std::string& c, const std::string& x) { return otp(c, x); };
    return s;
}

/// c = r, d = x: the commitment ignores the message entirely.
inline CommitmentScheme constant_scheme()
{
    CommitmentScheme s;
    s.name = "constant";
    s.binding = BindingClass::Equivocable;
    s.commit = [](const std::string& x, const std::string& r) {
        detail::require_toy(x, "message");
        detail::require_toy(r, "randomness");
        return Commitment{r, x};
    };
    s.check = [](const std::string&, const std::string& d, const std::string& x) { return d == x; };
    s.equivocate = [](const std::string&, const std::string& x) { return x; };
    return s;
}

inline std::optional<CommitmentScheme> scheme_by_name(const std::string& name)
{
    if (name == "transparent") {
        return transparent_scheme();
    }
    if (name == "xor-pad") {
        return xor_pad_scheme();
    }
    if (name == "constant") {
        return constant_scheme();
    }
    return std::nullopt;
}

/// (x, x′, d, d′, c) with x ≠ x′ and both openings passing.
struct DoubleOpening {
    std::string x, x2, d, d2, c;
};

/// A correctness failure: check(commit(x, r), x) = 0.
struct CorrectnessFailure {
    std::string x, r;
};

inline std::optional<CorrectnessFailure> correctness_sweep(const CommitmentScheme& s, std::size_t max_len)
{
    const auto dom = all_strings(max_len);
    for (const auto& x : dom) {
        for (const auto& r : dom) {
            Commitment cd;
            try {
                cd = s.commit(x, r);
            } catch (const std::invalid_argument&) {
                continue;
            }
            if (!s.check(cd.c, cd.d, x)) {
                return CorrectnessFailure{x, r};
            }
        }
    }
    return std::nullopt;
}

/// Exhaustive search for a double opening. Commitments range over the
/// scheme's image on the domain; messages and decommitments over the
/// whole domain.
inline std::optional<DoubleOpening> double_opening_sweep(const CommitmentScheme& s, std::size_t max_len)
{
    const auto dom = all_strings(max_len);
    std::map<std::string, std::pair<std::string, std::string>> image;  // c -> one honest (x, d)
    for (const auto& x : dom) {
        for (const auto& r : dom) {
            try {
                const Commitment cd = s.commit(x, r);
                image.emplace(cd.c, std::make_pair(x, cd.d));
            } catch (const std::invalid_argument&) {
            }
        }
    }
    for (const auto& [c, honest] : image) {
        const auto& [x, d] = honest;
        for (const auto& x2 : dom) {
            if (x2 == x) {
                continue;
            }
            for (const auto& d2 : dom) {
                if (s.check(c, d2, x2)) {
                    return DoubleOpening{x, x2, d, d2, c};
                }
            }
        }
    }
    return std::nullopt;
}

/// Number of same-length r per commitment value c, for a fixed x.
inline std::map<std::string, std::size_t> commitment_histogram(const CommitmentScheme& s, const std::string& x)
{
    std::map<std::string, std::size_t> h;
    for (const auto& r : all_strings(x.size())) {
        if (r.size() != x.size()) {
            continue;
        }
        ++h[s.commit(x, r).c];
    }
    return h;
}

/// Hypothesis for fixed-r commitments: every commitment in the image
/// misses Com(x′, r) for some x′, whatever the decommitment.
inline bool fixed_r_hypothesis_holds(const CommitmentScheme& s, const std::string& r, std::size_t max_len)
{
    const auto dom = all_strings(max_len);
    std::vector<std::optional<std::string>> fixed;  // Com(x′, r).c over the domain, where defined
    for (const auto& x : dom) {
        try {
            fixed.emplace_back(s.commit(x, r).c);
        } catch (const std::invalid_argument&) {
            fixed.emplace_back();
        }
    }
    for (const auto& x : dom) {
        for (const auto& r2 : dom) {
            std::string c;
            try {
                c = s.commit(x, r2).c;
            } catch (const std::invalid_argument&) {
                continue;
            }
            bool escape = false;
            for (const auto& fc : fixed) {
                if (!fc || *fc != c) {
                    escape = true;
                    break;
                }
            }
            if (!escape) {
                return false;
            }
        }
    }
    return true;
}

//
// Hashes
//

struct HashSpec {
    std::string name;
    std::function<std::string(const std::string&)> evaluate;
    std::optional<std::pair<std::string, std::string>> known_collision;
    bool injective = false;
};

/// Per byte b ↦ 167·b + 13 (mod 256), then reversed. 167 is odd, so the
/// byte map is a bijection and the whole map is injective.
inline std::string injective_digest(const std::string& x)
{
    std::string out(x.rbegin(), x.rend());
    for (auto& ch : out) {
        ch = static_cast<char>((static_cast<unsigned>(static_cast<unsigned char>(ch)) * 167U + 13U) & 0xffU);
    }
    return out;
}

inline HashSpec injective_hash()
{
    return HashSpec{"injective", injective_digest, std::nullopt, true};
}

/// Injective except that `x2` hashes like `x1`.
inline HashSpec colliding_hash(std::string x1 = "ok", std::string x2 = "no")
{
    HashSpec h;
    h.name = "colliding";
    h.evaluate = [x1, x2](const std::string& x) { return injective_digest(x == x2 ? x1 : x); };
    h.known_collision = std::make_pair(std::move(x1), std::move(x2));
    return h;
}

inline std::optional<HashSpec> hash_by_name(const std::string& name)
{
    if (name == "injective") {
        return injective_hash();
    }
    if (name == "colliding") {
        return colliding_hash();
    }
    return std::nullopt;
}

/// First pair (in domain order) with equal digests.
inline std::optional<std::pair<std::string, std::string>> collision_sweep(const HashSpec& h, std::size_t max_len)
{
    std::map<std::string, std::string> seen;
    for (const auto& x : all_strings(max_len)) {
        auto [it, fresh] = seen.emplace(h.evaluate(x), x);
        if (!fresh) {
            return std::make_pair(it->second, x);
        }
    }
    return std::nullopt;
}

/// Every preimage of `y` over the domain.
inline std::vector<std::string> preimages(const HashSpec& h, const std::string& y, std::size_t max_len)
{
    std::vector<std::string> out;
    for (const auto& x : all_strings(max_len)) {
        if (h.evaluate(x) == y) {
            out.push_back(x);
        }
    }
    return out;
}

}  // namespace foregone::toys
