#include "foregone/crypto_toys.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

using namespace foregone::toys;

namespace {

std::string random_bytes(std::mt19937_64& rng, std::size_t n)
{
    std::string s(n, '\0');
    for (auto& c : s) {
        c = static_cast<char>(rng() & 0xff);
    }
    return s;
}

}  // namespace

TEST(Otp, InvolutionIdentityAndComplement)
{
    std::mt19937_64 rng(1);
    for (std::size_t n = 0; n <= kMaxToyBytes; ++n) {
        for (int i = 0; i < 50; ++i) {
            const auto k = random_bytes(rng, n);
            const auto m = random_bytes(rng, n);
            EXPECT_EQ(otp(k, otp(k, m)), m);
            EXPECT_EQ(otp(std::string(n, '\0'), m), m);
            std::string flipped = m;
            for (auto& c : flipped) {
                c = static_cast<char>(~static_cast<unsigned char>(c));
            }
            EXPECT_EQ(otp(std::string(n, '\xff'), m), flipped);
        }
    }
    EXPECT_THROW((void)otp("ab", "a"), LengthMismatch);
}

TEST(Otp, RandomizedEncryptionRoundTrips)
{
    std::mt19937_64 rng(2);
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto k = random_bytes(rng, n);
        const auto m = random_bytes(rng, n);
        const auto rho1 = random_bytes(rng, n);
        auto rho2 = rho1;
        rho2[0] = static_cast<char>(rho2[0] ^ 1);
        EXPECT_EQ(randomized_decrypt(k, randomized_encrypt(k, m, rho1)), m);
        EXPECT_NE(randomized_encrypt(k, m, rho1), randomized_encrypt(k, m, rho2));
    }
    EXPECT_THROW((void)randomized_decrypt("ab", "abc"), LengthMismatch);
}

TEST(Domain, AllStringsCountsAndOrder)
{
    const auto d = all_strings(2);
    EXPECT_EQ(d.size(), 1U + 256U + 256U * 256U);
    EXPECT_EQ(d.front(), "");
    EXPECT_EQ(d[1], std::string(1, '\0'));
    EXPECT_EQ(std::set<std::string>(d.begin(), d.end()).size(), d.size());
}

TEST(Commitment, EverySchemeIsCorrectOverTheDomain)
{
    for (const auto& s : {transparent_scheme(), xor_pad_scheme(), constant_scheme()}) {
        EXPECT_FALSE(correctness_sweep(s, 1)) << s.name;
    }
}

TEST(Commitment, TransparentHasNoDoubleOpening)
{
    EXPECT_FALSE(double_opening_sweep(transparent_scheme(), 1));
    // Independent oracle over 2-byte messages: c never repeats across
    // distinct messages, whatever r is.
    std::map<std::string, std::string> opener;
    const std::vector<std::string> rs{"", "k", "zz"};
    for (const auto& x : all_strings(2)) {
        for (const auto& r : rs) {
            const auto [it, fresh] = opener.emplace(transparent_scheme().commit(x, r).c, x);
            EXPECT_TRUE(fresh || it->second == x);
        }
    }
}

TEST(Commitment, XorPadEquivocates)
{
    const auto s = xor_pad_scheme();
    const auto twice = double_opening_sweep(s, 1);
    ASSERT_TRUE(twice);
    EXPECT_NE(twice->x, twice->x2);
    EXPECT_TRUE(s.check(twice->c, twice->d, twice->x));
    EXPECT_TRUE(s.check(twice->c, twice->d2, twice->x2));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const auto n = 1 + rng() % 4;
        const auto x = random_bytes(rng, n);
        const auto x2 = random_bytes(rng, n);
        const auto c = s.commit(x, random_bytes(rng, n)).c;
        EXPECT_TRUE(s.check(c, s.equivocate(c, x2), x2));
    }
}

TEST(Commitment, XorPadHidesTheMessage)
{
    const auto s = xor_pad_scheme();
    for (const std::string& x : {std::string("\x00", 1), std::string("a"), std::string("\xff")}) {
        const auto h = commitment_histogram(s, x);
        EXPECT_EQ(h.size(), 256U);
        for (const auto& [c, n] : h) {
            EXPECT_EQ(n, 1U);
        }
    }
}

TEST(Commitment, FixedRandomnessHypothesis)
{
    EXPECT_TRUE(fixed_r_hypothesis_holds(transparent_scheme(), "r", 1));
    EXPECT_TRUE(fixed_r_hypothesis_holds(xor_pad_scheme(), "r", 1));
    EXPECT_FALSE(fixed_r_hypothesis_holds(constant_scheme(), "r", 1));
}

TEST(Commitment, ToyDomainIsEnforced)
{
    EXPECT_THROW((void)transparent_scheme().commit(std::string(kMaxToyBytes + 1, 'a'), ""), DomainExceeded);
    EXPECT_FALSE(scheme_by_name("sha256"));
}

TEST(Hash, InjectiveHashHasNoCollisionsAgainstBruteForce)
{
    const auto h = injective_hash();
    std::set<std::string> digests;
    const auto dom = all_strings(2);
    for (const auto& x : dom) {
        digests.insert(h.evaluate(x));
    }
    EXPECT_EQ(digests.size(), dom.size());
    EXPECT_FALSE(collision_sweep(h, 2));
}

TEST(Hash, CollidingHashHasExactlyItsKnownCollision)
{
    const auto h = colliding_hash();
    std::map<std::string, std::vector<std::string>> by_digest;
    for (const auto& x : all_strings(2)) {
        by_digest[h.evaluate(x)].push_back(x);
    }
    std::vector<std::vector<std::string>> shared;
    for (const auto& [y, xs] : by_digest) {
        if (xs.size() > 1) {
            shared.push_back(xs);
        }
    }
    ASSERT_EQ(shared.size(), 1U);
    EXPECT_EQ(std::set<std::string>(shared[0].begin(), shared[0].end()), (std::set<std::string>{"ok", "no"}));
    const auto c = collision_sweep(h, 2);
    ASSERT_TRUE(c);
    EXPECT_EQ(h.evaluate(c->first), h.evaluate(c->second));
    EXPECT_EQ(preimages(h, h.evaluate("ok"), 2).size(), 2U);
    EXPECT_EQ(preimages(injective_hash(), injective_hash().evaluate("ok"), 2), std::vector<std::string>{"ok"});
}
