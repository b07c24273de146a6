#include <gtest/gtest.h>

#include <cstdlib>

#include "paritykit/congruence.hpp"
#include "paritykit/errors.hpp"
#include "paritykit/family.hpp"

using namespace paritykit;

namespace {

const CurveModel k69a = parse_curve("[1,0,1,-1,-1]");
const CurveModel k897d = parse_curve("[1,0,1,130884,-59725523]");
const CurveModel k11a1 = parse_curve("[0,-1,1,-10,-20]");
const CurveModel k11a3 = parse_curve("[0,-1,1,0,0]");
const CurveModel k37a = parse_curve("[0,0,1,-1,0]");

}  // namespace

TEST(Congruence, SturmBound) {
    EXPECT_EQ(sturm_bound(Int(897)), 224);
    EXPECT_EQ(sturm_bound(Int(11)), 2);
    EXPECT_EQ(sturm_bound(Int(1)), 1);
    // index(Gamma0(4)) = 6.
    EXPECT_EQ(sturm_bound(Int(4)), 1);
    EXPECT_EQ(sturm_bound(Int(32)), 8);
    EXPECT_THROW(sturm_bound(Int(0)), InvalidArgument);
}

TEST(Congruence, KnownPairVerified) {
    const auto v = check_congruence(k69a, k897d, Int(5));
    EXPECT_EQ(v.status, CongruenceStatus::Verified);
    EXPECT_EQ(v.level, 897);
    EXPECT_EQ(v.bound, 224);
    // 48 primes up to 224: 5 is skipped, 3 and 23 are bad for both.
    EXPECT_EQ(v.checked_primes + v.skipped_primes, 48u);
    EXPECT_EQ(v.skipped_primes, 3u);
    EXPECT_FALSE(v.witness);
    EXPECT_FALSE(v.caveat.empty());
}

TEST(Congruence, IsogenousCurvesAlwaysCongruent) {
    for (int p : {3, 5, 7, 13}) {
        EXPECT_EQ(check_congruence(k11a1, k11a3, Int(p)).status, CongruenceStatus::Verified) << p;
    }
}

TEST(Congruence, FailureCarriesSmallestWitness) {
    const auto v = check_congruence(k11a1, k37a, Int(3));
    ASSERT_EQ(v.status, CongruenceStatus::Failed);
    ASSERT_TRUE(v.witness);
    EXPECT_EQ(v.witness->ell, 7u);
    EXPECT_EQ(v.witness->trace1, -2);
    EXPECT_EQ(v.witness->trace2, -1);
    EXPECT_NE((v.witness->compared1 - v.witness->compared2) % 3, 0);
}

TEST(Congruence, Symmetric) {
    for (const auto& [a, b, p] : {std::tuple{k11a1, k37a, 3}, std::tuple{k69a, k897d, 5},
                                  std::tuple{k11a1, k37a, 5}, std::tuple{k69a, k37a, 7}}) {
        const auto x = check_congruence(a, b, Int(p));
        const auto y = check_congruence(b, a, Int(p));
        ASSERT_EQ(x.status, y.status);
        ASSERT_EQ(x.bound, y.bound);
        ASSERT_EQ(x.witness.has_value(), y.witness.has_value());
        if (x.witness) {
            EXPECT_EQ(x.witness->ell, y.witness->ell);
            EXPECT_EQ(x.witness->trace1, y.witness->trace2);
        }
    }
}

TEST(Congruence, ThreadedMatchesSerial) {
    CongruenceOptions par;
    par.jobs = 4;
    for (const auto& [a, b, p] : {std::tuple{k11a1, k37a, 3}, std::tuple{k69a, k897d, 5},
                                  std::tuple{k69a, k37a, 7}}) {
        const auto x = check_congruence(a, b, Int(p));
        const auto y = check_congruence(a, b, Int(p), par);
        ASSERT_EQ(x.status, y.status);
        ASSERT_EQ(x.checked_primes, y.checked_primes);
        if (x.witness) EXPECT_EQ(x.witness->ell, y.witness->ell);
    }
}

TEST(Congruence, BoundAboveCeilingIsInconclusive) {
    const auto v = check_congruence(base_curve(Int(1)), member(Int(1), Int(207)), Int(3));
    EXPECT_EQ(v.status, CongruenceStatus::Inconclusive);
    EXPECT_EQ(v.checked_primes, 0u);
    EXPECT_NE(v.caveat.find("ceiling"), std::string::npos);
}

TEST(Congruence, CeilingOverride) {
    ::setenv("PARITYKIT_MAX_ELL", "100", 1);
    const auto v = check_congruence(k69a, k897d, Int(5));
    ::unsetenv("PARITYKIT_MAX_ELL");
    EXPECT_EQ(v.status, CongruenceStatus::Inconclusive);
}

TEST(Congruence, TinyBudgetIsInconclusive) {
    CongruenceOptions o;
    o.budget = std::chrono::milliseconds(1);
    const auto v = check_congruence(base_curve(Int(1)), member(Int(1), Int(12)), Int(3), o);
    EXPECT_EQ(v.status, CongruenceStatus::Inconclusive);
}

TEST(Congruence, RejectsBadPrime) {
    EXPECT_THROW(check_congruence(k69a, k897d, Int(2)), InvalidArgument);
    EXPECT_THROW(check_congruence(k69a, k897d, Int(9)), InvalidArgument);
}
