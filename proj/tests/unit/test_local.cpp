#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "paritykit/errors.hpp"
#include "paritykit/local.hpp"

using namespace paritykit;

namespace {

struct Known {
    const char* curve;
    long conductor;
};

// Conductors from the standard tables.
const Known kKnown[] = {
    {"[0,-1,1,-10,-20]", 11}, {"[0,0,1,-1,0]", 37},     {"[0,0,1,0,-7]", 27},
    {"[0,0,0,0,-432]", 27},   {"[1,0,1,4,-6]", 14},     {"[1,1,1,-10,-10]", 15},
    {"[0,0,0,0,1]", 36},      {"[0,0,0,-4,0]", 64},     {"[0,0,0,1,0]", 64},
    {"[0,1,1,-2,0]", 389},    {"[0,1,1,0,0]", 43},      {"[1,-1,1,0,0]", 53},
    {"[0,1,1,-9,-15]", 19},   {"[0,1,0,4,4]", 20},      {"[1,0,0,-4,-1]", 21},
    {"[1,0,1,-5,-8]", 26},    {"[1,0,1,1,2]", 30},      {"[1,-1,1,-1,-14]", 17},
    {"[0,0,0,-1,0]", 32},     {"[1,0,1,-1,-1]", 69},    {"[1,0,1,130884,-59725523]", 897},
};

}  // namespace

TEST(Local, ConductorsMatchTables) {
    for (const auto& k : kKnown) EXPECT_EQ(conductor(parse_curve(k.curve)), k.conductor) << k.curve;
}

TEST(Local, ReductionTypes) {
    // 11a: split I5 at 11.
    auto d = tate_local(parse_curve("[0,-1,1,-10,-20]"), Int(11));
    EXPECT_EQ(d.type, ReductionType::SplitMultiplicative);
    EXPECT_EQ(d.kodaira, "I5");
    EXPECT_EQ(d.trace, 1);
    // 14a: nonsplit at 2, split at 7.
    d = tate_local(parse_curve("[1,0,1,4,-6]"), Int(2));
    EXPECT_EQ(d.type, ReductionType::NonsplitMultiplicative);
    d = tate_local(parse_curve("[1,0,1,4,-6]"), Int(7));
    EXPECT_EQ(d.type, ReductionType::SplitMultiplicative);
    // 27a: additive at 3 with f = 3.
    d = tate_local(parse_curve("[0,0,1,0,-7]"), Int(3));
    EXPECT_EQ(d.type, ReductionType::Additive);
    EXPECT_EQ(d.cond_exp, 3u);
    EXPECT_EQ(d.trace, 0);
    // y^2 = x^3 - x at 2: f = 5.
    d = tate_local(parse_curve("[0,0,0,-1,0]"), Int(2));
    EXPECT_EQ(d.type, ReductionType::Additive);
    EXPECT_EQ(d.cond_exp, 5u);
}

TEST(Local, ExampleTraces) {
    const auto e = parse_curve("[0,0,0,-1,0]");
    EXPECT_EQ(frobenius_trace(e, 5), -2);
    EXPECT_EQ(count_points(e, Int(5)), 8u);
    EXPECT_EQ(frobenius_trace(e, 3), 0);
    const auto e69 = parse_curve("[1,0,1,-1,-1]");
    EXPECT_EQ(tate_local(e69, Int(13)).trace, -6);
    EXPECT_EQ(tate_local(e69, Int(5)).trace, 0);
}

TEST(Local, CountMatchesEnumerationOnRandomCurves) {
    std::mt19937_64 rng(505);
    const auto primes = primes_up_to(200);
    for (int i = 0; i < 20; ++i) {
        const auto c = oracle::random_curve(rng);
        const Int disc = discriminant(c);
        for (std::uint32_t ell : primes) {
            if (disc % ell == 0) continue;
            ASSERT_EQ(count_points(c, Int(ell)), oracle::count_points(c, ell)) << c << " at " << ell;
        }
    }
}

TEST(Local, CountingMethodsAgree) {
    std::mt19937_64 rng(606);
    std::uniform_int_distribution<std::uint64_t> dist(0, 1u << 30);
    const auto primes = primes_up_to(40000);
    for (int i = 0; i < 300; ++i) {
        const std::uint64_t ell = primes[primes.size() - 1 - (dist(rng) % 3000)];
        const std::uint64_t a = dist(rng) % ell, b = dist(rng) % ell;
        if ((4 * a % ell * a % ell * a + 27 * b % ell * b) % ell == 0) continue;
        const auto chi = short_model_trace(ell, a, b, CountMethod::CharacterSum);
        ASSERT_EQ(short_model_trace(ell, a, b, CountMethod::BabyStepGiantStep), chi) << ell;
        ASSERT_LE(chi * chi, static_cast<std::int64_t>(4 * ell));
    }
}

TEST(Local, BadPrimeCountingRejected) {
    EXPECT_THROW(count_points(parse_curve("[0,-1,1,-10,-20]"), Int(11)), Error);
    EXPECT_THROW(reduce_at(parse_curve("[0,0,0,0,0]"), Int(5)), InvalidArgument);
}

TEST(Local, SupersingularGate) {
    EXPECT_TRUE(is_supersingular(parse_curve("[1,0,1,-1,-1]"), Int(5)));
    EXPECT_TRUE(is_supersingular(parse_curve("[0,0,0,-1,0]"), Int(3)));
    EXPECT_FALSE(is_supersingular(parse_curve("[0,-1,1,-10,-20]"), Int(3)));
    EXPECT_THROW(is_supersingular(parse_curve("[1,0,1,-1,-1]"), Int(3)), GateFailure);
    EXPECT_THROW(is_supersingular(parse_curve("[1,0,1,-1,-1]"), Int(2)), InvalidArgument);
}

TEST(Local, EulerPolynomials) {
    LocalData d;
    d.ell = 13;
    d.type = ReductionType::Good;
    d.trace = -6;
    EXPECT_EQ(euler_poly(d).coeffs, (std::vector<Int>{1, 6, 13}));
    d.type = ReductionType::SplitMultiplicative;
    EXPECT_EQ(euler_poly(d).degree(), 1);
    d.type = ReductionType::Additive;
    EXPECT_EQ(euler_poly(d).degree(), 0);
}

TEST(Local, ReductionTypeInvariantUnderTransform) {
    std::mt19937_64 rng(707);
    std::uniform_int_distribution<int> shift(-5, 5), u_dist(1, 3);
    for (int i = 0; i < 40; ++i) {
        const auto c = oracle::random_curve(rng);
        Isomorphism iso;
        iso.u = Rational(1, u_dist(rng));
        iso.r = shift(rng);
        iso.s = shift(rng);
        iso.t = shift(rng);
        const auto d = transform(c, iso);
        const auto bad = bad_local_data(c);
        ASSERT_EQ(conductor(d), conductor(c));
        for (const auto& ld : bad) {
            const auto other = tate_local(d, ld.ell);
            ASSERT_EQ(other.type, ld.type);
            ASSERT_EQ(other.cond_exp, ld.cond_exp);
            ASSERT_EQ(other.kodaira, ld.kodaira);
        }
        for (std::uint64_t ell : {5u, 7u, 11u, 13u, 101u}) {
            if (discriminant(c) % ell == 0) continue;
            ASSERT_EQ(tate_local(d, Int(ell)).trace, tate_local(c, Int(ell)).trace);
        }
    }
}
