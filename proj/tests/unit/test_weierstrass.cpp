#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "paritykit/errors.hpp"
#include "paritykit/weierstrass.hpp"

using namespace paritykit;

namespace {

Isomorphism random_integral_iso(std::mt19937_64& rng) {
    // u = 1/k keeps integral models integral for any integral r, s, t.
    std::uniform_int_distribution<int> k_dist(1, 4), shift(-9, 9), sign(0, 1);
    Isomorphism iso;
    iso.u = Rational(sign(rng) ? 1 : -1, k_dist(rng));
    iso.r = shift(rng);
    iso.s = shift(rng);
    iso.t = shift(rng);
    return iso;
}

}  // namespace

TEST(Weierstrass, KnownInvariants) {
    const auto inv = invariants(parse_curve("[0,-1,1,-10,-20]"));
    EXPECT_EQ(inv.disc, -161051);
    EXPECT_EQ(inv.c4, 496);
    EXPECT_EQ(inv.c6, 20008);
    EXPECT_EQ(inv.j_num, -122023936);
    EXPECT_EQ(inv.j_den, 161051);

    const auto e = invariants(parse_curve("[0,0,0,-1,0]"));
    EXPECT_EQ(e.disc, 64);
    EXPECT_EQ(e.j_num, 1728);
    EXPECT_EQ(e.j_den, 1);
}

TEST(Weierstrass, SingularCurveDetected) {
    EXPECT_TRUE(is_singular(parse_curve("[0,0,0,0,0]")));
    EXPECT_TRUE(is_singular(parse_curve("[0,0,0,-3,2]")));
    EXPECT_EQ(invariants(parse_curve("[0,0,0,-3,2]")).j_den, 0);
}

TEST(Weierstrass, DiscriminantIdentityHolds) {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 300; ++i) {
        const auto c = oracle::random_curve(rng, 1000);
        const auto inv = invariants(c);
        ASSERT_EQ(inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6, 1728 * inv.disc) << c;
        ASSERT_EQ(4 * inv.b8, inv.b2 * inv.b6 - inv.b4 * inv.b4) << c;
    }
}

TEST(Weierstrass, TransformScalesInvariants) {
    std::mt19937_64 rng(202);
    for (int i = 0; i < 200; ++i) {
        const auto c = oracle::random_curve(rng);
        const auto iso = random_integral_iso(rng);
        const auto d = transform(c, iso);
        const auto a = invariants(c), b = invariants(d);
        const Rational u2 = iso.u * iso.u;
        ASSERT_EQ(Rational(b.c4) * u2 * u2, Rational(a.c4));
        ASSERT_EQ(Rational(b.c6) * u2 * u2 * u2, Rational(a.c6));
        ASSERT_EQ(Rational(b.disc) * u2 * u2 * u2 * u2 * u2 * u2, Rational(a.disc));
        ASSERT_EQ(b.j_num, a.j_num);
        ASSERT_EQ(b.j_den, a.j_den);
        ASSERT_EQ(transform(d, iso.inverse()), c);
    }
}

TEST(Weierstrass, IsomorphismComposition) {
    std::mt19937_64 rng(303);
    for (int i = 0; i < 100; ++i) {
        const auto c = oracle::random_curve(rng);
        const auto f = random_integral_iso(rng), g = random_integral_iso(rng);
        ASSERT_EQ(transform(transform(c, f), g), transform(c, f.then(g)));
        ASSERT_EQ(f.then(f.inverse()), Isomorphism::identity());
    }
}

TEST(Weierstrass, NonIntegralTransformRejected) {
    Isomorphism iso;
    iso.r = Rational(1, 2);
    EXPECT_THROW(transform(parse_curve("[0,0,0,-1,0]"), iso), InvalidArgument);
}

TEST(Weierstrass, MinimalModelIsReducedAndIdempotent) {
    std::mt19937_64 rng(404);
    for (int i = 0; i < 100; ++i) {
        const auto c = oracle::random_curve(rng);
        const auto [m, iso] = minimal_model(c);
        ASSERT_EQ(transform(c, iso), m);
        ASSERT_TRUE(m.a1 == 0 || m.a1 == 1);
        ASSERT_TRUE(m.a3 == 0 || m.a3 == 1);
        ASSERT_TRUE(m.a2 >= -1 && m.a2 <= 1);
        const auto [again, iso2] = minimal_model(m);
        ASSERT_EQ(again, m);
        ASSERT_EQ(iso2, Isomorphism::identity());
        // Scaling up by u = 2 and 3 must come back to the same model.
        Isomorphism up;
        up.u = Rational(1, 6);
        const auto big = transform(m, up);
        ASSERT_EQ(minimal_model(big).first, m);
    }
}

TEST(Weierstrass, MinimalModelKnownCases) {
    // The Fermat cubic: y^2 = x^3 - 432 has minimal model y^2 + y = x^3 - 7.
    const auto [m, iso] = minimal_model(parse_curve("[0,0,0,0,-432]"));
    EXPECT_EQ(m, parse_curve("[0,0,1,0,-7]"));
    EXPECT_EQ(discriminant(m), -19683);
    EXPECT_EQ(minimal_model(parse_curve("[1,0,1,-1,-1]")).first, parse_curve("[1,0,1,-1,-1]"));
    const CurveModel big = parse_curve("[0,0,0,49572222344,41046438723984]");
    EXPECT_EQ(minimal_model(big).first, big);
}

TEST(Weierstrass, ParseAndFormat) {
    const auto c = parse_curve(" [ 1, 0 ,1,130884,-59725523 ] ");
    EXPECT_EQ(format_curve(c), "[1,0,1,130884,-59725523]");
    EXPECT_THROW(parse_curve("[1,2,3]"), Error);
    EXPECT_THROW(parse_curve("1,2,3,4,5"), Error);
    EXPECT_THROW(parse_curve("[1,2,x,4,5]"), Error);
}
