#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "paritykit/kernels.hpp"

using namespace paritykit;
using kernels::Isa;

TEST(Kernels, LegendreTableMatchesEuler) {
    for (std::uint32_t ell : {3u, 5u, 7u, 101u, 7919u}) {
        const auto chi = kernels::legendre_table(ell);
        ASSERT_EQ(chi.size(), ell + kernels::kTablePadding);
        for (std::uint32_t v = 0; v < ell; ++v) ASSERT_EQ(chi[v], oracle::legendre(v, ell));
        for (std::size_t k = ell; k < chi.size(); ++k) ASSERT_EQ(chi[k], 0);
    }
}

TEST(Kernels, ScalarMatchesDirectSum) {
    for (std::uint32_t ell : {5u, 7u, 13u, 101u, 997u}) {
        const auto chi = kernels::legendre_table(ell);
        for (std::uint32_t a = 0; a < 5; ++a) {
            for (std::uint32_t b = 0; b < 5; ++b) {
                std::int64_t expect = 0;
                for (std::int64_t x = 0; x < ell; ++x) {
                    expect += oracle::legendre((x * x % ell * x + a * x + b) % ell, ell);
                }
                ASSERT_EQ(kernels::cubic_character_sum(chi, ell, a, b, Isa::Scalar), expect);
            }
        }
    }
}

TEST(Kernels, VectorVariantsMatchScalar) {
    if (!kernels::available(Isa::Avx2)) GTEST_SKIP() << "AVX2 not available";
    std::mt19937_64 rng(42);
    const auto primes = primes_up_to(200000);
    // Small primes exercise the tail handling; large ones the main loop.
    std::vector<std::uint32_t> sample(primes.begin() + 1, primes.begin() + 60);
    for (int i = 0; i < 60; ++i) sample.push_back(primes[rng() % primes.size()]);
    for (std::uint32_t ell : sample) {
        if (ell < 3) continue;
        const auto chi = kernels::legendre_table(ell);
        for (int k = 0; k < 4; ++k) {
            const auto a = static_cast<std::uint32_t>(rng() % ell);
            const auto b = static_cast<std::uint32_t>(rng() % ell);
            ASSERT_EQ(kernels::cubic_character_sum(chi, ell, a, b, Isa::Avx2),
                      kernels::cubic_character_sum(chi, ell, a, b, Isa::Scalar))
                << ell << " " << a << " " << b;
        }
    }
}

TEST(Kernels, NearLargestModulus) {
    if (!kernels::available(Isa::Avx2)) GTEST_SKIP() << "AVX2 not available";
    // Largest prime below 2^25 keeps the table small while stressing the wraparound.
    const std::uint32_t ell = 33554393;
    const auto chi = kernels::legendre_table(ell);
    EXPECT_EQ(kernels::cubic_character_sum(chi, ell, ell - 1, ell - 2, Isa::Avx2),
              kernels::cubic_character_sum(chi, ell, ell - 1, ell - 2, Isa::Scalar));
}

TEST(Kernels, DispatchNames) {
    EXPECT_EQ(kernels::name(Isa::Scalar), "scalar");
    EXPECT_TRUE(kernels::available(Isa::Scalar));
    EXPECT_TRUE(kernels::available(kernels::selected()));
}
