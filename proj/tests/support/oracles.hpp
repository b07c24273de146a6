#pragma once

// Slow, obviously-correct reference computations. Nothing here calls into the library's
// number theory, so agreement with it is meaningful.

#include <cstdint>
#include <random>
#include <vector>

#include "paritykit/weierstrass.hpp"

namespace oracle {

inline bool is_prime_trial(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 r = 1, x = b % m;
    for (; e; e >>= 1, x = x * x % m)
        if (e & 1) r = r * x % m;
    return static_cast<std::uint64_t>(r);
}

inline std::int64_t residue(const paritykit::Int& a, std::uint64_t m) {
    paritykit::Int r = a % static_cast<unsigned long>(m);
    if (r < 0) r += static_cast<unsigned long>(m);
    return r.get_si();
}

// Legendre symbol by Euler's criterion, p an odd prime.
inline int legendre(std::int64_t a, std::uint64_t p) {
    const auto r = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(p)) + p) % p);
    if (r == 0) return 0;
    return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// Jacobi symbol as the product of Legendre symbols over a trial-division factorization.
inline int jacobi(std::int64_t a, std::uint64_t n) {
    int out = 1;
    for (std::uint64_t q = 3; n > 1; q += 2) {
        if (q * q > n) q = n;
        while (n % q == 0) {
            out *= legendre(a, q);
            n /= q;
        }
    }
    return out;
}

// #E(F_ell) by trying every (x, y) on the long Weierstrass model.
inline std::uint64_t count_points(const paritykit::CurveModel& c, std::uint64_t ell) {
    const std::int64_t a1 = residue(c.a1, ell), a2 = residue(c.a2, ell), a3 = residue(c.a3, ell),
                       a4 = residue(c.a4, ell), a6 = residue(c.a6, ell);
    const auto m = static_cast<std::int64_t>(ell);
    std::uint64_t count = 1;
    for (std::int64_t x = 0; x < m; ++x) {
        const std::int64_t rhs = ((x * x % m * x + a2 * x % m * x + a4 * x + a6) % m + m) % m;
        for (std::int64_t y = 0; y < m; ++y) {
            if ((y * y + a1 * x % m * y + a3 * y) % m == rhs) ++count;
        }
    }
    return count;
}

inline std::int64_t trace(const paritykit::CurveModel& c, std::uint64_t ell) {
    return static_cast<std::int64_t>(ell + 1) - static_cast<std::int64_t>(count_points(c, ell));
}

// Multiplicity of r as a root of sum coeffs[i] X^i mod p: the first non-vanishing Hasse
// derivative D^k P(r) = sum_i C(i, k) coeffs[i] r^(i-k).
inline unsigned root_multiplicity(const std::vector<std::int64_t>& coeffs, std::int64_t r,
                                  std::int64_t p) {
    const auto binom = [](std::int64_t n, std::int64_t k) {
        std::int64_t b = 1;
        for (std::int64_t i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
        return b;
    };
    const auto deg = static_cast<std::int64_t>(coeffs.size()) - 1;
    for (std::int64_t k = 0; k <= deg; ++k) {
        std::int64_t value = 0, power = 1;
        for (std::int64_t i = k; i <= deg; ++i) {
            value = (value + binom(i, k) % p * (coeffs[i] % p) % p * power) % p;
            power = power * r % p;
        }
        if ((value % p + p) % p != 0) return static_cast<unsigned>(k);
    }
    return static_cast<unsigned>(deg);
}

// Random nonsingular model with small coefficients.
inline paritykit::CurveModel random_curve(std::mt19937_64& rng, int bound = 50) {
    std::uniform_int_distribution<int> small(0, 1), mid(-1, 1), big(-bound, bound);
    for (;;) {
        paritykit::CurveModel c{small(rng), mid(rng), small(rng), big(rng), big(rng)};
        if (!paritykit::is_singular(c)) return c;
    }
}

}  // namespace oracle
