#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace paritykit {

using Int = mpz_class;
using Rational = mpq_class;

struct PrimePower {
    Int prime;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Sorted by prime, exponents >= 1. The factorization of 1 is empty.
using Factorization = std::vector<PrimePower>;

struct FactorOptions {
    // Pollard-rho gives up (ComputationLimit) once this much wall time is spent.
    std::chrono::milliseconds budget{30000};
};

// Jacobi symbol (a/n) for odd n >= 1. Throws InvalidArgument otherwise.
int jacobi(const Int& a, const Int& n);
int jacobi(std::int64_t a, std::uint64_t n);

// Deterministic for n < 2^64; larger n throws ComputationLimit.
bool is_prime(const Int& n);
bool is_prime_u64(std::uint64_t n);

// Complete factorization of |n|. Trial division to 10^6, then Pollard-rho.
Factorization factor(const Int& n, const FactorOptions& options = {});

// Largest e with p^e | n. Throws InvalidArgument for n == 0.
unsigned valuation(const Int& n, const Int& p);

// Product of prime^exponent.
Int recompose(const Factorization& f);

// Primes <= limit, ascending.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

// Residue helpers. Results are in [0, m).
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t residue(const Int& a, std::uint64_t m);
Int mod(const Int& a, const Int& m);
// Inverse of a modulo m; throws InvalidArgument if gcd(a, m) != 1.
Int inverse_mod(const Int& a, const Int& m);

Int lcm(const Int& a, const Int& b);

// Fits in int64_t / uint64_t without loss.
bool fits_i64(const Int& a);
bool fits_u64(const Int& a);
std::int64_t to_i64(const Int& a);
std::uint64_t to_u64(const Int& a);
Int from_u64(std::uint64_t v);
Int from_i64(std::int64_t v);

std::string to_string(const Int& a);
// Decimal with optional sign; throws ParseError on anything else.
Int parse_int(const std::string& text);

}  // namespace paritykit
