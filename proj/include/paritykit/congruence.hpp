#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "paritykit/arith.hpp"
#include "paritykit/local.hpp"
#include "paritykit/weierstrass.hpp"

namespace paritykit {

enum class CongruenceStatus { Verified, Failed, Inconclusive };

std::string_view to_string(CongruenceStatus status);

struct CongruenceWitness {
    std::uint64_t ell = 0;
    std::int64_t trace1 = 0;
    std::int64_t trace2 = 0;
    // Values actually compared mod p: a_l for good primes, a_l (l + 1) for multiplicative ones.
    std::int64_t compared1 = 0;
    std::int64_t compared2 = 0;
};

struct CongruenceVerdict {
    CongruenceStatus status = CongruenceStatus::Inconclusive;
    Int level;
    // Sturm bound for weight 2 on Gamma0(level).
    Int bound;
    std::uint64_t checked_primes = 0;
    // Primes <= bound that were not compared (bad for both, additive against good, or p).
    std::uint64_t skipped_primes = 0;
    std::optional<CongruenceWitness> witness;
    std::string caveat;
};

struct CongruenceOptions {
    CountMethod method = CountMethod::Auto;
    // Worker threads for per-prime trace computations.
    unsigned jobs = 1;
    // Zero means unlimited; otherwise exceeding it yields Inconclusive.
    std::chrono::milliseconds budget{0};
    FactorOptions factor;
};

// ceil(index / 6) where index = [SL2(Z) : Gamma0(level)].
Int sturm_bound(const Int& level);

CongruenceVerdict check_congruence(const CurveModel& c1, const CurveModel& c2, const Int& p,
                                   const CongruenceOptions& options = {});

}  // namespace paritykit
