#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "paritykit/arith.hpp"
#include "paritykit/weierstrass.hpp"

namespace paritykit {

enum class ReductionType { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };

std::string_view to_string(ReductionType type);

inline bool is_multiplicative(ReductionType t) {
    return t == ReductionType::SplitMultiplicative || t == ReductionType::NonsplitMultiplicative;
}

struct LocalData {
    Int ell;
    ReductionType type = ReductionType::Good;
    unsigned cond_exp = 0;
    // v_ell of the minimal discriminant.
    unsigned v_disc = 0;
    // Frobenius trace when good, +1 split, -1 nonsplit, 0 additive.
    std::int64_t trace = 0;
    // Kodaira symbol from Tate's algorithm; diagnostics only.
    std::string kodaira;
};

// P(X) = coeffs[0] + coeffs[1] X + coeffs[2] X^2, trailing zeros trimmed.
struct EulerPoly {
    std::vector<Int> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Tate's algorithm output before any point counting.
struct LocalReduction {
    Int ell;
    ReductionType type = ReductionType::Good;
    unsigned cond_exp = 0;
    unsigned v_disc = 0;
    std::string kodaira;
    // A model that is minimal at ell.
    CurveModel minimal_at_ell;
};

enum class CountMethod {
    // Quadratic-character sum (vector kernels) for ell >= 5.
    CharacterSum,
    // Mestre's baby-step giant-step on the curve and its quadratic twist.
    BabyStepGiantStep,
    // Character sums for small primes, baby-step giant-step above the crossover.
    Auto,
};

// Largest prime whose trace will be computed; PARITYKIT_MAX_ELL overrides 10^8.
std::uint64_t counting_prime_ceiling();

// Runs Tate's algorithm at ell. Throws InvalidArgument for singular input.
LocalReduction reduce_at(const CurveModel& c, const Int& ell);

// #E(F_ell) including the point at infinity. ell must be a prime of good reduction.
std::uint64_t count_points(const CurveModel& c, const Int& ell);

// a_ell for a prime of good reduction, with an explicit counting strategy.
std::int64_t frobenius_trace(const CurveModel& c, std::uint64_t ell,
                             CountMethod method = CountMethod::Auto);

// a_ell of y^2 = x^3 + a x + b over F_ell, ell >= 5 prime, curve nonsingular mod ell.
std::int64_t short_model_trace(std::uint64_t ell, std::uint64_t a, std::uint64_t b,
                               CountMethod method = CountMethod::Auto);

// Reduction data at ell, with the trace counted when the reduction is good.
LocalData tate_local(const CurveModel& c, const Int& ell);

// Local data at every prime dividing the minimal discriminant, ascending.
std::vector<LocalData> bad_local_data(const CurveModel& c, const FactorOptions& options = {});

Int conductor(const CurveModel& c, const FactorOptions& options = {});

// a_p == 0 at an odd prime of good reduction.
bool is_supersingular(const CurveModel& c, const Int& p);

EulerPoly euler_poly(const LocalData& d);

namespace detail {
// Exhaustive count over all (x, y) on the general model; used for ell in {2, 3}.
std::uint64_t count_points_enumerate(const CurveModel& c, std::uint64_t ell);
std::int64_t trace_bsgs(std::uint64_t ell, std::uint64_t a, std::uint64_t b);
}  // namespace detail

}  // namespace paritykit
