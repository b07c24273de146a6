#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

// Data-parallel inner loop of point counting: sum of the quadratic character over
// the values of a cubic. A scalar reference kernel and vector variants selected at
// runtime; every variant must agree bit-for-bit with the reference.
namespace paritykit::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view name(Isa isa);

// Compiled in and supported by the running CPU.
bool available(Isa isa);

// Best available variant, unless PARITYKIT_ISA=scalar forces the reference path.
Isa selected();

// Maximum modulus the kernels accept (sums of two residues must fit in 32 bits).
inline constexpr std::uint32_t kMaxModulus = 0x7FFFFFFFu;

// Padding bytes after the last entry so vector gathers may over-read.
inline constexpr std::size_t kTablePadding = 3;

// chi[v] = Legendre symbol (v / ell) for v in [0, ell), followed by zero padding.
// ell must be an odd prime below kMaxModulus.
std::vector<std::int8_t> legendre_table(std::uint32_t ell);

// Sum over x in [0, ell) of chi(x^3 + a*x + b mod ell); a, b already reduced mod ell.
std::int64_t cubic_character_sum(std::span<const std::int8_t> chi, std::uint32_t ell,
                                 std::uint32_t a, std::uint32_t b, Isa isa);

inline std::int64_t cubic_character_sum(std::span<const std::int8_t> chi, std::uint32_t ell,
                                        std::uint32_t a, std::uint32_t b) {
    return cubic_character_sum(chi, ell, a, b, selected());
}

namespace detail {
std::int64_t cubic_character_sum_scalar(const std::int8_t* chi, std::uint32_t ell, std::uint32_t a,
                                        std::uint32_t b);
std::int64_t cubic_character_sum_avx2(const std::int8_t* chi, std::uint32_t ell, std::uint32_t a,
                                      std::uint32_t b);
}  // namespace detail

}  // namespace paritykit::kernels
