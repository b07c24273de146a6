#include <algorithm>
#include <cstdlib>
#include <string>

#include "paritykit/errors.hpp"
#include "paritykit/kernels.hpp"

namespace paritykit::kernels {

std::string_view name(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

bool available(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2:
#if defined(PARITYKIT_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

Isa selected() {
    static const Isa choice = [] {
        const char* forced = std::getenv("PARITYKIT_ISA");
        if (forced != nullptr && std::string(forced) == "scalar") return Isa::Scalar;
        return available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
    }();
    return choice;
}

std::vector<std::int8_t> legendre_table(std::uint32_t ell) {
    if (ell < 3 || ell % 2 == 0 || ell > kMaxModulus) {
        throw InvalidArgument("legendre_table: modulus must be an odd prime below 2^31");
    }
    std::vector<std::int8_t> chi(static_cast<std::size_t>(ell) + kTablePadding, 0);
    std::fill(chi.begin() + 1, chi.begin() + ell, std::int8_t{-1});
    std::uint64_t square = 0;
    for (std::uint64_t y = 1; y <= (ell - 1) / 2; ++y) {
        square += 2 * y - 1;
        if (square >= ell) square -= ell;
        chi[square] = 1;
    }
    return chi;
}

std::int64_t cubic_character_sum(std::span<const std::int8_t> chi, std::uint32_t ell,
                                 std::uint32_t a, std::uint32_t b, Isa isa) {
    if (ell > kMaxModulus || chi.size() < static_cast<std::size_t>(ell) + kTablePadding) {
        throw InvalidArgument("cubic_character_sum: table does not cover the modulus");
    }
    if (!available(isa)) {
        throw InvalidArgument("cubic_character_sum: " + std::string(name(isa)) +
                              " kernel is not available on this machine");
    }
    switch (isa) {
        case Isa::Avx2:
#if defined(PARITYKIT_HAVE_AVX2)
            return detail::cubic_character_sum_avx2(chi.data(), ell, a % ell, b % ell);
#else
            break;
#endif
        case Isa::Scalar:
            break;
    }
    return detail::cubic_character_sum_scalar(chi.data(), ell, a % ell, b % ell);
}

}  // namespace paritykit::kernels
