#include "paritykit/kernels.hpp"

namespace paritykit::kernels::detail {

std::int64_t cubic_character_sum_scalar(const std::int8_t* chi, std::uint32_t ell, std::uint32_t a,
                                        std::uint32_t b) {
    const std::uint64_t m = ell;
    std::int64_t sum = 0;
    for (std::uint64_t x = 0; x < m; ++x) {
        const std::uint64_t x2 = x * x % m;
        const std::uint64_t v = (x2 * x % m + a * x % m + b) % m;
        sum += chi[v];
    }
    return sum;
}

}  // namespace paritykit::kernels::detail
