// Compiled with -mavx2; only reached after a runtime CPU check.
#include "paritykit/kernels.hpp"

#include <immintrin.h>

namespace paritykit::kernels::detail {

namespace {

constexpr int kLanes = 8;

inline __m256i add_mod(__m256i x, __m256i y, __m256i m) {
    const __m256i s = _mm256_add_epi32(x, y);
    return _mm256_min_epu32(s, _mm256_sub_epi32(s, m));
}

inline std::uint32_t cubic_at(std::uint64_t x, std::uint64_t m, std::uint64_t a, std::uint64_t b) {
    x %= m;
    return static_cast<std::uint32_t>((x * x % m * x % m + a * x % m + b) % m);
}

inline std::uint32_t sub_mod(std::uint32_t x, std::uint32_t y, std::uint32_t m) {
    return x >= y ? x - y : x + (m - y);
}

}  // namespace

std::int64_t cubic_character_sum_avx2(const std::int8_t* chi, std::uint32_t ell, std::uint32_t a,
                                      std::uint32_t b) {
    const std::uint64_t m = ell;
    const std::uint64_t full_blocks = m / kLanes;

    // Lane j walks x = 8k + j; the cubic is advanced by forward differences in k.
    alignas(32) std::uint32_t value[kLanes], d1[kLanes], d2[kLanes];
    std::uint32_t d3 = 0;
    for (int j = 0; j < kLanes; ++j) {
        const std::uint32_t g0 = cubic_at(j, m, a, b);
        const std::uint32_t g1 = cubic_at(j + kLanes, m, a, b);
        const std::uint32_t g2 = cubic_at(j + 2 * kLanes, m, a, b);
        const std::uint32_t g3 = cubic_at(j + 3 * kLanes, m, a, b);
        const std::uint32_t e1 = sub_mod(g1, g0, ell);
        const std::uint32_t e2 = sub_mod(g2, g1, ell);
        const std::uint32_t e3 = sub_mod(g3, g2, ell);
        value[j] = g0;
        d1[j] = e1;
        d2[j] = sub_mod(e2, e1, ell);
        d3 = sub_mod(sub_mod(e3, e2, ell), d2[j], ell);
    }

    const __m256i mod = _mm256_set1_epi32(static_cast<int>(ell));
    const __m256i step3 = _mm256_set1_epi32(static_cast<int>(d3));
    __m256i v = _mm256_load_si256(reinterpret_cast<const __m256i*>(value));
    __m256i v1 = _mm256_load_si256(reinterpret_cast<const __m256i*>(d1));
    __m256i v2 = _mm256_load_si256(reinterpret_cast<const __m256i*>(d2));
    __m256i acc = _mm256_setzero_si256();
    const int* base = reinterpret_cast<const int*>(chi);

    for (std::uint64_t k = 0; k < full_blocks; ++k) {
        const __m256i raw = _mm256_i32gather_epi32(base, v, 1);
        acc = _mm256_add_epi32(acc, _mm256_srai_epi32(_mm256_slli_epi32(raw, 24), 24));
        v = add_mod(v, v1, mod);
        v1 = add_mod(v1, v2, mod);
        v2 = add_mod(v2, step3, mod);
    }

    alignas(32) std::int32_t lanes[kLanes];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::int64_t sum = 0;
    for (int j = 0; j < kLanes; ++j) sum += lanes[j];
    for (std::uint64_t x = full_blocks * kLanes; x < m; ++x) sum += chi[cubic_at(x, m, a, b)];
    return sum;
}

}  // namespace paritykit::kernels::detail
