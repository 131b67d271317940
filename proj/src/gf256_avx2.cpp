// AVX2 variants of the GF(2^8) bulk kernels. Compiled with -mavx2 only; the
// dispatcher in gf256.cpp selects them when the CPU reports AVX2 support.
//
// Multiplication by a constant c uses the nibble-table technique: with
// x = xh*16 + xl, c*x = c*xl ^ c*(xh<<4), so two 16-entry tables per
// coefficient turn the product into a pair of PSHUFB lookups.

#include "gf256_kernels.hpp"

#include <immintrin.h>

namespace regen::gf256::detail {

namespace {

struct NibblePair {
    __m256i lo;
    __m256i hi;
};

inline NibblePair load_tables(std::uint8_t c) {
    const std::uint8_t* lut = nibble_luts() + static_cast<std::size_t>(c) * 32;
    NibblePair t;
    t.lo = _mm256_broadcastsi128_si256(_mm_load_si128(reinterpret_cast<const __m128i*>(lut)));
    t.hi = _mm256_broadcastsi128_si256(_mm_load_si128(reinterpret_cast<const __m128i*>(lut + 16)));
    return t;
}

inline __m256i mul_vec(__m256i x, const NibblePair& t) {
    const __m256i mask = _mm256_set1_epi8(0x0F);
    __m256i lo = _mm256_shuffle_epi8(t.lo, _mm256_and_si256(x, mask));
    __m256i hi = _mm256_shuffle_epi8(t.hi, _mm256_and_si256(_mm256_srli_epi16(x, 4), mask));
    return _mm256_xor_si256(lo, hi);
}

} // namespace

void xor_into_avx2(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(d, s));
    }
    for (; i < n; ++i) dst[i] ^= src[i];
}

void mul_into_avx2(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t c) {
    const NibblePair t = load_tables(c);
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), mul_vec(s, t));
    }
    if (i < n) mul_into_scalar(dst + i, src + i, n - i, c);
}

void mul_xor_into_avx2(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t c) {
    const NibblePair t = load_tables(c);
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                            _mm256_xor_si256(d, mul_vec(s, t)));
    }
    if (i < n) mul_xor_into_scalar(dst + i, src + i, n - i, c);
}

} // namespace regen::gf256::detail
