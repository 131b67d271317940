#pragma once

// Internal kernel plumbing shared between the scalar translation unit and the
// ISA-specific ones. Not installed; include only from src/.

#include <cstddef>
#include <cstdint>

namespace regen::gf256::detail {

// 32-byte table per coefficient c: bytes 0..15 hold c*x for the low nibble x,
// bytes 16..31 hold c*(x<<4) for the high nibble x. Laid out contiguously,
// 32-byte aligned, indexed as nibble_luts() + 32*c.
const std::uint8_t* nibble_luts();

// 256x256 product table, row-major: mul_table()[a*256 + b] == a*b.
const std::uint8_t* mul_table();

void xor_into_scalar(std::uint8_t* dst, const std::uint8_t* src, std::size_t n);
void mul_into_scalar(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t c);
void mul_xor_into_scalar(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t c);

#if REGEN_HAVE_AVX2
void xor_into_avx2(std::uint8_t* dst, const std::uint8_t* src, std::size_t n);
void mul_into_avx2(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t c);
void mul_xor_into_avx2(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t c);
#endif

} // namespace regen::gf256::detail
