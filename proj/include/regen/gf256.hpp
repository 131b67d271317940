#pragma once

#include <cstddef>
#include <cstdint>

namespace regen::gf256 {

// GF(2^8) with reduction polynomial x^8 + x^4 + x^3 + x^2 + 1 (0x11D).
// Addition is XOR; the 255 nonzero elements form a cyclic group under
// multiplication with generator 0x02.

inline std::uint8_t add(std::uint8_t a, std::uint8_t b) { return a ^ b; }

std::uint8_t mul(std::uint8_t a, std::uint8_t b);

// Multiplicative inverse; throws std::domain_error for 0.
std::uint8_t inv(std::uint8_t a);

// Bulk kernels over byte buffers. dst and src must not overlap (except
// dst == src for the in-place scaling case of mul_into).
//   xor_into:     dst[i] ^= src[i]
//   mul_into:     dst[i]  = c * src[i]
//   mul_xor_into: dst[i] ^= c * src[i]
// These dispatch at runtime to the widest kernel the CPU supports.
void xor_into(std::uint8_t* dst, const std::uint8_t* src, std::size_t n);
void mul_into(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t c);
void mul_xor_into(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t c);

enum class Backend { scalar, avx2 };

Backend active_backend();
bool backend_available(Backend b);
// Force a specific kernel backend (used by the equivalence tests).
// Returns false and leaves the selection unchanged if unavailable.
bool set_backend(Backend b);
const char* backend_name(Backend b);

} // namespace regen::gf256
