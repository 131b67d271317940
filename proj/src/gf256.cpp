#include "regen/gf256.hpp"

#include "gf256_kernels.hpp"

#include <array>
#include <atomic>
#include <stdexcept>

namespace regen::gf256 {

namespace {

constexpr std::uint16_t kPoly = 0x11D;

struct Tables {
    std::array<std::uint8_t, 512> exp{}; // doubled so exp[log a + log b] needs no modulo
    std::array<std::uint8_t, 256> log{}; // log[0] unused
    std::array<std::uint8_t, 256 * 256> mul{};
    alignas(32) std::array<std::uint8_t, 256 * 32> nib{};

    Tables() {
        std::uint16_t x = 1;
        for (int i = 0; i < 255; ++i) {
            exp[i] = static_cast<std::uint8_t>(x);
            log[x] = static_cast<std::uint8_t>(i);
            x <<= 1;
            if (x & 0x100) x ^= kPoly;
        }
        for (int i = 255; i < 512; ++i) exp[i] = exp[i - 255];
        for (int a = 1; a < 256; ++a) {
            for (int b = 1; b < 256; ++b) {
                mul[static_cast<std::size_t>(a) * 256 + b] = exp[log[a] + log[b]];
            }
        }
        for (int c = 0; c < 256; ++c) {
            for (int x4 = 0; x4 < 16; ++x4) {
                nib[static_cast<std::size_t>(c) * 32 + x4] =
                    mul[static_cast<std::size_t>(c) * 256 + x4];
                nib[static_cast<std::size_t>(c) * 32 + 16 + x4] =
                    mul[static_cast<std::size_t>(c) * 256 + (x4 << 4)];
            }
        }
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

} // namespace

namespace detail {

const std::uint8_t* nibble_luts() { return tables().nib.data(); }
const std::uint8_t* mul_table() { return tables().mul.data(); }

void xor_into_scalar(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

void mul_into_scalar(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t c) {
    const std::uint8_t* row = mul_table() + static_cast<std::size_t>(c) * 256;
    for (std::size_t i = 0; i < n; ++i) dst[i] = row[src[i]];
}

void mul_xor_into_scalar(std::uint8_t* dst, const std::uint8_t* src, std::size_t n,
                         std::uint8_t c) {
    const std::uint8_t* row = mul_table() + static_cast<std::size_t>(c) * 256;
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= row[src[i]];
}

} // namespace detail

std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
    if (a == 0 || b == 0) return 0;
    const auto& t = tables();
    return t.exp[t.log[a] + t.log[b]];
}

std::uint8_t inv(std::uint8_t a) {
    if (a == 0) throw std::domain_error("gf256: zero has no multiplicative inverse");
    const auto& t = tables();
    return t.exp[255 - t.log[a]];
}

namespace {

struct KernelSet {
    void (*xor_into)(std::uint8_t*, const std::uint8_t*, std::size_t);
    void (*mul_into)(std::uint8_t*, const std::uint8_t*, std::size_t, std::uint8_t);
    void (*mul_xor_into)(std::uint8_t*, const std::uint8_t*, std::size_t, std::uint8_t);
    Backend id;
};

constexpr KernelSet kScalarKernels{detail::xor_into_scalar, detail::mul_into_scalar,
                                   detail::mul_xor_into_scalar, Backend::scalar};

#if REGEN_HAVE_AVX2
constexpr KernelSet kAvx2Kernels{detail::xor_into_avx2, detail::mul_into_avx2,
                                 detail::mul_xor_into_avx2, Backend::avx2};
#endif

bool cpu_has_avx2() {
#if REGEN_HAVE_AVX2
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const KernelSet* pick_default() {
#if REGEN_HAVE_AVX2
    if (cpu_has_avx2()) return &kAvx2Kernels;
#endif
    return &kScalarKernels;
}

std::atomic<const KernelSet*>& active() {
    static std::atomic<const KernelSet*> a{pick_default()};
    return a;
}

} // namespace

void xor_into(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
    active().load(std::memory_order_relaxed)->xor_into(dst, src, n);
}

void mul_into(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t c) {
    active().load(std::memory_order_relaxed)->mul_into(dst, src, n, c);
}

void mul_xor_into(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, std::uint8_t c) {
    active().load(std::memory_order_relaxed)->mul_xor_into(dst, src, n, c);
}

Backend active_backend() { return active().load(std::memory_order_relaxed)->id; }

bool backend_available(Backend b) {
    switch (b) {
    case Backend::scalar: return true;
    case Backend::avx2: return cpu_has_avx2();
    }
    return false;
}

bool set_backend(Backend b) {
    if (!backend_available(b)) return false;
    switch (b) {
    case Backend::scalar: active().store(&kScalarKernels); return true;
#if REGEN_HAVE_AVX2
    case Backend::avx2: active().store(&kAvx2Kernels); return true;
#endif
    default: return false;
    }
}

const char* backend_name(Backend b) {
    switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    }
    return "?";
}

} // namespace regen::gf256
