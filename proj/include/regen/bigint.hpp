#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace regen {

// Arbitrary-precision signed integer, sign-magnitude over 32-bit limbs.
// Magnitude is little-endian with no leading zero limbs; zero has an empty
// magnitude and sign 0. Division truncates toward zero, so the remainder
// carries the sign of the dividend.
class BigInt {
public:
    BigInt() = default;
    BigInt(std::int64_t v);

    static BigInt from_u64(std::uint64_t v);
    // Accepts an optional leading '-' followed by decimal digits.
    static BigInt from_string(std::string_view s);

    bool is_zero() const { return sign_ == 0; }
    int signum() const { return sign_; }
    bool is_odd() const { return sign_ != 0 && (mag_[0] & 1u); }

    BigInt operator-() const;
    BigInt abs() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    // q = trunc(a/b), r = a - q*b. Throws std::domain_error when b == 0.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

    static BigInt gcd(BigInt a, BigInt b);

    friend bool operator==(const BigInt& a, const BigInt& b);
    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b);

    std::string to_string() const;
    double to_double() const;

    bool fits_i64() const;
    std::int64_t to_i64() const;  // throws std::overflow_error if out of range
    std::uint64_t to_u64() const; // throws std::overflow_error if negative or too large

    std::size_t limb_count() const { return mag_.size(); }

private:
    int sign_ = 0;
    std::vector<std::uint32_t> mag_;

    void trim();
    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    // Requires |a| >= |b|.
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static void divmod_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                           std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r);
};

} // namespace regen
