#pragma once

#include "regen/bigint.hpp"

#include <string>
#include <string_view>

namespace regen {

// Exact rational in canonical form: gcd(num, den) == 1, den > 0.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t v) : num_(v), den_(1) {}
    Rational(BigInt num) : num_(std::move(num)), den_(1) {}
    Rational(BigInt num, BigInt den);
    Rational(std::int64_t num, std::int64_t den) : Rational(BigInt(num), BigInt(den)) {}

    // Accepts "p/q", an integer, or a plain decimal like "0.25" / "-1.5".
    static Rational parse(std::string_view s);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    int signum() const { return num_.signum(); }
    bool is_integer() const { return den_ == BigInt(1); }

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    BigInt floor() const;

    // "p/q", or just "p" when the value is an integer.
    std::string to_string() const;
    // Decimal rendering rounded (half-up) to `sig_digits` significant digits,
    // exact when the expansion terminates within that budget. Trailing zeros
    // in the fraction are trimmed.
    std::string to_decimal(int sig_digits = 20) const;
    double to_double() const;

    static const Rational& zero();
    static const Rational& one();

private:
    BigInt num_;
    BigInt den_;
    void normalize();
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);
Rational rational_abs(const Rational& a);

} // namespace regen
