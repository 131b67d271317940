#include "regen/rational.hpp"

#include <stdexcept>

namespace regen {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_.signum() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rational Rational::parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        BigInt p = BigInt::from_string(s.substr(0, slash));
        BigInt q = BigInt::from_string(s.substr(slash + 1));
        return Rational(std::move(p), std::move(q));
    }
    auto dot = s.find('.');
    if (dot == std::string_view::npos) return Rational(BigInt::from_string(s));
    std::string_view intpart = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (frac.empty()) return Rational(BigInt::from_string(intpart));
    bool neg = !intpart.empty() && (intpart[0] == '-');
    bool sign = !intpart.empty() && (intpart[0] == '-' || intpart[0] == '+');
    std::string digits(intpart.substr(sign ? 1 : 0));
    if (digits.empty()) digits = "0";
    digits.append(frac);
    BigInt den(1);
    for (std::size_t i = 0; i < frac.size(); ++i) den *= BigInt(10);
    BigInt num = BigInt::from_string(digits);
    if (neg) num = -num;
    return Rational(std::move(num), std::move(den));
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ <=> b.num_ * a.den_;
}

BigInt Rational::floor() const {
    BigInt q, r;
    BigInt::divmod(num_, den_, q, r);
    if (r.signum() < 0) q -= BigInt(1);
    return q;
}

std::string Rational::to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

std::string Rational::to_decimal(int sig_digits) const {
    if (num_.is_zero()) return "0";
    if (sig_digits < 1) sig_digits = 1;
    const bool neg = num_.signum() < 0;
    const BigInt ten(10);
    BigInt ip, rem;
    BigInt::divmod(num_.abs(), den_, ip, rem);

    auto next_digit = [&]() {
        rem *= ten;
        BigInt d, r2;
        BigInt::divmod(rem, den_, d, r2);
        rem = std::move(r2);
        return static_cast<char>('0' + d.to_i64());
    };

    std::string digits;    // significant digits, integer part first
    int int_digits = 0;    // how many of them precede the decimal point
    int leading_zeros = 0; // zeros between the point and the first significant digit
    if (!ip.is_zero()) {
        digits = ip.to_string();
        int_digits = static_cast<int>(digits.size());
    } else {
        for (;;) {
            char d = next_digit();
            if (d == '0') {
                ++leading_zeros;
            } else {
                digits.push_back(d);
                break;
            }
        }
    }
    while (static_cast<int>(digits.size()) < sig_digits && !rem.is_zero()) {
        digits.push_back(next_digit());
    }

    // Round half-up if the expansion continues.
    if (!rem.is_zero() && next_digit() >= '5') {
        int i = static_cast<int>(digits.size()) - 1;
        while (i >= 0 && digits[i] == '9') {
            digits[i] = '0';
            --i;
        }
        if (i < 0) {
            digits.insert(digits.begin(), '1');
            if (leading_zeros > 0) {
                --leading_zeros;
            } else {
                ++int_digits;
            }
        } else {
            ++digits[i];
        }
    }

    std::string out;
    if (neg) out.push_back('-');
    if (int_digits == 0) {
        out += "0.";
        out.append(static_cast<std::size_t>(leading_zeros), '0');
        out += digits;
    } else {
        out.append(digits.begin(), digits.begin() + int_digits);
        if (static_cast<int>(digits.size()) > int_digits) {
            out.push_back('.');
            out.append(digits.begin() + int_digits, digits.end());
        }
    }
    if (out.find('.') != std::string::npos) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return out;
}

double Rational::to_double() const {
    return num_.to_double() / den_.to_double();
}

const Rational& Rational::zero() {
    static const Rational z;
    return z;
}

const Rational& Rational::one() {
    static const Rational o(1);
    return o;
}

Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }
Rational rational_abs(const Rational& a) { return a.signum() < 0 ? -a : a; }

} // namespace regen
