#include "regen/bigint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace regen {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
} // namespace

BigInt::BigInt(std::int64_t v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    // Avoid UB on INT64_MIN.
    std::uint64_t m = v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
    mag_.push_back(static_cast<std::uint32_t>(m));
    if (m >> 32) mag_.push_back(static_cast<std::uint32_t>(m >> 32));
}

BigInt BigInt::from_u64(std::uint64_t v) {
    BigInt r;
    if (v == 0) return r;
    r.sign_ = 1;
    r.mag_.push_back(static_cast<std::uint32_t>(v));
    if (v >> 32) r.mag_.push_back(static_cast<std::uint32_t>(v >> 32));
    return r;
}

BigInt BigInt::from_string(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw std::invalid_argument("BigInt: empty numeral");
    BigInt r;
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("BigInt: bad digit in numeral");
        r = r * BigInt(10) + BigInt(c - '0');
    }
    if (neg && !r.is_zero()) r.sign_ = -1;
    return r;
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<std::uint32_t> out(big.size() + 1, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < big.size(); ++i) {
        std::uint64_t s = carry + big[i] + (i < small.size() ? small[i] : 0u);
        out[i] = static_cast<std::uint32_t>(s);
        carry = s >> 32;
    }
    out[big.size()] = static_cast<std::uint32_t>(carry);
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out(a.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t s = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0u);
        if (s < 0) {
            s += static_cast<std::int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        out[i] = static_cast<std::uint32_t>(s);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<std::uint32_t> BigInt::mul_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> out(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t carry = 0;
        std::uint64_t ai = a[i];
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t cur = out[i + j] + ai * b[j] + carry;
            out[i + j] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        out[i + b.size()] = static_cast<std::uint32_t>(carry);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

// Knuth TAOCP vol 2, algorithm D, with 32-bit digits.
void BigInt::divmod_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                        std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r) {
    q.clear();
    r.clear();
    if (cmp_mag(a, b) < 0) {
        r = a;
        return;
    }
    if (b.size() == 1) {
        std::uint64_t div = b[0];
        q.assign(a.size(), 0);
        std::uint64_t rem = 0;
        for (std::size_t i = a.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | a[i];
            q[i] = static_cast<std::uint32_t>(cur / div);
            rem = cur % div;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        if (rem) r.push_back(static_cast<std::uint32_t>(rem));
        return;
    }

    const int shift = std::countl_zero(b.back());
    const std::size_t n = b.size();
    const std::size_t m = a.size() - n;

    // Normalized copies: u has an extra high limb.
    std::vector<std::uint32_t> u(a.size() + 1, 0), v(n, 0);
    if (shift == 0) {
        for (std::size_t i = 0; i < n; ++i) v[i] = b[i];
        for (std::size_t i = 0; i < a.size(); ++i) u[i] = a[i];
    } else {
        for (std::size_t i = n; i-- > 1;) v[i] = (b[i] << shift) | (b[i - 1] >> (32 - shift));
        v[0] = b[0] << shift;
        u[a.size()] = a.back() >> (32 - shift);
        for (std::size_t i = a.size(); i-- > 1;) u[i] = (a[i] << shift) | (a[i - 1] >> (32 - shift));
        u[0] = a[0] << shift;
    }

    q.assign(m + 1, 0);
    const std::uint64_t vtop = v[n - 1];
    const std::uint64_t vnext = v[n - 2];

    for (std::size_t j = m + 1; j-- > 0;) {
        std::uint64_t num = (static_cast<std::uint64_t>(u[j + n]) << 32) | u[j + n - 1];
        std::uint64_t qhat = num / vtop;
        std::uint64_t rhat = num % vtop;
        if (qhat >= kBase) {
            qhat = kBase - 1;
            rhat = num - qhat * vtop;
        }
        while (rhat < kBase && qhat * vnext > ((rhat << 32) | u[j + n - 2])) {
            --qhat;
            rhat += vtop;
        }
        // Multiply-subtract qhat*v from u[j .. j+n].
        std::int64_t borrow = 0;
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t p = qhat * v[i] + carry;
            carry = p >> 32;
            std::int64_t t = static_cast<std::int64_t>(u[i + j]) - borrow -
                             static_cast<std::int64_t>(p & 0xFFFFFFFFull);
            if (t < 0) {
                t += static_cast<std::int64_t>(kBase);
                borrow = 1;
            } else {
                borrow = 0;
            }
            u[i + j] = static_cast<std::uint32_t>(t);
        }
        std::int64_t t = static_cast<std::int64_t>(u[j + n]) - borrow -
                         static_cast<std::int64_t>(carry);
        if (t < 0) {
            // qhat was one too large; add v back.
            t += static_cast<std::int64_t>(kBase);
            --qhat;
            std::uint64_t c2 = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t s = static_cast<std::uint64_t>(u[i + j]) + v[i] + c2;
                u[i + j] = static_cast<std::uint32_t>(s);
                c2 = s >> 32;
            }
            t += static_cast<std::int64_t>(c2);
            t &= static_cast<std::int64_t>(0xFFFFFFFFll);
        }
        u[j + n] = static_cast<std::uint32_t>(t);
        q[j] = static_cast<std::uint32_t>(qhat);
    }

    while (!q.empty() && q.back() == 0) q.pop_back();
    r.assign(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(n));
    if (shift) {
        for (std::size_t i = 0; i + 1 < n; ++i) r[i] = (r[i] >> shift) | (r[i + 1] << (32 - shift));
        r[n - 1] >>= shift;
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt out;
    if (a.sign_ == b.sign_) {
        out.sign_ = a.sign_;
        out.mag_ = BigInt::add_mag(a.mag_, b.mag_);
    } else {
        int c = BigInt::cmp_mag(a.mag_, b.mag_);
        if (c == 0) return BigInt{};
        if (c > 0) {
            out.sign_ = a.sign_;
            out.mag_ = BigInt::sub_mag(a.mag_, b.mag_);
        } else {
            out.sign_ = b.sign_;
            out.mag_ = BigInt::sub_mag(b.mag_, a.mag_);
        }
    }
    out.trim();
    return out;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt{};
    BigInt out;
    out.sign_ = a.sign_ * b.sign_;
    out.mag_ = BigInt::mul_mag(a.mag_, b.mag_);
    out.trim();
    return out;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    std::vector<std::uint32_t> qm, rm;
    divmod_mag(a.mag_, b.mag_, qm, rm);
    q.mag_ = std::move(qm);
    r.mag_ = std::move(rm);
    q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
    r.sign_ = r.mag_.empty() ? 0 : a.sign_;
}

BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.sign_ = a.mag_.empty() ? 0 : 1;
    b.sign_ = b.mag_.empty() ? 0 : 1;
    if (a.fits_i64() && b.fits_i64()) {
        std::int64_t x = a.to_i64(), y = b.to_i64();
        while (y) {
            std::int64_t t = x % y;
            x = y;
            y = t;
        }
        return BigInt(x);
    }
    while (!b.is_zero()) {
        BigInt q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool operator==(const BigInt& a, const BigInt& b) {
    return a.sign_ == b.sign_ && a.mag_ == b.mag_;
}

std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
    int c = BigInt::cmp_mag(a.mag_, b.mag_) * (a.sign_ < 0 ? -1 : 1);
    return c <=> 0;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::vector<std::uint32_t> cur = mag_;
    std::string digits;
    // Peel 9 decimal digits at a time.
    const std::uint64_t chunk = 1000000000ull;
    while (!cur.empty()) {
        std::uint64_t rem = 0;
        for (std::size_t i = cur.size(); i-- > 0;) {
            std::uint64_t v = (rem << 32) | cur[i];
            cur[i] = static_cast<std::uint32_t>(v / chunk);
            rem = v % chunk;
        }
        while (!cur.empty() && cur.back() == 0) cur.pop_back();
        for (int i = 0; i < 9; ++i) {
            digits.push_back(static_cast<char>('0' + rem % 10));
            rem /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (sign_ < 0) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

double BigInt::to_double() const {
    double v = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) v = v * 4294967296.0 + mag_[i];
    return sign_ < 0 ? -v : v;
}

bool BigInt::fits_i64() const {
    if (mag_.size() > 2) return false;
    if (mag_.size() < 2) return true;
    std::uint64_t m = (static_cast<std::uint64_t>(mag_[1]) << 32) | mag_[0];
    if (sign_ > 0) return m <= static_cast<std::uint64_t>(INT64_MAX);
    return m <= static_cast<std::uint64_t>(INT64_MAX) + 1;
}

std::int64_t BigInt::to_i64() const {
    if (!fits_i64()) throw std::overflow_error("BigInt: does not fit in int64");
    std::uint64_t m = 0;
    if (mag_.size() > 1) m = static_cast<std::uint64_t>(mag_[1]) << 32;
    if (!mag_.empty()) m |= mag_[0];
    if (sign_ < 0) return -static_cast<std::int64_t>(m - 1) - 1;
    return static_cast<std::int64_t>(m);
}

std::uint64_t BigInt::to_u64() const {
    if (sign_ < 0 || mag_.size() > 2) throw std::overflow_error("BigInt: does not fit in uint64");
    std::uint64_t m = 0;
    if (mag_.size() > 1) m = static_cast<std::uint64_t>(mag_[1]) << 32;
    if (!mag_.empty()) m |= mag_[0];
    return m;
}

} // namespace regen
