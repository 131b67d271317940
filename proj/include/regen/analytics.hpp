#pragma once

#include "regen/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace regen::analytics {

// Functional-repair capacity C_{k,d}(alpha, gamma) = sum_{j=0}^{k-1}
// min{alpha, (d-j)/d * gamma}, evaluated term by term in exact arithmetic.
Rational functional_capacity(std::int64_t k, std::int64_t d, const Rational& alpha,
                             const Rational& gamma);

struct TradeoffPoint {
    Rational alpha;
    Rational gamma;
};

// alpha = B/k, gamma = d*B/(k*(d-k+1)).
TradeoffPoint msr_point(std::int64_t k, std::int64_t d, const Rational& B);
// alpha = gamma = 2*d*B/(k*(2d-k+1)).
TradeoffPoint mbr_point(std::int64_t k, std::int64_t d, const Rational& B);

struct BoundPoint {
    Rational gamma; // (d-k+i)*alpha/(d-k+1)
    Rational value; // n*i*alpha/(n-k+i)
};

// The exact-repair lower bound family, for integer 1 <= i <= k.
BoundPoint exact_lower_bound(std::int64_t n, std::int64_t k, std::int64_t d,
                             const Rational& alpha, std::int64_t i);

// Case n = k+1 = d+1: bound/capacity ratio in closed form,
// (n*i/(1+i)) / (T+1 + i*(n-T-1)*(n-T-2)/(2(n-1))), T = floor((n-1)(1-1/i)).
Rational section4_ratio(std::int64_t n, std::int64_t i);

// Same ratio by the direct capacity summation; the independent route the
// closed form is checked against.
Rational section4_ratio_direct(std::int64_t n, std::int64_t i);

// Large-n limit of the ratio: 2i^2/(2i^2 + i - 1); minimum 8/9 at i = 2.
Rational large_n_ratio_approx(std::int64_t i);

// Diagnostics for the regime n_M = n+M, k_M = k+M, d_M = d+M. The bound
// g_M(i) uses the exact i = 1 + s*(k_M - 1); the capacity side evaluates the
// bandwidth at floor(i), treating i as an integer the way the limit argument
// does. Both i and floor(i) are recorded.
struct AsymptoticReport {
    std::int64_t M = 0;
    Rational s;
    std::int64_t n_M = 0, k_M = 0, d_M = 0;
    Rational i;
    std::int64_t i_floor = 0;
    Rational t;
    Rational gamma;      // capacity-side bandwidth, from floor(i)
    Rational bound;      // g_M(i)
    Rational capacity;   // C_{k_M, d_M}(alpha=1, gamma)
    Rational ratio;      // bound / capacity
    Rational h1, h2, h3, h4;
    // h1/M^3, h2/M, h3/M^2, h4/M^2; absent when M == 0.
    std::optional<Rational> h1_scaled, h2_scaled, h3_scaled, h4_scaled;

    nlohmann::json to_json() const;
};

AsymptoticReport asymptotic_ratio(std::int64_t n, std::int64_t k, std::int64_t d,
                                  std::int64_t M, const Rational& s);

// alpha*(d_M-k_M+i)/(d_M-k_M+1) with i = 1+s*(k_M-1); equals the convex mix
// s*gamma_MSR + (1-s)*gamma_MBR, and the identity is re-checked on every call.
Rational gamma_mix(std::int64_t k_M, std::int64_t d_M, const Rational& alpha, const Rational& s);

// Straight line through (gamma_MBR, B_at_MBR) and (gamma_MSR, B_at_MSR),
// with gamma_MBR = alpha and gamma_MSR = d*alpha/(d-k+1).
Rational interpolation_baseline(std::int64_t k, std::int64_t d, const Rational& B_at_MBR,
                                const Rational& B_at_MSR, const Rational& gamma,
                                const Rational& alpha = Rational(1));

struct CapacityPoint {
    enum class Source { capacity, exact_bound, interpolation };
    Rational gamma;
    Rational value;
    Source source = Source::capacity;
};

const char* capacity_point_source_name(CapacityPoint::Source s);

// One triple (capacity, bound, interpolation) per integer gamma in [1, n-1]
// for the n = k+1 = d+1 family at alpha = 1.
std::vector<std::array<CapacityPoint, 3>> fig2_dataset(std::int64_t n = 51);

// CSV with header gamma,capacity,bound,interpolation; decimal values.
std::string fig2_csv(const std::vector<std::array<CapacityPoint, 3>>& rows);

} // namespace regen::analytics
