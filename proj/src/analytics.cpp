#include "regen/analytics.hpp"

#include <stdexcept>

namespace regen::analytics {

using nlohmann::json;

Rational functional_capacity(std::int64_t k, std::int64_t d, const Rational& alpha,
                             const Rational& gamma) {
    if (!(1 <= k && k <= d)) throw std::domain_error("functional_capacity: need 1 <= k <= d");
    if (!(alpha.signum() > 0) || !(gamma.signum() > 0))
        throw std::domain_error("functional_capacity: need alpha, gamma > 0");

    // All terms share the denominator Q = lcm(den(alpha), d*den(gamma)), so
    // the sum accumulates in a single BigInt and normalizes once.
    BigInt dg = BigInt(d) * gamma.den();
    BigInt g = BigInt::gcd(alpha.den(), dg);
    BigInt q = alpha.den() / g * dg;
    BigInt alpha_num = alpha.num() * (q / alpha.den());
    BigInt gamma_unit = gamma.num() * (q / dg); // gamma/d over Q
    BigInt acc(0);
    for (std::int64_t j = 0; j < k; ++j) {
        BigInt bw = BigInt(d - j) * gamma_unit;
        acc += bw < alpha_num ? bw : alpha_num;
    }
    return Rational(std::move(acc), std::move(q));
}

TradeoffPoint msr_point(std::int64_t k, std::int64_t d, const Rational& B) {
    if (!(1 <= k && k <= d)) throw std::domain_error("msr_point: need 1 <= k <= d");
    TradeoffPoint p;
    p.alpha = B / Rational(k);
    p.gamma = Rational(d) * B / Rational(k * (d - k + 1));
    return p;
}

TradeoffPoint mbr_point(std::int64_t k, std::int64_t d, const Rational& B) {
    if (!(1 <= k && k <= d)) throw std::domain_error("mbr_point: need 1 <= k <= d");
    TradeoffPoint p;
    p.alpha = Rational(2 * d) * B / Rational(k * (2 * d - k + 1));
    p.gamma = p.alpha;
    return p;
}

BoundPoint exact_lower_bound(std::int64_t n, std::int64_t k, std::int64_t d,
                             const Rational& alpha, std::int64_t i) {
    if (!(1 <= k && k <= d && d < n))
        throw std::domain_error("exact_lower_bound: need 1 <= k <= d < n");
    if (!(1 <= i && i <= k)) throw std::domain_error("exact_lower_bound: need 1 <= i <= k");
    BoundPoint b;
    b.gamma = Rational(d - k + i) * alpha / Rational(d - k + 1);
    b.value = Rational(n * i) * alpha / Rational(n - k + i);
    return b;
}

Rational section4_ratio(std::int64_t n, std::int64_t i) {
    if (n < 2) throw std::domain_error("section4_ratio: need n >= 2");
    if (!(1 <= i && i <= n - 1)) throw std::domain_error("section4_ratio: need 1 <= i <= n-1");
    // T = floor((n-1)(1-1/i)) = floor((n-1)(i-1)/i); always <= n-2, so the
    // trailing product vanishes exactly when the second sum is empty.
    const std::int64_t T = (n - 1) * (i - 1) / i;
    Rational numerator = Rational(n * i, 1 + i);
    Rational denominator =
        Rational(T + 1) + Rational(i, 2 * (n - 1)) * Rational((n - T - 1) * (n - T - 2));
    return numerator / denominator;
}

Rational section4_ratio_direct(std::int64_t n, std::int64_t i) {
    if (n < 2) throw std::domain_error("section4_ratio_direct: need n >= 2");
    if (!(1 <= i && i <= n - 1))
        throw std::domain_error("section4_ratio_direct: need 1 <= i <= n-1");
    Rational bound = exact_lower_bound(n, n - 1, n - 1, Rational(1), i).value;
    Rational cap = functional_capacity(n - 1, n - 1, Rational(1), Rational(i));
    return bound / cap;
}

Rational large_n_ratio_approx(std::int64_t i) {
    if (i < 1) throw std::domain_error("large_n_ratio_approx: need i >= 1");
    return Rational(2 * i * i, 2 * i * i + i - 1);
}

AsymptoticReport asymptotic_ratio(std::int64_t n, std::int64_t k, std::int64_t d,
                                  std::int64_t M, const Rational& s) {
    if (!(1 <= k && k <= d && d < n))
        throw std::domain_error("asymptotic_ratio: need 1 <= k <= d < n");
    if (M < 0) throw std::domain_error("asymptotic_ratio: need M >= 0");
    if (!(s > Rational(0) && s <= Rational(1)))
        throw std::domain_error("asymptotic_ratio: need s in (0, 1]");

    AsymptoticReport r;
    r.M = M;
    r.s = s;
    r.n_M = n + M;
    r.k_M = k + M;
    r.d_M = d + M;
    const Rational alpha(1);
    r.i = Rational(1) + s * Rational(r.k_M - 1);
    r.i_floor = r.i.floor().to_i64();
    r.gamma = Rational(r.d_M - r.k_M + r.i_floor) * alpha / Rational(r.d_M - r.k_M + 1);
    r.bound = Rational(r.n_M) * r.i * alpha / (Rational(n - k) + r.i);
    r.capacity = functional_capacity(r.k_M, r.d_M, alpha, r.gamma);
    r.ratio = r.bound / r.capacity;

    const Rational sk = s * Rational(r.k_M - 1);
    r.t = Rational(r.d_M) * sk / (Rational(d - k + 1) + sk);
    r.h1 = Rational(2) * Rational(r.n_M) * (Rational(1) + sk) * Rational(r.d_M) *
           Rational(d - k + 1);
    r.h2 = Rational(n - k + 1) + sk;
    r.h3 = Rational(2) * (r.t + Rational(1)) * Rational(r.d_M) * Rational(d - k + 1);
    r.h4 = (Rational(r.k_M - 1) - r.t) * (Rational(2 * d - k + M) - r.t) *
           (Rational(d - k + 1) + sk);
    if (M >= 1) {
        const Rational m(M);
        r.h1_scaled = r.h1 / (m * m * m);
        r.h2_scaled = r.h2 / m;
        r.h3_scaled = r.h3 / (m * m);
        r.h4_scaled = r.h4 / (m * m);
    }
    return r;
}

json AsymptoticReport::to_json() const {
    auto rat = [](const Rational& v) {
        return json{{"rational", v.to_string()}, {"decimal", v.to_decimal()}};
    };
    json j;
    j["M"] = M;
    j["s"] = s.to_string();
    j["n_M"] = n_M;
    j["k_M"] = k_M;
    j["d_M"] = d_M;
    j["i"] = rat(i);
    j["i_floor"] = i_floor;
    j["t"] = rat(t);
    j["gamma"] = rat(gamma);
    j["bound"] = rat(bound);
    j["capacity"] = rat(capacity);
    j["ratio"] = rat(ratio);
    j["h1"] = rat(h1);
    j["h2"] = rat(h2);
    j["h3"] = rat(h3);
    j["h4"] = rat(h4);
    if (h1_scaled) {
        j["h1_scaled"] = rat(*h1_scaled);
        j["h2_scaled"] = rat(*h2_scaled);
        j["h3_scaled"] = rat(*h3_scaled);
        j["h4_scaled"] = rat(*h4_scaled);
    }
    return j;
}

Rational gamma_mix(std::int64_t k_M, std::int64_t d_M, const Rational& alpha,
                   const Rational& s) {
    if (!(1 <= k_M && k_M <= d_M)) throw std::domain_error("gamma_mix: need 1 <= k_M <= d_M");
    if (!(s >= Rational(0) && s <= Rational(1)))
        throw std::domain_error("gamma_mix: need s in [0, 1]");
    const Rational i = Rational(1) + s * Rational(k_M - 1);
    const Rational mixed = alpha * (Rational(d_M - k_M) + i) / Rational(d_M - k_M + 1);
    const Rational gamma_msr = Rational(d_M) * alpha / Rational(d_M - k_M + 1);
    const Rational gamma_mbr = alpha;
    if (mixed != s * gamma_msr + (Rational(1) - s) * gamma_mbr)
        throw std::logic_error("gamma_mix: convex-combination identity violated");
    return mixed;
}

Rational interpolation_baseline(std::int64_t k, std::int64_t d, const Rational& B_at_MBR,
                                const Rational& B_at_MSR, const Rational& gamma,
                                const Rational& alpha) {
    if (!(1 <= k && k <= d)) throw std::domain_error("interpolation_baseline: need 1 <= k <= d");
    const Rational g_mbr = alpha;
    const Rational g_msr = Rational(d) * alpha / Rational(d - k + 1);
    if (gamma < g_mbr || gamma > g_msr)
        throw std::domain_error("interpolation_baseline: gamma outside [gamma_MBR, gamma_MSR]");
    if (g_msr == g_mbr) return B_at_MBR;
    return B_at_MBR + (gamma - g_mbr) * (B_at_MSR - B_at_MBR) / (g_msr - g_mbr);
}

const char* capacity_point_source_name(CapacityPoint::Source s) {
    switch (s) {
    case CapacityPoint::Source::capacity: return "capacity";
    case CapacityPoint::Source::exact_bound: return "bound";
    case CapacityPoint::Source::interpolation: return "interpolation";
    }
    return "?";
}

std::vector<std::array<CapacityPoint, 3>> fig2_dataset(std::int64_t n) {
    if (n < 3) throw std::domain_error("fig2_dataset: need n >= 3");
    const std::int64_t k = n - 1;
    const std::int64_t d = n - 1;
    const Rational alpha(1);
    const Rational b_mbr = Rational(n, 2);
    const Rational b_msr(n - 1);
    std::vector<std::array<CapacityPoint, 3>> rows;
    for (std::int64_t i = 1; i <= n - 1; ++i) {
        const Rational gamma(i);
        CapacityPoint cap{gamma, functional_capacity(k, d, alpha, gamma),
                          CapacityPoint::Source::capacity};
        CapacityPoint bound{gamma, exact_lower_bound(n, k, d, alpha, i).value,
                            CapacityPoint::Source::exact_bound};
        CapacityPoint interp{gamma, interpolation_baseline(k, d, b_mbr, b_msr, gamma, alpha),
                             CapacityPoint::Source::interpolation};
        rows.push_back({cap, bound, interp});
    }
    return rows;
}

std::string fig2_csv(const std::vector<std::array<CapacityPoint, 3>>& rows) {
    std::string out = "gamma,capacity,bound,interpolation\n";
    for (const auto& row : rows) {
        out += row[0].gamma.to_decimal();
        out += ',';
        out += row[0].value.to_decimal();
        out += ',';
        out += row[1].value.to_decimal();
        out += ',';
        out += row[2].value.to_decimal();
        out += '\n';
    }
    return out;
}

} // namespace regen::analytics
