#include <doctest.h>

#include <stdexcept>

#include "regen/analytics.hpp"

#include <random>

using namespace regen;
using namespace regen::analytics;

TEST_CASE("functional capacity golden values") {
    CHECK(functional_capacity(2, 2, Rational(1), Rational(1)) == Rational(3, 2));
    CHECK(functional_capacity(2, 2, Rational(1), Rational(2)) == Rational(2));
    CHECK(functional_capacity(50, 50, Rational(1), Rational(1)) == Rational(51, 2));
    CHECK_THROWS_AS(functional_capacity(0, 2, Rational(1), Rational(1)), std::domain_error);
    CHECK_THROWS_AS(functional_capacity(3, 2, Rational(1), Rational(1)), std::domain_error);
    CHECK_THROWS_AS(functional_capacity(2, 2, Rational(0), Rational(1)), std::domain_error);
}

TEST_CASE("capacity is nondecreasing in alpha and gamma") {
    const Rational quarter(1, 4);
    for (int k = 1; k <= 4; ++k) {
        for (int d = k; d <= 5; ++d) {
            Rational prev(0);
            for (int step = 1; step <= 12; ++step) {
                Rational gamma = Rational(step) * quarter;
                Rational cur = functional_capacity(k, d, Rational(1), gamma);
                CHECK(cur >= prev);
                prev = cur;
            }
            prev = Rational(0);
            for (int step = 1; step <= 12; ++step) {
                Rational alpha = Rational(step) * quarter;
                Rational cur = functional_capacity(k, d, alpha, Rational(1));
                CHECK(cur >= prev);
                prev = cur;
            }
        }
    }
}

TEST_CASE("msr and mbr points") {
    auto msr = msr_point(2, 2, Rational(2));
    CHECK(msr.alpha == Rational(1));
    CHECK(msr.gamma == Rational(2));
    auto msr50 = msr_point(50, 50, Rational(50));
    CHECK(msr50.alpha == Rational(1));
    CHECK(msr50.gamma == Rational(50));

    auto mbr = mbr_point(2, 2, Rational(3));
    CHECK(mbr.alpha == Rational(2));
    CHECK(mbr.gamma == Rational(2));
    auto mbr50 = mbr_point(50, 50, Rational(51, 2));
    CHECK(mbr50.alpha == Rational(1));
    CHECK(mbr50.gamma == Rational(1));
}

TEST_CASE("capacity at both points returns exactly B") {
    for (auto [k, d] : {std::pair{2, 2}, {3, 5}, {50, 50}}) {
        const Rational B(7, 3);
        auto m = msr_point(k, d, B);
        CHECK(functional_capacity(k, d, m.alpha, m.gamma) == B);
        auto b = mbr_point(k, d, B);
        CHECK(functional_capacity(k, d, b.alpha, b.gamma) == B);
    }
}

TEST_CASE("exact lower bound goldens") {
    auto at_k = exact_lower_bound(51, 50, 50, Rational(1), 50);
    CHECK(at_k.gamma == Rational(50));
    CHECK(at_k.value == Rational(50)); // k*alpha at the MSR end

    auto at_1 = exact_lower_bound(51, 50, 50, Rational(1), 1);
    CHECK(at_1.gamma == Rational(1));
    CHECK(at_1.value == Rational(51, 2)); // n*alpha/2 at the MBR end

    auto mid = exact_lower_bound(4, 3, 3, Rational(1), 2);
    CHECK(mid.gamma == Rational(2));
    CHECK(mid.value == Rational(8, 3));

    CHECK_THROWS_AS(exact_lower_bound(4, 3, 3, Rational(1), 0), std::domain_error);
    CHECK_THROWS_AS(exact_lower_bound(4, 3, 3, Rational(1), 4), std::domain_error);
}

TEST_CASE("closed-form ratio equals the direct summation") {
    for (std::int64_t n = 2; n <= 60; ++n) {
        for (std::int64_t i = 1; i <= n - 1; ++i) {
            CHECK(section4_ratio(n, i) == section4_ratio_direct(n, i));
        }
    }
}

TEST_CASE("ratio endpoints and the n=51 minimum") {
    for (std::int64_t n : {3, 10, 51, 101}) {
        CHECK(section4_ratio(n, 1) == Rational(1));
        CHECK(section4_ratio(n, n - 1) == Rational(1));
    }
    CHECK(section4_ratio(51, 2) == Rational(17, 19));
    Rational best(1);
    std::int64_t best_i = 1;
    for (std::int64_t i = 1; i <= 50; ++i) {
        Rational r = section4_ratio(51, i);
        if (r < best) {
            best = r;
            best_i = i;
        }
    }
    CHECK(best == Rational(17, 19));
    CHECK(best_i == 2);
}

TEST_CASE("large-n approximation") {
    CHECK(large_n_ratio_approx(1) == Rational(1));
    CHECK(large_n_ratio_approx(2) == Rational(8, 9));
    Rational best(1);
    std::int64_t best_i = 1;
    for (std::int64_t i = 1; i <= 1000; ++i) {
        Rational r = large_n_ratio_approx(i);
        if (r < best) {
            best = r;
            best_i = i;
        }
    }
    CHECK(best == Rational(8, 9));
    CHECK(best_i == 2);
    // Consistency with the finite-n ratio for large n.
    for (std::int64_t i = 1; i <= 10; ++i) {
        Rational diff = section4_ratio(10000, i) - large_n_ratio_approx(i);
        CHECK(rational_abs(diff) < Rational(1, 100));
    }
}

TEST_CASE("asymptotic ratio at s=1 is exactly one") {
    for (std::int64_t M : {0, 1, 10, 100, 1000}) {
        auto r = asymptotic_ratio(3, 2, 2, M, Rational(1));
        CHECK(r.ratio == Rational(1));
        CHECK(r.i == Rational(r.k_M));
        CHECK(r.i_floor == r.k_M);
    }
}

TEST_CASE("asymptotic ratio converges for (3,2,2)") {
    for (const Rational& s : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
        Rational prev_err(1);
        for (std::int64_t M : {100, 1000, 10000, 100000}) {
            auto r = asymptotic_ratio(3, 2, 2, M, s);
            Rational err = rational_abs(r.ratio - Rational(1));
            CHECK(err <= prev_err);
            prev_err = err;
        }
        CHECK(prev_err < Rational(1, 1000));
    }
}

TEST_CASE("h diagnostics approach their limits") {
    const std::int64_t n = 3, k = 2, d = 2, M = 1000000;
    auto r = asymptotic_ratio(n, k, d, M, Rational(1, 2));
    REQUIRE(r.h1_scaled.has_value());
    const Rational lim1 = Rational(2) * Rational(1, 2) * Rational(d - k + 1);
    const Rational lim2 = Rational(1, 2);
    const Rational lim3 = Rational(2) * Rational(d - k + 1);
    CHECK(rational_abs(*r.h1_scaled - lim1) / lim1 < Rational(1, 100));
    CHECK(rational_abs(*r.h2_scaled - lim2) / lim2 < Rational(1, 100));
    CHECK(rational_abs(*r.h3_scaled - lim3) / lim3 < Rational(1, 100));
    CHECK(rational_abs(*r.h4_scaled) < Rational(1, 100)); // limit 0: absolute
}

TEST_CASE("asymptotic report records both i and floor(i)") {
    auto r = asymptotic_ratio(3, 2, 2, 100, Rational(1, 2));
    CHECK(r.i == Rational(1) + Rational(1, 2) * Rational(101)); // 103/2
    CHECK(r.i_floor == 51);
    auto j = r.to_json();
    CHECK(j["i"]["rational"].get<std::string>() == "103/2");
    CHECK(j["i_floor"].get<std::int64_t>() == 51);
    CHECK(j.contains("h1_scaled"));
    CHECK_THROWS_AS(asymptotic_ratio(3, 2, 2, 10, Rational(0)), std::domain_error);
    CHECK_THROWS_AS(asymptotic_ratio(3, 2, 2, 10, Rational(2)), std::domain_error);
    CHECK_THROWS_AS(asymptotic_ratio(3, 2, 2, -1, Rational(1, 2)), std::domain_error);
}

TEST_CASE("gamma mix endpoints and identity") {
    CHECK(gamma_mix(5, 7, Rational(1), Rational(0)) == Rational(1)); // gamma_MBR = alpha
    CHECK(gamma_mix(5, 7, Rational(1), Rational(1)) == Rational(7, 3)); // d/(d-k+1)
    // Exact mean of the endpoint bandwidths at s = 1/2.
    Rational msr = Rational(1002) * Rational(1) / Rational(1002 - 1002 + 1);
    Rational mix = gamma_mix(1002, 1002, Rational(1), Rational(1, 2));
    CHECK(mix == (msr + Rational(1)) / Rational(2));
}

TEST_CASE("interpolation baseline") {
    const Rational b_mbr(51, 2), b_msr(50);
    CHECK(interpolation_baseline(50, 50, b_mbr, b_msr, Rational(1)) == b_mbr);
    CHECK(interpolation_baseline(50, 50, b_mbr, b_msr, Rational(50)) == b_msr);
    CHECK(interpolation_baseline(50, 50, b_mbr, b_msr, Rational(51, 2)) ==
          Rational(51, 2) + Rational(49, 2) / Rational(49) * (Rational(50) - Rational(51, 2)));
    CHECK_THROWS_AS(interpolation_baseline(50, 50, b_mbr, b_msr, Rational(51)),
                    std::domain_error);
    CHECK_THROWS_AS(interpolation_baseline(50, 50, b_mbr, b_msr, Rational(1, 2)),
                    std::domain_error);
}

TEST_CASE("fig2 dataset endpoints and sandwich") {
    auto rows = fig2_dataset(51);
    REQUIRE(rows.size() == 50);
    CHECK(rows[0][0].value == Rational(51, 2));
    CHECK(rows[0][1].value == Rational(51, 2));
    CHECK(rows[0][2].value == Rational(51, 2));
    CHECK(rows[49][0].value == Rational(50));
    CHECK(rows[49][1].value == Rational(50));
    CHECK(rows[49][2].value == Rational(50));
    for (const auto& row : rows) {
        CHECK(row[2].value <= row[1].value);
        CHECK(row[1].value <= row[0].value);
        CHECK(row[0].source == CapacityPoint::Source::capacity);
        CHECK(row[1].source == CapacityPoint::Source::exact_bound);
        CHECK(row[2].source == CapacityPoint::Source::interpolation);
    }
    std::string csv = fig2_csv(rows);
    CHECK(csv.rfind("gamma,capacity,bound,interpolation\n", 0) == 0);
    CHECK(csv.find("\n1,25.5,25.5,25.5\n") != std::string::npos);
    CHECK(csv.find("\n50,50,50,50\n") != std::string::npos);
}

TEST_CASE("sandwich with bound between interpolation and capacity") {
    // For the n = k+1 = d+1 family, at every integer i the three curves
    // nest, meeting at both ends.
    const std::int64_t n = 51, k = 50, d = 50;
    const Rational b_mbr(51, 2), b_msr(50);
    for (std::int64_t i = 1; i <= k; ++i) {
        auto bp = exact_lower_bound(n, k, d, Rational(1), i);
        Rational cap = functional_capacity(k, d, Rational(1), bp.gamma);
        Rational interp = interpolation_baseline(k, d, b_mbr, b_msr, bp.gamma);
        CHECK(interp <= bp.value);
        CHECK(bp.value <= cap);
        if (i == 1 || i == k) {
            CHECK(interp == bp.value);
            CHECK(bp.value == cap);
        }
    }
}
