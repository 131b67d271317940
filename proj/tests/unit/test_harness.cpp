#include <doctest.h>

#include <stdexcept>

#include "regen/codes.hpp"
#include "regen/harness.hpp"

using namespace regen;
using namespace regen::harness;

TEST_CASE("scenario registry") {
    CHECK(scenarios().size() == 5);
    CHECK(find_scenario("toy-perm-433") != nullptr);
    CHECK(find_scenario("no-such") == nullptr);
    for (const auto& s : scenarios()) {
        auto code = build_chain(s);
        CHECK(code->params().n == s.base()->params().n + static_cast<int>(s.chain.size()));
    }
}

TEST_CASE("every registered scenario passes its suite") {
    for (const auto& sc : scenarios()) {
        auto result = run_construction_suite(sc);
        CHECK(result.pass);
        CHECK(result.report.all_pass);
        CHECK(result.normalized_rate == result.predicted_bound);
    }
}

TEST_CASE("random files are deterministic per seed") {
    CHECK(random_file(16, 42) == random_file(16, 42));
    CHECK(random_file(16, 42) != random_file(16, 43));
}

TEST_CASE("toy permutation suite matches the lift accounting") {
    auto result = run_construction_suite(*find_scenario("toy-perm-433"));
    CHECK(result.pass);
    CHECK(result.report.all_pass);
    CHECK(result.achieved_B == 48);
    CHECK(result.normalized_rate == Rational(8, 3));
    CHECK(result.predicted_bound == Rational(8, 3));
    REQUIRE(result.claimed_beta2.has_value());
    CHECK(*result.claimed_beta2 == 18);
    CHECK(result.measured_beta2 == 12);
    CHECK(result.measured_beta2 * 3 == result.params_chain.back().gamma);

    auto j = result.to_json();
    CHECK(j["beta2_discrepancy"].get<bool>());
    CHECK(j["pass"].get<bool>());
    CHECK(j["params_chain"].size() == 2);
}

TEST_CASE("cyclic suite bandwidth splits sum to gamma") {
    auto result = run_construction_suite(*find_scenario("toy-cyclic-433"));
    CHECK(result.pass);
    CHECK(!result.claimed_beta2.has_value());
    CHECK(result.normalized_rate == Rational(8, 3));

    auto code = build_chain(*find_scenario("toy-cyclic-433"));
    auto inst = code->store(random_file(code->params().file_size, 42));
    for (int failed = 1; failed <= 4; ++failed) {
        auto audit = bandwidth_audit(*code, inst, failed);
        for (const auto& e : audit.entries) {
            CHECK(e.total == code->params().gamma);
            std::uint64_t sum = 0;
            for (const auto& [h, s] : e.sent) sum += s;
            CHECK(sum == e.total);
        }
    }
}

TEST_CASE("cyclic lifts with proper helper subsets send unequal shares") {
    // With d+1 < n helpers the idle position is sometimes outside the helper
    // set, so cyclic per-helper totals genuinely vary.
    auto code = cyclic_lift(std::make_shared<MdsMsrCode>(5, 2));
    auto inst = code->store(random_file(code->params().file_size, 3));
    bool saw_unequal = false;
    for (int failed = 1; failed <= code->params().n && !saw_unequal; ++failed) {
        auto audit = bandwidth_audit(*code, inst, failed);
        saw_unequal = !audit.uniform;
        for (const auto& e : audit.entries) CHECK(e.total == code->params().gamma);
    }
    CHECK(saw_unequal);
}

TEST_CASE("permutation-lift symmetry holds for every failed node and helper set") {
    // (6,3,3) from MSR(5,2): helper sets are proper subsets, so the
    // surplus-helper rotation is exercised; totals must still even out to
    // gamma2/(d+1) = 400 for every one of the 6 x C(5,3) audits.
    auto code = build_chain(*find_scenario("msr-perm-633"));
    auto inst = code->store(random_file(code->params().file_size, 5));
    const std::uint64_t share = code->params().gamma / static_cast<std::uint64_t>(code->params().d);
    CHECK(share == 400);
    for (int failed = 1; failed <= code->params().n; ++failed) {
        auto audit = bandwidth_audit(*code, inst, failed);
        CHECK(audit.entries.size() == 10);
        CHECK(audit.uniform);
        CHECK(audit.measured_beta2 == share);
        for (const auto& e : audit.entries) {
            CHECK(e.total == code->params().gamma);
            for (const auto& [h, s] : e.sent) CHECK(s == share);
        }
    }
}

TEST_CASE("mbr chain suite") {
    auto result = run_construction_suite(*find_scenario("mbr-cyclic-534"));
    CHECK(result.pass);
    CHECK(result.achieved_B == 25);
    CHECK(result.normalized_rate == Rational(25, 12));
    CHECK(result.predicted_bound == Rational(25, 12));
}

TEST_CASE("negative control: a flipped symbol fails verification") {
    SuiteOptions opts;
    opts.corrupt_symbol = 0;
    auto result = run_construction_suite(*find_scenario("toy-cyclic-433"), opts);
    CHECK(!result.pass);
    CHECK(!result.report.all_pass);
}

TEST_CASE("audit rejects bad node index") {
    auto code = build_chain(*find_scenario("toy-cyclic-433"));
    auto inst = code->store(random_file(code->params().file_size, 42));
    CHECK_THROWS_AS(bandwidth_audit(*code, inst, 0), std::domain_error);
    CHECK_THROWS_AS(bandwidth_audit(*code, inst, 5), std::domain_error);
}

TEST_CASE("suite summary renders") {
    auto result = run_construction_suite(*find_scenario("toy-perm-433"));
    auto table = result.summary_table();
    CHECK(table.find("toy-perm-433") != std::string::npos);
    CHECK(table.find("PASS") != std::string::npos);
    CHECK(table.find("18 / 12") != std::string::npos);
}
