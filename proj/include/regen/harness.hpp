#pragma once

#include "regen/lift.hpp"
#include "regen/model.hpp"
#include "regen/rational.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace regen::harness {

struct Scenario {
    std::string name;
    std::string description;
    std::function<std::shared_ptr<const Code>()> base;
    std::vector<LiftVariant> chain;
};

const std::vector<Scenario>& scenarios();
const Scenario* find_scenario(std::string_view name);
std::shared_ptr<const Code> build_chain(const Scenario& s);

// Deterministic file of the given size.
std::vector<std::uint8_t> random_file(std::uint64_t size, std::uint64_t seed);

// Per-helper transmissions for every admissible helper set of one failed
// node. For the permutation variant the symmetry argument suggests a
// per-helper share of n*n!*beta; the measured aggregate share is
// gamma2/(d+1), and the audit records both figures and their mismatch.
struct AuditEntry {
    std::vector<int> helpers;
    std::map<int, std::uint64_t> sent;
    std::uint64_t total = 0;
};

struct BandwidthAudit {
    int failed = 0;
    std::vector<AuditEntry> entries;
    std::uint64_t measured_beta2 = 0; // largest per-helper total observed
    bool uniform = true;              // every helper equal within every entry
    std::optional<std::uint64_t> claimed_beta2;

    nlohmann::json to_json() const;
};

BandwidthAudit bandwidth_audit(const Code& code, const StorageInstance& instance, int failed);

struct SuiteResult {
    std::string name;
    std::vector<CodeParams> params_chain; // base first, final last
    VerificationReport report;
    std::uint64_t achieved_B = 0;
    Rational normalized_rate;  // B2 / alpha2
    Rational predicted_bound;  // (n_final/n_base) * (B_base/alpha_base)
    std::optional<std::uint64_t> claimed_beta2;
    std::uint64_t measured_beta2 = 0;
    bool pass = false;

    nlohmann::json to_json() const;
    std::string summary_table() const;
};

struct SuiteOptions {
    std::uint64_t seed = 42;
    std::uint64_t cap = 500;
    // Optional single-symbol corruption injected after store (negative
    // control); the global symbol index across node contents.
    std::optional<std::uint64_t> corrupt_symbol;
};

SuiteResult run_construction_suite(const Scenario& scenario, SuiteOptions opts = {});

} // namespace regen::harness
