#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace regen {

// Node indices are 1-based everywhere in this library, matching the usual
// v_1..v_n numbering of storage nodes. Subsets and helper sets are vectors
// of 1-based indices.

struct BetaProfile {
    enum class Kind { homogeneous, bounded };
    Kind kind = Kind::bounded;
    std::uint64_t beta = 0; // per-helper symbols, meaningful when homogeneous

    static BetaProfile homogeneous(std::uint64_t b) { return {Kind::homogeneous, b}; }
    static BetaProfile bounded() { return {Kind::bounded, 0}; }
    bool is_homogeneous() const { return kind == Kind::homogeneous; }
};

// Parameters of a DSS code: any k of n nodes reconstruct the file, any d of
// the survivors repair a lost node. alpha is kept per node because the
// construction's intermediate systems contain a node that stores nothing.
struct CodeParams {
    int n = 0;
    int k = 0;
    int d = 0;
    std::vector<std::uint64_t> alpha_per_node; // size n, symbols
    std::uint64_t gamma = 0;                   // total repair bandwidth, symbols
    BetaProfile beta;
    std::uint64_t file_size = 0; // B, symbols
    std::string field = "gf256";

    // Throws std::domain_error when an invariant is broken
    // (k <= d < n, B >= 1, homogeneous => gamma == d*beta, ...).
    void validate() const;

    bool alpha_uniform() const;
    std::uint64_t alpha_max() const;
    std::uint64_t total_storage() const;

    nlohmann::json to_json() const;
};

// An encoded file laid out across n nodes.
struct StorageInstance {
    CodeParams params;
    std::vector<std::vector<std::uint8_t>> nodes_; // index 0 = node 1
    std::vector<std::uint8_t> file;
    std::string code_id;

    const std::vector<std::uint8_t>& node(int j) const { return nodes_.at(j - 1); }
    std::vector<std::uint8_t>& node(int j) { return nodes_.at(j - 1); }
    std::uint64_t total_symbols() const;
    // Flip one stored symbol, addressed globally across node contents in
    // node order. Throws std::domain_error when out of range.
    void flip_symbol(std::uint64_t global_index);
};

// One repair: which node failed, which d nodes helped, how many symbols each
// helper transmitted, and the rebuilt content.
struct RepairTrace {
    int failed = 0;
    std::vector<int> helpers;
    std::map<int, std::uint64_t> sent;
    std::vector<std::uint8_t> rebuilt;

    std::uint64_t total_sent() const;
};

// Interface every concrete code implements. Implementations must be pure:
// store/reconstruct/repair depend only on the arguments.
//
// reconstruct and repair are handed restricted instances by the verifier:
// only the named subset/helpers carry content, so an implementation that
// peeks at other nodes (or at instance.file) fails loudly.
class Code {
public:
    virtual ~Code() = default;

    virtual const CodeParams& params() const = 0;
    virtual std::string id() const = 0;
    virtual nlohmann::json describe() const = 0;

    virtual StorageInstance store(std::span<const std::uint8_t> file) const = 0;
    virtual std::vector<std::uint8_t> reconstruct(const StorageInstance& instance,
                                                  std::span<const int> subset) const = 0;
    virtual RepairTrace repair(const StorageInstance& instance, int failed,
                               std::span<const int> helpers) const = 0;
};

// Copy of `instance` where only `visible` nodes keep their content and the
// original file is blanked.
StorageInstance restrict_to(const StorageInstance& instance, std::span<const int> visible);

struct VerifyOptions {
    // Cap on enumerated combinations per axis; 0 means exhaustive always.
    // When C(n,k) (or C(n-1,d) per failed node) exceeds the cap, a seeded
    // random sample of `cap` distinct combinations is checked instead.
    std::uint64_t cap = 0;
    std::uint64_t seed = 42;
};

struct CheckFailure {
    std::string kind; // "reconstruction" | "repair"
    int failed = 0;   // repair only
    std::vector<int> subset;
    std::string detail;
};

struct VerificationReport {
    CodeParams params;
    std::vector<std::pair<std::vector<int>, bool>> reconstruction_results;
    std::vector<std::tuple<int, std::vector<int>, bool>> repair_results;
    std::uint64_t max_bandwidth_used = 0;
    std::uint64_t per_helper_max = 0;
    bool all_pass = true;

    // Coverage bookkeeping (the cap is recorded when sampling kicks in).
    std::uint64_t reconstruction_space = 0;
    std::uint64_t repair_space = 0;
    bool sampled = false;
    std::uint64_t cap = 0;
    std::uint64_t seed = 0;

    std::uint64_t total_checks() const;
    std::vector<CheckFailure> failures() const;
    nlohmann::json to_json() const;
};

// Checks that every k-subset of nodes reconstructs the stored file exactly.
// Failures are recorded in the report, never thrown.
VerificationReport verify_reconstruction_all(const Code& code, const StorageInstance& instance,
                                             VerifyOptions opts = {});

// Checks that for every node and every d-subset of the survivors the repair
// rebuilds the node content bit-exactly within the bandwidth budget (and
// within beta per helper when the profile is homogeneous).
VerificationReport verify_exact_repair_all(const Code& code, const StorageInstance& instance,
                                           VerifyOptions opts = {});

VerificationReport merge_reports(VerificationReport recon, const VerificationReport& repair);

// C(n,k) clamped to UINT64_MAX on overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// Throws std::domain_error unless `subset` holds exactly `want` distinct
// 1-based indices within [1, n].
void check_node_subset(std::span<const int> subset, int n, std::size_t want, const char* what);

// All k-subsets of {1..n} in lexicographic order, or a seeded sample of
// `cap` distinct subsets (sorted lexicographically) when C(n,k) > cap > 0.
std::vector<std::vector<int>> enumerate_subsets(int n, int k, std::uint64_t cap,
                                                std::uint64_t seed, bool* sampled = nullptr);

} // namespace regen
