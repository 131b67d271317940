#include "regen/model.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace regen {

using nlohmann::json;

void CodeParams::validate() const {
    if (n < 1) throw std::domain_error("CodeParams: need n >= 1");
    if (!(k <= d && d < n)) throw std::domain_error("CodeParams: need k <= d < n");
    if (k < 1) throw std::domain_error("CodeParams: need k >= 1");
    if (alpha_per_node.size() != static_cast<std::size_t>(n))
        throw std::domain_error("CodeParams: alpha_per_node must have n entries");
    if (file_size < 1) throw std::domain_error("CodeParams: need B >= 1");
    if (beta.is_homogeneous() && gamma != static_cast<std::uint64_t>(d) * beta.beta)
        throw std::domain_error("CodeParams: homogeneous profile requires gamma == d*beta");
}

bool CodeParams::alpha_uniform() const {
    for (auto a : alpha_per_node) {
        if (a != alpha_per_node.front()) return false;
    }
    return !alpha_per_node.empty();
}

std::uint64_t CodeParams::alpha_max() const {
    std::uint64_t m = 0;
    for (auto a : alpha_per_node) m = std::max(m, a);
    return m;
}

std::uint64_t CodeParams::total_storage() const {
    std::uint64_t t = 0;
    for (auto a : alpha_per_node) t += a;
    return t;
}

json CodeParams::to_json() const {
    json j;
    j["n"] = n;
    j["k"] = k;
    j["d"] = d;
    j["alpha_per_node"] = alpha_per_node;
    j["gamma"] = gamma;
    if (beta.is_homogeneous()) {
        j["beta_profile"] = {{"kind", "homogeneous"}, {"beta", beta.beta}};
    } else {
        j["beta_profile"] = {{"kind", "bounded"}};
    }
    j["B"] = file_size;
    j["field"] = field;
    return j;
}

std::uint64_t StorageInstance::total_symbols() const {
    std::uint64_t t = 0;
    for (const auto& nd : nodes_) t += nd.size();
    return t;
}

void StorageInstance::flip_symbol(std::uint64_t global_index) {
    for (auto& nd : nodes_) {
        if (global_index < nd.size()) {
            nd[global_index] ^= 0x01;
            return;
        }
        global_index -= nd.size();
    }
    throw std::domain_error("StorageInstance: symbol index out of range");
}

std::uint64_t RepairTrace::total_sent() const {
    std::uint64_t t = 0;
    for (const auto& [h, s] : sent) t += s;
    return t;
}

StorageInstance restrict_to(const StorageInstance& instance, std::span<const int> visible) {
    StorageInstance out;
    out.params = instance.params;
    out.code_id = instance.code_id;
    out.nodes_.resize(instance.nodes_.size());
    for (int j : visible) {
        if (j < 1 || j > instance.params.n)
            throw std::domain_error("restrict_to: node index out of range");
        out.nodes_[static_cast<std::size_t>(j - 1)] = instance.nodes_[static_cast<std::size_t>(j - 1)];
    }
    return out;
}

void check_node_subset(std::span<const int> subset, int n, std::size_t want, const char* what) {
    if (subset.size() != want)
        throw std::domain_error(std::string(what) + ": wrong subset size");
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int j : subset) {
        if (j < 1 || j > n) throw std::domain_error(std::string(what) + ": index out of range");
        if (seen[static_cast<std::size_t>(j)])
            throw std::domain_error(std::string(what) + ": repeated index");
        seen[static_cast<std::size_t>(j)] = true;
    }
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        std::uint64_t f = n - k + i;
        // r = r * f / i, watching for overflow.
        std::uint64_t g = std::gcd(r, i);
        std::uint64_t r2 = r / g;
        std::uint64_t i2 = i / g;
        std::uint64_t g2 = std::gcd(f, i2);
        f /= g2;
        if (r2 > UINT64_MAX / f) return UINT64_MAX;
        r = r2 * f;
    }
    return r;
}

std::vector<std::vector<int>> enumerate_subsets(int n, int k, std::uint64_t cap,
                                                std::uint64_t seed, bool* sampled) {
    if (sampled) *sampled = false;
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    const std::uint64_t space = binomial(static_cast<std::uint64_t>(n),
                                         static_cast<std::uint64_t>(k));
    if (cap == 0 || space <= cap) {
        std::vector<int> cur(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
        for (;;) {
            out.push_back(cur);
            int i = k - 1;
            while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - (k - 1 - i)) --i;
            if (i < 0) break;
            ++cur[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
        }
        return out;
    }
    if (sampled) *sampled = true;
    std::mt19937_64 rng(seed);
    std::set<std::vector<int>> chosen;
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
    while (chosen.size() < cap) {
        // Partial Fisher-Yates draw of k distinct elements.
        std::vector<int> p = pool;
        for (int i = 0; i < k; ++i) {
            std::uniform_int_distribution<int> dist(i, n - 1);
            std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(dist(rng))]);
        }
        std::vector<int> s(p.begin(), p.begin() + k);
        std::sort(s.begin(), s.end());
        chosen.insert(std::move(s));
    }
    out.assign(chosen.begin(), chosen.end());
    return out;
}

std::uint64_t VerificationReport::total_checks() const {
    return reconstruction_results.size() + repair_results.size();
}

std::vector<CheckFailure> VerificationReport::failures() const {
    std::vector<CheckFailure> out;
    for (const auto& [subset, ok] : reconstruction_results) {
        if (!ok) out.push_back({"reconstruction", 0, subset, {}});
    }
    for (const auto& [failed, helpers, ok] : repair_results) {
        if (!ok) out.push_back({"repair", failed, helpers, {}});
    }
    return out;
}

json VerificationReport::to_json() const {
    json j;
    j["params"] = params.to_json();
    j["total_checks"] = total_checks();
    json fails = json::array();
    for (const auto& f : failures()) {
        json e;
        e["kind"] = f.kind;
        if (f.kind == "repair") {
            e["failed"] = f.failed;
            e["helpers"] = f.subset;
        } else {
            e["subset"] = f.subset;
        }
        fails.push_back(e);
    }
    j["failures"] = fails;
    j["max_bandwidth_used"] = max_bandwidth_used;
    j["per_helper_max"] = per_helper_max;
    j["all_pass"] = all_pass;
    j["coverage"] = {{"reconstruction_space", reconstruction_space},
                     {"repair_space", repair_space},
                     {"sampled", sampled},
                     {"cap", cap},
                     {"seed", seed}};
    return j;
}

VerificationReport verify_reconstruction_all(const Code& code, const StorageInstance& instance,
                                             VerifyOptions opts) {
    const CodeParams& p = instance.params;
    VerificationReport report;
    report.params = p;
    report.cap = opts.cap;
    report.seed = opts.seed;
    report.reconstruction_space =
        binomial(static_cast<std::uint64_t>(p.n), static_cast<std::uint64_t>(p.k));
    bool sampled = false;
    auto subsets = enumerate_subsets(p.n, p.k, opts.cap, opts.seed, &sampled);
    report.sampled = sampled;
    for (const auto& subset : subsets) {
        bool ok = false;
        try {
            StorageInstance view = restrict_to(instance, subset);
            ok = code.reconstruct(view, subset) == instance.file;
        } catch (const std::exception&) {
            ok = false;
        }
        report.reconstruction_results.emplace_back(subset, ok);
        report.all_pass = report.all_pass && ok;
    }
    return report;
}

VerificationReport verify_exact_repair_all(const Code& code, const StorageInstance& instance,
                                           VerifyOptions opts) {
    const CodeParams& p = instance.params;
    VerificationReport report;
    report.params = p;
    report.cap = opts.cap;
    report.seed = opts.seed;
    report.repair_space =
        static_cast<std::uint64_t>(p.n) *
        binomial(static_cast<std::uint64_t>(p.n - 1), static_cast<std::uint64_t>(p.d));
    for (int failed = 1; failed <= p.n; ++failed) {
        bool sampled = false;
        auto helper_sets = enumerate_subsets(p.n - 1, p.d, opts.cap,
                                             opts.seed + static_cast<std::uint64_t>(failed),
                                             &sampled);
        report.sampled = report.sampled || sampled;
        for (auto& helpers : helper_sets) {
            // Subsets were drawn from {1..n-1}; skip over the failed index.
            for (int& h : helpers) {
                if (h >= failed) ++h;
            }
            bool ok = false;
            std::uint64_t total = 0;
            try {
                StorageInstance view = restrict_to(instance, helpers);
                RepairTrace tr = code.repair(view, failed, helpers);
                total = tr.total_sent();
                ok = tr.rebuilt == instance.node(failed) && total <= p.gamma;
                if (p.beta.is_homogeneous()) {
                    for (const auto& [h, s] : tr.sent) ok = ok && s <= p.beta.beta;
                }
                for (const auto& [h, s] : tr.sent) {
                    report.per_helper_max = std::max(report.per_helper_max, s);
                }
            } catch (const std::exception&) {
                ok = false;
            }
            report.max_bandwidth_used = std::max(report.max_bandwidth_used, total);
            report.repair_results.emplace_back(failed, helpers, ok);
            report.all_pass = report.all_pass && ok;
        }
    }
    return report;
}

VerificationReport merge_reports(VerificationReport recon, const VerificationReport& repair) {
    recon.repair_results = repair.repair_results;
    recon.repair_space = repair.repair_space;
    recon.max_bandwidth_used = std::max(recon.max_bandwidth_used, repair.max_bandwidth_used);
    recon.per_helper_max = std::max(recon.per_helper_max, repair.per_helper_max);
    recon.sampled = recon.sampled || repair.sampled;
    recon.all_pass = recon.all_pass && repair.all_pass;
    return recon;
}

} // namespace regen
