#include "regen/codes.hpp"

#include "regen/gf256.hpp"

#include <algorithm>
#include <stdexcept>

namespace regen {

using nlohmann::json;

namespace {

const std::vector<std::uint8_t>& node_content(const StorageInstance& inst, int j,
                                              std::uint64_t want_len, const char* what) {
    const auto& c = inst.node(j);
    if (c.size() != want_len)
        throw std::domain_error(std::string(what) + ": helper node content missing or short");
    return c;
}

} // namespace

MdsMsrCode::MdsMsrCode(int n, int k, std::uint64_t alpha_units)
    : codec_(n, k), alpha_(alpha_units) {
    if (alpha_units < 1) throw std::domain_error("MdsMsrCode: need alpha >= 1");
    params_.n = n;
    params_.k = k;
    params_.d = k;
    params_.alpha_per_node.assign(static_cast<std::size_t>(n), alpha_);
    params_.gamma = static_cast<std::uint64_t>(k) * alpha_;
    params_.beta = BetaProfile::homogeneous(alpha_);
    params_.file_size = static_cast<std::uint64_t>(k) * alpha_;
    params_.validate();
}

std::string MdsMsrCode::id() const {
    std::string s = "msr:" + std::to_string(params_.n) + "," + std::to_string(params_.k);
    if (alpha_ != 1) s += ",a=" + std::to_string(alpha_);
    return s;
}

json MdsMsrCode::describe() const {
    return json{{"type", "msr"}, {"n", params_.n}, {"k", params_.k}, {"alpha", alpha_}};
}

StorageInstance MdsMsrCode::store(std::span<const std::uint8_t> file) const {
    if (file.size() != params_.file_size)
        throw std::domain_error("MdsMsrCode: file size must be k*alpha");
    std::vector<std::uint8_t> coded(static_cast<std::size_t>(params_.n) * alpha_);
    codec_.encode_blocks(file, alpha_, coded);
    StorageInstance inst;
    inst.params = params_;
    inst.code_id = id();
    inst.file.assign(file.begin(), file.end());
    inst.nodes_.resize(static_cast<std::size_t>(params_.n));
    for (int j = 0; j < params_.n; ++j) {
        auto begin = coded.begin() + static_cast<std::ptrdiff_t>(j * alpha_);
        inst.nodes_[static_cast<std::size_t>(j)].assign(begin,
                                                        begin + static_cast<std::ptrdiff_t>(alpha_));
    }
    return inst;
}

std::vector<std::uint8_t> MdsMsrCode::reconstruct(const StorageInstance& instance,
                                                  std::span<const int> subset) const {
    check_node_subset(subset, params_.n, static_cast<std::size_t>(params_.k), "MdsMsrCode reconstruct");
    std::vector<std::uint8_t> blocks;
    blocks.reserve(static_cast<std::size_t>(params_.k) * alpha_);
    for (int j : subset) {
        const auto& c = node_content(instance, j, alpha_, "MdsMsrCode reconstruct");
        blocks.insert(blocks.end(), c.begin(), c.end());
    }
    std::vector<int> positions(subset.begin(), subset.end());
    return codec_.decode_blocks(positions, blocks, alpha_);
}

RepairTrace MdsMsrCode::repair(const StorageInstance& instance, int failed,
                               std::span<const int> helpers) const {
    check_node_subset(helpers, params_.n, static_cast<std::size_t>(params_.d), "MdsMsrCode repair");
    if (std::find(helpers.begin(), helpers.end(), failed) != helpers.end())
        throw std::domain_error("MdsMsrCode repair: helper set contains the failed node");
    if (failed < 1 || failed > params_.n)
        throw std::domain_error("MdsMsrCode repair: failed index out of range");

    RepairTrace tr;
    tr.failed = failed;
    tr.helpers.assign(helpers.begin(), helpers.end());
    std::sort(tr.helpers.begin(), tr.helpers.end());

    // Each helper transmits its whole content; the trace counts exactly the
    // transmitted symbols.
    std::vector<std::uint8_t> blocks;
    blocks.reserve(helpers.size() * alpha_);
    for (int h : tr.helpers) {
        const auto& c = node_content(instance, h, alpha_, "MdsMsrCode repair");
        blocks.insert(blocks.end(), c.begin(), c.end());
        tr.sent[h] = c.size();
    }
    std::vector<std::uint8_t> file = codec_.decode_blocks(tr.helpers, blocks, alpha_);

    // Re-encode just the failed row.
    tr.rebuilt.assign(alpha_, 0);
    for (int j = 0; j < params_.k; ++j) {
        std::uint8_t c = codec_.gen_at(failed, j + 1);
        if (c == 0) continue;
        gf256::mul_xor_into(tr.rebuilt.data(), file.data() + static_cast<std::size_t>(j) * alpha_,
                            alpha_, c);
    }
    return tr;
}

RbtMbrCode::RbtMbrCode(int n, int k)
    : codec_(static_cast<int>(binomial(static_cast<std::uint64_t>(n), 2)),
             static_cast<int>(static_cast<std::uint64_t>(k) * (n - 1) -
                              static_cast<std::uint64_t>(k) * (k - 1) / 2)) {
    const int d = n - 1;
    if (k > d) throw std::domain_error("RbtMbrCode: need k <= n-1");
    params_.n = n;
    params_.k = k;
    params_.d = d;
    params_.alpha_per_node.assign(static_cast<std::size_t>(n), static_cast<std::uint64_t>(d));
    params_.gamma = static_cast<std::uint64_t>(d);
    params_.beta = BetaProfile::homogeneous(1);
    params_.file_size = static_cast<std::uint64_t>(codec_.k());
    params_.validate();

    node_edges_.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            edges_.emplace_back(i, j);
            int e = static_cast<int>(edges_.size()); // 1-based coded position
            node_edges_[static_cast<std::size_t>(i - 1)].push_back(e);
            node_edges_[static_cast<std::size_t>(j - 1)].push_back(e);
        }
    }
}

int RbtMbrCode::edge_index(int a, int b) const {
    if (a == b || a < 1 || b < 1 || a > params_.n || b > params_.n)
        throw std::domain_error("RbtMbrCode: bad edge");
    if (a > b) std::swap(a, b);
    // Lexicographic rank of (a,b) among pairs of {1..n}.
    int n = params_.n;
    int before = (a - 1) * n - (a - 1) * a / 2;
    return before + (b - a);
}

std::string RbtMbrCode::id() const {
    return "mbr:" + std::to_string(params_.n) + "," + std::to_string(params_.k);
}

json RbtMbrCode::describe() const {
    return json{{"type", "mbr"}, {"n", params_.n}, {"k", params_.k}};
}

StorageInstance RbtMbrCode::store(std::span<const std::uint8_t> file) const {
    if (file.size() != params_.file_size)
        throw std::domain_error("RbtMbrCode: file size must be k*d - k*(k-1)/2");
    std::vector<std::uint8_t> coded = codec_.encode(file);
    StorageInstance inst;
    inst.params = params_;
    inst.code_id = id();
    inst.file.assign(file.begin(), file.end());
    inst.nodes_.resize(static_cast<std::size_t>(params_.n));
    for (int v = 1; v <= params_.n; ++v) {
        auto& content = inst.nodes_[static_cast<std::size_t>(v - 1)];
        for (int e : node_edges(v)) content.push_back(coded[static_cast<std::size_t>(e - 1)]);
    }
    return inst;
}

std::vector<std::uint8_t> RbtMbrCode::reconstruct(const StorageInstance& instance,
                                                  std::span<const int> subset) const {
    check_node_subset(subset, params_.n, static_cast<std::size_t>(params_.k), "RbtMbrCode reconstruct");
    std::vector<int> ordered(subset.begin(), subset.end());
    std::sort(ordered.begin(), ordered.end());
    // k nodes cover C(n,2) - C(n-k,2) = B distinct edges; take the first
    // copy of each.
    std::vector<bool> seen(edges_.size() + 1, false);
    std::vector<std::pair<int, std::uint8_t>> pairs;
    for (int v : ordered) {
        const auto& content =
            node_content(instance, v, params_.alpha_per_node[static_cast<std::size_t>(v - 1)],
                         "RbtMbrCode reconstruct");
        const auto& es = node_edges(v);
        for (std::size_t idx = 0; idx < es.size(); ++idx) {
            int e = es[idx];
            if (seen[static_cast<std::size_t>(e)]) continue;
            seen[static_cast<std::size_t>(e)] = true;
            pairs.emplace_back(e, content[idx]);
        }
    }
    if (pairs.size() != static_cast<std::size_t>(codec_.k()))
        throw std::logic_error("RbtMbrCode: unexpected covered-edge count");
    return codec_.decode(pairs);
}

RepairTrace RbtMbrCode::repair(const StorageInstance& instance, int failed,
                               std::span<const int> helpers) const {
    if (failed < 1 || failed > params_.n)
        throw std::domain_error("RbtMbrCode repair: failed index out of range");
    check_node_subset(helpers, params_.n, static_cast<std::size_t>(params_.d), "RbtMbrCode repair");
    std::vector<int> ordered(helpers.begin(), helpers.end());
    std::sort(ordered.begin(), ordered.end());
    // Repair-by-transfer needs every survivor.
    int want = 1;
    for (int h : ordered) {
        if (want == failed) ++want;
        if (h != want)
            throw std::domain_error("RbtMbrCode repair: helpers must be all surviving nodes");
        ++want;
    }

    RepairTrace tr;
    tr.failed = failed;
    tr.helpers = ordered;
    tr.rebuilt.assign(params_.alpha_per_node[static_cast<std::size_t>(failed - 1)], 0);
    for (int h : ordered) {
        int e = edge_index(failed, h);
        const auto& content =
            node_content(instance, h, params_.alpha_per_node[static_cast<std::size_t>(h - 1)],
                         "RbtMbrCode repair");
        const auto& hes = node_edges(h);
        auto it = std::lower_bound(hes.begin(), hes.end(), e);
        std::uint8_t sym = content[static_cast<std::size_t>(it - hes.begin())];
        tr.sent[h] = 1;
        const auto& fes = node_edges(failed);
        auto fit = std::lower_bound(fes.begin(), fes.end(), e);
        tr.rebuilt[static_cast<std::size_t>(fit - fes.begin())] = sym;
    }
    return tr;
}

std::shared_ptr<const Code> make_toy_code() {
    return std::make_shared<MdsMsrCode>(3, 2, 1);
}

} // namespace regen
