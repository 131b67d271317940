#include "regen/lift.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace regen {

using nlohmann::json;

const char* lift_variant_name(LiftVariant v) {
    return v == LiftVariant::cyclic ? "cyclic" : "permutation";
}

SubsystemLayout::SubsystemLayout(LiftVariant variant, int base_n)
    : variant_(variant), positions_(base_n + 1) {
    if (base_n < 1) throw std::domain_error("SubsystemLayout: base must have nodes");
    if (variant == LiftVariant::cyclic) {
        subsystems_ = positions_;
        table_.assign(static_cast<std::size_t>(subsystems_) * positions_, 0);
        for (int j = 1; j <= subsystems_; ++j) {
            for (int p = 1; p <= positions_; ++p) {
                int b = p == j ? 0 : (p < j ? p : p - 1);
                table_[(static_cast<std::size_t>(j) - 1) * positions_ + (p - 1)] =
                    static_cast<std::uint16_t>(b);
            }
        }
        return;
    }
    if (base_n > 5)
        throw std::length_error("SubsystemLayout: permutation lift limited to base n <= 5 "
                                "((n+1)! subsystems)");
    std::uint64_t fact = 1;
    for (int i = 2; i <= positions_; ++i) fact *= static_cast<std::uint64_t>(i);
    subsystems_ = static_cast<int>(fact);
    table_.assign(static_cast<std::size_t>(subsystems_) * positions_, 0);
    // sigma in lexicographic order; sigma[i-1] is where augmented node i lands,
    // so position p holds node sigma^{-1}(p), empty when that node is n+1.
    std::vector<int> sigma(static_cast<std::size_t>(positions_));
    std::iota(sigma.begin(), sigma.end(), 1);
    int j = 1;
    do {
        for (int i = 1; i <= positions_; ++i) {
            int p = sigma[static_cast<std::size_t>(i - 1)];
            table_[(static_cast<std::size_t>(j) - 1) * positions_ + (p - 1)] =
                static_cast<std::uint16_t>(i == positions_ ? 0 : i);
        }
        ++j;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
}

int SubsystemLayout::occupancy(int p) const {
    int c = 0;
    for (int i = 1; i <= subsystems_; ++i) c += at(i, p) != 0;
    return c;
}

std::uint64_t SubsystemLayout::digest(std::uint64_t h) const {
    // FNV-1a over the dimensions and the placement table.
    auto mix = [&h](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xFF;
            h *= 1099511628211ull;
        }
    };
    mix(static_cast<std::uint64_t>(subsystems_));
    mix(static_cast<std::uint64_t>(positions_));
    for (auto e : table_) mix(e);
    return h;
}

LiftedCode::LiftedCode(std::shared_ptr<const Code> base, LiftVariant variant)
    : base_(std::move(base)), layout_(variant, base_->params().n) {
    const CodeParams& bp = base_->params();
    const int S = layout_.subsystems();
    const int np = layout_.positions();

    params_.n = bp.n + 1;
    params_.k = bp.k + 1;
    params_.d = bp.d + 1;
    params_.file_size = static_cast<std::uint64_t>(S) * bp.file_size;
    params_.field = bp.field;
    params_.alpha_per_node.assign(static_cast<std::size_t>(np), 0);
    slice_offset_.assign(static_cast<std::size_t>(S) * np, 0);
    for (int p = 1; p <= np; ++p) {
        std::uint64_t off = 0;
        for (int i = 1; i <= S; ++i) {
            int b = layout_.at(i, p);
            if (b == 0) continue;
            slice_offset_[(static_cast<std::size_t>(i) - 1) * np + (p - 1)] = off;
            off += bp.alpha_per_node[static_cast<std::size_t>(b - 1)];
        }
        params_.alpha_per_node[static_cast<std::size_t>(p - 1)] = off;
    }
    // Every position participates in the same number of subsystems
    // (n*n! for the permutation variant, n for the cyclic one), so the
    // repair bandwidth scales by that count.
    const int participation = layout_.occupancy(1);
    params_.gamma = static_cast<std::uint64_t>(participation) * bp.gamma;
    if (variant == LiftVariant::permutation) {
        if (params_.gamma % static_cast<std::uint64_t>(params_.d) != 0)
            throw std::logic_error("LiftedCode: aggregate bandwidth not divisible by d+1");
        params_.beta = BetaProfile::homogeneous(params_.gamma / params_.d);
    } else {
        params_.beta = BetaProfile::bounded();
    }
    params_.validate();
}

std::string LiftedCode::id() const {
    return std::string(lift_variant_name(variant())) + "(" + base_->id() + ")";
}

json LiftedCode::describe() const {
    return json{{"type", lift_variant_name(variant())},
                {"subsystems", layout_.subsystems()},
                {"base", base_->describe()}};
}

StorageInstance LiftedCode::store(std::span<const std::uint8_t> file) const {
    if (file.size() != params_.file_size)
        throw std::domain_error("LiftedCode: file size must be subsystems * base B");
    const CodeParams& bp = base_->params();
    const int S = layout_.subsystems();
    const int np = layout_.positions();

    StorageInstance inst;
    inst.params = params_;
    inst.code_id = id();
    inst.file.assign(file.begin(), file.end());
    inst.nodes_.resize(static_cast<std::size_t>(np));
    for (int p = 1; p <= np; ++p) {
        inst.node(p).resize(params_.alpha_per_node[static_cast<std::size_t>(p - 1)]);
    }

    // Segment t of base file i sits at file[t*S + (i-1)]: symbol-position
    // major, subsystem minor, so for S = 4 and B = 2 the lifted file reads
    // (x1,x2,x3,x4,y1,y2,y3,y4).
    std::vector<std::uint8_t> base_file(bp.file_size);
    for (int i = 1; i <= S; ++i) {
        for (std::uint64_t t = 0; t < bp.file_size; ++t) {
            base_file[t] = file[t * static_cast<std::uint64_t>(S) +
                                static_cast<std::uint64_t>(i - 1)];
        }
        StorageInstance sub = base_->store(base_file);
        for (int p = 1; p <= np; ++p) {
            int b = layout_.at(i, p);
            if (b == 0) continue;
            const auto& slice = sub.node(b);
            std::copy(slice.begin(), slice.end(),
                      inst.node(p).begin() + static_cast<std::ptrdiff_t>(offset(i, p)));
        }
    }
    return inst;
}

StorageInstance LiftedCode::base_view(const StorageInstance& instance, int subsystem,
                                      std::span<const std::pair<int, int>> provide) const {
    const CodeParams& bp = base_->params();
    StorageInstance view;
    view.params = bp;
    view.code_id = base_->id();
    view.nodes_.resize(static_cast<std::size_t>(bp.n));
    for (auto [p, b] : provide) {
        const auto& content = instance.node(p);
        std::uint64_t off = offset(subsystem, p);
        std::uint64_t len = bp.alpha_per_node[static_cast<std::size_t>(b - 1)];
        if (content.size() < off + len)
            throw std::domain_error("LiftedCode: node content missing for requested slice");
        view.node(b).assign(content.begin() + static_cast<std::ptrdiff_t>(off),
                            content.begin() + static_cast<std::ptrdiff_t>(off + len));
    }
    return view;
}

std::vector<std::uint8_t> LiftedCode::reconstruct(const StorageInstance& instance,
                                                  std::span<const int> subset) const {
    check_node_subset(subset, params_.n, static_cast<std::size_t>(params_.k),
                      "LiftedCode reconstruct");
    std::vector<int> ordered(subset.begin(), subset.end());
    std::sort(ordered.begin(), ordered.end());
    const CodeParams& bp = base_->params();
    const int S = layout_.subsystems();

    std::vector<std::uint8_t> file(params_.file_size);
    std::vector<std::pair<int, int>> provide; // (position, base node)
    for (int i = 1; i <= S; ++i) {
        provide.clear();
        // At most one chosen position is idle here; the first k live ones
        // suffice for the base code.
        for (int p : ordered) {
            int b = layout_.at(i, p);
            if (b == 0) continue;
            provide.emplace_back(p, b);
            if (provide.size() == static_cast<std::size_t>(bp.k)) break;
        }
        if (provide.size() != static_cast<std::size_t>(bp.k))
            throw std::logic_error("LiftedCode: subsystem short of live positions");
        StorageInstance view = base_view(instance, i, provide);
        std::vector<int> base_subset;
        base_subset.reserve(provide.size());
        for (auto [p, b] : provide) base_subset.push_back(b);
        std::sort(base_subset.begin(), base_subset.end());
        std::vector<std::uint8_t> base_file = base_->reconstruct(view, base_subset);
        for (std::uint64_t t = 0; t < bp.file_size; ++t) {
            file[t * static_cast<std::uint64_t>(S) + static_cast<std::uint64_t>(i - 1)] =
                base_file[t];
        }
    }
    return file;
}

RepairTrace LiftedCode::repair(const StorageInstance& instance, int failed,
                               std::span<const int> helpers) const {
    if (failed < 1 || failed > params_.n)
        throw std::domain_error("LiftedCode repair: failed index out of range");
    check_node_subset(helpers, params_.n, static_cast<std::size_t>(params_.d),
                      "LiftedCode repair");
    if (std::find(helpers.begin(), helpers.end(), failed) != helpers.end())
        throw std::domain_error("LiftedCode repair: helper set contains the failed node");

    RepairTrace tr;
    tr.failed = failed;
    tr.helpers.assign(helpers.begin(), helpers.end());
    std::sort(tr.helpers.begin(), tr.helpers.end());
    for (int h : tr.helpers) tr.sent[h] = 0;
    tr.rebuilt.assign(params_.alpha_per_node[static_cast<std::size_t>(failed - 1)], 0);

    const CodeParams& bp = base_->params();
    const int S = layout_.subsystems();
    // Rotating drop pointer: when a subsystem sees every helper live, the
    // surplus helper is idled round-robin over the sorted helper list, which
    // keeps aggregate per-helper totals equal.
    std::size_t drop_cursor = 0;

    std::vector<std::pair<int, int>> live; // (position, base node)
    for (int i = 1; i <= S; ++i) {
        int base_failed = layout_.at(i, failed);
        if (base_failed == 0) continue;
        live.clear();
        for (int p : tr.helpers) {
            int b = layout_.at(i, p);
            if (b != 0) live.emplace_back(p, b);
        }
        if (live.size() == static_cast<std::size_t>(params_.d)) {
            live.erase(live.begin() + static_cast<std::ptrdiff_t>(drop_cursor % live.size()));
            ++drop_cursor;
        }
        if (live.size() != static_cast<std::size_t>(bp.d))
            throw std::logic_error("LiftedCode: subsystem helper count mismatch");

        StorageInstance view = base_view(instance, i, live);
        std::vector<int> base_helpers;
        std::vector<std::pair<int, int>> by_base; // (base node, position)
        for (auto [p, b] : live) {
            base_helpers.push_back(b);
            by_base.emplace_back(b, p);
        }
        std::sort(base_helpers.begin(), base_helpers.end());
        RepairTrace sub = base_->repair(view, base_failed, base_helpers);
        for (auto [b, p] : by_base) tr.sent[p] += sub.sent.at(b);
        std::copy(sub.rebuilt.begin(), sub.rebuilt.end(),
                  tr.rebuilt.begin() + static_cast<std::ptrdiff_t>(offset(i, failed)));
    }
    return tr;
}

std::uint64_t LiftedCode::layout_digest() const {
    // Fold the base identity in so chained lifts pin the whole structure.
    std::uint64_t h = 14695981039346656037ull;
    for (char c : base_->id()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return layout_.digest(h);
}

std::shared_ptr<const Code> cyclic_lift(std::shared_ptr<const Code> base) {
    return std::make_shared<LiftedCode>(std::move(base), LiftVariant::cyclic);
}

std::shared_ptr<const Code> permutation_lift(std::shared_ptr<const Code> base) {
    return std::make_shared<LiftedCode>(std::move(base), LiftVariant::permutation);
}

std::shared_ptr<const Code> iterated_lift(std::shared_ptr<const Code> base, int times,
                                          LiftVariant variant) {
    if (times < 0) throw std::domain_error("iterated_lift: negative count");
    std::shared_ptr<const Code> cur = std::move(base);
    for (int i = 0; i < times; ++i) cur = std::make_shared<LiftedCode>(cur, variant);
    return cur;
}

namespace {

// The base system plus one node that stores nothing.
class AugmentedCode : public Code {
public:
    explicit AugmentedCode(std::shared_ptr<const Code> base) : base_(std::move(base)) {
        const CodeParams& bp = base_->params();
        params_ = bp;
        params_.n = bp.n + 1;
        params_.k = bp.k + 1;
        params_.d = bp.d + 1;
        params_.alpha_per_node.push_back(0);
        params_.beta = BetaProfile::bounded();
        params_.validate();
    }

    const CodeParams& params() const override { return params_; }
    std::string id() const override { return "augment(" + base_->id() + ")"; }
    json describe() const override {
        return json{{"type", "augment"}, {"base", base_->describe()}};
    }

    StorageInstance store(std::span<const std::uint8_t> file) const override {
        StorageInstance inst = base_->store(file);
        inst.params = params_;
        inst.code_id = id();
        inst.nodes_.emplace_back();
        return inst;
    }

    std::vector<std::uint8_t> reconstruct(const StorageInstance& instance,
                                          std::span<const int> subset) const override {
        check_node_subset(subset, params_.n, static_cast<std::size_t>(params_.k),
                          "AugmentedCode reconstruct");
        std::vector<int> live;
        for (int p : subset) {
            if (p != params_.n) live.push_back(p);
        }
        std::sort(live.begin(), live.end());
        live.resize(static_cast<std::size_t>(params_.k - 1));
        StorageInstance view = strip(instance);
        return base_->reconstruct(view, live);
    }

    RepairTrace repair(const StorageInstance& instance, int failed,
                       std::span<const int> helpers) const override {
        check_node_subset(helpers, params_.n, static_cast<std::size_t>(params_.d),
                          "AugmentedCode repair");
        if (std::find(helpers.begin(), helpers.end(), failed) != helpers.end())
            throw std::domain_error("AugmentedCode repair: helper set contains the failed node");
        RepairTrace tr;
        tr.failed = failed;
        tr.helpers.assign(helpers.begin(), helpers.end());
        std::sort(tr.helpers.begin(), tr.helpers.end());
        for (int h : tr.helpers) tr.sent[h] = 0;
        if (failed == params_.n) {
            // The idle node rebuilds to nothing for free.
            return tr;
        }
        std::vector<int> live;
        for (int h : tr.helpers) {
            if (h != params_.n) live.push_back(h);
        }
        live.resize(static_cast<std::size_t>(params_.d - 1));
        StorageInstance view = strip(instance);
        // tr.helpers is sorted, so the drop above removes the largest
        // surplus original helper deterministically.
        RepairTrace sub = base_->repair(view, failed, live);
        for (const auto& [h, s] : sub.sent) tr.sent[h] = s;
        tr.rebuilt = std::move(sub.rebuilt);
        return tr;
    }

private:
    std::shared_ptr<const Code> base_;
    CodeParams params_;

    StorageInstance strip(const StorageInstance& instance) const {
        StorageInstance view;
        view.params = base_->params();
        view.code_id = base_->id();
        view.nodes_.assign(instance.nodes_.begin(), instance.nodes_.end() - 1);
        return view;
    }
};

} // namespace

std::shared_ptr<const Code> augment(std::shared_ptr<const Code> base) {
    return std::make_shared<AugmentedCode>(std::move(base));
}

json instance_json(const Code& code, const StorageInstance& instance) {
    json j;
    j["params"] = instance.params.to_json();
    j["chain"] = code.describe();
    std::vector<std::uint64_t> counts;
    for (const auto& nd : instance.nodes_) counts.push_back(nd.size());
    j["node_symbols"] = counts;
    if (const auto* lifted = dynamic_cast<const LiftedCode*>(&code)) {
        char buf[19];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(lifted->layout_digest()));
        j["layout_digest"] = buf;
    }
    return j;
}

} // namespace regen
