#pragma once

#include "regen/model.hpp"

#include <memory>
#include <optional>

namespace regen {

enum class LiftVariant { cyclic, permutation };

const char* lift_variant_name(LiftVariant v);

// Placement of base nodes inside each subsystem of a lifted code: entry
// (subsystem i, position p) is 0 when position p stores nothing in
// subsystem i, otherwise the 1-based base-node index placed there. Exactly
// one position per subsystem is empty.
class SubsystemLayout {
public:
    SubsystemLayout(LiftVariant variant, int base_n);

    int subsystems() const { return subsystems_; }
    int positions() const { return positions_; } // base_n + 1
    LiftVariant variant() const { return variant_; }

    // i in [1, subsystems()], p in [1, positions()]; 0 means empty.
    int at(int i, int p) const {
        return table_[(static_cast<std::size_t>(i) - 1) * positions_ + (p - 1)];
    }

    // How many subsystems place some base node at position p.
    int occupancy(int p) const;

    std::uint64_t digest(std::uint64_t seed_hash) const;

private:
    LiftVariant variant_;
    int positions_;
    int subsystems_;
    std::vector<std::uint16_t> table_;
};

// The (n+1, k+1, d+1) code obtained from a base (n, k, d) exact-repair code
// by stacking permuted copies, each with one idle position:
//   - permutation: all (n+1)! orderings, node size n*n!*alpha, homogeneous
//     repair profile in aggregate;
//   - cyclic: the n+1 rotations only, node size n*alpha, total bandwidth
//     constant but per-helper shares may vary.
class LiftedCode : public Code {
public:
    LiftedCode(std::shared_ptr<const Code> base, LiftVariant variant);

    const CodeParams& params() const override { return params_; }
    std::string id() const override;
    nlohmann::json describe() const override;

    StorageInstance store(std::span<const std::uint8_t> file) const override;
    std::vector<std::uint8_t> reconstruct(const StorageInstance& instance,
                                          std::span<const int> subset) const override;
    RepairTrace repair(const StorageInstance& instance, int failed,
                       std::span<const int> helpers) const override;

    const SubsystemLayout& layout() const { return layout_; }
    const Code& base() const { return *base_; }
    LiftVariant variant() const { return layout_.variant(); }
    std::uint64_t layout_digest() const;

private:
    std::shared_ptr<const Code> base_;
    SubsystemLayout layout_;
    CodeParams params_;
    // Byte offset of subsystem i's slice within position p's content;
    // meaningful only where layout().at(i,p) != 0.
    std::vector<std::uint64_t> slice_offset_;

    std::uint64_t offset(int i, int p) const {
        return slice_offset_[(static_cast<std::size_t>(i) - 1) * layout_.positions() + (p - 1)];
    }
    StorageInstance base_view(const StorageInstance& instance, int subsystem,
                              std::span<const std::pair<int, int>> provide) const;
};

std::shared_ptr<const Code> cyclic_lift(std::shared_ptr<const Code> base);
std::shared_ptr<const Code> permutation_lift(std::shared_ptr<const Code> base);

// Applies the chosen lift `times` times; times == 0 returns the base itself.
std::shared_ptr<const Code> iterated_lift(std::shared_ptr<const Code> base, int times,
                                          LiftVariant variant);

// The base system plus one extra node storing nothing: a valid
// (n+1, k+1, d+1) system holding the same file.
std::shared_ptr<const Code> augment(std::shared_ptr<const Code> base);

// Instance summary for golden comparisons: params, variant chain, per-node
// symbol counts and the layout digest.
nlohmann::json instance_json(const Code& code, const StorageInstance& instance);

} // namespace regen
