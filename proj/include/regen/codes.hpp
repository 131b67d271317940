#pragma once

#include "regen/mds.hpp"
#include "regen/model.hpp"

#include <memory>

namespace regen {

// MDS code with naive repair at d = k: each stripe of k symbols is encoded
// across the n nodes, so alpha = B/k. A repair decodes the whole file from
// the k helpers and re-encodes the lost node, hence beta = alpha and
// gamma = k*alpha = B — the MSR point for d = k.
class MdsMsrCode : public Code {
public:
    MdsMsrCode(int n, int k, std::uint64_t alpha_units = 1);

    const CodeParams& params() const override { return params_; }
    std::string id() const override;
    nlohmann::json describe() const override;

    StorageInstance store(std::span<const std::uint8_t> file) const override;
    std::vector<std::uint8_t> reconstruct(const StorageInstance& instance,
                                          std::span<const int> subset) const override;
    RepairTrace repair(const StorageInstance& instance, int failed,
                       std::span<const int> helpers) const override;

    const MdsCodec& codec() const { return codec_; }

private:
    CodeParams params_;
    MdsCodec codec_;
    std::uint64_t alpha_;
};

// Repair-by-transfer MBR code at d = n-1: the file is MDS-encoded into
// C(n,2) symbols, one per node pair, and each symbol is stored on both
// endpoints of its pair. A helper forwards exactly the one symbol it shares
// with the failed node, so beta = 1 and alpha = gamma = n-1 — the MBR point.
class RbtMbrCode : public Code {
public:
    RbtMbrCode(int n, int k);

    const CodeParams& params() const override { return params_; }
    std::string id() const override;
    nlohmann::json describe() const override;

    StorageInstance store(std::span<const std::uint8_t> file) const override;
    std::vector<std::uint8_t> reconstruct(const StorageInstance& instance,
                                          std::span<const int> subset) const override;
    RepairTrace repair(const StorageInstance& instance, int failed,
                       std::span<const int> helpers) const override;

    // Coded-symbol index (1-based, lexicographic over pairs i<j) for an edge.
    int edge_index(int a, int b) const;
    const std::vector<int>& node_edges(int v) const { return node_edges_.at(v - 1); }

private:
    CodeParams params_;
    MdsCodec codec_;
    std::vector<std::pair<int, int>> edges_;     // 0-based list of (i<j) pairs
    std::vector<std::vector<int>> node_edges_;   // per node, ascending edge indices (1-based)
};

// The classic (3,2,2) toy code: v1 stores x, v2 stores y, v3 stores x+y.
std::shared_ptr<const Code> make_toy_code();

} // namespace regen
