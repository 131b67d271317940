#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace regen {

// Systematic MDS erasure codec over GF(2^8): n coded symbols, k message
// symbols, any k coded symbols recover the message. Rows 1..k of the
// generator are the identity; parity rows come from a column-normalized
// Cauchy matrix, so the first parity row is all-ones (for n=3, k=2 the
// single parity symbol is the XOR of the message).
//
// Positions are 1-based throughout, matching node numbering.
class MdsCodec {
public:
    MdsCodec(int n, int k);

    int n() const { return n_; }
    int k() const { return k_; }

    // Generator entry, row 1..n, col 1..k.
    std::uint8_t gen_at(int row, int col) const;

    // message.size() == k; returns n symbols, the first k echoing the message.
    std::vector<std::uint8_t> encode(std::span<const std::uint8_t> message) const;

    // Exactly k distinct (position, symbol) pairs; returns the unique
    // consistent message. Throws std::domain_error on bad positions.
    std::vector<std::uint8_t>
    decode(std::span<const std::pair<int, std::uint8_t>> symbols) const;

    // Block forms: the message is k contiguous blocks of block_len bytes and
    // each coded unit is a block. out.size() == n*block_len.
    void encode_blocks(std::span<const std::uint8_t> message, std::size_t block_len,
                       std::span<std::uint8_t> out) const;

    // positions.size() == k; blocks holds the corresponding coded blocks
    // back to back. Returns the k message blocks concatenated.
    std::vector<std::uint8_t> decode_blocks(std::span<const int> positions,
                                            std::span<const std::uint8_t> blocks,
                                            std::size_t block_len) const;

private:
    int n_;
    int k_;
    std::vector<std::uint8_t> gen_; // n_*k_ row-major

    void check_positions(std::span<const int> positions) const;
    // Inverse of the k x k generator submatrix picked by `positions`.
    std::vector<std::uint8_t> invert_rows(std::span<const int> positions) const;
};

} // namespace regen
