#include "regen/mds.hpp"

#include "regen/gf256.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace regen {

MdsCodec::MdsCodec(int n, int k) : n_(n), k_(k) {
    if (k < 1 || k > n) throw std::domain_error("MdsCodec: need 1 <= k <= n");
    if (n > 255) throw std::domain_error("MdsCodec: n exceeds the GF(256) limit of 255");
    gen_.assign(static_cast<std::size_t>(n_) * k_, 0);
    for (int i = 0; i < k_; ++i) gen_[static_cast<std::size_t>(i) * k_ + i] = 1;
    const int m = n_ - k_;
    if (m == 0) return;
    // Cauchy block on points x_r = r, y_j = m + j (all distinct), each
    // column scaled by the inverse of its first entry. Column scaling keeps
    // every square submatrix nonsingular, so [I; C] stays MDS, and it forces
    // the first parity row to all-ones.
    for (int r = 0; r < m; ++r) {
        for (int j = 0; j < k_; ++j) {
            std::uint8_t x = static_cast<std::uint8_t>(r);
            std::uint8_t y = static_cast<std::uint8_t>(m + j);
            gen_[static_cast<std::size_t>(k_ + r) * k_ + j] =
                gf256::inv(static_cast<std::uint8_t>(x ^ y));
        }
    }
    for (int j = 0; j < k_; ++j) {
        std::uint8_t scale = gf256::inv(gen_[static_cast<std::size_t>(k_) * k_ + j]);
        for (int r = 0; r < m; ++r) {
            auto& cell = gen_[static_cast<std::size_t>(k_ + r) * k_ + j];
            cell = gf256::mul(cell, scale);
        }
    }
}

std::uint8_t MdsCodec::gen_at(int row, int col) const {
    if (row < 1 || row > n_ || col < 1 || col > k_)
        throw std::domain_error("MdsCodec: generator index out of range");
    return gen_[static_cast<std::size_t>(row - 1) * k_ + (col - 1)];
}

std::vector<std::uint8_t> MdsCodec::encode(std::span<const std::uint8_t> message) const {
    std::vector<std::uint8_t> out(static_cast<std::size_t>(n_));
    encode_blocks(message, 1, out);
    return out;
}

void MdsCodec::encode_blocks(std::span<const std::uint8_t> message, std::size_t block_len,
                             std::span<std::uint8_t> out) const {
    if (message.size() != static_cast<std::size_t>(k_) * block_len)
        throw std::domain_error("MdsCodec: message length must be k*block_len");
    if (out.size() != static_cast<std::size_t>(n_) * block_len)
        throw std::domain_error("MdsCodec: output length must be n*block_len");
    if (block_len == 0) return;
    // Systematic prefix is a plain copy.
    std::memcpy(out.data(), message.data(), static_cast<std::size_t>(k_) * block_len);
    for (int r = k_; r < n_; ++r) {
        std::uint8_t* dst = out.data() + static_cast<std::size_t>(r) * block_len;
        std::memset(dst, 0, block_len);
        for (int j = 0; j < k_; ++j) {
            std::uint8_t c = gen_[static_cast<std::size_t>(r) * k_ + j];
            if (c == 0) continue;
            gf256::mul_xor_into(dst, message.data() + static_cast<std::size_t>(j) * block_len,
                                block_len, c);
        }
    }
}

void MdsCodec::check_positions(std::span<const int> positions) const {
    if (positions.size() != static_cast<std::size_t>(k_))
        throw std::domain_error("MdsCodec: decode needs exactly k positions");
    std::vector<bool> seen(static_cast<std::size_t>(n_) + 1, false);
    for (int p : positions) {
        if (p < 1 || p > n_) throw std::domain_error("MdsCodec: position out of range");
        if (seen[static_cast<std::size_t>(p)])
            throw std::domain_error("MdsCodec: repeated position");
        seen[static_cast<std::size_t>(p)] = true;
    }
}

std::vector<std::uint8_t> MdsCodec::invert_rows(std::span<const int> positions) const {
    const int k = k_;
    // Gauss-Jordan on [A | I].
    std::vector<std::uint8_t> a(static_cast<std::size_t>(k) * k);
    std::vector<std::uint8_t> inv(static_cast<std::size_t>(k) * k, 0);
    for (int i = 0; i < k; ++i) {
        const std::uint8_t* row = gen_.data() + static_cast<std::size_t>(positions[i] - 1) * k;
        std::memcpy(a.data() + static_cast<std::size_t>(i) * k, row, static_cast<std::size_t>(k));
        inv[static_cast<std::size_t>(i) * k + i] = 1;
    }
    for (int col = 0; col < k; ++col) {
        int pivot = -1;
        for (int r = col; r < k; ++r) {
            if (a[static_cast<std::size_t>(r) * k + col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0)
            throw std::logic_error("MdsCodec: singular submatrix (MDS property violated)");
        if (pivot != col) {
            for (int j = 0; j < k; ++j) {
                std::swap(a[static_cast<std::size_t>(pivot) * k + j],
                          a[static_cast<std::size_t>(col) * k + j]);
                std::swap(inv[static_cast<std::size_t>(pivot) * k + j],
                          inv[static_cast<std::size_t>(col) * k + j]);
            }
        }
        std::uint8_t piv_inv = gf256::inv(a[static_cast<std::size_t>(col) * k + col]);
        gf256::mul_into(a.data() + static_cast<std::size_t>(col) * k,
                        a.data() + static_cast<std::size_t>(col) * k,
                        static_cast<std::size_t>(k), piv_inv);
        gf256::mul_into(inv.data() + static_cast<std::size_t>(col) * k,
                        inv.data() + static_cast<std::size_t>(col) * k,
                        static_cast<std::size_t>(k), piv_inv);
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            std::uint8_t f = a[static_cast<std::size_t>(r) * k + col];
            if (f == 0) continue;
            gf256::mul_xor_into(a.data() + static_cast<std::size_t>(r) * k,
                                a.data() + static_cast<std::size_t>(col) * k,
                                static_cast<std::size_t>(k), f);
            gf256::mul_xor_into(inv.data() + static_cast<std::size_t>(r) * k,
                                inv.data() + static_cast<std::size_t>(col) * k,
                                static_cast<std::size_t>(k), f);
        }
    }
    return inv;
}

std::vector<std::uint8_t>
MdsCodec::decode(std::span<const std::pair<int, std::uint8_t>> symbols) const {
    std::vector<int> positions;
    std::vector<std::uint8_t> blocks;
    positions.reserve(symbols.size());
    blocks.reserve(symbols.size());
    for (const auto& [pos, sym] : symbols) {
        positions.push_back(pos);
        blocks.push_back(sym);
    }
    return decode_blocks(positions, blocks, 1);
}

std::vector<std::uint8_t> MdsCodec::decode_blocks(std::span<const int> positions,
                                                  std::span<const std::uint8_t> blocks,
                                                  std::size_t block_len) const {
    check_positions(positions);
    if (blocks.size() != static_cast<std::size_t>(k_) * block_len)
        throw std::domain_error("MdsCodec: coded data length must be k*block_len");
    std::vector<std::uint8_t> inv = invert_rows(positions);
    std::vector<std::uint8_t> out(static_cast<std::size_t>(k_) * block_len, 0);
    for (int i = 0; i < k_; ++i) {
        std::uint8_t* dst = out.data() + static_cast<std::size_t>(i) * block_len;
        for (int j = 0; j < k_; ++j) {
            std::uint8_t c = inv[static_cast<std::size_t>(i) * k_ + j];
            if (c == 0) continue;
            gf256::mul_xor_into(dst, blocks.data() + static_cast<std::size_t>(j) * block_len,
                                block_len, c);
        }
    }
    return out;
}

} // namespace regen
