#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tcb::gf2 {

/// Dense bit vector over F2, packed into 64-bit words.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    [[nodiscard]] std::size_t size() const { return n_; }

    [[nodiscard]] bool get(std::size_t i) const {
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool v = true) {
        if (v)
            w_[i >> 6] |= (std::uint64_t{1} << (i & 63));
        else
            w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void flip(std::size_t i) { w_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }

    void xor_with(const BitVec& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    }

    [[nodiscard]] bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }

    /// Index of the lowest set bit; size() when empty.
    [[nodiscard]] std::size_t lowest() const;

    [[nodiscard]] std::size_t popcount() const;

    [[nodiscard]] std::vector<std::size_t> ones() const;

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Incremental row echelon with optional companion rows (used to carry
/// provenance through elimination, e.g. kernel combinations).
class Echelon {
public:
    /// Reduce v against the stored pivot rows in place.
    void reduce(BitVec& v) const;

    /// Reduce v (and its companion in lockstep) and keep it as a new pivot
    /// row if nonzero. Returns true when v was independent.
    bool add(BitVec v);
    bool add(BitVec v, BitVec companion);

    [[nodiscard]] std::size_t rank() const { return rows_.size(); }
    [[nodiscard]] const std::vector<BitVec>& companions() const { return comp_; }

private:
    std::vector<BitVec> rows_;
    std::vector<BitVec> comp_;
    std::vector<std::size_t> pivots_;
    bool tracking_ = false;
};

/// Kernel basis of the linear map sending unit vector j to images[j].
/// Deterministic: standard elimination in index order.
std::vector<BitVec> nullspace(const std::vector<BitVec>& images, std::size_t domain_dim);

} // namespace tcb::gf2
