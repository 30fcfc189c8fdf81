#include "tcb/gf2.hpp"

#include <bit>
#include <cassert>

namespace tcb::gf2 {

std::size_t BitVec::lowest() const {
    for (std::size_t k = 0; k * 64 < n_; ++k) {
        std::uint64_t w = w_[k];
        if (w) return k * 64 + static_cast<std::size_t>(std::countr_zero(w));
    }
    return n_;
}

std::size_t BitVec::popcount() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::vector<std::size_t> BitVec::ones() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) out.push_back(i);
    return out;
}

void Echelon::reduce(BitVec& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r)
        if (v.get(pivots_[r])) v.xor_with(rows_[r]);
}

bool Echelon::add(BitVec v) {
    assert(!tracking_);
    for (std::size_t r = 0; r < rows_.size(); ++r)
        if (v.get(pivots_[r])) v.xor_with(rows_[r]);
    if (!v.any()) return false;
    pivots_.push_back(v.lowest());
    rows_.push_back(std::move(v));
    return true;
}

bool Echelon::add(BitVec v, BitVec companion) {
    tracking_ = true;
    for (std::size_t r = 0; r < rows_.size(); ++r)
        if (v.get(pivots_[r])) {
            v.xor_with(rows_[r]);
            companion.xor_with(comp_[r]);
        }
    if (!v.any()) return false;
    pivots_.push_back(v.lowest());
    rows_.push_back(std::move(v));
    comp_.push_back(std::move(companion));
    return true;
}

std::vector<BitVec> nullspace(const std::vector<BitVec>& images, std::size_t domain_dim) {
    assert(images.size() == domain_dim);
    std::vector<BitVec> rows, comps;
    std::vector<std::size_t> pivots;
    std::vector<BitVec> kernel;
    for (std::size_t j = 0; j < domain_dim; ++j) {
        BitVec v = images[j];
        BitVec c(domain_dim);
        c.set(j);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (v.get(pivots[r])) {
                v.xor_with(rows[r]);
                c.xor_with(comps[r]);
            }
        if (v.any()) {
            pivots.push_back(v.lowest());
            rows.push_back(std::move(v));
            comps.push_back(std::move(c));
        } else {
            kernel.push_back(std::move(c));
        }
    }
    return kernel;
}

} // namespace tcb::gf2
