#include <doctest.h>

#include <vector>

#include "tcb/gf2.hpp"

using namespace tcb::gf2;

namespace {

BitVec make(std::size_t n, std::initializer_list<std::size_t> bits) {
    BitVec v(n);
    for (auto i : bits) v.set(i);
    return v;
}

} // namespace

TEST_CASE("bitvec set, get, flip and word boundaries") {
    BitVec v(130);
    CHECK(v.size() == 130);
    CHECK_FALSE(v.any());
    v.set(0);
    v.set(63);
    v.set(64);
    v.set(129);
    CHECK(v.get(0));
    CHECK(v.get(63));
    CHECK(v.get(64));
    CHECK(v.get(129));
    CHECK_FALSE(v.get(1));
    CHECK(v.popcount() == 4);
    CHECK(v.lowest() == 0);
    v.set(0, false);
    CHECK_FALSE(v.get(0));
    CHECK(v.lowest() == 63);
    v.flip(63);
    CHECK(v.lowest() == 64);
    CHECK(v.ones() == std::vector<std::size_t>({64, 129}));
}

TEST_CASE("bitvec xor and equality") {
    auto a = make(70, {1, 5, 65});
    auto b = make(70, {5, 9});
    a.xor_with(b);
    CHECK(a == make(70, {1, 9, 65}));
    a.xor_with(a);
    CHECK_FALSE(a.any());
    CHECK(a.lowest() == a.size());
    // Same bits, different length: not equal.
    CHECK_FALSE(make(4, {1}) == make(5, {1}));
}

TEST_CASE("echelon rank counts independent rows only") {
    Echelon e;
    CHECK(e.add(make(8, {0, 1})));
    CHECK(e.add(make(8, {1, 2})));
    CHECK_FALSE(e.add(make(8, {0, 2}))); // sum of the first two
    CHECK(e.add(make(8, {7})));
    CHECK(e.rank() == 3);

    BitVec probe = make(8, {0, 2, 7});
    e.reduce(probe);
    CHECK_FALSE(probe.any());
}

TEST_CASE("echelon companions track the eliminating combination") {
    // Feed unit companions; each stored companion is then the input
    // combination equal to the stored (reduced) pivot row. Hand elimination:
    //   {0,1} stored as-is, companion {0};
    //   {0,2} reduced by the first row to {1,2}, companion {0,1};
    //   {1,2} reduces to zero (dependent), rejected.
    Echelon e;
    std::vector<BitVec> rows = {make(6, {0, 1}), make(6, {0, 2}), make(6, {1, 2})};
    std::vector<bool> kept;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        BitVec c(3);
        c.set(i);
        kept.push_back(e.add(rows[i], c));
    }
    CHECK(kept == std::vector<bool>({true, true, false}));
    CHECK(e.rank() == 2);
    REQUIRE(e.companions().size() == 2);
    CHECK(e.companions()[0] == make(3, {0}));
    CHECK(e.companions()[1] == make(3, {0, 1}));
}

TEST_CASE("nullspace of a rank-deficient map") {
    // Map F2^4 -> F2^2: e0, e1 -> (1,0); e2 -> (0,1); e3 -> 0.
    std::vector<BitVec> images = {make(2, {0}), make(2, {0}), make(2, {1}), make(2, {})};
    auto kernel = nullspace(images, 4);
    CHECK(kernel.size() == 2);
    for (const auto& k : kernel) {
        BitVec image(2);
        for (auto i : k.ones()) image.xor_with(images[i]);
        CHECK_FALSE(image.any());
    }
    // The two kernel vectors are independent.
    Echelon e;
    for (const auto& k : kernel) CHECK(e.add(k));
}

TEST_CASE("nullspace of an injective map is empty") {
    std::vector<BitVec> images = {make(3, {0}), make(3, {1}), make(3, {0, 2})};
    CHECK(nullspace(images, 3).empty());
}

TEST_CASE("nullspace of the zero map is everything") {
    std::vector<BitVec> images(5, BitVec(3));
    auto kernel = nullspace(images, 5);
    CHECK(kernel.size() == 5);
}

TEST_CASE("nullspace is deterministic") {
    std::vector<BitVec> images = {make(2, {0}), make(2, {0}), make(2, {1}),
                                  make(2, {0, 1}), make(2, {})};
    auto a = nullspace(images, 5);
    auto b = nullspace(images, 5);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}
