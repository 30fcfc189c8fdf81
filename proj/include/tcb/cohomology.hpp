#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tcb/error.hpp"
#include "tcb/gf2.hpp"

#include <json.hpp>

namespace tcb::mod2 {

struct BasisLabel {
    enum class Kind { Unit, Monomial, Phi, E };
    Kind kind = Kind::Unit;
    std::vector<int> exponents; // Monomial: exponent per tensor variable
    int i = 0;                  // Phi(i, j) with i < j; E(s, i)
    int j = 0;
    int s = 0;
};

struct GradedBasisElement {
    int id = 0;
    int degree = 0;
    BasisLabel label;
    std::string name;
};

/// F2 cohomology class in a fixed basis.
struct CohClass {
    gf2::BitVec bits;
    std::optional<int> homogeneous_degree;
};

/// Finite graded-commutative F2 algebra with a fixed homogeneous basis
/// (basis[0] is the unit), a full multiplication table, and an optional
/// Steenrod table. Immutable once built.
class GradedRing {
public:
    GradedRing(std::vector<GradedBasisElement> basis,
               std::vector<gf2::BitVec> mult_upper,
               std::map<std::pair<int, int>, gf2::BitVec> sq,
               bool has_sq);

    [[nodiscard]] int size() const { return static_cast<int>(basis_.size()); }
    [[nodiscard]] const std::vector<GradedBasisElement>& basis() const { return basis_; }
    [[nodiscard]] const GradedBasisElement& element(int id) const {
        return basis_[static_cast<std::size_t>(id)];
    }
    [[nodiscard]] int unit_id() const { return 0; }
    [[nodiscard]] int top_degree() const { return top_degree_; }
    [[nodiscard]] bool has_sq() const { return has_sq_; }

    [[nodiscard]] gf2::BitVec zero() const { return gf2::BitVec(basis_.size()); }
    [[nodiscard]] gf2::BitVec basis_vec(int id) const;

    /// Product of two basis elements.
    [[nodiscard]] const gf2::BitVec& mult_basis(int a, int b) const;
    /// Bilinear extension.
    [[nodiscard]] gf2::BitVec mult(const gf2::BitVec& a, const gf2::BitVec& b) const;

    /// Steenrod square on a basis element (Sq^0 = identity). Throws
    /// MissingSteenrod when the ring carries no table.
    [[nodiscard]] gf2::BitVec sq(int k, int id) const;
    [[nodiscard]] gf2::BitVec sq_class(int k, const gf2::BitVec& c) const;
    [[nodiscard]] const std::map<std::pair<int, int>, gf2::BitVec>& sq_table() const {
        return sq_;
    }

    /// Coefficients of the Poincare polynomial, index = degree.
    [[nodiscard]] std::vector<int> poincare() const;

    [[nodiscard]] std::optional<int> degree_of(const gf2::BitVec& c) const;
    [[nodiscard]] std::string class_name(const gf2::BitVec& c) const;

    [[nodiscard]] nlohmann::json to_json() const;

private:
    std::vector<GradedBasisElement> basis_;
    std::vector<gf2::BitVec> mult_; // upper triangle, index tri(a,b) for a <= b
    std::map<std::pair<int, int>, gf2::BitVec> sq_;
    bool has_sq_;
    int top_degree_;

    [[nodiscard]] std::size_t tri(int a, int b) const;
};

/// H^*(S^m; F2): basis {1, e}, e^2 = 0, Sq^k(e) = 0 for k > 0.
[[nodiscard]] GradedRing ring_of_sphere(int m);

/// H^*(RP^m; F2) = F2[x]/(x^{m+1}) with Sq^k(x^j) = C(j,k) x^{j+k}.
[[nodiscard]] GradedRing ring_of_rp(int m);

/// Tensor product ring with Cartan Steenrod table. Basis id of (a, b) is
/// a_id * b.size() + b_id.
[[nodiscard]] GradedRing kunneth(const GradedRing& a, const GradedRing& b);

/// Mod-2 cohomology of the symmetric square: basis {1} + {phi(b_i x b_j), i<j}
/// + {E_s(b_i), 2 <= s <= deg b_i}, products by the phi expansion rules; every
/// product touching an E element vanishes. No Steenrod table on the output.
[[nodiscard]] GradedRing nakaoka_sp2(const GradedRing& r);

/// C(j,k) mod 2 (Lucas: odd iff k's bits are a subset of j's).
[[nodiscard]] bool binom_odd(long long j, long long k);

struct CupWitness {
    int length = 0;
    std::vector<int> factor_ids; // basis ids whose product is nonzero
};

/// Longest nonzero product of positive-degree elements, with one witness.
[[nodiscard]] CupWitness cup_length_witness(const GradedRing& r);
[[nodiscard]] int cup_length(const GradedRing& r);

/// Cup-length of the kernel of the n-fold multiplication map on r^{x n}.
[[nodiscard]] int zero_divisor_cup_length(const GradedRing& r, int n);

struct RingCheckReport {
    bool ok = true;
    std::vector<std::string> problems;
};

/// Structural validation: grading, unit row, commutativity-by-construction,
/// associativity on a deterministic sample (or all triples), Sq^0 = id and
/// top-square = cup-square when a Steenrod table is present.
[[nodiscard]] RingCheckReport verify_ring(const GradedRing& r, bool full_assoc = false);

} // namespace tcb::mod2
