#pragma once

#include <string>
#include <vector>

#include "tcb/error.hpp"

namespace tcb::bounds {

/// Space grammar the engine understands:
///   S(m) | RP(m) | Surface(g[,nonorientable]) | ConnSumRP(g,m)
///   | Product(a, b, ...) | Power(a, k)
struct SpaceSpec {
    enum class Kind { Sphere, RP, Surface, ConnSumRP, Product, Power };

    Kind kind = Kind::Sphere;
    int m = 0;              // Sphere, RP, ConnSumRP dimension
    int g = 0;              // Surface, ConnSumRP genus / summand count
    int k = 0;              // Power exponent
    bool orientable = true; // Surface
    std::vector<SpaceSpec> factors; // Product factors; Power base at [0]

    [[nodiscard]] int dim() const;

    /// Largest q with trivial homotopy through dimension q, computed
    /// structurally: spheres give m-1, products the minimum over factors,
    /// everything else 0.
    [[nodiscard]] int connectivity() const;

    /// Whether the cohomology module can build H^*(X; F2) with Steenrod data.
    [[nodiscard]] bool has_ring() const;

    /// Structural rendering, e.g. "Power(RP(2),2)".
    [[nodiscard]] std::string str() const;

    /// Multiset of non-product atoms, products and powers flattened.
    [[nodiscard]] std::vector<SpaceSpec> atoms() const;

    /// Cache / node key: atoms sorted and joined, so Power(S(2),2) and
    /// Product(S(2),S(2)) coincide.
    [[nodiscard]] std::string canonical_key() const;

    /// The l-fold product of this space, in flattened canonical form.
    [[nodiscard]] SpaceSpec power(int l) const;

    [[nodiscard]] static SpaceSpec sphere(int m);
    [[nodiscard]] static SpaceSpec rp(int m);
    [[nodiscard]] static SpaceSpec surface(int g, bool orientable = true);
    [[nodiscard]] static SpaceSpec conn_sum_rp(int g, int m);
    [[nodiscard]] static SpaceSpec product(std::vector<SpaceSpec> factors);
};

/// Parse the grammar above; whitespace-insensitive. Throws ParseError with
/// the offending position.
[[nodiscard]] SpaceSpec parse_space(const std::string& text);

} // namespace tcb::bounds
