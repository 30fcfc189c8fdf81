#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tcb/cohomology.hpp"
#include "tcb/spaces.hpp"

#include <json.hpp>

namespace tcb::bounds {

enum class Flavor { TC, TCbeta, TCsigma };

[[nodiscard]] std::string flavor_name(Flavor f);
[[nodiscard]] std::string flavor_symbol(Flavor f, int n); // e.g. "TC^Σ_4"
[[nodiscard]] Flavor parse_flavor(const std::string& text);

struct RuleApplication {
    std::string rule;
    std::string citation;
    std::string detail;
    std::string kind; // "lower", "upper" or "exact"
    int value = 0;
};

struct BoundInterval {
    std::string space;
    Flavor flavor = Flavor::TC;
    int n = 2;
    int lower = 1;
    int upper = 0;
    std::vector<RuleApplication> derivations;
};

struct RegistryRow {
    std::string pattern; // Sphere | RP | Surface | ConnSumRP | PowerEvenSphere
    std::vector<std::string> constraints;
    std::vector<Flavor> flavors;
    std::string value; // expression over n, m, g, l
    std::string citation;
};

/// Table of cited exact values. Rows match structurally and never
/// extrapolate beyond their stated hypotheses.
class Registry {
public:
    struct Hit {
        int value = 0;
        std::string citation;
    };

    static Registry builtin();
    static Registry from_json(const nlohmann::json& j);
    static Registry from_file(const std::string& path);

    [[nodiscard]] std::optional<Hit> lookup(const SpaceSpec& spec, int n, Flavor f) const;
    [[nodiscard]] std::size_t size() const { return rows_.size(); }

private:
    std::vector<RegistryRow> rows_;
};

struct EngineOptions {
    /// Build product cohomology rings only up to this many basis elements.
    int ring_basis_cap = 60;
    /// Skip the symmetric-square lower bounds when SP^2 would exceed this.
    int sp2_basis_cap = 1500;
    /// Skip the zero-divisor bound when the tensor power would exceed this.
    int tensor_basis_cap = 300;
};

/// Derives intervals for the three flavors by running the inequality rules to
/// a fixed point over a small cluster of related (space, n) nodes.
class Engine {
public:
    Engine();
    explicit Engine(Registry registry, EngineOptions options = {});

    [[nodiscard]] BoundInterval compute(const SpaceSpec& spec, int n, Flavor flavor) const;

    [[nodiscard]] std::optional<Registry::Hit> registry_lookup(const SpaceSpec& spec, int n,
                                                               Flavor f) const;
    [[nodiscard]] const Registry& registry() const { return registry_; }

    /// H^*(X; F2) for sphere / RP / product specs; UnsupportedSpace otherwise.
    [[nodiscard]] static mod2::GradedRing ring_for(const SpaceSpec& spec);

    /// Cached cup-length of SP^2(X); nullopt when the size gates veto it.
    [[nodiscard]] std::optional<int> cup_length_sp2(const SpaceSpec& spec) const;

    [[nodiscard]] static std::string explain(const BoundInterval& interval);
    [[nodiscard]] static nlohmann::json to_json(const BoundInterval& interval);

private:
    Registry registry_;
    EngineOptions opt_;
    mutable std::map<std::string, int> sp2_cl_cache_;
    mutable std::map<std::pair<std::string, int>, int> zcl_cache_;
};

} // namespace tcb::bounds
