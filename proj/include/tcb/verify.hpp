#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcb/planners.hpp"

#include <json.hpp>

namespace tcb::verify {

/// splitmix64 stream with Box-Muller gaussians (a fresh uniform pair per
/// draw, nothing cached, so call sequences replay exactly).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double uniform01();
    double gaussian();
    [[nodiscard]] geom::UnitPoint unit_point(int m);

private:
    std::uint64_t state_;
};

[[nodiscard]] std::uint64_t fnv1a64(const std::string& text);

struct SuiteResult {
    std::string suite;
    std::uint64_t seed = 0; // base seed; the stream seed is seed ^ fnv1a64(suite)
    int trials = 0;
    double tolerance = 0.0;
    double max_deviation = 0.0;
    bool pass = true;
    std::vector<std::string> failures;
};

[[nodiscard]] const std::vector<std::string>& suite_names();

/// Runs one property suite. Throws UnknownSuite for names outside
/// suite_names(). Identical (name, trials, seed) triples give identical
/// results, including the serialized report bytes.
[[nodiscard]] SuiteResult run_suite(const std::string& name, int trials, std::uint64_t seed);

[[nodiscard]] nlohmann::json report_to_json(const SuiteResult& r);

/// Hand-built boundary inputs: pole / equator / antipodal configurations and
/// their near-miss perturbations, with the classification and flags each one
/// must produce.
struct Fixture {
    std::string name;
    bool pair = true;
    std::vector<geom::Vec> points;
    std::string expect_domain;              // pair tag, empty for tuples
    std::vector<std::string> expect_rules;  // tuple rule names, empty for pairs
    int expect_j = 0;
    std::vector<std::string> expect_flags;
};

[[nodiscard]] std::vector<Fixture> adversarial_fixtures();

struct FixtureOutcome {
    std::string name;
    bool ok = true;
    std::string message;
};

/// Classifies and plans the fixture, then checks domain, rules, flags,
/// endpoints and waypoints.
[[nodiscard]] FixtureOutcome check_fixture(const Fixture& f);

} // namespace tcb::verify
