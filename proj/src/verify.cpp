#include "tcb/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tcb/cohomology.hpp"
#include "tcb/error.hpp"

namespace tcb::verify {

std::uint64_t Rng::next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng::uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    double u1 = uniform01();
    while (u1 <= 1e-300) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
}

geom::UnitPoint Rng::unit_point(int m) {
    while (true) {
        geom::Vec v(static_cast<std::size_t>(m) + 1);
        for (auto& c : v) c = gaussian();
        if (geom::norm(v) > 1e-6) return geom::UnitPoint(geom::normalized(v));
    }
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

constexpr int kGrid = 201;
constexpr std::size_t kMaxFailureRecords = 20;

const int kPairDims[5] = {1, 2, 3, 4, 5};
const int kTupleN[6] = {3, 3, 3, 5, 5, 5};
const int kTupleM[6] = {1, 3, 5, 1, 3, 5};

struct Recorder {
    SuiteResult r;
    std::size_t suppressed = 0;

    Recorder(std::string suite, std::uint64_t seed, double tol) {
        r.suite = std::move(suite);
        r.seed = seed;
        r.tolerance = tol;
    }
    void observe(double dev, const std::string& context) {
        r.max_deviation = std::max(r.max_deviation, dev);
        if (dev > r.tolerance) {
            r.pass = false;
            if (r.failures.size() < kMaxFailureRecords) {
                std::ostringstream os;
                os << context << ": deviation " << dev << " > " << r.tolerance;
                r.failures.push_back(os.str());
            } else {
                ++suppressed;
            }
        }
    }
    SuiteResult finish(int trials) {
        r.trials = trials;
        if (suppressed > 0)
            r.failures.push_back("suppressed " + std::to_string(suppressed) +
                                 " further failures");
        return std::move(r);
    }
};

double grid_deviation(const geom::PiecewisePath& a, const geom::PiecewisePath& b) {
    double worst = 0.0;
    for (int i = 0; i < kGrid; ++i) {
        const double t = static_cast<double>(i) / (kGrid - 1);
        worst = std::max(worst, geom::dist(a.evaluate_raw(t), b.evaluate_raw(t)));
    }
    return worst;
}

plan::WaypointTuple random_tuple(Rng& rng, int n, int m) {
    std::vector<geom::UnitPoint> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts.push_back(rng.unit_point(m));
    return plan::WaypointTuple(std::move(pts));
}

std::string trial_tag(const char* what, int t, int n, int m) {
    std::ostringstream os;
    os << what << " trial " << t << " (n = " << n << ", m = " << m << ")";
    return os.str();
}

SuiteResult suite_pair_equivariance(int trials, std::uint64_t seed, Rng& rng) {
    Recorder rec("pair_equivariance", seed, 1e-9);
    for (int t = 0; t < trials; ++t) {
        const int m = kPairDims[t % 5];
        const auto x = rng.unit_point(m);
        const auto y = rng.unit_point(m);
        const auto fwd = plan::plan_pair(x, y);
        const auto bwd = plan::plan_pair(y, x);
        rec.observe(grid_deviation(geom::reverse(fwd.path), bwd.path),
                    trial_tag("pair", t, 2, m));
    }
    return rec.finish(trials);
}

SuiteResult suite_pair_endpoints(int trials, std::uint64_t seed, Rng& rng) {
    Recorder rec("pair_endpoints", seed, 1e-9);
    for (int t = 0; t < trials; ++t) {
        const int m = kPairDims[t % 5];
        const auto x = rng.unit_point(m);
        const auto y = rng.unit_point(m);
        const auto p = plan::plan_pair(x, y);
        const double dev = std::max(geom::dist(p.path.evaluate_raw(0.0), x.coords()),
                                    geom::dist(p.path.evaluate_raw(1.0), y.coords()));
        rec.observe(dev, trial_tag("pair", t, 2, m));
    }
    return rec.finish(trials);
}

SuiteResult suite_tuple_equivariance(int trials, std::uint64_t seed, Rng& rng) {
    Recorder rec("tuple_equivariance", seed, 1e-9);
    for (int t = 0; t < trials; ++t) {
        const int n = kTupleN[t % 6];
        const int m = kTupleM[t % 6];
        const auto w = random_tuple(rng, n, m);
        const auto fwd = plan::plan_tuple(w);
        const auto bwd = plan::plan_tuple(w.reversal());
        rec.observe(grid_deviation(geom::reverse(fwd.path), bwd.path),
                    trial_tag("tuple", t, n, m));
    }
    return rec.finish(trials);
}

SuiteResult suite_tuple_waypoints(int trials, std::uint64_t seed, Rng& rng) {
    Recorder rec("tuple_waypoints", seed, 1e-9);
    for (int t = 0; t < trials; ++t) {
        const int n = kTupleN[t % 6];
        const int m = kTupleM[t % 6];
        const auto w = random_tuple(rng, n, m);
        const auto p = plan::plan_tuple(w);
        double dev = 0.0;
        for (int i = 0; i < n; ++i)
            dev = std::max(dev, geom::dist(p.path.evaluate_raw(p.waypoint_times[i]),
                                           w.at(i).coords()));
        rec.observe(dev, trial_tag("tuple", t, n, m));
    }
    return rec.finish(trials);
}

SuiteResult suite_domain_symmetry(int trials, std::uint64_t seed, Rng& rng) {
    Recorder rec("domain_symmetry", seed, 0.5);
    const auto partner = [](plan::TupleRule r) {
        switch (r) {
        case plan::TupleRule::ArcForwardRule: return plan::TupleRule::ArcBackwardRule;
        case plan::TupleRule::ArcBackwardRule: return plan::TupleRule::ArcForwardRule;
        default: return r;
        }
    };
    for (int t = 0; t < trials; ++t) {
        if (t % 2 == 0) {
            const int m = kPairDims[(t / 2) % 5];
            const auto x = rng.unit_point(m);
            const auto y = rng.unit_point(m);
            const auto a = plan::classify_pair(x, y);
            const auto b = plan::classify_pair(y, x);
            const bool same =
                a.tag == b.tag && std::abs(a.margin - b.margin) <= 1e-12;
            rec.observe(same ? 0.0 : 1.0, trial_tag("pair", t, 2, m));
        } else {
            const int n = kTupleN[(t / 2) % 6];
            const int m = kTupleM[(t / 2) % 6];
            const auto w = random_tuple(rng, n, m);
            const auto a = plan::classify_tuple(w);
            const auto b = plan::classify_tuple(w.reversal());
            bool same = a.j == b.j && a.rules.size() == b.rules.size();
            if (same)
                for (std::size_t i = 0; i < a.rules.size(); ++i)
                    if (b.rules[i] != partner(a.rules[a.rules.size() - 1 - i])) {
                        same = false;
                        break;
                    }
            rec.observe(same ? 0.0 : 1.0, trial_tag("tuple", t, n, m));
        }
    }
    return rec.finish(trials);
}

SuiteResult suite_sphere_membership(int trials, std::uint64_t seed, Rng& rng) {
    Recorder rec("sphere_membership", seed, 1e-9);
    for (int t = 0; t < trials; ++t) {
        geom::PiecewisePath path = [&] {
            if (t % 2 == 0) {
                const int m = kPairDims[(t / 2) % 5];
                return plan::plan_pair(rng.unit_point(m), rng.unit_point(m)).path;
            }
            const int n = kTupleN[(t / 2) % 6];
            const int m = kTupleM[(t / 2) % 6];
            return plan::plan_tuple(random_tuple(rng, n, m)).path;
        }();
        double dev = 0.0;
        for (int i = 0; i < kGrid; ++i) {
            const double tt = static_cast<double>(i) / (kGrid - 1);
            dev = std::max(dev, std::abs(geom::norm(path.evaluate_raw(tt)) - 1.0));
        }
        rec.observe(dev, trial_tag(t % 2 == 0 ? "pair" : "tuple", t, 0, path.dim_m()));
    }
    return rec.finish(trials);
}

SuiteResult suite_continuity(int trials, std::uint64_t seed, Rng& rng) {
    // Planner speeds are bounded: chart margins never drop below sqrt(3)-1,
    // tuple paths run at most 4 compressed slerp legs. Grid jumps stay under
    // ~0.08, so 0.15 separates numerical wobble from an actual tear.
    Recorder rec("continuity", seed, 0.15);
    for (int t = 0; t < trials; ++t) {
        geom::PiecewisePath path = [&] {
            if (t % 2 == 0) {
                const int m = kPairDims[(t / 2) % 5];
                return plan::plan_pair(rng.unit_point(m), rng.unit_point(m)).path;
            }
            const int n = kTupleN[(t / 2) % 6];
            const int m = kTupleM[(t / 2) % 6];
            return plan::plan_tuple(random_tuple(rng, n, m)).path;
        }();
        double dev = 0.0;
        geom::Vec prev = path.evaluate_raw(0.0);
        for (int i = 1; i < kGrid; ++i) {
            const double tt = static_cast<double>(i) / (kGrid - 1);
            geom::Vec cur = path.evaluate_raw(tt);
            dev = std::max(dev, geom::dist(prev, cur));
            prev = std::move(cur);
        }
        rec.observe(dev, trial_tag(t % 2 == 0 ? "pair" : "tuple", t, 0, path.dim_m()));
    }
    return rec.finish(trials);
}

SuiteResult suite_ring_axioms(int trials, std::uint64_t seed) {
    Recorder rec("ring_axioms", seed, 0.5);
    struct Entry {
        std::string name;
        mod2::GradedRing ring;
    };
    std::vector<Entry> entries;
    for (int m = 1; m <= 5; ++m) {
        entries.push_back({"sphere(" + std::to_string(m) + ")", mod2::ring_of_sphere(m)});
        entries.push_back({"sp2(sphere(" + std::to_string(m) + "))",
                           mod2::nakaoka_sp2(mod2::ring_of_sphere(m))});
    }
    for (int m = 1; m <= 6; ++m) {
        entries.push_back({"rp(" + std::to_string(m) + ")", mod2::ring_of_rp(m)});
        entries.push_back({"sp2(rp(" + std::to_string(m) + "))",
                           mod2::nakaoka_sp2(mod2::ring_of_rp(m))});
    }
    const int checked = std::min<int>(trials, static_cast<int>(entries.size()));
    for (int i = 0; i < checked; ++i) {
        const auto report = mod2::verify_ring(entries[i].ring);
        std::string context = entries[i].name;
        if (!report.ok && !report.problems.empty())
            context += ": " + report.problems.front();
        rec.observe(report.ok ? 0.0 : 1.0, context);
    }
    return rec.finish(checked);
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "pair_equivariance", "pair_endpoints",    "tuple_equivariance",
        "tuple_waypoints",   "domain_symmetry",   "sphere_membership",
        "continuity",        "ring_axioms"};
    return names;
}

SuiteResult run_suite(const std::string& name, int trials, std::uint64_t seed) {
    if (trials < 1) fail(ErrorCode::BadInput, "suite trials must be >= 1");
    Rng rng(seed ^ fnv1a64(name));
    if (name == "pair_equivariance") return suite_pair_equivariance(trials, seed, rng);
    if (name == "pair_endpoints") return suite_pair_endpoints(trials, seed, rng);
    if (name == "tuple_equivariance") return suite_tuple_equivariance(trials, seed, rng);
    if (name == "tuple_waypoints") return suite_tuple_waypoints(trials, seed, rng);
    if (name == "domain_symmetry") return suite_domain_symmetry(trials, seed, rng);
    if (name == "sphere_membership") return suite_sphere_membership(trials, seed, rng);
    if (name == "continuity") return suite_continuity(trials, seed, rng);
    if (name == "ring_axioms") return suite_ring_axioms(trials, seed);
    fail(ErrorCode::UnknownSuite, "no verification suite named '" + name + "'");
}

nlohmann::json report_to_json(const SuiteResult& r) {
    return {{"suite", r.suite},
            {"seed", r.seed},
            {"rng", "splitmix64+box-muller"},
            {"trials", r.trials},
            {"tolerance", r.tolerance},
            {"max_deviation", r.max_deviation},
            {"pass", r.pass},
            {"failures", r.failures}};
}

std::vector<Fixture> adversarial_fixtures() {
    using geom::Vec;
    const double near = 1e-7;
    const double lift = std::sqrt(1.0 - near * near);

    std::vector<Fixture> out;

    // Pairs on S^2.
    out.push_back({"pair_both_north", true,
                   {Vec{0, 0, 1}, Vec{0, 0, 1}},
                   "UMinus", {}, 0, {}});
    out.push_back({"pair_north_south", true,
                   {Vec{0, 0, 1}, Vec{0, 0, -1}},
                   "V", {}, 0, {}});
    out.push_back({"pair_both_south", true,
                   {Vec{0, 0, -1}, Vec{0, 0, -1}},
                   "UPlus", {}, 0, {}});
    out.push_back({"pair_equator_same", true,
                   {Vec{1, 0, 0}, Vec{1, 0, 0}},
                   "UPlus", {}, 0, {}});
    out.push_back({"pair_equator_antipodal", true,
                   {Vec{1, 0, 0}, Vec{-1, 0, 0}},
                   "UPlus", {}, 0, {}});
    out.push_back({"pair_north_equator", true,
                   {Vec{0, 0, 1}, Vec{1, 0, 0}},
                   "UMinus", {}, 0, {}});
    out.push_back({"pair_near_north", true,
                   {Vec{near, 0, lift}, Vec{1, 0, 0}},
                   "UMinus", {}, 0, {"near-pole:+:x"}});
    out.push_back({"pair_near_equator", true,
                   {Vec{0, 0, -1}, Vec{lift, 0, near}},
                   "UPlus", {}, 0, {"near-equator:y"}});

    // Tuples on S^3.
    const Vec p{1, 0, 0, 0};
    const Vec np{-1, 0, 0, 0};
    const Vec q{0, 1, 0, 0};
    const Vec c{0, 0, 1, 0};
    const Vec nq{0, -1, 0, 0};
    const Vec q_na{-(1.0 - near), std::sqrt(1.0 - (1.0 - near) * (1.0 - near)), 0,
                   0}; // dot with p = -1 + 1e-7
    const Vec p_ne{1.0 - near, std::sqrt(1.0 - (1.0 - near) * (1.0 - near)), 0,
                   0}; // dot with p = 1 - 1e-7

    out.push_back({"tuple_all_equal", false, {p, p, p}, "", {"Constant", "Constant"}, 0, {}});
    out.push_back({"tuple_alternating", false,
                   {p, np, p},
                   "", {"ArcForward", "ArcBackward"}, 2, {}});
    out.push_back({"tuple_antipodal_gap1", false,
                   {p, np, q},
                   "", {"ArcForward", "Slerp"}, 1, {}});
    out.push_back({"tuple_antipodal_gap2", false,
                   {q, p, np},
                   "", {"Slerp", "ArcBackward"}, 1, {}});
    out.push_back({"tuple_equal_gap1", false, {p, p, q}, "", {"Constant", "Slerp"}, 0, {}});
    out.push_back({"tuple_equal_gap2", false, {q, p, p}, "", {"Slerp", "Constant"}, 0, {}});
    out.push_back({"tuple_five_mixed", false,
                   {p, q, nq, c, c},
                   "", {"Slerp", "ArcForward", "Slerp", "Constant"}, 1, {}});
    out.push_back({"tuple_near_antipodal", false,
                   {p, q_na, q},
                   "", {"Slerp", "Slerp"}, 0, {"near-antipodal:1"}});
    out.push_back({"tuple_near_equal", false,
                   {p, p_ne, q},
                   "", {"Slerp", "Slerp"}, 0, {"near-equal:1"}});

    return out;
}

FixtureOutcome check_fixture(const Fixture& f) {
    FixtureOutcome out;
    out.name = f.name;
    const auto complain = [&out](const std::string& msg) {
        out.ok = false;
        if (!out.message.empty()) out.message += "; ";
        out.message += msg;
    };
    try {
        std::vector<geom::UnitPoint> pts;
        pts.reserve(f.points.size());
        for (const auto& v : f.points) pts.push_back(geom::UnitPoint(v));

        if (f.pair) {
            const auto plan = plan::plan_pair(pts[0], pts[1]);
            if (plan::pair_tag_name(plan.domain.tag) != f.expect_domain)
                complain("domain " + plan::pair_tag_name(plan.domain.tag) + " != " +
                         f.expect_domain);
            if (plan.flags != f.expect_flags) complain("flag mismatch");
            const double de =
                std::max(geom::dist(plan.path.evaluate_raw(0.0), pts[0].coords()),
                         geom::dist(plan.path.evaluate_raw(1.0), pts[1].coords()));
            if (de > 1e-9) complain("endpoint deviation " + std::to_string(de));
        } else {
            plan::WaypointTuple w(pts);
            const auto plan = plan::plan_tuple(w);
            std::vector<std::string> rules;
            for (auto r : plan.domain.rules) rules.push_back(plan::tuple_rule_name(r));
            if (rules != f.expect_rules) complain("rule mismatch");
            if (plan.domain.j != f.expect_j)
                complain("j = " + std::to_string(plan.domain.j) + " != " +
                         std::to_string(f.expect_j));
            if (plan.flags != f.expect_flags) complain("flag mismatch");
            double dev = 0.0;
            for (int i = 0; i < w.n(); ++i)
                dev = std::max(dev, geom::dist(plan.path.evaluate_raw(plan.waypoint_times[i]),
                                               w.at(i).coords()));
            if (dev > 1e-9) complain("waypoint deviation " + std::to_string(dev));
        }
    } catch (const Error& e) {
        complain(std::string("threw ") + e.what());
    }
    return out;
}

} // namespace tcb::verify
