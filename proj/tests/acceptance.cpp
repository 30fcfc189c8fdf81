// Acceptance gate: runs the seven release criteria end to end and prints one
// pass/fail line per criterion. Exit code 0 only when every criterion holds.
//
// The JSON fragments built per criterion are deterministic (timings are kept
// out of them); criterion 7 rebuilds everything from scratch and compares the
// serialized bytes.

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tcb/bounds.hpp"
#include "tcb/cohomology.hpp"
#include "tcb/spaces.hpp"
#include "tcb/verify.hpp"
#include "zcl_oracle.hpp"

using nlohmann::json;
using namespace tcb;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// --- criterion 1: symmetric squares of even spheres -------------------------

json criterion1() {
    json cases = json::array();
    bool pass = true;
    for (int m = 2; m <= 6; ++m) {
        const auto sp = mod2::nakaoka_sp2(mod2::ring_of_sphere(m));
        int phi = -1, em = -1;
        for (const auto& b : sp.basis()) {
            if (b.label.kind == mod2::BasisLabel::Kind::Phi) phi = b.id;
            if (b.label.kind == mod2::BasisLabel::Kind::E && b.label.s == m) em = b.id;
        }
        bool square_is_em = false, nonzero = false;
        int cl = 0;
        if (phi >= 0 && em >= 0) {
            const auto sq = sp.mult_basis(phi, phi);
            square_is_em = sq == sp.basis_vec(em);
            nonzero = sq.any();
            cl = mod2::cup_length(sp);
        }
        const bool ok = square_is_em && nonzero && cl == 2;
        pass = pass && ok;
        cases.push_back({{"m", m},
                         {"phi_square_is_E", square_is_em},
                         {"nonzero", nonzero},
                         {"cup_length", cl},
                         {"ok", ok}});
    }
    return {{"pass", pass}, {"cases", cases}};
}

// --- criterion 2: projective-space symmetric squares ------------------------

json criterion2() {
    const int c2 = mod2::cup_length(mod2::nakaoka_sp2(mod2::ring_of_rp(2)));
    const int c4 = mod2::cup_length(mod2::nakaoka_sp2(mod2::ring_of_rp(4)));
    const bool pass = c2 == 4 && c4 == 8;
    return {{"pass", pass}, {"rp2", c2}, {"rp4", c4}, {"expected", {{"rp2", 4}, {"rp4", 8}}}};
}

// --- criterion 3: products of RP^2 and the derived lower bounds -------------
//
// Expected cup-lengths: 7 for the two-fold product, 9 for the three-fold.
// A computed value above the expectation is flagged as a discrepancy (the
// derived bounds only get stronger); a value below it fails hard.

json criterion3() {
    const int expect2 = 7, expect3 = 9;
    const auto rp2 = mod2::ring_of_rp(2);
    const auto two = mod2::kunneth(rp2, rp2);
    const int c2 = mod2::cup_length(mod2::nakaoka_sp2(two));
    const int c3 = mod2::cup_length(mod2::nakaoka_sp2(mod2::kunneth(two, rp2)));

    bounds::Engine eng;
    const auto b4 = eng.compute(bounds::SpaceSpec::rp(2), 4, bounds::Flavor::TCbeta);
    const auto b6 = eng.compute(bounds::SpaceSpec::rp(2), 6, bounds::Flavor::TCbeta);

    // m = 2: the required bounds read 4m = 8 and 6m - 2 = 10. The cup-length
    // route alone gives cl + 1; the engine may certify more (its zero-divisor
    // rule dominates here).
    const bool bounds_ok = c2 + 1 >= 8 && c3 + 1 >= 10 && b4.lower >= 8 && b6.lower >= 10;
    const bool discrepancy = c2 > expect2 || c3 > expect3;
    const bool pass = c2 >= expect2 && c3 >= expect3 && bounds_ok;
    return {{"pass", pass},
            {"computed", {{"two_fold", c2}, {"three_fold", c3}}},
            {"expected", {{"two_fold", expect2}, {"three_fold", expect3}}},
            {"discrepancy", discrepancy},
            {"cup_length_route_lower", {{"tc_beta_4", c2 + 1}, {"tc_beta_6", c3 + 1}}},
            {"tc_beta_4_rp2_lower", b4.lower},
            {"tc_beta_6_rp2_lower", b6.lower},
            {"required_lower_bounds", {{"tc_beta_4", 8}, {"tc_beta_6", 10}}}};
}

// --- criterion 4: the bounds matrix -----------------------------------------

json criterion4() {
    bounds::Engine eng;
    std::vector<std::string> failures;
    int checks = 0;

    const auto record = [&](bool ok, const std::string& msg) {
        ++checks;
        if (!ok) failures.push_back(msg);
    };
    const auto interval_str = [](const bounds::BoundInterval& iv) {
        return "[" + std::to_string(iv.lower) + ", " + std::to_string(iv.upper) + "]";
    };
    const auto expect_exact = [&](const bounds::SpaceSpec& s, int n, bounds::Flavor f,
                                  int v) {
        const auto iv = eng.compute(s, n, f);
        record(iv.lower == v && iv.upper == v && !iv.derivations.empty(),
               bounds::flavor_symbol(f, n) + "(" + s.str() + ") = " + interval_str(iv) +
                   " with " + std::to_string(iv.derivations.size()) +
                   " derivations, want exactly " + std::to_string(v));
    };
    // The certified interval must sit inside [lo, hi]; tighter is fine (at
    // n = 2 the even-n odd-m sphere case closes to the exact value 3).
    const auto expect_within = [&](const bounds::SpaceSpec& s, int n, bounds::Flavor f,
                                   int lo, int hi) {
        const auto iv = eng.compute(s, n, f);
        record(lo <= iv.lower && iv.lower <= iv.upper && iv.upper <= hi &&
                   !iv.derivations.empty(),
               bounds::flavor_symbol(f, n) + "(" + s.str() + ") = " + interval_str(iv) +
                   ", want a subinterval of [" + std::to_string(lo) + ", " +
                   std::to_string(hi) + "]");
    };
    const auto chain_ok = [&](const bounds::SpaceSpec& s, int n) {
        const auto tc = eng.compute(s, n, bounds::Flavor::TC);
        const auto be = eng.compute(s, n, bounds::Flavor::TCbeta);
        const auto si = eng.compute(s, n, bounds::Flavor::TCsigma);
        record(tc.lower <= be.lower && be.lower <= si.lower && tc.upper <= be.upper &&
                   be.upper <= si.upper && tc.lower <= tc.upper && be.lower <= be.upper &&
                   si.lower <= si.upper,
               "chain violated at n = " + std::to_string(n) + " on " + s.str() + ": TC " +
                   interval_str(tc) + ", beta " + interval_str(be) + ", sigma " +
                   interval_str(si));
    };

    // Spheres, all parity quadrants of (m, n).
    for (int n = 2; n <= 8; ++n)
        for (int m = 1; m <= 6; ++m) {
            const auto s = bounds::SpaceSpec::sphere(m);
            if (m % 2 == 0)
                expect_exact(s, n, bounds::Flavor::TCbeta, n + 1);
            else if (n % 2 == 1)
                expect_exact(s, n, bounds::Flavor::TCbeta, n);
            else
                expect_within(s, n, bounds::Flavor::TCbeta, n, n + 1);
        }
    // Symmetrized flavor on spheres of dimension > 1, even n.
    for (int n = 2; n <= 8; n += 2)
        for (int m = 2; m <= 6; ++m)
            expect_exact(bounds::SpaceSpec::sphere(m), n, bounds::Flavor::TCsigma, n + 1);
    // Projective spaces: RP^4 at even n, RP^2 everywhere.
    for (int n = 2; n <= 8; n += 2)
        expect_exact(bounds::SpaceSpec::rp(4), n, bounds::Flavor::TCsigma, 4 * n + 1);
    for (int n = 2; n <= 8; ++n)
        expect_exact(bounds::SpaceSpec::rp(2), n, bounds::Flavor::TCsigma, 2 * n + 1);
    // Even-sphere powers tie the two equivariant flavors together.
    for (int m = 2; m <= 6; m += 2)
        for (int l = 1; l <= 3; ++l) {
            const auto s = bounds::SpaceSpec::sphere(m);
            expect_exact(s.power(l), 2, bounds::Flavor::TCsigma, 2 * l + 1);
            expect_exact(s, 2 * l, bounds::Flavor::TCbeta, 2 * l + 1);
        }
    // Chain coherence spot checks across the cluster.
    for (int m = 1; m <= 6; ++m)
        for (int n : {2, 3, 8}) chain_ok(bounds::SpaceSpec::sphere(m), n);
    chain_ok(bounds::SpaceSpec::rp(2), 4);
    chain_ok(bounds::SpaceSpec::rp(4), 4);

    return {{"pass", failures.empty()}, {"checks", checks}, {"failures", failures}};
}

// --- criterion 5: randomized verification plus adversarial fixtures ---------
//
// Trial counts give 10^4 trials per pair dimension m in {1..5} and per tuple
// shape (n, m) in {3,5} x {1,3,5}; the membership suite alternates pair/tuple
// draws, so it gets double.

json criterion5() {
    const std::uint64_t seed = 42;
    struct SuiteSpec {
        const char* name;
        int trials;
    };
    const SuiteSpec plan[] = {
        {"pair_equivariance", 50000}, {"pair_endpoints", 50000},
        {"tuple_equivariance", 60000}, {"tuple_waypoints", 60000},
        {"sphere_membership", 120000},
    };
    bool pass = true;
    json suites = json::array();
    for (const auto& s : plan) {
        const auto r = verify::run_suite(s.name, s.trials, seed);
        pass = pass && r.pass;
        suites.push_back(verify::report_to_json(r));
    }
    json fixture_failures = json::array();
    const auto fixtures = verify::adversarial_fixtures();
    for (const auto& f : fixtures) {
        const auto out = verify::check_fixture(f);
        if (!out.ok) {
            pass = false;
            fixture_failures.push_back(f.name + ": " + out.message);
        }
    }
    return {{"pass", pass},
            {"seed", seed},
            {"suites", suites},
            {"fixtures",
             {{"total", fixtures.size()}, {"failures", fixture_failures}}}};
}

// --- criterion 6: the independent zero-divisor oracle -----------------------

json criterion6() {
    const int computed = mod2::zero_divisor_cup_length(mod2::ring_of_rp(2), 2);
    const int oracle = zcl_oracle::oracle_zcl_rp2_n2();
    const bool pass = oracle == 3 && computed == oracle;
    return {{"pass", pass}, {"computed", computed}, {"oracle", oracle}};
}

// --- harness ----------------------------------------------------------------

struct Run {
    json report;
    std::map<std::string, double> secs;
};

Run run_all() {
    Run r;
    const auto timed = [&](const char* key, json (*fn)()) {
        const auto t0 = Clock::now();
        r.report[key] = fn();
        r.secs[key] = seconds_since(t0);
    };
    timed("criterion1", &criterion1);
    timed("criterion2", &criterion2);
    timed("criterion3", &criterion3);
    timed("criterion4", &criterion4);
    timed("criterion5", &criterion5);
    timed("criterion6", &criterion6);
    return r;
}

std::string fmt_secs(double s) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << s << "s";
    return os.str();
}

} // namespace

int main() {
    std::cout.setf(std::ios::unitbuf); // line output survives a timeout kill

    Run run1 = run_all();

    const auto& rep = run1.report;
    const double budget[] = {1.0, 5.0, 60.0, 120.0, 120.0};
    bool all_pass = true;
    std::vector<std::string> lines;

    const auto line = [&](int k, bool pass, const std::string& text) {
        all_pass = all_pass && pass;
        std::ostringstream os;
        os << (pass ? "[PASS]" : "[FAIL]") << " criterion " << k << ": " << text;
        lines.push_back(os.str());
    };
    const auto timed_pass = [&](int k) {
        const std::string key = "criterion" + std::to_string(k);
        const bool ok = rep.at(key).at("pass").get<bool>();
        const double t = run1.secs.at(key);
        const bool in_budget = k > 5 || t < budget[k - 1];
        return std::make_tuple(ok && in_budget, t, in_budget);
    };

    {
        auto [ok, t, in_budget] = timed_pass(1);
        std::ostringstream os;
        os << "sp2 of even spheres has phi(1 x e_m)^2 = E_m(e_m) != 0 and cup-length 2 "
              "for m = 2..6 ("
           << fmt_secs(t) << (in_budget ? "" : ", over budget") << ")";
        line(1, ok, os.str());
    }
    {
        auto [ok, t, in_budget] = timed_pass(2);
        std::ostringstream os;
        os << "cup-length sp2(RP^2) = " << rep.at("criterion2").at("rp2") << " (want 4), "
           << "sp2(RP^4) = " << rep.at("criterion2").at("rp4") << " (want 8) (" << fmt_secs(t)
           << (in_budget ? "" : ", over budget") << ")";
        line(2, ok, os.str());
    }
    {
        auto [ok, t, in_budget] = timed_pass(3);
        const auto& c3 = rep.at("criterion3");
        std::ostringstream os;
        os << "cup-length sp2((RP^2)^2) = " << c3.at("computed").at("two_fold")
           << " (expected 7), sp2((RP^2)^3) = " << c3.at("computed").at("three_fold")
           << " (expected 9); cup-length route gives TC^beta_4(RP^2) >= "
           << c3.at("cup_length_route_lower").at("tc_beta_4") << " [need 8], TC^beta_6(RP^2) >= "
           << c3.at("cup_length_route_lower").at("tc_beta_6")
           << " [need 10]; engine certifies >= " << c3.at("tc_beta_4_rp2_lower") << " and >= "
           << c3.at("tc_beta_6_rp2_lower");
        if (c3.at("discrepancy").get<bool>()) os << "; DISCREPANCY FLAGGED";
        os << " (" << fmt_secs(t) << (in_budget ? "" : ", over budget") << ")";
        line(3, ok, os.str());
    }
    {
        auto [ok, t, in_budget] = timed_pass(4);
        const auto& c4 = rep.at("criterion4");
        std::ostringstream os;
        os << "bounds matrix over n = 2..8, m = 1..6, l = 1..3: " << c4.at("checks")
           << " checks, " << c4.at("failures").size() << " failures (" << fmt_secs(t)
           << (in_budget ? "" : ", over budget") << ")";
        line(4, ok, os.str());
    }
    {
        auto [ok, t, in_budget] = timed_pass(5);
        const auto& c5 = rep.at("criterion5");
        long long trials = 0;
        for (const auto& s : c5.at("suites")) trials += s.at("trials").get<long long>();
        std::ostringstream os;
        os << trials << " randomized trials at seed 42 within tolerance plus "
           << c5.at("fixtures").at("total") << " adversarial fixtures, "
           << c5.at("fixtures").at("failures").size() << " fixture failures (" << fmt_secs(t)
           << (in_budget ? "" : ", over budget") << ")";
        line(5, ok, os.str());
    }
    {
        auto [ok, t, in_budget] = timed_pass(6);
        (void)in_budget;
        const auto& c6 = rep.at("criterion6");
        std::ostringstream os;
        os << "zero-divisor cup-length of RP^2 pairs: computed " << c6.at("computed")
           << ", independent oracle " << c6.at("oracle") << " (" << fmt_secs(t) << ")";
        line(6, ok, os.str());
    }

    // Criterion 7: full re-run, byte comparison of the deterministic reports.
    const auto t7 = Clock::now();
    Run run2 = run_all();
    const bool identical = run1.report.dump() == run2.report.dump();
    {
        std::ostringstream os;
        os << "re-running criteria 1-6 reproduces byte-identical reports: "
           << (identical ? "yes" : "NO") << " (" << fmt_secs(seconds_since(t7)) << ")";
        line(7, identical, os.str());
    }

    for (const auto& l : lines) std::cout << l << "\n";

    if (rep.at("criterion3").at("discrepancy").get<bool>()) {
        const auto& c3 = rep.at("criterion3");
        std::cout << "\n"
                  << "DISCREPANCY (criterion 3): computed cup-length "
                  << c3.at("computed").at("three_fold") << " for sp2((RP^2)^3) differs from "
                  << "the published value " << c3.at("expected").at("three_fold")
                  << ". The computed value is the larger one, so the derived bound "
                  << "TC^beta_6(RP^2) >= " << c3.at("tc_beta_6_rp2_lower")
                  << " strengthens the published 10; recorded in acceptance_report.json.\n";
    }

    json out = {{"criteria", run1.report},
                {"criterion7", {{"pass", identical}, {"byte_identical", identical}}},
                {"timings_seconds", run1.secs}};
    std::ofstream file("acceptance_report.json");
    file << out.dump(2) << "\n";
    file.close();

    std::cout << "\nacceptance: " << (all_pass ? "all 7 criteria passed" : "FAILURES above")
              << "; report written to acceptance_report.json\n";
    return all_pass ? 0 : 1;
}
