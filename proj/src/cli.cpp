#include "tcb/cli.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tcb/bounds.hpp"
#include "tcb/cohomology.hpp"
#include "tcb/error.hpp"
#include "tcb/planners.hpp"
#include "tcb/spaces.hpp"
#include "tcb/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

namespace tcb::cli {
namespace {

nlohmann::json read_json_input(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(path);
        if (!in) fail(ErrorCode::BadInput, "cannot open '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, "input JSON: " + std::string(e.what()));
    }
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) fail(ErrorCode::BadInput, "cannot write '" + path + "'");
    out << text;
}

std::uint64_t env_default_seed() {
    const char* env = std::getenv("TCB_SEED");
    if (env == nullptr || *env == '\0') return 42;
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0')
        fail(ErrorCode::BadInput, "TCB_SEED must be a decimal integer, got '" +
                                      std::string(env) + "'");
    return static_cast<std::uint64_t>(v);
}

geom::UnitPoint point_from_json(const nlohmann::json& row) {
    if (!row.is_array() || row.size() < 2)
        fail(ErrorCode::BadInput, "each point is an array of >= 2 coordinates");
    geom::Vec v;
    v.reserve(row.size());
    for (const auto& c : row) {
        if (!c.is_number()) fail(ErrorCode::BadInput, "point coordinates must be numbers");
        v.push_back(c.get<double>());
    }
    return geom::UnitPoint(std::move(v));
}

int do_plan(const std::string& input, const std::string& output) {
    const auto j = read_json_input(input);
    if (!j.contains("points") || !j.at("points").is_array())
        fail(ErrorCode::BadInput, "waypoint JSON needs a \"points\" array");
    std::vector<geom::UnitPoint> pts;
    for (const auto& row : j.at("points")) pts.push_back(point_from_json(row));
    if (pts.size() < 2) fail(ErrorCode::BadInput, "need at least 2 waypoints");
    const int n = static_cast<int>(pts.size());

    nlohmann::json out;
    double dev = 0.0;
    if (n == 2) {
        const auto plan = plan::plan_pair(pts[0], pts[1]);
        dev = std::max(geom::dist(plan.path.evaluate_raw(0.0), pts[0].coords()),
                       geom::dist(plan.path.evaluate_raw(1.0), pts[1].coords()));
        out = plan::pair_plan_to_json(plan);
    } else {
        plan::WaypointTuple w(pts);
        plan::TuplePlan plan = [&] {
            if (n % 2 == 1) return plan::plan_tuple(w);
            std::optional<geom::UnitPoint> base;
            if (j.contains("basepoint")) base = point_from_json(j.at("basepoint"));
            return plan::plan_tuple_even(w, base);
        }();
        for (int i = 0; i < n; ++i)
            dev = std::max(dev, geom::dist(plan.path.evaluate_raw(plan.waypoint_times[i]),
                                           pts[static_cast<std::size_t>(i)].coords()));
        out = plan::tuple_plan_to_json(plan);
    }
    if (dev > 1e-9) {
        const nlohmann::json err{
            {"error", "Verification"},
            {"message", "planned path misses its waypoints by " + std::to_string(dev)}};
        std::cerr << err.dump() << "\n";
        return 4;
    }
    out["n"] = n;
    out["m"] = pts[0].dim_m();
    write_output(output, out.dump(2) + "\n");
    return 0;
}

int do_sp2(const std::string& space_text, bool as_json) {
    const auto spec = bounds::parse_space(space_text);
    if (!spec.has_ring())
        fail(ErrorCode::UnsupportedSpace, "no mod-2 ring model for " + spec.str());
    const auto base = bounds::Engine::ring_for(spec);
    const auto sp2 = mod2::nakaoka_sp2(base);
    const auto wit = mod2::cup_length_witness(sp2);

    std::vector<std::string> witness_names;
    for (int id : wit.factor_ids) witness_names.push_back(sp2.element(id).name);

    if (as_json) {
        nlohmann::json j{{"space", spec.str()},
                         {"base_rank", base.size()},
                         {"cup_length", wit.length},
                         {"witness", witness_names},
                         {"ring", sp2.to_json()}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "space: " << spec.str() << "\n";
    std::cout << "base ring rank: " << base.size() << "\n";
    std::cout << "sp2 rank: " << sp2.size() << "\n";
    std::cout << "poincare:";
    for (int c : sp2.poincare()) std::cout << ' ' << c;
    std::cout << "\n";
    std::cout << "cup-length: " << wit.length << "\n";
    if (!witness_names.empty()) {
        std::cout << "witness:";
        for (std::size_t i = 0; i < witness_names.size(); ++i)
            std::cout << (i ? " * " : " ") << witness_names[i];
        std::cout << "\n";
    }
    return 0;
}

int do_bounds(const std::string& space_text, int n, const std::string& flavor_text,
              const std::string& registry_path, bool explain, bool as_json) {
    const auto spec = bounds::parse_space(space_text);
    const bounds::Engine engine = registry_path.empty()
                                      ? bounds::Engine()
                                      : bounds::Engine(bounds::Registry::from_file(registry_path));
    std::vector<bounds::Flavor> flavors;
    if (flavor_text == "all")
        flavors = {bounds::Flavor::TC, bounds::Flavor::TCbeta, bounds::Flavor::TCsigma};
    else
        flavors = {bounds::parse_flavor(flavor_text)};

    nlohmann::json arr = nlohmann::json::array();
    std::ostringstream table;
    table << "space: " << spec.str() << " (dim " << spec.dim() << ", connectivity "
          << spec.connectivity() << ")\n";
    table << "n = " << n << "\n";
    std::ostringstream explanations;
    for (const auto f : flavors) {
        const auto iv = engine.compute(spec, n, f);
        if (as_json) {
            arr.push_back(bounds::Engine::to_json(iv));
        } else {
            table << iv.lower << " ≤ " << bounds::flavor_symbol(f, n) << " ≤ " << iv.upper
                  << "\n";
            if (explain) explanations << "\n" << bounds::Engine::explain(iv);
        }
    }
    if (as_json)
        std::cout << arr.dump(2) << "\n";
    else
        std::cout << table.str() << explanations.str();
    return 0;
}

int do_verify(const std::string& suite, int trials, std::uint64_t seed,
              const std::string& output) {
    std::vector<std::string> to_run;
    bool with_fixtures = false;
    if (suite == "all") {
        to_run = verify::suite_names();
        with_fixtures = true;
    } else if (suite == "fixtures") {
        with_fixtures = true;
    } else {
        to_run = {suite};
    }

    bool all_pass = true;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& name : to_run) {
        const auto r = verify::run_suite(name, trials, seed);
        all_pass = all_pass && r.pass;
        arr.push_back(verify::report_to_json(r));
    }
    if (with_fixtures) {
        nlohmann::json failures = nlohmann::json::array();
        const auto fixtures = verify::adversarial_fixtures();
        for (const auto& f : fixtures) {
            const auto outcome = verify::check_fixture(f);
            if (!outcome.ok) failures.push_back(outcome.name + ": " + outcome.message);
        }
        const bool ok = failures.empty();
        all_pass = all_pass && ok;
        arr.push_back({{"suite", "fixtures"},
                       {"trials", static_cast<int>(fixtures.size())},
                       {"pass", ok},
                       {"failures", failures}});
    }
    const std::string text = arr.dump(2) + "\n";
    write_output(output, text);
    if (!output.empty() && output != "-") std::cout << (all_pass ? "PASS" : "FAIL") << "\n";
    return all_pass ? 0 : 4;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"β-equivariant motion planning and symmetric-square cohomology toolkit"};
    app.require_subcommand(1);

    std::string plan_input;
    std::string plan_output;
    auto* plan_cmd = app.add_subcommand("plan", "plan a sphere motion through waypoints");
    plan_cmd->add_option("input", plan_input, "waypoint JSON file, or - for stdin")->required();
    plan_cmd->add_option("-o,--output", plan_output, "write the plan JSON here (default stdout)");

    std::string sp2_space;
    bool sp2_json = false;
    auto* sp2_cmd = app.add_subcommand("sp2", "mod-2 cohomology of the symmetric square");
    sp2_cmd->add_option("space", sp2_space, "space expression, e.g. RP(4) or Product(S(2),S(2))")
        ->required();
    sp2_cmd->add_flag("--json", sp2_json, "emit the full ring as JSON");

    std::string bounds_space;
    int bounds_n = 2;
    std::string bounds_flavor = "all";
    std::string bounds_registry;
    bool bounds_explain = false;
    bool bounds_json = false;
    auto* bounds_cmd = app.add_subcommand("bounds", "certified TC interval derivation");
    bounds_cmd->add_option("space", bounds_space, "space expression")->required();
    bounds_cmd->add_option("-n,--n", bounds_n, "number of waypoint stages (default 2)");
    bounds_cmd->add_option("--flavor", bounds_flavor, "tc, beta, sigma or all (default all)");
    bounds_cmd->add_option("--registry", bounds_registry, "override the exact-value registry JSON");
    bounds_cmd->add_flag("--explain", bounds_explain, "print every rule application");
    bounds_cmd->add_flag("--json", bounds_json, "emit intervals as JSON");

    std::string verify_suite = "all";
    int verify_trials = 1000;
    std::uint64_t verify_seed = 0;
    std::string verify_output;
    auto* verify_cmd = app.add_subcommand("verify", "randomized property suites and fixtures");
    verify_cmd->add_option("--suite", verify_suite,
                           "suite name, fixtures, or all (default all)");
    verify_cmd->add_option("--trials", verify_trials, "trials per suite (default 1000)");
    auto* seed_opt =
        verify_cmd->add_option("--seed", verify_seed, "RNG seed (default TCB_SEED or 42)");
    verify_cmd->add_option("-o,--output", verify_output, "write the report JSON here");

    try {
        std::vector<const char*> argv;
        argv.push_back("tcb");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (plan_cmd->parsed()) return do_plan(plan_input, plan_output);
        if (sp2_cmd->parsed()) return do_sp2(sp2_space, sp2_json);
        if (bounds_cmd->parsed())
            return do_bounds(bounds_space, bounds_n, bounds_flavor, bounds_registry,
                             bounds_explain, bounds_json);
        if (verify_cmd->parsed()) {
            if (seed_opt->count() == 0) verify_seed = env_default_seed();
            return do_verify(verify_suite, verify_trials, verify_seed, verify_output);
        }
    } catch (const Error& e) {
        const nlohmann::json err{{"error", error_code_name(e.code())}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        switch (e.code()) {
        case ErrorCode::ParseError:
        case ErrorCode::BadInput: return 2;
        default: return 3;
        }
    }
    return 0;
}

} // namespace tcb::cli
