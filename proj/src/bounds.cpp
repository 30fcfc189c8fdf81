#include "tcb/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "tcb/error.hpp"

namespace tcb::bounds {

// Defined in the generated registry_default.cpp (embeds data/registry.json).
const char* default_registry_json();

namespace {

constexpr int kUnbounded = std::numeric_limits<int>::max();

constexpr const char* kCitChain =
    "TC_n(X) ≤ TC^β_n(X) ≤ TC^Σ_n(X): each equivariance constraint only shrinks the admissible "
    "covers";
constexpr const char* kCitU1 = "TC^Σ_n(X) ≤ n·dim(X) + 1 for finite-dimensional metrizable X";
constexpr const char* kCitU2 =
    "TC^β_n(X) and TC^Σ_n(X) are < (n·dim X + 1)/(q + 1) + 1 when X is q-connected";
constexpr const char* kCitU3 =
    "TC^β_n(X) ≤ TC^β_{n+1}(X) for even n: insert a basepoint stage and reuse the odd-stage "
    "planner";
constexpr const char* kCitPlanner =
    "on odd-dimensional spheres with n odd, n explicit β-equivariant charts cover the n-tuples";
constexpr const char* kCitL3 =
    "TC^Σ_2(X^l) ≤ TC^β_{2l}(X): a β-planner on 2l-tuples in X restricts to a symmetric planner "
    "on pairs in X^l";
constexpr const char* kCitL4a = "TC^β_{2k}(X) ≥ cl H*(SP²(X^k); F₂) + 1";
constexpr const char* kCitL4b = "TC^Σ_{2k}(X) ≥ k·cl H*(SP²(X); F₂) + 1";
constexpr const char* kCitL0 =
    "TC_n(X) ≥ zcl_n H*(X; F₂) + 1: the n-fold zero-divisor cup-length bound";

struct MatchVars {
    int n = 0;
    int m = 0;
    int g = 0;
    int l = 1;
};

/// Evaluates the small registry value grammar: sums of products of integers
/// and the variables n, m, g, l.
int eval_value(const std::string& s, const MatchVars& vars) {
    struct Ev {
        const std::string& s;
        const MatchVars& v;
        std::size_t i = 0;

        void skip() {
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        }
        [[noreturn]] void bad() const {
            fail(ErrorCode::ParseError,
                 "bad registry value expression '" + s + "' near position " + std::to_string(i));
        }
        int atom() {
            skip();
            if (i >= s.size()) bad();
            const char c = s[i];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                int out = 0;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                    out = out * 10 + (s[i++] - '0');
                return out;
            }
            ++i;
            switch (c) {
            case 'n': return v.n;
            case 'm': return v.m;
            case 'g': return v.g;
            case 'l': return v.l;
            default: --i; bad();
            }
        }
        int term() {
            int out = atom();
            skip();
            while (i < s.size() && s[i] == '*') {
                ++i;
                out *= atom();
                skip();
            }
            return out;
        }
        int expr() {
            int out = term();
            skip();
            while (i < s.size() && s[i] == '+') {
                ++i;
                out += term();
                skip();
            }
            return out;
        }
    };
    Ev ev{s, vars};
    const int out = ev.expr();
    ev.skip();
    if (ev.i != s.size()) ev.bad();
    return out;
}

std::optional<MatchVars> match_pattern(const std::string& pattern, const SpaceSpec& spec) {
    using K = SpaceSpec::Kind;
    MatchVars v;
    if (pattern == "Sphere") {
        if (spec.kind != K::Sphere) return std::nullopt;
        v.m = spec.m;
        return v;
    }
    if (pattern == "RP") {
        if (spec.kind != K::RP) return std::nullopt;
        v.m = spec.m;
        return v;
    }
    if (pattern == "Surface") {
        if (spec.kind != K::Surface) return std::nullopt;
        v.g = spec.g;
        return v;
    }
    if (pattern == "ConnSumRP") {
        if (spec.kind != K::ConnSumRP) return std::nullopt;
        v.g = spec.g;
        v.m = spec.m;
        return v;
    }
    if (pattern == "PowerEvenSphere") {
        const auto at = spec.atoms();
        if (at.size() < 2) return std::nullopt;
        for (const auto& a : at)
            if (a.kind != K::Sphere || a.m != at.front().m) return std::nullopt;
        v.m = at.front().m;
        v.l = static_cast<int>(at.size());
        return v;
    }
    fail(ErrorCode::BadInput, "unknown registry pattern '" + pattern + "'");
}

bool constraint_holds(const std::string& c, int n, const MatchVars& v, const SpaceSpec& spec) {
    if (c == "m_even") return v.m % 2 == 0;
    if (c == "m_odd") return v.m % 2 == 1;
    if (c == "n_gt_m") return n > v.m;
    if (c == "n_ge_2") return n >= 2;
    if (c == "n_eq_2") return n == 2;
    if (c == "m_eq_2") return v.m == 2;
    if (c == "m_ge_2") return v.m >= 2;
    if (c == "g_ge_2") return v.g >= 2;
    if (c == "l_ge_2") return v.l >= 2;
    if (c == "orientable") return spec.kind == SpaceSpec::Kind::Surface && spec.orientable;
    if (c == "nonorientable") return spec.kind == SpaceSpec::Kind::Surface && !spec.orientable;
    fail(ErrorCode::BadInput, "unknown registry constraint '" + c + "'");
}

/// Combined mod-2 basis size of the atom rings, or -1 when some atom has no
/// ring model. Cheap structural estimate; never builds the ring.
long long structural_ring_size(const SpaceSpec& spec) {
    long long total = 1;
    for (const auto& a : spec.atoms()) {
        long long s = -1;
        if (a.kind == SpaceSpec::Kind::Sphere) s = 2;
        if (a.kind == SpaceSpec::Kind::RP) s = a.m + 1;
        if (s < 0) return -1;
        total *= s;
        if (total > 1000000) return total;
    }
    return total;
}

/// Ways to write the atom multiset of X as B^l with l >= 2.
std::vector<std::pair<SpaceSpec, int>> power_splits(const SpaceSpec& spec) {
    auto at = spec.atoms();
    std::sort(at.begin(), at.end(),
              [](const SpaceSpec& a, const SpaceSpec& b) { return a.str() < b.str(); });
    std::map<std::string, std::pair<SpaceSpec, int>> counts;
    for (const auto& a : at) {
        auto [it, fresh] = counts.emplace(a.str(), std::make_pair(a, 0));
        ++it->second.second;
    }
    const int t = static_cast<int>(at.size());
    std::vector<std::pair<SpaceSpec, int>> out;
    for (int l = 2; l <= t; ++l) {
        if (t % l != 0) continue;
        bool ok = true;
        for (const auto& [name, ac] : counts)
            if (ac.second % l != 0) { ok = false; break; }
        if (!ok) continue;
        std::vector<SpaceSpec> base;
        for (const auto& [name, ac] : counts)
            for (int i = 0; i < ac.second / l; ++i) base.push_back(ac.first);
        SpaceSpec b = base.size() == 1 ? base.front() : SpaceSpec::product(base);
        out.emplace_back(std::move(b), l);
    }
    return out;
}

Flavor flavor_at(int i) { return static_cast<Flavor>(i); }

} // namespace

std::string flavor_name(Flavor f) {
    switch (f) {
    case Flavor::TC: return "TC";
    case Flavor::TCbeta: return "TCbeta";
    case Flavor::TCsigma: return "TCsigma";
    }
    return "TC";
}

std::string flavor_symbol(Flavor f, int n) {
    switch (f) {
    case Flavor::TC: return "TC_" + std::to_string(n);
    case Flavor::TCbeta: return "TC^β_" + std::to_string(n);
    case Flavor::TCsigma: return "TC^Σ_" + std::to_string(n);
    }
    return "TC_" + std::to_string(n);
}

Flavor parse_flavor(const std::string& text) {
    std::string t;
    for (char c : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (t == "tc") return Flavor::TC;
    if (t == "beta" || t == "tcbeta" || t == "tc^beta") return Flavor::TCbeta;
    if (t == "sigma" || t == "tcsigma" || t == "tc^sigma") return Flavor::TCsigma;
    fail(ErrorCode::ParseError, "unknown flavor '" + text + "' (want tc, beta or sigma)");
}

Registry Registry::builtin() {
    return from_json(nlohmann::json::parse(default_registry_json()));
}

Registry Registry::from_json(const nlohmann::json& j) {
    Registry reg;
    try {
        const nlohmann::json& rows = j.is_array() ? j : j.at("rows");
        for (const auto& row : rows) {
            RegistryRow r;
            r.pattern = row.at("pattern").get<std::string>();
            for (const auto& c : row.at("constraints"))
                r.constraints.push_back(c.get<std::string>());
            for (const auto& f : row.at("flavors"))
                r.flavors.push_back(parse_flavor(f.get<std::string>()));
            r.value = row.at("value").get<std::string>();
            r.citation = row.at("citation").get<std::string>();
            // validate pattern, expression and constraint tokens eagerly
            (void)match_pattern(r.pattern, SpaceSpec::surface(2));
            MatchVars probe{2, 2, 2, 2};
            (void)eval_value(r.value, probe);
            for (const auto& c : r.constraints)
                (void)constraint_holds(c, 2, probe, SpaceSpec::surface(2));
            reg.rows_.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::BadInput, std::string("malformed registry row: ") + e.what());
    }
    return reg;
}

Registry Registry::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::BadInput, "cannot read registry file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, "registry file '" + path + "': " + e.what());
    }
    return from_json(j);
}

std::optional<Registry::Hit> Registry::lookup(const SpaceSpec& spec, int n, Flavor f) const {
    for (const auto& row : rows_) {
        if (std::find(row.flavors.begin(), row.flavors.end(), f) == row.flavors.end()) continue;
        const auto vars = match_pattern(row.pattern, spec);
        if (!vars) continue;
        MatchVars v = *vars;
        v.n = n;
        bool ok = true;
        for (const auto& c : row.constraints)
            if (!constraint_holds(c, n, v, spec)) { ok = false; break; }
        if (!ok) continue;
        return Hit{eval_value(row.value, v), row.citation};
    }
    return std::nullopt;
}

Engine::Engine() : Engine(Registry::builtin()) {}

Engine::Engine(Registry registry, EngineOptions options)
    : registry_(std::move(registry)), opt_(options) {}

std::optional<Registry::Hit> Engine::registry_lookup(const SpaceSpec& spec, int n,
                                                     Flavor f) const {
    return registry_.lookup(spec, n, f);
}

mod2::GradedRing Engine::ring_for(const SpaceSpec& spec) {
    using K = SpaceSpec::Kind;
    switch (spec.kind) {
    case K::Sphere: return mod2::ring_of_sphere(spec.m);
    case K::RP: return mod2::ring_of_rp(spec.m);
    case K::Product:
    case K::Power: {
        auto at = spec.atoms();
        std::sort(at.begin(), at.end(),
                  [](const SpaceSpec& a, const SpaceSpec& b) { return a.str() < b.str(); });
        mod2::GradedRing ring = ring_for(at.front());
        for (std::size_t i = 1; i < at.size(); ++i)
            ring = mod2::kunneth(ring, ring_for(at[i]));
        return ring;
    }
    default: fail(ErrorCode::UnsupportedSpace, "no mod-2 ring model for " + spec.str());
    }
}

std::optional<int> Engine::cup_length_sp2(const SpaceSpec& spec) const {
    if (!spec.has_ring()) return std::nullopt;
    const auto key = spec.canonical_key();
    if (auto it = sp2_cl_cache_.find(key); it != sp2_cl_cache_.end()) return it->second;
    const long long b = structural_ring_size(spec);
    if (b < 0 || b > opt_.ring_basis_cap) return std::nullopt;
    const auto r = ring_for(spec);
    long long sp2 = 1 + b * (b - 1) / 2;
    for (int id = 1; id < r.size(); ++id)
        sp2 += std::max(0, r.element(id).degree - 1);
    if (sp2 > opt_.sp2_basis_cap) return std::nullopt;
    const int cl = mod2::cup_length(mod2::nakaoka_sp2(r));
    sp2_cl_cache_.emplace(key, cl);
    return cl;
}

BoundInterval Engine::compute(const SpaceSpec& spec, int n, Flavor flavor) const {
    if (n < 2) fail(ErrorCode::BadInput, "bounds need n >= 2, got n = " + std::to_string(n));

    struct Node {
        int lower = 1;
        int upper = kUnbounded;
        std::vector<RuleApplication> der;
    };
    struct Site {
        SpaceSpec spec;
        int n = 2;
        Node nodes[3];
    };
    using SiteKey = std::pair<std::string, int>;

    auto site_key = [](const SpaceSpec& s, int nn) { return SiteKey{s.canonical_key(), nn}; };

    // Build the finite cluster of (space, n) sites the inequalities connect.
    std::map<SiteKey, Site> sites;
    std::set<std::pair<SiteKey, SiteKey>> l3_edges; // sigma@(B^l, 2)  <=  beta@(B, 2l)
    std::vector<std::pair<SpaceSpec, int>> work{{spec, n}};
    while (!work.empty()) {
        auto [X, nn] = work.back();
        work.pop_back();
        const auto key = site_key(X, nn);
        if (sites.count(key)) continue;
        if (sites.size() >= 500) fail(ErrorCode::BadInput, "bound cluster exploded; refusing");
        Site st;
        st.spec = X;
        st.n = nn;
        sites.emplace(key, std::move(st));
        if (nn % 2 == 0) {
            work.emplace_back(X, nn + 1); // U3 partner
            auto Y = X.power(nn / 2);     // L3 partner, l = n/2 (l = 1 ties the flavors at n = 2)
            l3_edges.insert({site_key(Y, 2), key});
            work.emplace_back(std::move(Y), 2);
        }
        if (nn == 2) {
            for (auto& [B, l] : power_splits(X)) {
                l3_edges.insert({key, site_key(B, 2 * l)});
                work.emplace_back(std::move(B), 2 * l);
            }
        }
    }

    const auto zcl_of = [&](const SpaceSpec& X, int nn) -> std::optional<int> {
        if (!X.has_ring()) return std::nullopt;
        const long long b = structural_ring_size(X);
        if (b < 0 || b > opt_.ring_basis_cap) return std::nullopt;
        long long tensor = 1;
        for (int i = 0; i < nn; ++i) {
            tensor *= b;
            if (tensor > opt_.tensor_basis_cap) return std::nullopt;
        }
        const auto key = std::make_pair(X.canonical_key(), nn);
        if (auto it = zcl_cache_.find(key); it != zcl_cache_.end()) return it->second;
        const int z = mod2::zero_divisor_cup_length(ring_for(X), nn);
        zcl_cache_.emplace(key, z);
        return z;
    };

    bool changed = false;
    const auto lower_to = [&](Node& nd, int v, const char* rule, const std::string& cit,
                              const std::string& detail) {
        if (v <= nd.lower) return;
        if (v > nd.upper)
            fail(ErrorCode::RegistryConflict,
                 "inconsistent bounds: lower " + std::to_string(v) + " above upper " +
                     std::to_string(nd.upper) + " via " + rule + " (" + detail + ")");
        nd.lower = v;
        nd.der.push_back({rule, cit, detail, "lower", v});
        changed = true;
    };
    const auto upper_to = [&](Node& nd, int v, const char* rule, const std::string& cit,
                              const std::string& detail) {
        if (v >= nd.upper) return;
        if (v < nd.lower)
            fail(ErrorCode::RegistryConflict,
                 "inconsistent bounds: upper " + std::to_string(v) + " below lower " +
                     std::to_string(nd.lower) + " via " + rule + " (" + detail + ")");
        nd.upper = v;
        nd.der.push_back({rule, cit, detail, "upper", v});
        changed = true;
    };
    const auto exact_to = [&](Node& nd, int v, const std::string& cit,
                              const std::string& detail) {
        if (v < nd.lower || (nd.upper != kUnbounded && v > nd.upper))
            fail(ErrorCode::RegistryConflict,
                 "registry value " + std::to_string(v) + " conflicts with derived interval [" +
                     std::to_string(nd.lower) + ", " +
                     (nd.upper == kUnbounded ? std::string("inf") : std::to_string(nd.upper)) +
                     "] for " + detail);
        if (v > nd.lower || v < nd.upper) {
            nd.lower = v;
            nd.upper = v;
            nd.der.push_back({"REGISTRY", cit, detail, "exact", v});
            changed = true;
        }
    };

    int sweeps = 0;
    do {
        changed = false;
        if (++sweeps > 200) fail(ErrorCode::BadInput, "bounds engine failed to stabilize");
        for (auto& [key, st] : sites) {
            const SpaceSpec& X = st.spec;
            const int nn = st.n;
            const int d = X.dim();
            const int q = X.connectivity();
            const std::string xs = X.str();
            Node& tc = st.nodes[0];
            Node& be = st.nodes[1];
            Node& si = st.nodes[2];

            for (int fi = 0; fi < 3; ++fi) {
                if (auto hit = registry_.lookup(X, nn, flavor_at(fi)))
                    exact_to(st.nodes[fi], hit->value,
                             hit->citation,
                             flavor_symbol(flavor_at(fi), nn) + "(" + xs + ") = " +
                                 std::to_string(hit->value));
            }

            {
                std::ostringstream det;
                det << nn << "*" << d << " + 1 = " << nn * d + 1;
                upper_to(si, nn * d + 1, "U1", kCitU1, det.str());
            }
            {
                const int num = nn * d + 1;
                const int den = q + 1;
                const int u2 = num % den == 0 ? num / den : num / den + 1;
                std::ostringstream det;
                det << "q = " << q << ", strict bound " << num << "/" << den
                    << " + 1 gives <= " << u2;
                upper_to(be, u2, "U2", kCitU2, det.str());
                upper_to(si, u2, "U2", kCitU2, det.str());
            }
            if (X.kind == SpaceSpec::Kind::Sphere && X.m % 2 == 1 && nn % 2 == 1) {
                std::ostringstream det;
                det << "m = " << X.m << " and n = " << nn << " odd: " << nn << " charts";
                upper_to(be, nn, "PLANNER", kCitPlanner, det.str());
            }
            if (tc.lower < tc.upper) { // skip the matrix work once closed
                if (auto z = zcl_of(X, nn)) {
                    std::ostringstream det;
                    det << "zcl_" << nn << " = " << *z;
                    lower_to(tc, *z + 1, "L0", kCitL0, det.str());
                }
            }
            if (nn % 2 == 0) {
                const int k = nn / 2;
                if (auto cl = cup_length_sp2(X.power(k))) {
                    std::ostringstream det;
                    det << "k = " << k << ", cl SP^2(X^k) = " << *cl;
                    lower_to(be, *cl + 1, "L4a", kCitL4a, det.str());
                }
                if (auto cl = cup_length_sp2(X)) {
                    std::ostringstream det;
                    det << "k = " << k << ", cl SP^2(X) = " << *cl;
                    lower_to(si, k * *cl + 1, "L4b", kCitL4b, det.str());
                }
            }
        }

        for (auto& [key, st] : sites) {
            Node& tc = st.nodes[0];
            Node& be = st.nodes[1];
            Node& si = st.nodes[2];
            const int nn = st.n;
            lower_to(be, tc.lower, "CHAIN", kCitChain,
                     "from " + flavor_symbol(Flavor::TC, nn) + " >= " + std::to_string(tc.lower));
            lower_to(si, be.lower, "CHAIN", kCitChain,
                     "from " + flavor_symbol(Flavor::TCbeta, nn) + " >= " +
                         std::to_string(be.lower));
            if (si.upper != kUnbounded)
                upper_to(be, si.upper, "CHAIN", kCitChain,
                         "from " + flavor_symbol(Flavor::TCsigma, nn) + " <= " +
                             std::to_string(si.upper));
            if (be.upper != kUnbounded)
                upper_to(tc, be.upper, "CHAIN", kCitChain,
                         "from " + flavor_symbol(Flavor::TCbeta, nn) + " <= " +
                             std::to_string(be.upper));
        }

        for (auto& [key, st] : sites) {
            if (st.n % 2 != 0) continue;
            const Node& next = sites.at(SiteKey{key.first, st.n + 1}).nodes[1];
            if (next.upper != kUnbounded)
                upper_to(st.nodes[1], next.upper, "U3", kCitU3,
                         "from " + flavor_symbol(Flavor::TCbeta, st.n + 1) + "(" + st.spec.str() +
                             ") <= " + std::to_string(next.upper));
        }

        for (const auto& [skey, bkey] : l3_edges) {
            Site& ssite = sites.at(skey);
            Site& bsite = sites.at(bkey);
            Node& sig = ssite.nodes[2];
            Node& bet = bsite.nodes[1];
            if (bet.upper != kUnbounded)
                upper_to(sig, bet.upper, "L3", kCitL3,
                         "from " + flavor_symbol(Flavor::TCbeta, bsite.n) + "(" +
                             bsite.spec.str() + ") <= " + std::to_string(bet.upper));
            lower_to(bet, sig.lower, "L3", kCitL3,
                     "from " + flavor_symbol(Flavor::TCsigma, 2) + "(" + ssite.spec.str() +
                         ") >= " + std::to_string(sig.lower));
        }
    } while (changed);

    const Node& nd = sites.at(site_key(spec, n)).nodes[static_cast<int>(flavor)];
    BoundInterval out;
    out.space = spec.str();
    out.flavor = flavor;
    out.n = n;
    out.lower = nd.lower;
    out.upper = nd.upper;
    out.derivations = nd.der;
    return out;
}

std::string Engine::explain(const BoundInterval& iv) {
    std::ostringstream os;
    os << flavor_symbol(iv.flavor, iv.n) << "(" << iv.space << ") ∈ [" << iv.lower << ", "
       << iv.upper << "]\n";
    if (iv.lower == iv.upper)
        os << "status: exact\n";
    else
        os << "status: open gap of width " << iv.upper - iv.lower << "\n";
    os << "derivation:\n";
    bool lower_seen = false;
    for (const auto& d : iv.derivations)
        if (d.kind != "upper") lower_seen = true;
    if (!lower_seen)
        os << "  [lower] trivial: 1 (any nonempty cover takes at least one rule)\n";
    for (const auto& d : iv.derivations)
        os << "  [" << d.kind << "] " << d.rule << ": " << d.value << " | " << d.detail << " | "
           << d.citation << "\n";
    return os.str();
}

nlohmann::json Engine::to_json(const BoundInterval& iv) {
    nlohmann::json ds = nlohmann::json::array();
    for (const auto& d : iv.derivations)
        ds.push_back({{"rule", d.rule},
                      {"kind", d.kind},
                      {"value", d.value},
                      {"detail", d.detail},
                      {"citation", d.citation}});
    return {{"space", iv.space},
            {"flavor", flavor_name(iv.flavor)},
            {"n", iv.n},
            {"lower", iv.lower},
            {"upper", iv.upper},
            {"derivations", ds}};
}

} // namespace tcb::bounds
