#include "tcb/cohomology.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>

namespace tcb::mod2 {

namespace {

// Deterministic generator for sampled associativity checks.
struct SplitMix {
    std::uint64_t s;
    std::uint64_t next() {
        std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

} // namespace

bool binom_odd(long long j, long long k) {
    if (k < 0 || k > j) return false;
    return (j & k) == k;
}

GradedRing::GradedRing(std::vector<GradedBasisElement> basis,
                       std::vector<gf2::BitVec> mult_upper,
                       std::map<std::pair<int, int>, gf2::BitVec> sq, bool has_sq)
    : basis_(std::move(basis)), mult_(std::move(mult_upper)), sq_(std::move(sq)),
      has_sq_(has_sq), top_degree_(0) {
    if (basis_.empty() || basis_[0].degree != 0)
        fail(ErrorCode::BadInput, "ring basis must start with the unit in degree 0");
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (basis_[i].id != static_cast<int>(i))
            fail(ErrorCode::BadInput, "basis ids must be 0..B-1 in order");
        top_degree_ = std::max(top_degree_, basis_[i].degree);
    }
    std::size_t b = basis_.size();
    if (mult_.size() != b * (b + 1) / 2)
        fail(ErrorCode::BadInput, "multiplication table has the wrong shape");
}

std::size_t GradedRing::tri(int a, int b) const {
    if (a > b) std::swap(a, b);
    auto ua = static_cast<std::size_t>(a);
    auto ub = static_cast<std::size_t>(b);
    std::size_t n = basis_.size();
    return ua * n - ua * (ua - 1) / 2 + (ub - ua);
}

gf2::BitVec GradedRing::basis_vec(int id) const {
    gf2::BitVec v(basis_.size());
    v.set(static_cast<std::size_t>(id));
    return v;
}

const gf2::BitVec& GradedRing::mult_basis(int a, int b) const { return mult_[tri(a, b)]; }

gf2::BitVec GradedRing::mult(const gf2::BitVec& a, const gf2::BitVec& b) const {
    gf2::BitVec out(basis_.size());
    for (std::size_t i : a.ones())
        for (std::size_t j : b.ones())
            out.xor_with(mult_basis(static_cast<int>(i), static_cast<int>(j)));
    return out;
}

gf2::BitVec GradedRing::sq(int k, int id) const {
    if (!has_sq_) fail(ErrorCode::MissingSteenrod, "ring has no Steenrod table");
    if (k == 0) return basis_vec(id);
    auto it = sq_.find({k, id});
    if (it == sq_.end()) return zero();
    return it->second;
}

gf2::BitVec GradedRing::sq_class(int k, const gf2::BitVec& c) const {
    gf2::BitVec out(basis_.size());
    for (std::size_t i : c.ones()) out.xor_with(sq(k, static_cast<int>(i)));
    return out;
}

std::vector<int> GradedRing::poincare() const {
    std::vector<int> dims(static_cast<std::size_t>(top_degree_) + 1, 0);
    for (const auto& b : basis_) ++dims[static_cast<std::size_t>(b.degree)];
    return dims;
}

std::optional<int> GradedRing::degree_of(const gf2::BitVec& c) const {
    std::optional<int> deg;
    for (std::size_t i : c.ones()) {
        int d = basis_[i].degree;
        if (deg && *deg != d) return std::nullopt;
        deg = d;
    }
    return deg;
}

std::string GradedRing::class_name(const gf2::BitVec& c) const {
    std::string out;
    for (std::size_t i : c.ones()) {
        if (!out.empty()) out += " + ";
        out += basis_[i].name;
    }
    return out.empty() ? "0" : out;
}

namespace {

nlohmann::json label_to_json(const BasisLabel& l) {
    switch (l.kind) {
    case BasisLabel::Kind::Unit: return {{"kind", "Unit"}};
    case BasisLabel::Kind::Monomial: return {{"kind", "Monomial"}, {"exponents", l.exponents}};
    case BasisLabel::Kind::Phi: return {{"kind", "Phi"}, {"i", l.i}, {"j", l.j}};
    case BasisLabel::Kind::E: return {{"kind", "E"}, {"s", l.s}, {"i", l.i}};
    }
    return {};
}

} // namespace

nlohmann::json GradedRing::to_json() const {
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& b : basis_)
        basis.push_back({{"id", b.id},
                         {"degree", b.degree},
                         {"name", b.name},
                         {"label", label_to_json(b.label)}});
    nlohmann::json mult = nlohmann::json::array();
    for (int a = 0; a < size(); ++a)
        for (int b = a; b < size(); ++b) {
            const auto& v = mult_basis(a, b);
            if (!v.any()) continue;
            std::vector<std::size_t> ids = v.ones();
            mult.push_back({a, b, ids});
        }
    nlohmann::json sq = nlohmann::json::array();
    for (const auto& [key, v] : sq_) {
        if (!v.any()) continue;
        std::vector<std::size_t> ids = v.ones();
        sq.push_back({key.first, key.second, ids});
    }
    return {{"unit_id", 0},
            {"top_degree", top_degree_},
            {"basis", std::move(basis)},
            {"mult", std::move(mult)},
            {"sq", std::move(sq)},
            {"has_sq", has_sq_}};
}

// --- constructors -----------------------------------------------------------

GradedRing ring_of_sphere(int m) {
    if (m < 1) fail(ErrorCode::BadInput, "sphere dimension must be >= 1");
    std::vector<GradedBasisElement> basis(2);
    basis[0] = {0, 0, {BasisLabel::Kind::Unit, {0}, 0, 0, 0}, "1"};
    basis[1] = {1, m, {BasisLabel::Kind::Monomial, {1}, 0, 0, 0}, "e" + std::to_string(m)};
    std::vector<gf2::BitVec> mult(3, gf2::BitVec(2));
    mult[0].set(0); // 1*1
    mult[1].set(1); // 1*e
    // e*e = 0
    return GradedRing(std::move(basis), std::move(mult), {}, true);
}

GradedRing ring_of_rp(int m) {
    if (m < 1) fail(ErrorCode::BadInput, "projective space dimension must be >= 1");
    auto b = static_cast<std::size_t>(m) + 1;
    std::vector<GradedBasisElement> basis(b);
    for (std::size_t jx = 0; jx < b; ++jx) {
        std::string name = jx == 0 ? "1" : (jx == 1 ? "x" : "x^" + std::to_string(jx));
        basis[jx] = {static_cast<int>(jx), static_cast<int>(jx),
                     {BasisLabel::Kind::Monomial, {static_cast<int>(jx)}, 0, 0, 0}, name};
    }
    std::vector<gf2::BitVec> mult(b * (b + 1) / 2, gf2::BitVec(b));
    std::size_t idx = 0;
    for (std::size_t p = 0; p < b; ++p)
        for (std::size_t q = p; q < b; ++q, ++idx)
            if (p + q < b) mult[idx].set(p + q);
    std::map<std::pair<int, int>, gf2::BitVec> sq;
    for (int jx = 1; jx <= m; ++jx)
        for (int k = 1; k <= jx && jx + k <= m; ++k)
            if (binom_odd(jx, k)) {
                gf2::BitVec v(b);
                v.set(static_cast<std::size_t>(jx + k));
                sq[{k, jx}] = std::move(v);
            }
    return GradedRing(std::move(basis), std::move(mult), std::move(sq), true);
}

GradedRing kunneth(const GradedRing& a, const GradedRing& b) {
    if (!a.has_sq() || !b.has_sq())
        fail(ErrorCode::MissingSteenrod, "kunneth needs Steenrod tables on both factors");
    int ba = a.size(), bb = b.size();
    auto nb = static_cast<std::size_t>(ba) * static_cast<std::size_t>(bb);
    auto pair_id = [bb](int ia, int ib) {
        return static_cast<std::size_t>(ia) * static_cast<std::size_t>(bb) +
               static_cast<std::size_t>(ib);
    };

    std::vector<GradedBasisElement> basis(nb);
    for (int ia = 0; ia < ba; ++ia)
        for (int ib = 0; ib < bb; ++ib) {
            const auto& ea = a.element(ia);
            const auto& eb = b.element(ib);
            BasisLabel label;
            if (ea.label.kind == BasisLabel::Kind::Unit &&
                eb.label.kind == BasisLabel::Kind::Unit) {
                label.kind = BasisLabel::Kind::Unit;
                label.exponents.assign(ea.label.exponents.size() + eb.label.exponents.size(), 0);
            } else {
                label.kind = BasisLabel::Kind::Monomial;
                label.exponents = ea.label.exponents;
                label.exponents.insert(label.exponents.end(), eb.label.exponents.begin(),
                                       eb.label.exponents.end());
            }
            std::string name = ea.name == "1" ? eb.name
                               : eb.name == "1" ? ea.name
                                                : ea.name + "(x)" + eb.name;
            auto id = pair_id(ia, ib);
            basis[id] = {static_cast<int>(id), ea.degree + eb.degree, std::move(label),
                         std::move(name)};
        }

    auto tensor = [&](const gf2::BitVec& u, const gf2::BitVec& w) {
        gf2::BitVec out(nb);
        for (std::size_t p : u.ones())
            for (std::size_t q : w.ones())
                out.set(pair_id(static_cast<int>(p), static_cast<int>(q)));
        return out;
    };

    std::vector<gf2::BitVec> mult(nb * (nb + 1) / 2, gf2::BitVec(nb));
    for (std::size_t s = 0; s < nb; ++s)
        for (std::size_t t = s; t < nb; ++t) {
            int ia = static_cast<int>(s) / bb, ib = static_cast<int>(s) % bb;
            int ja = static_cast<int>(t) / bb, jb = static_cast<int>(t) % bb;
            auto prod = tensor(a.mult_basis(ia, ja), b.mult_basis(ib, jb));
            std::size_t ua = s, ub2 = t;
            std::size_t idx = ua * nb - ua * (ua - 1) / 2 + (ub2 - ua);
            mult[idx] = std::move(prod);
        }

    std::map<std::pair<int, int>, gf2::BitVec> sq;
    for (std::size_t s = 0; s < nb; ++s) {
        int ia = static_cast<int>(s) / bb, ib = static_cast<int>(s) % bb;
        int deg = basis[s].degree;
        for (int k = 1; k <= deg; ++k) {
            gf2::BitVec acc(nb);
            for (int i = 0; i <= k; ++i) {
                auto left = a.sq(i, ia);
                if (!left.any()) continue;
                auto right = b.sq(k - i, ib);
                if (!right.any()) continue;
                acc.xor_with(tensor(left, right));
            }
            if (acc.any()) sq[{k, static_cast<int>(s)}] = std::move(acc);
        }
    }
    return GradedRing(std::move(basis), std::move(mult), std::move(sq), true);
}

GradedRing nakaoka_sp2(const GradedRing& r) {
    if (!r.has_sq())
        fail(ErrorCode::MissingSteenrod, "symmetric-square construction needs Steenrod data");
    int br = r.size();

    std::vector<GradedBasisElement> basis;
    basis.push_back({0, 0, {BasisLabel::Kind::Unit, {}, 0, 0, 0}, "1"});
    std::map<std::pair<int, int>, int> phi_id, e_id;
    for (int i = 0; i < br; ++i)
        for (int j = i + 1; j < br; ++j) {
            int id = static_cast<int>(basis.size());
            phi_id[{i, j}] = id;
            basis.push_back({id, r.element(i).degree + r.element(j).degree,
                             {BasisLabel::Kind::Phi, {}, i, j, 0},
                             "phi(" + r.element(i).name + "(x)" + r.element(j).name + ")"});
        }
    for (int i = 0; i < br; ++i) {
        int d = r.element(i).degree;
        for (int s = 2; s <= d; ++s) {
            int id = static_cast<int>(basis.size());
            e_id[{s, i}] = id;
            basis.push_back({id, d + s,
                             {BasisLabel::Kind::E, {}, i, 0, s},
                             "E_" + std::to_string(s) + "(" + r.element(i).name + ")"});
        }
    }
    auto nb = basis.size();

    // phi(b_a (x) b_b) as a class of the output ring; a == b triggers the
    // diagonal reduction through the Steenrod squares of the input.
    auto phi_hat = [&](int p, int q) {
        gf2::BitVec out(nb);
        if (p != q) {
            out.set(static_cast<std::size_t>(phi_id.at({std::min(p, q), std::max(p, q)})));
            return out;
        }
        int d = r.element(p).degree;
        for (int s = 2; s <= d; ++s) {
            auto img = r.sq(d - s, p);
            for (std::size_t k : img.ones())
                out.flip(static_cast<std::size_t>(e_id.at({s, static_cast<int>(k)})));
        }
        return out;
    };
    auto phi_bilinear = [&](const gf2::BitVec& c, const gf2::BitVec& d) {
        gf2::BitVec out(nb);
        for (std::size_t p : c.ones())
            for (std::size_t q : d.ones())
                out.xor_with(phi_hat(static_cast<int>(p), static_cast<int>(q)));
        return out;
    };

    std::vector<gf2::BitVec> mult(nb * (nb + 1) / 2, gf2::BitVec(nb));
    auto tri = [nb](std::size_t s, std::size_t t) {
        return s * nb - s * (s - 1) / 2 + (t - s);
    };
    for (std::size_t t = 0; t < nb; ++t) { // unit row
        mult[tri(0, t)] = gf2::BitVec(nb);
        mult[tri(0, t)].set(t);
    }
    for (std::size_t s = 1; s < nb; ++s) {
        const auto& ls = basis[s].label;
        for (std::size_t t = s; t < nb; ++t) {
            const auto& lt = basis[t].label;
            if (ls.kind != BasisLabel::Kind::Phi || lt.kind != BasisLabel::Kind::Phi)
                continue; // any E factor annihilates
            auto term1 = phi_bilinear(r.mult_basis(ls.i, lt.i), r.mult_basis(ls.j, lt.j));
            term1.xor_with(phi_bilinear(r.mult_basis(ls.i, lt.j), r.mult_basis(ls.j, lt.i)));
            mult[tri(s, t)] = std::move(term1);
        }
    }
    return GradedRing(std::move(basis), std::move(mult), {}, false);
}

// --- cup-lengths ------------------------------------------------------------

CupWitness cup_length_witness(const GradedRing& r) {
    std::vector<int> positive;
    for (const auto& el : r.basis())
        if (el.degree > 0) positive.push_back(el.id);
    if (positive.empty()) return {};

    struct Row {
        std::vector<int> chain;
        gf2::BitVec vec;
    };
    std::vector<Row> level;
    {
        gf2::Echelon ech;
        for (int id : positive) {
            auto v = r.basis_vec(id);
            if (ech.add(v)) level.push_back({{id}, r.basis_vec(id)});
        }
    }
    CupWitness best;
    int k = 1;
    while (!level.empty()) {
        best = {k, level.front().chain};
        std::vector<Row> next;
        gf2::Echelon ech;
        for (const auto& row : level)
            for (int id : positive) {
                auto prod = r.mult(row.vec, r.basis_vec(id));
                if (!prod.any()) continue;
                auto probe = prod;
                if (ech.add(std::move(probe))) {
                    auto chain = row.chain;
                    chain.push_back(id);
                    next.push_back({std::move(chain), std::move(prod)});
                }
            }
        level = std::move(next);
        ++k;
    }
    return best;
}

int cup_length(const GradedRing& r) { return cup_length_witness(r).length; }

int zero_divisor_cup_length(const GradedRing& r, int n) {
    if (n < 1) fail(ErrorCode::BadInput, "tensor exponent must be >= 1");
    if (n == 1) return 0;

    GradedRing tensor = kunneth(r, r);
    std::vector<gf2::BitVec> diag;
    diag.reserve(static_cast<std::size_t>(tensor.size()));
    for (int s = 0; s < r.size(); ++s)
        for (int t = 0; t < r.size(); ++t) diag.push_back(r.mult_basis(s, t));
    for (int step = 3; step <= n; ++step) {
        GradedRing bigger = kunneth(tensor, r);
        std::vector<gf2::BitVec> d2;
        d2.reserve(static_cast<std::size_t>(bigger.size()));
        for (int t = 0; t < tensor.size(); ++t)
            for (int i = 0; i < r.size(); ++i)
                d2.push_back(r.mult(diag[static_cast<std::size_t>(t)], r.basis_vec(i)));
        tensor = std::move(bigger);
        diag = std::move(d2);
    }

    auto bt = static_cast<std::size_t>(tensor.size());
    std::vector<gf2::BitVec> kernel = gf2::nullspace(diag, bt);
    if (kernel.empty()) return 0;

    // Multiplication by each kernel generator as a column matrix over the
    // tensor basis, so level iteration is matrix-vector work instead of
    // quadratic class products.
    std::vector<std::vector<gf2::BitVec>> mulz;
    mulz.reserve(kernel.size());
    for (const auto& z : kernel) {
        std::vector<gf2::BitVec> cols(bt, gf2::BitVec(bt));
        auto zo = z.ones();
        for (std::size_t b = 0; b < bt; ++b)
            for (std::size_t i : zo)
                cols[b].xor_with(tensor.mult_basis(static_cast<int>(i), static_cast<int>(b)));
        mulz.push_back(std::move(cols));
    }

    std::vector<gf2::BitVec> level = kernel;
    int k = 1;
    for (;;) {
        std::vector<gf2::BitVec> next;
        gf2::Echelon ech;
        for (const auto& row : level) {
            auto ro = row.ones();
            for (const auto& cols : mulz) {
                gf2::BitVec acc(bt);
                for (std::size_t j : ro) acc.xor_with(cols[j]);
                if (!acc.any()) continue;
                auto probe = acc;
                if (ech.add(std::move(probe))) next.push_back(std::move(acc));
            }
        }
        if (next.empty()) return k;
        level = std::move(next);
        ++k;
    }
}

// --- validation -------------------------------------------------------------

RingCheckReport verify_ring(const GradedRing& r, bool full_assoc) {
    RingCheckReport rep;
    auto flag = [&rep](std::string msg) {
        rep.ok = false;
        rep.problems.push_back(std::move(msg));
    };
    int b = r.size();

    if (r.element(0).degree != 0) flag("unit degree nonzero");
    for (int t = 0; t < b; ++t)
        if (!(r.mult_basis(0, t) == r.basis_vec(t))) {
            flag("unit row broken at " + std::to_string(t));
            break;
        }

    for (int s = 0; s < b; ++s)
        for (int t = s; t < b; ++t) {
            int want = r.element(s).degree + r.element(t).degree;
            for (std::size_t i : r.mult_basis(s, t).ones())
                if (r.element(static_cast<int>(i)).degree != want) {
                    flag("product " + std::to_string(s) + "*" + std::to_string(t) +
                         " breaks grading");
                    t = b;
                    s = b;
                    break;
                }
        }

    auto assoc_check = [&](int i, int j, int k) {
        auto left = r.mult(r.mult_basis(i, j), r.basis_vec(k));
        auto right = r.mult(r.basis_vec(i), r.mult_basis(j, k));
        if (!(left == right))
            flag("associativity fails at (" + std::to_string(i) + "," + std::to_string(j) +
                 "," + std::to_string(k) + ")");
    };
    if (full_assoc) {
        for (int i = 0; i < b && rep.ok; ++i)
            for (int j = 0; j < b && rep.ok; ++j)
                for (int k = 0; k < b && rep.ok; ++k) assoc_check(i, j, k);
    } else {
        SplitMix g{0x5EEDCAFEF00DULL};
        for (int trial = 0; trial < 200 && rep.ok; ++trial) {
            int i = static_cast<int>(g.next() % static_cast<std::uint64_t>(b));
            int j = static_cast<int>(g.next() % static_cast<std::uint64_t>(b));
            int k = static_cast<int>(g.next() % static_cast<std::uint64_t>(b));
            assoc_check(i, j, k);
        }
    }

    if (r.has_sq()) {
        for (int i = 0; i < b; ++i) {
            if (!(r.sq(0, i) == r.basis_vec(i))) flag("Sq^0 not identity");
            int d = r.element(i).degree;
            if (d > 0 && !(r.sq(d, i) == r.mult_basis(i, i)))
                flag("top square of " + r.element(i).name + " is not its cup square");
        }
        for (const auto& [key, v] : r.sq_table()) {
            int want = r.element(key.second).degree + key.first;
            for (std::size_t i : v.ones())
                if (r.element(static_cast<int>(i)).degree != want) {
                    flag("Sq table entry breaks grading");
                    break;
                }
        }
    }
    return rep;
}

} // namespace tcb::mod2
