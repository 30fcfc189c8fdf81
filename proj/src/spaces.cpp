#include "tcb/spaces.hpp"

#include <algorithm>
#include <cctype>

namespace tcb::bounds {

int SpaceSpec::dim() const {
    switch (kind) {
    case Kind::Sphere:
    case Kind::RP:
    case Kind::ConnSumRP: return m;
    case Kind::Surface: return 2;
    case Kind::Product: {
        int d = 0;
        for (const auto& f : factors) d += f.dim();
        return d;
    }
    case Kind::Power: return k * factors.front().dim();
    }
    return 0;
}

int SpaceSpec::connectivity() const {
    switch (kind) {
    case Kind::Sphere: return m - 1;
    case Kind::Product: {
        int q = factors.front().connectivity();
        for (const auto& f : factors) q = std::min(q, f.connectivity());
        return q;
    }
    case Kind::Power: return factors.front().connectivity();
    default: return 0;
    }
}

bool SpaceSpec::has_ring() const {
    switch (kind) {
    case Kind::Sphere:
    case Kind::RP: return true;
    case Kind::Product:
        return std::all_of(factors.begin(), factors.end(),
                           [](const SpaceSpec& f) { return f.has_ring(); });
    case Kind::Power: return factors.front().has_ring();
    default: return false;
    }
}

std::string SpaceSpec::str() const {
    switch (kind) {
    case Kind::Sphere: return "S(" + std::to_string(m) + ")";
    case Kind::RP: return "RP(" + std::to_string(m) + ")";
    case Kind::Surface:
        return "Surface(" + std::to_string(g) + (orientable ? ")" : ",nonorientable)");
    case Kind::ConnSumRP:
        return "ConnSumRP(" + std::to_string(g) + "," + std::to_string(m) + ")";
    case Kind::Product: {
        std::string out = "Product(";
        for (std::size_t i = 0; i < factors.size(); ++i)
            out += (i ? "," : "") + factors[i].str();
        return out + ")";
    }
    case Kind::Power:
        return "Power(" + factors.front().str() + "," + std::to_string(k) + ")";
    }
    return "?";
}

std::vector<SpaceSpec> SpaceSpec::atoms() const {
    std::vector<SpaceSpec> out;
    switch (kind) {
    case Kind::Product:
        for (const auto& f : factors) {
            auto sub = f.atoms();
            out.insert(out.end(), sub.begin(), sub.end());
        }
        break;
    case Kind::Power: {
        auto sub = factors.front().atoms();
        for (int i = 0; i < k; ++i) out.insert(out.end(), sub.begin(), sub.end());
        break;
    }
    default: out.push_back(*this);
    }
    return out;
}

std::string SpaceSpec::canonical_key() const {
    auto list = atoms();
    std::vector<std::string> names;
    names.reserve(list.size());
    for (const auto& a : list) names.push_back(a.str());
    std::sort(names.begin(), names.end());
    if (names.size() == 1) return names.front();
    std::string out = "Product(";
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
    return out + ")";
}

SpaceSpec SpaceSpec::power(int l) const {
    if (l < 1) fail(ErrorCode::BadInput, "power exponent must be >= 1");
    auto base = atoms();
    if (l == 1 && base.size() == 1) return base.front();
    SpaceSpec out;
    out.kind = Kind::Product;
    for (int i = 0; i < l; ++i)
        out.factors.insert(out.factors.end(), base.begin(), base.end());
    return out;
}

SpaceSpec SpaceSpec::sphere(int m) {
    SpaceSpec s;
    s.kind = Kind::Sphere;
    s.m = m;
    return s;
}

SpaceSpec SpaceSpec::rp(int m) {
    SpaceSpec s;
    s.kind = Kind::RP;
    s.m = m;
    return s;
}

SpaceSpec SpaceSpec::surface(int g, bool orientable) {
    SpaceSpec s;
    s.kind = Kind::Surface;
    s.g = g;
    s.orientable = orientable;
    return s;
}

SpaceSpec SpaceSpec::conn_sum_rp(int g, int m) {
    SpaceSpec s;
    s.kind = Kind::ConnSumRP;
    s.g = g;
    s.m = m;
    return s;
}

SpaceSpec SpaceSpec::product(std::vector<SpaceSpec> factors) {
    SpaceSpec s;
    s.kind = Kind::Product;
    s.factors = std::move(factors);
    return s;
}

// --- parser -----------------------------------------------------------------

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    [[noreturn]] void expected(const std::string& what) const {
        fail(ErrorCode::ParseError,
             "expected " + what + " at position " + std::to_string(pos) + " in '" + text + "'");
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void require(char c) {
        if (!eat(c)) expected(std::string("'") + c + "'");
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) expected("a space name (S, RP, Surface, ConnSumRP, Product, Power)");
        return text.substr(start, pos - start);
    }

    int integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) expected("an integer");
        return std::stoi(text.substr(start, pos - start));
    }

    SpaceSpec space() {
        std::string name = ident();
        if (name == "S") {
            require('(');
            int m = integer();
            require(')');
            if (m < 1)
                fail(ErrorCode::ParseError,
                     "S(m) needs m >= 1 (spaces are connected), got m = " + std::to_string(m));
            return SpaceSpec::sphere(m);
        }
        if (name == "RP") {
            require('(');
            int m = integer();
            require(')');
            if (m < 1) fail(ErrorCode::ParseError, "RP(m) needs m >= 1");
            return SpaceSpec::rp(m);
        }
        if (name == "Surface") {
            require('(');
            int g = integer();
            bool orientable = true;
            if (eat(',')) {
                std::string tag = ident();
                if (tag == "nonorientable")
                    orientable = false;
                else if (tag != "orientable")
                    expected("'orientable' or 'nonorientable'");
            }
            require(')');
            if (g < 0 || (!orientable && g < 1))
                fail(ErrorCode::ParseError, "bad surface genus " + std::to_string(g));
            return SpaceSpec::surface(g, orientable);
        }
        if (name == "ConnSumRP") {
            require('(');
            int g = integer();
            require(',');
            int m = integer();
            require(')');
            if (g < 2 || m < 2)
                fail(ErrorCode::ParseError, "ConnSumRP(g,m) needs g >= 2 and m >= 2");
            return SpaceSpec::conn_sum_rp(g, m);
        }
        if (name == "Product") {
            require('(');
            std::vector<SpaceSpec> factors;
            factors.push_back(space());
            while (eat(',')) factors.push_back(space());
            require(')');
            return SpaceSpec::product(std::move(factors));
        }
        if (name == "Power") {
            require('(');
            SpaceSpec base = space();
            require(',');
            int k = integer();
            require(')');
            if (k < 1) fail(ErrorCode::ParseError, "Power(a,k) needs k >= 1");
            SpaceSpec out;
            out.kind = SpaceSpec::Kind::Power;
            out.k = k;
            out.factors.push_back(std::move(base));
            return out;
        }
        fail(ErrorCode::ParseError, "unknown space '" + name + "' at position " +
                                        std::to_string(pos) + " in '" + text + "'");
    }
};

} // namespace

SpaceSpec parse_space(const std::string& text) {
    Parser p{text};
    SpaceSpec s = p.space();
    p.skip_ws();
    if (p.pos != text.size()) p.expected("end of input");
    return s;
}

} // namespace tcb::bounds
