#include "tcb/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace tcb::geom {

namespace {

constexpr double kPi = std::numbers::pi;

std::string vec_str(const Vec& a) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << ")";
    return os.str();
}

} // namespace

double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

double dist(const Vec& a, const Vec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

Vec normalized(const Vec& a) {
    double n = norm(a);
    if (n == 0) fail(ErrorCode::InvalidPoint, "cannot normalize the zero vector");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] / n;
    return out;
}

Vec add(const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Vec scale(double c, const Vec& a) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
    return out;
}

UnitPoint::UnitPoint(Vec coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2)
        fail(ErrorCode::InvalidPoint, "need at least 2 coordinates (m >= 1)");
    for (double c : coords_)
        if (!std::isfinite(c)) fail(ErrorCode::InvalidPoint, "non-finite coordinate");
    double n = norm(coords_);
    if (std::abs(n - 1.0) > 1e-6)
        fail(ErrorCode::InvalidPoint,
             "norm " + std::to_string(n) + " too far from 1 for " + vec_str(coords_));
    if (n != 1.0)
        for (double& c : coords_) c /= n;
}

UnitPoint UnitPoint::antipode() const {
    Vec c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
    return UnitPoint(std::move(c));
}

UnitPoint UnitPoint::pole(int m, int sign) {
    Vec c(static_cast<std::size_t>(m) + 1, 0.0);
    c.back() = sign >= 0 ? 1.0 : -1.0;
    return UnitPoint(std::move(c));
}

UnitPoint slerp(const UnitPoint& x, const UnitPoint& y, double t, double eps_antipodal) {
    double d = dot(x.coords(), y.coords());
    if (d >= 1.0 - 1e-12) return x;
    // Orthonormal-frame form: r(t) = cos(t theta) x + sin(t theta) u / |u|
    // with u the tangent at x toward y. Near the antipode the dot product
    // saturates at -1, so the degeneracy guard discriminates on |u| instead.
    // A second projection pass keeps u orthogonal to x even when |u| is tiny,
    // which keeps r(t) on the sphere for every admissible input.
    Vec u = add(y.coords(), scale(-d, x.coords()));
    u = add(u, scale(-dot(u, x.coords()), x.coords()));
    double s = norm(u);
    if (s <= eps_antipodal)
        fail(ErrorCode::AntipodalInput,
             "slerp undefined for antipodal points, dot = " + std::to_string(d));
    if (t == 0.0) return x;
    if (t == 1.0) return y;
    double theta = std::atan2(s, d);
    return UnitPoint(
        add(scale(std::cos(t * theta), x.coords()), scale(std::sin(t * theta) / s, u)));
}

Vec stereo_project(int pole_sign, const UnitPoint& x) {
    double s = pole_sign >= 0 ? 1.0 : -1.0;
    double denom = 1.0 - s * x.last();
    // |x - pole|^2 = 2 (1 - s x_last); "equals the pole within 1e-12"
    if (2.0 * denom <= 1e-24)
        fail(ErrorCode::AtPole, "cannot project the chart's own pole");
    Vec u(static_cast<std::size_t>(x.dim_m()));
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = x[i] / denom;
    return u;
}

UnitPoint stereo_unproject(int pole_sign, const Vec& u) {
    if (u.empty()) fail(ErrorCode::InvalidPoint, "empty chart vector");
    for (double c : u)
        if (!std::isfinite(c)) fail(ErrorCode::InvalidPoint, "non-finite chart coordinate");
    double s = pole_sign >= 0 ? 1.0 : -1.0;
    double q = dot(u, u);
    double denom = q + 1.0;
    Vec x(u.size() + 1);
    for (std::size_t i = 0; i < u.size(); ++i) x[i] = 2.0 * u[i] / denom;
    x.back() = s * (q - 1.0) / denom;
    return UnitPoint(std::move(x));
}

Vec vector_field(const UnitPoint& x) {
    if (x.dim_m() % 2 == 0)
        fail(ErrorCode::EvenDimension,
             "no non-vanishing tangent field on even spheres (m = " +
                 std::to_string(x.dim_m()) + ")");
    Vec v(x.coords().size());
    for (std::size_t i = 0; i + 1 < v.size(); i += 2) {
        v[i] = -x[i + 1];
        v[i + 1] = x[i];
    }
    return v;
}

// --- segments ---------------------------------------------------------------

Vec segment_eval(const Segment& seg, double u) {
    struct Eval {
        double u;
        Vec operator()(const ConstantSeg& s) const { return s.p.coords(); }
        Vec operator()(const SlerpSeg& s) const {
            return slerp(s.p, s.q, u).coords();
        }
        Vec operator()(const GreatArcForwardSeg& s) const {
            double c = std::cos(kPi * u), d = std::sin(kPi * u);
            return add(scale(c, s.p.coords()), scale(d, s.v));
        }
        Vec operator()(const GreatArcBackwardSeg& s) const {
            double w = 1.0 - u;
            double c = std::cos(kPi * w), d = std::sin(kPi * w);
            return add(scale(c, s.p.coords()), scale(d, s.v));
        }
        Vec operator()(const PoleApproachSeg& s) const {
            Vec target = UnitPoint::pole(s.p.dim_m(), s.sign).coords();
            return normalized(add(scale(1.0 - u, s.p.coords()), scale(u, target)));
        }
        Vec operator()(const ReversedPoleApproachSeg& s) const {
            double w = 1.0 - u;
            Vec target = UnitPoint::pole(s.p.dim_m(), s.sign).coords();
            return normalized(add(scale(1.0 - w, s.p.coords()), scale(w, target)));
        }
        Vec operator()(const PoleArcSeg& s) const {
            Vec x(static_cast<std::size_t>(s.m) + 1, 0.0);
            double sg = s.sign >= 0 ? 1.0 : -1.0;
            x[x.size() - 2] = std::sin(kPi * u);
            x[x.size() - 1] = sg * std::cos(kPi * u);
            return x;
        }
        Vec operator()(const ChartLineSeg& s) const {
            Vec p = add(scale(1.0 - u, s.a), scale(u, s.b));
            return stereo_unproject(s.pole, p).coords();
        }
    };
    if (u < -1e-12 || u > 1.0 + 1e-12)
        fail(ErrorCode::OutOfRange, "segment parameter " + std::to_string(u));
    u = std::clamp(u, 0.0, 1.0);
    return std::visit(Eval{u}, seg);
}

Segment segment_reverse(const Segment& seg) {
    struct Rev {
        Segment operator()(const ConstantSeg& s) const { return s; }
        Segment operator()(const SlerpSeg& s) const { return SlerpSeg{s.q, s.p}; }
        Segment operator()(const GreatArcForwardSeg& s) const {
            return GreatArcBackwardSeg{s.p, s.v};
        }
        Segment operator()(const GreatArcBackwardSeg& s) const {
            return GreatArcForwardSeg{s.p, s.v};
        }
        Segment operator()(const PoleApproachSeg& s) const {
            return ReversedPoleApproachSeg{s.p, s.sign};
        }
        Segment operator()(const ReversedPoleApproachSeg& s) const {
            return PoleApproachSeg{s.p, s.sign};
        }
        Segment operator()(const PoleArcSeg& s) const {
            return PoleArcSeg{s.m, -s.sign};
        }
        Segment operator()(const ChartLineSeg& s) const {
            return ChartLineSeg{s.pole, s.b, s.a};
        }
    };
    return std::visit(Rev{}, seg);
}

int segment_dim(const Segment& seg) {
    struct Dim {
        int operator()(const ConstantSeg& s) const { return s.p.dim_m(); }
        int operator()(const SlerpSeg& s) const { return s.p.dim_m(); }
        int operator()(const GreatArcForwardSeg& s) const { return s.p.dim_m(); }
        int operator()(const GreatArcBackwardSeg& s) const { return s.p.dim_m(); }
        int operator()(const PoleApproachSeg& s) const { return s.p.dim_m(); }
        int operator()(const ReversedPoleApproachSeg& s) const { return s.p.dim_m(); }
        int operator()(const PoleArcSeg& s) const { return s.m; }
        int operator()(const ChartLineSeg& s) const {
            return static_cast<int>(s.a.size());
        }
    };
    return std::visit(Dim{}, seg);
}

std::string segment_kind(const Segment& seg) {
    struct Kind {
        std::string operator()(const ConstantSeg&) const { return "Constant"; }
        std::string operator()(const SlerpSeg&) const { return "Slerp"; }
        std::string operator()(const GreatArcForwardSeg&) const { return "GreatArcForward"; }
        std::string operator()(const GreatArcBackwardSeg&) const { return "GreatArcBackward"; }
        std::string operator()(const PoleApproachSeg&) const { return "PoleApproach"; }
        std::string operator()(const ReversedPoleApproachSeg&) const {
            return "ReversedPoleApproach";
        }
        std::string operator()(const PoleArcSeg&) const { return "PoleArc"; }
        std::string operator()(const ChartLineSeg&) const { return "ChartLine"; }
    };
    return std::visit(Kind{}, seg);
}

// --- piecewise paths --------------------------------------------------------

PiecewisePath::PiecewisePath(int m, std::vector<Segment> segments,
                             std::vector<double> breakpoints, double join_tol)
    : m_(m), segments_(std::move(segments)), breakpoints_(std::move(breakpoints)) {
    if (segments_.empty()) fail(ErrorCode::InvalidPoint, "path needs at least one segment");
    if (breakpoints_.size() != segments_.size() + 1)
        fail(ErrorCode::InvalidPoint, "breakpoint count must be segment count + 1");
    if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0)
        fail(ErrorCode::InvalidPoint, "breakpoints must run from 0 to 1");
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
        if (!(breakpoints_[i] < breakpoints_[i + 1]))
            fail(ErrorCode::InvalidPoint, "breakpoints must be strictly increasing");
    for (const Segment& s : segments_)
        if (segment_dim(s) != m_)
            fail(ErrorCode::InvalidPoint, "segment dimension mismatch");
    for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
        double gap = dist(segment_eval(segments_[i], 1.0), segment_eval(segments_[i + 1], 0.0));
        if (gap > join_tol)
            fail(ErrorCode::DiscontinuousJoin,
                 "segments " + std::to_string(i) + "/" + std::to_string(i + 1) +
                     " disagree by " + std::to_string(gap));
    }
}

PiecewisePath PiecewisePath::single(int m, Segment seg) {
    return PiecewisePath(m, {std::move(seg)}, {0.0, 1.0});
}

Vec PiecewisePath::evaluate_raw(double t) const {
    if (t < -1e-12 || t > 1.0 + 1e-12)
        fail(ErrorCode::OutOfRange, "path parameter " + std::to_string(t));
    t = std::clamp(t, 0.0, 1.0);
    // Left segment wins at shared breakpoints: find the first k with
    // t <= breakpoints_[k+1] (for t = t_k, that is segment k-1 except at 0).
    std::size_t k = 0;
    while (k + 1 < segments_.size() && t > breakpoints_[k + 1]) ++k;
    double lo = breakpoints_[k], hi = breakpoints_[k + 1];
    double u = (t - lo) / (hi - lo);
    return segment_eval(segments_[k], u);
}

UnitPoint evaluate(const PiecewisePath& path, double t) {
    return UnitPoint(path.evaluate_raw(t));
}

PiecewisePath reverse(const PiecewisePath& path) {
    std::size_t k = path.segments().size();
    std::vector<Segment> segs;
    segs.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        segs.push_back(segment_reverse(path.segments()[k - 1 - i]));
    std::vector<double> bps(k + 1);
    for (std::size_t i = 0; i <= k; ++i) bps[i] = 1.0 - path.breakpoints()[k - i];
    bps.front() = 0.0;
    bps.back() = 1.0;
    return PiecewisePath(path.dim_m(), std::move(segs), std::move(bps));
}

PiecewisePath concat(const std::vector<PiecewisePath>& paths,
                     const std::vector<double>& weights) {
    if (paths.empty() || paths.size() != weights.size())
        fail(ErrorCode::InvalidPoint, "concat needs matching nonempty paths and weights");
    double total = 0;
    for (double w : weights) {
        if (!(w > 0)) fail(ErrorCode::InvalidPoint, "concat weights must be positive");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9)
        fail(ErrorCode::InvalidPoint, "concat weights must sum to 1");
    int m = paths.front().dim_m();
    for (std::size_t b = 0; b + 1 < paths.size(); ++b) {
        double gap = dist(paths[b].evaluate_raw(1.0), paths[b + 1].evaluate_raw(0.0));
        if (gap > 1e-9)
            fail(ErrorCode::DiscontinuousJoin,
                 "junction " + std::to_string(b) + " jumps by " + std::to_string(gap));
    }
    std::vector<Segment> segs;
    std::vector<double> bps{0.0};
    double acc = 0;
    for (std::size_t b = 0; b < paths.size(); ++b) {
        const auto& inner = paths[b].breakpoints();
        for (std::size_t i = 0; i < paths[b].segments().size(); ++i) {
            segs.push_back(paths[b].segments()[i]);
            bps.push_back(acc + weights[b] * inner[i + 1]);
        }
        acc += weights[b];
    }
    bps.back() = 1.0;
    return PiecewisePath(m, std::move(segs), std::move(bps));
}

// --- JSON -------------------------------------------------------------------

namespace {

nlohmann::json seg_to_json(const Segment& seg) {
    using nlohmann::json;
    struct ToJson {
        json operator()(const ConstantSeg& s) const {
            return {{"kind", "Constant"}, {"p", s.p.coords()}};
        }
        json operator()(const SlerpSeg& s) const {
            return {{"kind", "Slerp"}, {"p", s.p.coords()}, {"q", s.q.coords()}};
        }
        json operator()(const GreatArcForwardSeg& s) const {
            return {{"kind", "GreatArcForward"}, {"p", s.p.coords()}, {"v", s.v}};
        }
        json operator()(const GreatArcBackwardSeg& s) const {
            return {{"kind", "GreatArcBackward"}, {"p", s.p.coords()}, {"v", s.v}};
        }
        json operator()(const PoleApproachSeg& s) const {
            return {{"kind", "PoleApproach"}, {"p", s.p.coords()}, {"sign", s.sign}};
        }
        json operator()(const ReversedPoleApproachSeg& s) const {
            return {{"kind", "ReversedPoleApproach"}, {"p", s.p.coords()}, {"sign", s.sign}};
        }
        json operator()(const PoleArcSeg& s) const {
            return {{"kind", "PoleArc"}, {"sign", s.sign}};
        }
        json operator()(const ChartLineSeg& s) const {
            return {{"kind", "ChartLine"}, {"pole", s.pole}, {"a", s.a}, {"b", s.b}};
        }
    };
    return std::visit(ToJson{}, seg);
}

Vec json_vec(const nlohmann::json& j) {
    if (!j.is_array()) fail(ErrorCode::BadInput, "expected a coordinate array");
    Vec out;
    for (const auto& c : j) {
        if (!c.is_number()) fail(ErrorCode::BadInput, "coordinates must be numbers");
        out.push_back(c.get<double>());
    }
    return out;
}

Segment seg_from_json(const nlohmann::json& j, int m) {
    if (!j.contains("kind")) fail(ErrorCode::BadInput, "segment without kind");
    std::string kind = j.at("kind").get<std::string>();
    auto point = [&](const char* key) { return UnitPoint(json_vec(j.at(key))); };
    if (kind == "Constant") return ConstantSeg{point("p")};
    if (kind == "Slerp") return SlerpSeg{point("p"), point("q")};
    if (kind == "GreatArcForward") return GreatArcForwardSeg{point("p"), json_vec(j.at("v"))};
    if (kind == "GreatArcBackward") return GreatArcBackwardSeg{point("p"), json_vec(j.at("v"))};
    if (kind == "PoleApproach")
        return PoleApproachSeg{point("p"), j.at("sign").get<int>()};
    if (kind == "ReversedPoleApproach")
        return ReversedPoleApproachSeg{point("p"), j.at("sign").get<int>()};
    if (kind == "PoleArc") return PoleArcSeg{m, j.at("sign").get<int>()};
    if (kind == "ChartLine")
        return ChartLineSeg{j.at("pole").get<int>(), json_vec(j.at("a")), json_vec(j.at("b"))};
    fail(ErrorCode::BadInput, "unknown segment kind '" + kind + "'");
}

} // namespace

nlohmann::json path_to_json(const PiecewisePath& path) {
    nlohmann::json segs = nlohmann::json::array();
    for (const Segment& s : path.segments()) segs.push_back(seg_to_json(s));
    return {{"m", path.dim_m()}, {"breakpoints", path.breakpoints()}, {"segments", segs}};
}

PiecewisePath path_from_json(const nlohmann::json& j) {
    if (!j.contains("m") || !j.contains("breakpoints") || !j.contains("segments"))
        fail(ErrorCode::BadInput, "path JSON needs m, breakpoints, segments");
    int m = j.at("m").get<int>();
    std::vector<double> bps;
    for (const auto& b : j.at("breakpoints")) bps.push_back(b.get<double>());
    std::vector<Segment> segs;
    for (const auto& s : j.at("segments")) segs.push_back(seg_from_json(s, m));
    return PiecewisePath(m, std::move(segs), std::move(bps));
}

} // namespace tcb::geom
