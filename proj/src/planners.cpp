#include "tcb/planners.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace tcb::plan {

using geom::ChartLineSeg;
using geom::ConstantSeg;
using geom::GreatArcBackwardSeg;
using geom::GreatArcForwardSeg;
using geom::PoleApproachSeg;
using geom::PoleArcSeg;
using geom::ReversedPoleApproachSeg;
using geom::Segment;
using geom::SlerpSeg;
using geom::Vec;

WaypointTuple::WaypointTuple(std::vector<UnitPoint> points) : points_(std::move(points)) {
    if (points_.size() < 2)
        fail(ErrorCode::BadInput, "waypoint tuple needs n >= 2 points");
    int m = points_.front().dim_m();
    for (const auto& p : points_)
        if (p.dim_m() != m)
            fail(ErrorCode::BadInput, "waypoints must share one sphere dimension");
}

WaypointTuple WaypointTuple::reversal() const {
    std::vector<UnitPoint> rev(points_.rbegin(), points_.rend());
    return WaypointTuple(std::move(rev));
}

std::string pair_tag_name(PairTag tag) {
    switch (tag) {
    case PairTag::UPlus: return "UPlus";
    case PairTag::UMinus: return "UMinus";
    case PairTag::V: return "V";
    }
    return "?";
}

std::string tuple_rule_name(TupleRule rule) {
    switch (rule) {
    case TupleRule::ConstantRule: return "Constant";
    case TupleRule::SlerpRule: return "Slerp";
    case TupleRule::ArcForwardRule: return "ArcForward";
    case TupleRule::ArcBackwardRule: return "ArcBackward";
    }
    return "?";
}

namespace {

// Sign of the last coordinate with a dead zone: equator-adjacent points
// (|last| <= eps) count as neither hemisphere.
int hemisphere(const UnitPoint& p, double eps) {
    if (p.last() > eps) return 1;
    if (p.last() < -eps) return -1;
    return 0;
}

double pole_distance(const UnitPoint& p, int sign) {
    return geom::dist(p.coords(), UnitPoint::pole(p.dim_m(), sign).coords());
}

void append_point_flags(std::vector<std::string>& flags, const UnitPoint& p,
                        const char* name, const Tolerances& tol) {
    double dn = pole_distance(p, +1);
    double ds = pole_distance(p, -1);
    if (dn > tol.eps && dn <= tol.flag_window)
        flags.push_back(std::string("near-pole:+:") + name);
    if (ds > tol.eps && ds <= tol.flag_window)
        flags.push_back(std::string("near-pole:-:") + name);
    double de = std::abs(p.last());
    if (de > tol.eps && de <= tol.flag_window)
        flags.push_back(std::string("near-equator:") + name);
}

} // namespace

PairDomain classify_pair(const UnitPoint& x, const UnitPoint& y, const Tolerances& tol) {
    if (x.dim_m() != y.dim_m())
        fail(ErrorCode::BadInput, "pair points must share one sphere dimension");
    const double inadmissible = -std::numeric_limits<double>::infinity();

    double up = std::min(pole_distance(x, +1), pole_distance(y, +1));
    if (up <= tol.eps) up = inadmissible;
    double um = std::min(pole_distance(x, -1), pole_distance(y, -1));
    if (um <= tol.eps) um = inadmissible;
    double v = inadmissible;
    if (hemisphere(x, tol.eps) * hemisphere(y, tol.eps) == -1)
        v = std::min(std::abs(x.last()), std::abs(y.last()));

    PairDomain best{PairTag::UPlus, up};
    if (um > best.margin) best = {PairTag::UMinus, um};
    if (v > best.margin) best = {PairTag::V, v};
    assert(best.margin > 0);
    return best;
}

PairPlan plan_pair(const UnitPoint& x, const UnitPoint& y, const Tolerances& tol) {
    PairDomain dom = classify_pair(x, y, tol);
    std::vector<std::string> flags;
    append_point_flags(flags, x, "x", tol);
    append_point_flags(flags, y, "y", tol);

    int m = x.dim_m();
    if (dom.tag == PairTag::V) {
        int sx = x.last() > 0 ? 1 : -1;
        int sy = -sx;
        auto approach = PiecewisePath::single(m, PoleApproachSeg{x, sx});
        auto meridian = PiecewisePath::single(m, PoleArcSeg{m, sx});
        auto descend = PiecewisePath::single(m, ReversedPoleApproachSeg{y, sy});
        auto path = geom::concat({approach, meridian, descend},
                                 {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
        return {std::move(path), dom, std::move(flags)};
    }
    int s = dom.tag == PairTag::UPlus ? 1 : -1;
    Vec a = geom::stereo_project(s, x);
    Vec b = geom::stereo_project(s, y);
    auto path = PiecewisePath::single(m, ChartLineSeg{s, std::move(a), std::move(b)});
    return {std::move(path), dom, std::move(flags)};
}

TupleDomain classify_tuple(const WaypointTuple& w, const Tolerances& tol) {
    int n = w.n();
    if (n % 2 == 0 || n < 3)
        fail(ErrorCode::EvenN, "tuple planner needs odd n >= 3, got n = " + std::to_string(n));
    if (w.dim_m() % 2 == 0)
        fail(ErrorCode::EvenM,
             "tuple planner needs odd sphere dimension, got m = " + std::to_string(w.dim_m()));
    int l = (n - 1) / 2;
    TupleDomain dom{0, {}};
    dom.rules.reserve(static_cast<std::size_t>(n) - 1);
    for (int i = 1; i < n; ++i) {
        const UnitPoint& a = w.at(i - 1);
        const UnitPoint& b = w.at(i);
        double de = geom::dist(a.coords(), b.coords());
        double da = geom::norm(geom::add(a.coords(), b.coords()));
        if (de <= tol.eps) {
            dom.rules.push_back(TupleRule::ConstantRule);
        } else if (da <= tol.eps) {
            ++dom.j;
            dom.rules.push_back(i <= l ? TupleRule::ArcForwardRule
                                       : TupleRule::ArcBackwardRule);
        } else {
            dom.rules.push_back(TupleRule::SlerpRule);
        }
    }
    return dom;
}

namespace {

std::vector<std::string> tuple_flags(const WaypointTuple& w, const Tolerances& tol) {
    std::vector<std::string> flags;
    for (int i = 1; i < w.n(); ++i) {
        const UnitPoint& a = w.at(i - 1);
        const UnitPoint& b = w.at(i);
        double de = geom::dist(a.coords(), b.coords());
        double da = geom::norm(geom::add(a.coords(), b.coords()));
        double d = geom::dot(a.coords(), b.coords());
        // Ill-conditioned but not coincident: the dot sits within 1e-6 of +-1
        // while the points escape the exact-coincidence eps.
        if (de > tol.eps && d >= 1.0 - tol.flag_window)
            flags.push_back("near-equal:" + std::to_string(i));
        if (da > tol.eps && d <= -1.0 + tol.flag_window)
            flags.push_back("near-antipodal:" + std::to_string(i));
    }
    return flags;
}

TuplePlan plan_tuple_inner(const WaypointTuple& w, const Tolerances& tol) {
    TupleDomain dom = classify_tuple(w, tol);
    int n = w.n();
    std::vector<PiecewisePath> blocks;
    blocks.reserve(static_cast<std::size_t>(n) - 1);
    int m = w.dim_m();
    for (int i = 1; i < n; ++i) {
        const UnitPoint& a = w.at(i - 1);
        const UnitPoint& b = w.at(i);
        Segment seg = [&]() -> Segment {
            switch (dom.rules[static_cast<std::size_t>(i) - 1]) {
            case TupleRule::ConstantRule: return ConstantSeg{a};
            case TupleRule::SlerpRule: return SlerpSeg{a, b};
            case TupleRule::ArcForwardRule:
                return GreatArcForwardSeg{a, geom::vector_field(a)};
            case TupleRule::ArcBackwardRule: break;
            }
            return GreatArcBackwardSeg{b, geom::vector_field(b)};
        }();
        blocks.push_back(PiecewisePath::single(m, std::move(seg)));
    }
    std::vector<double> weights(blocks.size(), 1.0 / static_cast<double>(n - 1));
    auto path = geom::concat(blocks, weights);
    std::vector<double> times = path.breakpoints();
    return {std::move(path), std::move(dom), tuple_flags(w, tol), std::move(times)};
}

} // namespace

TuplePlan plan_tuple(const WaypointTuple& w, const Tolerances& tol) {
    return plan_tuple_inner(w, tol);
}

TuplePlan plan_tuple_even(const WaypointTuple& w, const std::optional<UnitPoint>& basepoint,
                          const Tolerances& tol) {
    int n = w.n();
    if (n % 2 != 0)
        fail(ErrorCode::OddN, "plan_tuple_even requires even n; use plan_tuple");
    int m = w.dim_m();
    UnitPoint base = basepoint.value_or([m] {
        Vec e(static_cast<std::size_t>(m) + 1, 0.0);
        e.front() = 1.0;
        return UnitPoint(std::move(e));
    }());
    if (base.dim_m() != m)
        fail(ErrorCode::BadInput, "basepoint dimension mismatch");

    std::vector<UnitPoint> extended;
    extended.reserve(static_cast<std::size_t>(n) + 1);
    int half = n / 2;
    for (int i = 0; i < half; ++i) extended.push_back(w.at(i));
    extended.push_back(base);
    for (int i = half; i < n; ++i) extended.push_back(w.at(i));

    TuplePlan ext = plan_tuple_inner(WaypointTuple(std::move(extended)), tol);
    // The extended plan visits point i at time i/n; drop the basepoint entry.
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i <= n; ++i)
        if (i != half) times.push_back(ext.waypoint_times[static_cast<std::size_t>(i)]);
    ext.waypoint_times = std::move(times);
    return ext;
}

nlohmann::json pair_plan_to_json(const PairPlan& plan) {
    nlohmann::json meta{{"domain", pair_tag_name(plan.domain.tag)},
                        {"margin", plan.domain.margin},
                        {"rules", nlohmann::json::array()},
                        {"flags", plan.flags}};
    return {{"path", geom::path_to_json(plan.path)}, {"metadata", std::move(meta)}};
}

nlohmann::json tuple_plan_to_json(const TuplePlan& plan) {
    nlohmann::json rules = nlohmann::json::array();
    for (TupleRule r : plan.domain.rules) rules.push_back(tuple_rule_name(r));
    nlohmann::json meta{{"domain", {{"j", plan.domain.j}}},
                        {"rules", std::move(rules)},
                        {"flags", plan.flags},
                        {"waypoint_times", plan.waypoint_times}};
    return {{"path", geom::path_to_json(plan.path)}, {"metadata", std::move(meta)}};
}

} // namespace tcb::plan
