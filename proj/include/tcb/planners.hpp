#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcb/geometry.hpp"

namespace tcb::plan {

using geom::PiecewisePath;
using geom::UnitPoint;

/// Classification tolerances. Coincidence tests (equal / antipodal points,
/// points at a pole, points on the equator) use the coordinate-distance eps;
/// inputs that escape them but sit within flag_window of a domain boundary are
/// planned normally and flagged ill-conditioned.
struct Tolerances {
    double eps = 1e-9;
    double flag_window = 1e-6;
};

/// Ordered waypoints (x_1, ..., x_n) on a common S^m, n >= 2.
class WaypointTuple {
public:
    explicit WaypointTuple(std::vector<UnitPoint> points);

    [[nodiscard]] int n() const { return static_cast<int>(points_.size()); }
    [[nodiscard]] int dim_m() const { return points_.front().dim_m(); }
    [[nodiscard]] const std::vector<UnitPoint>& points() const { return points_; }
    [[nodiscard]] const UnitPoint& at(int i) const { return points_[static_cast<std::size_t>(i)]; }

    /// The beta action: (x_n, ..., x_1).
    [[nodiscard]] WaypointTuple reversal() const;

private:
    std::vector<UnitPoint> points_;
};

enum class PairTag { UPlus, UMinus, V };

[[nodiscard]] std::string pair_tag_name(PairTag tag);

struct PairDomain {
    PairTag tag;
    double margin;
};

enum class TupleRule { ConstantRule, SlerpRule, ArcForwardRule, ArcBackwardRule };

[[nodiscard]] std::string tuple_rule_name(TupleRule rule);

struct TupleDomain {
    int j; // number of consecutive antipodal waypoint pairs
    std::vector<TupleRule> rules;
};

/// Select the admissible two-point domain with the largest margin.
/// margin(UPlus) = min distance to the north pole, margin(UMinus) the same for
/// the south pole, margin(V) = min |last coordinate| when the points sit in
/// opposite open hemispheres (else V is inadmissible). Ties break in the order
/// UPlus, UMinus, V. Symmetric in (x, y).
[[nodiscard]] PairDomain classify_pair(const UnitPoint& x, const UnitPoint& y,
                                       const Tolerances& tol = {});

struct PairPlan {
    PiecewisePath path;
    PairDomain domain;
    std::vector<std::string> flags;
};

/// Two-point planner, any m >= 1. Chart domains produce a single ChartLine
/// segment; V produces approach / meridian / reversed-approach thirds.
/// Satisfies plan_pair(y, x) = reverse(plan_pair(x, y)) pointwise.
[[nodiscard]] PairPlan plan_pair(const UnitPoint& x, const UnitPoint& y,
                                 const Tolerances& tol = {});

/// Per-gap rules for the odd-n odd-m planner. With n = 2l+1: an antipodal gap
/// at i <= l travels forward along the tangent-field arc, at i >= l+1
/// backward; j counts the antipodal gaps.
[[nodiscard]] TupleDomain classify_tuple(const WaypointTuple& w,
                                         const Tolerances& tol = {});

struct TuplePlan {
    PiecewisePath path;
    TupleDomain domain;
    std::vector<std::string> flags;
    /// Time at which the i-th input waypoint is visited.
    std::vector<double> waypoint_times;
};

/// n-waypoint planner for odd n >= 3 on odd-dimensional spheres.
[[nodiscard]] TuplePlan plan_tuple(const WaypointTuple& w, const Tolerances& tol = {});

/// Even-n adapter: inserts the basepoint (default (1,0,...,0)) in the middle
/// slot and runs the odd planner on the extended tuple. waypoint_times refers
/// to the original waypoints; the basepoint visit at time 1/2 is an artifact
/// of the construction.
[[nodiscard]] TuplePlan plan_tuple_even(const WaypointTuple& w,
                                        const std::optional<UnitPoint>& basepoint = {},
                                        const Tolerances& tol = {});

nlohmann::json pair_plan_to_json(const PairPlan& plan);
nlohmann::json tuple_plan_to_json(const TuplePlan& plan);

} // namespace tcb::plan
