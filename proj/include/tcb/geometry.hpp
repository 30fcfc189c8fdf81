#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tcb/error.hpp"

#include <json.hpp>

namespace tcb::geom {

using Vec = std::vector<double>;

[[nodiscard]] double dot(const Vec& a, const Vec& b);
[[nodiscard]] double norm(const Vec& a);
[[nodiscard]] double dist(const Vec& a, const Vec& b);
[[nodiscard]] Vec normalized(const Vec& a);
[[nodiscard]] Vec add(const Vec& a, const Vec& b);
[[nodiscard]] Vec sub(const Vec& a, const Vec& b);
[[nodiscard]] Vec scale(double c, const Vec& a);

/// Point on the unit sphere S^m, stored as m+1 coordinates.
/// Construction renormalizes inputs whose norm is within 1e-6 of 1 and
/// rejects anything further off.
class UnitPoint {
public:
    explicit UnitPoint(Vec coords);

    [[nodiscard]] int dim_m() const { return static_cast<int>(coords_.size()) - 1; }
    [[nodiscard]] const Vec& coords() const { return coords_; }
    [[nodiscard]] double operator[](std::size_t i) const { return coords_[i]; }
    [[nodiscard]] double last() const { return coords_.back(); }

    [[nodiscard]] UnitPoint antipode() const;

    /// North pole (0,...,0,1) for sign=+1, south pole for sign=-1.
    [[nodiscard]] static UnitPoint pole(int m, int sign);

    bool operator==(const UnitPoint& o) const { return coords_ == o.coords_; }

private:
    Vec coords_;
};

/// Great-circle interpolation from x to y at parameter t in [0,1], computed
/// in the orthonormal frame spanned by x and the unit tangent toward y; it
/// hits both endpoints exactly and stays on the sphere for every admissible
/// pair. Returns x when <x,y> >= 1 - 1e-12. Throws AntipodalInput when the
/// tangent norm sqrt(1 - <x,y>^2) is at most eps_antipodal, where the
/// great-circle plane is numerically undetermined; callers needing antipodal
/// transport must use the vector-field arc instead.
[[nodiscard]] UnitPoint slerp(const UnitPoint& x, const UnitPoint& y, double t,
                              double eps_antipodal = 1e-12);

/// Stereographic chart from the pole (0,...,0,sign): x maps to
/// coords_{1..m} / (1 - sign * x_{m+1}). Throws AtPole when x is the pole
/// within 1e-12.
[[nodiscard]] Vec stereo_project(int pole_sign, const UnitPoint& x);

/// Inverse chart: (2u, sign(|u|^2 - 1)) / (|u|^2 + 1).
[[nodiscard]] UnitPoint stereo_unproject(int pole_sign, const Vec& u);

/// The unit tangent field v(x) = (-x2, x1, -x4, x3, ...) on odd spheres.
/// Throws EvenDimension for even m.
[[nodiscard]] Vec vector_field(const UnitPoint& x);

// ---------------------------------------------------------------------------
// Path segments. Each kind evaluates on local parameter u in [0,1] and has an
// exact reversal partner, so reversing a path never loses precision.

struct ConstantSeg {
    UnitPoint p;
};

struct SlerpSeg {
    UnitPoint p, q;
};

/// u |-> cos(pi u) p + sin(pi u) v, the half great circle leaving p along v.
struct GreatArcForwardSeg {
    UnitPoint p;
    Vec v;
};

/// u |-> cos(pi (1-u)) p + sin(pi (1-u)) v; ends at p, time-mirror of the
/// forward arc with the same data.
struct GreatArcBackwardSeg {
    UnitPoint p;
    Vec v;
};

/// u |-> normalize((1-u) p + u pole(sign)); the radial approach alpha_p.
struct PoleApproachSeg {
    UnitPoint p;
    int sign;
};

/// Time-mirror of PoleApproachSeg: starts at the pole, ends at p.
struct ReversedPoleApproachSeg {
    UnitPoint p;
    int sign;
};

/// u |-> (0,...,0, sin(pi u), sign cos(pi u)); meridian from pole(sign) to
/// pole(-sign) through (0,...,0,1,0).
struct PoleArcSeg {
    int m;
    int sign;
};

/// Straight line in a stereographic chart: u |-> unproject(pole, (1-u)a + u b).
struct ChartLineSeg {
    int pole;
    Vec a, b;
};

using Segment = std::variant<ConstantSeg, SlerpSeg, GreatArcForwardSeg,
                             GreatArcBackwardSeg, PoleApproachSeg,
                             ReversedPoleApproachSeg, PoleArcSeg, ChartLineSeg>;

[[nodiscard]] Vec segment_eval(const Segment& s, double u);
[[nodiscard]] Segment segment_reverse(const Segment& s);
[[nodiscard]] int segment_dim(const Segment& s);
[[nodiscard]] std::string segment_kind(const Segment& s);

/// Piecewise path on S^m: K segments over breakpoints
/// 0 = t_0 < t_1 < ... < t_K = 1, each segment evaluated on its rescaled
/// local parameter. Junction values must agree within join_tol.
class PiecewisePath {
public:
    PiecewisePath(int m, std::vector<Segment> segments, std::vector<double> breakpoints,
                  double join_tol = 1e-9);

    [[nodiscard]] static PiecewisePath single(int m, Segment seg);

    [[nodiscard]] int dim_m() const { return m_; }
    [[nodiscard]] const std::vector<Segment>& segments() const { return segments_; }
    [[nodiscard]] const std::vector<double>& breakpoints() const { return breakpoints_; }

    /// Raw segment value at global time t (no renormalization); at a shared
    /// breakpoint the left segment wins.
    [[nodiscard]] Vec evaluate_raw(double t) const;

private:
    int m_;
    std::vector<Segment> segments_;
    std::vector<double> breakpoints_;
};

[[nodiscard]] UnitPoint evaluate(const PiecewisePath& path, double t);

[[nodiscard]] PiecewisePath reverse(const PiecewisePath& path);

/// Concatenate paths end to start; weights are the fractions of [0,1] each
/// block occupies and must sum to 1. Throws DiscontinuousJoin when
/// consecutive endpoints disagree beyond 1e-9.
[[nodiscard]] PiecewisePath concat(const std::vector<PiecewisePath>& paths,
                                   const std::vector<double>& weights);

nlohmann::json path_to_json(const PiecewisePath& path);
PiecewisePath path_from_json(const nlohmann::json& j);

} // namespace tcb::geom
