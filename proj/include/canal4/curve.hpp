#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "canal4/spline.hpp"
#include "canal4/vec4.hpp"

namespace canal4 {

// Position and derivatives of a spine curve at one parameter value.
struct CurveJet {
    double u = 0.0;
    Vec4 p;   // gamma(u)
    Vec4 d1;  // gamma'(u)
    Vec4 d2;  // gamma''(u)
    Vec4 d3;  // gamma'''(u)
};

// Evaluable spine curve over a closed parameter interval. Immutable after
// construction; jet() is pure and safe to call concurrently.
class Curve {
public:
    virtual ~Curve() = default;

    double u_min() const { return umin_; }
    double u_max() const { return umax_; }

    CurveJet jet(double u) const;

protected:
    Curve(double umin, double umax);
    virtual CurveJet eval(double u) const = 0;

private:
    double umin_, umax_;
};

using CurvePtr = std::shared_ptr<const Curve>;

// gamma(u) = (a cos cu, a sin cu, b cos du, b sin du); unit speed requires
// a^2 c^2 + b^2 d^2 = 1 and c,d > 0.
CurvePtr make_torus_curve(double a, double b, double c, double d,
                          double umin = 0.0, double umax = 6.283185307179586);

// gamma(u) = origin + u * direction, |direction| = 1.
CurvePtr make_line(const Vec4& origin, const Vec4& direction,
                   double umin, double umax);

// Test-only entry: skips the unit-direction check (deliberately non-unit-speed
// inputs for arclength_reparam).
CurvePtr make_line_unchecked(const Vec4& origin, const Vec4& direction,
                             double umin, double umax);

// Interpolates >= 8 samples (u strictly increasing) by a not-a-knot cubic
// spline per coordinate; d3 comes from a central difference of d2.
CurvePtr make_sampled_curve(std::vector<std::pair<double, Vec4>> samples);

// CSV with header "u,x1,x2,x3,x4", one sample per row.
CurvePtr load_sampled_curve_csv(const std::string& path);

struct UnitSpeedReport {
    double max_deviation = 0.0;  // max | |gamma'| - 1 |
    double argmax_u = 0.0;
};

UnitSpeedReport unit_speed_check(const Curve& curve, int n);

// Re-grids the curve by cumulative arclength (composite Simpson over n
// subintervals) so that the result is unit speed to ~1e-5. Throws
// DegenerateSpeed if |gamma'| < 1e-8 anywhere sampled.
CurvePtr arclength_reparam(const Curve& curve, int n);

}  // namespace canal4
