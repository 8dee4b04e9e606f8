#pragma once

#include <vector>

namespace canal4 {

// C^2 piecewise-cubic interpolating spline with not-a-knot end conditions.
// Stores the knot second derivatives (moments); evaluation clamps to the
// knot range is NOT performed here -- callers own domain policy.
class CubicSpline {
public:
    CubicSpline() = default;
    // x strictly increasing, size >= 4.
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double value(double u) const;
    double deriv1(double u) const;
    double deriv2(double u) const;

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }

private:
    std::size_t segment(double u) const;

    std::vector<double> x_, y_, m_;  // m_ = second derivatives at knots
};

}  // namespace canal4
