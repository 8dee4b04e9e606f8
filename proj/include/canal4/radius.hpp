#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "canal4/spline.hpp"

namespace canal4 {

struct RadiusEval {
    double r = 0.0, r1 = 0.0, r2 = 0.0;  // r, r', r''
};

// Radius function r(u) with first and second derivatives. Positivity is
// enforced at the surface-evaluation sites, not at construction.
class RadiusFunction {
public:
    enum class Kind { Constant, Linear, Quadratic, CosSq, CoshScaled, Sampled };

    static RadiusFunction constant(double r0);
    static RadiusFunction linear(double a, double b);        // r = a u + b
    static RadiusFunction quadratic();                       // r = u^2
    static RadiusFunction cos_sq();                          // r = cos(u^2)
    static RadiusFunction cosh_scaled(double c1, double C);  // r = c1 cosh(u/c1 + C)
    static RadiusFunction sampled(std::vector<std::pair<double, double>> samples);
    static RadiusFunction from_csv(const std::string& path);  // header "u,r"

    RadiusEval eval(double u) const;
    Kind kind() const { return kind_; }
    bool is_constant() const { return kind_ == Kind::Constant; }
    double param(int i) const { return params_[i]; }

private:
    RadiusFunction(Kind k, double p0, double p1) : kind_(k), params_{p0, p1} {}
    explicit RadiusFunction(std::shared_ptr<const CubicSpline> s)
        : kind_(Kind::Sampled), params_{0, 0}, spline_(std::move(s)) {}

    Kind kind_;
    double params_[2];
    std::shared_ptr<const CubicSpline> spline_;
};

}  // namespace canal4
