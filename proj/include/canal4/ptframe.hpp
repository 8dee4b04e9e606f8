#pragma once

#include <array>
#include <string>
#include <vector>

#include "canal4/curve.hpp"
#include "canal4/vec4.hpp"

namespace canal4 {

// Spine curve sampled on a parameter grid together with its parallel
// transport frame and the principal curvature functions k1,k2,k3
// (k_i = <gamma'', M_i>). Immutable once built; the *_at interpolators are
// pure. Between nodes the frame fields are cubic-Hermite interpolated (the
// frame ODE supplies exact node slopes: T' = gamma'', M_i' = -k_i T) and
// re-orthonormalized, so the interpolant is C^1 and exact at nodes.
class FramedCurve {
public:
    FramedCurve(std::vector<double> grid, std::vector<Vec4> points,
                std::vector<Frame4> frames, std::vector<double> k1,
                std::vector<double> k2, std::vector<double> k3);

    std::size_t size() const { return u_.size(); }
    double u_front() const { return u_.front(); }
    double u_back() const { return u_.back(); }
    const std::vector<double>& grid() const { return u_; }
    const Vec4& point(std::size_t i) const { return p_[i]; }
    const Frame4& frame(std::size_t i) const { return fr_[i]; }
    double k1(std::size_t i) const { return k1_[i]; }
    double k2(std::size_t i) const { return k2_[i]; }
    double k3(std::size_t i) const { return k3_[i]; }

    Vec4 point_at(double u) const;
    Frame4 frame_at(double u) const;
    std::array<double, 3> k_at(double u) const;       // (k1,k2,k3)
    std::array<double, 3> kprime_at(double u) const;  // derivative of the k interpolant

    // CSV export, header u,x1..x4,T1..T4,M11..M14,M21..M24,M31..M34,k1,k2,k3
    void write_csv(const std::string& path) const;

private:
    std::size_t segment(double u) const;

    std::vector<double> u_;
    std::vector<Vec4> p_;
    std::vector<Frame4> fr_;
    std::vector<double> k1_, k2_, k3_;
    std::vector<double> dk1_, dk2_, dk3_;  // node slopes for the k interpolant
};

struct FrenetData {
    Vec4 T, N, B1, B2;
    double kappa = 0.0, tau = 0.0, sigma = 0.0;
};

struct EulerAngles {
    double theta = 0.0, psi = 0.0, phi = 0.0;
};

// Deterministic initial frame at u0: T = gamma', M1 = gamma''/|gamma''| when
// curvature is nonzero, remaining slots by canonical completion.
Frame4 seed_frame(const Curve& curve, double u0);

// RK4 on the frame state T' = sum k_i M_i, M_i' = -k_i T with
// k_i = <gamma''(u), M_i(u)>, re-orthonormalized after every step anchored at
// the exact tangent. u1 < u0 integrates backwards. reorthonormalize=false is
// for convergence studies only.
FramedCurve propagate(const Curve& curve, double u0, double u1, double h,
                      const Frame4& seed, bool reorthonormalize = true);

// Frenet frame from Gram-Schmidt of (gamma',gamma'',gamma'''), B2 completing
// the orientation; tau and sigma by central differences (step 1e-5) of N and
// B1. Throws FrenetUndefined(k) where the derivatives lose rank.
FrenetData frenet_at(const Curve& curve, double u, double tol = 1e-8);

// Euler angles relating a Frenet frame to a parallel transport frame sharing
// the same tangent. theta in [-pi/2,pi/2], psi,phi in (-pi,pi].
EulerAngles euler_angles_at(const FrenetData& fr, const Frame4& pt);

struct EulerAngleReport {
    double max_residual_k1 = 0.0;
    double max_residual_k2 = 0.0;
    double max_residual_k3 = 0.0;
    std::size_t skipped = 0;  // nodes where the Frenet frame or angles fail
    std::size_t total = 0;
};

// Pointwise residuals of k1 = kappa cos(theta)cos(psi) and the k2/k3
// companions over all nodes of fc.
EulerAngleReport euler_angle_residuals(const FramedCurve& fc, const Curve& curve);

}  // namespace canal4
