#pragma once

#include <functional>
#include <vector>

#include "canal4/canal.hpp"
#include "canal4/radius.hpp"
#include "canal4/vec4.hpp"

namespace canal4 {

// Finite-difference stencil configuration for the curvature oracle.
struct OracleConfig {
    double h_u = 1e-4;
    double h_v = 1e-4;
    int order = 2;  // 2 or 4
};

struct OracleResult {
    double K = 0.0;
    Vec4 Hvec;
};

using SurfaceSampler = std::function<Vec4(double, double)>;

// Independent curvature oracle: all patch partials by central differences of
// the raw point sampler, h-vectors by the F = 0 projection, K and Hvec by the
// Gauss/mean-curvature definitions. Shares no code path with the closed
// forms of the canal module.
OracleResult oracle_curvature(const SurfaceSampler& X, double u, double v,
                              const OracleConfig& cfg = {});

struct WeingartenReport {
    double max_jacobian = 0.0;  // max |K_u H_v - K_v H_u|
    double max_Kv = 0.0;
    double max_Hv = 0.0;
    std::size_t nu = 0, nv = 0;
    bool is_weingarten = false;
};

// K and H row-major (u outer) on a uniform grid with spacings du, dv.
WeingartenReport weingarten_check(const std::vector<double>& K, const std::vector<double>& H,
                                  std::size_t nu, std::size_t nv, double du, double dv,
                                  double tol = 1e-8);

struct LinearWeingartenCert {
    double a = 0.0, b = 0.0, c = 0.0;
    double residual = 0.0;  // max |aK + bH - c| over the grid
};

// For a tube of radius r0 on a straight spine (K = 0, H = 1/(2 r0)), the
// family (0, 2 r0 k, k) satisfies aK + bH = c exactly.
LinearWeingartenCert linear_weingarten_cert(const FramedCurve& spine,
                                            const RadiusFunction& rad, double k);

struct MinimalRadiusParams {
    double c1 = 1.0;  // > 0
    double c2 = 0.0;
};

// Explicit solution r(u) = c1 cosh(u/c1 + C), C = c2 - ln(2 c1), of the
// minimal-canal relation 2r + 2 sqrt(r^2 - c1^2) = exp(u/c1 + c2). Throws
// BranchViolation if the domain leaves the principal branch u/c1 + C >= 0.
RadiusFunction minimal_radius(const MinimalRadiusParams& params, double u_min, double u_max);

// max |H| over an (nu x nv) grid of the straight-spine canal, closed-form path.
double verify_minimal(const FramedCurve& spine, const RadiusFunction& rad, double u_min,
                      double u_max, std::size_t nu, std::size_t nv);

struct FlatnessReport {
    double max_abs_K = 0.0;
    bool is_flat = false;
};

FlatnessReport flatness_check(const FramedCurve& spine, const RadiusFunction& rad,
                              double u_min, double u_max, std::size_t nu, std::size_t nv);

}  // namespace canal4
