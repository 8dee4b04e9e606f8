#include "canal4/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "canal4/errors.hpp"

namespace canal4 {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

Vec4 d1_stencil(const SurfaceSampler& X, double u, double v, double h, int order, bool in_u) {
    auto at = [&](double du, double dv) { return X(u + du, v + dv); };
    const double su = in_u ? 1.0 : 0.0, sv = in_u ? 0.0 : 1.0;
    if (order == 2)
        return (at(h * su, h * sv) - at(-h * su, -h * sv)) / (2.0 * h);
    return (at(-2 * h * su, -2 * h * sv) - at(2 * h * su, 2 * h * sv) * 1.0 +
            (at(h * su, h * sv) - at(-h * su, -h * sv)) * 8.0) /
           (12.0 * h);
}

Vec4 d2_stencil(const SurfaceSampler& X, double u, double v, double h, int order, bool in_u) {
    auto at = [&](double du, double dv) { return X(u + du, v + dv); };
    const double su = in_u ? 1.0 : 0.0, sv = in_u ? 0.0 : 1.0;
    if (order == 2)
        return (at(h * su, h * sv) - at(0, 0) * 2.0 + at(-h * su, -h * sv)) / (h * h);
    return (-(at(2 * h * su, 2 * h * sv) + at(-2 * h * su, -2 * h * sv)) +
            (at(h * su, h * sv) + at(-h * su, -h * sv)) * 16.0 - at(0, 0) * 30.0) /
           (12.0 * h * h);
}

Vec4 duv_stencil(const SurfaceSampler& X, double u, double v, double hu, double hv,
                 int order) {
    auto at = [&](double du, double dv) { return X(u + du, v + dv); };
    if (order == 2)
        return (at(hu, hv) - at(hu, -hv) - at(-hu, hv) + at(-hu, -hv)) / (4.0 * hu * hv);
    // 4th order: cross of two 4th-order first differences
    Vec4 rows[4];
    const double off[4] = {-2, -1, 1, 2};
    const double w[4] = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};
    for (int i = 0; i < 4; ++i)
        rows[i] = (at(off[i] * hu, -2 * hv) - at(off[i] * hu, 2 * hv) +
                   (at(off[i] * hu, hv) - at(off[i] * hu, -hv)) * 8.0) /
                  (12.0 * hv);
    Vec4 out;
    for (int i = 0; i < 4; ++i) out += rows[i] * (w[i] / hu);
    return out;
}

}  // namespace

OracleResult oracle_curvature(const SurfaceSampler& X, double u, double v,
                              const OracleConfig& cfg) {
    if (!(cfg.h_u > 0.0) || !(cfg.h_v > 0.0) || cfg.h_u >= 1e-2 || cfg.h_v >= 1e-2)
        throw InvalidSpec("oracle: steps must lie in (0, 1e-2)");
    if (cfg.order != 2 && cfg.order != 4) throw InvalidSpec("oracle: order must be 2 or 4");

    const Vec4 Xu = d1_stencil(X, u, v, cfg.h_u, cfg.order, true);
    const Vec4 Xv = d1_stencil(X, u, v, cfg.h_v, cfg.order, false);
    const Vec4 Xuu = d2_stencil(X, u, v, cfg.h_u, cfg.order, true);
    const Vec4 Xvv = d2_stencil(X, u, v, cfg.h_v, cfg.order, false);
    const Vec4 Xuv = duv_stencil(X, u, v, cfg.h_u, cfg.h_v, cfg.order);

    const double E = dot(Xu, Xu), F = dot(Xu, Xv), G = dot(Xv, Xv);
    if (std::fabs(F) > 1e-6) throw NonOrthogonalPatch("oracle: sampled patch has F != 0");
    const double W2 = E * G - F * F;
    if (W2 <= 1e-14) throw Irregular("oracle: W^2 <= 1e-14");

    const Vec4 huu = Xuu - Xu * (dot(Xuu, Xu) / E) + Xv * (dot(Xuv, Xu) / G);
    const Vec4 huv = Xuv - Xu * (dot(Xuv, Xu) / E) - Xv * (dot(Xuv, Xv) / G);
    const Vec4 hvv = Xvv + Xu * (dot(Xuv, Xv) / E) - Xv * (dot(Xvv, Xv) / G);

    OracleResult res;
    res.K = (dot(huu, hvv) - dot(huv, huv)) / W2;
    res.Hvec = (hvv * E - huv * (2.0 * F) + huu * G) / (2.0 * W2);
    return res;
}

WeingartenReport weingarten_check(const std::vector<double>& K, const std::vector<double>& H,
                                  std::size_t nu, std::size_t nv, double du, double dv,
                                  double tol) {
    if (nu < 5 || nv < 5) throw GridTooSmall("weingarten_check: need at least a 5x5 grid");
    if (K.size() != nu * nv || H.size() != nu * nv)
        throw InvalidSpec("weingarten_check: field size mismatch");
    WeingartenReport rep;
    rep.nu = nu;
    rep.nv = nv;
    auto at = [&](const std::vector<double>& f, std::size_t i, std::size_t j) {
        return f[i * nv + j];
    };
    for (std::size_t i = 1; i + 1 < nu; ++i) {
        for (std::size_t j = 1; j + 1 < nv; ++j) {
            const double Ku = (at(K, i + 1, j) - at(K, i - 1, j)) / (2.0 * du);
            const double Kv = (at(K, i, j + 1) - at(K, i, j - 1)) / (2.0 * dv);
            const double Hu = (at(H, i + 1, j) - at(H, i - 1, j)) / (2.0 * du);
            const double Hv = (at(H, i, j + 1) - at(H, i, j - 1)) / (2.0 * dv);
            rep.max_jacobian = std::max(rep.max_jacobian, std::fabs(Ku * Hv - Kv * Hu));
            rep.max_Kv = std::max(rep.max_Kv, std::fabs(Kv));
            rep.max_Hv = std::max(rep.max_Hv, std::fabs(Hv));
        }
    }
    rep.is_weingarten = rep.max_jacobian <= tol;
    return rep;
}

LinearWeingartenCert linear_weingarten_cert(const FramedCurve& spine,
                                            const RadiusFunction& rad, double k) {
    if (!rad.is_constant()) throw NotATube("linear_weingarten_cert: radius is not constant");
    for (std::size_t i = 0; i < spine.size(); ++i)
        if (std::fabs(spine.k1(i)) > 1e-10 || std::fabs(spine.k2(i)) > 1e-10 ||
            std::fabs(spine.k3(i)) > 1e-10)
            throw NotATube("linear_weingarten_cert: spine is not a straight line");

    const double r0 = rad.eval(spine.u_front()).r;
    LinearWeingartenCert cert;
    cert.a = 0.0;
    cert.b = 2.0 * r0 * k;
    cert.c = k;

    const std::size_t nu = 20, nv = 20;
    const double ua = spine.u_front(), ub = spine.u_back();
    for (std::size_t i = 0; i < nu; ++i) {
        const double u = ua + (ub - ua) * i / double(nu - 1);
        for (std::size_t j = 0; j < nv; ++j) {
            const double v = kTwoPi * j / double(nv);
            const SurfaceJet jet = surface_jet(spine, rad, u, v);
            const double K = gauss_K(jet, SurfaceMode::straight);
            const double H = mean_scalar(jet, SurfaceMode::straight);
            cert.residual =
                std::max(cert.residual, std::fabs(cert.a * K + cert.b * H - cert.c));
        }
    }
    return cert;
}

RadiusFunction minimal_radius(const MinimalRadiusParams& params, double u_min, double u_max) {
    if (!(params.c1 > 0.0)) throw InvalidSpec("minimal_radius: c1 must be positive");
    const double C = params.c2 - std::log(2.0 * params.c1);
    if (u_min / params.c1 + C < 0.0 || u_max / params.c1 + C < 0.0)
        throw BranchViolation("minimal_radius: domain leaves the principal branch "
                              "(u/c1 + c2 - ln(2 c1) < 0)");
    return RadiusFunction::cosh_scaled(params.c1, C);
}

double verify_minimal(const FramedCurve& spine, const RadiusFunction& rad, double u_min,
                      double u_max, std::size_t nu, std::size_t nv) {
    double worst = 0.0;
    for (std::size_t i = 0; i < nu; ++i) {
        const double u = u_min + (u_max - u_min) * i / double(nu - 1);
        for (std::size_t j = 0; j < nv; ++j) {
            const double v = kTwoPi * j / double(nv);
            const SurfaceJet jet = surface_jet(spine, rad, u, v);
            worst = std::max(worst, mean_scalar(jet, SurfaceMode::straight));
        }
    }
    return worst;
}

FlatnessReport flatness_check(const FramedCurve& spine, const RadiusFunction& rad,
                              double u_min, double u_max, std::size_t nu, std::size_t nv) {
    FlatnessReport rep;
    for (std::size_t i = 0; i < nu; ++i) {
        const double u = u_min + (u_max - u_min) * i / double(nu - 1);
        for (std::size_t j = 0; j < nv; ++j) {
            const double v = kTwoPi * j / double(nv);
            const SurfaceJet jet = surface_jet(spine, rad, u, v);
            rep.max_abs_K = std::max(rep.max_abs_K, std::fabs(gauss_K(jet, SurfaceMode::straight)));
        }
    }
    rep.is_flat = rep.max_abs_K <= 1e-12;
    return rep;
}

}  // namespace canal4
