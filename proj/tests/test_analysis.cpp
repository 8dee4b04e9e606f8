#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "canal4/analysis.hpp"
#include "canal4/canal.hpp"
#include "canal4/errors.hpp"

using namespace canal4;

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

FramedCurve straight_spine(double ua = -2.0, double ub = 8.0) {
    auto l = make_line({0, 0, 0, 0}, {1, 0, 0, 0}, ua, ub);
    return propagate(*l, ua, ub, (ub - ua) / 256.0, seed_frame(*l, ua));
}

FramedCurve torus_spine() {
    auto c = make_torus_curve(0.6, 0.4, 1.0, 2.0, -0.5, kTwoPi + 0.5);
    return propagate(*c, -0.5, kTwoPi + 0.5, 5e-4, seed_frame(*c, -0.5));
}

SurfaceSampler sampler(const FramedCurve& fc, const RadiusFunction& rad) {
    return [&fc, rad](double u, double v) { return surface_point(fc, rad, u, v); };
}

}  // namespace

TEST_CASE("oracle rejects bad configuration") {
    const FramedCurve spine = straight_spine();
    const RadiusFunction rad = RadiusFunction::constant(1.0);
    const SurfaceSampler X = sampler(spine, rad);
    CHECK_THROWS_AS(oracle_curvature(X, 1.0, 1.0, {0.0, 1e-4, 2}), InvalidSpec);
    CHECK_THROWS_AS(oracle_curvature(X, 1.0, 1.0, {1e-4, 2e-2, 2}), InvalidSpec);
    CHECK_THROWS_AS(oracle_curvature(X, 1.0, 1.0, {1e-4, 1e-4, 3}), InvalidSpec);
}

TEST_CASE("oracle on the straight tube r=1: K=0, |H|=1/2") {
    const FramedCurve spine = straight_spine();
    const RadiusFunction rad = RadiusFunction::constant(1.0);
    const SurfaceSampler X = sampler(spine, rad);
    for (double v : {0.0, 1.1, 3.9}) {
        const OracleResult res = oracle_curvature(X, 1.5, v);
        CHECK(std::fabs(res.K) < 1e-8);
        CHECK(norm(res.Hvec) == doctest::Approx(0.5).epsilon(1e-8));
        // direction: radially inward, -(cos v M2 + sin v M3)/2
        const Frame4 fr = spine.frame_at(1.5);
        const Vec4 expect = (fr.M2 * std::cos(v) + fr.M3 * std::sin(v)) * (-0.5);
        CHECK(norm(res.Hvec - expect) < 1e-8);
    }
}

TEST_CASE("oracle matches the closed forms on a cosh canal") {
    const FramedCurve spine = straight_spine();
    const RadiusFunction rad = RadiusFunction::cosh_scaled(1.0, 0.0);
    const SurfaceSampler X = sampler(spine, rad);
    for (double u : {-0.7, 0.0, 0.9}) {
        for (double v : {0.4, 2.8}) {
            const SurfaceJet jet = surface_jet(spine, rad, u, v);
            const double Kc = gauss_K(jet, SurfaceMode::straight);
            const Vec4 Hc = mean_vector(jet, SurfaceMode::straight);
            const OracleResult res = oracle_curvature(X, u, v);
            CHECK(std::fabs(res.K - Kc) < 1e-6);
            CHECK(norm(res.Hvec - Hc) < 1e-6);
        }
    }
}

TEST_CASE("oracle matches the closed forms on a bent wavy canal") {
    const FramedCurve spine = torus_spine();
    std::vector<std::pair<double, double>> rs;
    for (int i = 0; i <= 4000; ++i) {
        const double u = -0.6 + (kTwoPi + 1.2) * i / 4000.0;
        rs.emplace_back(u, 0.25 + 0.05 * std::sin(u));
    }
    const RadiusFunction rad = RadiusFunction::sampled(std::move(rs));
    const SurfaceSampler X = sampler(spine, rad);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> du(0.0, kTwoPi), dv(0.0, kTwoPi);
    for (int trial = 0; trial < 25; ++trial) {
        const double u = du(rng), v = dv(rng);
        const SurfaceJet jet = surface_jet(spine, rad, u, v);
        const double Kc = gauss_K(jet, SurfaceMode::general);
        const Vec4 Hc = mean_vector(jet, SurfaceMode::general);
        const OracleResult res = oracle_curvature(X, u, v);
        CHECK(std::fabs(res.K - Kc) < 1e-5 * std::max(1.0, std::fabs(Kc)));
        CHECK(norm(res.Hvec - Hc) < 1e-5 * std::max(1.0, norm(Hc)));
        // the 4th-order stencil agrees at least as well
        const OracleResult res4 = oracle_curvature(X, u, v, {1e-3, 1e-3, 4});
        CHECK(std::fabs(res4.K - Kc) < 1e-5 * std::max(1.0, std::fabs(Kc)));
    }
}

TEST_CASE("oracle error decays at second order in the step") {
    const FramedCurve spine = straight_spine();
    const RadiusFunction rad = RadiusFunction::cosh_scaled(1.0, 0.0);
    const SurfaceSampler X = sampler(spine, rad);
    const double u = 0.6, v = 1.0;
    const double Kexact =
        gauss_K(surface_jet(spine, rad, u, v), SurfaceMode::straight);
    const double e1 =
        std::fabs(oracle_curvature(X, u, v, {4e-3, 4e-3, 2}).K - Kexact);
    const double e2 =
        std::fabs(oracle_curvature(X, u, v, {2e-3, 2e-3, 2}).K - Kexact);
    REQUIRE(e1 > 1e-12);  // coarse error must be visible for the ratio to mean anything
    const double ratio = e1 / e2;
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("weingarten_check") {
    SUBCASE("needs a 5x5 grid") {
        std::vector<double> small(16, 0.0);
        CHECK_THROWS_AS(weingarten_check(small, small, 4, 4, 0.1, 0.1), GridTooSmall);
        CHECK_THROWS_AS(weingarten_check(small, small, 8, 2, 0.1, 0.1), GridTooSmall);
    }
    SUBCASE("field sizes must match the grid") {
        std::vector<double> f(30, 0.0);
        CHECK_THROWS_AS(weingarten_check(f, f, 7, 5, 0.1, 0.1), InvalidSpec);
    }
    SUBCASE("canal fields depending on u only pass") {
        const FramedCurve spine = straight_spine();
        const RadiusFunction rad = RadiusFunction::cosh_scaled(1.0, 0.0);
        const std::size_t nu = 16, nv = 12;
        const double ua = -1.0, ub = 1.0;
        const double du = (ub - ua) / double(nu - 1), dv = kTwoPi / double(nv);
        std::vector<double> K(nu * nv), H(nu * nv);
        for (std::size_t i = 0; i < nu; ++i)
            for (std::size_t j = 0; j < nv; ++j) {
                const SurfaceJet jet = surface_jet(spine, rad, ua + du * i, dv * j);
                K[i * nv + j] = gauss_K(jet, SurfaceMode::straight);
                H[i * nv + j] = mean_scalar(jet, SurfaceMode::straight);
            }
        const WeingartenReport rep = weingarten_check(K, H, nu, nv, du, dv);
        CHECK(rep.is_weingarten);
        CHECK(rep.max_Kv < 1e-10);
        CHECK(rep.max_Hv < 1e-10);
    }
    SUBCASE("independent K and H gradients fail") {
        const std::size_t nu = 8, nv = 8;
        std::vector<double> K(nu * nv), H(nu * nv);
        for (std::size_t i = 0; i < nu; ++i)
            for (std::size_t j = 0; j < nv; ++j) {
                K[i * nv + j] = 0.1 * i;
                H[i * nv + j] = 0.1 * j;
            }
        const WeingartenReport rep = weingarten_check(K, H, nu, nv, 0.1, 0.1);
        CHECK_FALSE(rep.is_weingarten);
        CHECK(rep.max_jacobian == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("linear weingarten certificate for straight tubes") {
    const FramedCurve spine = straight_spine();
    SUBCASE("r0=1, k=1 gives (0, 2, 1)") {
        const LinearWeingartenCert cert =
            linear_weingarten_cert(spine, RadiusFunction::constant(1.0), 1.0);
        CHECK(cert.a == 0.0);
        CHECK(cert.b == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(cert.c == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(cert.residual < 1e-10);
    }
    SUBCASE("r0=3, k=2 gives (0, 12, 2)") {
        const LinearWeingartenCert cert =
            linear_weingarten_cert(spine, RadiusFunction::constant(3.0), 2.0);
        CHECK(cert.b == doctest::Approx(12.0).epsilon(1e-15));
        CHECK(cert.c == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(cert.residual < 1e-10);
    }
    SUBCASE("rejects non-tubes") {
        CHECK_THROWS_AS(
            linear_weingarten_cert(spine, RadiusFunction::linear(1.0, 2.0), 1.0), NotATube);
        const FramedCurve bent = torus_spine();
        CHECK_THROWS_AS(
            linear_weingarten_cert(bent, RadiusFunction::constant(1.0), 1.0), NotATube);
    }
}

TEST_CASE("minimal_radius") {
    SUBCASE("c1=1, c2=ln 2 reproduces cosh u") {
        const RadiusFunction rad = minimal_radius({1.0, std::log(2.0)}, 0.0, 2.0);
        for (double u : {0.0, 0.5, 1.7}) {
            const RadiusEval re = rad.eval(u);
            CHECK(re.r == doctest::Approx(std::cosh(u)).epsilon(1e-14));
            CHECK(re.r1 == doctest::Approx(std::sinh(u)).epsilon(1e-14));
        }
    }
    SUBCASE("general parameters satisfy the defining relation") {
        const MinimalRadiusParams p{0.7, 1.3};
        const RadiusFunction rad = minimal_radius(p, 0.5, 3.0);
        for (double u : {0.5, 1.2, 2.9}) {
            const double r = rad.eval(u).r;
            const double lhs = 2.0 * r + 2.0 * std::sqrt(std::max(r * r - p.c1 * p.c1, 0.0));
            CHECK(lhs == doctest::Approx(std::exp(u / p.c1 + p.c2)).epsilon(1e-12));
        }
    }
    SUBCASE("branch violations and bad parameters") {
        CHECK_THROWS_AS(minimal_radius({2.0, 0.0}, -10.0, 0.0), BranchViolation);
        CHECK_THROWS_AS(minimal_radius({-1.0, 0.0}, 0.0, 1.0), InvalidSpec);
    }
    SUBCASE("verify_minimal confirms H vanishes, and flags non-minimal radii") {
        const FramedCurve spine = straight_spine();
        const RadiusFunction rad = minimal_radius({1.0, std::log(2.0)}, 0.0, 2.0);
        CHECK(verify_minimal(spine, rad, 0.0, 2.0, 24, 24) < 1e-9);
        CHECK(verify_minimal(spine, RadiusFunction::constant(1.0), 0.0, 2.0, 8, 8) ==
              doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("flatness_check: flat iff the radius is affine") {
    const FramedCurve spine = straight_spine();
    CHECK(flatness_check(spine, RadiusFunction::linear(2.0, 6.0), 0.0, kTwoPi, 16, 16)
              .is_flat);
    CHECK(flatness_check(spine, RadiusFunction::constant(5.0), 0.0, kTwoPi, 16, 16).is_flat);
    const FlatnessReport rep =
        flatness_check(spine, RadiusFunction::cosh_scaled(1.0, 0.0), -1.0, 1.0, 17, 16);
    CHECK_FALSE(rep.is_flat);
    CHECK(rep.max_abs_K == doctest::Approx(1.0).epsilon(1e-10));
}
