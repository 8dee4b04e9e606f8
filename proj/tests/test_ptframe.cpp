#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "canal4/errors.hpp"
#include "canal4/ptframe.hpp"

using namespace canal4;

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;
const double kSqrt292 = std::sqrt(2.92);

CurvePtr example_torus(double ua = 0.0, double ub = kTwoPi) {
    return make_torus_curve(0.6, 0.4, 1.0, 2.0, ua, ub);
}

double max_ortho_defect(const FramedCurve& fc) {
    double worst = 0.0;
    for (std::size_t i = 0; i < fc.size(); ++i)
        worst = std::max(worst, fc.frame(i).orthonormality_defect());
    return worst;
}

}  // namespace

TEST_CASE("seed_frame") {
    SUBCASE("straight line, zero curvature branch") {
        auto l = make_line({0, 0, 0, 0}, {1, 0, 0, 0}, 0, 5);
        const Frame4 fr = seed_frame(*l, 0.0);
        CHECK(norm(fr.T - Vec4{1, 0, 0, 0}) < 1e-15);
        CHECK(norm(fr.M1 - Vec4{0, 1, 0, 0}) < 1e-15);
        CHECK(norm(fr.M2 - Vec4{0, 0, 1, 0}) < 1e-15);
        CHECK(norm(fr.M3 - Vec4{0, 0, 0, 1}) < 1e-15);
    }
    SUBCASE("torus curve seeds M1 along gamma''") {
        auto c = example_torus();
        const Frame4 fr = seed_frame(*c, 0.0);
        CHECK(norm(fr.T - Vec4{0, 0.6, 0, 0.8}) < 1e-14);
        CHECK(norm(fr.M1 - Vec4{-0.6, 0, -1.6, 0} / kSqrt292) < 1e-14);
        CHECK(fr.orthonormality_defect() < 1e-12);
        CHECK(fr.det() == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("non-unit-speed curve rejected") {
        auto fast = make_line_unchecked({0, 0, 0, 0}, {2, 0, 0, 0}, 0, 3);
        CHECK_THROWS_AS(seed_frame(*fast, 0.0), NotUnitSpeed);
    }
}

TEST_CASE("propagate on a straight line is constant with zero k") {
    auto l = make_line({0, 0, 0, 0}, {0, 1, 0, 0}, 0, 5);
    const Frame4 seed = seed_frame(*l, 0.0);
    const FramedCurve fc = propagate(*l, 0.0, 5.0, 0.01, seed);
    for (std::size_t i = 0; i < fc.size(); ++i) {
        for (int a = 0; a < 4; ++a) CHECK(norm(fc.frame(i)[a] - seed[a]) < 1e-13);
        CHECK(fc.k1(i) == 0.0);
        CHECK(fc.k2(i) == 0.0);
        CHECK(fc.k3(i) == 0.0);
    }
}

TEST_CASE("propagate rejects oversized steps") {
    auto c = example_torus();
    CHECK_THROWS_AS(propagate(*c, 0.0, 1.0, 0.5, seed_frame(*c, 0.0)), StepTooLarge);
}

TEST_CASE("frame integrity on the example torus curve") {
    auto c = example_torus();
    const FramedCurve fc = propagate(*c, 0.0, kTwoPi, 1e-3, seed_frame(*c, 0.0));
    CHECK(max_ortho_defect(fc) <= 1e-8);
    double worst = 0.0;
    for (std::size_t i = 0; i < fc.size(); ++i) {
        const double kappa =
            std::sqrt(fc.k1(i) * fc.k1(i) + fc.k2(i) * fc.k2(i) + fc.k3(i) * fc.k3(i));
        worst = std::max(worst, std::fabs(kappa - kSqrt292));
    }
    CHECK(worst <= 1e-6);

    // normal fields stay normal
    double drift = 0.0;
    for (std::size_t i = 0; i < fc.size(); ++i)
        for (int a = 1; a < 4; ++a)
            drift = std::max(drift, std::fabs(dot(fc.frame(i)[a], fc.frame(i).T)));
    CHECK(drift <= 1e-8);
}

TEST_CASE("reversal returns the seed frame") {
    auto c = example_torus();
    const Frame4 seed = seed_frame(*c, 0.0);
    const FramedCurve fwd = propagate(*c, 0.0, kTwoPi, 1e-3, seed);
    const FramedCurve back = propagate(*c, kTwoPi, 0.0, 1e-3, fwd.frame(fwd.size() - 1));
    const Frame4& recovered = back.frame(0);
    for (int a = 0; a < 4; ++a) CHECK(norm(recovered[a] - seed[a]) < 1e-7);
}

TEST_CASE("parallel transport commutes with constant normal rotations") {
    auto c = example_torus();
    const Frame4 seed = seed_frame(*c, 0.0);
    const double alpha = 0.83;
    // rotate by alpha in the (M1,M2) plane
    Frame4 rotated = seed;
    rotated.M1 = seed.M1 * std::cos(alpha) + seed.M2 * std::sin(alpha);
    rotated.M2 = seed.M2 * std::cos(alpha) - seed.M1 * std::sin(alpha);
    const FramedCurve a = propagate(*c, 0.0, 3.0, 1e-3, seed);
    const FramedCurve b = propagate(*c, 0.0, 3.0, 1e-3, rotated);
    for (std::size_t i = 0; i < a.size(); i += 50) {
        const Frame4& fa = a.frame(i);
        const Frame4& fb = b.frame(i);
        CHECK(norm(fb.M1 - (fa.M1 * std::cos(alpha) + fa.M2 * std::sin(alpha))) < 1e-7);
        CHECK(norm(fb.M2 - (fa.M2 * std::cos(alpha) - fa.M1 * std::sin(alpha))) < 1e-7);
        CHECK(norm(fb.M3 - fa.M3) < 1e-7);
    }
}

TEST_CASE("frame ODE converges at 4th order") {
    auto c = example_torus();
    const Frame4 seed = seed_frame(*c, 0.0);

    // global frame error against a fine reference
    const FramedCurve ref = propagate(*c, 0.0, kTwoPi, 0.00125, seed);
    const Frame4& fref = ref.frame(ref.size() - 1);
    std::vector<double> errs;
    for (double h : {0.04, 0.02, 0.01}) {
        const FramedCurve fc = propagate(*c, 0.0, kTwoPi, h, seed);
        double e = 0.0;
        for (int a = 0; a < 4; ++a)
            e = std::max(e, norm(fc.frame(fc.size() - 1)[a] - fref[a]));
        errs.push_back(e);
    }
    CHECK(errs[0] / errs[1] > 12.0);
    CHECK(errs[0] / errs[1] < 20.0);
    CHECK(errs[1] / errs[2] > 12.0);
    CHECK(errs[1] / errs[2] < 20.0);

    // without re-orthonormalization, halving h shrinks the orthonormality
    // defect at least 4th-order (observed closer to 5th)
    std::vector<double> defects;
    for (double h : {0.04, 0.02, 0.01}) {
        const FramedCurve fc = propagate(*c, 0.0, kTwoPi, h, seed, false);
        defects.push_back(fc.frame(fc.size() - 1).orthonormality_defect());
    }
    CHECK(defects[0] / defects[1] > 12.0);
    CHECK(defects[1] / defects[2] > 12.0);
}

TEST_CASE("frenet_at") {
    SUBCASE("line has no Frenet frame") {
        auto l = make_line({0, 0, 0, 0}, {1, 0, 0, 0}, 0, 5);
        CHECK_THROWS_AS(frenet_at(*l, 2.0), FrenetUndefined);
        try {
            frenet_at(*l, 2.0);
        } catch (const FrenetUndefined& e) {
            CHECK(e.k == 2);
        }
    }
    SUBCASE("planar circle loses rank at step 3") {
        const double a = 1.0 / std::sqrt(2.0);
        auto c = make_torus_curve(a, a, 1.0, 1.0);
        CHECK_THROWS_AS(frenet_at(*c, 1.0), FrenetUndefined);
        try {
            frenet_at(*c, 1.0);
        } catch (const FrenetUndefined& e) {
            CHECK(e.k == 3);
        }
    }
    SUBCASE("example torus curve") {
        auto c = example_torus();
        const FrenetData fr = frenet_at(*c, 1.0);
        CHECK(fr.kappa == doctest::Approx(kSqrt292).epsilon(1e-9));
        // orthonormal frame
        const Frame4 as_frame{fr.T, fr.N, fr.B1, fr.B2};
        CHECK(as_frame.orthonormality_defect() < 1e-8);
    }
}

TEST_CASE("euler angle extraction") {
    auto c = example_torus();
    const FrenetData fr = frenet_at(*c, 1.0);

    SUBCASE("coinciding frames give zero angles") {
        const Frame4 pt{fr.T, fr.N, fr.B1, fr.B2};
        const EulerAngles ea = euler_angles_at(fr, pt);
        CHECK(std::fabs(ea.theta) < 1e-12);
        CHECK(std::fabs(ea.psi) < 1e-12);
        CHECK(std::fabs(ea.phi) < 1e-12);
    }
    SUBCASE("pure rotation in the (B1,B2) plane") {
        const double alpha = 0.6;
        Frame4 pt;
        pt.T = fr.T;
        pt.M1 = fr.N;
        pt.M2 = fr.B1 * std::cos(alpha) - fr.B2 * std::sin(alpha);
        pt.M3 = fr.B1 * std::sin(alpha) + fr.B2 * std::cos(alpha);
        // oracle: rotation matrix R with rows N,B1,B2 in the M basis gives
        // <B2,M1> = 0, <B2,M2> = -sin a, <B2,M3> = cos a, <N,M1> = 1, <B1,M1> = 0
        const EulerAngles ea = euler_angles_at(fr, pt);
        CHECK(ea.theta == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(ea.psi == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(ea.phi == doctest::Approx(-alpha).epsilon(1e-12));
    }
    SUBCASE("M1 aligned with B2 is gimbal lock") {
        const Frame4 pt{fr.T, fr.B2, fr.N, fr.B1};
        CHECK_THROWS_AS(euler_angles_at(fr, pt), GimbalLock);
    }
    SUBCASE("different tangents are rejected") {
        const Frame4 pt{fr.N, fr.T, fr.B1, fr.B2};
        CHECK_THROWS_AS(euler_angles_at(fr, pt), MismatchedTangent);
    }
}

TEST_CASE("euler-angle residuals") {
    SUBCASE("example torus curve satisfies the k relations") {
        auto c = example_torus();
        const FramedCurve fc = propagate(*c, 0.0, kTwoPi, 1e-3, seed_frame(*c, 0.0));
        const EulerAngleReport rep = euler_angle_residuals(fc, *c);
        CHECK(rep.skipped < rep.total / 10);
        CHECK(rep.max_residual_k1 <= 1e-5);
        CHECK(rep.max_residual_k2 <= 1e-5);
        CHECK(rep.max_residual_k3 <= 1e-5);
    }
    SUBCASE("line skips every node") {
        auto l = make_line({0, 0, 0, 0}, {1, 0, 0, 0}, 0, 5);
        const FramedCurve fc = propagate(*l, 0.0, 5.0, 0.1, seed_frame(*l, 0.0));
        const EulerAngleReport rep = euler_angle_residuals(fc, *l);
        CHECK(rep.skipped == rep.total);
        CHECK(rep.max_residual_k1 == 0.0);
    }
    SUBCASE("planar circle skips every node") {
        const double a = 1.0 / std::sqrt(2.0);
        auto c = make_torus_curve(a, a, 1.0, 1.0);
        const FramedCurve fc = propagate(*c, 0.0, kTwoPi, 0.05, seed_frame(*c, 0.0));
        const EulerAngleReport rep = euler_angle_residuals(fc, *c);
        CHECK(rep.skipped == rep.total);
    }
}

TEST_CASE("FramedCurve CSV export") {
    auto c = example_torus();
    const FramedCurve fc = propagate(*c, 0.0, 1.0, 0.1, seed_frame(*c, 0.0));
    const auto path = std::filesystem::temp_directory_path() / "canal4_frames.csv";
    fc.write_csv(path.string());
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "u,x1,x2,x3,x4,T1,T2,T3,T4,M11,M12,M13,M14,M21,M22,M23,M24,M31,M32,M33,M34,k1,k2,k3");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) ++rows;
    CHECK(rows == fc.size());
    std::filesystem::remove(path);
}
