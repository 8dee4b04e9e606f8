#include "canal4/ptframe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "canal4/errors.hpp"

namespace canal4 {

namespace {

std::vector<double> node_slopes(const std::vector<double>& u, const std::vector<double>& y) {
    const std::size_t n = u.size();
    std::vector<double> d(n, 0.0);
    if (n < 3) {
        const double s = (y[1] - y[0]) / (u[1] - u[0]);
        d[0] = d[1] = s;
        return d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (u[i + 1] - u[i - 1]);
    // second-order one-sided ends
    d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (u[2] - u[0]);
    d[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (u[n - 1] - u[n - 3]);
    return d;
}

struct HermiteWeights {
    double w0, w1, s0, s1;    // value weights (points, slopes*h)
    double d0, d1, e0, e1;    // derivative weights
};

HermiteWeights hermite(double t, double h) {
    HermiteWeights w;
    w.w0 = (2 * t - 3) * t * t + 1;
    w.s0 = ((t - 2) * t + 1) * t * h;
    w.w1 = (3 - 2 * t) * t * t;
    w.s1 = (t - 1) * t * t * h;
    w.d0 = 6 * t * (t - 1) / h;
    w.e0 = (3 * t - 4) * t + 1;
    w.d1 = -w.d0;
    w.e1 = (3 * t - 2) * t;
    return w;
}

}  // namespace

FramedCurve::FramedCurve(std::vector<double> grid, std::vector<Vec4> points,
                         std::vector<Frame4> frames, std::vector<double> k1,
                         std::vector<double> k2, std::vector<double> k3)
    : u_(std::move(grid)),
      p_(std::move(points)),
      fr_(std::move(frames)),
      k1_(std::move(k1)),
      k2_(std::move(k2)),
      k3_(std::move(k3)) {
    const std::size_t n = u_.size();
    if (n < 2 || p_.size() != n || fr_.size() != n || k1_.size() != n || k2_.size() != n ||
        k3_.size() != n)
        throw InvalidSpec("FramedCurve: inconsistent node arrays");
    for (std::size_t i = 1; i < n; ++i)
        if (!(u_[i] > u_[i - 1])) throw InvalidSpec("FramedCurve: grid must strictly increase");
    dk1_ = node_slopes(u_, k1_);
    dk2_ = node_slopes(u_, k2_);
    dk3_ = node_slopes(u_, k3_);
}

std::size_t FramedCurve::segment(double u) const {
    const double slack = 1e-9 * (1.0 + u_.back() - u_.front());
    if (u < u_.front() - slack || u > u_.back() + slack)
        throw OutOfDomain("FramedCurve: parameter outside grid range");
    auto it = std::upper_bound(u_.begin(), u_.end(), u);
    std::size_t i = (it == u_.begin()) ? 0 : static_cast<std::size_t>(it - u_.begin()) - 1;
    return std::min(i, u_.size() - 2);
}

Vec4 FramedCurve::point_at(double u) const {
    const std::size_t i = segment(u);
    const double h = u_[i + 1] - u_[i];
    const auto w = hermite((u - u_[i]) / h, h);
    // gamma' = T exactly: the tangents are the Hermite slopes
    return p_[i] * w.w0 + fr_[i].T * w.s0 + p_[i + 1] * w.w1 + fr_[i + 1].T * w.s1;
}

Frame4 FramedCurve::frame_at(double u) const {
    const std::size_t i = segment(u);
    const double h = u_[i + 1] - u_[i];
    const auto w = hermite((u - u_[i]) / h, h);

    auto slope = [&](std::size_t node, int axis) -> Vec4 {
        const Frame4& f = fr_[node];
        if (axis == 0)
            return f.M1 * k1_[node] + f.M2 * k2_[node] + f.M3 * k3_[node];  // T' = gamma''
        const double k = (axis == 1) ? k1_[node] : (axis == 2 ? k2_[node] : k3_[node]);
        return f.T * (-k);
    };

    Frame4 out;
    for (int axis = 0; axis < 4; ++axis)
        out[axis] = fr_[i][axis] * w.w0 + slope(i, axis) * w.s0 + fr_[i + 1][axis] * w.w1 +
                    slope(i + 1, axis) * w.s1;

    // re-orthonormalize (near-identity correction away from nodes)
    out.T = normalized(out.T);
    out.M1 = normalized(out.M1 - out.T * dot(out.M1, out.T));
    out.M2 = out.M2 - out.T * dot(out.M2, out.T) - out.M1 * dot(out.M2, out.M1);
    out.M2 = normalized(out.M2);
    out.M3 = out.M3 - out.T * dot(out.M3, out.T) - out.M1 * dot(out.M3, out.M1) -
             out.M2 * dot(out.M3, out.M2);
    out.M3 = normalized(out.M3);
    return out;
}

std::array<double, 3> FramedCurve::k_at(double u) const {
    const std::size_t i = segment(u);
    const double h = u_[i + 1] - u_[i];
    const auto w = hermite((u - u_[i]) / h, h);
    auto interp = [&](const std::vector<double>& y, const std::vector<double>& dy) {
        return y[i] * w.w0 + dy[i] * w.s0 + y[i + 1] * w.w1 + dy[i + 1] * w.s1;
    };
    return {interp(k1_, dk1_), interp(k2_, dk2_), interp(k3_, dk3_)};
}

std::array<double, 3> FramedCurve::kprime_at(double u) const {
    const std::size_t i = segment(u);
    const double h = u_[i + 1] - u_[i];
    const auto w = hermite((u - u_[i]) / h, h);
    auto interp = [&](const std::vector<double>& y, const std::vector<double>& dy) {
        return y[i] * w.d0 + dy[i] * w.e0 + y[i + 1] * w.d1 + dy[i + 1] * w.e1;
    };
    return {interp(k1_, dk1_), interp(k2_, dk2_), interp(k3_, dk3_)};
}

void FramedCurve::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path);
    out << "u,x1,x2,x3,x4,T1,T2,T3,T4,M11,M12,M13,M14,"
           "M21,M22,M23,M24,M31,M32,M33,M34,k1,k2,k3\n";
    char buf[32];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << sep;
    };
    for (std::size_t i = 0; i < u_.size(); ++i) {
        put(u_[i], ',');
        for (int k = 0; k < 4; ++k) put(p_[i][k], ',');
        for (int a = 0; a < 4; ++a)
            for (int k = 0; k < 4; ++k) put(fr_[i][a][k], ',');
        put(k1_[i], ',');
        put(k2_[i], ',');
        put(k3_[i], '\n');
    }
    if (!out) throw IoError("write failed: " + path);
}

Frame4 seed_frame(const Curve& curve, double u0) {
    const CurveJet j = curve.jet(u0);
    if (std::fabs(norm(j.d1) - 1.0) > 1e-8)
        throw NotUnitSpeed("seed_frame: |gamma'(u0)| != 1");
    const Vec4 T = j.d1;
    const double kappa = norm(j.d2);
    if (kappa > 1e-8) return complete_frame({T, j.d2 / kappa});
    return complete_frame({T});
}

namespace {

Frame4 frame_derivative(const Frame4& f, const Vec4& g2) {
    const double k1 = dot(g2, f.M1), k2 = dot(g2, f.M2), k3 = dot(g2, f.M3);
    Frame4 d;
    d.T = f.M1 * k1 + f.M2 * k2 + f.M3 * k3;
    d.M1 = f.T * (-k1);
    d.M2 = f.T * (-k2);
    d.M3 = f.T * (-k3);
    return d;
}

Frame4 axpy(const Frame4& f, const Frame4& d, double s) {
    Frame4 r;
    for (int a = 0; a < 4; ++a) r[a] = f[a] + d[a] * s;
    return r;
}

void check_unit_speed(const CurveJet& j) {
    if (std::fabs(norm(j.d1) - 1.0) > 1e-8)
        throw NotUnitSpeed("propagate: curve not unit speed at u = " + std::to_string(j.u));
}

}  // namespace

FramedCurve propagate(const Curve& curve, double u0, double u1, double h, const Frame4& seed,
                      bool reorthonormalize) {
    const double length = std::fabs(u1 - u0);
    if (!(h > 0.0) || h > length / 8.0 * (1.0 + 1e-12))
        throw StepTooLarge("propagate: require 0 < h <= |u1-u0|/8");
    const double dir = (u1 >= u0) ? 1.0 : -1.0;

    std::vector<double> us;
    std::vector<Vec4> pts;
    std::vector<Frame4> frames;
    std::vector<double> k1s, k2s, k3s;
    const std::size_t nsteps = static_cast<std::size_t>(std::ceil(length / h - 1e-12));
    us.reserve(nsteps + 1);

    Frame4 f = seed;
    double u = u0;
    auto record = [&](double uu, const Frame4& ff) {
        const CurveJet j = curve.jet(uu);
        check_unit_speed(j);
        us.push_back(uu);
        pts.push_back(j.p);
        frames.push_back(ff);
        k1s.push_back(dot(j.d2, ff.M1));
        k2s.push_back(dot(j.d2, ff.M2));
        k3s.push_back(dot(j.d2, ff.M3));
    };
    record(u, f);

    for (std::size_t s = 0; s < nsteps; ++s) {
        const double remaining = length - static_cast<double>(s) * h;
        const double step = dir * std::min(h, remaining);

        const Frame4 d1 = frame_derivative(f, curve.jet(u).d2);
        const Frame4 y2 = axpy(f, d1, step * 0.5);
        const Frame4 d2 = frame_derivative(y2, curve.jet(u + step * 0.5).d2);
        const Frame4 y3 = axpy(f, d2, step * 0.5);
        const Frame4 d3 = frame_derivative(y3, curve.jet(u + step * 0.5).d2);
        const Frame4 y4 = axpy(f, d3, step);
        const Frame4 d4 = frame_derivative(y4, curve.jet(u + step).d2);
        for (int a = 0; a < 4; ++a)
            f[a] += (d1[a] + (d2[a] + d3[a]) * 2.0 + d4[a]) * (step / 6.0);
        u = (s + 1 == nsteps) ? u1 : u0 + dir * static_cast<double>(s + 1) * h;

        if (reorthonormalize) {
            // the tangent is exact from the curve; only the normal fields drift
            f.T = normalized(curve.jet(u).d1);
            f.M1 = normalized(f.M1 - f.T * dot(f.M1, f.T));
            f.M2 = f.M2 - f.T * dot(f.M2, f.T) - f.M1 * dot(f.M2, f.M1);
            f.M2 = normalized(f.M2);
            f.M3 = f.M3 - f.T * dot(f.M3, f.T) - f.M1 * dot(f.M3, f.M1) - f.M2 * dot(f.M3, f.M2);
            f.M3 = normalized(f.M3);
        }
        record(u, f);
    }

    if (dir < 0) {
        std::reverse(us.begin(), us.end());
        std::reverse(pts.begin(), pts.end());
        std::reverse(frames.begin(), frames.end());
        std::reverse(k1s.begin(), k1s.end());
        std::reverse(k2s.begin(), k2s.end());
        std::reverse(k3s.begin(), k3s.end());
    }
    return FramedCurve(std::move(us), std::move(pts), std::move(frames), std::move(k1s),
                       std::move(k2s), std::move(k3s));
}

namespace {

struct FrenetBasis {
    Vec4 T, N, B1, B2;
};

FrenetBasis frenet_basis(const Curve& curve, double u, double tol) {
    const CurveJet j = curve.jet(u);
    std::vector<Vec4> gs;
    try {
        gs = gram_schmidt({j.d1, j.d2, j.d3}, tol);
    } catch (const RankDeficient& e) {
        throw FrenetUndefined(e.k);
    }
    const Frame4 full = complete_frame(gs);
    return {full.T, full.M1, full.M2, full.M3};
}

}  // namespace

FrenetData frenet_at(const Curve& curve, double u, double tol) {
    constexpr double delta = 1e-5;
    if (u < curve.u_min() + 2 * delta || u > curve.u_max() - 2 * delta)
        throw OutOfDomain("frenet_at: u must be interior by 2e-5");

    const FrenetBasis fb = frenet_basis(curve, u, tol);
    const FrenetBasis fp = frenet_basis(curve, u + delta, tol);
    const FrenetBasis fm = frenet_basis(curve, u - delta, tol);

    FrenetData fr;
    fr.T = fb.T;
    fr.N = fb.N;
    fr.B1 = fb.B1;
    fr.B2 = fb.B2;
    fr.kappa = norm(curve.jet(u).d2);
    fr.tau = dot((fp.N - fm.N) / (2 * delta), fb.B1);
    fr.sigma = dot((fp.B1 - fm.B1) / (2 * delta), fb.B2);
    return fr;
}

EulerAngles euler_angles_at(const FrenetData& fr, const Frame4& pt) {
    if (norm(fr.T - pt.T) > 1e-8)
        throw MismatchedTangent("euler_angles_at: frames have different tangents");
    const double s = std::clamp(dot(fr.B2, pt.M1), -1.0, 1.0);  // = -sin(theta)
    const double cos_theta = std::sqrt(std::max(0.0, 1.0 - s * s));
    if (cos_theta <= 1e-6) throw GimbalLock("euler_angles_at: |cos(theta)| <= 1e-6");
    EulerAngles ea;
    ea.theta = -std::asin(s);
    ea.phi = std::atan2(dot(fr.B2, pt.M2), dot(fr.B2, pt.M3));
    ea.psi = std::atan2(dot(fr.B1, pt.M1), dot(fr.N, pt.M1));
    return ea;
}

EulerAngleReport euler_angle_residuals(const FramedCurve& fc, const Curve& curve) {
    EulerAngleReport rep;
    rep.total = fc.size();
    for (std::size_t i = 0; i < fc.size(); ++i) {
        try {
            const FrenetData fr = frenet_at(curve, fc.grid()[i]);
            const EulerAngles ea = euler_angles_at(fr, fc.frame(i));
            const double ct = std::cos(ea.theta), st = std::sin(ea.theta);
            const double cp = std::cos(ea.psi), sp = std::sin(ea.psi);
            const double cf = std::cos(ea.phi), sf = std::sin(ea.phi);
            const double k = fr.kappa;
            rep.max_residual_k1 =
                std::max(rep.max_residual_k1, std::fabs(fc.k1(i) - k * ct * cp));
            rep.max_residual_k2 =
                std::max(rep.max_residual_k2, std::fabs(fc.k2(i) - k * (-cf * sp + sf * st * cp)));
            rep.max_residual_k3 =
                std::max(rep.max_residual_k3, std::fabs(fc.k3(i) - k * (sf * sp + cf * st * cp)));
        } catch (const Error&) {
            ++rep.skipped;
        }
    }
    return rep;
}

}  // namespace canal4
