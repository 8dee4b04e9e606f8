#include "canal4/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "canal4/errors.hpp"

namespace canal4 {

Curve::Curve(double umin, double umax) : umin_(umin), umax_(umax) {
    if (!(umax > umin)) throw InvalidSpec("curve domain must have umax > umin");
}

CurveJet Curve::jet(double u) const {
    const double slack = 1e-10 * (1.0 + umax_ - umin_);
    if (u < umin_ - slack || u > umax_ + slack)
        throw OutOfDomain("parameter " + std::to_string(u) + " outside curve domain");
    return eval(u);
}

namespace {

class TorusCurve final : public Curve {
public:
    TorusCurve(double a, double b, double c, double d, double umin, double umax)
        : Curve(umin, umax), a_(a), b_(b), c_(c), d_(d) {
        if (!(c > 0.0) || !(d > 0.0)) throw InvalidSpec("torus_curve: c and d must be positive");
        const double s = a * a * c * c + b * b * d * d;
        if (std::fabs(s - 1.0) > 1e-12)
            throw InvalidSpec("torus_curve: a^2c^2 + b^2d^2 = " + std::to_string(s) +
                              ", expected 1 (unit speed)");
    }

private:
    CurveJet eval(double u) const override {
        const double cc = std::cos(c_ * u), sc = std::sin(c_ * u);
        const double cd = std::cos(d_ * u), sd = std::sin(d_ * u);
        CurveJet j;
        j.u = u;
        j.p = {a_ * cc, a_ * sc, b_ * cd, b_ * sd};
        j.d1 = {-a_ * c_ * sc, a_ * c_ * cc, -b_ * d_ * sd, b_ * d_ * cd};
        const double c2 = c_ * c_, d2 = d_ * d_;
        j.d2 = {-a_ * c2 * cc, -a_ * c2 * sc, -b_ * d2 * cd, -b_ * d2 * sd};
        j.d3 = {a_ * c2 * c_ * sc, -a_ * c2 * c_ * cc, b_ * d2 * d_ * sd, -b_ * d2 * d_ * cd};
        return j;
    }

    double a_, b_, c_, d_;
};

class LineCurve final : public Curve {
public:
    LineCurve(const Vec4& origin, const Vec4& dir, double umin, double umax, bool checked)
        : Curve(umin, umax), o_(origin), d_(dir) {
        if (checked && std::fabs(norm(dir) - 1.0) > 1e-12)
            throw InvalidSpec("line: direction must be a unit vector");
    }

private:
    CurveJet eval(double u) const override {
        CurveJet j;
        j.u = u;
        j.p = o_ + d_ * u;
        j.d1 = d_;
        return j;  // d2 = d3 = 0
    }

    Vec4 o_, d_;
};

class SampledCurve final : public Curve {
public:
    SampledCurve(std::vector<double> us, std::array<std::vector<double>, 4> ys)
        : Curve(us.front(), us.back()),
          sx_{CubicSpline(us, std::move(ys[0])), CubicSpline(us, std::move(ys[1])),
              CubicSpline(us, std::move(ys[2])), CubicSpline(us, std::move(ys[3]))},
          fd_step_(1e-4 * (us.back() - us.front())) {}

private:
    CurveJet eval(double u) const override {
        CurveJet j;
        j.u = u;
        for (int i = 0; i < 4; ++i) {
            j.p[i] = sx_[i].value(u);
            j.d1[i] = sx_[i].deriv1(u);
            j.d2[i] = sx_[i].deriv2(u);
        }
        // d3: central difference of d2, stencil shifted inside the domain
        const double h = fd_step_;
        const double uc = std::clamp(u, u_min() + h, u_max() - h);
        for (int i = 0; i < 4; ++i)
            j.d3[i] = (sx_[i].deriv2(uc + h) - sx_[i].deriv2(uc - h)) / (2.0 * h);
        return j;
    }

    std::array<CubicSpline, 4> sx_;
    double fd_step_;
};

}  // namespace

CurvePtr make_torus_curve(double a, double b, double c, double d, double umin, double umax) {
    return std::make_shared<TorusCurve>(a, b, c, d, umin, umax);
}

CurvePtr make_line(const Vec4& origin, const Vec4& direction, double umin, double umax) {
    return std::make_shared<LineCurve>(origin, direction, umin, umax, true);
}

CurvePtr make_line_unchecked(const Vec4& origin, const Vec4& direction, double umin,
                             double umax) {
    return std::make_shared<LineCurve>(origin, direction, umin, umax, false);
}

CurvePtr make_sampled_curve(std::vector<std::pair<double, Vec4>> samples) {
    if (samples.size() < 8) throw InvalidSpec("sampled curve: need at least 8 points");
    std::vector<double> us(samples.size());
    std::array<std::vector<double>, 4> ys;
    for (auto& y : ys) y.resize(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i > 0 && !(samples[i].first > samples[i - 1].first))
            throw InvalidSpec("sampled curve: u values must strictly increase");
        if (!samples[i].second.finite()) throw InvalidSpec("sampled curve: non-finite point");
        us[i] = samples[i].first;
        for (int k = 0; k < 4; ++k) ys[k][i] = samples[i].second[k];
    }
    return std::make_shared<SampledCurve>(std::move(us), std::move(ys));
}

CurvePtr load_sampled_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw InvalidSpec(path + ": empty file");
    auto strip = [](std::string s) {
        s.erase(std::remove_if(s.begin(), s.end(),
                               [](unsigned char c) { return std::isspace(c); }),
                s.end());
        return s;
    };
    if (strip(line) != "u,x1,x2,x3,x4")
        throw InvalidSpec(path + ": expected header u,x1,x2,x3,x4");
    std::vector<std::pair<double, Vec4>> samples;
    while (std::getline(in, line)) {
        if (strip(line).empty()) continue;
        std::stringstream row(line);
        double vals[5];
        std::string cell;
        for (int i = 0; i < 5; ++i) {
            if (!std::getline(row, cell, ',')) throw InvalidSpec(path + ": short row");
            vals[i] = std::stod(cell);
        }
        samples.emplace_back(vals[0], Vec4{vals[1], vals[2], vals[3], vals[4]});
    }
    return make_sampled_curve(std::move(samples));
}

UnitSpeedReport unit_speed_check(const Curve& curve, int n) {
    if (n < 2) throw InvalidSpec("unit_speed_check: n >= 2 required");
    UnitSpeedReport rep;
    rep.argmax_u = curve.u_min();
    for (int i = 0; i < n; ++i) {
        const double u =
            curve.u_min() + (curve.u_max() - curve.u_min()) * i / double(n - 1);
        const double dev = std::fabs(norm(curve.jet(u).d1) - 1.0);
        if (dev > rep.max_deviation) {
            rep.max_deviation = dev;
            rep.argmax_u = u;
        }
    }
    return rep;
}

namespace {

double speed_at(const Curve& c, double u) {
    const double s = norm(c.jet(u).d1);
    if (s < 1e-8) throw DegenerateSpeed("|gamma'| < 1e-8 at u = " + std::to_string(u));
    return s;
}

// Simpson on [ua, ub] with the midpoint sample.
double simpson(const Curve& c, double ua, double ub) {
    return (ub - ua) / 6.0 *
           (speed_at(c, ua) + 4.0 * speed_at(c, 0.5 * (ua + ub)) + speed_at(c, ub));
}

}  // namespace

CurvePtr arclength_reparam(const Curve& curve, int n) {
    if (n < 2) throw InvalidSpec("arclength_reparam: n >= 2 required");
    const double ua = curve.u_min(), ub = curve.u_max();

    // cumulative arclength on a fine grid, composite Simpson per subinterval
    const int nf = std::max(8 * n, 2048);
    std::vector<double> ug(nf + 1), sg(nf + 1);
    for (int i = 0; i <= nf; ++i) ug[i] = ua + (ub - ua) * i / double(nf);
    sg[0] = 0.0;
    for (int i = 0; i < nf; ++i) sg[i + 1] = sg[i] + simpson(curve, ug[i], ug[i + 1]);
    const double total = sg.back();

    auto u_of_s = [&](double st) {
        auto it = std::upper_bound(sg.begin(), sg.end(), st);
        std::size_t i = (it == sg.begin()) ? 0 : static_cast<std::size_t>(it - sg.begin()) - 1;
        i = std::min(i, sg.size() - 2);
        double u = ug[i] + (ug[i + 1] - ug[i]) * (st - sg[i]) / (sg[i + 1] - sg[i]);
        for (int it2 = 0; it2 < 4; ++it2) {  // Newton on s(u) - st
            const double res = sg[i] + simpson(curve, ug[i], u) - st;
            u -= res / speed_at(curve, u);
            u = std::clamp(u, ua, ub);
        }
        return u;
    };

    const int nout = std::max(n + 1, 1025);
    std::vector<std::pair<double, Vec4>> samples;
    samples.reserve(nout);
    for (int j = 0; j < nout; ++j) {
        const double st = total * j / double(nout - 1);
        const double u = (j == 0) ? ua : (j == nout - 1 ? ub : u_of_s(st));
        samples.emplace_back(st, curve.jet(u).p);
    }
    return make_sampled_curve(std::move(samples));
}

}  // namespace canal4
