#include "canal4/canal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "canal4/errors.hpp"

namespace canal4 {

namespace {

RadiusEval positive_radius(const RadiusFunction& rad, double u) {
    const RadiusEval re = rad.eval(u);
    if (!(re.r > 0.0))
        throw NonpositiveRadius("r(u) = " + std::to_string(re.r) + " at u = " +
                                std::to_string(u));
    return re;
}

void require_mode(const SurfaceJet& jet, SurfaceMode mode) {
    if (mode == SurfaceMode::tube) {
        if (std::fabs(jet.r1) > 1e-12 || std::fabs(jet.r2) > 1e-12)
            throw WrongMode("tube mode requires r' = r'' = 0");
    } else if (mode == SurfaceMode::straight) {
        if (std::fabs(jet.k1) > 1e-10 || std::fabs(jet.k2) > 1e-10 ||
            std::fabs(jet.k3) > 1e-10)
            throw WrongMode("straight mode requires k1 = k2 = k3 = 0");
    }
}

double closed_W2(const SurfaceJet& jet) {
    return jet.r * jet.r * (jet.f * jet.f + jet.r1 * jet.r1);
}

void require_regular(const SurfaceJet& jet) {
    if (closed_W2(jet) <= 1e-14) throw Irregular("W^2 = EG - F^2 vanishes");
}

Vec4 frame_combine(const Frame4& fr, const Vec4& comp) {
    return fr.T * comp[0] + fr.M1 * comp[1] + fr.M2 * comp[2] + fr.M3 * comp[3];
}

}  // namespace

Vec4 surface_point(const FramedCurve& fc, const RadiusFunction& rad, double u, double v) {
    const RadiusEval re = positive_radius(rad, u);
    const Frame4 fr = fc.frame_at(u);
    return fc.point_at(u) + (fr.M2 * std::cos(v) + fr.M3 * std::sin(v)) * re.r;
}

SurfaceJet surface_jet(const FramedCurve& fc, const RadiusFunction& rad, double u, double v) {
    const RadiusEval re = positive_radius(rad, u);
    SurfaceJet j;
    j.u = u;
    j.v = v;
    j.r = re.r;
    j.r1 = re.r1;
    j.r2 = re.r2;
    j.frame = fc.frame_at(u);
    const auto k = fc.k_at(u);
    const auto kp = fc.kprime_at(u);
    j.k1 = k[0];
    j.k2 = k[1];
    j.k3 = k[2];

    const double cv = std::cos(v), sv = std::sin(v);
    const double r = re.r, r1 = re.r1, r2 = re.r2;
    j.f = 1.0 - k[1] * r * cv - k[2] * r * sv;
    j.fv = k[1] * r * sv - k[2] * r * cv;
    const double fu = -(kp[1] * r + k[1] * r1) * cv - (kp[2] * r + k[2] * r1) * sv;
    j.g = fu - k[1] * r1 * cv - k[2] * r1 * sv;

    const Frame4& fr = j.frame;
    j.X = fc.point_at(u) + (fr.M2 * cv + fr.M3 * sv) * r;
    j.Xu = fr.T * j.f + fr.M2 * (r1 * cv) + fr.M3 * (r1 * sv);
    j.Xv = fr.M2 * (-r * sv) + fr.M3 * (r * cv);
    j.Xuu = fr.T * j.g + fr.M1 * (j.f * k[0]) + fr.M2 * (j.f * k[1] + r2 * cv) +
            fr.M3 * (j.f * k[2] + r2 * sv);
    j.Xuv = fr.T * j.fv + fr.M2 * (-r1 * sv) + fr.M3 * (r1 * cv);
    j.Xvv = fr.M2 * (-r * cv) + fr.M3 * (-r * sv);
    return j;
}

FirstFundamental first_form(const SurfaceJet& jet) {
    FirstFundamental ff;
    ff.E = dot(jet.Xu, jet.Xu);
    ff.F = dot(jet.Xu, jet.Xv);
    ff.G = dot(jet.Xv, jet.Xv);
    ff.W2 = ff.E * ff.G - ff.F * ff.F;
    const double Ec = jet.f * jet.f + jet.r1 * jet.r1;
    const double Gc = jet.r * jet.r;
    ff.closed_defect = std::max({std::fabs(ff.E - Ec), std::fabs(ff.F), std::fabs(ff.G - Gc)});
    if (ff.W2 <= 1e-14) throw Irregular("first_form: W^2 <= 1e-14");
    return ff;
}

SecondFundamental second_form_closed(const SurfaceJet& jet) {
    require_regular(jet);
    const double f = jet.f, g = jet.g, r = jet.r, r1 = jet.r1, r2 = jet.r2;
    const double denom = f * f + r1 * r1;
    const double D = f * r2 - g * r1;

    SecondFundamental h;
    h.huu = {(f * f * r1 * (f - 1.0) - r * r1 * D) / (r * denom),
             f * jet.k1,
             f * std::cos(jet.v) * (f * f - f * f * f + r * D) / (r * denom),
             f * std::sin(jet.v) * (f * f - f * f * f + r * D) / (r * denom)};
    const Vec4 ray{r1, 0.0, -f * std::cos(jet.v), -f * std::sin(jet.v)};
    h.huv = ray * (jet.fv * r1 / denom);
    h.hvv = ray * (f * r / denom);
    return h;
}

SecondFundamental second_form_generic(const SurfaceJet& jet, const FirstFundamental& ff) {
    if (std::fabs(ff.F) > 1e-8) throw NonOrthogonalPatch("second_form_generic: F != 0");
    if (ff.W2 <= 1e-14) throw Irregular("second_form_generic: W^2 <= 1e-14");

    const Vec4 huu = jet.Xuu - jet.Xu * (dot(jet.Xuu, jet.Xu) / ff.E) +
                     jet.Xv * (dot(jet.Xuv, jet.Xu) / ff.G);
    const Vec4 huv = jet.Xuv - jet.Xu * (dot(jet.Xuv, jet.Xu) / ff.E) -
                     jet.Xv * (dot(jet.Xuv, jet.Xv) / ff.G);
    const Vec4 hvv = jet.Xvv + jet.Xu * (dot(jet.Xuv, jet.Xv) / ff.E) -
                     jet.Xv * (dot(jet.Xvv, jet.Xv) / ff.G);

    auto components = [&](const Vec4& w) -> Vec4 {
        return {dot(w, jet.frame.T), dot(w, jet.frame.M1), dot(w, jet.frame.M2),
                dot(w, jet.frame.M3)};
    };
    return {components(huu), components(huv), components(hvv)};
}

double gauss_K_from_h(const SecondFundamental& h, const FirstFundamental& ff) {
    return (dot(h.huu, h.hvv) - dot(h.huv, h.huv)) / ff.W2;
}

Vec4 mean_vector_from_h(const SecondFundamental& h, const FirstFundamental& ff,
                        const Frame4& frame) {
    const Vec4 comp =
        (h.hvv * ff.E - h.huv * (2.0 * ff.F) + h.huu * ff.G) / (2.0 * ff.W2);
    return frame_combine(frame, comp);
}

double gauss_K(const SurfaceJet& jet, SurfaceMode mode) {
    require_mode(jet, mode);
    require_regular(jet);
    const double f = jet.f, g = jet.g, r = jet.r, r1 = jet.r1, r2 = jet.r2;
    switch (mode) {
        case SurfaceMode::general: {
            const double denom = f * f + r1 * r1;
            return (f * f * f * f - f * f * f - f * r * (f * r2 - g * r1) -
                    jet.fv * jet.fv * r1 * r1) /
                   (r * r * denom * denom);
        }
        case SurfaceMode::tube:
            if (std::fabs(f) <= 1e-12) throw TubeSingular("gauss_K: f = 0 in tube formula");
            return (f - 1.0) / (f * r * r);
        case SurfaceMode::straight: {
            const double denom = 1.0 + r1 * r1;
            return -r2 / (r * denom * denom);
        }
    }
    throw Error("unreachable mode");
}

Vec4 mean_vector(const SurfaceJet& jet, SurfaceMode mode) {
    require_mode(jet, mode);
    require_regular(jet);
    const double f = jet.f, g = jet.g, r = jet.r, r1 = jet.r1, r2 = jet.r2;
    const double cv = std::cos(jet.v), sv = std::sin(jet.v);
    switch (mode) {
        case SurfaceMode::general: {
            const double denom = f * f + r1 * r1;
            const double D = f * r2 - g * r1;
            const Vec4 comp{
                f * r1 * denom - r * r1 * D - f * f * r1 * (1.0 - f),
                f * r * jet.k1 * denom,
                -f * f * cv * denom + f * f * f * cv * (1.0 - f) + f * r * D * cv,
                -f * f * sv * denom + f * f * f * sv * (1.0 - f) + f * r * D * sv};
            return frame_combine(jet.frame, comp / (2.0 * r * denom * denom));
        }
        case SurfaceMode::tube: {
            if (std::fabs(f) <= 1e-12)
                throw TubeSingular("mean_vector: f = 0 in tube formula");
            const Vec4 comp{0.0, r * jet.k1, (1.0 - 2.0 * f) * cv, (1.0 - 2.0 * f) * sv};
            return frame_combine(jet.frame, comp / (2.0 * f * r));
        }
        case SurfaceMode::straight: {
            const double denom = 1.0 + r1 * r1;
            const double c = (1.0 + r1 * r1 - r * r2) / (2.0 * r * denom * denom);
            return frame_combine(jet.frame, Vec4{r1, 0.0, -cv, -sv} * c);
        }
    }
    throw Error("unreachable mode");
}

double mean_scalar(const SurfaceJet& jet, SurfaceMode mode) {
    const double n = norm(mean_vector(jet, mode));
    const double f = jet.f, g = jet.g, r = jet.r, r1 = jet.r1, r2 = jet.r2;
    double printed = 0.0;
    switch (mode) {
        case SurfaceMode::general: {
            const double denom = f * f + r1 * r1;
            const double D = f * r2 - g * r1;
            const double S = f * f * denom * denom - 2.0 * f * r * r1 * r1 * D -
                             2.0 * f * f * f * denom * (1.0 - f) + D * D * r * r +
                             2.0 * f * f * r * D + f * f * f * f * (1.0 - f) * (1.0 - f) +
                             f * f * r * r * jet.k1 * jet.k1 * denom -
                             4.0 * f * f * f * r * D;
            printed = std::sqrt(std::max(S, 0.0)) / (2.0 * r * std::pow(denom, 1.5));
            break;
        }
        case SurfaceMode::tube:
            printed = std::fabs(
                std::sqrt(std::max(4.0 * f * f - 4.0 * f + r * r * jet.k1 * jet.k1 + 1.0, 0.0)) /
                (2.0 * f * r));
            break;
        case SurfaceMode::straight:
            // printed formula is signed; reported scalar is |Hvec|
            printed = std::fabs((r1 * r1 - r2 * r + 1.0) /
                                (2.0 * r * std::pow(1.0 + r1 * r1, 1.5)));
            break;
    }
    // Floor the comparison scale at the natural curvature magnitude 1/(2r):
    // near H = 0 the printed radicand cancels catastrophically and only
    // absolute agreement at that scale is meaningful.
    const double scale = std::max({n, printed, 1.0 / (2.0 * r)});
    if (std::fabs(n - printed) / scale > 1e-6)
        throw FormulaMismatch("mean_scalar: printed formula and |Hvec| disagree: " +
                              std::to_string(printed) + " vs " + std::to_string(n));
    return n;
}

CurvatureData curvature_at(const FramedCurve& fc, const RadiusFunction& rad, double u,
                           double v, SurfaceMode mode) {
    const SurfaceJet jet = surface_jet(fc, rad, u, v);
    CurvatureData cd;
    try {
        cd.K = gauss_K(jet, mode);
        cd.Hvec = mean_vector(jet, mode);
        cd.H = norm(cd.Hvec);
    } catch (const Irregular&) {
        cd.regular = false;
    } catch (const TubeSingular&) {
        cd.regular = false;
    }
    return cd;
}

}  // namespace canal4
