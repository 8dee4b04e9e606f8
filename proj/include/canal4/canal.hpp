#pragma once

#include "canal4/ptframe.hpp"
#include "canal4/radius.hpp"
#include "canal4/vec4.hpp"

namespace canal4 {

// All partial-derivative data of the canal patch
//   X(u,v) = gamma(u) + r(u)(M2(u) cos v + M3(u) sin v)
// at one (u,v), plus the scalars f = 1 - k2 r cos v - k3 r sin v and
// g = f_u - k2 r' cos v - k3 r' sin v. Partials are ambient vectors; the
// frame at u is carried for normal-space decompositions.
struct SurfaceJet {
    double u = 0.0, v = 0.0;
    Vec4 X, Xu, Xv, Xuu, Xuv, Xvv;
    double f = 0.0, g = 0.0, fv = 0.0;
    Frame4 frame;
    double k1 = 0.0, k2 = 0.0, k3 = 0.0;
    double r = 0.0, r1 = 0.0, r2 = 0.0;
};

struct FirstFundamental {
    double E = 0.0, F = 0.0, G = 0.0;
    double W2 = 0.0;            // EG - F^2
    double closed_defect = 0.0; // max gap to E = f^2 + r'^2, F = 0, G = r^2
};

// Second-fundamental-form vectors stored as components along (T,M1,M2,M3).
// huu carries a tangential T-component, matching the printed formulas.
struct SecondFundamental {
    Vec4 huu, huv, hvv;
};

struct CurvatureData {
    double K = 0.0;  // Gaussian curvature
    Vec4 Hvec;       // mean curvature vector, ambient coordinates
    double H = 0.0;  // |Hvec|
    bool regular = true;
};

enum class SurfaceMode { general, tube, straight };

Vec4 surface_point(const FramedCurve& fc, const RadiusFunction& rad, double u, double v);

SurfaceJet surface_jet(const FramedCurve& fc, const RadiusFunction& rad, double u, double v);

// Returned coefficients use the inner products of the jet partials; the
// defect against the closed forms E = f^2+r'^2, F = 0, G = r^2 is recorded.
FirstFundamental first_form(const SurfaceJet& jet);

// h-vectors exactly as the closed-form canal expressions print them.
SecondFundamental second_form_closed(const SurfaceJet& jet);

// h-vectors from the F = 0 projection formulas applied to the raw jet
// partials; independent route, used as the oracle for the closed forms.
SecondFundamental second_form_generic(const SurfaceJet& jet, const FirstFundamental& ff);

// K and Hvec assembled from explicit h-vectors and first-form data (the
// generic Gauss-equation route).
double gauss_K_from_h(const SecondFundamental& h, const FirstFundamental& ff);
Vec4 mean_vector_from_h(const SecondFundamental& h, const FirstFundamental& ff,
                        const Frame4& frame);

double gauss_K(const SurfaceJet& jet, SurfaceMode mode);
Vec4 mean_vector(const SurfaceJet& jet, SurfaceMode mode);

// Returns |mean_vector|; also evaluates the printed scalar formula for the
// mode and throws FormulaMismatch if the two disagree beyond 1e-6 relative.
double mean_scalar(const SurfaceJet& jet, SurfaceMode mode);

CurvatureData curvature_at(const FramedCurve& fc, const RadiusFunction& rad, double u,
                           double v, SurfaceMode mode = SurfaceMode::general);

}  // namespace canal4
