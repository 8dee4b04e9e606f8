#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "canal4/errors.hpp"

namespace canal4 {

// A point or vector of E^4. Plain value type, all operations pure.
struct Vec4 {
    std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

    constexpr Vec4() = default;
    constexpr Vec4(double x1, double x2, double x3, double x4) : c{x1, x2, x3, x4} {}

    double& operator[](std::size_t i) { return c[i]; }
    double operator[](std::size_t i) const { return c[i]; }

    Vec4 operator+(const Vec4& o) const {
        return {c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2], c[3] + o.c[3]};
    }
    Vec4 operator-(const Vec4& o) const {
        return {c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2], c[3] - o.c[3]};
    }
    Vec4 operator*(double s) const { return {c[0] * s, c[1] * s, c[2] * s, c[3] * s}; }
    Vec4 operator/(double s) const { return *this * (1.0 / s); }
    Vec4 operator-() const { return {-c[0], -c[1], -c[2], -c[3]}; }
    Vec4& operator+=(const Vec4& o) {
        for (int i = 0; i < 4; ++i) c[i] += o.c[i];
        return *this;
    }
    Vec4& operator-=(const Vec4& o) {
        for (int i = 0; i < 4; ++i) c[i] -= o.c[i];
        return *this;
    }

    bool finite() const {
        return std::isfinite(c[0]) && std::isfinite(c[1]) && std::isfinite(c[2]) &&
               std::isfinite(c[3]);
    }
};

inline Vec4 operator*(double s, const Vec4& v) { return v * s; }

double dot(const Vec4& u, const Vec4& v);

inline double norm(const Vec4& v) { return std::sqrt(dot(v, v)); }

Vec4 normalized(const Vec4& v);

// Ordered positively-oriented orthonormal frame (T, M1, M2, M3) of E^4.
struct Frame4 {
    Vec4 T, M1, M2, M3;

    const Vec4& operator[](std::size_t i) const {
        switch (i) {
            case 0: return T;
            case 1: return M1;
            case 2: return M2;
            default: return M3;
        }
    }
    Vec4& operator[](std::size_t i) {
        switch (i) {
            case 0: return T;
            case 1: return M1;
            case 2: return M2;
            default: return M3;
        }
    }

    // max |<e_i,e_j> - delta_ij| over all pairs
    double orthonormality_defect() const;
    double det() const;
};

double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d);

// Modified Gram-Schmidt with one re-orthogonalization pass. Throws
// RankDeficient(k) (1-based) when the residual at step k drops below
// tol relative to the input vector's norm.
std::vector<Vec4> gram_schmidt(const std::vector<Vec4>& vs, double tol = 1e-10);

// Extends 1..3 pairwise-orthonormal vectors to a positively oriented Frame4.
// Remaining slots come from Gram-Schmidt over e1..e4 in index order, skipping
// rank-deficient candidates; the last vector's sign is flipped if needed so
// that det = +1.
Frame4 complete_frame(const std::vector<Vec4>& partial);

}  // namespace canal4
