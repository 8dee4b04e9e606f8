#include "canal4/spline.hpp"

#include <algorithm>
#include <cstddef>

#include "canal4/errors.hpp"

namespace canal4 {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 4 || y_.size() != n) throw InvalidSpec("CubicSpline: need >= 4 matching samples");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1])) throw InvalidSpec("CubicSpline: knots must strictly increase");

    std::vector<double> h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];

    // Pentadiagonal band: row i has entries a(i-2) b(i-1) c(i) d(i+1) e(i+2).
    std::vector<double> a(n, 0), b(n, 0), c(n, 0), d(n, 0), e(n, 0), rhs(n, 0);

    // not-a-knot at the second knot: continuity of S''' across x1
    c[0] = h[1];
    d[0] = -(h[0] + h[1]);
    e[0] = h[0];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        b[i] = h[i - 1];
        c[i] = 2.0 * (h[i - 1] + h[i]);
        d[i] = h[i];
        rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
    }
    // not-a-knot at the second-to-last knot
    a[n - 1] = h[n - 2];
    b[n - 1] = -(h[n - 3] + h[n - 2]);
    c[n - 1] = h[n - 3];

    // band elimination, no pivoting
    for (std::size_t i = 1; i < n; ++i) {
        if (i >= 2 && a[i] != 0.0) {
            const double fac = a[i] / c[i - 2];
            b[i] -= fac * d[i - 2];
            c[i] -= fac * e[i - 2];
            rhs[i] -= fac * rhs[i - 2];
        }
        if (b[i] != 0.0) {
            const double fac = b[i] / c[i - 1];
            c[i] -= fac * d[i - 1];
            d[i] -= fac * e[i - 1];
            rhs[i] -= fac * rhs[i - 1];
        }
    }
    m_.assign(n, 0.0);
    m_[n - 1] = rhs[n - 1] / c[n - 1];
    if (n >= 2) m_[n - 2] = (rhs[n - 2] - d[n - 2] * m_[n - 1]) / c[n - 2];
    for (std::size_t ii = n - 2; ii-- > 0;)
        m_[ii] = (rhs[ii] - d[ii] * m_[ii + 1] - e[ii] * m_[ii + 2]) / c[ii];
}

std::size_t CubicSpline::segment(double u) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), u);
    std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    return std::min(i, x_.size() - 2);
}

double CubicSpline::value(double u) const {
    const std::size_t i = segment(u);
    const double h = x_[i + 1] - x_[i];
    const double A = x_[i + 1] - u, B = u - x_[i];
    return m_[i] * A * A * A / (6.0 * h) + m_[i + 1] * B * B * B / (6.0 * h) +
           (y_[i] / h - m_[i] * h / 6.0) * A + (y_[i + 1] / h - m_[i + 1] * h / 6.0) * B;
}

double CubicSpline::deriv1(double u) const {
    const std::size_t i = segment(u);
    const double h = x_[i + 1] - x_[i];
    const double A = x_[i + 1] - u, B = u - x_[i];
    return -m_[i] * A * A / (2.0 * h) + m_[i + 1] * B * B / (2.0 * h) +
           (y_[i + 1] - y_[i]) / h - (m_[i + 1] - m_[i]) * h / 6.0;
}

double CubicSpline::deriv2(double u) const {
    const std::size_t i = segment(u);
    const double h = x_[i + 1] - x_[i];
    return (m_[i] * (x_[i + 1] - u) + m_[i + 1] * (u - x_[i])) / h;
}

}  // namespace canal4
