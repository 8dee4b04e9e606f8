#include "canal4/vec4.hpp"

#include <algorithm>
#include <cmath>

namespace canal4 {

double dot(const Vec4& u, const Vec4& v) {
    return u.c[0] * v.c[0] + u.c[1] * v.c[1] + u.c[2] * v.c[2] + u.c[3] * v.c[3];
}

Vec4 normalized(const Vec4& v) {
    const double n = norm(v);
    if (n == 0.0) throw Error("normalized: zero vector");
    return v / n;
}

double Frame4::orthonormality_defect() const {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
            const double target = (i == j) ? 1.0 : 0.0;
            worst = std::max(worst, std::fabs(dot((*this)[i], (*this)[j]) - target));
        }
    }
    return worst;
}

double Frame4::det() const { return det4(T, M1, M2, M3); }

double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
    // Gaussian elimination with partial pivoting on a 4x4 copy.
    double m[4][4];
    for (int j = 0; j < 4; ++j) {
        m[0][j] = a[j];
        m[1][j] = b[j];
        m[2][j] = c[j];
        m[3][j] = d[j];
    }
    double det = 1.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        if (m[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < 4; ++r) {
            const double fac = m[r][col] / m[col][col];
            for (int j = col; j < 4; ++j) m[r][j] -= fac * m[col][j];
        }
    }
    return det;
}

namespace {

// One orthogonalization sweep of v against an orthonormal set.
Vec4 project_out(Vec4 v, const std::vector<Vec4>& basis) {
    for (const Vec4& b : basis) v -= b * dot(v, b);
    return v;
}

}  // namespace

std::vector<Vec4> gram_schmidt(const std::vector<Vec4>& vs, double tol) {
    if (vs.empty() || vs.size() > 4) throw Error("gram_schmidt: need 1..4 vectors");
    if (!(tol > 0.0)) throw Error("gram_schmidt: tol must be positive");
    std::vector<Vec4> out;
    out.reserve(vs.size());
    for (std::size_t k = 0; k < vs.size(); ++k) {
        const double input_norm = norm(vs[k]);
        // modified GS, re-orthogonalized once
        Vec4 v = project_out(vs[k], out);
        v = project_out(v, out);
        const double res = norm(v);
        if (res <= tol * std::max(input_norm, 1e-300))
            throw RankDeficient(static_cast<int>(k) + 1);
        out.push_back(v / res);
    }
    return out;
}

Frame4 complete_frame(const std::vector<Vec4>& partial) {
    if (partial.empty() || partial.size() > 3)
        throw NotOrthonormal("complete_frame: need 1..3 vectors");
    for (std::size_t i = 0; i < partial.size(); ++i) {
        for (std::size_t j = i; j < partial.size(); ++j) {
            const double target = (i == j) ? 1.0 : 0.0;
            if (std::fabs(dot(partial[i], partial[j]) - target) > 1e-8)
                throw NotOrthonormal("complete_frame: input not orthonormal");
        }
    }

    std::vector<Vec4> acc = partial;
    const Vec4 canonical[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    for (int e = 0; e < 4 && acc.size() < 4; ++e) {
        Vec4 v = project_out(canonical[e], acc);
        v = project_out(v, acc);
        const double res = norm(v);
        if (res <= 1e-10) continue;  // dependent against the accumulated set
        acc.push_back(v / res);
    }
    if (acc.size() != 4) throw Error("complete_frame: completion failed");

    if (det4(acc[0], acc[1], acc[2], acc[3]) < 0.0) acc[3] = -acc[3];
    return Frame4{acc[0], acc[1], acc[2], acc[3]};
}

}  // namespace canal4
