#include "canal4/radius.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "canal4/errors.hpp"

namespace canal4 {

RadiusFunction RadiusFunction::constant(double r0) {
    return RadiusFunction(Kind::Constant, r0, 0.0);
}

RadiusFunction RadiusFunction::linear(double a, double b) {
    return RadiusFunction(Kind::Linear, a, b);
}

RadiusFunction RadiusFunction::quadratic() { return RadiusFunction(Kind::Quadratic, 0, 0); }

RadiusFunction RadiusFunction::cos_sq() { return RadiusFunction(Kind::CosSq, 0, 0); }

RadiusFunction RadiusFunction::cosh_scaled(double c1, double C) {
    if (!(c1 > 0.0)) throw InvalidSpec("cosh_scaled: c1 must be positive");
    return RadiusFunction(Kind::CoshScaled, c1, C);
}

RadiusFunction RadiusFunction::sampled(std::vector<std::pair<double, double>> samples) {
    std::vector<double> u, r;
    u.reserve(samples.size());
    r.reserve(samples.size());
    for (const auto& [uu, rr] : samples) {
        u.push_back(uu);
        r.push_back(rr);
    }
    return RadiusFunction(std::make_shared<CubicSpline>(std::move(u), std::move(r)));
}

RadiusFunction RadiusFunction::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    auto strip = [](std::string s) {
        s.erase(std::remove_if(s.begin(), s.end(),
                               [](unsigned char c) { return std::isspace(c); }),
                s.end());
        return s;
    };
    if (!std::getline(in, line) || strip(line) != "u,r")
        throw InvalidSpec(path + ": expected header u,r");
    std::vector<std::pair<double, double>> samples;
    while (std::getline(in, line)) {
        if (strip(line).empty()) continue;
        std::stringstream row(line);
        std::string cell;
        double v[2];
        for (int i = 0; i < 2; ++i) {
            if (!std::getline(row, cell, ',')) throw InvalidSpec(path + ": short row");
            v[i] = std::stod(cell);
        }
        samples.emplace_back(v[0], v[1]);
    }
    return sampled(std::move(samples));
}

RadiusEval RadiusFunction::eval(double u) const {
    switch (kind_) {
        case Kind::Constant:
            return {params_[0], 0.0, 0.0};
        case Kind::Linear:
            return {params_[0] * u + params_[1], params_[0], 0.0};
        case Kind::Quadratic:
            return {u * u, 2.0 * u, 2.0};
        case Kind::CosSq: {
            const double s = u * u;
            return {std::cos(s), -2.0 * u * std::sin(s),
                    -2.0 * std::sin(s) - 4.0 * u * u * std::cos(s)};
        }
        case Kind::CoshScaled: {
            const double c1 = params_[0], arg = u / c1 + params_[1];
            return {c1 * std::cosh(arg), std::sinh(arg), std::cosh(arg) / c1};
        }
        case Kind::Sampled:
            return {spline_->value(u), spline_->deriv1(u), spline_->deriv2(u)};
    }
    throw Error("unreachable radius kind");
}

}  // namespace canal4
