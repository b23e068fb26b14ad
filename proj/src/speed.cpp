#include "tat/speed.hpp"

#include <cmath>
#include <stdexcept>

namespace tat {

namespace {

constexpr double kPi = 3.14159265358979323846;

double c1_raw(double x, double y) {
    return 1.0 + 0.2 * std::sin(2 * kPi * x) + 0.1 * std::cos(2 * kPi * y);
}

std::array<double, 2> c1_grad(double x, double y) {
    return {0.4 * kPi * std::cos(2 * kPi * x), -0.2 * kPi * std::sin(2 * kPi * y)};
}

double c2_raw(double x, double y) {
    const double r2 = x * x + y * y;
    const double r = std::sqrt(r2);
    return 9 * r2 / (1 + 9 * r2) + std::exp(-90 * r2) - 0.4 * std::exp(-10 * (3 * r - 2) * (3 * r - 2));
}

std::array<double, 2> c2_grad(double x, double y) {
    const double r2 = x * x + y * y;
    const double r = std::sqrt(r2);
    // d/dr2 of the first two terms, then chain rule via (2x, 2y)
    const double q = 1 + 9 * r2;
    double d_r2 = 9.0 / (q * q) - 90.0 * std::exp(-90 * r2);
    double gx = d_r2 * 2 * x, gy = d_r2 * 2 * y;
    if (r > 1e-12) {
        const double a = 3 * r - 2;
        const double d_r = -0.4 * std::exp(-10 * a * a) * (-20.0 * a) * 3.0;
        gx += d_r * x / r;
        gy += d_r * y / r;
    }
    return {gx, gy};
}

double c3_raw(double x, double y) {
    return 1.25 + std::sin(2 * kPi * x) * std::cos(2 * kPi * y);
}

std::array<double, 2> c3_grad(double x, double y) {
    return {2 * kPi * std::cos(2 * kPi * x) * std::cos(2 * kPi * y),
            -2 * kPi * std::sin(2 * kPi * x) * std::sin(2 * kPi * y)};
}

// Gradient of smooth_max_norm: dm/dx = (x/m)^15 (and same in y).
std::array<double, 2> smooth_max_norm_grad(double x, double y) {
    const double m = smooth_max_norm(x, y);
    if (m < 1e-12) return {0.0, 0.0};
    auto pw15 = [](double t) {
        const double t3 = t * t * t;
        const double t5 = t3 * t * t;
        return t5 * t5 * t5;  // t^15
    };
    return {pw15(x / m), pw15(y / m)};
}

double smoothstep_deriv(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return 30.0 * t * t * (t - 1.0) * (t - 1.0);
}

// c4/c5 profile outside the inner square: 1.6 on the band, quintic ramp to 1
// between band_edge and the Omega edge.
constexpr double kBandSpeed = 1.6;
constexpr double kBandEdge = 1.15;

double outer_profile(double x, double y, double omega_hw) {
    const double m = smooth_max_norm(x, y);
    const double s = smoothstep((m - kBandEdge) / (omega_hw - kBandEdge));
    return kBandSpeed + (1.0 - kBandSpeed) * s;
}

std::array<double, 2> outer_profile_grad(double x, double y, double omega_hw) {
    const double m = smooth_max_norm(x, y);
    const double t = (m - kBandEdge) / (omega_hw - kBandEdge);
    const double ds = smoothstep_deriv(t) / (omega_hw - kBandEdge);
    const auto gm = smooth_max_norm_grad(x, y);
    const double f = (1.0 - kBandSpeed) * ds;
    return {f * gm[0], f * gm[1]};
}

}  // namespace

double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double smooth_max_norm(double x, double y) {
    const double ax = std::abs(x), ay = std::abs(y);
    const double m = std::max(ax, ay);
    if (m == 0.0) return 0.0;
    const double rx = ax / m, ry = ay / m;
    auto pw16 = [](double t) {
        double t2 = t * t, t4 = t2 * t2, t8 = t4 * t4;
        return t8 * t8;
    };
    return m * std::pow(pw16(rx) + pw16(ry), 1.0 / 16.0);
}

SpeedModel SpeedModel::make(SpeedKind k, std::vector<double> params) {
    SpeedModel m;
    m.kind = k;
    m.params = std::move(params);
    if (k == SpeedKind::constant && m.params.empty()) m.params = {1.0};
    return m;
}

double SpeedModel::operator()(double x, double y) const {
    switch (kind) {
        case SpeedKind::c4:
        case SpeedKind::c5: {
            const double m = std::max(std::abs(x), std::abs(y));
            if (m <= interface_half_width())
                return kind == SpeedKind::c4 ? 0.8 : c1_raw(x, y);
            return outer_profile(x, y, omega_half_width);
        }
        default: break;
    }
    double raw;
    switch (kind) {
        case SpeedKind::c1: raw = c1_raw(x, y); break;
        case SpeedKind::c2: raw = c2_raw(x, y); break;
        case SpeedKind::c3: raw = c3_raw(x, y); break;
        case SpeedKind::constant: raw = params.at(0); break;
        case SpeedKind::custom: raw = custom_eval(x, y); break;
        default: raw = 1.0; break;
    }
    const double m = smooth_max_norm(x, y);
    const double w = 1.0 - smoothstep((m - (omega_half_width - cutoff_width)) / cutoff_width);
    return 1.0 + (raw - 1.0) * w;
}

std::array<double, 2> SpeedModel::grad(double x, double y) const {
    switch (kind) {
        case SpeedKind::c4:
        case SpeedKind::c5: {
            const double m = std::max(std::abs(x), std::abs(y));
            if (m < interface_half_width())
                return kind == SpeedKind::c4 ? std::array<double, 2>{0.0, 0.0} : c1_grad(x, y);
            return outer_profile_grad(x, y, omega_half_width);
        }
        default: break;
    }
    double raw;
    std::array<double, 2> graw;
    switch (kind) {
        case SpeedKind::c1: raw = c1_raw(x, y); graw = c1_grad(x, y); break;
        case SpeedKind::c2: raw = c2_raw(x, y); graw = c2_grad(x, y); break;
        case SpeedKind::c3: raw = c3_raw(x, y); graw = c3_grad(x, y); break;
        case SpeedKind::constant: return {0.0, 0.0};
        case SpeedKind::custom:
            if (custom_grad) {
                raw = custom_eval(x, y);
                graw = custom_grad(x, y);
            } else {  // finite-difference fallback
                const double d = 1e-6;
                return {((*this)(x + d, y) - (*this)(x - d, y)) / (2 * d),
                        ((*this)(x, y + d) - (*this)(x, y - d)) / (2 * d)};
            }
            break;
        default: raw = 1.0; graw = {0.0, 0.0}; break;
    }
    const double m = smooth_max_norm(x, y);
    const double t = (m - (omega_half_width - cutoff_width)) / cutoff_width;
    const double w = 1.0 - smoothstep(t);
    const double dw = -smoothstep_deriv(t) / cutoff_width;
    const auto gm = smooth_max_norm_grad(x, y);
    return {graw[0] * w + (raw - 1.0) * dw * gm[0], graw[1] * w + (raw - 1.0) * dw * gm[1]};
}

double SpeedModel::inner_limit(double x, double y) const {
    return kind == SpeedKind::c4 ? 0.8 : (kind == SpeedKind::c5 ? c1_raw(x, y) : (*this)(x, y));
}

double SpeedModel::outer_limit(double x, double y) const {
    if (kind == SpeedKind::c4 || kind == SpeedKind::c5) return outer_profile(x, y, omega_half_width);
    return (*this)(x, y);
}

double SpeedModel::side_eval(double x, double y, bool inside) const {
    return inside ? inner_limit(x, y) : outer_limit(x, y);
}

std::array<double, 2> SpeedModel::side_grad(double x, double y, bool inside) const {
    if (kind != SpeedKind::c4 && kind != SpeedKind::c5) return grad(x, y);
    if (inside) return kind == SpeedKind::c4 ? std::array<double, 2>{0.0, 0.0} : c1_grad(x, y);
    return outer_profile_grad(x, y, omega_half_width);
}

double SpeedModel::max_speed() const {
    switch (kind) {
        case SpeedKind::c1: return 1.3;
        case SpeedKind::c3: return 2.25;
        case SpeedKind::c4:
        case SpeedKind::c5: return kBandSpeed;
        case SpeedKind::constant: return std::max(params.at(0), 1.0);
        default: break;
    }
    double m = 1.0;
    const int n = 601;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double x = -1.5 + 3.0 * i / (n - 1);
            const double y = -1.5 + 3.0 * j / (n - 1);
            m = std::max(m, (*this)(x, y));
        }
    return m;
}

ScalarField eval_speed(const SpeedModel& model, const Grid2D& grid) {
    ScalarField c(grid);
    double cmin = 1e300;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const double v = model(grid.x(i), grid.y(j));
            c.at(i, j) = v;
            cmin = std::min(cmin, v);
        }
    if (!(cmin > 0.0)) throw std::invalid_argument("eval_speed: non-positive speed (invalid params)");
    return c;
}

}  // namespace tat
