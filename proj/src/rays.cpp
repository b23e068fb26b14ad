#include "tat/rays.hpp"

#include <cmath>
#include <stdexcept>

namespace tat {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTangentCos = 0.008726535498373935;  // sin(0.5 deg)
constexpr double kCornerTol = 1e-6;

using Vec2 = std::array<double, 2>;

inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }
inline Vec2 unit(const Vec2& a) {
    const double n = norm(a);
    return {a[0] / n, a[1] / n};
}
inline double max_norm(const Vec2& a) { return std::max(std::abs(a[0]), std::abs(a[1])); }

// Side-locked speed evaluation; lock < 0 means the plain (smooth) model.
struct SpeedEval {
    const SpeedModel& m;
    int lock = -1;  // 1 inside S, 0 outside S

    double c(const Vec2& x) const {
        if (lock < 0) return m(x[0], x[1]);
        return m.side_eval(x[0], x[1], lock == 1);
    }
    Vec2 gc(const Vec2& x) const {
        if (lock < 0) return m.grad(x[0], x[1]);
        return m.side_grad(x[0], x[1], lock == 1);
    }
};

struct Z {
    Vec2 x, p;
};

inline Z deriv(const Z& z, const SpeedEval& ev) {
    const double c = ev.c(z.x);
    const Vec2 g = ev.gc(z.x);
    const double p2 = dot(z.p, z.p);
    return {{c * c * z.p[0], c * c * z.p[1]}, {-c * g[0] * p2, -c * g[1] * p2}};
}

inline Z axpy(const Z& a, double s, const Z& b) {
    return {{a.x[0] + s * b.x[0], a.x[1] + s * b.x[1]},
            {a.p[0] + s * b.p[0], a.p[1] + s * b.p[1]}};
}

Z rk4(const Z& z, double dt, const SpeedEval& ev) {
    const Z k1 = deriv(z, ev);
    const Z k2 = deriv(axpy(z, 0.5 * dt, k1), ev);
    const Z k3 = deriv(axpy(z, 0.5 * dt, k2), ev);
    const Z k4 = deriv(axpy(z, dt, k3), ev);
    Z out = z;
    for (int d = 0; d < 2; ++d) {
        out.x[d] += dt / 6.0 * (k1.x[d] + 2 * k2.x[d] + 2 * k3.x[d] + k4.x[d]);
        out.p[d] += dt / 6.0 * (k1.p[d] + 2 * k2.p[d] + 2 * k3.p[d] + k4.p[d]);
    }
    return out;
}

// Bisect the step fraction for level(x) = 0 crossing (level > 0 past it).
double bisect_crossing(const Z& z0, double dt, const SpeedEval& ev, double (*level)(const Vec2&, double),
                       double thr) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const Z zm = rk4(z0, mid * dt, ev);
        if (level(zm.x, thr) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double level_box(const Vec2& x, double hw) { return max_norm(x) - hw; }

}  // namespace

std::string to_string(RayEventKind k) {
    switch (k) {
        case RayEventKind::exit_boundary: return "exit_boundary";
        case RayEventKind::reflect: return "reflect";
        case RayEventKind::transmit: return "transmit";
        case RayEventKind::total_internal_reflection: return "total_internal_reflection";
        case RayEventKind::trapped_cap: return "trapped_cap";
        case RayEventKind::tangent_rejected: return "tangent_rejected";
    }
    return "?";
}

double critical_angle(double c_in, double c_out) {
    if (!(c_out > c_in)) throw std::invalid_argument("critical_angle: needs c_out > c_in");
    return std::asin(c_in / c_out);
}

GeodesicResult trace_geodesic(Vec2 x0, double theta, const SpeedModel& c, double t_max, double dt,
                              bool keep_path) {
    if (!c.smooth())
        throw std::invalid_argument("trace_geodesic: discontinuous speed, use trace_broken_ray");
    const double hw = c.omega_half_width;
    if (max_norm(x0) > hw + 1e-12) throw std::invalid_argument("trace_geodesic: x0 outside Omega");

    SpeedEval ev{c, -1};
    GeodesicResult res;
    Z z;
    z.x = x0;
    const double c0 = ev.c(z.x);
    z.p = {std::cos(theta) / c0, std::sin(theta) / c0};
    double t = 0.0;
    if (keep_path) res.path.push_back({z.x, z.p, t});

    while (t < t_max) {
        const double step = std::min(dt, t_max - t);
        const Z znext = rk4(z, step, ev);
        if (max_norm(znext.x) > hw) {
            const double a = bisect_crossing(z, step, ev, level_box, hw);
            const Z ze = rk4(z, a * step, ev);
            res.exited = true;
            res.exit_point = ze.x;
            res.exit_dir = unit(ze.p);
            res.exit_time = t + a * step;
            if (keep_path) res.path.push_back({ze.x, ze.p, res.exit_time});
            return res;
        }
        z = znext;
        t += step;
        res.hamiltonian_drift =
            std::max(res.hamiltonian_drift, std::abs(ev.c(z.x) * norm(z.p) - 1.0));
        if (keep_path) res.path.push_back({z.x, z.p, t});
    }
    res.exited = false;
    res.exit_time = t_max;
    res.exit_point = z.x;
    res.exit_dir = unit(z.p);
    return res;
}

namespace {

struct BranchCtx {
    const SpeedModel& model;
    double t_max;
    BranchPolicy policy;
    int depth_cap;
    double dt;
};

// Follow one smooth segment plus the branch structure beyond it.
BrokenRayResult follow(const BranchCtx& ctx, Z z, int side, double t, int depth) {
    const double hw = ctx.model.omega_half_width;
    const double s_hw = ctx.model.interface_half_width();
    SpeedEval ev{ctx.model, side};
    BrokenRayResult res;

    while (t < ctx.t_max) {
        const double step = std::min(ctx.dt, ctx.t_max - t);
        const Z znext = rk4(z, step, ev);
        if (max_norm(znext.x) > hw) {  // leaves Omega
            const double a = bisect_crossing(z, step, ev, level_box, hw);
            const Z ze = rk4(z, a * step, ev);
            res.exited = true;
            res.exit_point = ze.x;
            res.exit_time = t + a * step;
            res.events.push_back({RayEventKind::exit_boundary, ze.x, res.exit_time});
            return res;
        }
        const bool now_inside = max_norm(znext.x) < s_hw;
        if (now_inside != (side == 1)) {  // hit the interface S
            double a;
            if (side == 1) {
                a = bisect_crossing(z, step, ev, level_box, s_hw);
            } else {  // crossing inward: level flips sign
                double lo = 0.0, hi = 1.0;
                for (int it = 0; it < 60; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const Z zm = rk4(z, mid * step, ev);
                    if (max_norm(zm.x) < s_hw)
                        hi = mid;
                    else
                        lo = mid;
                }
                a = hi;
            }
            const Z zh = rk4(z, a * step, ev);
            const double th = t + a * step;
            const Vec2 q = zh.x;

            if (std::abs(std::abs(q[0]) - s_hw) < kCornerTol &&
                std::abs(std::abs(q[1]) - s_hw) < kCornerTol) {
                res.events.push_back({RayEventKind::tangent_rejected, q, th});
                res.tangent_hit = true;
                return res;
            }
            const int axis = std::abs(std::abs(q[0]) - s_hw) < std::abs(std::abs(q[1]) - s_hw) ? 0 : 1;
            Vec2 n{0.0, 0.0};
            n[axis] = q[axis] > 0 ? 1.0 : -1.0;  // outward normal of S

            const Vec2 d = unit(zh.p);
            const double dn = dot(d, n);
            const double cos_in = std::abs(dn);
            if (cos_in < kTangentCos) {
                res.events.push_back({RayEventKind::tangent_rejected, q, th});
                res.tangent_hit = true;
                return res;
            }
            const double sin_in = std::sqrt(std::max(0.0, 1.0 - cos_in * cos_in));
            const double c_in = ctx.model.side_eval(q[0], q[1], side == 1);
            const double c_out = ctx.model.side_eval(q[0], q[1], side != 1);
            const double sin_out = sin_in * c_out / c_in;
            const Vec2 d_refl{d[0] - 2 * dn * n[0], d[1] - 2 * dn * n[1]};

            auto relaunch = [&](const Vec2& dir, int new_side) {
                Z zz;
                zz.x = {q[0] + 1e-9 * dir[0], q[1] + 1e-9 * dir[1]};
                const double cs = ctx.model.side_eval(zz.x[0], zz.x[1], new_side == 1);
                zz.p = {dir[0] / cs, dir[1] / cs};
                return zz;
            };

            if (sin_out > 1.0) {  // full internal reflection
                res.events.push_back(
                    {RayEventKind::total_internal_reflection, q, th, sin_in, sin_out, c_in, c_out});
                if (depth + 1 > ctx.depth_cap) {
                    res.events.push_back({RayEventKind::trapped_cap, q, th});
                    res.exit_time = th;
                    return res;
                }
                BrokenRayResult tail = follow(ctx, relaunch(d_refl, side), side, th, depth + 1);
                res.events.insert(res.events.end(), tail.events.begin(), tail.events.end());
                res.exited = tail.exited;
                res.exit_point = tail.exit_point;
                res.exit_time = tail.exit_time;
                res.tangent_hit = tail.tangent_hit;
                return res;
            }

            const double cos_out = std::sqrt(std::max(0.0, 1.0 - sin_out * sin_out));
            Vec2 tvec{d[0] - dn * n[0], d[1] - dn * n[1]};
            const double tn = norm(tvec);
            Vec2 that = tn > 1e-14 ? Vec2{tvec[0] / tn, tvec[1] / tn} : Vec2{0.0, 0.0};
            const double sgn = dn > 0 ? 1.0 : -1.0;
            const Vec2 d_tr{sgn * cos_out * n[0] + sin_out * that[0],
                            sgn * cos_out * n[1] + sin_out * that[1]};
            const int other = side == 1 ? 0 : 1;

            if (depth + 1 > ctx.depth_cap) {
                res.events.push_back({RayEventKind::trapped_cap, q, th});
                res.exit_time = th;
                return res;
            }

            RayEvent ev_tr{RayEventKind::transmit, q, th, sin_in, sin_out, c_in, c_out};
            if (ctx.policy == BranchPolicy::strongest) {
                res.events.push_back(ev_tr);
                BrokenRayResult tail = follow(ctx, relaunch(d_tr, other), other, th, depth + 1);
                res.events.insert(res.events.end(), tail.events.begin(), tail.events.end());
                res.exited = tail.exited;
                res.exit_point = tail.exit_point;
                res.exit_time = tail.exit_time;
                res.tangent_hit = tail.tangent_hit;
                return res;
            }

            // tree policy: explore both, keep the earliest-exit branch's events
            BrokenRayResult bt = follow(ctx, relaunch(d_tr, other), other, th, depth + 1);
            BrokenRayResult br = follow(ctx, relaunch(d_refl, side), side, th, depth + 1);
            const bool take_tr = bt.exited && (!br.exited || bt.exit_time <= br.exit_time);
            const bool take_rf = br.exited && !take_tr;
            BrokenRayResult& best = take_rf ? br : bt;
            res.events.push_back(take_rf ? RayEvent{RayEventKind::reflect, q, th, sin_in, sin_in,
                                                    c_in, c_in}
                                         : ev_tr);
            res.events.insert(res.events.end(), best.events.begin(), best.events.end());
            res.exited = bt.exited || br.exited;
            res.exit_point = best.exit_point;
            res.exit_time = best.exit_time;
            res.tangent_hit = bt.tangent_hit && br.tangent_hit;
            return res;
        }
        z = znext;
        t += step;
    }
    res.events.push_back({RayEventKind::trapped_cap, z.x, ctx.t_max});
    res.exit_time = ctx.t_max;
    return res;
}

}  // namespace

BrokenRayResult trace_broken_ray(Vec2 x0, double theta, const SpeedModel& c, double t_max,
                                 BranchPolicy policy, int depth_cap, double dt) {
    if (c.smooth())
        throw std::invalid_argument("trace_broken_ray: smooth speed, use trace_geodesic");
    if (max_norm(x0) > c.omega_half_width + 1e-12)
        throw std::invalid_argument("trace_broken_ray: x0 outside Omega");
    const int side = max_norm(x0) < c.interface_half_width() ? 1 : 0;
    BranchCtx ctx{c, t_max, policy, depth_cap, dt};
    Z z;
    z.x = x0;
    const double c0 = c.side_eval(x0[0], x0[1], side == 1);
    z.p = {std::cos(theta) / c0, std::sin(theta) / c0};
    return follow(ctx, z, side, 0.0, 0);
}

ScalarField visibility_classify(const Region& k_region, const SpeedModel& c, double T, int n_dirs,
                                const BoundaryMask* chi, int stride, double dt) {
    if (n_dirs < 8 || n_dirs % 2 != 0)
        throw std::invalid_argument("visibility_classify: n_dirs must be even and >= 8");
    const auto& b = k_region.box();
    if (stride <= 0) stride = std::max(1, std::max(k_region.ni(), k_region.nj()) / 40);

    ScalarField map(k_region.grid(), 0.0);
    const Grid2D& g = k_region.grid();

    std::vector<double> tau(n_dirs);
    std::vector<char> obs(n_dirs);
    for (int j = b.j0; j <= b.j1; j += stride)
        for (int i = b.i0; i <= b.i1; i += stride) {
            const Vec2 x{g.x(i), g.y(j)};
            for (int d = 0; d < n_dirs; ++d) {
                const double th = 2.0 * kPi * d / n_dirs;
                bool ok = false;
                Vec2 ep{};
                if (c.smooth()) {
                    auto r = trace_geodesic(x, th, c, T, dt);
                    ok = r.exited;
                    ep = r.exit_point;
                } else {
                    auto r = trace_broken_ray(x, th, c, T, BranchPolicy::tree, 12, dt);
                    ok = r.exited;
                    ep = r.exit_point;
                }
                if (ok && chi && chi->value(ep[0], ep[1]) < 0.5) ok = false;
                obs[d] = ok ? 1 : 0;
            }
            int visible = 0;
            for (int d = 0; d < n_dirs; ++d)
                if (obs[d] || obs[(d + n_dirs / 2) % n_dirs]) ++visible;
            const double frac = static_cast<double>(visible) / n_dirs;
            for (int jj = j; jj < std::min(j + stride, b.j1 + 1); ++jj)
                for (int ii = i; ii < std::min(i + stride, b.i1 + 1); ++ii) map.at(ii, jj) = frac;
        }
    return map;
}

T1Estimate estimate_T1(const SpeedModel& c, const Region& region, int positions_per_axis,
                       double cap, int n_dirs, double dt) {
    if (!(cap > 0.0) || !std::isfinite(cap)) throw std::invalid_argument("estimate_T1: cap must be finite");
    if (n_dirs % 2 != 0) throw std::invalid_argument("estimate_T1: n_dirs must be even");
    T1Estimate est;
    const double x_lo = region.x_lo(), y_lo = region.y_lo();
    const double sx = (region.x_hi() - x_lo) / positions_per_axis;
    const double sy = (region.y_hi() - y_lo) / positions_per_axis;
    std::vector<double> tau(n_dirs);
    std::vector<char> trapped(n_dirs);
    for (int a = 0; a < positions_per_axis; ++a)
        for (int bb = 0; bb < positions_per_axis; ++bb) {
            const Vec2 x{x_lo + (a + 0.5) * sx, y_lo + (bb + 0.5) * sy};
            for (int d = 0; d < n_dirs; ++d) {
                const double th = 2.0 * kPi * d / n_dirs;
                if (c.smooth()) {
                    auto r = trace_geodesic(x, th, c, cap, dt);
                    tau[d] = r.exit_time;
                    trapped[d] = r.exited ? 0 : 1;
                } else {
                    auto r = trace_broken_ray(x, th, c, cap, BranchPolicy::tree, 12, dt);
                    tau[d] = r.exited ? r.exit_time : cap;
                    trapped[d] = r.exited ? 0 : 1;
                }
            }
            for (int d = 0; d < n_dirs / 2; ++d) {
                if (trapped[d] || trapped[d + n_dirs / 2]) est.exceeds_cap = true;
                est.value = std::max(est.value, tau[d] + tau[d + n_dirs / 2]);
            }
        }
    return est;
}

double symbol_of_K(Vec2 x, Vec2 xi, const BoundaryMask& chi, const SpeedModel& c, double cap,
                   double dt) {
    const double th = std::atan2(xi[1], xi[0]);
    const auto plus = trace_geodesic(x, th, c, cap, dt);
    const auto minus = trace_geodesic(x, th + kPi, c, cap, dt);
    if (!plus.exited || !minus.exited)
        throw std::runtime_error("symbol_of_K: trapped ray, symbol undefined within cap");
    return 1.0 - 0.5 * chi.value(plus.exit_point[0], plus.exit_point[1]) -
           0.5 * chi.value(minus.exit_point[0], minus.exit_point[1]);
}

}  // namespace tat
