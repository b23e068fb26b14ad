#include "tat/phantoms.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "tat/io.hpp"

namespace tat {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Ellipse {
    double value, a, b, x0, y0, phi_deg;
};

// Classical Shepp-Logan parameter table (intensities additive).
const Ellipse kSheppLogan[10] = {
    {2.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.98, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
    {-0.02, 0.1100, 0.3100, 0.22, 0.0, -18.0},
    {-0.02, 0.1600, 0.4100, -0.22, 0.0, 18.0},
    {0.01, 0.2100, 0.2500, 0.0, 0.35, 0.0},
    {0.01, 0.0460, 0.0460, 0.0, 0.1, 0.0},
    {0.01, 0.0460, 0.0460, 0.0, -0.1, 0.0},
    {0.01, 0.0460, 0.0230, -0.08, -0.605, 0.0},
    {0.01, 0.0230, 0.0230, 0.0, -0.606, 0.0},
    {0.01, 0.0230, 0.0460, 0.06, -0.605, 0.0},
};

}  // namespace

std::vector<Disk> default_disks() {
    return {{-0.85, 0.85, 0.11, 1.0},
            {0.85, 0.85, 0.11, 1.0},
            {-0.85, -0.85, 0.11, 1.0},
            {0.85, -0.85, 0.11, 1.0}};
}

ScalarField shepp_logan(const Grid2D& g, const std::vector<Disk>& extra_disks, double scale,
                        double omega_half_width) {
    for (const auto& d : extra_disks)
        if (std::max(std::abs(d.cx), std::abs(d.cy)) * scale + d.r * scale > omega_half_width)
            throw std::invalid_argument("shepp_logan: disk outside Omega");

    ScalarField f(g, 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double xs = g.x(i) / scale, ys = g.y(j) / scale;
            double v = 0.0;
            for (const auto& e : kSheppLogan) {
                const double phi = e.phi_deg * kPi / 180.0;
                const double xr = (xs - e.x0) * std::cos(phi) + (ys - e.y0) * std::sin(phi);
                const double yr = -(xs - e.x0) * std::sin(phi) + (ys - e.y0) * std::cos(phi);
                if ((xr / e.a) * (xr / e.a) + (yr / e.b) * (yr / e.b) <= 1.0) v += e.value;
            }
            for (const auto& d : extra_disks) {
                const double dx = xs - d.cx, dy = ys - d.cy;
                if (dx * dx + dy * dy <= d.r * d.r) v = d.value;
            }
            f.at(i, j) = v;
        }
    return f;
}

ScalarField stripes_phantom(const Grid2D& g, double period) {
    ScalarField f(g, 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x(i), y = g.y(j);
            const double r = (x / 1.05) * (x / 1.05) + (y / 0.8) * (y / 0.8);
            if (r <= 1.0)
                f.at(i, j) = std::sin(2 * kPi * (x + 0.7 * y) / period) > 0.0 ? 1.0 : 0.0;
        }
    return f;
}

double smooth_bump_value(double x, double y, double cx, double cy, double radius,
                         double amplitude) {
    const double dx = (x - cx) / radius, dy = (y - cy) / radius;
    const double r2 = dx * dx + dy * dy;
    if (r2 >= 1.0) return 0.0;
    return amplitude * std::exp(1.0 - 1.0 / (1.0 - r2));
}

ScalarField smooth_bump(const Grid2D& g, double cx, double cy, double radius, double amplitude) {
    ScalarField f(g, 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            f.at(i, j) = smooth_bump_value(g.x(i), g.y(j), cx, cy, radius, amplitude);
    return f;
}

ScalarField random_smooth_field(const Grid2D& g, std::uint64_t seed, int n_bumps,
                                double support_half_width) {
    std::mt19937_64 rng(seed);
    auto uni = [&]() { return (rng() >> 11) * 0x1.0p-53; };
    ScalarField f(g, 0.0);
    for (int b = 0; b < n_bumps; ++b) {
        const double r = 0.12 + 0.25 * uni();
        const double cx = (support_half_width - r) * (2.0 * uni() - 1.0);
        const double cy = (support_half_width - r) * (2.0 * uni() - 1.0);
        const double amp = (uni() < 0.5 ? -1.0 : 1.0) * (0.4 + 0.6 * uni());
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                f.at(i, j) += smooth_bump_value(g.x(i), g.y(j), cx, cy, r, amp);
    }
    return f;
}

ScalarField load_image_phantom(const std::string& path, const Grid2D& g, const Region& fit) {
    PGMImage img = read_pgm(path);
    if (img.width < 2 || img.height < 2)
        throw std::invalid_argument("load_image_phantom: image too small");
    const auto& b = fit.box();
    if (b.ni() < 2 || b.nj() < 2) throw std::invalid_argument("load_image_phantom: empty fit");

    ScalarField f(g, 0.0);
    auto pixel = [&](int px, int py) {
        // PGM rows run top to bottom; flip so row 0 is y-max.
        return static_cast<double>(img.pixels[static_cast<std::size_t>(img.height - 1 - py) * img.width + px]) /
               img.maxval;
    };
    for (int j = b.j0; j <= b.j1; ++j)
        for (int i = b.i0; i <= b.i1; ++i) {
            const double u = static_cast<double>(i - b.i0) / (b.ni() - 1);
            const double v = static_cast<double>(j - b.j0) / (b.nj() - 1);
            const double sx = u * (img.width - 1);
            const double sy = v * (img.height - 1);
            const int px = std::min(static_cast<int>(sx), img.width - 2);
            const int py = std::min(static_cast<int>(sy), img.height - 2);
            const double ax = sx - px, ay = sy - py;
            f.at(i, j) = (1 - ax) * (1 - ay) * pixel(px, py) + ax * (1 - ay) * pixel(px + 1, py) +
                         (1 - ax) * ay * pixel(px, py + 1) + ax * ay * pixel(px + 1, py + 1);
        }
    return f;
}

BoundaryTrace add_noise(const BoundaryTrace& trace, double level, std::uint64_t seed) {
    if (level < 0.0) throw std::invalid_argument("add_noise: negative level");
    if (level == 0.0) return trace;

    std::mt19937_64 rng(seed);
    auto uni = [&]() { return ((rng() >> 11) + 0.5) * 0x1.0p-53; };  // (0,1)
    std::vector<double> noise(trace.values.size());
    for (std::size_t k = 0; k + 1 < noise.size(); k += 2) {
        const double u1 = uni(), u2 = uni();
        const double r = std::sqrt(-2.0 * std::log(u1));
        noise[k] = r * std::cos(2 * kPi * u2);
        noise[k + 1] = r * std::sin(2 * kPi * u2);
    }
    if (noise.size() % 2 == 1) {
        const double u1 = uni(), u2 = uni();
        noise.back() = std::sqrt(-2.0 * std::log(u1)) * std::cos(2 * kPi * u2);
    }

    double sn = 0.0, st = 0.0;
    for (double v : noise) sn += v * v;
    for (double v : trace.values) st += v * v;
    if (sn == 0.0) return trace;
    const double scale = level * std::sqrt(st / sn);

    BoundaryTrace out = trace;
    for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] += scale * noise[k];
    return out;
}

}  // namespace tat
