#pragma once
// Source phantoms (Shepp-Logan with extra disks, stripes, smooth bumps),
// raster-image phantoms and trace noise injection.

#include <cstdint>
#include <string>
#include <vector>

#include "tat/grid.hpp"
#include "tat/wave.hpp"

namespace tat {

struct Disk {
    double cx = 0.0, cy = 0.0, r = 0.0;
    double value = 1.0;
};

// Disk placement used by the experiments (phantom coordinates, scale 1.1).
std::vector<Disk> default_disks();

// Classical 10-ellipse Shepp-Logan intensity map, phantom coordinates scaled
// by `scale` into the grid's physical frame, plus disks (values set, not
// added). Disks must fit inside |x|,|y| <= omega_half_width.
ScalarField shepp_logan(const Grid2D& g, const std::vector<Disk>& extra_disks = default_disks(),
                        double scale = 1.1, double omega_half_width = 1.28);

// Zebra-like oblique stripe pattern inside an ellipse. Values in {0, 1}.
ScalarField stripes_phantom(const Grid2D& g, double period = 0.25);

// C-infinity bump: amplitude * exp(1 - 1/(1 - (r/radius)^2)) inside, 0 outside.
ScalarField smooth_bump(const Grid2D& g, double cx, double cy, double radius,
                        double amplitude = 1.0);
double smooth_bump_value(double x, double y, double cx, double cy, double radius,
                         double amplitude = 1.0);

// Random H_D(Omega) member: a few random smooth bumps strictly inside Omega.
ScalarField random_smooth_field(const Grid2D& g, std::uint64_t seed, int n_bumps = 6,
                                double support_half_width = 1.0);

// Grayscale PGM resampled bilinearly into the fit region, pixel/maxval
// intensities (white = 1), zero outside the fit box.
ScalarField load_image_phantom(const std::string& path, const Grid2D& g, const Region& fit);

// Additive Gaussian noise with ||noise||_2 = level * ||trace||_2 exactly;
// bit-reproducible for a fixed seed.
BoundaryTrace add_noise(const BoundaryTrace& trace, double level, std::uint64_t seed);

}  // namespace tat
