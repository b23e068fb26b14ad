#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "doctest.h"
#include "tat/io.hpp"
#include "tat/phantoms.hpp"
#include "tat/speed.hpp"

using namespace tat;

namespace {

std::string tmp_path(const std::string& name) { return std::string("/tmp/tat_test_") + name; }

}  // namespace

TEST_CASE("shepp-logan values from the canonical ellipse table") {
    Grid2D g = Grid2D::square(301);
    ScalarField f = shepp_logan(g, {});  // no disks

    // (0, 0.9) in phantom coordinates = (0, 0.99) physical with scale 1.1:
    // inside the outer ellipse only -> intensity 2.0
    CHECK(f.at(150, 249) == doctest::Approx(2.0));
    // deep interior point (0, 0): ellipses 1 + 2 -> 2.0 - 0.98 = 1.02
    CHECK(f.at(150, 150) == doctest::Approx(1.02));
    // far corner: outside everything
    CHECK(f.at(10, 10) == 0.0);

    // a single disk sets the value to 1 on the disk
    ScalarField fd = shepp_logan(g, {{0.0, 0.0, 0.1, 1.0}});
    CHECK(fd.at(150, 150) == doctest::Approx(1.0));

    CHECK_THROWS_AS(shepp_logan(g, {{1.3, 0.0, 0.1, 1.0}}), std::invalid_argument);
}

TEST_CASE("default disks standing inside Omega") {
    Grid2D g = Grid2D::square(201);
    ScalarField f = shepp_logan(g);
    Region om = Region::omega(g);
    // phantom vanishes on and outside the Omega frame
    const auto& nodes = om.boundary_nodes();
    for (const auto& [i, j] : nodes) CHECK(f.at(i, j) == 0.0);
}

TEST_CASE("pgm round trip and image phantom") {
    // 2x2 checkerboard, maxval 255
    const std::string path = tmp_path("checker.pgm");
    {
        std::ofstream out(path, std::ios::binary);
        out << "P5\n2 2\n255\n";
        const unsigned char px[4] = {255, 0, 0, 255};
        out.write(reinterpret_cast<const char*>(px), 4);
    }
    PGMImage img = read_pgm(path);
    CHECK(img.width == 2);
    CHECK(img.maxval == 255);

    Grid2D g = Grid2D::square(5, 1.0);  // node at the exact midpoint
    Region fit = Region::full(g);
    ScalarField f = load_image_phantom(path, g, fit);
    CHECK(f.at(2, 2) == doctest::Approx(0.5));  // bilinear center of the checkerboard
    // hand bilinear at (1/4, 1/4) from the bottom-left: neighbors there are
    // bl=0, br=1, tl=1, tr=0 (rows flip on load), so 2 * (1/4)(3/4) = 0.375
    CHECK(f.at(1, 1) == doctest::Approx(0.375));

    // all-white and all-black images
    const std::string w = tmp_path("white.pgm");
    {
        std::ofstream out(w, std::ios::binary);
        out << "P5\n3 3\n255\n";
        const unsigned char px[9] = {255, 255, 255, 255, 255, 255, 255, 255, 255};
        out.write(reinterpret_cast<const char*>(px), 9);
    }
    ScalarField fw = load_image_phantom(w, g, fit);
    for (double v : fw.data) CHECK(v == doctest::Approx(1.0));

    std::remove(path.c_str());
    std::remove(w.c_str());
}

TEST_CASE("field binary + sidecar round trip") {
    Grid2D g = Grid2D::square(51);
    ScalarField f = smooth_bump(g, 0.2, -0.1, 0.5, 2.5);
    const std::string base = tmp_path("field");
    write_field(base, f);
    ScalarField r = read_field(base);
    CHECK(r.grid.same_as(f.grid));
    for (std::size_t k = 0; k < f.data.size(); ++k) CHECK(r.data[k] == f.data[k]);
    std::remove((base + ".f64").c_str());
    std::remove((base + ".json").c_str());
}

TEST_CASE("trace file round trip") {
    Grid2D g = Grid2D::square(51);
    Region om = Region::omega(g);
    ScalarField c = eval_speed(SpeedModel::constant(1.0), g);
    ScalarField f = smooth_bump(g, 0.0, 0.0, 0.4);
    BoundaryTrace tr = forward_measure(f, c, 0.5, PMLProfile::build(g), om);
    const std::string path = tmp_path("trace.bin");
    write_trace(path, tr);
    BoundaryTrace r = read_trace(path, g);
    CHECK(r.n_steps == tr.n_steps);
    CHECK(r.dt == tr.dt);
    REQUIRE(r.values.size() == tr.values.size());
    for (std::size_t k = 0; k < tr.values.size(); ++k) CHECK(r.values[k] == tr.values[k]);
    std::remove(path.c_str());
}

TEST_CASE("noise level is exactly normalized and deterministic") {
    Grid2D g = Grid2D::square(51);
    Region om = Region::omega(g);
    ScalarField c = eval_speed(SpeedModel::constant(1.0), g);
    ScalarField f = smooth_bump(g, 0.0, 0.0, 0.4);
    BoundaryTrace tr = forward_measure(f, c, 1.0, PMLProfile::build(g), om);

    BoundaryTrace n0 = add_noise(tr, 0.0, 7);
    for (std::size_t k = 0; k < tr.values.size(); ++k) CHECK(n0.values[k] == tr.values[k]);

    BoundaryTrace n1 = add_noise(tr, 0.1, 7);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < tr.values.size(); ++k) {
        const double d = n1.values[k] - tr.values[k];
        num += d * d;
        den += tr.values[k] * tr.values[k];
    }
    CHECK(std::sqrt(num / den) == doctest::Approx(0.1).epsilon(1e-10));

    BoundaryTrace n2 = add_noise(tr, 0.1, 7);
    for (std::size_t k = 0; k < tr.values.size(); ++k) CHECK(n2.values[k] == n1.values[k]);

    BoundaryTrace n3 = add_noise(tr, 0.1, 8);
    bool differs = false;
    for (std::size_t k = 0; k < tr.values.size(); ++k)
        if (n3.values[k] != n1.values[k]) differs = true;
    CHECK(differs);

    CHECK_THROWS_AS(add_noise(tr, -0.1, 7), std::invalid_argument);
}

TEST_CASE("image phantoms live in [0,1]; stripes are binary") {
    Grid2D g = Grid2D::square(101);
    ScalarField s = stripes_phantom(g);
    for (double v : s.data) CHECK((v == 0.0 || v == 1.0));
}

TEST_CASE("manifest lists files with hashes") {
    const std::string dir = "/tmp/tat_test_manifest";
    std::filesystem::create_directories(dir);
    {
        std::ofstream a(dir + "/a.txt");
        a << "alpha";
        std::ofstream b(dir + "/b.txt");
        b << "beta";
    }
    write_manifest(dir, {"a.txt", "b.txt"});
    std::ifstream m(dir + "/manifest.json");
    REQUIRE(m.good());
    std::string content((std::istreambuf_iterator<char>(m)), std::istreambuf_iterator<char>());
    CHECK(content.find("a.txt") != std::string::npos);
    CHECK(content.find("fnv1a64") != std::string::npos);
    std::filesystem::remove_all(dir);
}
