#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "tat/io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kBin = TATREC_BIN;
const std::string kWork = "/tmp/tat_cli_test";

int run(const std::string& args) {
    return std::system((kBin + " " + args + " > /dev/null 2>&1").c_str());
}

void write_config(const std::string& path, const std::string& extra = "") {
    std::ofstream out(path);
    out << R"({
  "grid": {"nx": 101},
  "speed": {"kind": "c1"},
  "phantom": {"kind": "bump", "cx": 0.2, "cy": -0.1, "radius": 0.4},
  "time": {"T_mult": 1.5},
  "noise": {"level": 0.05, "seed": 424242},
  "method": {"name": "both", "max_terms": 2, "tol": 0})"
        << extra << "\n}\n";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("run produces a full artifact directory") {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
    write_config(kWork + "/cfg.json");
    REQUIRE(run("run --config " + kWork + "/cfg.json --out " + kWork + "/out") == 0);
    for (const char* f : {"report.json", "manifest.json", "phantom.f64", "phantom.pgm",
                          "recon_ns.f64", "recon_tr.f64", "trace.bin", "x_slices.csv",
                          "y_slices.csv", "traveltime.pgm"})
        CHECK(fs::exists(kWork + "/out/" + f));
    // manifest covers the report
    CHECK(slurp(kWork + "/out/manifest.json").find("report.json") != std::string::npos);
    // report carries a populated rel_error
    CHECK(slurp(kWork + "/out/report.json").find("rel_error") != std::string::npos);
}

TEST_CASE("fixed seed makes repeated runs byte-identical") {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
    write_config(kWork + "/cfg.json");
    REQUIRE(run("run --config " + kWork + "/cfg.json --out " + kWork + "/a") == 0);
    REQUIRE(run("run --config " + kWork + "/cfg.json --out " + kWork + "/b") == 0);
    for (const char* f : {"recon_ns.f64", "recon_tr.f64", "trace.bin", "manifest.json"}) {
        CHECK(slurp(kWork + "/a/" + f) == slurp(kWork + "/b/" + f));
    }
    // reports differ only in the output dir not stored in them
    std::string ra = slurp(kWork + "/a/report.json");
    std::string rb = slurp(kWork + "/b/report.json");
    CHECK(ra == rb);
}

TEST_CASE("invalid configs are rejected with a nonzero exit") {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
    {
        std::ofstream out(kWork + "/bad.json");
        out << R"({"time": {"T_mult": 0}})" << "\n";
    }
    CHECK(run("run --config " + kWork + "/bad.json --out " + kWork + "/out") != 0);
    {
        std::ofstream out(kWork + "/bad2.json");
        out << R"({"speed": {"kind": "c9"}})" << "\n";
    }
    CHECK(run("run --config " + kWork + "/bad2.json --out " + kWork + "/out") != 0);
    CHECK(run("run --config " + kWork + "/missing.json") != 0);
}

TEST_CASE("method tr produces exactly the zeroth iterate") {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
    {
        std::ofstream out(kWork + "/cfg.json");
        out << R"({
  "grid": {"nx": 101},
  "speed": {"kind": "c1"},
  "phantom": {"kind": "bump", "radius": 0.4},
  "time": {"T_mult": 1.5},
  "method": {"name": "both", "max_terms": 1, "tol": 0}
})";
    }
    REQUIRE(run("run --config " + kWork + "/cfg.json --out " + kWork + "/out") == 0);
    // with max_terms 1 the NS result equals the TR baseline bit for bit
    CHECK(slurp(kWork + "/out/recon_ns.f64") == slurp(kWork + "/out/recon_tr.f64"));
    CHECK(fs::exists(kWork + "/out/ns_iter_0.f64"));
    CHECK_FALSE(fs::exists(kWork + "/out/ns_iter_1.f64"));
}

TEST_CASE("forward then reconstruct round trip via files") {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
    REQUIRE(run("forward --speed c1 --phantom stripes --nx 101 --T 2.0 --out " + kWork) == 0);
    REQUIRE(fs::exists(kWork + "/trace.bin"));
    REQUIRE(run("reconstruct --trace " + kWork + "/trace.bin --speed c1 --nx 101 --method ns "
                "--max-terms 2 --out " + kWork) == 0);
    CHECK(fs::exists(kWork + "/recon_ns.f64"));
    CHECK(fs::exists(kWork + "/report.json"));
}

TEST_CASE("eikonal, raytrace and phantom subcommands") {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
    CHECK(run("eikonal --speed c1 --gamma all --nx 151 --out " + kWork) == 0);
    CHECK(fs::exists(kWork + "/traveltime.pgm"));
    CHECK(run("raytrace --speed c4 --from -0.5,0 --dir 0.7,0.7 --t-max 3 --out " + kWork) == 0);
    CHECK(fs::exists(kWork + "/ray_events.csv"));
    CHECK(run("raytrace --speed c1 --from 0,0 --dir 1,0 --t-max 3 --out " + kWork) == 0);
    CHECK(fs::exists(kWork + "/ray.csv"));
    CHECK(run("phantom --kind shepp_logan --nx 101 --out " + kWork) == 0);
    CHECK(fs::exists(kWork + "/phantom.pgm"));
}
