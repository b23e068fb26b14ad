#pragma once
// File formats: field binary + JSON sidecar, PGM in/out, trace files,
// slice CSVs and the output manifest.

#include <cstdint>
#include <string>
#include <vector>

#include "tat/grid.hpp"
#include "tat/wave.hpp"

namespace tat {

// <base>.f64: row-major little-endian doubles; <base>.json: {nx, ny, bounds}.
void write_field(const std::string& base, const ScalarField& f);
ScalarField read_field(const std::string& base);

struct PGMImage {
    int width = 0, height = 0, maxval = 255;
    std::vector<std::uint16_t> pixels;  // row-major, top row first
};

PGMImage read_pgm(const std::string& path);
// P5, 8-bit, linear min-max scaling; rows top-to-bottom = y-max to y-min.
void write_pgm(const std::string& path, const ScalarField& f);

// Single file: one JSON header line {n_t, dt, nodes, mask} + '\n' + raw
// little-endian payload, time-major.
void write_trace(const std::string& path, const BoundaryTrace& trace);
BoundaryTrace read_trace(const std::string& path, const Grid2D& grid);

// One row per x: x, then one column per field (center y-row slice).
void write_x_slice_csv(const std::string& path, const std::vector<std::string>& names,
                       const std::vector<const ScalarField*>& fields);
void write_y_slice_csv(const std::string& path, const std::vector<std::string>& names,
                       const std::vector<const ScalarField*>& fields);

// FNV-1a 64-bit content hash, hex string.
std::string file_hash(const std::string& path);

// manifest.json in `dir`: every listed file with size and content hash.
void write_manifest(const std::string& dir, const std::vector<std::string>& files);

}  // namespace tat
