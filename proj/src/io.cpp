#include "tat/io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace tat {

using nlohmann::json;

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error(what);
}

}  // namespace

void write_field(const std::string& base, const ScalarField& f) {
    {
        std::ofstream out(base + ".f64", std::ios::binary);
        require(out.good(), "write_field: cannot open " + base + ".f64");
        out.write(reinterpret_cast<const char*>(f.data.data()),
                  static_cast<std::streamsize>(f.data.size() * sizeof(double)));
    }
    json j;
    j["nx"] = f.grid.nx;
    j["ny"] = f.grid.ny;
    j["bounds"] = {{"x_min", f.grid.x_min},
                   {"x_max", f.grid.x_max},
                   {"y_min", f.grid.y_min},
                   {"y_max", f.grid.y_max}};
    std::ofstream out(base + ".json");
    require(out.good(), "write_field: cannot open " + base + ".json");
    out << j.dump(2) << "\n";
}

ScalarField read_field(const std::string& base) {
    std::ifstream meta(base + ".json");
    require(meta.good(), "read_field: cannot open " + base + ".json");
    json j;
    meta >> j;
    const Grid2D g = Grid2D::box(j.at("nx"), j.at("ny"), j.at("bounds").at("x_min"),
                                 j.at("bounds").at("x_max"), j.at("bounds").at("y_min"),
                                 j.at("bounds").at("y_max"));
    ScalarField f(g);
    std::ifstream in(base + ".f64", std::ios::binary);
    require(in.good(), "read_field: cannot open " + base + ".f64");
    in.read(reinterpret_cast<char*>(f.data.data()),
            static_cast<std::streamsize>(f.data.size() * sizeof(double)));
    require(in.gcount() == static_cast<std::streamsize>(f.data.size() * sizeof(double)),
            "read_field: truncated payload");
    return f;
}

PGMImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "read_pgm: cannot open " + path);
    std::string magic;
    in >> magic;
    require(magic == "P5", "read_pgm: not a P5 file");
    auto next_int = [&]() {
        int v;
        while (true) {
            in >> std::ws;
            if (in.peek() == '#') {
                std::string line;
                std::getline(in, line);
                continue;
            }
            in >> v;
            require(static_cast<bool>(in), "read_pgm: bad header");
            return v;
        }
    };
    PGMImage img;
    img.width = next_int();
    img.height = next_int();
    img.maxval = next_int();
    require(img.width > 0 && img.height > 0 && img.maxval > 0 && img.maxval < 65536,
            "read_pgm: bad dimensions");
    in.get();  // single whitespace after maxval
    const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
    img.pixels.resize(n);
    if (img.maxval < 256) {
        std::vector<unsigned char> raw(n);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
        require(in.gcount() == static_cast<std::streamsize>(n), "read_pgm: truncated");
        for (std::size_t k = 0; k < n; ++k) img.pixels[k] = raw[k];
    } else {
        std::vector<unsigned char> raw(2 * n);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(2 * n));
        require(in.gcount() == static_cast<std::streamsize>(2 * n), "read_pgm: truncated");
        for (std::size_t k = 0; k < n; ++k)
            img.pixels[k] = static_cast<std::uint16_t>((raw[2 * k] << 8) | raw[2 * k + 1]);
    }
    return img;
}

void write_pgm(const std::string& path, const ScalarField& f) {
    double lo = f.data[0], hi = f.data[0];
    for (double v : f.data) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double span = hi > lo ? hi - lo : 1.0;
    std::ofstream out(path, std::ios::binary);
    require(out.good(), "write_pgm: cannot open " + path);
    out << "P5\n" << f.grid.nx << " " << f.grid.ny << "\n255\n";
    std::vector<unsigned char> row(f.grid.nx);
    for (int j = f.grid.ny - 1; j >= 0; --j) {
        for (int i = 0; i < f.grid.nx; ++i)
            row[i] = static_cast<unsigned char>(std::lround(255.0 * (f.at(i, j) - lo) / span));
        out.write(reinterpret_cast<const char*>(row.data()), f.grid.nx);
    }
}

void write_trace(const std::string& path, const BoundaryTrace& trace) {
    json j;
    j["n_t"] = trace.n_steps;
    j["dt"] = trace.dt;
    j["mask"] = trace.mask;
    json nodes = json::array();
    for (const auto& [i, jj] : trace.region.boundary_nodes()) nodes.push_back({i, jj});
    j["nodes"] = nodes;
    const auto& b = trace.region.box();
    j["box"] = {b.i0, b.i1, b.j0, b.j1};

    std::ofstream out(path, std::ios::binary);
    require(out.good(), "write_trace: cannot open " + path);
    out << j.dump() << "\n";
    out.write(reinterpret_cast<const char*>(trace.values.data()),
              static_cast<std::streamsize>(trace.values.size() * sizeof(double)));
}

BoundaryTrace read_trace(const std::string& path, const Grid2D& grid) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "read_trace: cannot open " + path);
    std::string header;
    std::getline(in, header);
    json j = json::parse(header);

    BoundaryTrace trace;
    const auto& box = j.at("box");
    trace.region = Region(grid, IndexBox{box.at(0), box.at(1), box.at(2), box.at(3)});
    trace.n_steps = j.at("n_t");
    trace.dt = j.at("dt");
    trace.mask = j.at("mask").get<std::vector<double>>();
    require(trace.mask.size() == trace.region.n_boundary(), "read_trace: mask size mismatch");
    trace.values.resize(static_cast<std::size_t>(trace.n_steps + 1) * trace.n_nodes());
    in.read(reinterpret_cast<char*>(trace.values.data()),
            static_cast<std::streamsize>(trace.values.size() * sizeof(double)));
    require(in.gcount() == static_cast<std::streamsize>(trace.values.size() * sizeof(double)),
            "read_trace: truncated payload");
    return trace;
}

namespace {

void write_slice(const std::string& path, const std::vector<std::string>& names,
                 const std::vector<const ScalarField*>& fields, bool x_slice) {
    require(!fields.empty() && names.size() == fields.size(), "write_slice: bad arguments");
    const Grid2D& g = fields[0]->grid;
    std::ofstream out(path);
    require(out.good(), "write_slice: cannot open " + path);
    out << (x_slice ? "x" : "y");
    for (const auto& n : names) out << "," << n;
    out << "\n";
    out.precision(12);
    const int n = x_slice ? g.nx : g.ny;
    const int mid = x_slice ? g.ny / 2 : g.nx / 2;
    for (int k = 0; k < n; ++k) {
        out << (x_slice ? g.x(k) : g.y(k));
        for (const auto* f : fields) out << "," << (x_slice ? f->at(k, mid) : f->at(mid, k));
        out << "\n";
    }
}

}  // namespace

void write_x_slice_csv(const std::string& path, const std::vector<std::string>& names,
                       const std::vector<const ScalarField*>& fields) {
    write_slice(path, names, fields, true);
}

void write_y_slice_csv(const std::string& path, const std::vector<std::string>& names,
                       const std::vector<const ScalarField*>& fields) {
    write_slice(path, names, fields, false);
}

std::string file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "file_hash: cannot open " + path);
    std::uint64_t h = 1469598103934665603ull;
    char buf[65536];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        const std::streamsize n = in.gcount();
        for (std::streamsize k = 0; k < n; ++k) {
            h ^= static_cast<unsigned char>(buf[k]);
            h *= 1099511628211ull;
        }
        if (!in) break;
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

void write_manifest(const std::string& dir, const std::vector<std::string>& files) {
    json j;
    j["files"] = json::array();
    for (const auto& name : files) {
        const std::string full = dir + "/" + name;
        std::ifstream in(full, std::ios::binary | std::ios::ate);
        require(in.good(), "write_manifest: missing " + full);
        j["files"].push_back(
            {{"name", name}, {"bytes", static_cast<std::uint64_t>(in.tellg())}, {"fnv1a64", file_hash(full)}});
    }
    std::ofstream out(dir + "/manifest.json");
    require(out.good(), "write_manifest: cannot open manifest");
    out << j.dump(2) << "\n";
}

}  // namespace tat
