#include "tat/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace tat {

Grid2D Grid2D::box(int nx, int ny, double x_min, double x_max, double y_min, double y_max) {
    if (nx < 3 || ny < 3) throw std::invalid_argument("Grid2D: nx, ny must be >= 3");
    if (!(x_max > x_min) || !(y_max > y_min)) throw std::invalid_argument("Grid2D: empty bounds");
    Grid2D g;
    g.nx = nx;
    g.ny = ny;
    g.x_min = x_min;
    g.x_max = x_max;
    g.y_min = y_min;
    g.y_max = y_max;
    g.h = (x_max - x_min) / (nx - 1);
    const double hy = (y_max - y_min) / (ny - 1);
    if (std::abs(hy - g.h) > 1e-12 * g.h)
        throw std::invalid_argument("Grid2D: spacing must be identical in x and y");
    return g;
}

Grid2D Grid2D::square(int n, double half_width) {
    return box(n, n, -half_width, half_width, -half_width, half_width);
}

bool Grid2D::same_as(const Grid2D& o) const {
    return nx == o.nx && ny == o.ny && std::abs(x_min - o.x_min) < 1e-12 &&
           std::abs(x_max - o.x_max) < 1e-12 && std::abs(y_min - o.y_min) < 1e-12 &&
           std::abs(y_max - o.y_max) < 1e-12;
}

bool ScalarField::all_finite() const {
    for (double v : data)
        if (!std::isfinite(v)) return false;
    return true;
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : data) m = std::max(m, std::abs(v));
    return m;
}

Region::Region(const Grid2D& g, IndexBox b) : grid_(g), box_(b) {
    if (b.ni() < 3 || b.nj() < 3) throw std::invalid_argument("Region: box must span >= 3 nodes");
    if (b.i0 < 0 || b.j0 < 0 || b.i1 >= g.nx || b.j1 >= g.ny)
        throw std::invalid_argument("Region: box outside grid");
}

Region Region::omega(const Grid2D& g, double half_width) {
    IndexBox b;
    b.i0 = static_cast<int>(std::ceil((-half_width - g.x_min) / g.h - 1e-9));
    b.i1 = static_cast<int>(std::floor((half_width - g.x_min) / g.h + 1e-9));
    b.j0 = static_cast<int>(std::ceil((-half_width - g.y_min) / g.h - 1e-9));
    b.j1 = static_cast<int>(std::floor((half_width - g.y_min) / g.h + 1e-9));
    return Region(g, b);
}

Region Region::full(const Grid2D& g) {
    return Region(g, IndexBox{0, g.nx - 1, 0, g.ny - 1});
}

const std::vector<std::pair<int, int>>& Region::boundary_nodes() const {
    if (!bnodes_.empty()) return bnodes_;
    const auto& b = box_;
    for (int i = b.i0; i <= b.i1; ++i) bnodes_.emplace_back(i, b.j0);          // S
    for (int j = b.j0 + 1; j <= b.j1; ++j) bnodes_.emplace_back(b.i1, j);      // E
    for (int i = b.i1 - 1; i >= b.i0; --i) bnodes_.emplace_back(i, b.j1);      // N
    for (int j = b.j1 - 1; j >= b.j0 + 1; --j) bnodes_.emplace_back(b.i0, j);  // W
    return bnodes_;
}

const std::vector<double>& Region::boundary_arclen() const {
    if (!barclen_.empty()) return barclen_;
    const auto& nodes = boundary_nodes();
    barclen_.resize(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) barclen_[k] = grid_.h * static_cast<double>(k);
    return barclen_;
}

double hd_norm(const ScalarField& f, const Region& region) {
    if (!f.grid.same_as(region.grid())) throw std::invalid_argument("hd_norm: grid mismatch");
    const auto& b = region.box();
    if (b.ni() < 2 || b.nj() < 2) throw std::invalid_argument("hd_norm: empty region");
    double s = 0.0;
    for (int j = b.j0; j <= b.j1; ++j)
        for (int i = b.i0; i < b.i1; ++i) {
            const double d = f.at(i + 1, j) - f.at(i, j);
            s += d * d;
        }
    for (int j = b.j0; j < b.j1; ++j)
        for (int i = b.i0; i <= b.i1; ++i) {
            const double d = f.at(i, j + 1) - f.at(i, j);
            s += d * d;
        }
    return std::sqrt(s);  // ((df/h)^2 h^2) sums telescope to plain squared differences
}

double l2_norm(const ScalarField& f, const Region& region) {
    if (!f.grid.same_as(region.grid())) throw std::invalid_argument("l2_norm: grid mismatch");
    const auto& b = region.box();
    double s = 0.0;
    for (int j = b.j0; j <= b.j1; ++j)
        for (int i = b.i0; i <= b.i1; ++i) {
            const double v = f.at(i, j);
            s += v * v;
        }
    return std::sqrt(s) * region.grid().h;
}

double l2_rel_error(const ScalarField& f, const ScalarField& g, const Region& region) {
    if (!f.grid.same_as(g.grid)) throw std::invalid_argument("l2_rel_error: grid mismatch");
    const double den = l2_norm(g, region);
    if (den == 0.0) throw std::invalid_argument("l2_rel_error: reference has zero norm");
    const auto& b = region.box();
    double s = 0.0;
    for (int j = b.j0; j <= b.j1; ++j)
        for (int i = b.i0; i <= b.i1; ++i) {
            const double d = f.at(i, j) - g.at(i, j);
            s += d * d;
        }
    return std::sqrt(s) * region.grid().h / den;
}

}  // namespace tat
