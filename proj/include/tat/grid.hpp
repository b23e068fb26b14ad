#pragma once
// Uniform Cartesian grids, scalar fields, node regions and the discrete
// norms shared by every solver in the toolkit.

#include <cstddef>
#include <utility>
#include <vector>

namespace tat {

struct Grid2D {
    int nx = 0, ny = 0;
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;
    double h = 0.0;  // node spacing, identical in x and y

    // Throws if the bounds do not yield square cells or nx/ny < 3.
    static Grid2D box(int nx, int ny, double x_min, double x_max, double y_min, double y_max);

    // n x n nodes over [-half_width, half_width]^2 (default computational box).
    static Grid2D square(int n, double half_width = 1.5);

    double x(int i) const { return x_min + h * i; }
    double y(int j) const { return y_min + h * j; }
    std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
    bool same_as(const Grid2D& o) const;
};

struct ScalarField {
    Grid2D grid;
    std::vector<double> data;  // row-major, data[j*nx + i]

    ScalarField() = default;
    explicit ScalarField(const Grid2D& g, double fill = 0.0)
        : grid(g), data(g.size(), fill) {}

    double& at(int i, int j) { return data[grid.idx(i, j)]; }
    double at(int i, int j) const { return data[grid.idx(i, j)]; }

    bool all_finite() const;
    double max_abs() const;
};

struct IndexBox {
    int i0 = 0, i1 = -1, j0 = 0, j1 = -1;

    int ni() const { return i1 - i0 + 1; }
    int nj() const { return j1 - j0 + 1; }
    bool contains(int i, int j) const { return i >= i0 && i <= i1 && j >= j0 && j <= j1; }
    bool interior(int i, int j) const { return i > i0 && i < i1 && j > j0 && j < j1; }
    bool on_frame(int i, int j) const { return contains(i, j) && !interior(i, j); }
};

// A node-aligned square subdomain of the computational box. Used both for
// Omega (the observation square) and for compact subsets K of it. Nodes
// split into interior, boundary (the frame) and exterior (the PML collar
// when the region is Omega).
class Region {
  public:
    Region() = default;
    Region(const Grid2D& g, IndexBox b);

    // Largest node-aligned square with |x|,|y| <= half_width.
    static Region omega(const Grid2D& g, double half_width = 1.28);
    // All nodes of the grid.
    static Region full(const Grid2D& g);

    const Grid2D& grid() const { return grid_; }
    const IndexBox& box() const { return box_; }
    int ni() const { return box_.ni(); }
    int nj() const { return box_.nj(); }

    bool contains(int i, int j) const { return box_.contains(i, j); }
    bool interior(int i, int j) const { return box_.interior(i, j); }
    bool on_boundary(int i, int j) const { return box_.on_frame(i, j); }

    // Physical coordinates of the region edges.
    double x_lo() const { return grid_.x(box_.i0); }
    double x_hi() const { return grid_.x(box_.i1); }
    double y_lo() const { return grid_.y(box_.j0); }
    double y_hi() const { return grid_.y(box_.j1); }

    // Frame nodes in perimeter order: south row west->east, east column
    // south->north, north row east->west, west column north->south.
    // Corners appear exactly once.
    const std::vector<std::pair<int, int>>& boundary_nodes() const;
    // Arc length along the perimeter walk, same indexing as boundary_nodes().
    const std::vector<double>& boundary_arclen() const;
    std::size_t n_boundary() const { return boundary_nodes().size(); }

  private:
    Grid2D grid_;
    IndexBox box_;
    mutable std::vector<std::pair<int, int>> bnodes_;
    mutable std::vector<double> barclen_;
};

// Discrete Dirichlet (energy) norm: sum over grid links with both endpoints
// in the region of ((f_b - f_a)/h)^2 * h^2, square-rooted. Compatible with
// the 5-point Laplacian by summation by parts.
double hd_norm(const ScalarField& f, const Region& region);

// sqrt(sum_region f^2 h^2)
double l2_norm(const ScalarField& f, const Region& region);

// ||f - g||_L2(region) / ||g||_L2(region); throws when ||g|| = 0.
double l2_rel_error(const ScalarField& f, const ScalarField& g, const Region& region);

}  // namespace tat
