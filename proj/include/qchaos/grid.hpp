#ifndef QCHAOS_GRID_HPP
#define QCHAOS_GRID_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "qchaos/csv.hpp"
#include "qchaos/errors.hpp"

namespace qchaos {

// Uniform rectangular grid including boundary nodes.
struct Grid2D {
    double x_min = -5.0, x_max = 5.0;
    double y_min = -5.0, y_max = 5.0;
    int nx = 161, ny = 161;

    static Grid2D make(double x0, double x1, double y0, double y1, int nx, int ny) {
        if (!(x0 < x1) || !(y0 < y1)) throw config_error("grid bounds must be ordered");
        if (nx < 16 || ny < 16) throw config_error("grid needs at least 16 nodes per side");
        return Grid2D{x0, x1, y0, y1, nx, ny};
    }

    static Grid2D square(double half_extent, int n) {
        return make(-half_extent, half_extent, -half_extent, half_extent, n, n);
    }

    double dx() const { return (x_max - x_min) / (nx - 1); }
    double dy() const { return (y_max - y_min) / (ny - 1); }
    double x(int i) const { return x_min + i * dx(); }
    double y(int j) const { return y_min + j * dy(); }

    int nearest_ix(double x) const {
        return std::clamp(static_cast<int>(std::lround((x - x_min) / dx())), 0, nx - 1);
    }
    int nearest_iy(double y) const {
        return std::clamp(static_cast<int>(std::lround((y - y_min) / dy())), 0, ny - 1);
    }

    bool strictly_inside(double x, double y) const {
        return x > x_min && x < x_max && y > y_min && y < y_max;
    }

    bool operator==(const Grid2D&) const = default;
};

// Grid-sampled real field, row-major over x then y.
struct ScalarField2D {
    Grid2D grid;
    std::vector<double> values;

    ScalarField2D() = default;
    explicit ScalarField2D(const Grid2D& g)
        : grid(g), values(static_cast<std::size_t>(g.nx) * g.ny, 0.0) {}

    double& at(int ix, int iy) { return values[static_cast<std::size_t>(ix) * grid.ny + iy]; }
    double at(int ix, int iy) const {
        return values[static_cast<std::size_t>(ix) * grid.ny + iy];
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::fabs(v));
        return m;
    }

    double min_value() const {
        double m = values.empty() ? 0.0 : values[0];
        for (double v : values) m = std::min(m, v);
        return m;
    }

    bool finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }

    // L2 norm with the grid measure dx dy.
    double norm_l2() const {
        double s = 0.0;
        for (double v : values) s += v * v;
        return std::sqrt(s * grid.dx() * grid.dy());
    }

    // Rescale to unit L2 norm; returns log of the removed factor.
    double normalize_l2() {
        const double n = norm_l2();
        if (!(n > 0.0)) throw numeric_error("cannot normalize a zero field");
        for (double& v : values) v /= n;
        return std::log(n);
    }

    double dot(const ScalarField2D& other) const {
        double s = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) s += values[i] * other.values[i];
        return s * grid.dx() * grid.dy();
    }

    std::string to_csv() const {
        csv::Table t({"x", "y", "value"});
        for (int i = 0; i < grid.nx; ++i)
            for (int j = 0; j < grid.ny; ++j)
                t.row(std::vector<double>{grid.x(i), grid.y(j), at(i, j)});
        return t.text();
    }
};

} // namespace qchaos

#endif
