#include "levylab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace levylab {

namespace {

bool is_power_of_two(int n) {
    return n > 0 && (n & (n - 1)) == 0;
}

std::size_t pow_size(int n, int dim) {
    std::size_t s = 1;
    for (int i = 0; i < dim; ++i) s *= static_cast<std::size_t>(n);
    return s;
}

}  // namespace

Grid Grid::make(int dim, double r_box, int n) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("grid dimension must be 1, 2 or 3");
    if (!(r_box > 0.0)) throw std::invalid_argument("box half-width must be positive");
    if (n < 8 || !is_power_of_two(n)) throw std::invalid_argument("N must be a power of two >= 8");
    Grid g;
    g.dim = dim;
    g.r_box = r_box;
    g.n = n;
    g.h = 2.0 * r_box / n;
    return g;
}

std::size_t Grid::size() const {
    return pow_size(n, dim);
}

double Grid::coord(int j) const {
    return -r_box + j * h;
}

double Grid::freq(int k) const {
    const int signed_k = k < n / 2 ? k : k - n;
    return std::numbers::pi * signed_k / r_box;
}

double Grid::max_freq_norm() const {
    // The k = -N/2 index carries the largest magnitude pi/h per axis; the
    // largest positive frequency is (pi/h)(1 - 2/N).
    const double axis_max = std::numbers::pi / h;
    return axis_max * std::sqrt(static_cast<double>(dim));
}

std::vector<int> Grid::unflatten(std::size_t flat) const {
    std::vector<int> idx(dim);
    for (int axis = dim - 1; axis >= 0; --axis) {
        idx[axis] = static_cast<int>(flat % static_cast<std::size_t>(n));
        flat /= static_cast<std::size_t>(n);
    }
    return idx;
}

std::vector<double> Grid::node(std::size_t flat) const {
    const std::vector<int> idx = unflatten(flat);
    std::vector<double> x(dim);
    for (int axis = 0; axis < dim; ++axis) x[axis] = coord(idx[axis]);
    return x;
}

std::vector<std::size_t> Grid::window_indices(double fraction) const {
    if (!(fraction > 0.0) || fraction > 1.0) {
        throw std::invalid_argument("window fraction must lie in (0,1]");
    }
    // Half-open per axis: a node belongs to the window when -W <= x < W.
    const double w = fraction * r_box;
    std::vector<std::size_t> out;
    const std::size_t total = size();
    for (std::size_t flat = 0; flat < total; ++flat) {
        const std::vector<int> idx = unflatten(flat);
        bool inside = true;
        for (int axis = 0; axis < dim; ++axis) {
            const double x = coord(idx[axis]);
            if (x < -w - 1e-12 || x >= w - 1e-12) {
                inside = false;
                break;
            }
        }
        if (inside) out.push_back(flat);
    }
    if (out.empty()) throw std::invalid_argument("window is empty at this fraction");
    return out;
}

Field Field::constant(const Grid& grid, double value, std::string label) {
    Field f;
    f.grid = grid;
    f.values.assign(grid.size(), value);
    f.label = std::move(label);
    return f;
}

double Field::l2_norm() const {
    double sq = 0.0;
    for (double v : values) sq += v * v;
    return std::sqrt(sq * std::pow(grid.h, grid.dim));
}

double Field::mass() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * std::pow(grid.h, grid.dim);
}

double Field::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

void write_csv(const Field& field, std::ostream& os) {
    for (int axis = 0; axis < field.grid.dim; ++axis) {
        os << "x" << (axis + 1) << ",";
    }
    os << "value\n";
    char buf[32];
    for (std::size_t flat = 0; flat < field.values.size(); ++flat) {
        const std::vector<double> x = field.grid.node(flat);
        for (double c : x) {
            std::snprintf(buf, sizeof(buf), "%.17g", c);
            os << buf << ",";
        }
        std::snprintf(buf, sizeof(buf), "%.17g", field.values[flat]);
        os << buf << "\n";
    }
}

void write_csv(const Field& field, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_csv(field, os);
}

void write_binary(const Field& field, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    const std::int64_t d = field.grid.dim;
    const std::int64_t n = field.grid.n;
    const double r = field.grid.r_box;
    os.write(reinterpret_cast<const char*>(&d), sizeof(d));
    os.write(reinterpret_cast<const char*>(&n), sizeof(n));
    os.write(reinterpret_cast<const char*>(&r), sizeof(r));
    os.write(reinterpret_cast<const char*>(field.values.data()),
             static_cast<std::streamsize>(field.values.size() * sizeof(double)));
    if (!os) throw std::runtime_error("write failed for " + path);
}

Field read_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::int64_t d = 0;
    std::int64_t n = 0;
    double r = 0.0;
    is.read(reinterpret_cast<char*>(&d), sizeof(d));
    is.read(reinterpret_cast<char*>(&n), sizeof(n));
    is.read(reinterpret_cast<char*>(&r), sizeof(r));
    if (!is) throw std::runtime_error("truncated header in " + path);
    Field f;
    f.grid = Grid::make(static_cast<int>(d), r, static_cast<int>(n));
    f.values.resize(f.grid.size());
    is.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!is) throw std::runtime_error("truncated payload in " + path);
    return f;
}

}  // namespace levylab
