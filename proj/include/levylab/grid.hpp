#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace levylab {

struct Grid {
    int dim = 1;
    double r_box = 1.0;
    int n = 8;
    double h = 0.25;

    static Grid make(int dim, double r_box, int n);

    std::size_t size() const;
    double coord(int j) const;
    double freq(int k) const;
    double max_freq_norm() const;
    std::vector<int> unflatten(std::size_t flat) const;
    std::vector<double> node(std::size_t flat) const;
    std::vector<std::size_t> window_indices(double fraction) const;

    bool operator==(const Grid& other) const = default;
};

struct Field {
    Grid grid;
    std::vector<double> values;
    std::string label;
    double time = 0.0;

    static Field constant(const Grid& grid, double value, std::string label = "");

    double l2_norm() const;
    double mass() const;
    double max_abs() const;
};

void write_csv(const Field& field, std::ostream& os);
void write_csv(const Field& field, const std::string& path);
void write_binary(const Field& field, const std::string& path);
Field read_binary(const std::string& path);

}  // namespace levylab
