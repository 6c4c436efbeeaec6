#include "levylab/grid.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using levylab::Field;
using levylab::Grid;

TEST_CASE("grid construction and node layout") {
    const Grid g = Grid::make(1, 12.0, 8);
    CHECK(g.h == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(g.size() == 8);
    const std::vector<double> expected = {-12, -9, -6, -3, 0, 3, 6, 9};
    for (int j = 0; j < 8; ++j) {
        CHECK(g.coord(j) == doctest::Approx(expected[j]).epsilon(1e-15));
    }

    const Grid g2 = Grid::make(2, 4.0, 16);
    CHECK(g2.size() == 256);

    CHECK_THROWS_AS((void)Grid::make(1, 12.0, 12), std::invalid_argument);
    CHECK_THROWS_AS((void)Grid::make(1, 12.0, 4), std::invalid_argument);
    CHECK_THROWS_AS((void)Grid::make(4, 12.0, 8), std::invalid_argument);
    CHECK_THROWS_AS((void)Grid::make(1, -1.0, 8), std::invalid_argument);
}

TEST_CASE("frequency convention") {
    const Grid g = Grid::make(1, 1.0, 8);
    // Largest positive frequency is (pi/h)(1 - 2/N); the k = N/2 index carries
    // the magnitude pi/h.
    const double axis_max = std::numbers::pi / g.h;
    double max_positive = 0.0;
    for (int k = 0; k < g.n; ++k) max_positive = std::max(max_positive, g.freq(k));
    CHECK(max_positive == doctest::Approx(axis_max * (1.0 - 2.0 / g.n)).epsilon(1e-14));
    CHECK(g.max_freq_norm() == doctest::Approx(axis_max).epsilon(1e-14));
    CHECK(g.freq(0) == 0.0);
    CHECK(g.freq(1) == doctest::Approx(std::numbers::pi / g.r_box).epsilon(1e-14));
    CHECK(g.freq(g.n - 1) == doctest::Approx(-std::numbers::pi / g.r_box).epsilon(1e-14));
}

TEST_CASE("window selection is half-open per axis") {
    const Grid g = Grid::make(1, 12.0, 8);
    const auto idx = g.window_indices(0.75);
    // Window [-9, 9): keeps -9 and drops +9.
    CHECK(idx.size() == 6);
    std::vector<double> xs;
    for (std::size_t i : idx) xs.push_back(g.node(i)[0]);
    CHECK(xs.front() == doctest::Approx(-9.0));
    CHECK(xs.back() == doctest::Approx(6.0));

    CHECK(g.window_indices(1.0).size() == 8);
    CHECK_THROWS_AS((void)g.window_indices(0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)g.window_indices(1.5), std::invalid_argument);
}

TEST_CASE("unflatten and node for d = 2") {
    const Grid g = Grid::make(2, 4.0, 8);
    const std::size_t flat = 3 * 8 + 5;
    const std::vector<int> idx = g.unflatten(flat);
    CHECK(idx[0] == 3);
    CHECK(idx[1] == 5);
    const std::vector<double> x = g.node(flat);
    CHECK(x[0] == doctest::Approx(g.coord(3)));
    CHECK(x[1] == doctest::Approx(g.coord(5)));
}

TEST_CASE("field reductions") {
    const Grid g = Grid::make(1, 12.0, 8);
    const Field f = Field::constant(g, 2.0);
    CHECK(f.mass() == doctest::Approx(48.0).epsilon(1e-14));
    CHECK(f.l2_norm() == doctest::Approx(std::sqrt(96.0)).epsilon(1e-14));
    CHECK(f.max_abs() == 2.0);
}

TEST_CASE("csv export layout") {
    const Grid g = Grid::make(1, 12.0, 8);
    Field f = Field::constant(g, 1.5);
    std::ostringstream os;
    levylab::write_csv(f, os);
    const std::string text = os.str();
    CHECK(text.rfind("x1,value\n", 0) == 0);
    CHECK(text.find("-12,1.5\n") != std::string::npos);
    int lines = 0;
    for (char c : text) {
        if (c == '\n') ++lines;
    }
    CHECK(lines == 9);
}

TEST_CASE("binary round trip") {
    const Grid g = Grid::make(1, 6.0, 16);
    Field f = Field::constant(g, 0.0);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        f.values[i] = std::sin(0.37 * static_cast<double>(i)) + 1e-17 * static_cast<double>(i);
    }
    const std::string path =
        (std::filesystem::temp_directory_path() / "levylab_test_field.bin").string();
    levylab::write_binary(f, path);
    const Field back = levylab::read_binary(path);
    std::remove(path.c_str());

    CHECK(back.grid == f.grid);
    REQUIRE(back.values.size() == f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        CHECK(back.values[i] == f.values[i]);
    }
}
