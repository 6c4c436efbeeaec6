#include "levylab/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "levylab/grid.hpp"
#include "levylab/levy.hpp"
#include "levylab/potential.hpp"
#include "levylab/rng.hpp"

using levylab::DenseOracleResult;
using levylab::Field;
using levylab::Grid;
using levylab::LevyModel;
using levylab::LevySymbol;
using levylab::Potential;
using levylab::SpectralResult;

namespace {

std::size_t center_index(const Grid& grid) {
    return static_cast<std::size_t>(grid.n / 2);
}

// Independent slow-transform route for the Fourier multiplier, d = 1. Both the
// forward and inverse sums live in index space, where the multiplier action is
// basis-diagonal regardless of phase conventions.
Field naive_generator(const Field& f, const LevySymbol& symbol) {
    const Grid& g = f.grid;
    const int n = g.n;
    std::vector<std::complex<double>> fhat(n, 0.0);
    const std::complex<double> i_unit(0.0, 1.0);
    for (int k = 0; k < n; ++k) {
        for (int m = 0; m < n; ++m) {
            fhat[k] += f.values[m] *
                       std::exp(-i_unit * (2.0 * std::numbers::pi * k * m / static_cast<double>(n)));
        }
        fhat[k] *= -symbol.eval(std::abs(g.freq(k)));
    }
    Field out = f;
    for (int j = 0; j < n; ++j) {
        std::complex<double> acc = 0.0;
        for (int k = 0; k < n; ++k) {
            acc += fhat[k] *
                   std::exp(i_unit * (2.0 * std::numbers::pi * k * j / static_cast<double>(n)));
        }
        out.values[j] = acc.real() / n;
    }
    return out;
}

}  // namespace

TEST_CASE("generator annihilates constants") {
    const Grid g = Grid::make(1, 8.0, 64);
    const LevyModel stable = levylab::make_model("stable", {{"alpha", 1.0}});
    const Field out = levylab::apply_generator(Field::constant(g, 3.7), stable.symbol);
    for (double v : out.values) {
        CHECK(std::abs(v) <= 1e-12);
    }
}

TEST_CASE("grid cosines are generator eigenvectors") {
    const Grid g = Grid::make(1, 8.0, 64);
    const LevyModel stable = levylab::make_model("stable", {{"alpha", 1.0}});
    const double xi = g.freq(3);
    Field f = Field::constant(g, 0.0);
    for (int j = 0; j < g.n; ++j) {
        f.values[j] = std::cos(xi * g.coord(j));
    }
    const Field out = levylab::apply_generator(f, stable.symbol);
    const double psi = stable.symbol.eval(xi);
    for (int j = 0; j < g.n; ++j) {
        CHECK(std::abs(out.values[j] + psi * f.values[j]) <= 1e-10);
    }
}

TEST_CASE("generator agrees with a naive transform") {
    const Grid g = Grid::make(1, 4.0, 32);
    const LevyModel stable = levylab::make_model("stable", {{"alpha", 1.0}});
    Field f = Field::constant(g, 0.0);
    levylab::Philox rng(11, 0);
    for (double& v : f.values) v = rng.uniform() - 0.5;

    const Field fast = levylab::apply_generator(f, stable.symbol);
    const Field slow = naive_generator(f, stable.symbol);
    double scale = 0.0;
    for (double v : slow.values) scale = std::max(scale, std::abs(v));
    for (int j = 0; j < g.n; ++j) {
        CHECK(std::abs(fast.values[j] - slow.values[j]) <= 1e-8 * scale);
    }
}

TEST_CASE("hamiltonian is minus generator plus multiplication") {
    const Grid g = Grid::make(1, 8.0, 64);
    const LevyModel stable = levylab::make_model("stable", {{"alpha", 1.0}});
    const Potential pot = Potential::quadratic(1);
    Field f = Field::constant(g, 0.0);
    for (int j = 0; j < g.n; ++j) {
        f.values[j] = std::exp(-0.5 * g.coord(j) * g.coord(j));
    }
    const Field hf = levylab::apply_hamiltonian(f, stable.symbol, pot);
    const Field lf = levylab::apply_generator(f, stable.symbol);
    for (int j = 0; j < g.n; ++j) {
        const double x = g.coord(j);
        CHECK(hf.values[j] ==
              doctest::Approx(-lf.values[j] + x * x * f.values[j]).epsilon(1e-12));
    }
}

TEST_CASE("discretized hamiltonian is symmetric") {
    const Grid g = Grid::make(1, 6.0, 64);
    const LevyModel stable = levylab::make_model("stable", {{"alpha", 1.0}});
    const Potential pot = Potential::quadratic(1);
    const int n = g.n;
    std::vector<std::vector<double>> columns(n);
    for (int j = 0; j < n; ++j) {
        Field e = Field::constant(g, 0.0);
        e.values[j] = 1.0;
        columns[j] = levylab::apply_hamiltonian(e, stable.symbol, pot).values;
    }
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            worst = std::max(worst, std::abs(columns[j][i] - columns[i][j]));
        }
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("heat kernel closed forms") {
    const LevyModel cauchy = levylab::make_model("stable", {{"alpha", 1.0}});
    const Grid g_cauchy = Grid::make(1, 1000.0, 32768);
    const Field pc = levylab::heat_kernel(cauchy.symbol, 1.0, g_cauchy);
    CHECK(std::abs(pc.values[center_index(g_cauchy)] - 1.0 / std::numbers::pi) <= 1e-6);
    CHECK(std::abs(pc.mass() - 1.0) <= 1e-12);

    const LevyModel bm = levylab::make_model("brownian", {{"a", 1.0}});
    const Grid g_bm = Grid::make(1, 20.0, 512);
    const Field pg = levylab::heat_kernel(bm.symbol, 0.5, g_bm);
    CHECK(std::abs(pg.values[center_index(g_bm)] - 1.0 / std::sqrt(2.0 * std::numbers::pi)) <=
          1e-6);
    CHECK(std::abs(pg.mass() - 1.0) <= 1e-12);

    for (double v : pc.values) CHECK(v >= 0.0);
    for (double v : pg.values) CHECK(v >= 0.0);
}

TEST_CASE("heat kernel rejects aliased settings") {
    const LevyModel bm = levylab::make_model("brownian", {{"a", 1.0}});
    const Grid coarse = Grid::make(1, 8.0, 64);
    CHECK_THROWS_AS((void)levylab::heat_kernel(bm.symbol, 1e-4, coarse), std::runtime_error);
    CHECK_THROWS_AS((void)levylab::heat_kernel(bm.symbol, 0.0, coarse), std::invalid_argument);
}

TEST_CASE("propagation with trivial potentials") {
    const Grid g = Grid::make(1, 8.0, 128);
    const LevyModel stable = levylab::make_model("stable", {{"alpha", 1.0}});
    const Field one = Field::constant(g, 1.0);

    const Field free_run =
        levylab::propagate_semigroup(one, stable.symbol, Potential::zero(1), 0.5, 4);
    for (double v : free_run.values) {
        CHECK(std::abs(v - 1.0) <= 1e-12);
    }

    const Field damped =
        levylab::propagate_semigroup(one, stable.symbol, Potential::constant(1, 0.8), 0.5, 4);
    const double target = std::exp(-0.4);
    for (double v : damped.values) {
        CHECK(std::abs(v - target) <= 1e-10);
    }
}

TEST_CASE("free propagation conserves mass and positivity") {
    const Grid g = Grid::make(1, 8.0, 128);
    const LevyModel stable = levylab::make_model("stable", {{"alpha", 1.0}});
    Field f = Field::constant(g, 0.0);
    for (int j = 0; j < g.n; ++j) {
        f.values[j] = std::exp(-g.coord(j) * g.coord(j));
    }
    const double mass_before = f.mass();
    const Field out = levylab::propagate_semigroup(f, stable.symbol, Potential::zero(1), 0.4, 8);
    CHECK(std::abs(out.mass() - mass_before) <= 1e-10 * mass_before);
    for (double v : out.values) {
        CHECK(v >= 0.0);
    }
}

TEST_CASE("strang splitting error halves by four when steps double") {
    const Grid g = Grid::make(1, 12.0, 256);
    const LevyModel bm = levylab::make_model("brownian", {{"a", 1.0}});
    const Potential pot = Potential::quadratic(1);
    const Field one = Field::constant(g, 1.0);

    const Field ref = levylab::propagate_semigroup(one, bm.symbol, pot, 0.5, 512);
    auto err = [&](int steps) {
        const Field out = levylab::propagate_semigroup(one, bm.symbol, pot, 0.5, steps);
        double e = 0.0;
        for (std::size_t i = 0; i < out.values.size(); ++i) {
            e = std::max(e, std::abs(out.values[i] - ref.values[i]));
        }
        return e;
    };
    const double ratio = err(8) / err(16);
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 5.5);
}

TEST_CASE("positive propagation agrees with the spectral route and resolves tails") {
    const Grid g = Grid::make(1, 12.0, 1024);
    const LevyModel bm = levylab::make_model("brownian", {{"a", 1.0}});
    const Potential pot = Potential::quadratic(1);
    const Field one = Field::constant(g, 1.0);
    const double t = 0.5;

    const Field spectral = levylab::propagate_semigroup(one, bm.symbol, pot, t, 128);
    const Field positive = levylab::propagate_positive(one, bm.symbol, pot, t, 128);
    for (double v : positive.values) {
        CHECK(v >= 0.0);
    }
    for (int j = 0; j < g.n; ++j) {
        if (std::abs(g.coord(j)) > 4.0) continue;
        CHECK(std::abs(positive.values[j] - spectral.values[j]) <= 1e-8 * spectral.values[j]);
    }

    // Mehler: T_t 1(x) = (cosh 2t)^{-1/2} exp(-x^2 tanh(2t)/2). At x = 10.5
    // the true value sits ten orders below roundoff of the field peak.
    auto mehler = [&](double x) {
        return std::exp(-0.5 * x * x * std::tanh(2.0 * t)) / std::sqrt(std::cosh(2.0 * t));
    };
    for (double x : {9.0, 10.5}) {
        const int j = static_cast<int>(std::lround((x + g.r_box) / g.h));
        CHECK(g.coord(j) == doctest::Approx(x).epsilon(1e-12));
        CHECK(std::abs(positive.values[j] - mehler(x)) <= 0.02 * mehler(x));
    }

    const Grid plane = Grid::make(2, 6.0, 16);
    const Field one2 = Field::constant(plane, 1.0);
    CHECK_THROWS_AS((void)levylab::propagate_positive(one2, bm.symbol, pot, 0.5, 8),
                    std::invalid_argument);
    Field flipped = Field::constant(g, 1.0);
    flipped.values[0] = -1.0;
    CHECK_THROWS_AS((void)levylab::propagate_positive(flipped, bm.symbol, pot, 0.5, 8),
                    std::invalid_argument);
}

TEST_CASE("ground-state tail keeps the gaussian decay far below roundoff") {
    const Grid g = Grid::make(1, 12.0, 1024);
    const LevyModel bm = levylab::make_model("brownian", {{"a", 1.0}});
    const SpectralResult gs = levylab::ground_state(bm.symbol, Potential::quadratic(1), g, 1e-6);

    const double norm_const = std::pow(std::numbers::pi, -0.25);
    for (double x : {9.0, 10.5}) {
        const int j = static_cast<int>(std::lround((x + g.r_box) / g.h));
        const double exact = norm_const * std::exp(-0.5 * x * x);
        CHECK(std::abs(gs.phi0.values[j] - exact) <= 0.05 * exact);
    }
}

TEST_CASE("harmonic ground state matches the closed form") {
    const Grid g = Grid::make(1, 12.0, 256);
    const LevyModel bm = levylab::make_model("brownian", {{"a", 1.0}});
    const Potential pot = Potential::quadratic(1);
    const SpectralResult gs = levylab::ground_state(bm.symbol, pot, g, 1e-6);

    CHECK(std::abs(gs.lambda0 - 1.0) <= 1e-3);
    CHECK(std::abs(gs.phi0.l2_norm() - 1.0) <= 1e-12);
    CHECK(gs.residual <= 1e-5);
    for (double v : gs.phi0.values) {
        CHECK(v > 0.0);
    }

    const double norm_const = std::pow(std::numbers::pi, -0.25);
    double num = 0.0;
    double den = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const double x = g.coord(j);
        const double exact = norm_const * std::exp(-0.5 * x * x);
        num += (gs.phi0.values[j] - exact) * (gs.phi0.values[j] - exact);
        den += exact * exact;
    }
    CHECK(std::sqrt(num / den) <= 1e-3);
}

TEST_CASE("ground state rejects non-confining potentials") {
    const Grid g = Grid::make(1, 8.0, 64);
    const LevyModel stable = levylab::make_model("stable", {{"alpha", 1.0}});
    CHECK_THROWS_AS((void)levylab::ground_state(stable.symbol, Potential::zero(1), g, 1e-6),
                    std::invalid_argument);
}

TEST_CASE("dense oracle on the harmonic oscillator") {
    const Grid g = Grid::make(1, 12.0, 512);
    const LevyModel bm = levylab::make_model("brownian", {{"a", 1.0}});
    const DenseOracleResult res = levylab::dense_oracle(bm.symbol, Potential::quadratic(1), g);
    CHECK(std::abs(res.lambda0 - 1.0) <= 1e-4);
    CHECK(std::abs(res.lambda1 - 3.0) <= 1e-3);
    CHECK(res.lambda0 < res.lambda1);
    CHECK(std::abs(res.phi0.l2_norm() - 1.0) <= 1e-10);
    for (double v : res.phi0.values) {
        CHECK(v > 0.0);
    }

    const Grid big = Grid::make(1, 12.0, 2048);
    CHECK_THROWS_AS((void)levylab::dense_oracle(bm.symbol, Potential::quadratic(1), big),
                    std::invalid_argument);
}

TEST_CASE("propagating the ground state decays by the eigenvalue factor") {
    const Grid g = Grid::make(1, 12.0, 512);
    const LevyModel bm = levylab::make_model("brownian", {{"a", 1.0}});
    const Potential pot = Potential::quadratic(1);
    const DenseOracleResult res = levylab::dense_oracle(bm.symbol, pot, g);

    const double t = 0.5;
    const Field out = levylab::propagate_semigroup(res.phi0, bm.symbol, pot, t, 128);
    const double factor = std::exp(-res.lambda0 * t);
    double ref_max = 0.0;
    for (int j = 0; j < g.n; ++j) {
        if (std::abs(g.coord(j)) <= 6.0) {
            ref_max = std::max(ref_max, factor * res.phi0.values[j]);
        }
    }
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j) {
        if (std::abs(g.coord(j)) <= 6.0) {
            worst = std::max(worst, std::abs(out.values[j] - factor * res.phi0.values[j]));
        }
    }
    CHECK(worst <= 1e-4 * ref_max);
}

TEST_CASE("oracle equivalence across the catalog") {
    const Grid g = Grid::make(1, 12.0, 512);
    const Potential pot = Potential::quadratic(1);
    for (const auto& entry : levylab::list_catalog()) {
        const LevyModel model = levylab::make_model(entry.id, {});
        const SpectralResult gs = levylab::ground_state(model.symbol, pot, g, 1e-6);
        const DenseOracleResult oracle = levylab::dense_oracle(model.symbol, pot, g);
        INFO("model ", entry.id);
        CHECK(std::abs(gs.lambda0 - oracle.lambda0) <= 1e-4);
    }
}
