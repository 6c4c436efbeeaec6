#include "levylab/gsd.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "levylab/grid.hpp"
#include "levylab/levy.hpp"
#include "levylab/potential.hpp"
#include "levylab/spectral.hpp"

using levylab::Field;
using levylab::Grid;
using levylab::GsdReport;
using levylab::LevyModel;
using levylab::NRule;
using levylab::Potential;
using levylab::ScanConfig;
using levylab::SpectralResult;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SpectralResult harmonic_ground_state(double r_box, int n) {
    const LevyModel bm = levylab::make_model("brownian", {{"a", 1.0}});
    const Grid grid = Grid::make(1, r_box, n);
    return levylab::ground_state(bm.symbol, Potential::quadratic(1), grid, 1e-6);
}

// Simpson quadrature on [a, b] with an even panel count.
double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) {
        s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return s * h / 3.0;
}

}  // namespace

TEST_CASE("node-count rule doubles from the floor and caps") {
    const NRule rule;
    CHECK(rule.resolve(8.0) == 1024);
    CHECK(rule.resolve(12.0) == 2048);
    CHECK(rule.resolve(16.0) == 2048);
    CHECK(rule.resolve(1.0) == 512);
    CHECK(rule.resolve(100.0) == 8192);
}

TEST_CASE("propagation step rule") {
    CHECK(levylab::propagation_steps(0.1) == 64);
    CHECK(levylab::propagation_steps(0.5) == 128);
    CHECK(levylab::propagation_steps(1.0) == 256);
}

TEST_CASE("weighted norms on hand-built fields") {
    const Grid g = Grid::make(1, 8.0, 8);
    const Field phi0 = Field::constant(g, 0.3);

    const Field one = Field::constant(g, 1.0);
    CHECK(levylab::weighted_lp_norm(one, phi0, 3.5, 0.75) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(levylab::weighted_lp_norm(one, phi0, kInf, 0.75) == 1.0);

    // Window is {-6,-4,-2,0,2,4}; a single spike of height 2 has
    // p-norm (2^p / 6)^{1/p} under the uniform probability weights.
    Field spike = Field::constant(g, 0.0);
    spike.values[2] = 2.0;
    CHECK(levylab::weighted_lp_norm(spike, phi0, 4.0, 0.75) ==
          doctest::Approx(std::pow(16.0 / 6.0, 0.25)).epsilon(1e-14));
    CHECK(levylab::weighted_lp_norm(spike, phi0, kInf, 0.75) == 2.0);

    Field half = Field::constant(g, 0.0);
    half.values[1] = 1.0;
    half.values[2] = 1.0;
    half.values[3] = 1.0;
    CHECK(levylab::weighted_lp_norm(half, phi0, kInf, 0.75) == 1.0);

    CHECK_THROWS_AS((void)levylab::weighted_lp_norm(one, phi0, 2.0, 0.75), std::invalid_argument);
    const Field other = Field::constant(Grid::make(1, 8.0, 16), 1.0);
    CHECK_THROWS_AS((void)levylab::weighted_lp_norm(other, phi0, 4.0, 0.75),
                    std::invalid_argument);
}

TEST_CASE("weighted norm against an independent quadrature") {
    // f = 1/phi0 with the closed-form harmonic ground state: the norm is
    // (int_W phi0^{2-p} / int_W phi0^2)^{1/p}.
    const Grid g = Grid::make(1, 12.0, 8192);
    Field phi0 = Field::constant(g, 0.0);
    Field f = Field::constant(g, 0.0);
    const double norm_const = std::pow(std::numbers::pi, -0.25);
    for (int j = 0; j < g.n; ++j) {
        const double x = g.coord(j);
        phi0.values[j] = norm_const * std::exp(-0.5 * x * x);
        f.values[j] = 1.0 / phi0.values[j];
    }
    const double p = 3.0;
    const double numeric = levylab::weighted_lp_norm(f, phi0, p, 0.75);

    const double w = 0.75 * g.r_box;
    const double num = simpson(
        [&](double x) { return std::pow(norm_const * std::exp(-0.5 * x * x), 2.0 - p); }, -w, w,
        1 << 17);
    const double den = simpson(
        [&](double x) { return std::pow(norm_const * std::exp(-0.5 * x * x), 2.0); }, -w, w,
        1 << 17);
    const double exact = std::pow(num / den, 1.0 / p);
    CHECK(std::abs(numeric - exact) <= 1e-4 * exact);
}

TEST_CASE("intrinsic ratio at t = 0 is one over phi0") {
    const SpectralResult gs = harmonic_ground_state(12.0, 256);
    const LevyModel bm = levylab::make_model("brownian", {{"a", 1.0}});
    const Field u0 = levylab::intrinsic_ratio(gs, bm.symbol, Potential::quadratic(1), 0.0, 1);
    for (std::size_t i = 0; i < u0.values.size(); ++i) {
        if (gs.phi0.values[i] < 1e-300) {
            CHECK(u0.values[i] == 0.0);
        } else {
            CHECK(std::abs(u0.values[i] * gs.phi0.values[i] - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("weighted norms are monotone in p and in time") {
    const SpectralResult gs = harmonic_ground_state(12.0, 512);
    const LevyModel bm = levylab::make_model("brownian", {{"a", 1.0}});
    const Potential pot = Potential::quadratic(1);

    const Field u = levylab::intrinsic_ratio(gs, bm.symbol, pot, 0.5, 128);
    double prev = 0.0;
    for (double p : {2.5, 3.0, 4.0, 6.0, kInf}) {
        const double norm = levylab::weighted_lp_norm(u, gs.phi0, p, 0.75);
        CHECK(norm >= prev);
        prev = norm;
    }

    double prev_t = kInf;
    for (double t : {0.3, 0.5, 1.0}) {
        const Field ut = levylab::intrinsic_ratio(gs, bm.symbol, pot, t,
                                                  levylab::propagation_steps(t));
        const double norm = levylab::weighted_lp_norm(ut, gs.phi0, 4.0, 0.75);
        CHECK(norm <= prev_t * (1.0 + 1e-9));
        prev_t = norm;
    }
}

TEST_CASE("mini scan reproduces the harmonic threshold pattern") {
    const LevyModel bm = levylab::make_model("brownian", {{"a", 1.0}});
    ScanConfig cfg;
    cfg.t_list = {0.5};
    cfg.p_list = {3.0, 4.0, kInf};
    cfg.box_list = {8.0, 12.0, 16.0};
    cfg.n_rule = NRule{32, 256, 2048};

    const GsdReport report = levylab::gsd_scan(bm, Potential::quadratic(1), cfg);
    CHECK(report.entries.size() == 9);
    CHECK(report.verdicts.size() == 3);
    CHECK(report.verdict_for(0.5, 3.0) == "finite");
    CHECK(report.verdict_for(0.5, 4.0) == "finite");
    CHECK(report.verdict_for(0.5, kInf) == "divergent");
    CHECK_THROWS_AS((void)report.verdict_for(0.9, 3.0), std::out_of_range);

    // Verdict coherence: divergence propagates upward in p.
    for (double t : cfg.t_list) {
        bool divergent_seen = false;
        for (double p : cfg.p_list) {
            const bool div = report.verdict_for(t, p) == "divergent";
            if (divergent_seen) CHECK(div);
            divergent_seen = divergent_seen || div;
        }
    }

    ScanConfig bad = cfg;
    bad.box_list = {16.0, 8.0};
    CHECK_THROWS_AS((void)levylab::gsd_scan(bm, Potential::quadratic(1), bad),
                    std::invalid_argument);
}

TEST_CASE("ground-state bound check on a jump model") {
    const LevyModel cauchy = levylab::make_model("stable", {{"alpha", 1.0}});
    const Grid grid = Grid::make(1, 8.0, 512);
    const SpectralResult gs =
        levylab::ground_state(cauchy.symbol, Potential::quadratic(1), grid, 1e-6);

    const auto res = levylab::gs_bound_check(gs, cauchy, Potential::quadratic(1), 0.5, 3.0, 5.0);
    CHECK(std::isfinite(res.sup_upper));
    CHECK(res.sup_upper > 0.0);
    CHECK(res.inf_lower > 0.0);
    CHECK(res.spread > 0.0);
    CHECK(res.pass);

    CHECK_THROWS_AS((void)levylab::gs_bound_check(gs, cauchy, Potential::quadratic(1), 1.5, 3.0,
                                                  5.0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)levylab::gs_bound_check(gs, cauchy, Potential::quadratic(1), 0.5, 3.0,
                                                  7.5),
                    std::invalid_argument);

    const LevyModel bm = levylab::make_model("brownian", {{"a", 1.0}});
    const Grid bgrid = Grid::make(1, 8.0, 256);
    const SpectralResult bgs =
        levylab::ground_state(bm.symbol, Potential::quadratic(1), bgrid, 1e-6);
    CHECK_THROWS_AS((void)levylab::gs_bound_check(bgs, bm, Potential::quadratic(1), 0.5, 3.0, 5.0),
                    std::invalid_argument);
}

TEST_CASE("ground-state integrability against gaussian closed forms") {
    const SpectralResult gs = harmonic_ground_state(12.0, 512);

    auto closed_form = [](double delta) {
        // int (pi^{-1/4} e^{-x^2/2})^{1-delta} dx over the line.
        return std::pow(std::numbers::pi, -0.25 * (1.0 - delta)) *
               std::sqrt(2.0 * std::numbers::pi / (1.0 - delta));
    };

    const double half = levylab::gs_integrability(gs, 0.5);
    CHECK(std::abs(half - 2.0 * std::pow(std::numbers::pi, 0.375)) <= 1e-3);
    CHECK(std::abs(half - closed_form(0.5)) <= 1e-3);

    const double near_one = levylab::gs_integrability(gs, 1e-3);
    CHECK(std::abs(near_one - closed_form(1e-3)) <= 1e-3);

    CHECK_THROWS_AS((void)levylab::gs_integrability(gs, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)levylab::gs_integrability(gs, 1.0), std::invalid_argument);
}

TEST_CASE("operator norm by nonlinear power iteration") {
    const std::vector<double> weights(4, 0.25);

    const auto identity = [](const std::vector<double>& in, std::vector<double>& out) {
        out = in;
    };
    const auto id_norm = levylab::operator_norm_2p(identity, weights, 4.0);
    CHECK(id_norm.converged);
    CHECK(std::abs(id_norm.value - std::pow(4.0, 0.25)) <= 1e-10);

    const auto stretch = [](const std::vector<double>& in, std::vector<double>& out) {
        out = in;
        out[0] *= 2.0;
    };
    const auto st_norm = levylab::operator_norm_2p(stretch, weights, 4.0);
    // Extremal input is the point mass on the stretched coordinate:
    // norm = 2 * 4^{1/2 - 1/4}.
    CHECK(std::abs(st_norm.value - 2.0 * std::pow(4.0, 0.25)) <= 1e-8 * st_norm.value);

    CHECK_THROWS_AS((void)levylab::operator_norm_2p(identity, weights, kInf),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)levylab::operator_norm_2p(identity, weights, 2.0),
                    std::invalid_argument);
}

TEST_CASE("intrinsic operator norms behave across t and boxes") {
    const LevyModel bm = levylab::make_model("brownian", {{"a", 1.0}});
    const Potential pot = Potential::quadratic(1);

    // Conservative limit: for large t the 2 -> p norm tends to 1.
    const SpectralResult gs12 = harmonic_ground_state(12.0, 512);
    const auto long_time = levylab::intrinsic_norm_2p(gs12, bm.symbol, pot, 3.0, 2.5);
    CHECK(std::abs(long_time.value - 1.0) <= 0.05);

    // Finite side of the threshold: stable under N doubling.
    const auto n512 = levylab::intrinsic_norm_2p(gs12, bm.symbol, pot, 0.35, 4.0);
    const SpectralResult gs_fine = harmonic_ground_state(12.0, 1024);
    const auto n1024 = levylab::intrinsic_norm_2p(gs_fine, bm.symbol, pot, 0.35, 4.0);
    CHECK(std::abs(n512.value - n1024.value) <= 0.01 * n1024.value);

    // Divergent side: grows by more than 10x from box 8 to box 16.
    const SpectralResult gs8 = harmonic_ground_state(8.0, 512);
    const SpectralResult gs16 = harmonic_ground_state(16.0, 1024);
    const auto small_box = levylab::intrinsic_norm_2p(gs8, bm.symbol, pot, 0.20, 4.0);
    const auto large_box = levylab::intrinsic_norm_2p(gs16, bm.symbol, pot, 0.20, 4.0);
    CHECK(large_box.value > 10.0 * small_box.value);
}

TEST_CASE("lemma consistency on the harmonic case") {
    const SpectralResult gs = harmonic_ground_state(12.0, 512);
    const LevyModel bm = levylab::make_model("brownian", {{"a", 1.0}});
    const Potential pot = Potential::quadratic(1);

    const auto report = levylab::lemma_consistency_check(gs, bm.symbol, pot, 0.35, 4.0, 0.1);
    CHECK(report.holds);
    CHECK(report.lhs > 0.0);
    CHECK(report.rhs_tight >= report.lhs);
    CHECK(report.rhs_loose >= report.rhs_tight);
    CHECK(report.heat_norm_2_inf > 0.0);
    CHECK(report.u_norm > 0.0);

    CHECK_THROWS_AS((void)levylab::lemma_consistency_check(gs, bm.symbol, Potential::zero(1), 0.35,
                                                           4.0, 0.1),
                    std::invalid_argument);
}
