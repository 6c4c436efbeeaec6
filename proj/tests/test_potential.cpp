#include "levylab/potential.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

using levylab::ContractivityVerdict;
using levylab::LevyModel;
using levylab::Potential;
using levylab::RatioBehavior;

namespace {

double eval1(const Potential& pot, double x) {
    const std::array<double, 1> v = {x};
    return levylab::eval_potential(pot, v);
}

ContractivityVerdict classify(const Potential& pot, const std::string& model_id,
                              const std::map<std::string, double>& params) {
    const LevyModel model = levylab::make_model(model_id, params);
    return levylab::classify_contractivity(pot, model);
}

}  // namespace

TEST_CASE("potential evaluation") {
    CHECK(eval1(Potential::power_log_loglog(1, 2, 0, 0), 1.0) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(eval1(Potential::quadratic(1), 3.0) == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(eval1(Potential::power_log_loglog(1, 0, 1, 0), 0.0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(eval1(Potential::zero(1), 5.0) == 0.0);
    CHECK(eval1(Potential::constant(1, 0.8), 5.0) == 0.8);
}

TEST_CASE("sup over a ball") {
    const std::array<double, 1> x2 = {2.0};
    CHECK(levylab::sup_ball(Potential::quadratic(1), x2, 0.5) ==
          doctest::Approx(6.25).epsilon(1e-12));

    const std::array<double, 1> x5 = {5.0};
    CHECK(levylab::sup_ball(Potential::power_log_loglog(1, 1, 0, 0), x5, 1.0) ==
          doctest::Approx(7.0).epsilon(1e-12));

    const std::array<double, 1> origin = {0.0};
    CHECK(levylab::sup_ball(Potential::quadratic(1), origin, 0.7) ==
          doctest::Approx(0.49).epsilon(1e-12));

    CHECK_THROWS_AS((void)levylab::sup_ball(Potential::quadratic(1), x2, 1.5),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)levylab::sup_ball(Potential::quadratic(1), x2, 0.0),
                    std::invalid_argument);
}

TEST_CASE("sup over a ball for a custom evaluator") {
    const Potential pot = Potential::custom(1, [](std::span<const double> x) {
        return x[0] * x[0];
    });
    const std::array<double, 1> x2 = {2.0};
    CHECK(levylab::sup_ball(pot, x2, 0.5) == doctest::Approx(6.25).epsilon(1e-6));
}

TEST_CASE("borderline ratio values") {
    // Polynomial tail gamma = 1, d = 1: |log nu(x)| = 2 log|x|, so with
    // V = 1 + |x| at |x| = e^2 the ratio is (1 + e^2)/4.
    const LevyModel stable = levylab::make_model("stable", {{"alpha", 1.0}});
    const Potential vlin = Potential::power_log_loglog(1, 1, 0, 0);
    const double e2 = std::exp(2.0);
    const std::array<double, 1> xe2 = {e2};
    CHECK(levylab::borderline_ratio(vlin, stable, xe2) ==
          doctest::Approx((1.0 + e2) / 4.0).epsilon(1e-10));

    // Exponential tail c = 1, gamma = 1.5 (tempered with alpha = 0.5):
    // |log nu(10)| = 10 + 1.5 log 10 - 1.
    const LevyModel tempered = levylab::make_model("tempered", {{"alpha", 0.5}, {"c", 1.0}});
    const std::array<double, 1> x10 = {10.0};
    const double denom = 10.0 + 1.5 * std::log(10.0) - 1.0;
    CHECK(levylab::borderline_ratio(Potential::quadratic(1), tempered, x10) ==
          doctest::Approx(100.0 / denom).epsilon(1e-10));

    const std::array<double, 1> x1 = {1.0};
    CHECK_THROWS_AS((void)levylab::borderline_ratio(vlin, stable, x1), std::invalid_argument);
}

TEST_CASE("borderline ratio grows along decades for a strict gsd pair") {
    const LevyModel stable = levylab::make_model("stable", {{"alpha", 1.0}});
    const Potential quad = Potential::quadratic(1);
    double prev = 0.0;
    for (double r : {10.0, 100.0, 1000.0}) {
        const std::array<double, 1> x = {r};
        const double ratio = levylab::borderline_ratio(quad, stable, x);
        CHECK(ratio >= 2.0 * prev);
        prev = ratio;
    }
}

TEST_CASE("classifier verdicts from the family tables") {
    const Potential v100 = Potential::power_log_loglog(1, 1, 0, 0);
    const Potential v010 = Potential::power_log_loglog(1, 0, 1, 0);

    const ContractivityVerdict poly_gsd = classify(v100, "stable", {{"alpha", 1.0}});
    CHECK(poly_gsd.gsd_all_p);
    CHECK(poly_gsd.agsd_all_p);
    CHECK(poly_gsd.behavior == RatioBehavior::tends_to_infinity);

    const ContractivityVerdict poly_agsd = classify(v010, "stable", {{"alpha", 1.0}});
    CHECK_FALSE(poly_agsd.gsd_all_p);
    CHECK(poly_agsd.agsd_all_p);
    CHECK(poly_agsd.behavior == RatioBehavior::bounded_below_positive);
    CHECK(poly_agsd.witness_c > 0.0);
    CHECK(poly_agsd.witness_r > 0.0);

    const ContractivityVerdict exp_agsd = classify(v100, "tempered", {{"alpha", 1.0}, {"c", 1.0}});
    CHECK_FALSE(exp_agsd.gsd_all_p);
    CHECK(exp_agsd.agsd_all_p);

    const Potential v1m1 = Potential::power_log_loglog(1, 1, -1, 0);
    const ContractivityVerdict str_agsd =
        classify(v1m1, "stretched-exp", {{"beta", 1.0}, {"c", 1.0}});
    CHECK_FALSE(str_agsd.gsd_all_p);
    CHECK(str_agsd.agsd_all_p);

    const ContractivityVerdict nonconf = classify(Potential::zero(1), "stable", {{"alpha", 1.0}});
    CHECK_FALSE(nonconf.gsd_all_p);
    CHECK_FALSE(nonconf.agsd_all_p);
    CHECK(nonconf.behavior == RatioBehavior::tends_to_zero);
}

TEST_CASE("classifier edge handling") {
    const Potential quad = Potential::quadratic(1);
    const LevyModel gauss = levylab::make_model("gaussian-tail-counterexample", {});
    CHECK_THROWS_AS((void)levylab::classify_contractivity(quad, gauss), std::invalid_argument);

    const LevyModel bm = levylab::make_model("brownian", {});
    CHECK_THROWS_AS((void)levylab::classify_contractivity(quad, bm), std::invalid_argument);

    const Potential custom = Potential::custom(1, [](std::span<const double> x) {
        return std::abs(x[0]);
    });
    const LevyModel stable = levylab::make_model("stable", {{"alpha", 1.0}});
    const ContractivityVerdict v = levylab::classify_contractivity(custom, stable);
    CHECK_FALSE(v.gsd_all_p);
    CHECK_FALSE(v.agsd_all_p);
    CHECK(v.behavior == RatioBehavior::oscillates_unknown);
}

TEST_CASE("classifier invariances") {
    const LevyModel stable = levylab::make_model("stable", {{"alpha", 1.0}});
    const LevyModel tempered = levylab::make_model("tempered", {{"alpha", 1.0}, {"c", 1.0}});
    const LevyModel stretched = levylab::make_model("stretched-exp", {{"beta", 1.0}, {"c", 1.0}});

    const std::vector<std::array<double, 3>> exponents = {
        {2, 0, 0}, {1, 0, 0}, {1, -1, 0}, {0, 1, 0}, {0, 1, 1},
        {0.5, 0, 0}, {0, 0, 1}, {0, -1, 0}, {0, 0, 0}, {1.5, -2, 0}};

    for (const LevyModel* model : {&stable, &tempered, &stretched}) {
        for (const auto& [d1, d2, d3] : exponents) {
            const Potential base = Potential::power_log_loglog(1, d1, d2, d3);
            const Potential scaled = Potential::power_log_loglog(1, d1, d2, d3, 7.3);
            const ContractivityVerdict vb = levylab::classify_contractivity(base, *model);
            const ContractivityVerdict vs = levylab::classify_contractivity(scaled, *model);
            if (vb.gsd_all_p) CHECK(vb.agsd_all_p);
            CHECK(vb.gsd_all_p == vs.gsd_all_p);
            CHECK(vb.agsd_all_p == vs.agsd_all_p);
        }
    }
}

TEST_CASE("kato confining check") {
    const auto quad = levylab::kato_confining_check(Potential::quadratic(1));
    CHECK(quad.first);

    const auto flat = levylab::kato_confining_check(Potential::power_log_loglog(1, 0, 0, 0));
    CHECK_FALSE(flat.first);
    CHECK(flat.second == "not confining");

    const auto logpot = levylab::kato_confining_check(Potential::power_log_loglog(1, 0, 1, 0));
    CHECK(logpot.first);

    const auto bounded_custom = levylab::kato_confining_check(
        Potential::custom(1, [](std::span<const double>) { return 1.0; }));
    CHECK_FALSE(bounded_custom.first);

    const auto growing_custom = levylab::kato_confining_check(
        Potential::custom(1, [](std::span<const double> x) { return x[0] * x[0]; }));
    CHECK(growing_custom.first);

    const auto unbounded_flag = levylab::kato_confining_check(
        Potential::custom(1, [](std::span<const double> x) { return x[0] * x[0]; }, false));
    CHECK_FALSE(unbounded_flag.first);
}

TEST_CASE("describe strings") {
    CHECK(levylab::describe(Potential::zero(1)) == "zero");
    CHECK(levylab::describe(Potential::quadratic(1)) == "quadratic");
    CHECK(levylab::describe(Potential::power_log_loglog(1, 2, 0, 0)) ==
          "power-log-loglog(2,0,0)");
    CHECK(std::string(levylab::to_string(RatioBehavior::tends_to_infinity)) ==
          "tends_to_infinity");
}
