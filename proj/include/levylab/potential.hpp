#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>

#include "levylab/levy.hpp"

namespace levylab {

enum class PotentialFamily { zero, constant, quadratic, power_log_loglog, custom };

struct Potential {
    PotentialFamily family = PotentialFamily::zero;
    int dim = 1;
    double amplitude = 1.0;
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
    std::function<double(std::span<const double>)> custom_eval;
    bool custom_locally_bounded = true;

    static Potential zero(int dim);
    static Potential constant(int dim, double value);
    static Potential quadratic(int dim, double amplitude = 1.0);
    static Potential power_log_loglog(int dim, double d1, double d2, double d3,
                                      double amplitude = 1.0);
    static Potential custom(int dim, std::function<double(std::span<const double>)> eval,
                            bool locally_bounded = true);

    double radial(double r) const;
    double operator()(std::span<const double> x) const;
};

enum class RatioBehavior { tends_to_infinity, bounded_below_positive, tends_to_zero, oscillates_unknown };

struct ContractivityVerdict {
    bool gsd_all_p = false;
    bool agsd_all_p = false;
    RatioBehavior behavior = RatioBehavior::oscillates_unknown;
    double witness_c = 0.0;
    double witness_r = 0.0;
};

const char* to_string(RatioBehavior behavior);

std::string describe(const Potential& pot);

double eval_potential(const Potential& pot, std::span<const double> x);

double sup_ball(const Potential& pot, std::span<const double> x, double r);

double borderline_ratio(const Potential& pot, const LevyModel& model, std::span<const double> x);

ContractivityVerdict classify_contractivity(const Potential& pot, const LevyModel& model);

std::pair<bool, std::string> kato_confining_check(const Potential& pot);

}  // namespace levylab
