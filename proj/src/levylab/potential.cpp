#include "levylab/potential.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace levylab {

namespace {

double norm(std::span<const double> x) {
    double sq = 0.0;
    for (double v : x) sq += v * v;
    return std::sqrt(sq);
}

// Lexicographic growth order on the scale (1+r)^a [log(2+r)]^b [loglog]^c.
struct GrowthOrder {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

int compare(const GrowthOrder& lhs, const GrowthOrder& rhs) {
    if (lhs.a != rhs.a) return lhs.a < rhs.a ? -1 : 1;
    if (lhs.b != rhs.b) return lhs.b < rhs.b ? -1 : 1;
    if (lhs.c != rhs.c) return lhs.c < rhs.c ? -1 : 1;
    return 0;
}

GrowthOrder log_density_order(const JumpProfile& profile) {
    switch (profile.tail) {
        case TailFamily::polynomial:
            return {0.0, 1.0, 0.0};
        case TailFamily::stretched_exponential:
            return {profile.beta, -1.0, 0.0};
        case TailFamily::exponential:
            return {1.0, 0.0, 0.0};
        case TailFamily::gaussian_tail:
            throw std::invalid_argument(
                "gaussian-tail profile fails the structural assumptions; no verdict");
    }
    throw std::logic_error("unreachable tail family");
}

}  // namespace

Potential Potential::zero(int dim) {
    Potential p;
    p.family = PotentialFamily::zero;
    p.dim = dim;
    return p;
}

Potential Potential::constant(int dim, double value) {
    Potential p;
    p.family = PotentialFamily::constant;
    p.dim = dim;
    p.value = value;
    return p;
}

Potential Potential::quadratic(int dim, double amplitude) {
    if (!(amplitude > 0.0)) throw std::invalid_argument("quadratic potential requires amplitude > 0");
    Potential p;
    p.family = PotentialFamily::quadratic;
    p.dim = dim;
    p.amplitude = amplitude;
    return p;
}

Potential Potential::power_log_loglog(int dim, double d1, double d2, double d3, double amplitude) {
    if (!(amplitude > 0.0)) throw std::invalid_argument("family potential requires amplitude > 0");
    Potential p;
    p.family = PotentialFamily::power_log_loglog;
    p.dim = dim;
    p.amplitude = amplitude;
    p.d1 = d1;
    p.d2 = d2;
    p.d3 = d3;
    return p;
}

Potential Potential::custom(int dim, std::function<double(std::span<const double>)> eval,
                            bool locally_bounded) {
    Potential p;
    p.family = PotentialFamily::custom;
    p.dim = dim;
    p.custom_eval = std::move(eval);
    p.custom_locally_bounded = locally_bounded;
    return p;
}

double Potential::radial(double r) const {
    switch (family) {
        case PotentialFamily::zero:
            return 0.0;
        case PotentialFamily::constant:
            return value;
        case PotentialFamily::quadratic:
            return amplitude * r * r;
        case PotentialFamily::power_log_loglog: {
            const double f = std::pow(1.0 + r, d1) * std::pow(std::log(2.0 + r), d2) *
                             std::pow(std::log(2.0 + std::log(2.0 + r)), d3);
            return amplitude * f;
        }
        case PotentialFamily::custom:
            throw std::logic_error("custom potentials have no radial form");
    }
    throw std::logic_error("unreachable potential family");
}

double Potential::operator()(std::span<const double> x) const {
    if (family == PotentialFamily::custom) {
        if (!custom_eval) throw std::logic_error("custom potential has no evaluator");
        return custom_eval(x);
    }
    return radial(norm(x));
}

const char* to_string(RatioBehavior behavior) {
    switch (behavior) {
        case RatioBehavior::tends_to_infinity: return "tends_to_infinity";
        case RatioBehavior::bounded_below_positive: return "bounded_below_positive";
        case RatioBehavior::tends_to_zero: return "tends_to_zero";
        case RatioBehavior::oscillates_unknown: return "oscillates_unknown";
    }
    return "oscillates_unknown";
}

std::string describe(const Potential& pot) {
    std::ostringstream os;
    switch (pot.family) {
        case PotentialFamily::zero:
            return "zero";
        case PotentialFamily::constant:
            os << "constant(" << pot.value << ")";
            return os.str();
        case PotentialFamily::quadratic:
            if (pot.amplitude == 1.0) return "quadratic";
            os << "quadratic(amplitude=" << pot.amplitude << ")";
            return os.str();
        case PotentialFamily::power_log_loglog:
            os << "power-log-loglog(" << pot.d1 << "," << pot.d2 << "," << pot.d3 << ")";
            if (pot.amplitude != 1.0) os << "*" << pot.amplitude;
            return os.str();
        case PotentialFamily::custom:
            return "custom";
    }
    return "unknown";
}

double eval_potential(const Potential& pot, std::span<const double> x) {
    return pot(x);
}

double sup_ball(const Potential& pot, std::span<const double> x, double r) {
    if (!(r > 0.0) || r > 1.0) throw std::invalid_argument("sup_ball radius must lie in (0,1]");
    if (pot.family != PotentialFamily::custom) {
        // Radial non-decreasing families attain the sup on the outward edge.
        return pot.radial(norm(x) + r);
    }
    // Sampled probe for custom evaluators: axis-aligned segments through x.
    double best = pot(x);
    std::vector<double> y(x.begin(), x.end());
    constexpr int kSamples = 129;
    for (std::size_t axis = 0; axis < y.size(); ++axis) {
        const double base = y[axis];
        for (int i = 0; i < kSamples; ++i) {
            y[axis] = base - r + 2.0 * r * i / (kSamples - 1);
            best = std::max(best, pot(y));
        }
        y[axis] = base;
    }
    return best;
}

double borderline_ratio(const Potential& pot, const LevyModel& model, std::span<const double> x) {
    if (!model.profile) throw std::invalid_argument("model has no jump part");
    const double r = norm(x);
    if (!(r >= 2.0)) throw std::invalid_argument("borderline ratio requires |x| >= 2");
    const double log_nu = model.profile->log_value(r);
    if (log_nu >= 0.0) throw std::invalid_argument("density >= 1 at this radius; ratio undefined");
    return pot(x) / (-log_nu);
}

ContractivityVerdict classify_contractivity(const Potential& pot, const LevyModel& model) {
    if (!model.profile) throw std::invalid_argument("model has no jump part; classifier undefined");
    ContractivityVerdict verdict;
    if (pot.family == PotentialFamily::custom) {
        verdict.behavior = RatioBehavior::oscillates_unknown;
        return verdict;
    }

    GrowthOrder v_order;
    switch (pot.family) {
        case PotentialFamily::zero:
        case PotentialFamily::constant:
            v_order = {0.0, 0.0, 0.0};
            break;
        case PotentialFamily::quadratic:
            v_order = {2.0, 0.0, 0.0};
            break;
        case PotentialFamily::power_log_loglog:
            v_order = {pot.d1, pot.d2, pot.d3};
            break;
        case PotentialFamily::custom:
            break;
    }
    const bool confining = compare(v_order, {0.0, 0.0, 0.0}) > 0;
    const GrowthOrder nu_order = log_density_order(*model.profile);
    const int cmp = compare(v_order, nu_order);

    if (!confining || cmp < 0) {
        verdict.behavior = RatioBehavior::tends_to_zero;
        return verdict;
    }
    if (cmp > 0) {
        verdict.gsd_all_p = true;
        verdict.agsd_all_p = true;
        verdict.behavior = RatioBehavior::tends_to_infinity;
        return verdict;
    }

    verdict.agsd_all_p = true;
    verdict.behavior = RatioBehavior::bounded_below_positive;
    verdict.witness_r = 10.0;
    double c = std::numeric_limits<double>::infinity();
    for (double r : {10.0, 100.0, 1000.0}) {
        const double ratio = pot.radial(r) / (-model.profile->log_value(r));
        c = std::min(c, ratio);
    }
    verdict.witness_c = c;
    return verdict;
}

std::pair<bool, std::string> kato_confining_check(const Potential& pot) {
    switch (pot.family) {
        case PotentialFamily::zero:
        case PotentialFamily::constant:
            return {false, "not confining"};
        case PotentialFamily::quadratic:
            return {true, "continuous confining family"};
        case PotentialFamily::power_log_loglog: {
            const bool confining =
                pot.d1 > 0.0 || (pot.d1 == 0.0 && pot.d2 > 0.0) ||
                (pot.d1 == 0.0 && pot.d2 == 0.0 && pot.d3 > 0.0);
            if (!confining) return {false, "not confining"};
            return {true, "continuous confining family"};
        }
        case PotentialFamily::custom: {
            if (!pot.custom_locally_bounded) {
                return {false, "custom evaluator not declared locally bounded"};
            }
            std::vector<double> x(pot.dim, 0.0);
            for (int axis = 0; axis < pot.dim; ++axis) {
                for (double sign : {1.0, -1.0}) {
                    std::fill(x.begin(), x.end(), 0.0);
                    x[axis] = sign;
                    const double near = pot(x);
                    x[axis] = sign * 1024.0;
                    const double far = pot(x);
                    if (!(far >= near + 10.0)) {
                        return {false, "sampled confinement probe failed"};
                    }
                }
            }
            return {true, "sampled confinement probe passed"};
        }
    }
    return {false, "unknown family"};
}

}  // namespace levylab
