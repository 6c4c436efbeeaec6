#include "levylab/gsd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace levylab {

namespace {

constexpr double kPhiFloor = 1e-300;

bool is_inf_p(double p) {
    return std::isinf(p);
}

std::string format_tp(double t, double p) {
    std::ostringstream os;
    os << "t=" << t << ", p=";
    if (is_inf_p(p)) {
        os << "inf";
    } else {
        os << p;
    }
    return os.str();
}

// Spectral propagation carries absolute noise at roundoff of the field peak,
// so quotients by phi0 below this fraction of its peak are noise-driven; such
// windows must take the positive real-space route.
bool window_needs_positive(const Field& phi0, double window_fraction) {
    if (phi0.grid.dim != 1) return false;
    const double peak = phi0.max_abs();
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t idx : phi0.grid.window_indices(window_fraction)) {
        lowest = std::min(lowest, phi0.values[idx]);
    }
    return lowest < 1e-13 * peak;
}

Field ratio_field(const SpectralResult& spec, const Field& tt1, double t) {
    Field u;
    u.grid = spec.phi0.grid;
    u.time = t;
    u.values.resize(u.grid.size());
    const double gain = std::exp(spec.lambda0 * t);
    std::size_t excluded = 0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double phi = spec.phi0.values[i];
        if (phi < kPhiFloor) {
            u.values[i] = 0.0;
            ++excluded;
            continue;
        }
        u.values[i] = gain * tt1.values[i] / phi;
    }
    std::ostringstream label;
    label << "u_t";
    if (excluded > 0) label << " (" << excluded << " nodes excluded by the phi0 floor)";
    u.label = label.str();
    return u;
}

Field resolved_u_field(const SpectralResult& spec, const LevySymbol& symbol, const Potential& pot,
                       double t, int steps, bool positive) {
    if (t == 0.0 || !positive) return intrinsic_ratio(spec, symbol, pot, t, steps);
    const Field one = Field::constant(spec.phi0.grid, 1.0, "one");
    return ratio_field(spec, propagate_positive(one, symbol, pot, t, steps), t);
}

std::string trend_verdict(const std::vector<double>& norms) {
    if (norms.size() < 2) return "inconclusive";
    for (double v : norms) {
        if (!std::isfinite(v)) return "divergent";
    }
    std::vector<double> factors;
    for (std::size_t i = 0; i + 1 < norms.size(); ++i) {
        if (norms[i] <= 0.0) return "inconclusive";
        factors.push_back(norms[i + 1] / norms[i]);
    }

    int big_run = 0;
    for (double f : factors) {
        big_run = f > 10.0 ? big_run + 1 : 0;
        if (big_run >= 2) return "divergent";
    }
    bool accelerating = factors.size() >= 2;
    for (std::size_t i = 0; i < factors.size() && accelerating; ++i) {
        if (factors[i] < 1.2) accelerating = false;
        if (i > 0 && factors[i] < factors[i - 1]) accelerating = false;
    }
    if (accelerating) return "divergent";

    const double last_change = std::abs(factors.back() - 1.0);
    if (last_change < 0.01) return "finite";
    return "inconclusive";
}

}  // namespace

int NRule::resolve(double r_box) const {
    const double wanted = 2.0 * r_box * nodes_per_unit;
    int n = n_min;
    while (n < wanted && n < n_max) n *= 2;
    return std::min(n, n_max);
}

const std::string& GsdReport::verdict_for(double t, double p) const {
    for (const ScanVerdict& v : verdicts) {
        const bool p_match = (std::isinf(p) && std::isinf(v.p)) || v.p == p;
        if (v.t == t && p_match) return v.verdict;
    }
    throw std::out_of_range("no verdict recorded for the requested (t, p)");
}

int propagation_steps(double t) {
    return std::max(64, static_cast<int>(std::ceil(256.0 * t)));
}

Field intrinsic_ratio(const SpectralResult& spec, const LevySymbol& symbol, const Potential& pot,
                      double t, int steps) {
    const Grid& grid = spec.phi0.grid;
    if (t == 0.0) {
        Field u;
        u.grid = grid;
        u.time = t;
        u.values.resize(grid.size());
        for (std::size_t i = 0; i < u.values.size(); ++i) {
            const double phi = spec.phi0.values[i];
            u.values[i] = phi < kPhiFloor ? 0.0 : 1.0 / phi;
        }
        u.label = "u_0";
        return u;
    }

    const Field one = Field::constant(grid, 1.0, "one");
    return ratio_field(spec, propagate_semigroup(one, symbol, pot, t, steps), t);
}

double weighted_lp_norm(const Field& f, const Field& phi0, double p, double window_fraction) {
    if (!(f.grid == phi0.grid)) throw std::invalid_argument("field grids differ");
    if (!(p > 2.0)) throw std::invalid_argument("p must lie in (2, inf]");
    const std::vector<std::size_t> window = f.grid.window_indices(window_fraction);

    if (is_inf_p(p)) {
        double sup = 0.0;
        for (std::size_t idx : window) sup = std::max(sup, std::abs(f.values[idx]));
        return sup;
    }

    double numer = 0.0;
    double denom = 0.0;
    for (std::size_t idx : window) {
        const double w = phi0.values[idx] * phi0.values[idx];
        numer += std::pow(std::abs(f.values[idx]), p) * w;
        denom += w;
    }
    if (!(denom > 0.0)) throw std::invalid_argument("window carries no ground-state mass");
    return std::pow(numer / denom, 1.0 / p);
}

GsdReport gsd_scan(const LevyModel& model, const Potential& pot, const ScanConfig& cfg) {
    if (cfg.t_list.empty() || cfg.p_list.empty() || cfg.box_list.empty()) {
        throw std::invalid_argument("scan lists must be non-empty");
    }
    if (!std::is_sorted(cfg.box_list.begin(), cfg.box_list.end())) {
        throw std::invalid_argument("box list must be increasing");
    }

    GsdReport report;
    report.model_id = model.id;
    report.potential_desc = describe(pot);
    report.window_fraction = cfg.window_fraction;

    // norms[(t_idx, p_idx)][box_idx]
    std::vector<std::vector<double>> norms(cfg.t_list.size() * cfg.p_list.size());

    for (double r_box : cfg.box_list) {
        const int n = cfg.n_rule.resolve(r_box);
        const Grid grid = Grid::make(model.dim, r_box, n);
        const SpectralResult spec = ground_state(model.symbol, pot, grid, cfg.gs_tol);
        const bool positive = window_needs_positive(spec.phi0, cfg.window_fraction);
        for (std::size_t ti = 0; ti < cfg.t_list.size(); ++ti) {
            const double t = cfg.t_list[ti];
            const Field u =
                resolved_u_field(spec, model.symbol, pot, t, propagation_steps(t), positive);
            for (std::size_t pi = 0; pi < cfg.p_list.size(); ++pi) {
                const double p = cfg.p_list[pi];
                const double norm = weighted_lp_norm(u, spec.phi0, p, cfg.window_fraction);
                report.entries.push_back({t, p, r_box, n, norm});
                norms[ti * cfg.p_list.size() + pi].push_back(norm);
            }
        }
    }

    for (std::size_t ti = 0; ti < cfg.t_list.size(); ++ti) {
        for (std::size_t pi = 0; pi < cfg.p_list.size(); ++pi) {
            ScanVerdict v;
            v.t = cfg.t_list[ti];
            v.p = cfg.p_list[pi];
            v.verdict = trend_verdict(norms[ti * cfg.p_list.size() + pi]);
            report.verdicts.push_back(std::move(v));
        }
    }
    return report;
}

GsBoundResult gs_bound_check(const SpectralResult& spec, const LevyModel& model,
                             const Potential& pot, double r, double window_lo, double window_hi,
                             double spread_cap) {
    if (!model.has_jumps()) {
        throw std::invalid_argument("proposition hypotheses not met: model has no jump part");
    }
    if (!(r > 0.0) || r > 1.0) throw std::invalid_argument("r must lie in (0,1]");
    if (!(window_lo < window_hi)) throw std::invalid_argument("window must be non-degenerate");
    const Grid& grid = spec.phi0.grid;
    if (!(window_hi <= 0.75 * grid.r_box + 1e-9)) {
        throw std::invalid_argument("window exceeds the diagnostic buffer");
    }

    GsBoundResult out;
    out.sup_upper = 0.0;
    out.inf_lower = std::numeric_limits<double>::infinity();
    bool seen = false;
    for (std::size_t flat = 0; flat < grid.size(); ++flat) {
        const std::vector<double> x = grid.node(flat);
        double sq = 0.0;
        for (double c : x) sq += c * c;
        const double radius = std::sqrt(sq);
        if (radius < window_lo || radius > window_hi) continue;
        seen = true;
        const double nu = eval_density(model, std::span<const double>(x));
        const double phi = spec.phi0.values[flat];
        const double vstar = sup_ball(pot, std::span<const double>(x), r);
        out.sup_upper = std::max(out.sup_upper, phi / nu);
        out.inf_lower = std::min(out.inf_lower, phi * vstar / nu);
    }
    if (!seen) throw std::invalid_argument("window contains no grid nodes");
    out.spread = out.sup_upper / out.inf_lower;
    out.pass = std::isfinite(out.sup_upper) && out.inf_lower > 0.0 &&
               std::isfinite(out.spread) && out.spread <= spread_cap;
    return out;
}

NormResult operator_norm_2p(
    const std::function<void(const std::vector<double>&, std::vector<double>&)>& action,
    const std::vector<double>& mu_weights, double p) {
    if (!(p > 2.0) || std::isinf(p)) throw std::invalid_argument("p must lie in (2, inf)");
    const std::size_t m = mu_weights.size();
    if (m == 0) throw std::invalid_argument("empty weight vector");

    auto norm_2 = [&](const std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += mu_weights[i] * v[i] * v[i];
        return std::sqrt(s);
    };
    auto norm_p = [&](const std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += mu_weights[i] * std::pow(std::abs(v[i]), p);
        return std::pow(s, 1.0 / p);
    };

    // Non-constant start so the iteration can break symmetry immediately.
    std::vector<double> x(m);
    for (std::size_t i = 0; i < m; ++i) {
        x[i] = 1.0 + 0.5 * static_cast<double>(i) / static_cast<double>(std::max<std::size_t>(m - 1, 1));
    }
    {
        const double n0 = norm_2(x);
        for (double& v : x) v /= n0;
    }

    std::vector<double> y(m);
    std::vector<double> u(m);
    NormResult out;
    double prev = 0.0;
    constexpr int kCap = 20000;
    for (int iter = 1; iter <= kCap; ++iter) {
        action(x, y);
        const double np = norm_p(y);
        if (!(np > 0.0) || !std::isfinite(np)) {
            throw std::runtime_error("operator norm iteration degenerated");
        }
        out.value = np;
        out.iterations = iter;
        if (iter > 1 && std::abs(np - prev) <= 1e-8 * np) {
            out.converged = true;
            return out;
        }
        prev = np;
        // Duality map of the p-norm under the mu-pairing; weights enter the
        // pairing, not the map.
        for (std::size_t i = 0; i < m; ++i) {
            u[i] = std::pow(std::abs(y[i]), p - 1.0) * (y[i] < 0.0 ? -1.0 : 1.0) /
                   std::pow(np, p - 1.0);
        }
        action(u, x);
        const double n2 = norm_2(x);
        if (!(n2 > 0.0) || !std::isfinite(n2)) {
            throw std::runtime_error("operator norm iteration degenerated");
        }
        for (double& v : x) v /= n2;
    }
    return out;
}

NormResult intrinsic_norm_2p(const SpectralResult& spec, const LevySymbol& symbol,
                             const Potential& pot, double t, double p, double window_fraction) {
    const Grid& grid = spec.phi0.grid;
    const std::vector<std::size_t> window = grid.window_indices(window_fraction);
    const std::size_t m = window.size();

    const double hd = std::pow(grid.h, grid.dim);
    std::vector<double> weights(m);
    double z = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double phi = spec.phi0.values[window[i]];
        weights[i] = phi * phi * hd;
        z += weights[i];
    }
    for (double& w : weights) w /= z;

    const bool positive = window_needs_positive(spec.phi0, window_fraction);
    std::unique_ptr<Propagator> spectral_prop;
    std::unique_ptr<PositivePropagator> positive_prop;
    if (positive) {
        positive_prop =
            std::make_unique<PositivePropagator>(grid, symbol, pot, t, propagation_steps(t));
    } else {
        spectral_prop = std::make_unique<Propagator>(grid, symbol, pot, t, propagation_steps(t));
    }
    const double gain = std::exp(spec.lambda0 * t);

    Field work;
    work.grid = grid;
    work.values.assign(grid.size(), 0.0);
    auto action = [&](const std::vector<double>& in, std::vector<double>& result) {
        std::fill(work.values.begin(), work.values.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            work.values[window[i]] = in[i] * spec.phi0.values[window[i]];
        }
        const Field moved = positive ? positive_prop->apply(work) : spectral_prop->apply(work);
        result.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double phi = spec.phi0.values[window[i]];
            result[i] = phi < kPhiFloor ? 0.0 : gain * moved.values[window[i]] / phi;
        }
    };
    return operator_norm_2p(action, weights, p);
}

LemmaReport lemma_consistency_check(const SpectralResult& spec, const LevySymbol& symbol,
                                    const Potential& pot, double t, double p, double t_b,
                                    double window_fraction) {
    const auto [confining, reason] = kato_confining_check(pot);
    if (!confining) {
        throw std::invalid_argument("lemma check requires a confining potential: " + reason);
    }
    if (!(t > 0.0) || !(t_b > 0.0)) throw std::invalid_argument("t and t_b must be positive");

    const Grid& grid = spec.phi0.grid;
    LemmaReport report;

    report.lhs = intrinsic_norm_2p(spec, symbol, pot, t + t_b, p, window_fraction).value;

    const Field u = resolved_u_field(spec, symbol, pot, t, propagation_steps(t),
                                     window_needs_positive(spec.phi0, window_fraction));
    report.u_norm = weighted_lp_norm(u, spec.phi0, p, window_fraction);

    // ||e^{-t_b H}||_{2,inf} <= e^{t_b max(0,-min V)} ||p(t_b,.)||_2 with the
    // free kernel; the potentials in scope are nonnegative.
    double v_min = std::numeric_limits<double>::infinity();
    for (std::size_t flat = 0; flat < grid.size(); ++flat) {
        const std::vector<double> x = grid.node(flat);
        v_min = std::min(v_min, pot(std::span<const double>(x)));
    }
    const Field kernel = heat_kernel(symbol, t_b, grid);
    report.heat_norm_2_inf = std::exp(t_b * std::max(0.0, -v_min)) * kernel.l2_norm();

    const std::vector<std::size_t> window = grid.window_indices(window_fraction);
    const double hd = std::pow(grid.h, grid.dim);
    double z = 0.0;
    for (std::size_t idx : window) z += spec.phi0.values[idx] * spec.phi0.values[idx] * hd;
    const double sqrt_z = std::sqrt(z);

    report.rhs_tight = report.heat_norm_2_inf * sqrt_z * std::exp(spec.lambda0 * t_b) * report.u_norm;
    report.rhs_loose =
        report.heat_norm_2_inf * sqrt_z * std::exp(spec.lambda0 * (t + t_b)) * report.u_norm;
    report.holds = report.lhs <= report.rhs_tight * (1.0 + 1e-9);
    report.vacuous = report.lhs > 0.0 && report.rhs_tight / report.lhs > 1e6;
    return report;
}

double gs_integrability(const SpectralResult& spec, double delta, double window_fraction) {
    if (!(delta > 0.0) || !(delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
    const Grid& grid = spec.phi0.grid;
    const std::vector<std::size_t> window = grid.window_indices(window_fraction);
    const double hd = std::pow(grid.h, grid.dim);
    double s = 0.0;
    for (std::size_t idx : window) {
        s += std::pow(spec.phi0.values[idx], 1.0 - delta);
    }
    return s * hd;
}

EquivalenceReport equivalence_consistency(const LevyModel& model, const Potential& pot,
                                          const ScanConfig& cfg) {
    EquivalenceReport report;
    report.verdict = classify_contractivity(pot, model);
    report.scan = gsd_scan(model, pot, cfg);

    const double t_max = *std::max_element(cfg.t_list.begin(), cfg.t_list.end());
    bool all_finite = true;
    for (const ScanVerdict& v : report.scan.verdicts) {
        if (v.verdict == "inconclusive") {
            report.inconclusive.push_back(format_tp(v.t, v.p));
            all_finite = false;
            continue;
        }
        if (v.verdict != "finite") all_finite = false;

        if (report.verdict.gsd_all_p) {
            if (v.verdict == "divergent") {
                report.disagreements.push_back(format_tp(v.t, v.p) +
                                               ": classifier GSD but scan divergent");
            }
        } else if (report.verdict.agsd_all_p) {
            if (v.t == t_max && v.verdict == "divergent") {
                report.disagreements.push_back(format_tp(v.t, v.p) +
                                               ": classifier AGSD but scan divergent at largest t");
            }
        }
    }
    if (!report.verdict.gsd_all_p && !report.verdict.agsd_all_p && all_finite) {
        report.disagreements.push_back(
            "classifier says neither GSD nor AGSD but every scanned (t,p) is finite");
    }
    report.agree = report.disagreements.empty();
    return report;
}

}  // namespace levylab
