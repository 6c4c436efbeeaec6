#pragma once

#include <functional>
#include <string>
#include <vector>

#include "levylab/grid.hpp"
#include "levylab/levy.hpp"
#include "levylab/potential.hpp"
#include "levylab/spectral.hpp"

namespace levylab {

struct NRule {
    int nodes_per_unit = 64;
    int n_min = 512;
    int n_max = 8192;

    int resolve(double r_box) const;
};

struct ScanConfig {
    std::vector<double> t_list;
    std::vector<double> p_list;
    std::vector<double> box_list;
    NRule n_rule;
    double window_fraction = 0.75;
    double gs_tol = 1e-6;
};

struct ScanEntry {
    double t = 0.0;
    double p = 0.0;
    double r_box = 0.0;
    int n = 0;
    double norm = 0.0;
};

struct ScanVerdict {
    double t = 0.0;
    double p = 0.0;
    std::string verdict;
};

struct GsdReport {
    std::string model_id;
    std::string potential_desc;
    double window_fraction = 0.75;
    std::vector<ScanEntry> entries;
    std::vector<ScanVerdict> verdicts;

    const std::string& verdict_for(double t, double p) const;
};

struct GsBoundResult {
    double sup_upper = 0.0;
    double inf_lower = 0.0;
    double spread = 0.0;
    bool pass = false;
};

struct NormResult {
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
};

struct LemmaReport {
    double lhs = 0.0;
    double rhs_tight = 0.0;
    double rhs_loose = 0.0;
    double heat_norm_2_inf = 0.0;
    double u_norm = 0.0;
    bool holds = false;
    bool vacuous = false;
};

struct EquivalenceReport {
    ContractivityVerdict verdict;
    GsdReport scan;
    std::vector<std::string> disagreements;
    std::vector<std::string> inconclusive;
    bool agree = false;
};

int propagation_steps(double t);

Field intrinsic_ratio(const SpectralResult& spec, const LevySymbol& symbol, const Potential& pot,
                      double t, int steps);

double weighted_lp_norm(const Field& f, const Field& phi0, double p, double window_fraction);

GsdReport gsd_scan(const LevyModel& model, const Potential& pot, const ScanConfig& cfg);

GsBoundResult gs_bound_check(const SpectralResult& spec, const LevyModel& model,
                             const Potential& pot, double r, double window_lo, double window_hi,
                             double spread_cap = 1e3);

NormResult operator_norm_2p(
    const std::function<void(const std::vector<double>&, std::vector<double>&)>& action,
    const std::vector<double>& mu_weights, double p);

NormResult intrinsic_norm_2p(const SpectralResult& spec, const LevySymbol& symbol,
                             const Potential& pot, double t, double p,
                             double window_fraction = 0.75);

LemmaReport lemma_consistency_check(const SpectralResult& spec, const LevySymbol& symbol,
                                    const Potential& pot, double t, double p, double t_b,
                                    double window_fraction = 0.75);

double gs_integrability(const SpectralResult& spec, double delta, double window_fraction = 0.75);

EquivalenceReport equivalence_consistency(const LevyModel& model, const Potential& pot,
                                          const ScanConfig& cfg);

}  // namespace levylab
