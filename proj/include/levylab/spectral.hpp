#pragma once

#include <vector>

#include "levylab/grid.hpp"
#include "levylab/levy.hpp"
#include "levylab/potential.hpp"

namespace levylab {

struct SpectralResult {
    double lambda0 = 0.0;
    Field phi0;
    double residual = 0.0;
    int iterations = 0;
};

struct DenseOracleResult {
    double lambda0 = 0.0;
    double lambda1 = 0.0;
    Field phi0;
};

std::vector<double> symbol_table(const Grid& grid, const LevySymbol& symbol);

Field apply_generator(const Field& f, const LevySymbol& symbol);

Field apply_hamiltonian(const Field& f, const LevySymbol& symbol, const Potential& pot);

Field heat_kernel(const LevySymbol& symbol, double t, const Grid& grid);

class Propagator {
  public:
    Propagator(const Grid& grid, const LevySymbol& symbol, const Potential& pot, double t,
               int steps);

    Field apply(const Field& f) const;
    double dt() const { return dt_; }
    double t() const { return t_; }

  private:
    Grid grid_;
    double t_;
    double dt_;
    int steps_;
    std::vector<double> free_factor_;
    std::vector<double> half_v_;
    std::vector<double> full_v_;
};

Field propagate_semigroup(const Field& f, const LevySymbol& symbol, const Potential& pot, double t,
                          int steps);

// Real-space split-step propagator for d = 1. Every arithmetic step is a sum
// of nonnegative products, so far-tail values keep their relative accuracy;
// the spectral propagator floors them at roundoff of the field maximum. The
// box boundary is absorbing, and the step count is capped so the per-step
// kernel still satisfies the aliasing bound.
class PositivePropagator {
  public:
    PositivePropagator(const Grid& grid, const LevySymbol& symbol, const Potential& pot, double t,
                       int steps);

    Field apply(const Field& f) const;
    double dt() const { return dt_; }
    double t() const { return t_; }
    int steps() const { return steps_; }

  private:
    Grid grid_;
    double t_ = 0.0;
    double dt_ = 0.0;
    int steps_ = 0;
    int support_lo_ = 0;
    int support_hi_ = 0;
    std::vector<double> kernel_;
    std::vector<double> half_v_;
};

Field propagate_positive(const Field& f, const LevySymbol& symbol, const Potential& pot, double t,
                         int steps);

SpectralResult ground_state(const LevySymbol& symbol, const Potential& pot, const Grid& grid,
                            double tol);

DenseOracleResult dense_oracle(const LevySymbol& symbol, const Potential& pot, const Grid& grid);

}  // namespace levylab
