#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "levylab/levy.hpp"
#include "levylab/potential.hpp"
#include "levylab/rng.hpp"

namespace levylab {

enum class SmallJumpMode { gaussian_correction, drop };

struct McConfig {
    std::uint64_t n_paths = 10000;
    double dt = 1e-3;
    double epsilon = 0.25;
    std::uint64_t seed = 0;
    SmallJumpMode small_jump_mode = SmallJumpMode::gaussian_correction;
    int threads = 1;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n_paths = 0;
    McConfig config;
};

class PathSampler {
  public:
    PathSampler(const LevyModel& model, const McConfig& cfg);

    void increment(double dt, Philox& rng, std::span<double> dx) const;

    double jump_rate() const { return rate_; }
    double small_jump_sigma2() const { return sigma2_small_; }

  private:
    enum class Mode { exact_stable, compound_poisson, pure_diffusion };

    double sample_radius(Philox& rng) const;

    Mode mode_ = Mode::pure_diffusion;
    int dim_ = 1;
    double alpha_ = 0.0;
    double diffusion_a_ = 0.0;
    double rate_ = 0.0;
    double sigma2_small_ = 0.0;
    std::vector<double> log_r_;
    std::vector<double> cdf_;
};

std::vector<std::vector<double>> simulate_path(const LevyModel& model,
                                               std::span<const double> x0, double t,
                                               const McConfig& cfg, Philox& rng);

McEstimate fk_estimate(const LevyModel& model, const Potential& pot, std::span<const double> x0,
                       double t, const McConfig& cfg);

}  // namespace levylab
