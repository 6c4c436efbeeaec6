#include "levylab/mc.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "levylab/quadrature.hpp"

namespace levylab {

namespace {

constexpr std::uint64_t kChunk = 4096;
constexpr int kTableSegments = 1024;

double sphere_surface(int dim) {
    switch (dim) {
        case 1: return 2.0;
        case 2: return 2.0 * std::numbers::pi;
        case 3: return 4.0 * std::numbers::pi;
        default: throw std::invalid_argument("dimension must be 1, 2 or 3");
    }
}

int poisson_knuth(double mean, Philox& rng) {
    if (mean <= 0.0) return 0;
    if (mean > 60.0) throw std::runtime_error("jump intensity per step too large; reduce dt");
    const double limit = std::exp(-mean);
    int k = 0;
    double prod = 1.0;
    while (true) {
        prod *= rng.uniform();
        if (prod <= limit) return k;
        ++k;
    }
}

void unit_direction(int dim, Philox& rng, std::span<double> dir) {
    if (dim == 1) {
        dir[0] = rng.uniform() < 0.5 ? -1.0 : 1.0;
        return;
    }
    double nrm = 0.0;
    do {
        nrm = 0.0;
        for (int i = 0; i < dim; ++i) {
            dir[i] = rng.gaussian();
            nrm += dir[i] * dir[i];
        }
        nrm = std::sqrt(nrm);
    } while (nrm < 1e-12);
    for (int i = 0; i < dim; ++i) dir[i] /= nrm;
}

}  // namespace

PathSampler::PathSampler(const LevyModel& model, const McConfig& cfg) {
    dim_ = model.dim;
    diffusion_a_ = model.symbol.diffusion_a();

    if (!model.has_jumps()) {
        mode_ = Mode::pure_diffusion;
        if (!(diffusion_a_ > 0.0)) {
            throw std::invalid_argument("model has neither jumps nor diffusion");
        }
        return;
    }
    if (model.exact_stable) {
        mode_ = Mode::exact_stable;
        alpha_ = model.symbol.alpha();
        return;
    }

    mode_ = Mode::compound_poisson;
    const JumpProfile& g = *model.profile;
    const double eps = cfg.epsilon;
    if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("epsilon must lie in (0,1]");
    const double surface = sphere_surface(dim_);

    auto radial = [&](double r) { return g(r) * std::pow(r, dim_ - 1); };
    const quad::Result total = quad::integrate_to_inf(radial, eps, 1e-300, 1e-10);
    rate_ = surface * total.value;
    if (!(rate_ > 0.0)) throw std::runtime_error("jump rate beyond epsilon vanished");

    // Variance of the discarded small jumps, per axis and per unit time; the
    // profile is the exact power law on (0,1] and eps <= 1, so the moment is
    // closed-form.
    alpha_ = g.alpha;
    if (cfg.small_jump_mode == SmallJumpMode::gaussian_correction) {
        sigma2_small_ = (surface / dim_) * std::pow(eps, 2.0 - alpha_) / (2.0 - alpha_);
    }

    // Radial inverse-CDF table on [eps, r_cut], log-spaced; r_cut keeps the
    // omitted tail below 1e-14 of the total rate.
    double r_cut = std::max(2.0 * eps, 2.0);
    while (true) {
        const quad::Result tail = quad::integrate_to_inf(radial, r_cut, 1e-300, 1e-8);
        if (surface * tail.value <= 1e-14 * rate_) break;
        r_cut *= 2.0;
        if (r_cut > 1e16) throw std::runtime_error("profile tail too heavy for the jump table");
    }

    log_r_.resize(kTableSegments + 1);
    cdf_.resize(kTableSegments + 1);
    const double lo = std::log(eps);
    const double hi = std::log(r_cut);
    for (int i = 0; i <= kTableSegments; ++i) {
        log_r_[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / kTableSegments;
    }
    // 5-point Gauss-Legendre per segment in the log variable.
    static const double gl_x[5] = {-0.906179845938664, -0.538469310105683, 0.0,
                                   0.538469310105683, 0.906179845938664};
    static const double gl_w[5] = {0.236926885056189, 0.478628670499366, 0.568888888888889,
                                   0.478628670499366, 0.236926885056189};
    cdf_[0] = 0.0;
    for (int i = 0; i < kTableSegments; ++i) {
        const double a = log_r_[static_cast<std::size_t>(i)];
        const double b = log_r_[static_cast<std::size_t>(i) + 1];
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        double seg = 0.0;
        for (int q = 0; q < 5; ++q) {
            const double v = mid + half * gl_x[q];
            const double r = std::exp(v);
            seg += gl_w[q] * radial(r) * r;
        }
        cdf_[static_cast<std::size_t>(i) + 1] =
            cdf_[static_cast<std::size_t>(i)] + surface * seg * half;
    }
}

double PathSampler::sample_radius(Philox& rng) const {
    const double target = rng.uniform() * cdf_.back();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
    std::size_t i = static_cast<std::size_t>(std::distance(cdf_.begin(), it));
    if (i == 0) i = 1;
    if (i > static_cast<std::size_t>(kTableSegments)) i = kTableSegments;
    const double c0 = cdf_[i - 1];
    const double c1 = cdf_[i];
    const double frac = c1 > c0 ? (target - c0) / (c1 - c0) : 0.5;
    const double lv = log_r_[i - 1] + frac * (log_r_[i] - log_r_[i - 1]);
    return std::exp(lv);
}

void PathSampler::increment(double dt, Philox& rng, std::span<double> dx) const {
    if (static_cast<int>(dx.size()) != dim_) throw std::invalid_argument("bad increment size");
    std::fill(dx.begin(), dx.end(), 0.0);

    switch (mode_) {
        case Mode::pure_diffusion:
            break;
        case Mode::exact_stable: {
            const double scale = std::pow(dt, 1.0 / alpha_);
            if (dim_ == 1) {
                dx[0] += scale * sample_symmetric_stable(alpha_, rng);
            } else {
                // Subordination: X = sqrt(2 S) G with S an (alpha/2)-stable
                // subordinator increment; the per-axis Gaussian variance 2s
                // matches the psi = |xi|^2 diffusion convention.
                const double s = std::pow(dt, 2.0 / alpha_) * sample_positive_stable(0.5 * alpha_, rng);
                const double amp = std::sqrt(2.0 * s);
                for (int i = 0; i < dim_; ++i) dx[i] += amp * rng.gaussian();
            }
            break;
        }
        case Mode::compound_poisson: {
            const int jumps = poisson_knuth(rate_ * dt, rng);
            std::array<double, 3> dir{};
            for (int j = 0; j < jumps; ++j) {
                const double r = sample_radius(rng);
                unit_direction(dim_, rng, std::span<double>(dir.data(), static_cast<std::size_t>(dim_)));
                for (int i = 0; i < dim_; ++i) dx[i] += r * dir[static_cast<std::size_t>(i)];
            }
            if (sigma2_small_ > 0.0) {
                const double amp = std::sqrt(sigma2_small_ * dt);
                for (int i = 0; i < dim_; ++i) dx[i] += amp * rng.gaussian();
            }
            break;
        }
    }

    if (diffusion_a_ > 0.0) {
        const double amp = std::sqrt(2.0 * diffusion_a_ * dt);
        for (int i = 0; i < dim_; ++i) dx[i] += amp * rng.gaussian();
    }
}

std::vector<std::vector<double>> simulate_path(const LevyModel& model,
                                               std::span<const double> x0, double t,
                                               const McConfig& cfg, Philox& rng) {
    if (!(t > 0.0)) throw std::invalid_argument("path horizon must be positive");
    if (static_cast<int>(x0.size()) != model.dim) throw std::invalid_argument("x0 dimension mismatch");
    const PathSampler sampler(model, cfg);
    const auto steps = std::max<std::int64_t>(1, std::llround(t / cfg.dt));
    const double dt = t / static_cast<double>(steps);

    std::vector<std::vector<double>> path;
    path.reserve(static_cast<std::size_t>(steps) + 1);
    std::vector<double> x(x0.begin(), x0.end());
    std::vector<double> dx(x.size());
    path.push_back(x);
    for (std::int64_t k = 0; k < steps; ++k) {
        sampler.increment(dt, rng, dx);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
        path.push_back(x);
    }
    return path;
}

McEstimate fk_estimate(const LevyModel& model, const Potential& pot, std::span<const double> x0,
                       double t, const McConfig& cfg) {
    if (!(t > 0.0)) throw std::invalid_argument("horizon must be positive");
    if (cfg.n_paths < 1) throw std::invalid_argument("n_paths must be >= 1");
    if (static_cast<int>(x0.size()) != model.dim) throw std::invalid_argument("x0 dimension mismatch");

    const PathSampler sampler(model, cfg);
    const auto steps = std::max<std::int64_t>(1, std::llround(t / cfg.dt));
    const double dt = t / static_cast<double>(steps);

    const std::uint64_t n = cfg.n_paths;
    const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
    // Welford accumulators; the centered form keeps the variance exact when
    // every path carries the same weight (flat potentials).
    struct Partial {
        std::uint64_t count = 0;
        double mean = 0.0;
        double m2 = 0.0;
    };
    std::vector<Partial> partials(chunks);

    auto run_chunk = [&](std::uint64_t chunk) {
        const std::uint64_t begin = chunk * kChunk;
        const std::uint64_t end = std::min(n, begin + kChunk);
        Partial acc;
        std::vector<double> x(x0.size());
        std::vector<double> dx(x0.size());
        for (std::uint64_t path = begin; path < end; ++path) {
            Philox rng(cfg.seed, path);
            std::copy(x0.begin(), x0.end(), x.begin());
            double integral = 0.0;
            for (std::int64_t k = 0; k < steps; ++k) {
                integral += pot(std::span<const double>(x)) * dt;
                sampler.increment(dt, rng, dx);
                for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
            }
            const double value = std::exp(-integral);
            ++acc.count;
            const double delta = value - acc.mean;
            acc.mean += delta / static_cast<double>(acc.count);
            acc.m2 += delta * (value - acc.mean);
        }
        partials[chunk] = acc;
    };

    const int threads = std::max(1, cfg.threads);
    if (threads == 1 || chunks <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        auto worker = [&]() {
            while (true) {
                const std::uint64_t c = next.fetch_add(1);
                if (c >= chunks) return;
                run_chunk(c);
            }
        };
        std::vector<std::thread> pool;
        const int pool_size = static_cast<int>(std::min<std::uint64_t>(threads, chunks));
        pool.reserve(static_cast<std::size_t>(pool_size));
        for (int i = 0; i < pool_size; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Deterministic reduction: partials combined in chunk order regardless of
    // which worker produced them.
    Partial total;
    for (const Partial& p : partials) {
        if (p.count == 0) continue;
        if (total.count == 0) {
            total = p;
            continue;
        }
        const double delta = p.mean - total.mean;
        const std::uint64_t merged = total.count + p.count;
        total.m2 += p.m2 + delta * delta * static_cast<double>(total.count) *
                               static_cast<double>(p.count) / static_cast<double>(merged);
        total.mean += delta * static_cast<double>(p.count) / static_cast<double>(merged);
        total.count = merged;
    }

    McEstimate est;
    est.n_paths = n;
    est.config = cfg;
    est.mean = total.mean;
    if (n > 1) {
        const double var = std::max(0.0, total.m2 / static_cast<double>(n - 1));
        est.std_error = std::sqrt(var / static_cast<double>(n));
    }
    return est;
}

}  // namespace levylab
