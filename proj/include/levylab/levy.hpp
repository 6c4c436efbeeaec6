#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace levylab {

enum class TailFamily {
    polynomial,              // g(r) = r^{-d-gamma} for r >= 1
    stretched_exponential,   // g(r) = e^{c/log 3} e^{-c r^beta / log(2+r)}
    exponential,             // g(r) = e^{c} e^{-c r} r^{-gamma}
    gaussian_tail            // g(r) = e^{-r^2}; counterexample family
};

// Radial jump-density profile. Inside the unit ball g(r) = r^{-d-alpha}; the
// tail branch is selected by `tail`. The model's Levy measure is
// nu(dz) = g(|z|) dz, normalization constant fixed to 1.
struct JumpProfile {
    int dim = 1;
    double alpha = 1.0;
    TailFamily tail = TailFamily::polynomial;
    double gamma = 1.0;  // polynomial / exponential tail exponent
    double c = 1.0;      // exponential-type tail rate
    double beta = 1.0;   // stretched-exponential exponent

    JumpProfile() = default;
    JumpProfile(int d, double a, TailFamily t, double g, double cc, double b);

    double operator()(double r) const;
    // log g(r) in closed form; usable far past the range where g underflows.
    double log_value(double r) const;
};

enum class SymbolKind {
    stable,            // |xi|^alpha
    relativistic,      // (|xi|^2 + m^{2/alpha})^{alpha/2} - m
    jump_diffusion,    // a|xi|^2 + |xi|^alpha
    geometric_stable,  // log(1 + |xi|^alpha)
    diffusion,         // a|xi|^2, no jump part
    quadrature         // Levy-Khintchin integral of the profile
};

struct QuadratureControl {
    double epsrel = 1e-10;
    double tail_cut = 1e-16;  // outer integral truncated where g < tail_cut * g(1)
};

// Characteristic exponent psi(xi) = a|xi|^2 + int (1 - cos(xi.z)) nu(dz).
// Closed-form kinds evaluate analytically; `quadrature` evaluates the
// Levy-Khintchin integral of density_scale * g. For closed-form kinds that
// carry a profile, quadrature_eval() exercises the same integral as an
// independent route (exact for stable and jump_diffusion, whose densities are
// the properly normalized stable ones).
class LevySymbol {
public:
    static LevySymbol stable(int dim, double alpha);
    static LevySymbol relativistic(int dim, double alpha, double mass);
    static LevySymbol jump_diffusion(int dim, double a, double alpha);
    static LevySymbol geometric_stable(int dim, double alpha);
    static LevySymbol diffusion(int dim, double a);
    static LevySymbol quadrature(int dim, double a, std::shared_ptr<const JumpProfile> profile,
                                 double density_scale, QuadratureControl control = {});

    double eval(double xi_norm) const;
    double eval(std::span<const double> xi) const;
    double quadrature_eval(double xi_norm) const;

    SymbolKind kind() const { return kind_; }
    int dim() const { return dim_; }
    double diffusion_a() const { return a_; }
    double alpha() const { return alpha_; }
    double mass() const { return mass_; }
    double density_scale() const { return density_scale_; }
    const std::shared_ptr<const JumpProfile>& profile() const { return profile_; }

    void set_profile(std::shared_ptr<const JumpProfile> profile, double density_scale);

    LevySymbol() = default;  // psi = 0 placeholder; use the factories for real symbols

private:
    SymbolKind kind_ = SymbolKind::diffusion;
    int dim_ = 1;
    double a_ = 0.0;
    double alpha_ = 1.0;
    double mass_ = 0.0;
    double density_scale_ = 1.0;
    std::shared_ptr<const JumpProfile> profile_;
    QuadratureControl control_;
};

struct LevyModel {
    std::string id;
    int dim = 1;
    LevySymbol symbol;
    std::shared_ptr<const JumpProfile> profile;  // null for pure diffusion
    bool exact_stable = false;                   // CMS sampling available
    std::map<std::string, double> params;        // constructor arguments, echoed in reports

    bool has_jumps() const { return profile != nullptr; }
};

// Normalization A(d,alpha) with int (1-cos(xi.z)) A|z|^{-d-alpha} dz = |xi|^alpha.
double stable_density_normalization(int dim, double alpha);

struct CatalogEntry {
    std::string id;
    std::string parameters;
    std::string description;
};

std::vector<CatalogEntry> list_catalog();

// Construct a catalog model by identifier. Recognized ids: "stable",
// "relativistic", "tempered", "geometric-stable", "jump-diffusion", "layered",
// "stretched-exp", "gaussian-tail-counterexample" (alias "gaussian-tail"),
// "brownian". Missing parameters take the documented defaults.
LevyModel make_model(const std::string& id, const std::map<std::string, double>& params);

double eval_symbol(const LevyModel& model, std::span<const double> xi);
double eval_density(const LevyModel& model, std::span<const double> x);

struct JumpParingResult {
    std::vector<std::pair<double, double>> ratios;  // (radius, I(x)/g(x))
    bool bounded = false;
    std::string note;
};

// Convolution-domination check: I(x)/g(|x|) with
// I(x) = int_{|x-y|>1, |y|>1} g(|x-y|) g(|y|) dy, d = 1 only.
JumpParingResult jump_paring_ratio(const JumpProfile& profile, const std::vector<double>& radii);

struct ComparabilityResult {
    bool bounded = false;
    double min_quotient = 0.0;
    double max_quotient = 0.0;
};

// Checks that g(r)/g(r+1) stays within a bounded band over the sampled radii.
ComparabilityResult comparability_check(const JumpProfile& profile, const std::vector<double>& radii);

struct IntegrabilityTime {
    double t_b = 0.0;
    bool determined = true;
    std::string note;
};

// Estimate of inf{t : exp(-t psi) is integrable} by bisection with a
// divergence probe on growing frequency cutoffs; 0 when finite for all probed t.
IntegrabilityTime minimal_integrability_time(const LevySymbol& symbol, double tol);

// Structural (A1) probes used by check-model and the test suite.
bool profile_nonincreasing(const JumpProfile& profile, int samples = 4096, double r_max = 64.0);
double profile_small_large_mass(const JumpProfile& profile);  // int (1 ^ |z|^2) g(|z|) dz
std::vector<double> profile_small_ball_ladder(const JumpProfile& profile,
                                              const std::vector<double>& cutoffs);

}  // namespace levylab
