#pragma once

#include <functional>

namespace levylab::quad {

struct Result {
    double value = 0.0;
    double abserr = 0.0;
    bool converged = false;
};

// Adaptive integral of f over [a, b] (GSL QAGS).
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double epsabs, double epsrel);

// Adaptive integral of f over [a, inf) (GSL QAGIU).
Result integrate_to_inf(const std::function<double(double)>& f, double a,
                        double epsabs, double epsrel);

// Integral of f(x)·cos(omega·x) over [a, inf) (GSL QAWF); epsabs only, per the
// underlying routine.
Result fourier_cos_to_inf(const std::function<double(double)>& f, double a,
                          double omega, double epsabs);

// Integral of f(x)·sin(omega·x) over [a, inf) (GSL QAWF).
Result fourier_sin_to_inf(const std::function<double(double)>& f, double a,
                          double omega, double epsabs);

}  // namespace levylab::quad
