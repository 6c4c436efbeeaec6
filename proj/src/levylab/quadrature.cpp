#include "levylab/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <memory>

namespace levylab::quad {

namespace {

constexpr std::size_t kWorkspaceLimit = 4096;

// The GSL default error handler aborts the process; statuses are handled at
// the call sites instead.
const int kHandlerOff = [] {
    gsl_set_error_handler_off();
    return 0;
}();

double trampoline(double x, void* params) {
    return (*static_cast<const std::function<double(double)>*>(params))(x);
}

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};
struct CycleDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};
struct TableDeleter {
    void operator()(gsl_integration_qawo_table* t) const { gsl_integration_qawo_table_free(t); }
};

using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;

Result fourier_to_inf(const std::function<double(double)>& f, double a, double omega,
                      double epsabs, gsl_integration_qawo_enum kind) {
    gsl_function gf;
    gf.function = &trampoline;
    gf.params = const_cast<std::function<double(double)>*>(&f);

    Workspace main(gsl_integration_workspace_alloc(kWorkspaceLimit));
    Workspace cycle(gsl_integration_workspace_alloc(kWorkspaceLimit));
    std::unique_ptr<gsl_integration_qawo_table, TableDeleter> table(
        gsl_integration_qawo_table_alloc(omega, 1.0, kind, 48));

    Result out;
    const int status = gsl_integration_qawf(&gf, a, epsabs, kWorkspaceLimit, main.get(),
                                            cycle.get(), table.get(), &out.value, &out.abserr);
    out.converged = (status == GSL_SUCCESS);
    return out;
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 double epsabs, double epsrel) {
    gsl_function gf;
    gf.function = &trampoline;
    gf.params = const_cast<std::function<double(double)>*>(&f);

    Workspace ws(gsl_integration_workspace_alloc(kWorkspaceLimit));
    Result out;
    const int status = gsl_integration_qags(&gf, a, b, epsabs, epsrel, kWorkspaceLimit,
                                            ws.get(), &out.value, &out.abserr);
    out.converged = (status == GSL_SUCCESS);
    return out;
}

Result integrate_to_inf(const std::function<double(double)>& f, double a,
                        double epsabs, double epsrel) {
    gsl_function gf;
    gf.function = &trampoline;
    gf.params = const_cast<std::function<double(double)>*>(&f);

    Workspace ws(gsl_integration_workspace_alloc(kWorkspaceLimit));
    Result out;
    const int status = gsl_integration_qagiu(&gf, a, epsabs, epsrel, kWorkspaceLimit,
                                             ws.get(), &out.value, &out.abserr);
    out.converged = (status == GSL_SUCCESS);
    return out;
}

Result fourier_cos_to_inf(const std::function<double(double)>& f, double a,
                          double omega, double epsabs) {
    return fourier_to_inf(f, a, omega, epsabs, GSL_INTEG_COSINE);
}

Result fourier_sin_to_inf(const std::function<double(double)>& f, double a,
                          double omega, double epsabs) {
    return fourier_to_inf(f, a, omega, epsabs, GSL_INTEG_SINE);
}

}  // namespace levylab::quad
