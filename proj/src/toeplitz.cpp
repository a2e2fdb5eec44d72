#include "tfim/errors.hpp"
#include "tfim/two_spin.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <string>

namespace tfim {

namespace {

constexpr double kAbsTol = 1e-10;
constexpr std::size_t kWorkspace = 2000;

struct GParams {
    double lambda;
    int k;
};

double g_integrand(double phi, void* p) {
    const auto* params = static_cast<const GParams*>(p);
    const double lambda = params->lambda;
    const double eps = std::sqrt(1.0 + lambda * lambda + 2.0 * lambda * std::cos(phi));
    const double k = params->k;
    const double numerator = std::cos(k * phi) * (1.0 + lambda * std::cos(phi)) - lambda * std::sin(k * phi) * std::sin(phi);
    if (eps == 0.0) {
        // lambda = 1, phi = pi: the integrand has a finite limit; the endpoint carries no weight.
        return 0.0;
    }
    return numerator / (std::numbers::pi * eps);
}

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

} // namespace

double toeplitz_g(double lambda, int k, double* abs_error) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw DomainError("lambda = J/B must be finite and positive");
    }
    gsl_set_error_handler_off();
    std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(gsl_integration_workspace_alloc(kWorkspace));
    GParams params{lambda, k};
    gsl_function fn{&g_integrand, &params};
    double result = 0.0;
    double error = 0.0;
    const int status = gsl_integration_qag(&fn, 0.0, std::numbers::pi, kAbsTol, 0.0, kWorkspace, GSL_INTEG_GAUSS21,
                                           ws.get(), &result, &error);
    if (status != GSL_SUCCESS || error > kAbsTol) {
        throw ConvergenceError("quadrature of G_" + std::to_string(k) + " did not reach 1e-10", error);
    }
    if (abs_error != nullptr) {
        *abs_error = error;
    }
    return result;
}

CorrelatorSet toeplitz_correlators(double lambda, int separation) {
    if (separation < 1) {
        throw DomainError("separation must be at least 1");
    }
    const int s = separation;
    std::map<int, double> g;
    double worst = 0.0;
    for (int k = -s; k <= s; ++k) {
        double err = 0.0;
        g[k] = toeplitz_g(lambda, k, &err);
        worst = std::max(worst, err);
    }
    Eigen::MatrixXd txx(s, s);
    Eigen::MatrixXd tyy(s, s);
    for (int r = 0; r < s; ++r) {
        for (int c = 0; c < s; ++c) {
            txx(r, c) = g.at(r - c - 1);
            tyy(r, c) = g.at(r - c + 1);
        }
    }
    CorrelatorSet out{};
    out.chi_xx = txx.determinant();
    out.chi_yy = tyy.determinant();
    out.mz = g.at(0);
    out.chi_zz = g.at(0) * g.at(0) - g.at(s) * g.at(-s);
    out.separation = s;
    out.lambda = lambda;
    out.quad_error = worst;
    for (double v : {out.chi_xx, out.chi_yy, out.chi_zz, out.mz}) {
        if (std::abs(v) > 1.0 + 1e-8) {
            throw ConvergenceError("correlator outside [-1, 1]", v);
        }
    }
    return out;
}

} // namespace tfim
