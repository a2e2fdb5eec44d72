#include "tfim/optimize.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace tfim {

namespace {

struct Context {
    const Objective* f;
    std::vector<double> scratch;
    std::size_t evals = 0;
    std::size_t budget = 0;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_x;
};

double trampoline(const gsl_vector* v, void* params) {
    auto* ctx = static_cast<Context*>(params);
    for (std::size_t i = 0; i < ctx->scratch.size(); ++i) {
        ctx->scratch[i] = gsl_vector_get(v, i);
    }
    ++ctx->evals;
    const double value = (*ctx->f)(ctx->scratch);
    if (value < ctx->best) {
        ctx->best = value;
        ctx->best_x = ctx->scratch;
    }
    return std::isfinite(value) ? value : std::numeric_limits<double>::max();
}

struct GslVectorDeleter {
    void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
    void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};

// One simplex descent; returns true when the size tolerance was met.
bool descend(Context& ctx, const std::vector<double>& start, const SimplexOptions& options) {
    const std::size_t dim = start.size();
    std::unique_ptr<gsl_vector, GslVectorDeleter> x(gsl_vector_alloc(dim));
    std::unique_ptr<gsl_vector, GslVectorDeleter> step(gsl_vector_alloc(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        gsl_vector_set(x.get(), i, start[i]);
        gsl_vector_set(step.get(), i, options.step);
    }
    gsl_multimin_function fn{&trampoline, dim, &ctx};
    std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> m(
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim));
    gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), step.get());

    double window_start = ctx.best;
    std::size_t iter = 0;
    while (ctx.evals < ctx.budget) {
        if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) {
            return false;
        }
        ++iter;
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m.get()), options.size_tol) == GSL_SUCCESS) {
            return true;
        }
        if (options.improve_tol > 0.0 && iter % options.stall_window == 0) {
            if (window_start - ctx.best < options.improve_tol) {
                return true;
            }
            window_start = ctx.best;
        }
    }
    return false;
}

const bool gsl_handler_off = [] {
    gsl_set_error_handler_off();
    return true;
}();

} // namespace

LocalResult minimize_simplex(const Objective& f, std::vector<double> x0, const SimplexOptions& options) {
    (void)gsl_handler_off;
    if (x0.empty()) {
        return {x0, f(x0), 1, true};
    }
    Context ctx{&f, std::vector<double>(x0.size()), 0, options.max_evals, std::numeric_limits<double>::infinity(), x0};
    bool converged = descend(ctx, x0, options);
    if (converged && ctx.evals < ctx.budget) {
        const double before = ctx.best;
        SimplexOptions again = options;
        again.step = std::max(options.step * 0.1, 1e-4);
        converged = descend(ctx, ctx.best_x, again) && (before - ctx.best) < 1e-9;
    }
    return {ctx.best_x, ctx.best, ctx.evals, converged};
}

ScalarMax golden_section_max(const std::function<double(double)>& f, double lo, double hi, double x_tol) {
    if (!(hi > lo)) {
        throw std::invalid_argument("golden section needs lo < hi");
    }
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    std::size_t evals = 2;
    while (b - a > x_tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++evals;
    }
    return fc >= fd ? ScalarMax{c, fc, evals} : ScalarMax{d, fd, evals};
}

} // namespace tfim
