#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace tfim {

struct SimplexOptions {
    /// Initial simplex step per coordinate.
    double step = 0.5;
    /// Stop when the simplex characteristic size falls below this.
    double size_tol = 1e-9;
    /// Stop when the best value improved by less than this over `stall_window` iterations.
    double improve_tol = 0.0;
    std::size_t stall_window = 200;
    std::size_t max_evals = 50000;
};

struct LocalResult {
    std::vector<double> x;
    double value;
    std::size_t evals;
    bool converged;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Derivative-free Nelder-Mead descent from x0. Restarts the simplex once
/// around the converged point to guard against premature collapse.
LocalResult minimize_simplex(const Objective& f, std::vector<double> x0, const SimplexOptions& options = {});

/// Golden-section search for a maximum of f on [lo, hi].
struct ScalarMax {
    double x;
    double value;
    std::size_t evals;
};
ScalarMax golden_section_max(const std::function<double(double)>& f, double lo, double hi, double x_tol);

} // namespace tfim
