#pragma once

// B/J sweeps over a ring and the analyses run on them: peak refinement, the
// constrained linear scaling of the peak height with N, peak-position drift,
// and the GD versus entanglement-variance trace.

#include "tfim/global_discord.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace tfim {

namespace measure {
inline constexpr unsigned gd = 1U;
inline constexpr unsigned estats = 2U;
inline constexpr unsigned two_spin = 4U;
inline constexpr unsigned all = gd | estats | two_spin;
} // namespace measure

/// Measures that were not requested are NaN.
struct SweepRow {
    double ratio = 0.0;
    double gd = 0.0;
    bool gd_converged = true;
    /// Numerical dGD/d(B/J) by finite differences over the grid.
    double d_gd = 0.0;
    double mean_e = 0.0;
    double var_e = 0.0;
    double nn_discord = 0.0;
    double nn_mid = 0.0;
    double nn_amid = 0.0;
    /// "ok", or the error raised while evaluating this point.
    std::string status = "ok";

    bool operator==(const SweepRow&) const;
};

struct SweepMetadata {
    int n_sites = 0;
    std::string grid;
    std::uint64_t seed = 0;
    unsigned measures = measure::all;

    bool operator==(const SweepMetadata&) const = default;
};

struct SweepTable {
    SweepMetadata meta;
    std::vector<SweepRow> rows;

    bool operator==(const SweepTable&) const = default;
};

struct SweepConfig {
    int n_sites = 4;
    std::vector<double> ratios;
    unsigned measures = measure::all;
    OptimizerConfig optimizer;
    /// Grid points evaluated concurrently; 0 selects default_threads().
    unsigned threads = 0;
    std::string grid_spec;
};

/// 100 log-spaced points on [1e-2, 6] plus B/J = 1.
std::vector<double> default_grid();

/// "log:lo:hi:n", "log:lo:hi:n:+1" (adds B/J = 1), "lin:lo:hi:n", or a comma list "a,b,c".
/// The result is sorted and de-duplicated.
std::vector<double> parse_grid(const std::string& spec);

/// All requested measures at one B/J with J = 1. Failures land in `status`.
SweepRow evaluate_point(int n_sites, double ratio, unsigned measures, const OptimizerConfig& optimizer);

SweepTable sweep(const SweepConfig& config);

enum class Column { gd, mean_e, var_e, nn_discord, nn_mid, nn_amid };

double column_value(const SweepRow& row, Column column);
Column parse_column(const std::string& name);
std::string column_name(Column column);

struct PeakResult {
    double ratio_star;
    double value;
    /// Grid maximum sits on the first or last grid point; no refinement was done.
    bool boundary;
    std::size_t grid_index;
};

using MeasureFn = std::function<double(double ratio)>;

/// Re-evaluates `column` for an N-site ring at a given B/J.
MeasureFn column_evaluator(Column column, int n_sites, const OptimizerConfig& optimizer);

/// Grid argmax, refined by golden-section search between its neighbours to `ratio_tol`.
PeakResult find_peak(const SweepTable& table, Column column, const MeasureFn& evaluate, double ratio_tol = 1e-4);

struct ScalingFit {
    double slope;
    std::vector<double> residuals;
    std::vector<std::pair<int, double>> points;
};

/// Least-squares slope of maxGD = m (N - 2) + 1.
ScalingFit fit_scaling(const std::vector<std::pair<int, double>>& points);

struct DriftReport {
    /// (N, |(B/J)* - 1|) sorted by N.
    std::vector<std::pair<int, double>> deviations;
    /// Each deviation is at most the previous one plus `slack`.
    bool non_increasing;
    double slack;
};

DriftReport peak_drift(std::vector<std::pair<int, double>> peaks, double slack = 5e-2);

/// Parametric (GD, var E) curve along the sweep.
struct TraceSummary {
    std::vector<std::pair<double, double>> points;
    bool open;
    double gd_peak_ratio;
    double var_peak_ratio;
    /// GD peaks before the variance peak, or within 0.2 in B/J of it.
    bool gd_peak_leads;
};

TraceSummary trace_summary(const SweepTable& table);

} // namespace tfim
