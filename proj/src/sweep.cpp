#include "tfim/sweep.hpp"

#include "tfim/entanglement.hpp"
#include "tfim/errors.hpp"
#include "tfim/optimize.hpp"
#include "tfim/parallel.hpp"
#include "tfim/two_spin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tfim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        parts.push_back(item);
    }
    return parts;
}

double to_number(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw DomainError("bad number in grid spec: '" + s + "'");
    }
    if (used != s.size()) {
        throw DomainError("bad number in grid spec: '" + s + "'");
    }
    return v;
}

void sort_unique(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

bool SweepRow::operator==(const SweepRow& o) const {
    return same(ratio, o.ratio) && same(gd, o.gd) && gd_converged == o.gd_converged && same(d_gd, o.d_gd) &&
           same(mean_e, o.mean_e) && same(var_e, o.var_e) && same(nn_discord, o.nn_discord) &&
           same(nn_mid, o.nn_mid) && same(nn_amid, o.nn_amid) && status == o.status;
}

std::vector<double> default_grid() { return parse_grid("log:0.01:6:100:+1"); }

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> grid;
    const auto parts = split(spec, ':');
    if (parts.size() >= 4 && (parts[0] == "log" || parts[0] == "lin")) {
        const double lo = to_number(parts[1]);
        const double hi = to_number(parts[2]);
        const int n = static_cast<int>(to_number(parts[3]));
        if (n < 1 || !(hi >= lo) || (parts[0] == "log" && lo <= 0.0)) {
            throw DomainError("invalid grid spec '" + spec + "'");
        }
        for (int i = 0; i < n; ++i) {
            const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
            grid.push_back(parts[0] == "log" ? lo * std::pow(hi / lo, t)
                                             : lo + t * (hi - lo));
        }
        if (n > 1) {
            grid.back() = hi;
        }
        if (parts.size() == 5) {
            if (parts[4] != "+1") {
                throw DomainError("invalid grid suffix in '" + spec + "'");
            }
            grid.push_back(1.0);
        }
    } else {
        const std::string list = parts.size() == 2 && parts[0] == "list" ? parts[1] : spec;
        for (const auto& item : split(list, ',')) {
            if (!item.empty()) {
                grid.push_back(to_number(item));
            }
        }
    }
    if (grid.empty()) {
        throw DomainError("empty grid '" + spec + "'");
    }
    for (double r : grid) {
        if (!(r >= 0.0) || !std::isfinite(r)) {
            throw DomainError("grid ratios must be finite and non-negative");
        }
    }
    sort_unique(grid);
    return grid;
}

SweepRow evaluate_point(int n_sites, double ratio, unsigned measures, const OptimizerConfig& optimizer) {
    SweepRow row;
    row.ratio = ratio;
    row.gd = row.d_gd = row.mean_e = row.var_e = row.nn_discord = row.nn_mid = row.nn_amid = kNaN;
    try {
        const GroundStateResult gs = ground_state(RingConfig::from_ratio(n_sites, ratio));
        if (measures & measure::gd) {
            const GDResult r = global_discord(gs.state, optimizer);
            row.gd = r.value;
            row.gd_converged = r.converged;
        }
        if (measures & measure::estats) {
            const EntanglementStats e = entanglement_stats(gs.state);
            row.mean_e = e.mean;
            row.var_e = e.variance;
        }
        if (measures & measure::two_spin) {
            const XState pair = reduced_two_spin(gs.state, 0, 1);
            row.nn_discord = discord(pair, Direction::symmetrized).value;
            row.nn_mid = mid(pair.density());
            row.nn_amid = amid(pair.density(), optimizer.seed).value;
        }
    } catch (const std::exception& e) {
        row.status = e.what();
        row.gd_converged = false;
    }
    return row;
}

SweepTable sweep(const SweepConfig& config) {
    if (config.ratios.empty()) {
        throw DomainError("sweep grid is empty");
    }
    RingConfig::from_ratio(config.n_sites, 0.0).validate();
    std::vector<double> ratios = config.ratios;
    sort_unique(ratios);

    SweepTable table;
    table.meta = {config.n_sites, config.grid_spec, config.optimizer.seed, config.measures};
    table.rows.resize(ratios.size());

    const unsigned threads = config.threads == 0 ? default_threads() : config.threads;
    OptimizerConfig inner = config.optimizer;
    if (threads > 1) {
        inner.threads = 1;
    }
    parallel_for(ratios.size(), threads,
                 [&](std::size_t i) { table.rows[i] = evaluate_point(config.n_sites, ratios[i], config.measures, inner); });

    auto& rows = table.rows;
    for (std::size_t i = 0; i < rows.size() && rows.size() > 1; ++i) {
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 == rows.size() ? i : i + 1;
        rows[i].d_gd = (rows[hi].gd - rows[lo].gd) / (rows[hi].ratio - rows[lo].ratio);
    }
    return table;
}

double column_value(const SweepRow& row, Column column) {
    switch (column) {
    case Column::gd:
        return row.gd;
    case Column::mean_e:
        return row.mean_e;
    case Column::var_e:
        return row.var_e;
    case Column::nn_discord:
        return row.nn_discord;
    case Column::nn_mid:
        return row.nn_mid;
    case Column::nn_amid:
        return row.nn_amid;
    }
    return kNaN;
}

Column parse_column(const std::string& name) {
    for (Column c : {Column::gd, Column::mean_e, Column::var_e, Column::nn_discord, Column::nn_mid, Column::nn_amid}) {
        if (column_name(c) == name) {
            return c;
        }
    }
    throw DomainError("unknown column '" + name + "'");
}

std::string column_name(Column column) {
    switch (column) {
    case Column::gd:
        return "gd";
    case Column::mean_e:
        return "mean_E";
    case Column::var_e:
        return "var_E";
    case Column::nn_discord:
        return "nn_discord";
    case Column::nn_mid:
        return "nn_mid";
    case Column::nn_amid:
        return "nn_amid";
    }
    return "?";
}

MeasureFn column_evaluator(Column column, int n_sites, const OptimizerConfig& optimizer) {
    unsigned m = measure::gd;
    if (column == Column::mean_e || column == Column::var_e) {
        m = measure::estats;
    } else if (column != Column::gd) {
        m = measure::two_spin;
    }
    return [=](double ratio) {
        const SweepRow row = evaluate_point(n_sites, ratio, m, optimizer);
        if (row.status != "ok") {
            throw ConvergenceError("re-evaluation failed at B/J = " + std::to_string(ratio) + ": " + row.status, ratio);
        }
        return column_value(row, column);
    };
}

PeakResult find_peak(const SweepTable& table, Column column, const MeasureFn& evaluate, double ratio_tol) {
    const auto& rows = table.rows;
    if (rows.empty()) {
        throw DomainError("cannot locate a peak in an empty table");
    }
    std::size_t arg = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double v = column_value(rows[i], column);
        if (std::isfinite(v) && v > best) {
            best = v;
            arg = i;
        }
    }
    if (!std::isfinite(best)) {
        throw DomainError("column " + column_name(column) + " has no finite values");
    }
    if (arg == 0 || arg + 1 == rows.size()) {
        return {rows[arg].ratio, best, true, arg};
    }
    const ScalarMax refined = golden_section_max(evaluate, rows[arg - 1].ratio, rows[arg + 1].ratio, ratio_tol);
    if (refined.value >= best) {
        return {refined.x, refined.value, false, arg};
    }
    return {rows[arg].ratio, best, false, arg};
}

ScalingFit fit_scaling(const std::vector<std::pair<int, double>>& points) {
    if (points.size() < 2) {
        throw DomainError("scaling fit needs at least two points");
    }
    double num = 0.0;
    double den = 0.0;
    for (const auto& [n, g] : points) {
        num += (n - 2.0) * (g - 1.0);
        den += (n - 2.0) * (n - 2.0);
    }
    if (den == 0.0) {
        throw DomainError("degenerate scaling fit: every point has N = 2");
    }
    ScalingFit fit{num / den, {}, points};
    for (const auto& [n, g] : points) {
        fit.residuals.push_back(g - (fit.slope * (n - 2.0) + 1.0));
    }
    return fit;
}

DriftReport peak_drift(std::vector<std::pair<int, double>> peaks, double slack) {
    if (peaks.size() < 3) {
        throw DomainError("peak drift needs at least three ring sizes");
    }
    std::sort(peaks.begin(), peaks.end());
    DriftReport report{{}, true, slack};
    for (const auto& [n, r] : peaks) {
        const double dev = std::abs(r - 1.0);
        if (!report.deviations.empty() && dev > report.deviations.back().second + slack) {
            report.non_increasing = false;
        }
        report.deviations.emplace_back(n, dev);
    }
    return report;
}

TraceSummary trace_summary(const SweepTable& table) {
    if (table.rows.size() < 2) {
        throw DomainError("trace needs at least two sweep rows");
    }
    TraceSummary out{};
    double gd_best = -std::numeric_limits<double>::infinity();
    double var_best = -std::numeric_limits<double>::infinity();
    for (const auto& row : table.rows) {
        out.points.emplace_back(row.gd, row.var_e);
        if (row.gd > gd_best) {
            gd_best = row.gd;
            out.gd_peak_ratio = row.ratio;
        }
        if (row.var_e > var_best) {
            var_best = row.var_e;
            out.var_peak_ratio = row.ratio;
        }
    }
    const auto& a = out.points.front();
    const auto& b = out.points.back();
    out.open = std::hypot(a.first - b.first, a.second - b.second) > 1e-6;
    out.gd_peak_leads =
        out.gd_peak_ratio < out.var_peak_ratio || std::abs(out.gd_peak_ratio - out.var_peak_ratio) <= 0.2;
    return out;
}

} // namespace tfim
