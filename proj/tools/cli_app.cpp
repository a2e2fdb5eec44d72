#include "cli_app.hpp"

#include "tfim/entanglement.hpp"
#include "tfim/global_discord.hpp"
#include "tfim/parallel.hpp"
#include "tfim/ring.hpp"
#include "tfim/sweep.hpp"
#include "tfim/table_io.hpp"
#include "tfim/two_spin.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace tfim::cli {

namespace {

using nlohmann::json;

struct RingArgs {
    int n = 4;
    double j = 1.0;
    double b = 0.0;
};

struct OptArgs {
    int restarts = 0;
    std::size_t max_evals = 50000;
    std::uint64_t seed = OptimizerConfig{}.seed;
    bool uniform = false;
    unsigned threads = 0;

    OptimizerConfig config() const {
        OptimizerConfig c;
        c.restarts = restarts;
        c.max_evals = max_evals;
        c.seed = seed;
        c.uniform_angles = uniform;
        c.threads = threads;
        return c;
    }
};

void add_ring_flags(CLI::App* cmd, RingArgs& r) {
    cmd->add_option("--n", r.n, "ring size N")->check(CLI::Range(2, kMaxSites));
    cmd->add_option("--j", r.j, "coupling J");
    cmd->add_option("--b", r.b, "transverse field B")->check(CLI::NonNegativeNumber);
}

void add_optimizer_flags(CLI::App* cmd, OptArgs& o) {
    cmd->add_option("--restarts", o.restarts, "local searches for global discord (0 = max(16, 4N))");
    cmd->add_option("--max-evals", o.max_evals, "objective evaluations per local search");
    cmd->add_option("--seed", o.seed, "random seed for optimiser starting points");
    cmd->add_flag("--uniform-angles", o.uniform, "share one measurement direction across all sites");
    cmd->add_option("--threads", o.threads, "worker threads (default: TFIM_THREADS or hardware)");
}

json optimizer_json(const OptArgs& o) {
    return {{"restarts", o.restarts}, {"max_evals", o.max_evals}, {"seed", o.seed},
            {"uniform_angles", o.uniform}, {"threads", o.threads}};
}

json angles_json(const MeasurementAngles& angles) {
    json a = json::array();
    for (const auto& p : angles) {
        a.push_back({p.theta, p.phi});
    }
    return a;
}

std::string bits(std::size_t s, int n) {
    std::string out;
    for (int i = n - 1; i >= 0; --i) {
        out += ((s >> i) & 1U) ? '1' : '0';
    }
    return out;
}

std::pair<int, int> parse_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw CLI::ValidationError("--pair", "expected i,j");
    }
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
}

unsigned parse_measures(const std::string& text) {
    unsigned m = 0;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "gd") {
            m |= measure::gd;
        } else if (item == "estats") {
            m |= measure::estats;
        } else if (item == "pair") {
            m |= measure::two_spin;
        } else if (item == "all") {
            m |= measure::all;
        } else {
            throw CLI::ValidationError("--measures", "unknown measure '" + item + "'");
        }
    }
    return m;
}

std::vector<std::pair<int, double>> parse_points(const std::string& text) {
    std::vector<std::pair<int, double>> pts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw CLI::ValidationError("--points", "expected N:value pairs");
        }
        pts.emplace_back(std::stoi(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
    }
    return pts;
}

// Reference peak heights of max GD for N = 2..7.
const std::vector<std::pair<int, double>>& reference_peaks() {
    static const std::vector<std::pair<int, double>> pts = {{2, 1.0},    {3, 1.8296}, {4, 2.4360},
                                                           {5, 3.0879}, {6, 3.7095}, {7, 4.501}};
    return pts;
}

void emit(const json& doc, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << doc.dump(2) << '\n';
    } else {
        write_file_atomic(out_path, doc.dump(2) + "\n");
    }
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact transverse-field Ising rings: ground states, two-spin and global quantum correlations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    RingArgs ring;
    OptArgs opt;
    std::string out_path;
    std::string format = "csv";

    auto* gs_cmd = app.add_subcommand("ground-state", "ground-state energy, parity and leading amplitudes");
    add_ring_flags(gs_cmd, ring);
    int top = 8;
    gs_cmd->add_option("--top", top, "number of amplitudes to list");

    auto* meas_cmd = app.add_subcommand("measures", "two-spin, global discord or entanglement statistics (JSON)");
    add_ring_flags(meas_cmd, ring);
    add_optimizer_flags(meas_cmd, opt);
    std::string pair_text;
    bool want_global = false;
    bool want_estats = false;
    std::string input = "ground";
    auto* pair_opt = meas_cmd->add_option("--pair", pair_text, "1-based sites i,j for discord/MID/AMID");
    auto* global_flag = meas_cmd->add_flag("--global", want_global, "global quantum discord");
    auto* estats_flag = meas_cmd->add_flag("--estats", want_estats, "bipartition entanglement mean/variance");
    pair_opt->excludes(global_flag)->excludes(estats_flag);
    global_flag->excludes(estats_flag);
    meas_cmd->add_option("--input", input, "state: ground | ghz | product")
        ->check(CLI::IsMember({"ground", "ghz", "product"}));
    meas_cmd->add_option("--out", out_path, "write JSON here instead of stdout");

    auto* sweep_cmd = app.add_subcommand("sweep", "sweep B/J (J = 1) and write a CSV or JSON table");
    sweep_cmd->add_option("--n", ring.n, "ring size N")->check(CLI::Range(2, kMaxSites));
    add_optimizer_flags(sweep_cmd, opt);
    std::string grid_spec = "log:0.01:6:100:+1";
    std::string measures_text = "all";
    std::string refine_column;
    sweep_cmd->add_option("--ratio-grid", grid_spec, "log:lo:hi:n[:+1] | lin:lo:hi:n | a,b,c");
    sweep_cmd->add_option("--measures", measures_text, "comma list of gd, estats, pair, all");
    sweep_cmd->add_option("--out", out_path, "output file")->required();
    sweep_cmd->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--refine", refine_column, "refine the peak of this column (gd, var_E, ...)");

    auto* fit_cmd = app.add_subcommand("fit", "constrained scaling fit maxGD = m (N - 2) + 1");
    std::string points_text;
    bool use_reference = false;
    std::vector<std::string> tables;
    fit_cmd->add_option("--points", points_text, "N:maxGD list, e.g. 2:1,3:1.83");
    fit_cmd->add_flag("--reference", use_reference, "use the stored reference peak heights for N = 2..7");
    fit_cmd->add_option("--from", tables, "sweep tables (CSV/JSON); peak = grid max of gd");
    fit_cmd->add_option("--out", out_path, "write JSON here instead of stdout");

    auto* toe_cmd = app.add_subcommand("toeplitz", "infinite-chain correlators from Toeplitz determinants");
    double lambda = 1.0;
    int separation = 1;
    toe_cmd->add_option("--lambda", lambda, "J/B")->required();
    toe_cmd->add_option("--s", separation, "site separation")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    const auto started = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count(); };

    try {
        if (*gs_cmd) {
            const RingConfig cfg{ring.n, ring.j, ring.b};
            const GroundStateResult gs = ground_state(cfg);
            out << std::setprecision(15);
            out << "N = " << ring.n << ", J = " << ring.j << ", B = " << ring.b << '\n';
            out << "energy: " << gs.energy << '\n';
            out << "parity: " << (gs.parity == Parity::even ? "even" : "odd")
                << (gs.degenerate ? " (degenerate level, even sector chosen)" : "") << '\n';
            if (ring.j > 0.0) {
                out << "free-fermion even-sector energy: " << free_fermion_energy(cfg) << '\n';
            }
            const auto& a = gs.state.amplitudes();
            std::vector<Eigen::Index> order(static_cast<std::size_t>(a.size()));
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](Eigen::Index x, Eigen::Index y) { return std::abs(a(x)) > std::abs(a(y)); });
            out << "leading amplitudes (site 1 leftmost, 0 = up):\n";
            for (int k = 0; k < std::min<int>(top, static_cast<int>(order.size())); ++k) {
                const Eigen::Index s = order[static_cast<std::size_t>(k)];
                out << "  |" << bits(static_cast<std::size_t>(s), ring.n) << ">  " << a(s).real()
                    << (std::abs(a(s).imag()) > 1e-14 ? " + i" + std::to_string(a(s).imag()) : "") << '\n';
            }
            return 0;
        }

        if (*meas_cmd) {
            const PureState state = input == "ghz"       ? PureState::ghz(ring.n)
                                    : input == "product" ? PureState::all_down(ring.n)
                                                         : ground_state({ring.n, ring.j, ring.b}).state;
            json doc = {{"n", ring.n}, {"j", ring.j}, {"b", ring.b}, {"input", input}};
            bool ok = true;
            if (want_global) {
                const GDResult r = global_discord(state, opt.config());
                doc["gd"] = r.value;
                doc["converged"] = r.converged;
                doc["restarts"] = r.n_restarts;
                doc["evaluations"] = r.evaluations;
                doc["argmin_angles"] = angles_json(r.argmin_angles);
                ok = r.converged;
            } else if (want_estats) {
                const EntanglementStats s = entanglement_stats(state, opt.threads == 0 ? default_threads() : opt.threads);
                doc["mean"] = s.mean;
                doc["variance"] = s.variance;
                doc["n_bipartitions"] = s.n_bipartitions;
            } else {
                if (pair_text.empty()) {
                    pair_text = "1,2";
                }
                const auto [i, j] = parse_pair(pair_text);
                const XState pair = reduced_two_spin(state, i - 1, j - 1);
                const DiscordResult d = discord(pair, Direction::symmetrized);
                const AmidResult am = amid(pair.density(), opt.seed);
                doc["pair"] = {i, j};
                doc["discord"] = d.value;
                doc["discord_semi_closed"] = d.semi_closed;
                doc["discord_numerical"] = d.numerical;
                doc["mid"] = mid(pair.density());
                doc["amid"] = am.value;
                doc["converged"] = am.converged;
                ok = am.converged;
            }
            RunManifest manifest{"measures", {{"ring", {ring.n, ring.j, ring.b}}, {"optimizer", optimizer_json(opt)}},
                                 opt.seed, kToolVersion, elapsed()};
            doc["manifest"] = manifest.to_json();
            emit(doc, out_path, out);
            return ok ? 0 : 1;
        }

        if (*sweep_cmd) {
            SweepConfig cfg;
            cfg.n_sites = ring.n;
            cfg.ratios = parse_grid(grid_spec);
            cfg.grid_spec = grid_spec;
            cfg.measures = parse_measures(measures_text);
            cfg.optimizer = opt.config();
            cfg.threads = opt.threads;
            const SweepTable table = sweep(cfg);

            json config = {{"n", ring.n}, {"ratio_grid", grid_spec}, {"measures", measures_text},
                           {"optimizer", optimizer_json(opt)}, {"format", format}};
            bool ok = std::all_of(table.rows.begin(), table.rows.end(),
                                  [](const SweepRow& r) { return r.status == "ok" && r.gd_converged; });
            if (!refine_column.empty()) {
                const Column col = parse_column(refine_column);
                const PeakResult peak = find_peak(table, col, column_evaluator(col, ring.n, opt.config()));
                out << std::setprecision(10) << "peak " << refine_column << ": B/J* = " << peak.ratio_star
                    << ", value = " << peak.value << (peak.boundary ? " (on grid boundary)" : "") << '\n';
                config["peak"] = {{"column", refine_column}, {"ratio_star", peak.ratio_star}, {"value", peak.value},
                                  {"boundary", peak.boundary}};
            }
            const RunManifest manifest{"sweep", config, opt.seed, kToolVersion, elapsed()};
            if (format == "json") {
                write_json(table, out_path, manifest);
            } else {
                write_csv(table, out_path, manifest);
            }
            out << "wrote " << table.rows.size() << " rows to " << out_path << '\n';
            return ok ? 0 : 1;
        }

        if (*fit_cmd) {
            std::vector<std::pair<int, double>> pts;
            if (use_reference) {
                pts = reference_peaks();
            }
            if (!points_text.empty()) {
                const auto extra = parse_points(points_text);
                pts.insert(pts.end(), extra.begin(), extra.end());
            }
            for (const auto& path : tables) {
                const bool is_json = path.size() > 5 && path.substr(path.size() - 5) == ".json";
                const SweepTable t = is_json ? read_json(path) : read_csv(path);
                double best = -1.0;
                for (const auto& r : t.rows) {
                    if (std::isfinite(r.gd)) {
                        best = std::max(best, r.gd);
                    }
                }
                pts.emplace_back(t.meta.n_sites, best);
            }
            const ScalingFit fit = fit_scaling(pts);
            json points = json::array();
            for (const auto& [n, g] : fit.points) {
                points.push_back({n, g});
            }
            json doc = {{"slope", fit.slope}, {"residuals", fit.residuals}, {"points", points}};
            doc["manifest"] = RunManifest{"fit", {{"points", points}}, 0, kToolVersion, elapsed()}.to_json();
            emit(doc, out_path, out);
            return 0;
        }

        if (*toe_cmd) {
            const CorrelatorSet c = toeplitz_correlators(lambda, separation);
            json doc = {{"lambda", c.lambda}, {"s", c.separation}, {"chi_xx", c.chi_xx}, {"chi_yy", c.chi_yy},
                        {"chi_zz", c.chi_zz}, {"mz", c.mz}, {"quad_error", c.quad_error}};
            out << doc.dump(2) << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace tfim::cli
