// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "support/oracles.hpp"
#include "tfim/density.hpp"
#include "tfim/entanglement.hpp"
#include "tfim/global_discord.hpp"
#include "tfim/sweep.hpp"
#include "tfim/table_io.hpp"
#include "tfim/two_spin.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

using namespace tfim;

namespace {

// Tolerances and targets.
constexpr double kTable1Tol = 0.02;
constexpr double kTable1TolN7 = 0.05;
const std::map<int, double> kTable1 = {{3, 1.8296}, {4, 2.4360}, {5, 3.0879}, {6, 3.7095}, {7, 4.501}};
constexpr double kSlopeTarget = 0.693461;
constexpr double kSlopeTol = 0.005;
constexpr double kGhzGdTol = 1e-6;
constexpr double kGhzEntTol = 1e-10;
constexpr double kTripleDTol = 1e-8;
constexpr double kTripleATol = 1e-6;
constexpr double kTripleMTol = 1e-8;
constexpr double kHierarchyTol = 1e-6;
constexpr int kRandomXStates = 500;
constexpr double kFermionTol = 1e-9;
constexpr double kParityTol = 1e-8;
constexpr double kOracleTol = 1e-9;
constexpr int kOracleAngleSets = 20;
constexpr double kDriftSlack = 5e-2;
constexpr double kVarPeakLo = 0.8;
constexpr double kVarPeakHi = 1.5;
constexpr double kToeplitzTol = 5e-2;
constexpr double kQuadTol = 1e-10;
constexpr int kMinPropertyCases = 1000;
constexpr double kPropertyTol = 1e-10;

constexpr double kPi = 3.14159265358979323846;

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << detail << std::endl;
    failures += pass ? 0 : 1;
}

std::string fmt(double v, int digits = 6) {
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

OptimizerConfig default_optimizer() { return OptimizerConfig{}; }

struct SizeRun {
    SweepTable table;
    PeakResult peak;
};

std::map<int, SizeRun> gd_runs;

const SizeRun& gd_run(int n) {
    auto it = gd_runs.find(n);
    if (it != gd_runs.end()) {
        return it->second;
    }
    SweepConfig cfg;
    cfg.n_sites = n;
    cfg.grid_spec = "log:0.01:6:100:+1";
    cfg.ratios = parse_grid(cfg.grid_spec);
    cfg.measures = measure::gd | measure::two_spin;
    cfg.optimizer = default_optimizer();
    SweepTable table = sweep(cfg);
    const PeakResult peak = find_peak(table, Column::gd, column_evaluator(Column::gd, n, cfg.optimizer));
    std::cerr << "  N=" << n << ": refined max GD " << fmt(peak.value, 8) << " at B/J " << fmt(peak.ratio_star, 8)
              << (peak.boundary ? " (boundary)" : "") << std::endl;
    return gd_runs.emplace(n, SizeRun{std::move(table), peak}).first->second;
}

MeasurementAngles random_angles(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> th(0.0, kPi);
    std::uniform_real_distribution<double> ph(0.0, 2 * kPi);
    MeasurementAngles a(static_cast<std::size_t>(n));
    for (auto& p : a) {
        p = {th(rng), ph(rng)};
    }
    return a;
}

void criterion1() {
    bool pass = true;
    std::string detail;
    for (const auto& [n, target] : kTable1) {
        const double got = gd_run(n).peak.value;
        const double tol = n == 7 ? kTable1TolN7 : kTable1Tol;
        const bool ok = std::abs(got - target) <= tol;
        pass = pass && ok;
        detail += "N=" + std::to_string(n) + " " + fmt(got) + " vs " + fmt(target) + (ok ? "" : "(x)") + "; ";
    }
    report(1, pass, detail);
}

void criterion2() {
    std::vector<std::pair<int, double>> points;
    for (int n = 2; n <= 6; ++n) {
        points.emplace_back(n, gd_run(n).peak.value);
    }
    points.emplace_back(7, kTable1.at(7));
    const ScalingFit fit = fit_scaling(points);
    report(2, std::abs(fit.slope - kSlopeTarget) <= kSlopeTol,
           "m = " + fmt(fit.slope) + " vs " + fmt(kSlopeTarget) + " +- " + fmt(kSlopeTol));
}

void criterion3() {
    bool pass = true;
    double worst_gd = 0.0;
    double worst_e = 0.0;
    for (int n = 3; n <= 6; ++n) {
        const PureState ghz = PureState::ghz(n);
        const double gd = global_discord(ghz, default_optimizer()).value;
        const EntanglementStats st = entanglement_stats(ghz);
        worst_gd = std::max(worst_gd, std::abs(gd - 1.0));
        worst_e = std::max({worst_e, std::abs(st.mean - 1.0), std::abs(st.variance)});
    }
    pass = worst_gd <= kGhzGdTol && worst_e <= kGhzEntTol;
    report(3, pass, "max |GD-1| = " + fmt(worst_gd, 3) + ", max entanglement deviation = " + fmt(worst_e, 3));
}

void criterion4() {
    double dmax = 0.0;
    double amax = 0.0;
    double mmax = 0.0;
    for (int n = 3; n <= 8; ++n) {
        const PureState gs = ground_state({n, 1.0, 0.0}).state;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const XState x = reduced_two_spin(gs, i, j);
                dmax = std::max(dmax, std::abs(discord(x, Direction::symmetrized).value));
                amax = std::max(amax, std::abs(amid(x.density()).value));
                mmax = std::max(mmax, std::abs(mid(x.density()) - 1.0));
            }
        }
    }
    report(4, dmax <= kTripleDTol && amax <= kTripleATol && mmax <= kTripleMTol,
           "max |D| = " + fmt(dmax, 3) + ", max |A| = " + fmt(amax, 3) + ", max |M-1| = " + fmt(mmax, 3));
}

bool hierarchy_ok(const DensityMatrix& rho) {
    const double d = discord(rho, Direction::symmetrized).value;
    const double a = amid(rho).value;
    const double m = mid(rho);
    return d <= a + kHierarchyTol && a <= m + kHierarchyTol;
}

void criterion5() {
    std::mt19937_64 rng(500);
    int violations = 0;
    int checked = 0;
    for (int k = 0; k < kRandomXStates; ++k) {
        violations += hierarchy_ok(DensityMatrix(oracle::random_x_state(rng), {0, 1})) ? 0 : 1;
        ++checked;
    }
    for (int n = 3; n <= 7; ++n) {
        for (const SweepRow& row : gd_run(n).table.rows) {
            const PureState gs = ground_state(RingConfig::from_ratio(n, row.ratio)).state;
            for (int j = 1; j <= n / 2; ++j) {
                violations += hierarchy_ok(reduced_two_spin(gs, 0, j).density()) ? 0 : 1;
                ++checked;
            }
        }
    }
    report(5, violations == 0, std::to_string(violations) + " violations in " + std::to_string(checked) + " states");
}

void criterion6() {
    bool pass = true;
    std::string detail;
    for (int n : {4, 6, 8}) {
        for (double r : {0.5, 1.0, 2.0}) {
            const RingConfig cfg = RingConfig::from_ratio(n, r);
            const GroundStateResult gs = ground_state(cfg);
            const double diff = std::abs(free_fermion_energy(cfg) - gs.energy);
            const bool even = parity_expectation(gs.state) > 1.0 - kParityTol;
            if (even) {
                pass = pass && diff <= kFermionTol;
                if (diff > kFermionTol) {
                    detail += "N=" + std::to_string(n) + " B/J=" + fmt(r) + " diff " + fmt(diff, 3) + "; ";
                }
            } else {
                detail += "odd-parity ground state at N=" + std::to_string(n) + " B/J=" + fmt(r) + " (diff " +
                          fmt(diff, 3) + "); ";
            }
        }
    }
    report(6, pass, detail.empty() ? "all 9 points agree within 1e-9" : detail);
}

void criterion7() {
    std::mt19937_64 rng(700);
    double worst = 0.0;
    int count = 0;
    for (int n = 2; n <= 4; ++n) {
        for (double r : {0.3, 1.0, 2.0}) {
            const PureState gs = ground_state(RingConfig::from_ratio(n, r)).state;
            for (int k = 0; k < kOracleAngleSets; ++k) {
                const MeasurementAngles a = random_angles(rng, n);
                std::vector<std::pair<double, double>> p;
                for (const auto& x : a) {
                    p.emplace_back(x.theta, x.phi);
                }
                worst = std::max(worst, std::abs(gd_objective(gs, a) - oracle::gd_bracket_full(gs.amplitudes(), n, p)));
                ++count;
            }
        }
    }
    report(7, worst <= kOracleTol, "max deviation " + fmt(worst, 3) + " over " + std::to_string(count) + " angle sets");
}

void criterion8() {
    const double x3 = gd_run(3).peak.ratio_star;
    const double x5 = gd_run(5).peak.ratio_star;
    const bool drift_ok = std::abs(x5 - 1.0) <= std::abs(x3 - 1.0) + kDriftSlack;

    SweepConfig cfg;
    cfg.n_sites = 6;
    cfg.grid_spec = "log:0.01:6:100:+1";
    cfg.ratios = parse_grid(cfg.grid_spec);
    cfg.measures = measure::estats;
    const SweepTable t = sweep(cfg);
    const PeakResult vp = find_peak(t, Column::var_e, column_evaluator(Column::var_e, 6, cfg.optimizer));
    const bool var_ok = !vp.boundary && vp.ratio_star >= kVarPeakLo && vp.ratio_star <= kVarPeakHi;
    report(8, drift_ok && var_ok,
           "(B/J)* N=3 " + fmt(x3) + ", N=5 " + fmt(x5) + "; var E peak N=6 at " + fmt(vp.ratio_star));
}

void criterion9() {
    const int n = 14;
    const oracle::Vec gs = oracle::lanczos_ground(n, 1.0, 2.0);
    const CorrelatorSet c = toeplitz_correlators(0.5, 1);
    const double xx = oracle::pair_correlator(gs, n, 0, 1, 'x', 'x');
    const double yy = oracle::pair_correlator(gs, n, 0, 1, 'y', 'y');
    const double zz = oracle::pair_correlator(gs, n, 0, 1, 'z', 'z');
    const double z = oracle::site_z(gs, n, 0);
    const double worst = std::max({std::abs(c.chi_xx - xx), std::abs(c.chi_yy - yy), std::abs(c.chi_zz - zz),
                                   std::abs(-c.mz - z)});
    report(9, worst <= kToeplitzTol && c.quad_error <= kQuadTol,
           "xx " + fmt(c.chi_xx) + "/" + fmt(xx) + ", yy " + fmt(c.chi_yy) + "/" + fmt(yy) + ", zz " + fmt(c.chi_zz) +
               "/" + fmt(zz) + ", sz " + fmt(-c.mz) + "/" + fmt(z) + ", quad error " + fmt(c.quad_error, 3));
}

void criterion10() {
    std::mt19937_64 rng(1000);
    int cases = 0;
    int violations = 0;
    auto check = [&](bool ok) {
        ++cases;
        violations += ok ? 0 : 1;
    };
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + trial % 4;
        SiteList sites(static_cast<std::size_t>(n));
        for (int s = 0; s < n; ++s) {
            sites[static_cast<std::size_t>(s)] = s;
        }
        const DensityMatrix rho(oracle::random_density(rng, Eigen::Index{1} << n), sites);
        const MeasurementAngles a = random_angles(rng, n);
        const DensityMatrix pr = dephase(rho, a);
        check(von_neumann_entropy(rho) >= -kPropertyTol);
        check(von_neumann_entropy(pr) >= -kPropertyTol);
        check((dephase(pr, a).matrix() - pr.matrix()).cwiseAbs().maxCoeff() <= kPropertyTol);
    }
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 2 + trial % 7;
        const PureState psi(n, oracle::random_state(rng, Eigen::Index{1} << n));
        SiteList a;
        SiteList b;
        for (int s = 0; s < n; ++s) {
            (s == 0 || (rng() & 1U) ? a : b).push_back(s);
        }
        if (b.empty()) {
            a.pop_back();
            b.push_back(n - 1);
        }
        check(std::abs(von_neumann_entropy(reduced_density(psi, a)) - von_neumann_entropy(reduced_density(psi, b))) <=
              kPropertyTol);
        check(std::abs(bipartition_entanglement(psi, a) - bipartition_entanglement(psi, b)) <= kPropertyTol);
    }
    for (int trial = 0; trial < 4; ++trial) {
        SweepConfig cfg;
        cfg.n_sites = 3 + trial;
        cfg.grid_spec = "log:0.05:5:8:+1";
        cfg.ratios = parse_grid(cfg.grid_spec);
        cfg.optimizer.seed = 1000 + static_cast<std::uint64_t>(trial);
        const SweepTable first = sweep(cfg);
        cfg.threads = 1;
        const SweepTable second = sweep(cfg);
        check(first == second && to_csv(first) == to_csv(second));
    }
    report(10, violations == 0 && cases >= kMinPropertyCases,
           std::to_string(violations) + " violations in " + std::to_string(cases) + " cases");
}

} // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    std::cout << "acceptance run, tool version " << kToolVersion << ", simd " << kernels::isa_name(kernels::active().isa)
              << std::endl;
    auto guarded = [](int id, void (*fn)()) {
        try {
            fn();
        } catch (const std::exception& e) {
            report(id, false, std::string("exception: ") + e.what());
        }
    };
    guarded(1, criterion1);
    guarded(2, criterion2);
    guarded(3, criterion3);
    guarded(4, criterion4);
    guarded(5, criterion5);
    guarded(6, criterion6);
    guarded(7, criterion7);
    guarded(8, criterion8);
    guarded(9, criterion9);
    guarded(10, criterion10);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << " in "
              << fmt(secs, 4) << " s" << std::endl;
    return failures == 0 ? 0 : 1;
}
