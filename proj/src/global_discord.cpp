#include "tfim/global_discord.hpp"

#include "tfim/errors.hpp"
#include "tfim/optimize.hpp"
#include "tfim/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace tfim {

namespace {

constexpr double kPi = std::numbers::pi;

double binary_entropy(double p) {
    double h = 0.0;
    if (p > 0.0) {
        h -= p * std::log2(p);
    }
    if (p < 1.0) {
        h -= (1.0 - p) * std::log2(1.0 - p);
    }
    return h;
}

void check_angles(const MeasurementAngles& angles, int n) {
    if (static_cast<int>(angles.size()) != n) {
        throw DomainError("expected " + std::to_string(n) + " angle pairs, got " + std::to_string(angles.size()));
    }
}

} // namespace

AnglePair canonical_angles(AnglePair a) {
    double theta = std::fmod(a.theta, 2.0 * kPi);
    if (theta < 0.0) {
        theta += 2.0 * kPi;
    }
    double phi = a.phi;
    if (theta > kPi) {
        theta = 2.0 * kPi - theta;
        phi += kPi;
    }
    phi = std::fmod(phi, 2.0 * kPi);
    if (phi < 0.0) {
        phi += 2.0 * kPi;
    }
    return {theta, phi};
}

GlobalDiscordProblem::GlobalDiscordProblem(PureState state, const kernels::KernelTable& kernels)
    : state_(std::move(state)), kernels_(&kernels) {
    for (int site = 0; site < state_.n_sites(); ++site) {
        const DensityMatrix marginal = reduced_density(state_, {site});
        bloch_.push_back(bloch_vector(marginal.matrix()));
        marginal_entropy_.push_back(von_neumann_entropy(marginal));
    }
}

void GlobalDiscordProblem::rotated_probabilities(const MeasurementAngles& angles, std::vector<double>& out) const {
    const int n = state_.n_sites();
    check_angles(angles, n);
    thread_local std::vector<kernels::cplx> scratch;
    const auto& amps = state_.amplitudes();
    scratch.assign(amps.data(), amps.data() + amps.size());
    for (int site = 0; site < n; ++site) {
        const std::size_t stride = std::size_t{1} << (n - 1 - site);
        kernels_->apply_qubit(scratch, stride, rotation_adjoint_mat2(angles[static_cast<std::size_t>(site)]));
    }
    out.resize(scratch.size());
    kernels_->abs2(scratch, out);
}

MeasuredSpectrum GlobalDiscordProblem::spectrum(const MeasurementAngles& angles) const {
    MeasuredSpectrum s;
    rotated_probabilities(angles, s.lambdas);
    s.angles = angles;
    return s;
}

double GlobalDiscordProblem::marginal_terms(const MeasurementAngles& angles) const {
    check_angles(angles, state_.n_sites());
    double total = 0.0;
    for (std::size_t j = 0; j < angles.size(); ++j) {
        const AnglePair& a = angles[j];
        const std::array<double, 3> dir{std::sin(a.theta) * std::cos(a.phi), std::sin(a.theta) * std::sin(a.phi),
                                        std::cos(a.theta)};
        const auto& r = bloch_[j];
        const double p_up = 0.5 * (1.0 + r[0] * dir[0] + r[1] * dir[1] + r[2] * dir[2]);
        total += binary_entropy(std::clamp(p_up, 0.0, 1.0)) - marginal_entropy_[j];
    }
    return total;
}

double GlobalDiscordProblem::objective(const MeasurementAngles& angles) const {
    thread_local std::vector<double> probs;
    rotated_probabilities(angles, probs);
    return shannon_bits(probs) - marginal_terms(angles);
}

MeasuredSpectrum measured_spectrum(const PureState& gs, const MeasurementAngles& angles) {
    check_angles(angles, gs.n_sites());
    return GlobalDiscordProblem(gs).spectrum(angles);
}

double gd_objective(const PureState& gs, const MeasurementAngles& angles) {
    check_angles(angles, gs.n_sites());
    return GlobalDiscordProblem(gs).objective(angles);
}

GDResult global_discord(const PureState& gs, const OptimizerConfig& config) {
    const GlobalDiscordProblem problem(gs);
    const int n = gs.n_sites();
    const int starts = config.restarts > 0 ? config.restarts : std::max(16, 4 * n);
    const std::size_t dim = config.uniform_angles ? 2 : static_cast<std::size_t>(2 * n);

    auto unpack = [&](const std::vector<double>& x) {
        MeasurementAngles angles(static_cast<std::size_t>(n));
        for (int site = 0; site < n; ++site) {
            const std::size_t off = config.uniform_angles ? 0 : static_cast<std::size_t>(2 * site);
            angles[static_cast<std::size_t>(site)] = {x[off], x[off + 1]};
        }
        return angles;
    };

    // Starting points are drawn up front so results do not depend on scheduling.
    std::vector<std::vector<double>> seeds;
    seeds.push_back(std::vector<double>(dim, 0.0));
    std::vector<double> all_x(dim, 0.0);
    for (std::size_t i = 0; i < dim; i += 2) {
        all_x[i] = kPi / 2;
    }
    seeds.push_back(all_x);
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> theta_dist(0.0, kPi);
    std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * kPi);
    while (static_cast<int>(seeds.size()) < starts) {
        std::vector<double> x(dim);
        for (std::size_t i = 0; i < dim; i += 2) {
            x[i] = theta_dist(rng);
            x[i + 1] = phi_dist(rng);
        }
        seeds.push_back(std::move(x));
    }

    SimplexOptions opts;
    opts.step = 0.4;
    opts.size_tol = config.size_tol;
    opts.improve_tol = 1e-12;
    opts.stall_window = 100;
    opts.max_evals = config.max_evals;
    const Objective f = [&](const std::vector<double>& x) { return problem.objective(unpack(x)); };

    std::vector<LocalResult> results(seeds.size());
    parallel_for(seeds.size(), config.threads == 0 ? default_threads() : config.threads,
                 [&](std::size_t i) { results[i] = minimize_simplex(f, seeds[i], opts); });

    std::size_t best = 0;
    std::size_t evaluations = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        evaluations += results[i].evals;
        if (results[i].value < results[best].value) {
            best = i;
        }
    }
    MeasurementAngles angles = unpack(results[best].x);
    for (auto& a : angles) {
        a = canonical_angles(a);
    }
    return GDResult{results[best].value, std::move(angles), starts, results[best].converged, evaluations};
}

} // namespace tfim
