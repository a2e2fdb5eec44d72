#pragma once

// Global quantum discord of a pure ring state,
//
//   GD = inf_angles [ S(rho || Pi(rho)) - sum_j S(rho_j || Pi_j(rho_j)) ],
//
// where Pi measures every site in its own rotated basis. For a pure state
// S(rho || Pi(rho)) is the Shannon entropy of the rotated amplitudes'
// squared moduli, and each single-site term is S(Pi_j(rho_j)) - S(rho_j), so
// one evaluation costs O(N 2^N).

#include "tfim/density.hpp"
#include "tfim/kernels.hpp"
#include "tfim/ring.hpp"

#include <cstdint>
#include <vector>

namespace tfim {

struct MeasuredSpectrum {
    /// lambda_k = |<k| R^dagger |psi>|^2, indexed like the computational basis.
    std::vector<double> lambdas;
    MeasurementAngles angles;
};

struct OptimizerConfig {
    /// Number of local searches; 0 selects max(16, 4N).
    int restarts = 0;
    /// Objective evaluations allowed per local search.
    std::size_t max_evals = 50000;
    std::uint64_t seed = 20110721;
    /// Optimise a single (theta, phi) shared by every site.
    bool uniform_angles = false;
    /// 0 selects default_threads().
    unsigned threads = 0;
    double size_tol = 1e-9;
};

struct GDResult {
    double value;
    MeasurementAngles argmin_angles;
    int n_restarts;
    bool converged;
    std::size_t evaluations;
};

/// Precomputes the single-site marginals of a state so repeated objective
/// evaluations only pay for the rotated spectrum. Safe to share across threads.
class GlobalDiscordProblem {
public:
    explicit GlobalDiscordProblem(PureState state, const kernels::KernelTable& kernels = kernels::active());

    const PureState& state() const noexcept { return state_; }
    int n_sites() const noexcept { return state_.n_sites(); }

    MeasuredSpectrum spectrum(const MeasurementAngles& angles) const;
    double objective(const MeasurementAngles& angles) const;

    /// Sum over sites of S(Pi_j(rho_j)) - S(rho_j).
    double marginal_terms(const MeasurementAngles& angles) const;

private:
    void rotated_probabilities(const MeasurementAngles& angles, std::vector<double>& out) const;

    PureState state_;
    const kernels::KernelTable* kernels_;
    std::vector<std::array<double, 3>> bloch_;
    std::vector<double> marginal_entropy_;
};

MeasuredSpectrum measured_spectrum(const PureState& gs, const MeasurementAngles& angles);

double gd_objective(const PureState& gs, const MeasurementAngles& angles);

GDResult global_discord(const PureState& gs, const OptimizerConfig& config = {});

/// Folds an angle pair into theta in [0, pi], phi in [0, 2 pi) without changing the projectors.
AnglePair canonical_angles(AnglePair a);

} // namespace tfim
