#pragma once

// Two-spin correlation measures: quantum discord, measurement-induced
// disturbance (MID) and its optimised version (AMID), plus thermodynamic-limit
// correlators from Toeplitz determinants.

#include "tfim/density.hpp"
#include "tfim/ring.hpp"

#include <cstdint>

namespace tfim {

/// Two-qubit density matrix whose only non-zero entries sit on the diagonal and anti-diagonal.
class XState {
public:
    /// Throws DomainError if `rho` is not two-qubit or breaks the X pattern by more than 1e-10.
    explicit XState(DensityMatrix rho);

    static bool has_x_pattern(const Eigen::MatrixXcd& m, double tol = 1e-10);

    const DensityMatrix& density() const noexcept { return rho_; }
    const Eigen::MatrixXcd& matrix() const noexcept { return rho_.matrix(); }

private:
    DensityMatrix rho_;
};

/// Reduced state of sites i, j (0-based) of a ring state.
XState reduced_two_spin(const PureState& gs, int i, int j);

/// b_to_a: projective measurement on the second qubit (B); a_to_b: on the first.
enum class Direction { a_to_b, b_to_a, symmetrized };

struct DiscordResult {
    double value;
    /// Closed-form candidate (sz / equatorial measurement) when the input is an X state.
    double semi_closed;
    double numerical;
    /// Input lacked the X pattern; only numerical minimisation was used.
    bool non_x_fallback;
};

/// Discord with min(semi-closed, numerical). Accepts any two-qubit state.
DiscordResult discord(const DensityMatrix& rho, Direction direction);
inline DiscordResult discord(const XState& rho, Direction direction) { return discord(rho.density(), direction); }

/// One-way discord for the given measured qubit (0 = A, 1 = B) and measurement direction.
double discord_for_measurement(const DensityMatrix& rho, int measured, const AnglePair& angles);

/// Closed-form X-state discord: best of an sz measurement and the optimal equatorial one.
double discord_semi_closed(const DensityMatrix& rho, int measured);

/// Grid (16 x 16) plus simplex refinement over the measured qubit's basis.
double discord_numerical(const DensityMatrix& rho, int measured);

/// I(rho) - I(Pi(rho)) for the bilocal basis given by two angle pairs.
double measurement_disturbance(const DensityMatrix& rho, const MeasurementAngles& angles);

/// Marginal eigenbases; a maximally mixed marginal uses the sz basis.
MeasurementAngles marginal_eigenbasis(const DensityMatrix& rho);

double mid(const DensityMatrix& rho);

struct AmidResult {
    double value;
    MeasurementAngles angles;
    bool converged;
};

AmidResult amid(const DensityMatrix& rho, std::uint64_t seed = 7, int starts = 12);

/// Correlators of H = sum_n (-lambda sx_n sx_{n+1} + sz_n) in the infinite chain, at separation s.
/// In the sz convention used here <sz> = -mz (mz is G_0, which tends to +1 when polarised).
struct CorrelatorSet {
    double chi_xx;
    double chi_yy;
    double chi_zz;
    double mz;
    int separation;
    double lambda;
    /// Largest absolute error estimate reported by the quadrature.
    double quad_error;
};

/// G_k = (1/pi) int_0^pi cos(k phi)(1 + lambda cos phi)/eps - (lambda/pi) int_0^pi sin(k phi) sin phi / eps,
/// eps = sqrt(1 + lambda^2 + 2 lambda cos phi). Adaptive quadrature to 1e-10 absolute.
double toeplitz_g(double lambda, int k, double* abs_error = nullptr);

CorrelatorSet toeplitz_correlators(double lambda, int separation);

} // namespace tfim
