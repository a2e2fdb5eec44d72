#pragma once

// Density-operator algebra. All entropies are in bits.
//
// Measurement bases: a site measured with angles (theta, phi) is projected on
//   |0'> = cos(theta/2)|up> + e^{i phi} sin(theta/2)|down>   (Bloch direction n)
//   |1'> = -e^{-i phi} sin(theta/2)|up> + cos(theta/2)|down> (direction -n)
// with n = (sin theta cos phi, sin theta sin phi, cos theta). rotation() returns
// the unitary whose columns are |0'>, |1'>. Every module uses this convention.

#include "tfim/kernels.hpp"
#include "tfim/ring.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace tfim {

using SiteList = std::vector<int>;

class DensityMatrix {
public:
    /// Validates hermiticity, unit trace (1e-12 scaled by dimension) and positivity (-1e-10).
    DensityMatrix(Eigen::MatrixXcd matrix, SiteList sites);

    /// Skips validation; for intermediate results already known to be valid.
    static DensityMatrix unchecked(Eigen::MatrixXcd matrix, SiteList sites);

    static DensityMatrix from_pure(const PureState& state);

    const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
    const SiteList& sites() const noexcept { return sites_; }
    int n_sites() const noexcept { return static_cast<int>(sites_.size()); }
    Eigen::Index dim() const noexcept { return matrix_.rows(); }

private:
    DensityMatrix() = default;
    Eigen::MatrixXcd matrix_;
    SiteList sites_;
};

struct AnglePair {
    double theta = 0.0;
    double phi = 0.0;
};

/// One (theta, phi) per measured site, in the order of the state's site list.
using MeasurementAngles = std::vector<AnglePair>;

inline MeasurementAngles uniform_angles(int n, AnglePair a) { return MeasurementAngles(static_cast<std::size_t>(n), a); }

Eigen::Matrix2cd rotation(const AnglePair& angles);
kernels::Mat2 rotation_adjoint_mat2(const AnglePair& angles);

/// Bloch direction of a single-qubit state; zero vector for the maximally mixed state.
std::array<double, 3> bloch_vector(const Eigen::Matrix2cd& rho);

/// Angles whose |0'> points along `direction` (z basis for a vanishing vector).
AnglePair angles_from_direction(const std::array<double, 3>& direction, double degenerate_tol = 1e-10);

/// Trace out everything except `keep` (labels from rho.sites(), kept in the given order).
DensityMatrix partial_trace(const DensityMatrix& rho, const SiteList& keep);

/// Reduced state of a pure ring state on `keep` (0-based sites); O(2^N) via reshaping.
DensityMatrix reduced_density(const PureState& state, const SiteList& keep);

/// Eigenvalues with [-1e-10, 0) clipped to zero; throws InvalidStateError below that.
Eigen::VectorXd clipped_spectrum(const Eigen::MatrixXcd& m);

/// -sum p log2 p over non-zero entries.
double shannon_bits(std::span<const double> probabilities);

double von_neumann_entropy(const DensityMatrix& rho);

/// S(rho || sigma); +infinity when supp(rho) is not inside supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// I(A:B) = S(A) + S(B) - S(AB), with A = `part_a` and B its complement within rho.sites().
double mutual_information(const DensityMatrix& rho, const SiteList& part_a);

/// Sum_k P_k rho P_k over the rotated product basis given by one angle pair per site.
DensityMatrix dephase(const DensityMatrix& rho, const MeasurementAngles& angles);

/// Tensor product of per-site rotations (site 0 leftmost).
Eigen::MatrixXcd product_rotation(const MeasurementAngles& angles);

} // namespace tfim
