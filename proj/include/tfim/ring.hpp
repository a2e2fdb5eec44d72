#pragma once

// Transverse-field Ising ring
//
//   H = -J sum_n sx_n sx_{n+1} + B sum_n sz_n,   sigma_{N+1} = sigma_1
//
// Basis convention used across the library: basis index s, site n (0-based)
// is bit (N-1-n) of s, bit value 0 = spin up (sz = +1), 1 = spin down. Site 0
// is therefore the most significant (leftmost) tensor factor.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace tfim {

inline constexpr int kMaxSites = 12;

struct RingConfig {
    int n_sites = 2;
    double coupling_j = 1.0;
    double field_b = 0.0;

    /// B/J; throws DomainError when J == 0.
    double ratio() const;
    /// Throws DomainError / CapacityError when the configuration is unusable.
    void validate() const;

    static RingConfig from_ratio(int n_sites, double ratio) { return {n_sites, 1.0, ratio}; }
};

enum class Parity { even, odd };

/// Normalised state on a ring of n_sites spins in the sz product basis.
class PureState {
public:
    PureState(int n_sites, Eigen::VectorXcd amplitudes);

    int n_sites() const noexcept { return n_sites_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
    const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }

    /// (|0...0> + |1...1>)/sqrt(2).
    static PureState ghz(int n_sites);
    /// |down ... down>, the J = 0, B > 0 ground state.
    static PureState all_down(int n_sites);
    /// Single basis vector |index>.
    static PureState basis(int n_sites, std::size_t index);

private:
    int n_sites_;
    Eigen::VectorXcd amps_;
};

struct FermionSector {
    Parity parity;
    std::vector<double> momenta;
    std::vector<double> dispersions;
};

struct GroundStateResult {
    PureState state;
    double energy;
    Parity parity;
    /// Lowest level was (within 1e-10) shared by both parity sectors.
    bool degenerate;
    double residual;
};

/// Dense 2^N x 2^N Hamiltonian (real symmetric).
Eigen::MatrixXd build_hamiltonian(const RingConfig& config);

/// Hamiltonian restricted to one eigenspace of prod_n sz_n, in ascending basis-index order.
Eigen::MatrixXd sector_hamiltonian(const RingConfig& config, Parity parity, std::vector<std::size_t>* indices = nullptr);

/// Exact ground state. Degenerate ground levels are resolved inside the
/// +1 eigenspace of prod_n sz_n; the largest-magnitude amplitude is made real positive.
GroundStateResult ground_state(const RingConfig& config);

/// Even-fermion-sector momenta and dispersions eps_k = sqrt(J^2 + B^2 - 2JB cos phi_k).
FermionSector fermion_sector(const RingConfig& config, Parity parity = Parity::even);

/// Lambda_N = -sum_k eps_k in the even sector.
double free_fermion_energy(const RingConfig& config, Parity parity = Parity::even);

/// <psi| prod_n sz_n |psi>.
double parity_expectation(const PureState& state);

/// +1 if basis index s lies in the even (prod sz = +1) sector, -1 otherwise.
inline int basis_parity(std::size_t s) { return (__builtin_popcountll(s) % 2 == 0) ? 1 : -1; }

} // namespace tfim
