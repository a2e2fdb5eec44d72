#include "tfim/ring.hpp"

#include "tfim/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace tfim {

double RingConfig::ratio() const {
    if (coupling_j == 0.0) {
        throw DomainError("B/J requested with J = 0");
    }
    return field_b / coupling_j;
}

void RingConfig::validate() const {
    if (n_sites < 2) {
        throw DomainError("ring needs at least 2 sites, got " + std::to_string(n_sites));
    }
    if (n_sites > kMaxSites) {
        throw CapacityError("ring of " + std::to_string(n_sites) + " sites exceeds the dense limit of " +
                            std::to_string(kMaxSites));
    }
    if (!std::isfinite(coupling_j) || !std::isfinite(field_b)) {
        throw DomainError("couplings must be finite");
    }
    if (field_b < 0.0) {
        throw DomainError("field B must be non-negative");
    }
}

PureState::PureState(int n_sites, Eigen::VectorXcd amplitudes) : n_sites_(n_sites), amps_(std::move(amplitudes)) {
    if (n_sites < 1 || n_sites > 20) {
        throw DomainError("unsupported site count " + std::to_string(n_sites));
    }
    if (amps_.size() != (Eigen::Index{1} << n_sites)) {
        throw DomainError("amplitude vector length must be 2^n_sites");
    }
    const double norm = amps_.norm();
    if (std::abs(norm - 1.0) > 1e-12) {
        throw InvalidStateError("state not normalised: |psi| = " + std::to_string(norm));
    }
}

PureState PureState::ghz(int n_sites) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_sites);
    v(0) = v(v.size() - 1) = std::numbers::sqrt2 / 2.0;
    return {n_sites, std::move(v)};
}

PureState PureState::all_down(int n_sites) { return basis(n_sites, (std::size_t{1} << n_sites) - 1); }

PureState PureState::basis(int n_sites, std::size_t index) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_sites);
    if (index >= static_cast<std::size_t>(v.size())) {
        throw DomainError("basis index out of range");
    }
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return {n_sites, std::move(v)};
}

namespace {


std::vector<std::size_t> bond_masks(int n) {
    std::vector<std::size_t> masks;
    masks.reserve(static_cast<std::size_t>(n));
    for (int site = 0; site < n; ++site) {
        const int next = (site + 1) % n;
        masks.push_back((std::size_t{1} << (n - 1 - site)) | (std::size_t{1} << (n - 1 - next)));
    }
    return masks;
}

double field_energy(std::size_t s, int n, double b) {
    const int downs = __builtin_popcountll(s);
    return b * static_cast<double>(n - 2 * downs);
}

} // namespace

Eigen::MatrixXd build_hamiltonian(const RingConfig& config) {
    config.validate();
    const int n = config.n_sites;
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    const auto masks = bond_masks(n);
    for (std::size_t s = 0; s < dim; ++s) {
        const auto col = static_cast<Eigen::Index>(s);
        h(col, col) += field_energy(s, n, config.field_b);
        for (std::size_t mask : masks) {
            h(static_cast<Eigen::Index>(s ^ mask), col) -= config.coupling_j;
        }
    }
    return h;
}

Eigen::MatrixXd sector_hamiltonian(const RingConfig& config, Parity parity, std::vector<std::size_t>* indices) {
    config.validate();
    const int n = config.n_sites;
    const std::size_t dim = std::size_t{1} << n;
    const int want = parity == Parity::even ? 1 : -1;

    std::vector<std::size_t> members;
    std::vector<Eigen::Index> position(dim, -1);
    for (std::size_t s = 0; s < dim; ++s) {
        if (basis_parity(s) == want) {
            position[s] = static_cast<Eigen::Index>(members.size());
            members.push_back(s);
        }
    }

    const auto sub = static_cast<Eigen::Index>(members.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(sub, sub);
    const auto masks = bond_masks(n);
    for (Eigen::Index col = 0; col < sub; ++col) {
        const std::size_t s = members[static_cast<std::size_t>(col)];
        h(col, col) += field_energy(s, n, config.field_b);
        // Bond flips change two spins, so they never leave the sector.
        for (std::size_t mask : masks) {
            h(position[s ^ mask], col) -= config.coupling_j;
        }
    }
    if (indices != nullptr) {
        *indices = std::move(members);
    }
    return h;
}

namespace {

struct SectorGround {
    double energy;
    Eigen::VectorXd vector;
    std::vector<std::size_t> indices;
    double residual;
};

SectorGround solve_sector(const RingConfig& config, Parity parity) {
    SectorGround out;
    const Eigen::MatrixXd h = sector_hamiltonian(config, parity, &out.indices);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("eigensolver failed for parity sector", std::numeric_limits<double>::quiet_NaN());
    }
    out.energy = solver.eigenvalues()(0);
    out.vector = solver.eigenvectors().col(0);
    out.residual = (h * out.vector - out.energy * out.vector).norm();
    if (!(out.residual <= 1e-8)) {
        throw ConvergenceError("ground vector residual too large", out.residual);
    }
    return out;
}

} // namespace

GroundStateResult ground_state(const RingConfig& config) {
    config.validate();
    if (config.coupling_j == 0.0 && config.field_b == 0.0) {
        throw DomainError("H = 0 has no unique ground state");
    }
    const int n = config.n_sites;
    const SectorGround even = solve_sector(config, Parity::even);
    const SectorGround odd = solve_sector(config, Parity::odd);

    constexpr double kDegenerate = 1e-10;
    const bool degenerate = std::abs(even.energy - odd.energy) <= kDegenerate;
    const bool take_even = degenerate || even.energy < odd.energy;
    const SectorGround& pick = take_even ? even : odd;

    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    for (std::size_t k = 0; k < pick.indices.size(); ++k) {
        amps(static_cast<Eigen::Index>(pick.indices[k])) = pick.vector(static_cast<Eigen::Index>(k));
    }

    // Phase: largest-magnitude amplitude (first one on ties) real positive.
    Eigen::Index lead = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        const double mag = std::abs(amps(i));
        if (mag > best + 1e-12) {
            best = mag;
            lead = i;
        }
    }
    amps *= std::conj(amps(lead)) / std::abs(amps(lead));
    amps(lead) = std::abs(amps(lead));
    amps.normalize();

    return GroundStateResult{PureState(n, std::move(amps)), pick.energy, take_even ? Parity::even : Parity::odd,
                             degenerate, pick.residual};
}

FermionSector fermion_sector(const RingConfig& config, Parity parity) {
    config.validate();
    if (parity == Parity::odd) {
        throw DomainError("odd fermion-parity sector dispersion is not implemented; use ground_state");
    }
    if (config.coupling_j <= 0.0) {
        throw DomainError("free-fermion energy needs J > 0");
    }
    const int n = config.n_sites;
    const double j = config.coupling_j;
    const double b = config.field_b;
    FermionSector sector{parity, {}, {}};
    // Any N consecutive k give the same set of phases mod 2*pi.
    for (int k = -n / 2; k < n - n / 2; ++k) {
        const double phi = std::numbers::pi * (2.0 * k + 1.0) / n;
        sector.momenta.push_back(phi);
        sector.dispersions.push_back(std::sqrt(std::max(0.0, j * j + b * b - 2.0 * j * b * std::cos(phi))));
    }
    return sector;
}

double free_fermion_energy(const RingConfig& config, Parity parity) {
    const FermionSector sector = fermion_sector(config, parity);
    double energy = 0.0;
    for (double eps : sector.dispersions) {
        energy -= eps;
    }
    return energy;
}

double parity_expectation(const PureState& state) {
    const auto& a = state.amplitudes();
    double p = 0.0;
    for (Eigen::Index s = 0; s < a.size(); ++s) {
        p += basis_parity(static_cast<std::size_t>(s)) * std::norm(a(s));
    }
    return p;
}

} // namespace tfim
