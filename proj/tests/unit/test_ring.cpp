#include <doctest.h>

#include "support/oracles.hpp"
#include "tfim/errors.hpp"
#include "tfim/ring.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

using namespace tfim;

namespace {

double min_eigenvalue(const Eigen::MatrixXd& h) {
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

Eigen::MatrixXd parity_operator(int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index s = 0; s < dim; ++s) {
        p(s, s) = basis_parity(static_cast<std::size_t>(s));
    }
    return p;
}

// Basis permutation sending site n to site n+1.
Eigen::MatrixXd cyclic_shift(int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index s = 0; s < dim; ++s) {
        const Eigen::Index t = ((s >> 1) | ((s & 1) << (n - 1)));
        p(t, s) = 1.0;
    }
    return p;
}

} // namespace

TEST_SUITE("ring") {

TEST_CASE("N=2 at B=0 counts the doubled bond") {
    CHECK(std::abs(min_eigenvalue(build_hamiltonian({2, 1.0, 0.0})) + 2.0) < 1e-12);
}

TEST_CASE("field-only Hamiltonian is diagonal with ground state all down") {
    const Eigen::MatrixXd h = build_hamiltonian({4, 0.0, 1.0});
    CHECK((h - Eigen::MatrixXd(h.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
    CHECK(h(15, 15) == -4.0);
    CHECK(std::abs(min_eigenvalue(h) + 4.0) < 1e-12);
}

TEST_CASE("N=2, J=1, B=1 matches a direct 4x4 eigensolve") {
    const oracle::Mat h = oracle::kron_hamiltonian(2, 1.0, 1.0);
    const double expected = Eigen::SelfAdjointEigenSolver<oracle::Mat>(h).eigenvalues()(0);
    CHECK(std::abs(ground_state({2, 1.0, 1.0}).energy - expected) < 1e-11);
}

TEST_CASE("dense Hamiltonian equals the Kronecker-product construction") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int n = 2; n <= 7; ++n) {
        const double j = u(rng) - 1.5;
        const double b = u(rng);
        const Eigen::MatrixXd h = build_hamiltonian({n, j, b});
        CHECK((h.cast<std::complex<double>>() - oracle::kron_hamiltonian(n, j, b)).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((h - h.transpose()).cwiseAbs().maxCoeff() <= 1e-13);
        const Eigen::MatrixXd p = parity_operator(n);
        CHECK((h * p - p * h).cwiseAbs().maxCoeff() <= 1e-12);
        const Eigen::MatrixXd t = cyclic_shift(n);
        CHECK((t * h * t.transpose() - h).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("sector blocks reproduce the full spectrum") {
    const RingConfig cfg{5, 1.0, 0.7};
    std::vector<std::size_t> even;
    std::vector<std::size_t> odd;
    const Eigen::MatrixXd he = sector_hamiltonian(cfg, Parity::even, &even);
    const Eigen::MatrixXd ho = sector_hamiltonian(cfg, Parity::odd, &odd);
    CHECK(even.size() == 16);
    CHECK(odd.size() == 16);
    for (std::size_t s : even) {
        CHECK(basis_parity(s) == 1);
    }
    CHECK(std::abs(std::min(min_eigenvalue(he), min_eigenvalue(ho)) - min_eigenvalue(build_hamiltonian(cfg))) < 1e-11);
}

TEST_CASE("B=0 ground state is the even GHZ-like combination of |+> and |->") {
    const GroundStateResult gs = ground_state({4, 1.0, 0.0});
    CHECK(std::abs(gs.energy + 4.0) < 1e-11);
    CHECK(gs.degenerate);
    CHECK(gs.parity == Parity::even);
    for (Eigen::Index s = 0; s < 16; ++s) {
        const double expected = basis_parity(static_cast<std::size_t>(s)) == 1 ? 2.0 / (4.0 * std::sqrt(2.0)) : 0.0;
        CHECK(std::abs(gs.state.amplitudes()(s) - expected) < 1e-10);
    }
}

TEST_CASE("J=0 ground state is all down") {
    const GroundStateResult gs = ground_state({4, 0.0, 1.0});
    CHECK(std::abs(gs.energy + 4.0) < 1e-11);
    CHECK(std::abs(gs.state.amplitudes()(15) - 1.0) < 1e-12);
}

TEST_CASE("ground energy equals the smallest dense eigenvalue") {
    for (int n = 2; n <= 9; ++n) {
        for (double b : {0.0, 0.3, 1.0, 2.5}) {
            const RingConfig cfg{n, 1.0, b};
            const GroundStateResult gs = ground_state(cfg);
            CHECK(std::abs(gs.energy - min_eigenvalue(build_hamiltonian(cfg))) < 1e-11);
            CHECK(gs.residual < 1e-9);
            CHECK(std::abs(gs.state.amplitudes().norm() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("largest amplitude is real and positive") {
    const GroundStateResult gs = ground_state({6, 1.0, 0.8});
    Eigen::Index k = 0;
    gs.state.amplitudes().cwiseAbs().maxCoeff(&k);
    CHECK(gs.state.amplitudes()(k).imag() == 0.0);
    CHECK(gs.state.amplitudes()(k).real() > 0.0);
}

TEST_CASE("free-fermion energy examples") {
    CHECK(std::abs(free_fermion_energy({4, 1.0, 0.0}) + 4.0) < 1e-12);
    const double pi = std::acos(-1.0);
    const double expected = -2.0 * (std::sqrt(5.0 - 4.0 * std::cos(pi / 4)) + std::sqrt(5.0 - 4.0 * std::cos(3 * pi / 4)));
    CHECK(std::abs(free_fermion_energy({4, 1.0, 2.0}) - expected) < 1e-12);
    CHECK(std::abs(expected - ground_state({4, 1.0, 2.0}).energy) < 1e-9);
    CHECK(std::abs(free_fermion_energy({8, 1.0, 1.0}) - ground_state({8, 1.0, 1.0}).energy) < 1e-9);
    const GroundStateResult gs6 = ground_state({6, 1.0, 1.0});
    CHECK(std::abs(free_fermion_energy({6, 1.0, 1.0}) - gs6.energy) < 1e-9);
}

TEST_CASE("fermion sector lists N momenta with matching dispersions") {
    const RingConfig cfg{6, 1.0, 0.4};
    const FermionSector fs = fermion_sector(cfg);
    REQUIRE(fs.momenta.size() == 6);
    for (std::size_t k = 0; k < fs.momenta.size(); ++k) {
        const double eps = std::sqrt(1.0 + 0.16 - 0.8 * std::cos(fs.momenta[k]));
        CHECK(std::abs(fs.dispersions[k] - eps) < 1e-14);
    }
}

TEST_CASE("even-sector energy never undercuts the dense ground energy") {
    for (int n = 2; n <= 10; ++n) {
        for (double b : {0.1, 0.5, 0.9, 1.0, 1.1, 2.0, 5.0}) {
            const RingConfig cfg{n, 1.0, b};
            CHECK(free_fermion_energy(cfg) >= ground_state(cfg).energy - 1e-9);
        }
    }
}

TEST_CASE("parity expectation of sector ground states") {
    CHECK(std::abs(parity_expectation(ground_state({6, 1.0, 0.5}).state) - 1.0) < 1e-10);
    CHECK(std::abs(parity_expectation(PureState::basis(3, 1)) + 1.0) < 1e-15);
}

TEST_CASE("invalid configurations are rejected") {
    CHECK_THROWS_AS(build_hamiltonian({1, 1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(build_hamiltonian({kMaxSites + 1, 1.0, 0.0}), CapacityError);
    CHECK_THROWS_AS(ground_state({4, 1.0, -1.0}), DomainError);
    CHECK_THROWS_AS(ground_state({4, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(ground_state({4, std::nan(""), 1.0}), DomainError);
    CHECK_THROWS_AS((RingConfig{4, 0.0, 1.0}.ratio()), DomainError);
    CHECK_THROWS_AS(fermion_sector({4, 1.0, 1.0}, Parity::odd), DomainError);
    CHECK_THROWS_AS(PureState(2, Eigen::VectorXcd::Ones(4)), InvalidStateError);
    CHECK_THROWS_AS(PureState(2, Eigen::VectorXcd::Ones(3)), DomainError);
}

}
