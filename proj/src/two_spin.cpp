#include "tfim/two_spin.hpp"

#include "tfim/errors.hpp"
#include "tfim/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace tfim {

namespace {

constexpr double kPi = std::numbers::pi;

void require_two_qubits(const DensityMatrix& rho) {
    if (rho.dim() != 4) {
        throw DomainError("two-spin measure needs a 4x4 density matrix, got dimension " + std::to_string(rho.dim()));
    }
}

// Entropy (bits) of a 2x2 Hermitian block given unnormalised; returns p * S(block / p).
double weighted_qubit_entropy(double m00, double m11, std::complex<double> m01) {
    const double p = m00 + m11;
    if (p <= 0.0) {
        return 0.0;
    }
    const double gap = std::sqrt((m00 - m11) * (m00 - m11) + 4.0 * std::norm(m01));
    const double l0 = std::max(0.0, 0.5 * (p + gap));
    const double l1 = std::max(0.0, 0.5 * (p - gap));
    double s = 0.0;
    if (l0 > 0.0) {
        s -= l0 * std::log2(l0 / p);
    }
    if (l1 > 0.0) {
        s -= l1 * std::log2(l1 / p);
    }
    return s;
}

double binary_entropy(double x) {
    double h = 0.0;
    if (x > 0.0) {
        h -= x * std::log2(x);
    }
    if (x < 1.0) {
        h -= (1.0 - x) * std::log2(1.0 - x);
    }
    return h;
}

// Conditional entropy sum_j p_j S(rho_other | j) for a measurement of qubit `measured`
// in the basis of rotation(angles).
double conditional_entropy(const Eigen::MatrixXcd& rho, int measured, const AnglePair& angles) {
    const Eigen::Matrix2cd r = rotation(angles);
    double total = 0.0;
    for (int outcome = 0; outcome < 2; ++outcome) {
        const std::complex<double> v0 = r(0, outcome);
        const std::complex<double> v1 = r(1, outcome);
        const std::array<std::complex<double>, 2> v{v0, v1};
        std::complex<double> m[2][2] = {};
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
                std::complex<double> acc = 0.0;
                for (int k = 0; k < 2; ++k) {
                    for (int l = 0; l < 2; ++l) {
                        const int row = measured == 1 ? 2 * x + k : 2 * k + x;
                        const int col = measured == 1 ? 2 * y + l : 2 * l + y;
                        acc += std::conj(v[static_cast<std::size_t>(k)]) * rho(row, col) * v[static_cast<std::size_t>(l)];
                    }
                }
                m[x][y] = acc;
            }
        }
        total += weighted_qubit_entropy(m[0][0].real(), m[1][1].real(), m[0][1]);
    }
    return total;
}

Eigen::MatrixXcd swap_qubits(const Eigen::MatrixXcd& rho) {
    static const int perm[4] = {0, 2, 1, 3};
    Eigen::MatrixXcd out(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            out(perm[i], perm[j]) = rho(i, j);
        }
    }
    return out;
}

double clamp_small_negative(double v) { return (v < 0.0 && v > -1e-10) ? 0.0 : v; }

// Entropies that do not depend on the measurement: S(measured marginal) - S(rho).
double discord_offset(const DensityMatrix& rho, int measured) {
    const int label = rho.sites()[static_cast<std::size_t>(measured)];
    return von_neumann_entropy(partial_trace(rho, {label})) - von_neumann_entropy(rho);
}

} // namespace

XState::XState(DensityMatrix rho) : rho_(std::move(rho)) {
    require_two_qubits(rho_);
    if (!has_x_pattern(rho_.matrix())) {
        throw DomainError("two-spin state does not have the X pattern");
    }
}

bool XState::has_x_pattern(const Eigen::MatrixXcd& m, double tol) {
    if (m.rows() != 4 || m.cols() != 4) {
        return false;
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const bool allowed = i == j || i + j == 3;
            if (!allowed && std::abs(m(i, j)) > tol) {
                return false;
            }
        }
    }
    return true;
}

XState reduced_two_spin(const PureState& gs, int i, int j) {
    if (i == j) {
        throw DomainError("two-spin state needs distinct sites");
    }
    if (i < 0 || j < 0 || i >= gs.n_sites() || j >= gs.n_sites()) {
        throw DomainError("site outside the ring");
    }
    return XState(reduced_density(gs, {i, j}));
}

double discord_for_measurement(const DensityMatrix& rho, int measured, const AnglePair& angles) {
    require_two_qubits(rho);
    return discord_offset(rho, measured) + conditional_entropy(rho.matrix(), measured, angles);
}

double discord_semi_closed(const DensityMatrix& rho, int measured) {
    require_two_qubits(rho);
    const Eigen::MatrixXcd m = measured == 1 ? rho.matrix() : swap_qubits(rho.matrix());
    if (!XState::has_x_pattern(m)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double a = m(0, 0).real();
    const double b = m(1, 1).real();
    const double c = m(2, 2).real();
    const double d = m(3, 3).real();
    const double coherence = std::abs(m(0, 3)) + std::abs(m(1, 2));

    // sz on B leaves A in diag(a, c) or diag(b, d).
    const double s_z = weighted_qubit_entropy(a, c, 0.0) + weighted_qubit_entropy(b, d, 0.0);
    // Best equatorial measurement: outcomes equiprobable, A-coherence |rho_03| + |rho_12|.
    const double bias = a + b - c - d;
    const double radius = std::min(1.0, std::sqrt(bias * bias + 4.0 * coherence * coherence));
    const double s_eq = binary_entropy(0.5 * (1.0 + radius));
    return clamp_small_negative(discord_offset(rho, measured) + std::min(s_z, s_eq));
}

double discord_numerical(const DensityMatrix& rho, int measured) {
    require_two_qubits(rho);
    const double offset = discord_offset(rho, measured);
    const Eigen::MatrixXcd& m = rho.matrix();
    auto cond = [&](double theta, double phi) { return conditional_entropy(m, measured, {theta, phi}); };

    constexpr int kGrid = 16;
    struct Seed {
        double value, theta, phi;
    };
    std::vector<Seed> seeds;
    for (int i = 0; i < kGrid; ++i) {
        const double theta = kPi * i / (kGrid - 1);
        for (int j = 0; j < kGrid; ++j) {
            const double phi = 2.0 * kPi * j / kGrid;
            seeds.push_back({cond(theta, phi), theta, phi});
        }
    }
    std::partial_sort(seeds.begin(), seeds.begin() + 3, seeds.end(),
                      [](const Seed& x, const Seed& y) { return x.value < y.value; });

    double best = seeds.front().value;
    SimplexOptions opts;
    opts.step = kPi / kGrid;
    opts.improve_tol = 1e-9;
    opts.stall_window = 40;
    opts.max_evals = 4000;
    const Objective f = [&](const std::vector<double>& x) { return cond(x[0], x[1]); };
    for (int k = 0; k < 3; ++k) {
        const LocalResult r = minimize_simplex(f, {seeds[static_cast<std::size_t>(k)].theta,
                                                   seeds[static_cast<std::size_t>(k)].phi},
                                               opts);
        best = std::min(best, r.value);
    }
    return clamp_small_negative(offset + best);
}

DiscordResult discord(const DensityMatrix& rho, Direction direction) {
    require_two_qubits(rho);
    const bool is_x = XState::has_x_pattern(rho.matrix());
    auto one_way = [&](int measured) {
        const double numerical = discord_numerical(rho, measured);
        const double semi = is_x ? discord_semi_closed(rho, measured) : std::numeric_limits<double>::quiet_NaN();
        const double value = is_x ? std::min(semi, numerical) : numerical;
        return DiscordResult{value, semi, numerical, !is_x};
    };
    switch (direction) {
    case Direction::b_to_a:
        return one_way(1);
    case Direction::a_to_b:
        return one_way(0);
    case Direction::symmetrized: {
        const DiscordResult ab = one_way(0);
        const DiscordResult ba = one_way(1);
        return {std::max(ab.value, ba.value), std::max(ab.semi_closed, ba.semi_closed),
                std::max(ab.numerical, ba.numerical), !is_x};
    }
    }
    throw DomainError("unknown discord direction");
}

namespace {

// Mutual information of the bilocally dephased state, from its joint outcome distribution.
double dephased_mutual_information(const Eigen::MatrixXcd& rho, const MeasurementAngles& angles) {
    const Eigen::Matrix2cd ra = rotation(angles[0]);
    const Eigen::Matrix2cd rb = rotation(angles[1]);
    double joint[2][2];
    for (int i = 0; i < 2; ++i) {
        for (int k = 0; k < 2; ++k) {
            Eigen::Vector4cd v;
            v << ra(0, i) * rb(0, k), ra(0, i) * rb(1, k), ra(1, i) * rb(0, k), ra(1, i) * rb(1, k);
            joint[i][k] = std::max(0.0, (v.adjoint() * rho * v)(0, 0).real());
        }
    }
    const double pa[2] = {joint[0][0] + joint[0][1], joint[1][0] + joint[1][1]};
    const double pb[2] = {joint[0][0] + joint[1][0], joint[0][1] + joint[1][1]};
    const double flat[4] = {joint[0][0], joint[0][1], joint[1][0], joint[1][1]};
    return shannon_bits(pa) + shannon_bits(pb) - shannon_bits(flat);
}

double mutual_information_2q(const DensityMatrix& rho) {
    return mutual_information(rho, {rho.sites()[0]});
}

} // namespace

double measurement_disturbance(const DensityMatrix& rho, const MeasurementAngles& angles) {
    require_two_qubits(rho);
    if (angles.size() != 2) {
        throw DomainError("bilocal measurement needs two angle pairs");
    }
    return clamp_small_negative(mutual_information_2q(rho) - dephased_mutual_information(rho.matrix(), angles));
}

MeasurementAngles marginal_eigenbasis(const DensityMatrix& rho) {
    require_two_qubits(rho);
    MeasurementAngles angles;
    for (int label : rho.sites()) {
        const Eigen::Matrix2cd marginal = partial_trace(rho, {label}).matrix();
        angles.push_back(angles_from_direction(bloch_vector(marginal)));
    }
    return angles;
}

double mid(const DensityMatrix& rho) { return measurement_disturbance(rho, marginal_eigenbasis(rho)); }

AmidResult amid(const DensityMatrix& rho, std::uint64_t seed, int starts) {
    require_two_qubits(rho);
    const double total = mutual_information_2q(rho);
    const Eigen::MatrixXcd& m = rho.matrix();
    const Objective f = [&](const std::vector<double>& x) {
        return total - dephased_mutual_information(m, {{x[0], x[1]}, {x[2], x[3]}});
    };

    const MeasurementAngles eig = marginal_eigenbasis(rho);
    std::vector<std::vector<double>> seeds = {
        {eig[0].theta, eig[0].phi, eig[1].theta, eig[1].phi},
        {0.0, 0.0, 0.0, 0.0},
        {kPi / 2, 0.0, kPi / 2, 0.0},
        {kPi / 2, kPi / 2, kPi / 2, kPi / 2},
    };
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> theta_dist(0.0, kPi);
    std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * kPi);
    while (static_cast<int>(seeds.size()) < std::max(starts, 8)) {
        seeds.push_back({theta_dist(rng), phi_dist(rng), theta_dist(rng), phi_dist(rng)});
    }

    SimplexOptions opts;
    opts.step = 0.3;
    opts.improve_tol = 1e-10;
    opts.stall_window = 60;
    opts.max_evals = 6000;

    AmidResult best{f(seeds[0]), {eig[0], eig[1]}, true};
    bool best_converged = true;
    for (const auto& s : seeds) {
        const LocalResult r = minimize_simplex(f, s, opts);
        if (r.value < best.value) {
            best.value = r.value;
            best.angles = {{r.x[0], r.x[1]}, {r.x[2], r.x[3]}};
            best_converged = r.converged;
        }
    }
    best.value = clamp_small_negative(best.value);
    best.converged = best_converged;
    return best;
}

} // namespace tfim
