#include "tfim/density.hpp"

#include "tfim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace tfim {

namespace {

constexpr double kClip = 1e-10;

void check_sites(const SiteList& sites) {
    SiteList sorted = sites;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DomainError("duplicate site label");
    }
}

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& m) { return 0.5 * (m + m.adjoint()); }

// Position of each label of `subset` inside `sites`; throws if absent.
std::vector<int> positions_of(const SiteList& sites, const SiteList& subset) {
    std::vector<int> pos;
    pos.reserve(subset.size());
    for (int label : subset) {
        const auto it = std::find(sites.begin(), sites.end(), label);
        if (it == sites.end()) {
            throw DomainError("site " + std::to_string(label) + " not part of the state");
        }
        pos.push_back(static_cast<int>(it - sites.begin()));
    }
    return pos;
}

// Splits basis indices of an n-qubit register into (kept, traced) parts; kept
// positions keep their listed order, traced positions keep register order.
struct IndexSplit {
    std::size_t dim_keep;
    std::size_t dim_trace;
    std::vector<std::size_t> full; // full[r * dim_trace + t]
};

IndexSplit split_indices(int n, const std::vector<int>& keep_pos) {
    std::vector<int> trace_pos;
    for (int p = 0; p < n; ++p) {
        if (std::find(keep_pos.begin(), keep_pos.end(), p) == keep_pos.end()) {
            trace_pos.push_back(p);
        }
    }
    const int nk = static_cast<int>(keep_pos.size());
    const int nt = static_cast<int>(trace_pos.size());
    IndexSplit split{std::size_t{1} << nk, std::size_t{1} << nt, {}};
    split.full.resize(split.dim_keep * split.dim_trace);
    for (std::size_t r = 0; r < split.dim_keep; ++r) {
        for (std::size_t t = 0; t < split.dim_trace; ++t) {
            std::size_t s = 0;
            for (int q = 0; q < nk; ++q) {
                const std::size_t bit = (r >> (nk - 1 - q)) & 1U;
                s |= bit << (n - 1 - keep_pos[static_cast<std::size_t>(q)]);
            }
            for (int q = 0; q < nt; ++q) {
                const std::size_t bit = (t >> (nt - 1 - q)) & 1U;
                s |= bit << (n - 1 - trace_pos[static_cast<std::size_t>(q)]);
            }
            split.full[r * split.dim_trace + t] = s;
        }
    }
    return split;
}

} // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd matrix, SiteList sites) : matrix_(std::move(matrix)), sites_(std::move(sites)) {
    if (matrix_.rows() != matrix_.cols()) {
        throw InvalidStateError("density matrix must be square");
    }
    if (matrix_.rows() != (Eigen::Index{1} << sites_.size())) {
        throw InvalidStateError("dimension does not match 2^(number of sites)");
    }
    check_sites(sites_);
    const double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12) {
        throw InvalidStateError("matrix not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    const double trace_err = std::abs(matrix_.trace() - 1.0);
    if (trace_err > 1e-12 + 1e-15 * static_cast<double>(matrix_.rows())) {
        throw InvalidStateError("trace differs from 1 by " + std::to_string(trace_err));
    }
    matrix_ = hermitian_part(matrix_);
    (void)clipped_spectrum(matrix_);
}

DensityMatrix DensityMatrix::unchecked(Eigen::MatrixXcd matrix, SiteList sites) {
    DensityMatrix rho;
    rho.matrix_ = std::move(matrix);
    rho.sites_ = std::move(sites);
    return rho;
}

DensityMatrix DensityMatrix::from_pure(const PureState& state) {
    SiteList sites(static_cast<std::size_t>(state.n_sites()));
    for (int i = 0; i < state.n_sites(); ++i) {
        sites[static_cast<std::size_t>(i)] = i;
    }
    const auto& a = state.amplitudes();
    return unchecked(a * a.adjoint(), std::move(sites));
}

Eigen::Matrix2cd rotation(const AnglePair& angles) {
    const double c = std::cos(angles.theta / 2.0);
    const double s = std::sin(angles.theta / 2.0);
    const std::complex<double> e = std::polar(1.0, angles.phi);
    Eigen::Matrix2cd r;
    r << c, -std::conj(e) * s, e * s, c;
    return r;
}

kernels::Mat2 rotation_adjoint_mat2(const AnglePair& angles) {
    const double c = std::cos(angles.theta / 2.0);
    const double s = std::sin(angles.theta / 2.0);
    const std::complex<double> e = std::polar(1.0, angles.phi);
    return {c, std::conj(e) * s, -e * s, c};
}

std::array<double, 3> bloch_vector(const Eigen::Matrix2cd& rho) {
    return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

AnglePair angles_from_direction(const std::array<double, 3>& d, double degenerate_tol) {
    const double len = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    if (len < degenerate_tol) {
        return {0.0, 0.0};
    }
    const double theta = std::acos(std::clamp(d[2] / len, -1.0, 1.0));
    double phi = std::atan2(d[1], d[0]);
    if (phi < 0.0) {
        phi += 2.0 * std::numbers::pi;
    }
    return {theta, phi};
}

DensityMatrix partial_trace(const DensityMatrix& rho, const SiteList& keep) {
    if (keep.empty()) {
        throw DomainError("partial trace needs a non-empty set of kept sites");
    }
    check_sites(keep);
    const auto keep_pos = positions_of(rho.sites(), keep);
    const IndexSplit split = split_indices(rho.n_sites(), keep_pos);
    const auto& m = rho.matrix();
    const auto dk = static_cast<Eigen::Index>(split.dim_keep);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
    for (std::size_t t = 0; t < split.dim_trace; ++t) {
        for (std::size_t r = 0; r < split.dim_keep; ++r) {
            const auto row = static_cast<Eigen::Index>(split.full[r * split.dim_trace + t]);
            for (std::size_t c = 0; c < split.dim_keep; ++c) {
                const auto col = static_cast<Eigen::Index>(split.full[c * split.dim_trace + t]);
                out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += m(row, col);
            }
        }
    }
    return DensityMatrix::unchecked(hermitian_part(out), keep);
}

DensityMatrix reduced_density(const PureState& state, const SiteList& keep) {
    if (keep.empty()) {
        throw DomainError("reduced state needs a non-empty set of kept sites");
    }
    check_sites(keep);
    for (int s : keep) {
        if (s < 0 || s >= state.n_sites()) {
            throw DomainError("site " + std::to_string(s) + " outside the ring");
        }
    }
    const IndexSplit split = split_indices(state.n_sites(), std::vector<int>(keep.begin(), keep.end()));
    const auto& a = state.amplitudes();
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(split.dim_keep), static_cast<Eigen::Index>(split.dim_trace));
    for (std::size_t r = 0; r < split.dim_keep; ++r) {
        for (std::size_t t = 0; t < split.dim_trace; ++t) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(t)) =
                a(static_cast<Eigen::Index>(split.full[r * split.dim_trace + t]));
        }
    }
    return DensityMatrix::unchecked(hermitian_part(m * m.adjoint()), keep);
}

Eigen::VectorXd clipped_spectrum(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("Hermitian eigensolver failed", std::numeric_limits<double>::quiet_NaN());
    }
    Eigen::VectorXd ev = solver.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -kClip) {
            throw InvalidStateError("negative eigenvalue " + std::to_string(ev(i)));
        }
        ev(i) = std::max(ev(i), 0.0);
    }
    return ev;
}

double shannon_bits(std::span<const double> p) {
    double h = 0.0;
    for (double x : p) {
        if (x > 0.0) {
            h -= x * std::log2(x);
        }
    }
    return h;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const Eigen::VectorXd ev = clipped_spectrum(rho.matrix());
    return std::max(0.0, shannon_bits(std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size()))));
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DomainError("relative entropy between states of different dimension");
    }
    constexpr double kSupport = 1e-12;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sigma.matrix());
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("Hermitian eigensolver failed", std::numeric_limits<double>::quiet_NaN());
    }
    const Eigen::VectorXd& sv = solver.eigenvalues();
    const Eigen::MatrixXcd& vecs = solver.eigenvectors();
    double cross = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        const double weight = (vecs.col(i).adjoint() * rho.matrix() * vecs.col(i))(0, 0).real();
        if (sv(i) <= kSupport) {
            if (weight > kSupport) {
                return std::numeric_limits<double>::infinity();
            }
            continue;
        }
        cross -= weight * std::log2(sv(i));
    }
    const double value = cross - von_neumann_entropy(rho);
    return (value < 0.0 && value > -kClip) ? 0.0 : value;
}

double mutual_information(const DensityMatrix& rho, const SiteList& part_a) {
    if (part_a.empty() || part_a.size() >= rho.sites().size()) {
        throw DomainError("mutual information needs two non-empty parts");
    }
    check_sites(part_a);
    (void)positions_of(rho.sites(), part_a);
    SiteList part_b;
    for (int label : rho.sites()) {
        if (std::find(part_a.begin(), part_a.end(), label) == part_a.end()) {
            part_b.push_back(label);
        }
    }
    return von_neumann_entropy(partial_trace(rho, part_a)) + von_neumann_entropy(partial_trace(rho, part_b)) -
           von_neumann_entropy(rho);
}

Eigen::MatrixXcd product_rotation(const MeasurementAngles& angles) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(1, 1);
    for (const AnglePair& a : angles) {
        const Eigen::Matrix2cd r = rotation(a);
        Eigen::MatrixXcd next(u.rows() * 2, u.cols() * 2);
        for (Eigen::Index i = 0; i < u.rows(); ++i) {
            for (Eigen::Index j = 0; j < u.cols(); ++j) {
                next.block<2, 2>(2 * i, 2 * j) = u(i, j) * r;
            }
        }
        u = std::move(next);
    }
    return u;
}

DensityMatrix dephase(const DensityMatrix& rho, const MeasurementAngles& angles) {
    if (angles.size() != rho.sites().size()) {
        throw DomainError("dephasing needs one angle pair per site (" + std::to_string(rho.sites().size()) +
                          "), got " + std::to_string(angles.size()));
    }
    const Eigen::MatrixXcd u = product_rotation(angles);
    const Eigen::VectorXcd diag = (u.adjoint() * rho.matrix() * u).diagonal().real().cast<std::complex<double>>();
    return DensityMatrix::unchecked(hermitian_part(u * diag.asDiagonal() * u.adjoint()), rho.sites());
}

} // namespace tfim
