#include "spdclat/lattice.hpp"

#include "spdclat/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace spdclat {

void LatticeSpec::validate() const {
    if (N < 1) throw ConfigError("lattice.N: must be >= 1, got " + std::to_string(N));
    if (!(C_M > 0.0)) throw ConfigError("lattice.C_M: must be > 0, got " + std::to_string(C_M));
    if (static_cast<int>(f.size()) != N - 1)
        throw ConfigError("lattice.f: expected " + std::to_string(N - 1) + " bond weights, got " +
                          std::to_string(f.size()));
    for (std::size_t j = 0; j < f.size(); ++j)
        if (!(f[j] > 0.0) || f[j] > 1.0)
            throw ConfigError("lattice.f[" + std::to_string(j) + "]: must be in (0, 1], got " +
                              std::to_string(f[j]));
}

LatticeSpec LatticeSpec::homogeneous(int N, double C_M) {
    LatticeSpec s;
    s.N = N;
    s.C_M = C_M;
    s.f.assign(N > 1 ? N - 1 : 0, 1.0);
    s.validate();
    return s;
}

LatticeSpec LatticeSpec::glauber_fock(int N, double C_M) {
    LatticeSpec s;
    s.N = N;
    s.C_M = C_M;
    if (N > 1) {
        s.f.resize(N - 1);
        for (int j = 1; j < N; ++j) s.f[j - 1] = std::sqrt(double(j) / double(N - 1));
    }
    s.validate();
    return s;
}

Eigen::MatrixXd build_coupling_matrix(const LatticeSpec& spec) {
    spec.validate();
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(spec.N, spec.N);
    for (int j = 0; j + 1 < spec.N; ++j) {
        C(j, j + 1) = spec.C_M * spec.f[j];
        C(j + 1, j) = C(j, j + 1);
    }
    return C;
}

SupermodeBasis diagonalize_lattice(const LatticeSpec& spec) {
    spec.validate();
    const int N = spec.N;

    // The operator is tridiagonal with zero diagonal; positive bond weights
    // make it a Jacobi matrix, so the spectrum is simple.
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(N);
    Eigen::VectorXd sub(N > 1 ? N - 1 : 0);
    for (int j = 0; j + 1 < N; ++j) sub(j) = spec.C_M * spec.f[j];

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw NumericalError("diagonalize_lattice: tridiagonal eigensolver failed");

    // Solver returns ascending eigenvalues with eigenvectors as columns;
    // reorder to descending and store supermodes as rows.
    SupermodeBasis basis;
    basis.modes.resize(N, N);
    basis.lambda.resize(N);
    for (int k = 0; k < N; ++k) {
        const int src = N - 1 - k;
        basis.lambda(k) = solver.eigenvalues()(src);
        basis.modes.row(k) = solver.eigenvectors().col(src).transpose();
    }

    // Sign convention: first entry of each row with magnitude above threshold
    // is positive. Entries of a normalized eigenvector are O(1/sqrt(N)).
    for (int k = 0; k < N; ++k) {
        for (int j = 0; j < N; ++j) {
            const double v = basis.modes(k, j);
            if (std::abs(v) > 1e-12) {
                if (v < 0.0) basis.modes.row(k) = -basis.modes.row(k);
                break;
            }
        }
    }
    return basis;
}

Eigen::MatrixXd block_extend(const SupermodeBasis& basis, int L) {
    if (L < 1) throw UsageError("block_extend: L must be >= 1");
    const int N = basis.size();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N * L, N * L);
    for (int l = 0; l < L; ++l) M.block(l * N, l * N, N, N) = basis.modes;
    return M;
}

Eigen::VectorXd block_extend_lambda(const SupermodeBasis& basis, int L) {
    if (L < 1) throw UsageError("block_extend_lambda: L must be >= 1");
    const int N = basis.size();
    Eigen::VectorXd lam(N * L);
    for (int l = 0; l < L; ++l) lam.segment(l * N, N) = basis.lambda;
    return lam;
}

} // namespace spdclat
