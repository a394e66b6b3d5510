#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace spdclat {

// Array of N identical waveguides with nearest-neighbor evanescent coupling.
// C_M is the largest coupling strength (mm^-1); f holds the N-1 dimensionless
// bond weights, each in (0, 1]. Boundary bonds f_0 = f_N = 0 are implicit.
struct LatticeSpec {
    int N = 1;
    double C_M = 1.0;
    std::vector<double> f;

    // Throws ConfigError on violation.
    void validate() const;

    static LatticeSpec homogeneous(int N, double C_M);
    static LatticeSpec glauber_fock(int N, double C_M);
};

// Orthogonal eigenbasis of the coupling operator. Row k of `modes` is the kth
// supermode M_{k,j}; lambda(k) is its propagation constant (mm^-1).
// Rows are ordered by descending lambda and the first nonzero entry of each
// row is positive.
struct SupermodeBasis {
    Eigen::MatrixXd modes;
    Eigen::VectorXd lambda;

    int size() const { return static_cast<int>(lambda.size()); }
};

// Bijection between (spatial j, band l) and the flat index used by the
// block-extended operators: flat = j + l*N with 0-based j in [0,N), l in [0,L).
struct ModeIndexMap {
    int N = 1;
    int L = 1;

    int total() const { return N * L; }
    int flat(int j, int l) const { return j + l * N; }
    int spatial(int idx) const { return idx % N; }
    int band(int idx) const { return idx / N; }
    std::pair<int, int> split(int idx) const { return {spatial(idx), band(idx)}; }
    // Band paired with l around the degeneracy point; self-paired center when L is odd.
    int mirror_band(int l) const { return L - 1 - l; }
};

// Symmetric tridiagonal coupling operator: zero diagonal, (j, j+1) = C_M * f_j.
Eigen::MatrixXd build_coupling_matrix(const LatticeSpec& spec);

SupermodeBasis diagonalize_lattice(const LatticeSpec& spec);

// Block-diagonal extension of M to L identical blocks (one per band).
Eigen::MatrixXd block_extend(const SupermodeBasis& basis, int L);

// Eigenvalues of the block-extended operator: lambda_flat(j + l*N) = lambda(j).
Eigen::VectorXd block_extend_lambda(const SupermodeBasis& basis, int L);

} // namespace spdclat
