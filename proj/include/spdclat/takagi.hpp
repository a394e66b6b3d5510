#pragma once

#include <Eigen/Dense>

namespace spdclat {

// Autonne-Takagi factors of a complex symmetric matrix: f = Upsilon * diag(Lambda) * Upsilon^T
// (note the transpose, not the adjoint). Upsilon is unitary, Lambda real
// nonnegative and descending.
struct TakagiFactors {
    Eigen::MatrixXcd Upsilon;
    Eigen::VectorXd Lambda;

    double unitarity_residual() const;
    double reconstruction_residual(const Eigen::MatrixXcd& f) const;   // relative to max(1, max|f|)
};

// Factorizes via SVD with a blockwise phase correction; degenerate singular
// values are handled per cluster. Input asymmetric beyond
// symmetry_tol * max|f| is rejected.
TakagiFactors takagi(const Eigen::MatrixXcd& f, double symmetry_tol = 1e-8);

// Per-mode downconversion gains r_m = Gamma * Lambda_m.
struct GainSpectrum {
    Eigen::VectorXd r;
};

GainSpectrum gains(const TakagiFactors& tf, double Gamma);

} // namespace spdclat
