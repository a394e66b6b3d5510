#include "spdclat/takagi.hpp"

#include "spdclat/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace spdclat {

double TakagiFactors::unitarity_residual() const {
    const auto n = Upsilon.rows();
    return (Upsilon * Upsilon.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

double TakagiFactors::reconstruction_residual(const Eigen::MatrixXcd& f) const {
    const Eigen::MatrixXcd rec = Upsilon * Lambda.asDiagonal() * Upsilon.transpose();
    const double scale = std::max(1.0, f.cwiseAbs().maxCoeff());
    return (rec - f).cwiseAbs().maxCoeff() / scale;
}

namespace {

// Real orthogonal F simultaneously diagonalizing the commuting real symmetric
// pair (X, Y); phases(j) = atan2 of the joint diagonal.
Eigen::MatrixXd joint_diagonalize(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                                  Eigen::VectorXd& phases) {
    const int n = static_cast<int>(X.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X);
    Eigen::MatrixXd F = es.eigenvectors();
    const Eigen::VectorXd x = es.eigenvalues();

    // Within X-degenerate groups the residual freedom is fixed by diagonalizing Y.
    int start = 0;
    while (start < n) {
        int end = start + 1;
        while (end < n && std::abs(x(end) - x(start)) <= 1e-7) ++end;
        if (end - start > 1) {
            const auto Fg = F.middleCols(start, end - start);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esy(Fg.transpose() * Y * Fg);
            F.middleCols(start, end - start) = Fg * esy.eigenvectors();
        }
        start = end;
    }

    phases.resize(n);
    const Eigen::MatrixXd xd = F.transpose() * X * F;
    const Eigen::MatrixXd yd = F.transpose() * Y * F;
    for (int j = 0; j < n; ++j) phases(j) = std::atan2(yd(j, j), xd(j, j));
    return F;
}

// Symmetric unitary square root R of a symmetric unitary T (R * R = T).
Eigen::MatrixXcd symmetric_unitary_sqrt(const Eigen::MatrixXcd& T) {
    Eigen::VectorXd phases;
    const Eigen::MatrixXd F = joint_diagonalize(T.real(), T.imag(), phases);
    Eigen::VectorXcd half(phases.size());
    for (int j = 0; j < phases.size(); ++j)
        half(j) = std::exp(std::complex<double>(0.0, 0.5 * phases(j)));
    return F * half.asDiagonal() * F.transpose();
}

} // namespace

TakagiFactors takagi(const Eigen::MatrixXcd& f, double symmetry_tol) {
    if (f.rows() != f.cols()) throw UsageError("takagi: matrix must be square");
    const int n = static_cast<int>(f.rows());
    const double fmax = f.cwiseAbs().maxCoeff();
    const double asym = (f - f.transpose()).cwiseAbs().maxCoeff();
    if (asym > symmetry_tol * std::max(fmax, 1e-300))
        throw UsageError("takagi: input is not symmetric, max |f - f^T| = " + std::to_string(asym));

    // Exact symmetrization removes roundoff asymmetry before factorizing.
    const Eigen::MatrixXcd fs = 0.5 * (f + f.transpose().eval());

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(fs, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXcd& U = svd.matrixU();
    const Eigen::MatrixXcd& V = svd.matrixV();
    const Eigen::VectorXd sigma = svd.singularValues();

    // For symmetric input, T = U^dag * conj(V) is block diagonal over clusters
    // of equal singular values, and each block is symmetric unitary. The phase
    // factor per cluster is its symmetric square root.
    const Eigen::MatrixXcd T = U.adjoint() * V.conjugate();
    Eigen::MatrixXcd R = Eigen::MatrixXcd::Identity(n, n);
    const double cluster_tol = 1e-10 * std::max(fmax, 1.0);
    const double zero_tol = 1e-14 * std::max(fmax, 1.0);
    int start = 0;
    while (start < n) {
        int end = start + 1;
        while (end < n && sigma(start) - sigma(end) <= cluster_tol) ++end;
        if (sigma(start) > zero_tol) {
            Eigen::MatrixXcd Tb = T.block(start, start, end - start, end - start);
            Tb = 0.5 * (Tb + Tb.transpose().eval());
            R.block(start, start, end - start, end - start) = symmetric_unitary_sqrt(Tb);
        }
        // zero cluster: any unitary completion works, keep the identity
        start = end;
    }

    TakagiFactors out;
    out.Upsilon = U * R;
    out.Lambda = sigma;

    // Deterministic sign convention. A column may only flip sign (phase
    // adjustments would change Upsilon * Lambda * Upsilon^T).
    for (int c = 0; c < n; ++c) {
        int imax = 0;
        double vmax = -1.0;
        for (int r = 0; r < n; ++r) {
            const double a = std::abs(out.Upsilon(r, c));
            if (a > vmax) {
                vmax = a;
                imax = r;
            }
        }
        const auto lead = out.Upsilon(imax, c);
        if (lead.real() < 0.0 || (lead.real() == 0.0 && lead.imag() < 0.0))
            out.Upsilon.col(c) = -out.Upsilon.col(c);
    }

    const double ur = out.unitarity_residual();
    if (ur > 1e-10)
        throw NumericalError("takagi: unitarity residual " + std::to_string(ur));
    const double rr = out.reconstruction_residual(fs);
    if (rr > 1e-8)
        throw NumericalError("takagi: reconstruction residual " + std::to_string(rr));
    return out;
}

GainSpectrum gains(const TakagiFactors& tf, double Gamma) {
    if (Gamma < 0.0) throw UsageError("gains: Gamma must be >= 0");
    GainSpectrum g;
    g.r = Gamma * tf.Lambda;
    return g;
}

} // namespace spdclat
