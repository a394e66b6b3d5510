#include "spdclat/propagate.hpp"

#include "spdclat/errors.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace spdclat {

namespace {

using Complex = std::complex<double>;

Eigen::VectorXcd propagation_phases(const SupermodeBasis& basis, int L, double z) {
    const Eigen::VectorXd lam = block_extend_lambda(basis, L);
    Eigen::VectorXcd d(lam.size());
    for (int i = 0; i < lam.size(); ++i) d(i) = std::exp(Complex(0.0, lam(i) * z));
    return d;
}

} // namespace

double BogoliubovTransform::commutator_residual() const {
    const int n = size();
    return (U * U.adjoint() - V * V.adjoint() - Eigen::MatrixXcd::Identity(n, n))
        .cwiseAbs()
        .maxCoeff();
}

double BogoliubovTransform::uvt_asymmetry() const {
    const Eigen::MatrixXcd uvt = U * V.transpose();
    return (uvt - uvt.transpose()).cwiseAbs().maxCoeff();
}

void BogoliubovTransform::check(double tol) const {
    const double c = commutator_residual();
    if (c > tol)
        throw NumericalError("BogoliubovTransform: commutator residual " + std::to_string(c));
    const double s = uvt_asymmetry();
    if (s > tol)
        throw NumericalError("BogoliubovTransform: U V^T asymmetry " + std::to_string(s));
}

void OdeSettings::validate() const {
    if (!(h > 0.0)) throw ConfigError("ode.h: step must be > 0");
    if (!(max_phase_per_step > 0.0)) throw ConfigError("ode.max_phase_per_step: must be > 0");
    if (phase_rate > 0.0 && h * phase_rate >= max_phase_per_step)
        throw ConfigError("ode.h: step " + std::to_string(h) + " violates the phase guard (h * " +
                          std::to_string(phase_rate) + " >= " + std::to_string(max_phase_per_step) +
                          ")");
}

BogoliubovTransform low_gain_bogoliubov(const SupermodeBasis& basis, const TakagiFactors& tf,
                                        const GainSpectrum& gains, double z) {
    const int N = basis.size();
    const int NN = static_cast<int>(tf.Upsilon.rows());
    if (NN % N != 0)
        throw UsageError("low_gain_bogoliubov: Takagi dimension is not a multiple of the lattice size");
    const int L = NN / N;
    if (gains.r.size() != NN) throw UsageError("low_gain_bogoliubov: gain spectrum size mismatch");

    Eigen::VectorXd ch(NN), sh(NN);
    for (int m = 0; m < NN; ++m) {
        ch(m) = std::cosh(gains.r(m));
        sh(m) = std::sinh(gains.r(m));
    }
    const Eigen::MatrixXcd U_B = tf.Upsilon * ch.asDiagonal() * tf.Upsilon.adjoint();
    const Eigen::MatrixXcd V_B =
        Complex(0.0, 1.0) * (tf.Upsilon * sh.asDiagonal() * tf.Upsilon.transpose());

    const Eigen::MatrixXd Mb = block_extend(basis, L);
    const Eigen::VectorXcd D = propagation_phases(basis, L, z);

    BogoliubovTransform out;
    out.U = Mb.transpose() * (D.asDiagonal() * (U_B * Mb));
    out.V = Mb.transpose() * (D.asDiagonal() * (V_B * Mb));
    out.frame = BogoliubovTransform::Frame::Lab;
    out.z = z;
    out.check();
    return out;
}

std::pair<double, double> squeezing_kernels(double r_squared, double z) {
    const double x = r_squared * z * z;   // (r z)^2, sign carries the branch
    if (std::abs(x) < 1e-8) {
        const double c = 1.0 + x / 2.0 + x * x / 24.0;
        const double s = z * (1.0 + x / 6.0 + x * x / 120.0);
        return {c, s};
    }
    if (r_squared > 0.0) {
        const double r = std::sqrt(r_squared);
        return {std::cosh(r * z), std::sinh(r * z) / r};
    }
    const double rho = std::sqrt(-r_squared);
    return {std::cos(rho * z), std::sin(rho * z) / rho};
}

BogoliubovTransform flat_pump_solution(const SupermodeBasis& basis, int L, double g_sqrtp,
                                       double z, double phi) {
    if (L < 1) throw UsageError("flat_pump_solution: L must be >= 1");
    if (g_sqrtp < 0.0) throw UsageError("flat_pump_solution: g_sqrtp must be >= 0");
    const int N = basis.size();
    const ModeIndexMap map{N, L};

    Eigen::VectorXcd cdiag(N), vdiag(N);
    const Complex coupling_phase = std::exp(Complex(0.0, phi + 0.5 * std::numbers::pi));
    for (int k = 0; k < N; ++k) {
        const double lam = basis.lambda(k);
        const auto [c, s] = squeezing_kernels(g_sqrtp * g_sqrtp - lam * lam, z);
        cdiag(k) = Complex(c, lam * s);
        vdiag(k) = coupling_phase * (g_sqrtp * s);
    }
    const Eigen::MatrixXcd Ublock =
        basis.modes.transpose() * cdiag.asDiagonal() * basis.modes;
    const Eigen::MatrixXcd Vblock =
        basis.modes.transpose() * vdiag.asDiagonal() * basis.modes;

    BogoliubovTransform out;
    out.U = Eigen::MatrixXcd::Zero(map.total(), map.total());
    out.V = Eigen::MatrixXcd::Zero(map.total(), map.total());
    out.frame = BogoliubovTransform::Frame::Lab;
    out.z = z;
    for (int l = 0; l < L; ++l) {
        out.U.block(l * N, l * N, N, N) = Ublock;
        out.V.block(l * N, map.mirror_band(l) * N, N, N) = Vblock;
    }
    out.check();
    return out;
}

BogoliubovTransform ode_oracle(const CouplingSampler& sampler, double g_sqrtP, double z,
                               const OdeSettings& settings) {
    settings.validate();
    if (!(z > 0.0)) throw UsageError("ode_oracle: z must be > 0");
    if (g_sqrtP < 0.0) throw UsageError("ode_oracle: g_sqrtP must be >= 0");

    const Eigen::MatrixXcd L0 = sampler(0.0);
    if (L0.rows() != L0.cols()) throw UsageError("ode_oracle: sampler must return a square matrix");
    const int NN = static_cast<int>(L0.rows());

    const int steps = std::max(1, static_cast<int>(std::ceil(z / settings.h - 1e-12)));
    const double h = z / steps;

    const auto generator = [&](const Eigen::MatrixXcd& Lz) {
        const double scale = std::max(Lz.cwiseAbs().maxCoeff(), 1e-300);
        const double asym = (Lz - Lz.transpose()).cwiseAbs().maxCoeff();
        if (asym > 1e-10 * scale)
            throw NumericalError("ode_oracle: coupling matrix is not symmetric at a sampled z");
        Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(2 * NN, 2 * NN);
        G.topRightCorner(NN, NN) = Complex(0.0, g_sqrtP) * Lz;
        G.bottomLeftCorner(NN, NN) = Complex(0.0, -g_sqrtP) * Lz.conjugate();
        return G;
    };

    Eigen::MatrixXcd T = Eigen::MatrixXcd::Identity(2 * NN, 2 * NN);
    Eigen::MatrixXcd G0 = generator(L0);
    const int check_every = std::max(1, steps / 10);
    for (int s = 0; s < steps; ++s) {
        const double zs = s * h;
        const Eigen::MatrixXcd Gm = generator(sampler(zs + 0.5 * h));
        const Eigen::MatrixXcd G1 = generator(sampler(zs + h));
        const Eigen::MatrixXcd k1 = G0 * T;
        const Eigen::MatrixXcd k2 = Gm * (T + (0.5 * h) * k1);
        const Eigen::MatrixXcd k3 = Gm * (T + (0.5 * h) * k2);
        const Eigen::MatrixXcd k4 = G1 * (T + h * k3);
        T += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        G0 = G1;

        if ((s + 1) % check_every == 0 || s + 1 == steps) {
            BogoliubovTransform probe;
            probe.U = T.topLeftCorner(NN, NN);
            probe.V = T.topRightCorner(NN, NN);
            const double drift = probe.commutator_residual();
            if (drift > 1e-6)
                throw NumericalError("ode_oracle: commutator drift " + std::to_string(drift) +
                                     " at z = " + std::to_string(zs + h) +
                                     "; reduce the step size");
        }
    }

    BogoliubovTransform out;
    out.U = T.topLeftCorner(NN, NN);
    out.V = T.topRightCorner(NN, NN);
    out.frame = BogoliubovTransform::Frame::SlowSupermode;
    out.z = z;
    return out;
}

BogoliubovTransform to_lab_frame(const BogoliubovTransform& slow, const SupermodeBasis& basis,
                                 int L) {
    if (slow.frame != BogoliubovTransform::Frame::SlowSupermode)
        throw UsageError("to_lab_frame: transform is not in the slow supermode frame");
    if (slow.size() != basis.size() * L)
        throw UsageError("to_lab_frame: dimension mismatch");
    const Eigen::MatrixXd Mb = block_extend(basis, L);
    const Eigen::VectorXcd D = propagation_phases(basis, L, slow.z);

    BogoliubovTransform out;
    out.U = Mb.transpose() * (D.asDiagonal() * (slow.U * Mb));
    out.V = Mb.transpose() * (D.asDiagonal() * (slow.V * Mb));
    out.frame = BogoliubovTransform::Frame::Lab;
    out.z = slow.z;
    return out;
}

BogoliubovTransform rotate_modes(const BogoliubovTransform& bog, const std::vector<int>& modes,
                                 double theta) {
    const int n = bog.size();
    Eigen::VectorXcd phases = Eigen::VectorXcd::Ones(n);
    for (int m : modes) {
        if (m < 0 || m >= n) throw UsageError("rotate_modes: mode index out of range");
        phases(m) = std::exp(Complex(0.0, theta));
    }
    BogoliubovTransform out = bog;
    out.U = phases.asDiagonal() * bog.U;
    out.V = phases.asDiagonal() * bog.V;
    return out;
}

} // namespace spdclat
