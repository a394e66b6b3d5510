#pragma once

#include "spdclat/lattice.hpp"
#include "spdclat/spectral.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>

namespace spdclat {

// Joint spatio-spectral amplitude in the linear-supermode x frexel basis.
// f is complex symmetric; Gamma = g*sqrt(P_h)*z is the total nonlinear
// amplitude carried alongside it (downstream formulas consume Gamma*f).
struct Jssa {
    Eigen::MatrixXcd f;
    double Gamma = 0.0;
    double z = 0.0;
    ModeIndexMap index_map;
    QuadratureDiagnostics quadrature;

    void validate(double tol = 1e-12) const;   // symmetry and Gamma >= 0
};

// Pump amplitudes projected onto supermode pairs:
//   eta_{k,k'} = sum_j M_{k,j} M_{k',j} eta_j  (symmetric).
struct EtaProjection {
    Eigen::MatrixXcd eta_kk;
};

EtaProjection eta_project(const SupermodeBasis& basis, const SpatialPumpProfile& pump);

// sinc(x z / 2) * exp(i x z / 2); equals (exp(ixz) - 1)/(ixz) away from 0.
std::complex<double> half_angle_kernel(double x, double z);

// Full band-pair quadrature of the pump * phase-mismatch kernel. Entries on
// the upper triangle are computed and mirrored. g_sqrtP is the total
// nonlinearity g*sqrt(P_h) in mm^-1.
Jssa build_jssa_full(const SupermodeBasis& basis, const FrexelBasis& frexels,
                     const PumpSpectrum& pump, const SpatialPumpProfile& spatial,
                     const PhaseMatching& pm, double g_sqrtP, double z, int quad_order = 32);

// High-resolution approximation: each entry is eta_{k,k'} * Omega^{l,l'} times
// the closed-form kernel at the band-averaged mismatch.
Jssa build_jssa_separable(const SupermodeBasis& basis, const FrexelBasis& frexels,
                          const PumpSpectrum& pump, const SpatialPumpProfile& spatial,
                          const PhaseMatching& pm, double g_sqrtP, double z, int quad_order = 32);

// Analytic limit for a monochromatic pump with flat spatial profile and exact
// phase matching: band l couples only to its mirror band with
//   f = exp(i phi)/sqrt(N) * sinc(lambda_k z) * exp(-i lambda_k z).
// The delta-function pump is collapsed analytically, never sampled.
Jssa narrowband_jssa(const SupermodeBasis& basis, int L, double g_sqrtP, double z,
                     double phi = -1.5707963267948966);

// z-resolved coupling matrix in the slow supermode basis, for the ODE
// integrator. z_max sizes the oscillation panels of the band quadrature.
using CouplingSampler = std::function<Eigen::MatrixXcd(double)>;

CouplingSampler make_coupling_sampler(const SupermodeBasis& basis, const FrexelBasis& frexels,
                                      const PumpSpectrum& pump, const SpatialPumpProfile& spatial,
                                      const PhaseMatching& pm, double z_max, int quad_order = 32);

CouplingSampler make_narrowband_sampler(const SupermodeBasis& basis, int L,
                                        double phi = -1.5707963267948966);

} // namespace spdclat
