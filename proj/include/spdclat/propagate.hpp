#pragma once

#include "spdclat/jssa.hpp"
#include "spdclat/lattice.hpp"
#include "spdclat/takagi.hpp"

#include <Eigen/Dense>

namespace spdclat {

// Input -> output mode map a_out = U a_in + V a_in^dag. A valid transform
// preserves bosonic commutators: U U^dag - V V^dag = I and U V^T symmetric.
struct BogoliubovTransform {
    enum class Frame { Lab, SlowSupermode };

    Eigen::MatrixXcd U;
    Eigen::MatrixXcd V;
    Frame frame = Frame::Lab;
    double z = 0.0;

    int size() const { return static_cast<int>(U.rows()); }
    double commutator_residual() const;    // max |U U^dag - V V^dag - I|
    double uvt_asymmetry() const;          // max |U V^T - (U V^T)^T|
    void check(double tol = 1e-8) const;   // throws NumericalError
};

struct OdeSettings {
    double h = 0.01;                  // step (mm)
    double max_phase_per_step = 0.1;  // rad
    double phase_rate = 0.0;          // known max dphase/dz of the sampler; 0 = skip guard

    void validate() const;
};

// Single-exponential low-gain solution: evaluates the amplitude at the final z
// and exponentiates. U = M^T D(z) Y cosh(r) Y^dag M and
// V = M^T D(z) (i Y sinh(r) Y^T) M with D(z) = diag(e^{i lambda z}); the phase
// on V makes the map the leading Magnus term of the propagation equation, so
// the ODE oracle converges to it quadratically as Gamma -> 0.
BogoliubovTransform low_gain_bogoliubov(const SupermodeBasis& basis, const TakagiFactors& tf,
                                        const GainSpectrum& gains, double z);

// Exact solution for a flat spatial pump with monochromatic spectrum: every
// band carries the same spatial map and couples only to its mirror band.
// Valid at any gain; supermodes with lambda_k^2 > (g sqrt(p_h))^2 oscillate
// instead of growing (analytic continuation across the branch).
BogoliubovTransform flat_pump_solution(const SupermodeBasis& basis, int L, double g_sqrtp,
                                       double z, double phi = -1.5707963267948966);

// Brute-force RK4 integration of the stacked (B, B^dag) transfer matrix with
// generator [[0, i g sqrtP L(z)], [-i g sqrtP conj(L(z)), 0]]. Returns the
// transform in the slow supermode frame.
BogoliubovTransform ode_oracle(const CouplingSampler& sampler, double g_sqrtP, double z,
                               const OdeSettings& settings);

// Composes a slow-frame transform with the block basis change and the free
// propagation phases: U_lab = M^T D(z) U M.
BogoliubovTransform to_lab_frame(const BogoliubovTransform& slow, const SupermodeBasis& basis,
                                 int L);

// Phase-space rotation a -> e^{i theta} a applied after propagation on the
// selected modes. theta = pi/2 exchanges x and p up to sign.
BogoliubovTransform rotate_modes(const BogoliubovTransform& bog, const std::vector<int>& modes,
                                 double theta);

// cosh(r z) and sinh(r z)/r continued across r^2 <= 0 (r^2 = kappa^2 - lambda^2).
std::pair<double, double> squeezing_kernels(double r_squared, double z);

} // namespace spdclat
