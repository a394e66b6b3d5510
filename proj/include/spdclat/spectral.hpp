#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace spdclat {

// Contiguous rectangular frequency bands ("frexels") of width delta_F,
// symmetric about the degeneracy point. All frequencies are detunings from
// half the pump carrier, in rad/ps. Band l covers centers(l) +/- delta_F/2
// with normalized amplitude delta_F^{-1/2} inside the band.
struct FrexelBasis {
    int L = 1;
    double delta_F = 1.0;
    std::vector<double> centers;

    double lower(int l) const { return centers[l] - 0.5 * delta_F; }
    double upper(int l) const { return centers[l] + 0.5 * delta_F; }
    double amplitude() const;               // band-interior value of xi
    double total_bandwidth() const { return L * delta_F; }
};

FrexelBasis make_frexels(int L, double delta_F);

// Spectral pump amplitude as a function of the sum detuning s = (w_s + w_i) - w_h.
// Monochromatic is a distributional delta(s) consumed symbolically downstream;
// sampling it is a usage error.
struct PumpSpectrum {
    enum class Kind { Gaussian, Monochromatic, Tabulated };

    Kind kind = Kind::Monochromatic;
    double delta_p = 0.0;                                  // Gaussian width (rad/ps)
    std::vector<std::pair<double, double>> samples;        // Tabulated: (s, amplitude), s ascending

    static PumpSpectrum gaussian(double delta_p);
    static PumpSpectrum monochromatic();
    static PumpSpectrum tabulated(std::vector<std::pair<double, double>> samples);

    // Smallest spectral feature scale, used to size quadrature panels.
    double feature_scale() const;
};

double pump_amplitude(const PumpSpectrum& pump, double s);

// Normalized per-waveguide pump amplitudes, sum_j |eta_j|^2 = 1.
struct SpatialPumpProfile {
    std::vector<std::complex<double>> eta;

    void validate() const;
    bool is_flat(double tol = 1e-12) const;   // all entries equal
    static SpatialPumpProfile flat(int N, double phase);
    static SpatialPumpProfile single(int N, int j0);
};

// Linear phase-mismatch model (mm^-1):
//   delta_beta(w_s, w_i) = delta_beta0 + gamma_plus*(w_s + w_i) + gamma_minus*(w_s - w_i)
// with w_s, w_i detunings from the degeneracy point.
struct PhaseMatching {
    double delta_beta0 = 0.0;   // mm^-1
    double gamma_plus = 0.0;    // ps/mm
    double gamma_minus = 0.0;   // ps/mm
};

double delta_beta(const PhaseMatching& pm, double omega_s, double omega_i);

struct QuadratureDiagnostics {
    bool converged = true;
    double rel_change = 0.0;    // relative change when doubling the order
};

// Projection of the pump onto a band pair: integral of
// xi^l(w_s) xi^l'(w_i) Omega(w_s + w_i) over the band rectangle.
// Convergence is estimated by doubling the order; the refined value is returned.
std::complex<double> project_pump(const PumpSpectrum& pump, const FrexelBasis& frexels,
                                  int l, int lp, int order = 32,
                                  QuadratureDiagnostics* diag = nullptr);

// Band average of delta_beta; exact for the linear model (value at band centers).
double project_delta_beta(const PhaseMatching& pm, const FrexelBasis& frexels, int l, int lp);

} // namespace spdclat
