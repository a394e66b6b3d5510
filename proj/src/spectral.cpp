#include "spdclat/spectral.hpp"

#include "spdclat/errors.hpp"
#include "spdclat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace spdclat {

double FrexelBasis::amplitude() const {
    return 1.0 / std::sqrt(delta_F);
}

FrexelBasis make_frexels(int L, double delta_F) {
    if (L < 1) throw ConfigError("frexels.L: must be >= 1, got " + std::to_string(L));
    if (!(delta_F > 0.0))
        throw ConfigError("frexels.Delta_F: must be > 0, got " + std::to_string(delta_F));
    FrexelBasis basis;
    basis.L = L;
    basis.delta_F = delta_F;
    basis.centers.resize(L);
    for (int l = 0; l < L; ++l) basis.centers[l] = (l + 1 - 0.5 * (L + 1)) * delta_F;
    return basis;
}

PumpSpectrum PumpSpectrum::gaussian(double delta_p) {
    if (!(delta_p > 0.0))
        throw ConfigError("pump.Delta_p: must be > 0, got " + std::to_string(delta_p));
    PumpSpectrum p;
    p.kind = Kind::Gaussian;
    p.delta_p = delta_p;
    return p;
}

PumpSpectrum PumpSpectrum::monochromatic() {
    PumpSpectrum p;
    p.kind = Kind::Monochromatic;
    return p;
}

PumpSpectrum PumpSpectrum::tabulated(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw ConfigError("pump.samples: need at least 2 samples");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i].first > samples[i - 1].first))
            throw ConfigError("pump.samples: abscissae must be strictly ascending");
    PumpSpectrum p;
    p.kind = Kind::Tabulated;
    p.samples = std::move(samples);
    return p;
}

double PumpSpectrum::feature_scale() const {
    switch (kind) {
        case Kind::Gaussian:
            return delta_p;
        case Kind::Tabulated: {
            double dmin = std::numeric_limits<double>::infinity();
            for (std::size_t i = 1; i < samples.size(); ++i)
                dmin = std::min(dmin, samples[i].first - samples[i - 1].first);
            return dmin;
        }
        case Kind::Monochromatic:
            return 0.0;
    }
    return 0.0;
}

double pump_amplitude(const PumpSpectrum& pump, double s) {
    switch (pump.kind) {
        case PumpSpectrum::Kind::Gaussian: {
            const double norm = std::pow(std::sqrt(2.0 * std::numbers::pi) * pump.delta_p, -0.5);
            return norm * std::exp(-s * s / (4.0 * pump.delta_p * pump.delta_p));
        }
        case PumpSpectrum::Kind::Tabulated: {
            const auto& t = pump.samples;
            if (s <= t.front().first || s >= t.back().first) {
                // zero outside the table, with exact endpoint values
                if (s == t.front().first) return t.front().second;
                if (s == t.back().first) return t.back().second;
                return 0.0;
            }
            auto hi = std::upper_bound(t.begin(), t.end(), s,
                                       [](double v, const auto& p) { return v < p.first; });
            auto lo = hi - 1;
            const double w = (s - lo->first) / (hi->first - lo->first);
            return (1.0 - w) * lo->second + w * hi->second;
        }
        case PumpSpectrum::Kind::Monochromatic:
            throw UsageError("pump_amplitude: monochromatic pump cannot be sampled");
    }
    throw UsageError("pump_amplitude: unknown pump kind");
}

void SpatialPumpProfile::validate() const {
    if (eta.empty()) throw ConfigError("pump.eta: must not be empty");
    double norm = 0.0;
    for (const auto& e : eta) norm += std::norm(e);
    if (std::abs(norm - 1.0) > 1e-10)
        throw ConfigError("pump.eta: must be normalized, sum |eta_j|^2 = " + std::to_string(norm));
}

bool SpatialPumpProfile::is_flat(double tol) const {
    for (std::size_t j = 1; j < eta.size(); ++j)
        if (std::abs(eta[j] - eta[0]) > tol) return false;
    return true;
}

SpatialPumpProfile SpatialPumpProfile::flat(int N, double phase) {
    if (N < 1) throw ConfigError("pump.eta: N must be >= 1");
    SpatialPumpProfile p;
    p.eta.assign(N, std::polar(1.0 / std::sqrt(double(N)), phase));
    return p;
}

SpatialPumpProfile SpatialPumpProfile::single(int N, int j0) {
    if (N < 1) throw ConfigError("pump.eta: N must be >= 1");
    if (j0 < 0 || j0 >= N)
        throw ConfigError("pump.single_waveguide: index out of range [0, " + std::to_string(N) + ")");
    SpatialPumpProfile p;
    p.eta.assign(N, 0.0);
    p.eta[j0] = 1.0;
    return p;
}

double delta_beta(const PhaseMatching& pm, double omega_s, double omega_i) {
    return pm.delta_beta0 + pm.gamma_plus * (omega_s + omega_i) + pm.gamma_minus * (omega_s - omega_i);
}

namespace {

// Panels per axis so that the pump's feature scale is resolved with at least
// ~4 nodes and the result can still converge under order doubling.
int pump_panels(const PumpSpectrum& pump, double delta_F, int order) {
    const double scale = pump.feature_scale();
    if (!(scale > 0.0)) return 1;
    const double nodes_needed = 4.0 * delta_F / scale;
    const int panels = static_cast<int>(std::ceil(nodes_needed / order));
    return std::clamp(panels, 1, 64);
}

std::complex<double> pump_band_integral(const PumpSpectrum& pump, const FrexelBasis& fr,
                                        int l, int lp, int order, int panels) {
    const double amp2 = fr.amplitude() * fr.amplitude();
    return quad::integrate2d(
        [&](double ws, double wi) -> std::complex<double> {
            return amp2 * pump_amplitude(pump, ws + wi);
        },
        fr.lower(l), fr.upper(l), fr.lower(lp), fr.upper(lp), order, panels, panels);
}

} // namespace

std::complex<double> project_pump(const PumpSpectrum& pump, const FrexelBasis& frexels,
                                  int l, int lp, int order, QuadratureDiagnostics* diag) {
    if (pump.kind == PumpSpectrum::Kind::Monochromatic)
        throw UsageError("project_pump: monochromatic pump is handled symbolically");
    if (l < 0 || l >= frexels.L || lp < 0 || lp >= frexels.L)
        throw UsageError("project_pump: band index out of range");
    const int panels = pump_panels(pump, frexels.delta_F, order);
    const auto coarse = pump_band_integral(pump, frexels, l, lp, order, panels);
    const auto fine = pump_band_integral(pump, frexels, l, lp, 2 * order, panels);
    if (diag) {
        const double scale = std::max(std::abs(fine), 1e-300);
        diag->rel_change = std::abs(fine - coarse) / scale;
        diag->converged = diag->rel_change <= 1e-6;
    }
    return fine;
}

double project_delta_beta(const PhaseMatching& pm, const FrexelBasis& frexels, int l, int lp) {
    if (l < 0 || l >= frexels.L || lp < 0 || lp >= frexels.L)
        throw UsageError("project_delta_beta: band index out of range");
    return delta_beta(pm, frexels.centers[l], frexels.centers[lp]);
}

} // namespace spdclat
