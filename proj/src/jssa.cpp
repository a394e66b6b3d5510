#include "spdclat/jssa.hpp"

#include "spdclat/errors.hpp"
#include "spdclat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <tuple>

namespace spdclat {

void Jssa::validate(double tol) const {
    if (f.rows() != f.cols() || f.rows() != index_map.total())
        throw NumericalError("Jssa: dimension mismatch with index map");
    if (Gamma < 0.0) throw NumericalError("Jssa: Gamma must be >= 0");
    const double asym = (f - f.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol) throw NumericalError("Jssa: symmetry violated, max |f - f^T| = " + std::to_string(asym));
}

EtaProjection eta_project(const SupermodeBasis& basis, const SpatialPumpProfile& pump) {
    pump.validate();
    const int N = basis.size();
    if (static_cast<int>(pump.eta.size()) != N)
        throw UsageError("eta_project: pump profile size does not match lattice size");
    Eigen::VectorXcd eta(N);
    for (int j = 0; j < N; ++j) eta(j) = pump.eta[j];
    EtaProjection out;
    out.eta_kk = basis.modes * eta.asDiagonal() * basis.modes.transpose();
    return out;
}

std::complex<double> half_angle_kernel(double x, double z) {
    const double t = 0.5 * x * z;
    double sinc;
    if (std::abs(t) < 1e-8)
        sinc = 1.0 - t * t / 6.0;
    else
        sinc = std::sin(t) / t;
    return sinc * std::exp(std::complex<double>(0.0, t));
}

namespace {

int panels_for_pump(const PumpSpectrum& pump, double delta_F, int order) {
    const double scale = pump.feature_scale();
    if (!(scale > 0.0)) return 1;
    return std::clamp(static_cast<int>(std::ceil(4.0 * delta_F / scale / order)), 1, 64);
}

// >= 8 nodes per oscillation period of the phase gamma * w * z across a band.
int panels_for_oscillation(double rate, double z, double delta_F, int order) {
    const double cycles = std::abs(rate) * z * delta_F / (2.0 * std::numbers::pi);
    return std::max(1, static_cast<int>(std::ceil(8.0 * cycles / order)));
}

struct BandQuadrature {
    const FrexelBasis& fr;
    const PumpSpectrum& pump;
    const PhaseMatching& pm;
    double z;
    int order;
    int panels_s;
    int panels_i;

    BandQuadrature(const FrexelBasis& fr_, const PumpSpectrum& pump_, const PhaseMatching& pm_,
                   double z_, int order_)
        : fr(fr_), pump(pump_), pm(pm_), z(z_), order(order_) {
        const int pp = panels_for_pump(pump, fr.delta_F, order);
        const int os = panels_for_oscillation(pm.gamma_plus + pm.gamma_minus, z, fr.delta_F, order);
        const int oi = panels_for_oscillation(pm.gamma_plus - pm.gamma_minus, z, fr.delta_F, order);
        if (os > 64 || oi > 64)
            throw NumericalError("jssa quadrature: integrand oscillates too fast for order " +
                                 std::to_string(order) + " (needs > 64 panels per axis); "
                                 "increase the quadrature order or reduce z * gamma * Delta_F");
        panels_s = std::max(pp, os);
        panels_i = std::max(pp, oi);
    }

    std::complex<double> integral(int l, int lp, double mu, int ord, int ps, int pi) const {
        const double amp2 = fr.amplitude() * fr.amplitude();
        return quad::integrate2d(
            [&](double ws, double wi) -> std::complex<double> {
                const double mismatch = delta_beta(pm, ws, wi) - mu;
                return amp2 * pump_amplitude(pump, ws + wi) * half_angle_kernel(mismatch, z);
            },
            fr.lower(l), fr.upper(l), fr.lower(lp), fr.upper(lp), ord, ps, pi);
    }

    // Refine panels until order doubling moves the value by < 1e-6 relative.
    std::complex<double> converged_integral(int l, int lp, double mu,
                                            QuadratureDiagnostics& diag) const {
        int ps = panels_s, pi = panels_i;
        std::complex<double> fine;
        double rel = 0.0;
        for (int attempt = 0; attempt < 4; ++attempt) {
            const auto coarse = integral(l, lp, mu, order, ps, pi);
            fine = integral(l, lp, mu, 2 * order, ps, pi);
            rel = std::abs(fine - coarse) / std::max(std::abs(fine), 1e-300);
            if (rel <= 1e-6 || std::abs(fine) < 1e-14) break;
            if (ps >= 64 && pi >= 64) break;
            ps = std::min(2 * ps, 64);
            pi = std::min(2 * pi, 64);
        }
        // negligible entries carry no meaningful relative change
        if (std::abs(fine) >= 1e-14) {
            diag.rel_change = std::max(diag.rel_change, rel);
            if (rel > 1e-6) diag.converged = false;
        }
        return fine;
    }
};

} // namespace

Jssa build_jssa_full(const SupermodeBasis& basis, const FrexelBasis& frexels,
                     const PumpSpectrum& pump, const SpatialPumpProfile& spatial,
                     const PhaseMatching& pm, double g_sqrtP, double z, int quad_order) {
    if (pump.kind == PumpSpectrum::Kind::Monochromatic)
        throw UsageError("build_jssa_full: monochromatic pump requires narrowband_jssa");
    if (!(z > 0.0)) throw UsageError("build_jssa_full: z must be > 0");
    if (g_sqrtP < 0.0) throw UsageError("build_jssa_full: g_sqrtP must be >= 0");

    const int N = basis.size();
    const ModeIndexMap map{N, frexels.L};
    const int NN = map.total();
    const auto eta = eta_project(basis, spatial).eta_kk;
    const double eta_max = eta.cwiseAbs().maxCoeff();

    BandQuadrature bq(frexels, pump, pm, z, quad_order);
    Jssa out;
    out.f = Eigen::MatrixXcd::Zero(NN, NN);
    out.Gamma = g_sqrtP * z;
    out.z = z;
    out.index_map = map;

    // The band integral depends on (l, l') and mu = lambda_k + lambda_k' only;
    // identical keys (bitwise) are reused across supermode pairs.
    std::map<std::tuple<int, int, double>, std::complex<double>> cache;
    for (int a = 0; a < NN; ++a) {
        const auto [k, l] = map.split(a);
        for (int b = a; b < NN; ++b) {
            const auto [kp, lp] = map.split(b);
            const std::complex<double> eta_v = eta(k, kp);
            if (std::abs(eta_v) <= 1e-14 * eta_max) continue;
            const double mu = basis.lambda(k) + basis.lambda(kp);
            const auto key = std::make_tuple(l, lp, mu);
            auto it = cache.find(key);
            if (it == cache.end())
                it = cache.emplace(key, bq.converged_integral(l, lp, mu, out.quadrature)).first;
            out.f(a, b) = eta_v * it->second;
            out.f(b, a) = out.f(a, b);
        }
    }
    return out;
}

Jssa build_jssa_separable(const SupermodeBasis& basis, const FrexelBasis& frexels,
                          const PumpSpectrum& pump, const SpatialPumpProfile& spatial,
                          const PhaseMatching& pm, double g_sqrtP, double z, int quad_order) {
    if (pump.kind == PumpSpectrum::Kind::Monochromatic)
        throw UsageError("build_jssa_separable: monochromatic pump requires narrowband_jssa");
    if (!(z > 0.0)) throw UsageError("build_jssa_separable: z must be > 0");
    if (g_sqrtP < 0.0) throw UsageError("build_jssa_separable: g_sqrtP must be >= 0");

    const int N = basis.size();
    const int L = frexels.L;
    const ModeIndexMap map{N, L};
    const auto eta = eta_project(basis, spatial).eta_kk;

    Jssa out;
    out.f = Eigen::MatrixXcd::Zero(map.total(), map.total());
    out.Gamma = g_sqrtP * z;
    out.z = z;
    out.index_map = map;

    Eigen::MatrixXcd omega_ll(L, L);
    for (int l = 0; l < L; ++l)
        for (int lp = l; lp < L; ++lp) {
            QuadratureDiagnostics d;
            omega_ll(l, lp) = project_pump(pump, frexels, l, lp, quad_order, &d);
            omega_ll(lp, l) = omega_ll(l, lp);
            out.quadrature.rel_change = std::max(out.quadrature.rel_change, d.rel_change);
            out.quadrature.converged = out.quadrature.converged && d.converged;
        }

    for (int a = 0; a < map.total(); ++a) {
        const auto [k, l] = map.split(a);
        for (int b = a; b < map.total(); ++b) {
            const auto [kp, lp] = map.split(b);
            const double mismatch =
                project_delta_beta(pm, frexels, l, lp) - (basis.lambda(k) + basis.lambda(kp));
            out.f(a, b) = eta(k, kp) * omega_ll(l, lp) * half_angle_kernel(mismatch, z);
            out.f(b, a) = out.f(a, b);
        }
    }
    return out;
}

Jssa narrowband_jssa(const SupermodeBasis& basis, int L, double g_sqrtP, double z, double phi) {
    if (L < 1) throw UsageError("narrowband_jssa: L must be >= 1");
    if (z < 0.0) throw UsageError("narrowband_jssa: z must be >= 0");
    if (g_sqrtP < 0.0) throw UsageError("narrowband_jssa: g_sqrtP must be >= 0");

    const int N = basis.size();
    const ModeIndexMap map{N, L};
    const std::complex<double> amp = std::polar(1.0 / std::sqrt(double(N)), phi);

    Jssa out;
    out.f = Eigen::MatrixXcd::Zero(map.total(), map.total());
    out.Gamma = g_sqrtP * z;
    out.z = z;
    out.index_map = map;
    for (int l = 0; l < L; ++l) {
        const int lp = map.mirror_band(l);
        for (int k = 0; k < N; ++k) {
            const double lam = basis.lambda(k);
            // delta pump collapses the band integral to mismatch -2 lambda_k
            out.f(map.flat(k, l), map.flat(k, lp)) = amp * half_angle_kernel(-2.0 * lam, z);
        }
    }
    return out;
}

CouplingSampler make_coupling_sampler(const SupermodeBasis& basis, const FrexelBasis& frexels,
                                      const PumpSpectrum& pump, const SpatialPumpProfile& spatial,
                                      const PhaseMatching& pm, double z_max, int quad_order) {
    if (pump.kind == PumpSpectrum::Kind::Monochromatic)
        throw UsageError("make_coupling_sampler: monochromatic pump requires make_narrowband_sampler");
    const int N = basis.size();
    const int L = frexels.L;
    const ModeIndexMap map{N, L};
    const Eigen::MatrixXcd eta = eta_project(basis, spatial).eta_kk;
    const Eigen::VectorXd lambda = basis.lambda;

    const int pp = panels_for_pump(pump, frexels.delta_F, quad_order);
    const int os =
        panels_for_oscillation(pm.gamma_plus + pm.gamma_minus, z_max, frexels.delta_F, quad_order);
    const int oi =
        panels_for_oscillation(pm.gamma_plus - pm.gamma_minus, z_max, frexels.delta_F, quad_order);
    const int panels_s = std::max(pp, os);
    const int panels_i = std::max(pp, oi);

    FrexelBasis fr = frexels;
    PumpSpectrum pu = pump;
    PhaseMatching ph = pm;
    return [=](double z) -> Eigen::MatrixXcd {
        const double amp2 = fr.amplitude() * fr.amplitude();
        Eigen::MatrixXcd spectral(L, L);
        for (int l = 0; l < L; ++l)
            for (int lp = 0; lp < L; ++lp)
                spectral(l, lp) = quad::integrate2d(
                    [&](double ws, double wi) -> std::complex<double> {
                        const double phase = delta_beta(ph, ws, wi) * z;
                        return amp2 * pump_amplitude(pu, ws + wi) *
                               std::exp(std::complex<double>(0.0, phase));
                    },
                    fr.lower(l), fr.upper(l), fr.lower(lp), fr.upper(lp), quad_order, panels_s,
                    panels_i);

        Eigen::MatrixXcd out(map.total(), map.total());
        for (int a = 0; a < map.total(); ++a) {
            const auto [k, l] = map.split(a);
            for (int b = 0; b < map.total(); ++b) {
                const auto [kp, lp] = map.split(b);
                const double phase = -(lambda(k) + lambda(kp)) * z;
                out(a, b) =
                    eta(k, kp) * std::exp(std::complex<double>(0.0, phase)) * spectral(l, lp);
            }
        }
        return out;
    };
}

CouplingSampler make_narrowband_sampler(const SupermodeBasis& basis, int L, double phi) {
    if (L < 1) throw UsageError("make_narrowband_sampler: L must be >= 1");
    const int N = basis.size();
    const ModeIndexMap map{N, L};
    const Eigen::VectorXd lambda = basis.lambda;
    const std::complex<double> amp = std::polar(1.0 / std::sqrt(double(N)), phi);
    return [=](double z) -> Eigen::MatrixXcd {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(map.total(), map.total());
        for (int l = 0; l < L; ++l) {
            const int lp = map.mirror_band(l);
            for (int k = 0; k < N; ++k)
                out(map.flat(k, l), map.flat(k, lp)) =
                    amp * std::exp(std::complex<double>(0.0, -2.0 * lambda(k) * z));
        }
        return out;
    };
}

} // namespace spdclat
