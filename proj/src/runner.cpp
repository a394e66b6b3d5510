#include "spdclat/runner.hpp"

#include "spdclat/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <string>

namespace spdclat {

double Residuals::worst() const {
    return std::max({commutator, uv_symmetry, symplectic, takagi_reconstruction, graph_roundtrip});
}

namespace {

// Upper bound on the phase rate of the slow-frame coupling, for the ODE guard.
double sampler_phase_rate(const ScenarioConfig& cfg, const SupermodeBasis& basis,
                          const FrexelBasis& frexels) {
    double rate = 2.0 * basis.lambda.cwiseAbs().maxCoeff();
    const double wmax = 0.5 * frexels.total_bandwidth();
    rate += std::abs(cfg.pm.delta_beta0) +
            2.0 * wmax * (std::abs(cfg.pm.gamma_plus) + std::abs(cfg.pm.gamma_minus));
    return rate;
}

} // namespace

SimulationResult run_scenario(const ScenarioConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    cfg.validate();

    SimulationResult res;
    res.basis = diagonalize_lattice(cfg.lattice);
    res.map = ModeIndexMap{cfg.lattice.N, cfg.L};
    const FrexelBasis frexels = make_frexels(cfg.L, cfg.delta_F);

    const bool mono = cfg.spectral_pump.kind == PumpSpectrum::Kind::Monochromatic;
    if (mono)
        res.jssa = narrowband_jssa(res.basis, cfg.L, cfg.g_sqrtP, cfg.z, cfg.pump_phase);
    else
        res.jssa = build_jssa_full(res.basis, frexels, cfg.spectral_pump, cfg.spatial_pump, cfg.pm,
                                   cfg.g_sqrtP, cfg.z, cfg.quad_order);
    res.jssa.validate();

    res.takagi_factors = takagi(res.jssa.f);
    res.gain = gains(res.takagi_factors, res.jssa.Gamma);

    switch (cfg.solver) {
        case Solver::LowGain:
            res.bog = low_gain_bogoliubov(res.basis, res.takagi_factors, res.gain, cfg.z);
            break;
        case Solver::FlatPump:
            res.bog = flat_pump_solution(res.basis, cfg.L, cfg.g_sqrtp_per_guide(), cfg.z,
                                         cfg.pump_phase);
            break;
        case Solver::Ode: {
            const CouplingSampler sampler =
                mono ? make_narrowband_sampler(res.basis, cfg.L, cfg.pump_phase)
                     : make_coupling_sampler(res.basis, frexels, cfg.spectral_pump,
                                             cfg.spatial_pump, cfg.pm, cfg.z, cfg.quad_order);
            OdeSettings settings;
            settings.h = cfg.ode_step;
            settings.phase_rate = sampler_phase_rate(cfg, res.basis, frexels);
            const auto slow = ode_oracle(sampler, cfg.g_sqrtP, cfg.z, settings);
            res.bog = to_lab_frame(slow, res.basis, cfg.L);
            break;
        }
    }

    if (cfg.idler_rotation)
        res.bog = idler_rotation(res.bog, idler_modes(res.map), 0.5 * std::numbers::pi);

    res.S = to_symplectic(res.bog);
    res.sigma = covariance(res.S);
    res.graph = graph_state(res.S);
    res.edges = classify_edges(res.graph, res.map, cfg.edge_threshold);

    res.residuals.commutator = res.bog.commutator_residual();
    res.residuals.uv_symmetry = res.bog.uvt_asymmetry();
    res.residuals.symplectic = res.S.symplectic_residual();
    res.residuals.takagi_reconstruction = res.takagi_factors.reconstruction_residual(res.jssa.f);
    res.residuals.graph_roundtrip =
        (covariance_from_graph(res.graph).sigma - res.sigma.sigma).cwiseAbs().maxCoeff();
    if (!res.residuals.within(1e-8))
        throw NumericalError("run_scenario: residuals exceed tolerance, worst = " +
                             std::to_string(res.residuals.worst()));

    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

ScenarioConfig with_parameter(const ScenarioConfig& config, const std::string& parameter,
                              double value) {
    ScenarioConfig cfg = config;
    cfg.sweep.reset();
    if (parameter == "g_sqrtp") {
        cfg.g_sqrtP = value * std::sqrt(double(cfg.lattice.N));
    } else if (parameter == "z") {
        cfg.z = value;
    } else if (parameter == "C_M") {
        cfg.lattice.C_M = value;
    } else if (parameter == "Delta_p") {
        if (cfg.spectral_pump.kind != PumpSpectrum::Kind::Gaussian)
            throw ConfigError("sweep over Delta_p requires a gaussian spectral pump");
        cfg.spectral_pump.delta_p = value;
    } else if (parameter == "Delta_F") {
        cfg.delta_F = value;
    } else {
        throw ConfigError("sweep.parameter: unknown name '" + parameter + "'");
    }
    cfg.validate();
    return cfg;
}

} // namespace spdclat
