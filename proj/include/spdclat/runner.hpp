#pragma once

#include "spdclat/gaussian_graph.hpp"
#include "spdclat/jssa.hpp"
#include "spdclat/propagate.hpp"
#include "spdclat/scenario.hpp"
#include "spdclat/takagi.hpp"

namespace spdclat {

struct Residuals {
    double commutator = 0.0;
    double uv_symmetry = 0.0;
    double symplectic = 0.0;
    double takagi_reconstruction = 0.0;
    double graph_roundtrip = 0.0;

    double worst() const;
    bool within(double tol = 1e-8) const { return worst() <= tol; }
};

struct SimulationResult {
    SupermodeBasis basis;
    ModeIndexMap map;
    Jssa jssa;
    TakagiFactors takagi_factors;
    GainSpectrum gain;
    BogoliubovTransform bog;   // lab frame, idler rotation applied when enabled
    SymplecticMatrix S;
    CovarianceMatrix sigma;
    GraphState graph;
    EdgeReport edges;
    Residuals residuals;
    double wall_seconds = 0.0;
};

// Full pipeline: lattice -> spectral -> amplitude -> factorization ->
// propagation -> graph. Throws NumericalError if any residual exceeds 1e-8.
SimulationResult run_scenario(const ScenarioConfig& config);

// Copy of the config with one sweep parameter replaced.
ScenarioConfig with_parameter(const ScenarioConfig& config, const std::string& parameter,
                              double value);

} // namespace spdclat
