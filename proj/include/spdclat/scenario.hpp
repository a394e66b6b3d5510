#pragma once

#include "spdclat/dispersion.hpp"
#include "spdclat/lattice.hpp"
#include "spdclat/spectral.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace spdclat {

enum class Solver { LowGain, FlatPump, Ode };

Solver solver_from_string(const std::string& name);
std::string to_string(Solver solver);

struct DispersionTask {
    DispersionModel model;
    std::vector<double> f_design;
    std::vector<double> lambda_grid;   // um
};

struct SweepTask {
    std::string parameter;             // g_sqrtp | z | C_M | Delta_p | Delta_F
    std::vector<double> values;
};

// One simulation scenario, loaded from a versioned JSON config.
struct ScenarioConfig {
    int schema_version = 1;

    LatticeSpec lattice;
    int L = 2;
    double delta_F = 1.0;

    SpatialPumpProfile spatial_pump;
    bool spatial_is_flat = true;
    double pump_phase = -1.5707963267948966;   // global phase of a flat profile
    PumpSpectrum spectral_pump;

    PhaseMatching pm;
    double g_sqrtP = 0.0;   // total nonlinearity g*sqrt(P_h), mm^-1
    double z = 1.0;         // mm

    Solver solver = Solver::LowGain;
    int quad_order = 32;
    double ode_step = 0.01;
    double edge_threshold = 0.05;
    bool idler_rotation = true;

    std::optional<DispersionTask> dispersion;
    std::optional<SweepTask> sweep;

    double g_sqrtp_per_guide() const;   // g*sqrt(p_h) = g_sqrtP / sqrt(N)
    void validate() const;
};

ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig parse_config(const std::string& json_text);

// Canonical JSON echo; parsing it back reproduces the scenario exactly.
std::string echo_config(const ScenarioConfig& config);

} // namespace spdclat
