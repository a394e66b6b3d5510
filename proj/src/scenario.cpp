#include "spdclat/scenario.hpp"

#include "spdclat/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace spdclat {

using json = nlohmann::ordered_json;

Solver solver_from_string(const std::string& name) {
    if (name == "low_gain") return Solver::LowGain;
    if (name == "flat_pump") return Solver::FlatPump;
    if (name == "ode") return Solver::Ode;
    throw ConfigError("solver: unknown name '" + name + "' (expected low_gain, flat_pump or ode)");
}

std::string to_string(Solver solver) {
    switch (solver) {
        case Solver::LowGain: return "low_gain";
        case Solver::FlatPump: return "flat_pump";
        case Solver::Ode: return "ode";
    }
    return "unknown";
}

double ScenarioConfig::g_sqrtp_per_guide() const {
    return g_sqrtP / std::sqrt(double(lattice.N));
}

void ScenarioConfig::validate() const {
    lattice.validate();
    if (L < 1) throw ConfigError("frexels.L: must be >= 1");
    if (!(delta_F > 0.0)) throw ConfigError("frexels.Delta_F: must be > 0");
    spatial_pump.validate();
    if (static_cast<int>(spatial_pump.eta.size()) != lattice.N)
        throw ConfigError("pump.spatial: profile length does not match lattice.N");
    if (g_sqrtP < 0.0) throw ConfigError("nonlinearity: must be >= 0");
    if (!(z > 0.0)) throw ConfigError("z: must be > 0");
    if (quad_order < 2) throw ConfigError("quadrature_order: must be >= 2");
    if (!(ode_step > 0.0)) throw ConfigError("ode_step: must be > 0");
    if (!(edge_threshold > 0.0)) throw ConfigError("edge_threshold: must be > 0");

    const bool mono = spectral_pump.kind == PumpSpectrum::Kind::Monochromatic;
    if (solver == Solver::FlatPump && !(spatial_is_flat && mono))
        throw ConfigError("solver flat_pump requires a flat spatial profile and a "
                          "monochromatic spectral pump");
    if (mono && !spatial_is_flat)
        throw ConfigError("pump: a monochromatic spectral pump is only supported with a flat "
                          "spatial profile");
    if (sweep) {
        static const std::vector<std::string> known = {"g_sqrtp", "z", "C_M", "Delta_p", "Delta_F"};
        bool ok = false;
        for (const auto& k : known) ok = ok || k == sweep->parameter;
        if (!ok) throw ConfigError("sweep.parameter: unknown name '" + sweep->parameter + "'");
        if (sweep->values.empty()) throw ConfigError("sweep.values: must not be empty");
        if (sweep->parameter == "Delta_p" &&
            spectral_pump.kind != PumpSpectrum::Kind::Gaussian)
            throw ConfigError("sweep over Delta_p requires a gaussian spectral pump");
    }
}

namespace {

const json& require(const json& j, const std::string& key, const std::string& context) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(context + ": missing required field '" + key + "'");
    return *it;
}

template <typename T>
T as(const json& j, const std::string& context) {
    try {
        return j.get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(context + ": " + e.what());
    }
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback, const std::string& context) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    return as<T>(*it, context + "." + key);
}

LatticeSpec parse_lattice(const json& j) {
    LatticeSpec spec;
    spec.N = as<int>(require(j, "N", "lattice"), "lattice.N");
    spec.C_M = as<double>(require(j, "C_M", "lattice"), "lattice.C_M");
    if (j.contains("f")) {
        spec.f = as<std::vector<double>>(j["f"], "lattice.f");
    } else {
        const auto profile = get_or<std::string>(j, "profile", "homogeneous", "lattice");
        if (profile == "homogeneous")
            spec.f.assign(spec.N > 1 ? spec.N - 1 : 0, 1.0);
        else if (profile == "glauber_fock")
            spec = LatticeSpec::glauber_fock(spec.N, spec.C_M);
        else
            throw ConfigError("lattice.profile: unknown name '" + profile + "'");
    }
    spec.validate();
    return spec;
}

void parse_pump(const json& j, ScenarioConfig& cfg) {
    const json& spatial = require(j, "spatial", "pump");
    const auto kind = as<std::string>(require(spatial, "kind", "pump.spatial"), "pump.spatial.kind");
    cfg.pump_phase = get_or<double>(spatial, "phase", -1.5707963267948966, "pump.spatial");
    if (kind == "flat") {
        cfg.spatial_pump = SpatialPumpProfile::flat(cfg.lattice.N, cfg.pump_phase);
        cfg.spatial_is_flat = true;
    } else if (kind == "single") {
        const int wg = as<int>(require(spatial, "waveguide", "pump.spatial"), "pump.spatial.waveguide");
        if (wg < 1 || wg > cfg.lattice.N)
            throw ConfigError("pump.spatial.waveguide: out of range [1, " +
                              std::to_string(cfg.lattice.N) + "]");
        cfg.spatial_pump = SpatialPumpProfile::single(cfg.lattice.N, wg - 1);
        cfg.spatial_is_flat = cfg.lattice.N == 1;
    } else if (kind == "explicit") {
        const auto pairs = as<std::vector<std::vector<double>>>(
            require(spatial, "eta", "pump.spatial"), "pump.spatial.eta");
        cfg.spatial_pump.eta.clear();
        for (const auto& p : pairs) {
            if (p.size() != 2) throw ConfigError("pump.spatial.eta: entries must be [re, im] pairs");
            cfg.spatial_pump.eta.emplace_back(p[0], p[1]);
        }
        cfg.spatial_is_flat = cfg.spatial_pump.is_flat();
    } else {
        throw ConfigError("pump.spatial.kind: unknown kind '" + kind + "'");
    }

    const json& spectral = require(j, "spectral", "pump");
    const auto skind =
        as<std::string>(require(spectral, "kind", "pump.spectral"), "pump.spectral.kind");
    if (skind == "monochromatic") {
        cfg.spectral_pump = PumpSpectrum::monochromatic();
    } else if (skind == "gaussian") {
        cfg.spectral_pump = PumpSpectrum::gaussian(
            as<double>(require(spectral, "Delta_p", "pump.spectral"), "pump.spectral.Delta_p"));
    } else if (skind == "tabulated") {
        const auto rows = as<std::vector<std::vector<double>>>(
            require(spectral, "samples", "pump.spectral"), "pump.spectral.samples");
        std::vector<std::pair<double, double>> samples;
        for (const auto& r : rows) {
            if (r.size() != 2)
                throw ConfigError("pump.spectral.samples: entries must be [s, amplitude] pairs");
            samples.emplace_back(r[0], r[1]);
        }
        cfg.spectral_pump = PumpSpectrum::tabulated(std::move(samples));
    } else {
        throw ConfigError("pump.spectral.kind: unknown kind '" + skind + "'");
    }
}

DispersionTask parse_dispersion(const json& j) {
    DispersionTask task;
    task.model.C_0 = get_or<double>(j, "C_0", task.model.C_0, "dispersion");
    task.model.Gamma_0 = get_or<double>(j, "Gamma_0", task.model.Gamma_0, "dispersion");
    task.model.lambda_0 = get_or<double>(j, "lambda_0", task.model.lambda_0, "dispersion");
    task.model.d_m = get_or<double>(j, "d_m", task.model.d_m, "dispersion");
    task.model.d_valid_min = get_or<double>(j, "d_valid_min", task.model.d_valid_min, "dispersion");
    if (j.contains("index")) {
        const json& idx = j["index"];
        const auto kind = get_or<std::string>(idx, "kind", "sellmeier", "dispersion.index");
        if (kind == "sellmeier") {
            task.model.index.kind = IndexModel::Kind::Sellmeier;
            task.model.index.B = get_or<std::vector<double>>(idx, "B", task.model.index.B,
                                                             "dispersion.index");
            task.model.index.C = get_or<std::vector<double>>(idx, "C", task.model.index.C,
                                                             "dispersion.index");
        } else if (kind == "tabulated") {
            task.model.index.kind = IndexModel::Kind::Tabulated;
            const auto rows = as<std::vector<std::vector<double>>>(
                require(idx, "table", "dispersion.index"), "dispersion.index.table");
            task.model.index.table.clear();
            for (const auto& r : rows) {
                if (r.size() != 2)
                    throw ConfigError("dispersion.index.table: entries must be [lambda, n] pairs");
                task.model.index.table.emplace_back(r[0], r[1]);
            }
        } else {
            throw ConfigError("dispersion.index.kind: unknown kind '" + kind + "'");
        }
        task.model.index.lambda_min =
            get_or<double>(idx, "lambda_min", task.model.index.lambda_min, "dispersion.index");
        task.model.index.lambda_max =
            get_or<double>(idx, "lambda_max", task.model.index.lambda_max, "dispersion.index");
    }
    task.model.validate();

    if (j.contains("f_design")) {
        task.f_design = as<std::vector<double>>(j["f_design"], "dispersion.f_design");
    } else {
        const auto profile = get_or<std::string>(j, "profile", "homogeneous", "dispersion");
        const int N = as<int>(require(j, "N", "dispersion"), "dispersion.N");
        if (N < 2) throw ConfigError("dispersion.N: must be >= 2 for a named profile");
        if (profile == "homogeneous") {
            task.f_design.assign(N - 1, 1.0);
        } else if (profile == "glauber_fock") {
            task.f_design = LatticeSpec::glauber_fock(N, 1.0).f;
        } else {
            throw ConfigError("dispersion.profile: unknown name '" + profile + "'");
        }
    }

    if (j.contains("lambda_grid")) {
        task.lambda_grid = as<std::vector<double>>(j["lambda_grid"], "dispersion.lambda_grid");
    } else if (j.contains("lambda_span")) {
        const json& span = j["lambda_span"];
        const double lo = as<double>(require(span, "min", "dispersion.lambda_span"),
                                     "dispersion.lambda_span.min");
        const double hi = as<double>(require(span, "max", "dispersion.lambda_span"),
                                     "dispersion.lambda_span.max");
        const double step = as<double>(require(span, "step", "dispersion.lambda_span"),
                                       "dispersion.lambda_span.step");
        if (!(step > 0.0) || !(hi >= lo))
            throw ConfigError("dispersion.lambda_span: need max >= min and step > 0");
        const int count = static_cast<int>(std::floor((hi - lo) / step + 0.5)) + 1;
        for (int i = 0; i < count; ++i) task.lambda_grid.push_back(lo + i * step);
    } else {
        task.lambda_grid = {task.model.lambda_0};
    }
    if (task.lambda_grid.empty()) throw ConfigError("dispersion.lambda_grid: must not be empty");
    return task;
}

} // namespace

ScenarioConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }

    ScenarioConfig cfg;
    cfg.schema_version = get_or<int>(j, "schema_version", 1, "config");
    if (cfg.schema_version != 1)
        throw ConfigError("schema_version: unsupported version " +
                          std::to_string(cfg.schema_version));

    cfg.lattice = parse_lattice(require(j, "lattice", "config"));

    const json& fr = require(j, "frexels", "config");
    cfg.L = as<int>(require(fr, "L", "frexels"), "frexels.L");
    cfg.delta_F = as<double>(require(fr, "Delta_F", "frexels"), "frexels.Delta_F");

    parse_pump(require(j, "pump", "config"), cfg);

    if (j.contains("phasematching")) {
        const json& pm = j["phasematching"];
        cfg.pm.delta_beta0 = get_or<double>(pm, "delta_beta0", 0.0, "phasematching");
        cfg.pm.gamma_plus = get_or<double>(pm, "gamma_plus", 0.0, "phasematching");
        cfg.pm.gamma_minus = get_or<double>(pm, "gamma_minus", 0.0, "phasematching");
    }

    const json& nl = require(j, "nonlinearity", "config");
    if (nl.contains("g_sqrt_Ph") && nl.contains("g_sqrt_ph"))
        throw ConfigError("nonlinearity: give either g_sqrt_Ph (total) or g_sqrt_ph (per "
                          "waveguide), not both");
    if (nl.contains("g_sqrt_Ph"))
        cfg.g_sqrtP = as<double>(nl["g_sqrt_Ph"], "nonlinearity.g_sqrt_Ph");
    else if (nl.contains("g_sqrt_ph"))
        cfg.g_sqrtP = as<double>(nl["g_sqrt_ph"], "nonlinearity.g_sqrt_ph") *
                      std::sqrt(double(cfg.lattice.N));
    else
        throw ConfigError("nonlinearity: missing g_sqrt_Ph or g_sqrt_ph");

    cfg.z = as<double>(require(j, "z", "config"), "z");
    cfg.solver = solver_from_string(get_or<std::string>(j, "solver", "low_gain", "config"));
    cfg.quad_order = get_or<int>(j, "quadrature_order", 32, "config");
    cfg.ode_step = get_or<double>(j, "ode_step", 0.01, "config");
    cfg.edge_threshold = get_or<double>(j, "edge_threshold", 0.05, "config");
    cfg.idler_rotation = get_or<bool>(j, "idler_rotation", true, "config");

    if (j.contains("dispersion")) cfg.dispersion = parse_dispersion(j["dispersion"]);

    if (j.contains("sweep")) {
        SweepTask sweep;
        const json& sw = j["sweep"];
        sweep.parameter =
            as<std::string>(require(sw, "parameter", "sweep"), "sweep.parameter");
        sweep.values = as<std::vector<double>>(require(sw, "values", "sweep"), "sweep.values");
        cfg.sweep = sweep;
    }

    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string echo_config(const ScenarioConfig& cfg) {
    json j;
    j["schema_version"] = cfg.schema_version;
    j["lattice"] = {{"N", cfg.lattice.N}, {"C_M", cfg.lattice.C_M}, {"f", cfg.lattice.f}};

    j["frexels"] = {{"L", cfg.L}, {"Delta_F", cfg.delta_F}};

    json spatial;
    if (cfg.spatial_is_flat && cfg.lattice.N > 0) {
        spatial = {{"kind", "flat"}, {"phase", cfg.pump_phase}};
    } else {
        std::vector<std::vector<double>> eta;
        for (const auto& e : cfg.spatial_pump.eta) eta.push_back({e.real(), e.imag()});
        spatial = {{"kind", "explicit"}, {"eta", eta}};
    }
    json spectral;
    switch (cfg.spectral_pump.kind) {
        case PumpSpectrum::Kind::Monochromatic:
            spectral = {{"kind", "monochromatic"}};
            break;
        case PumpSpectrum::Kind::Gaussian:
            spectral = {{"kind", "gaussian"}, {"Delta_p", cfg.spectral_pump.delta_p}};
            break;
        case PumpSpectrum::Kind::Tabulated: {
            std::vector<std::vector<double>> rows;
            for (const auto& s : cfg.spectral_pump.samples) rows.push_back({s.first, s.second});
            spectral = {{"kind", "tabulated"}, {"samples", rows}};
            break;
        }
    }
    j["pump"] = {{"spatial", spatial}, {"spectral", spectral}};

    j["phasematching"] = {{"delta_beta0", cfg.pm.delta_beta0},
                          {"gamma_plus", cfg.pm.gamma_plus},
                          {"gamma_minus", cfg.pm.gamma_minus}};
    j["nonlinearity"] = {{"g_sqrt_Ph", cfg.g_sqrtP}};
    j["z"] = cfg.z;
    j["solver"] = to_string(cfg.solver);
    j["quadrature_order"] = cfg.quad_order;
    j["ode_step"] = cfg.ode_step;
    j["edge_threshold"] = cfg.edge_threshold;
    j["idler_rotation"] = cfg.idler_rotation;

    if (cfg.sweep)
        j["sweep"] = {{"parameter", cfg.sweep->parameter}, {"values", cfg.sweep->values}};

    return j.dump(2);
}

} // namespace spdclat
