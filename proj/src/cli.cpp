#include "spdclat/cli.hpp"

#include "spdclat/dispersion.hpp"
#include "spdclat/errors.hpp"
#include "spdclat/matrix_io.hpp"
#include "spdclat/runner.hpp"
#include "spdclat/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

namespace spdclat::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_dir = "out";
    std::string solver_override;
    int threads = 0;
};

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("SPDCLAT_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ScenarioConfig load_scenario(const CommonOptions& opts) {
    ScenarioConfig cfg = load_config(opts.config_path);
    if (!opts.solver_override.empty()) {
        cfg.solver = solver_from_string(opts.solver_override);
        cfg.validate();
    }
    return cfg;
}

json residuals_json(const Residuals& r) {
    return json{{"commutator", r.commutator},
                {"uv_symmetry", r.uv_symmetry},
                {"symplectic", r.symplectic},
                {"takagi_reconstruction", r.takagi_reconstruction},
                {"graph_roundtrip", r.graph_roundtrip}};
}

std::string edges_text(const EdgeReport& report) {
    std::string out = "# u v weight label (flat mode indices, 1-based)\n";
    for (const auto& e : report.edges) {
        out += std::to_string(e.u + 1);
        out += ' ';
        out += std::to_string(e.v + 1);
        out += ' ';
        out += format_double(e.weight);
        out += ' ';
        out += to_string(e.kind);
        out += '\n';
    }
    return out;
}

int cmd_supermodes(const CommonOptions& opts) {
    const ScenarioConfig cfg = load_scenario(opts);
    const SupermodeBasis basis = diagonalize_lattice(cfg.lattice);
    fs::create_directories(opts.out_dir);
    write_text_atomic(fs::path(opts.out_dir) / "M.csv", csv_real(basis.modes));
    write_text_atomic(fs::path(opts.out_dir) / "lambda.csv", csv_vector(basis.lambda));
    std::cout << "wrote " << (fs::path(opts.out_dir) / "M.csv").string() << " and "
              << (fs::path(opts.out_dir) / "lambda.csv").string() << "\n";
    return 0;
}

double edge_ratio_spectral_spatial(const EdgeReport& edges) {
    const double spatial = mean_abs_weight(edges, EdgeKind::Spatial);
    const double spectral = mean_abs_weight(edges, EdgeKind::Spectral);
    return spatial > 0.0 ? spectral / spatial : std::numeric_limits<double>::quiet_NaN();
}

int cmd_simulate(const CommonOptions& opts) {
    const ScenarioConfig cfg = load_scenario(opts);
    const SimulationResult res = run_scenario(cfg);

    fs::create_directories(opts.out_dir);
    const fs::path out(opts.out_dir);
    std::vector<std::string> files;
    const auto emit = [&](const std::string& name, const std::string& content) {
        write_text_atomic(out / name, content);
        files.push_back((out / name).string());
    };
    emit("U.csv", csv_complex(res.bog.U));
    emit("V.csv", csv_complex(res.bog.V));
    emit("sigma.csv", csv_real(res.sigma.sigma));
    emit("Z.csv", csv_complex(res.graph.Z));
    emit("edges.txt", edges_text(res.edges));

    std::vector<double> gains_r(res.gain.r.data(), res.gain.r.data() + res.gain.r.size());
    json report;
    report["schema_version"] = 1;
    report["command"] = "simulate";
    report["config"] = json::parse(echo_config(cfg));
    report["gains_r"] = gains_r;
    report["Gamma"] = res.jssa.Gamma;
    report["max_abs_jssa"] = res.jssa.f.cwiseAbs().maxCoeff();
    report["trace_U"] = res.graph.trace_U();
    report["topology"] = res.edges.topology;
    report["edge_count"] = res.edges.edges.size();
    report["edge_ratio_spectral_spatial"] = edge_ratio_spectral_spatial(res.edges);
    report["suppressed_bound"] = res.edges.suppressed_bound;
    report["residuals"] = residuals_json(res.residuals);
    report["quadrature"] = json{{"converged", res.jssa.quadrature.converged},
                                {"max_rel_change", res.jssa.quadrature.rel_change}};
    files.push_back((out / "report.json").string());
    report["files"] = files;
    report["wall_seconds"] = res.wall_seconds;
    report["timestamp"] = timestamp_utc();
    write_text_atomic(out / "report.json", report.dump(2) + "\n");

    std::cout << "topology " << res.edges.topology << ", Tr(U_g) = " << res.graph.trace_U()
              << ", " << res.edges.edges.size() << " edges; report at "
              << (out / "report.json").string() << "\n";
    return 0;
}

int cmd_sweep(const CommonOptions& opts, const std::string& param_flag,
              const std::vector<double>& values_flag) {
    ScenarioConfig cfg = load_scenario(opts);
    std::string parameter;
    std::vector<double> values;
    if (!param_flag.empty()) {
        parameter = param_flag;
        values = values_flag;
        if (values.empty()) throw ConfigError("sweep: --values must accompany --param");
    } else if (cfg.sweep) {
        parameter = cfg.sweep->parameter;
        values = cfg.sweep->values;
    } else {
        throw ConfigError("sweep: no sweep section in the config and no --param given");
    }

    struct Row {
        double value;
        double trace_U;
        double max_r;
        double ratio;
    };
    std::vector<Row> rows(values.size());
    std::exception_ptr first_error;
    std::mutex error_mutex;

    const int threads = std::min<int>(resolve_threads(opts.threads),
                                      static_cast<int>(values.size()));
    const auto work = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            try {
                const ScenarioConfig point = with_parameter(cfg, parameter, values[i]);
                const SimulationResult res = run_scenario(point);
                rows[i] = Row{values[i], res.graph.trace_U(), res.gain.r.maxCoeff(),
                              edge_ratio_spectral_spatial(res.edges)};
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        work(0, static_cast<int>(values.size()));
    } else {
        std::vector<std::thread> pool;
        const int chunk = (static_cast<int>(values.size()) + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const int begin = t * chunk;
            const int end = std::min<int>(begin + chunk, static_cast<int>(values.size()));
            if (begin < end) pool.emplace_back(work, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    std::string csv = parameter + ",trace_U,max_r,edge_ratio_spectral_spatial\n";
    for (const auto& row : rows) {
        csv += format_double(row.value);
        csv += ',';
        csv += format_double(row.trace_U);
        csv += ',';
        csv += format_double(row.max_r);
        csv += ',';
        csv += format_double(row.ratio);
        csv += '\n';
    }
    fs::create_directories(opts.out_dir);
    write_text_atomic(fs::path(opts.out_dir) / "sweep.csv", csv);
    std::cout << "wrote " << (fs::path(opts.out_dir) / "sweep.csv").string() << " ("
              << rows.size() << " points)\n";
    return 0;
}

int cmd_dispersion(const CommonOptions& opts) {
    const ScenarioConfig cfg = load_scenario(opts);
    if (!cfg.dispersion) throw ConfigError("dispersion: config has no dispersion section");
    const DispersionTask& task = *cfg.dispersion;

    const auto d = distance_profile(task.model, task.f_design);
    std::vector<std::vector<double>> f_at;
    for (double lambda : task.lambda_grid)
        f_at.push_back(distorted_profile(task.model, task.f_design, lambda));

    std::string csv = "j,f_design,d_um";
    for (double lambda : task.lambda_grid) csv += ",f@" + format_double(lambda);
    csv += '\n';
    for (std::size_t j = 0; j < task.f_design.size(); ++j) {
        csv += std::to_string(j + 1);
        csv += ',';
        csv += format_double(task.f_design[j]);
        csv += ',';
        csv += format_double(d[j]);
        for (std::size_t g = 0; g < task.lambda_grid.size(); ++g) {
            csv += ',';
            csv += format_double(f_at[g][j]);
        }
        csv += '\n';
    }
    fs::create_directories(opts.out_dir);
    write_text_atomic(fs::path(opts.out_dir) / "design.csv", csv);
    std::cout << "wrote " << (fs::path(opts.out_dir) / "design.csv").string() << "\n";
    return 0;
}

void add_common(CLI::App* sub, CommonOptions& opts, bool with_solver) {
    sub->add_option("--config", opts.config_path, "Scenario config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_dir, "Output directory (default: out)");
    sub->add_option("--threads", opts.threads,
                    "Worker threads (default: SPDCLAT_THREADS env or 1)");
    if (with_solver)
        sub->add_option("--solver", opts.solver_override, "Override the configured solver")
            ->check(CLI::IsMember({"low_gain", "flat_pump", "ode"}));
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Spatio-spectral Gaussian-state simulator for nonlinear waveguide arrays"};
    app.require_subcommand(1);

    CommonOptions sup_opts, sim_opts, sweep_opts, disp_opts;
    std::string sweep_param;
    std::vector<double> sweep_values;

    auto* sup = app.add_subcommand("supermodes", "Write the supermode basis and eigenvalues");
    add_common(sup, sup_opts, false);
    auto* sim = app.add_subcommand("simulate", "Run the full pipeline and write all matrices");
    add_common(sim, sim_opts, true);
    auto* swp = app.add_subcommand("sweep", "Run the pipeline over a parameter range");
    add_common(swp, sweep_opts, true);
    swp->add_option("--param", sweep_param, "Sweep parameter (overrides config)")
        ->check(CLI::IsMember({"g_sqrtp", "z", "C_M", "Delta_p", "Delta_F"}));
    swp->add_option("--values", sweep_values, "Sweep values (comma separated)")->delimiter(',');
    auto* dis = app.add_subcommand("dispersion", "Write the distance/distortion design table");
    add_common(dis, disp_opts, false);

    std::vector<const char*> argv;
    argv.push_back("spdclat");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sup->parsed()) return cmd_supermodes(sup_opts);
        if (sim->parsed()) return cmd_simulate(sim_opts);
        if (swp->parsed()) return cmd_sweep(sweep_opts, sweep_param, sweep_values);
        if (dis->parsed()) return cmd_dispersion(disp_opts);
        std::cerr << "error: no subcommand given\n";
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace spdclat::cli
