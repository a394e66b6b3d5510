// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include "spdclat/dispersion.hpp"
#include "spdclat/gaussian_graph.hpp"
#include "spdclat/jssa.hpp"
#include "spdclat/lattice.hpp"
#include "spdclat/propagate.hpp"
#include "spdclat/runner.hpp"
#include "spdclat/takagi.hpp"

#include <Eigen/SVD>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace spdclat;

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}
int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

LatticeSpec random_lattice(std::mt19937_64& rng, int N, double cmax = 0.1) {
    LatticeSpec spec;
    spec.N = N;
    spec.C_M = uniform(rng, 0.01, cmax);
    spec.f.resize(N > 1 ? N - 1 : 0);
    for (auto& fj : spec.f) fj = uniform(rng, 0.05, 1.0);
    return spec;
}

SpatialPumpProfile random_profile(std::mt19937_64& rng, int N) {
    SpatialPumpProfile pump;
    pump.eta.resize(N);
    double norm = 0.0;
    for (auto& e : pump.eta) {
        e = std::complex<double>(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
        norm += std::norm(e);
    }
    for (auto& e : pump.eta) e /= std::sqrt(norm);
    return pump;
}

ScenarioConfig grid_scenario(double g_per_guide = 0.05) {
    ScenarioConfig cfg;
    cfg.lattice = LatticeSpec::homogeneous(7, 0.01);
    cfg.L = 2;
    cfg.delta_F = 1.0;
    cfg.pump_phase = -0.5 * std::numbers::pi;
    cfg.spatial_pump = SpatialPumpProfile::flat(7, cfg.pump_phase);
    cfg.spatial_is_flat = true;
    cfg.spectral_pump = PumpSpectrum::monochromatic();
    cfg.g_sqrtP = g_per_guide * std::sqrt(7.0);
    cfg.z = 20.0;
    cfg.solver = Solver::FlatPump;
    cfg.idler_rotation = true;
    cfg.edge_threshold = 0.05;
    return cfg;
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
};

#define REQUIRE_NEAR(out, expr, bound, label)                                                     \
    do {                                                                                          \
        const double v_ = (expr);                                                                 \
        if (!(v_ < (bound))) {                                                                    \
            (out).pass = false;                                                                   \
            (out).detail << " [" << (label) << " = " << v_ << " !< " << (bound) << "]";           \
        }                                                                                         \
    } while (0)

Outcome criterion1() {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = run_scenario(grid_scenario());
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (res.edges.topology != "grid_2x7") {
        out.pass = false;
        out.detail << " [topology = " << res.edges.topology << " != grid_2x7]";
    }
    const double spectral = mean_abs_weight(res.edges, EdgeKind::Spectral);
    const double spatial = mean_abs_weight(res.edges, EdgeKind::Spatial);
    const double ratio = spectral / spatial;
    if (!(ratio >= 3.5 && ratio <= 4.5)) {
        out.pass = false;
        out.detail << " [spectral/spatial ratio = " << ratio << " outside [3.5, 4.5]]";
    }
    REQUIRE_NEAR(out, max_abs_weight(res.edges, EdgeKind::SpatioSpectral), 0.1 * spatial,
                 "max spatio-spectral");

    // every entry outside the ideal grid pattern stays below 1e-2
    const ModeIndexMap& map = res.map;
    std::set<std::pair<int, int>> pattern;
    for (int j = 0; j < 7; ++j) pattern.emplace(map.flat(j, 0), map.flat(j, 1));
    for (int l = 0; l < 2; ++l)
        for (int j = 0; j + 1 < 7; ++j) pattern.emplace(map.flat(j, l), map.flat(j + 1, l));
    const Eigen::MatrixXd V = res.graph.V_g();
    double off_pattern = 0.0;
    for (int u = 0; u < map.total(); ++u)
        for (int v = u; v < map.total(); ++v)
            if (!pattern.count({u, v})) off_pattern = std::max(off_pattern, std::abs(V(u, v)));
    REQUIRE_NEAR(out, off_pattern, 1e-2, "max non-pattern entry");
    REQUIRE_NEAR(out, wall, 5.0, "runtime s");
    out.detail << " (ratio " << ratio << ", off-pattern " << off_pattern << ", " << wall << " s)";
    return out;
}

Outcome criterion2() {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    double prev = 1e300;
    std::ostringstream values;
    for (double g : {0.01, 0.02, 0.05, 0.1}) {
        const auto res = run_scenario(grid_scenario(g));
        const double tr = res.graph.trace_U();
        values << " " << tr;
        if (!(tr < prev)) {
            out.pass = false;
            out.detail << " [Tr(U) not strictly decreasing at g_sqrtp = " << g << "]";
        }
        prev = tr;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    REQUIRE_NEAR(out, wall, 20.0, "runtime s");
    out.detail << " (Tr(U):" << values.str() << ", " << wall << " s)";
    return out;
}

Outcome criterion3() {
    Outcome out;
    const auto basis = diagonalize_lattice(LatticeSpec::homogeneous(7, 0.01));
    const double g_per_guide = 0.05, z = 20.0;
    const auto exact = flat_pump_solution(basis, 2, g_per_guide, z);
    OdeSettings settings;
    settings.h = 0.01;
    settings.phase_rate = 2.0 * basis.lambda.cwiseAbs().maxCoeff();
    const auto slow =
        ode_oracle(make_narrowband_sampler(basis, 2), g_per_guide * std::sqrt(7.0), z, settings);
    const auto lab = to_lab_frame(slow, basis, 2);
    const double du = (exact.U - lab.U).cwiseAbs().maxCoeff();
    const double dv = (exact.V - lab.V).cwiseAbs().maxCoeff();
    REQUIRE_NEAR(out, du, 1e-6, "max |dU|");
    REQUIRE_NEAR(out, dv, 1e-6, "max |dV|");
    out.detail << " (|dU| " << du << ", |dV| " << dv << ")";
    return out;
}

Outcome criterion4() {
    Outcome out;
    std::mt19937_64 rng(20240917);
    const int N = 5, L = 2;
    const auto basis = diagonalize_lattice(random_lattice(rng, N, 0.05));
    const auto fr = make_frexels(L, 1.0);
    const auto pump = PumpSpectrum::gaussian(fr.delta_F / 10.0);
    const auto spatial = random_profile(rng, N);
    const PhaseMatching pm{uniform(rng, -0.1, 0.1), uniform(rng, -0.02, 0.02), 0.0};
    const double z = 10.0;

    std::vector<double> errors;
    for (double Gamma : {0.05, 0.025, 0.0125}) {
        const double g = Gamma / z;
        const auto jssa = build_jssa_full(basis, fr, pump, spatial, pm, g, z, 32);
        const auto tf = takagi(jssa.f);
        const auto lg = low_gain_bogoliubov(basis, tf, gains(tf, jssa.Gamma), z);
        OdeSettings settings;
        settings.h = 0.01;
        const auto slow =
            ode_oracle(make_coupling_sampler(basis, fr, pump, spatial, pm, z, 32), g, z, settings);
        const auto lab = to_lab_frame(slow, basis, L);
        errors.push_back(std::max((lg.U - lab.U).cwiseAbs().maxCoeff(),
                                  (lg.V - lab.V).cwiseAbs().maxCoeff()));
    }
    out.detail << " (errors";
    for (double e : errors) out.detail << " " << e;
    for (std::size_t i = 1; i < errors.size(); ++i) {
        const double ratio = errors[i - 1] / errors[i];
        if (!(ratio >= 3.0)) {
            out.pass = false;
            out.detail << " [halving ratio " << ratio << " < 3]";
        }
    }
    out.detail << ")";
    return out;
}

struct SuiteResiduals {
    double commutator = 0.0, uvt = 0.0, symplectic = 0.0, takagi_rec = 0.0, takagi_svd = 0.0;
    double roundtrip = 0.0;
};

SuiteResiduals run_structure_suite() {
    SuiteResiduals worst;
    std::mt19937_64 rng(55001);
    for (int trial = 0; trial < 1000; ++trial) {
        const int N = uniform_int(rng, 1, 8);
        const int L = uniform_int(rng, 1, 4);
        const auto basis = diagonalize_lattice(random_lattice(rng, N));
        const auto fr = make_frexels(L, uniform(rng, 0.5, 2.0));
        const auto pump = PumpSpectrum::gaussian(uniform(rng, 0.3, 1.5) * fr.delta_F);
        const auto spatial = random_profile(rng, N);
        const PhaseMatching pm{uniform(rng, -0.2, 0.2), uniform(rng, -0.05, 0.05),
                               uniform(rng, -0.02, 0.02)};
        const double z = uniform(rng, 1.0, 20.0);
        const double g = uniform(rng, 0.0, 0.1);

        // every 125th scenario exercises the full band quadrature
        const Jssa jssa = (trial % 125 == 0 && N <= 4)
                              ? build_jssa_full(basis, fr, pump, spatial, pm, g, z, 24)
                              : build_jssa_separable(basis, fr, pump, spatial, pm, g, z, 24);
        const auto tf = takagi(jssa.f);
        worst.takagi_rec = std::max(worst.takagi_rec, tf.reconstruction_residual(jssa.f));
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jssa.f);
        worst.takagi_svd = std::max(
            worst.takagi_svd, (tf.Lambda - svd.singularValues()).cwiseAbs().maxCoeff());

        auto bog = low_gain_bogoliubov(basis, tf, gains(tf, jssa.Gamma), z);
        if (trial % 2 == 0)
            bog = idler_rotation(bog, idler_modes(jssa.index_map), 0.5 * std::numbers::pi);
        worst.commutator = std::max(worst.commutator, bog.commutator_residual());
        worst.uvt = std::max(worst.uvt, bog.uvt_asymmetry());

        const auto S = to_symplectic(bog);
        worst.symplectic = std::max(worst.symplectic, S.symplectic_residual());

        const auto sigma = covariance(S);
        const auto graph = graph_state(S);
        worst.roundtrip =
            std::max(worst.roundtrip,
                     (covariance_from_graph(graph).sigma - sigma.sigma).cwiseAbs().maxCoeff());
    }
    return worst;
}

Outcome criterion5(const SuiteResiduals& worst) {
    Outcome out;
    REQUIRE_NEAR(out, worst.commutator, 1e-8, "commutator");
    REQUIRE_NEAR(out, worst.uvt, 1e-8, "UV^T asymmetry");
    REQUIRE_NEAR(out, worst.symplectic, 1e-8, "symplectic form");
    REQUIRE_NEAR(out, worst.takagi_rec, 1e-8, "takagi reconstruction");
    REQUIRE_NEAR(out, worst.takagi_svd, 1e-10, "takagi vs svd");
    out.detail << " (worst: comm " << worst.commutator << ", sympl " << worst.symplectic
               << ", takagi " << worst.takagi_rec << ")";
    return out;
}

Outcome criterion6(const SuiteResiduals& worst) {
    Outcome out;
    REQUIRE_NEAR(out, worst.roundtrip, 1e-8, "graph round trip");
    // vacuum anchor
    BogoliubovTransform vac;
    vac.U = Eigen::MatrixXcd::Identity(6, 6);
    vac.V = Eigen::MatrixXcd::Zero(6, 6);
    const auto graph = graph_state(to_symplectic(vac));
    const double dev =
        (graph.Z - std::complex<double>(0.0, 1.0) * Eigen::MatrixXcd::Identity(6, 6))
            .cwiseAbs()
            .maxCoeff();
    REQUIRE_NEAR(out, dev, 1e-12, "vacuum Z - iI");
    out.detail << " (round trip " << worst.roundtrip << ", vacuum " << dev << ")";
    return out;
}

Outcome criterion7() {
    Outcome out;
    const auto basis = diagonalize_lattice(LatticeSpec::homogeneous(2, 0.05));
    const auto spatial = SpatialPumpProfile::flat(2, -0.5 * std::numbers::pi);
    const auto pump = PumpSpectrum::gaussian(4.0);
    const PhaseMatching pm{0.1, 0.02, 0.0};
    const double z = 5.0, bandwidth = 8.0, g = 0.05;
    double prev = 1e300, last = 0.0;
    out.detail << " (errors";
    for (double delta_F : {4.0, 2.0, 1.0, 0.5, 0.25}) {
        const int L = static_cast<int>(std::lround(bandwidth / delta_F));
        const auto fr = make_frexels(L, delta_F);
        const auto full = build_jssa_full(basis, fr, pump, spatial, pm, g, z, 32);
        const auto sep = build_jssa_separable(basis, fr, pump, spatial, pm, g, z, 32);
        const double err =
            (full.f - sep.f).cwiseAbs().maxCoeff() / full.f.cwiseAbs().maxCoeff();
        out.detail << " " << err;
        if (!(err < prev)) {
            out.pass = false;
            out.detail << " [not monotone at Delta_F = " << delta_F << "]";
        }
        prev = err;
        last = err;
    }
    REQUIRE_NEAR(out, last, 0.01, "final relative error");
    out.detail << ")";
    return out;
}

Outcome criterion8() {
    Outcome out;
    const auto basis = diagonalize_lattice(LatticeSpec::homogeneous(3, 0.02));
    const int L = 2;
    const auto fr = make_frexels(L, 1.0);
    const double phi = -0.5 * std::numbers::pi, z = 10.0, g = 0.05;
    const auto full = build_jssa_full(basis, fr, PumpSpectrum::gaussian(fr.delta_F / 50.0),
                                      SpatialPumpProfile::flat(3, phi), PhaseMatching{}, g, z, 32);
    const auto nb = narrowband_jssa(basis, L, g, z, phi);
    const double scale = full.f.cwiseAbs().maxCoeff();
    double off_pattern = 0.0;
    for (int a = 0; a < full.f.rows(); ++a)
        for (int b = 0; b < full.f.cols(); ++b)
            if (std::abs(nb.f(a, b)) == 0.0)
                off_pattern = std::max(off_pattern, std::abs(full.f(a, b)));
    REQUIRE_NEAR(out, off_pattern / scale, 1e-2, "off-pattern fraction");
    out.detail << " (off-pattern fraction " << off_pattern / scale << ")";
    return out;
}

Outcome criterion9() {
    Outcome out;
    const auto model = DispersionModel::lithium_niobate_defaults();
    const auto max_dev = [&](double fd, double half_window) {
        double worst = 0.0;
        for (int nm = -static_cast<int>(half_window * 1000); nm <= static_cast<int>(half_window * 1000);
             ++nm) {
            const double lambda = model.lambda_0 + nm * 1e-3;
            const double f = distorted_profile(model, {fd}, lambda)[0];
            worst = std::max(worst, std::abs(f / fd - 1.0));
        }
        return worst;
    };
    const struct {
        double fd, window, lo, hi;
    } cases[] = {
        {1.0, 0.030, 0.03, 0.07},
        {0.1, 0.030, 0.08, 0.12},
        {1.0, 0.050, 0.06, 0.10},
        {0.1, 0.050, 0.14, 0.18},
    };
    for (const auto& c : cases) {
        const double dev = max_dev(c.fd, c.window);
        out.detail << " [f=" << c.fd << ", +-" << c.window * 1000 << "nm: " << dev * 100 << "%]";
        if (!(dev >= c.lo && dev <= c.hi)) {
            out.pass = false;
            out.detail << " outside [" << c.lo * 100 << "%, " << c.hi * 100 << "%]";
        }
    }
    return out;
}

Outcome criterion10() {
    Outcome out;
    double worst = 0.0;
    for (int N = 1; N <= 64; ++N) {
        const double C_M = 0.01;
        const auto basis = diagonalize_lattice(LatticeSpec::homogeneous(N, C_M));
        for (int k = 1; k <= N; ++k) {
            const double want = 2.0 * C_M * std::cos(k * std::numbers::pi / (N + 1));
            worst = std::max(worst, std::abs(basis.lambda(k - 1) - want));
        }
    }
    REQUIRE_NEAR(out, worst, 1e-10, "max eigenvalue deviation");
    out.detail << " (worst " << worst << ")";
    return out;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> head = {
        {"grid cluster structure at the reference parameters", criterion1},
        {"nullifier error decreases with gain", criterion2},
        {"exact flat-pump solution vs ODE oracle", criterion3},
        {"low-gain convergence order vs ODE oracle", criterion4},
    };
    int failures = 0;
    int id = 1;
    const auto report = [&](const std::string& name, const Outcome& out) {
        std::printf("%s criterion %d: %s%s\n", out.pass ? "PASS" : "FAIL", id, name.c_str(),
                    out.detail.str().c_str());
        if (!out.pass) ++failures;
        ++id;
    };

    for (const auto& [name, fn] : head) {
        try {
            report(name, fn());
        } catch (const std::exception& e) {
            Outcome out;
            out.pass = false;
            out.detail << " [exception: " << e.what() << "]";
            report(name, out);
        }
    }

    try {
        const auto worst = run_structure_suite();
        report("structure preservation over 1000 random scenarios", criterion5(worst));
        report("graph round trip and vacuum anchor", criterion6(worst));
    } catch (const std::exception& e) {
        Outcome out;
        out.pass = false;
        out.detail << " [exception: " << e.what() << "]";
        report("structure preservation over 1000 random scenarios", out);
        report("graph round trip and vacuum anchor", out);
    }

    const std::vector<std::pair<std::string, std::function<Outcome()>>> tail = {
        {"separable amplitude converges to the full quadrature", criterion7},
        {"narrowband limit of the full quadrature", criterion8},
        {"coupling-dispersion distortion bands", criterion9},
        {"closed-form eigenvalues up to N = 64", criterion10},
    };
    for (const auto& [name, fn] : tail) {
        try {
            report(name, fn());
        } catch (const std::exception& e) {
            Outcome out;
            out.pass = false;
            out.detail << " [exception: " << e.what() << "]";
            report(name, out);
        }
    }

    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
