#include "spdclat/gaussian_graph.hpp"

#include "spdclat/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <string>
#include <utility>

namespace spdclat {

double SymplecticMatrix::symplectic_residual() const {
    const int n = modes();
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    omega.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    omega.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
    return (S * omega * S.transpose() - omega).cwiseAbs().maxCoeff();
}

Eigen::VectorXd CovarianceMatrix::symplectic_eigenvalues() const {
    const int n = static_cast<int>(sigma.rows()) / 2;
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    omega.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    omega.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
    // eigenvalues of Omega sigma come in pairs +/- i nu
    Eigen::EigenSolver<Eigen::MatrixXd> es(omega * sigma, false);
    std::vector<double> nus;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double im = es.eigenvalues()(i).imag();
        if (im > 0.0) nus.push_back(im);
    }
    std::sort(nus.begin(), nus.end());
    Eigen::VectorXd out(static_cast<int>(nus.size()));
    for (std::size_t i = 0; i < nus.size(); ++i) out(static_cast<int>(i)) = nus[i];
    return out;
}

SymplecticMatrix to_symplectic(const BogoliubovTransform& bog) {
    bog.check();
    const int n = bog.size();
    const Eigen::MatrixXd reU = bog.U.real(), imU = bog.U.imag();
    const Eigen::MatrixXd reV = bog.V.real(), imV = bog.V.imag();
    SymplecticMatrix out;
    out.S.resize(2 * n, 2 * n);
    out.S.topLeftCorner(n, n) = reU + reV;
    out.S.topRightCorner(n, n) = imV - imU;
    out.S.bottomLeftCorner(n, n) = imU + imV;
    out.S.bottomRightCorner(n, n) = reU - reV;
    const double res = out.symplectic_residual();
    if (res > 1e-8)
        throw NumericalError("to_symplectic: symplectic residual " + std::to_string(res));
    return out;
}

CovarianceMatrix covariance(const SymplecticMatrix& S) {
    CovarianceMatrix out;
    out.sigma = S.S * S.S.transpose();
    return out;
}

GraphState graph_state(const SymplecticMatrix& S) {
    const int n = S.modes();
    const Eigen::MatrixXcd denom =
        S.A().cast<std::complex<double>>() + std::complex<double>(0.0, 1.0) * S.B();
    const Eigen::MatrixXcd numer =
        S.C().cast<std::complex<double>>() + std::complex<double>(0.0, 1.0) * S.D();

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(denom);
    const double smin = svd.singularValues()(n - 1);
    const double cond = smin > 0.0 ? svd.singularValues()(0) / smin
                                   : std::numeric_limits<double>::infinity();
    if (!(cond < 1e12))
        throw NumericalError("graph_state: A + iB is ill conditioned (cond = " +
                             std::to_string(cond) + ")");

    GraphState out;
    // Z = numer * denom^{-1} via solving denom^T Z^T = numer^T
    out.Z = denom.transpose().partialPivLu().solve(numer.transpose()).transpose();
    out.condition_number = cond;

    const double asym = (out.Z - out.Z.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-8)
        throw NumericalError("graph_state: Z asymmetry " + std::to_string(asym));
    return out;
}

CovarianceMatrix covariance_from_graph(const GraphState& graph) {
    const int n = static_cast<int>(graph.Z.rows());
    const Eigen::MatrixXd U = graph.U_g();
    const Eigen::MatrixXd V = graph.V_g();
    const Eigen::MatrixXd Uinv = U.llt().solve(Eigen::MatrixXd::Identity(n, n));
    CovarianceMatrix out;
    out.sigma.resize(2 * n, 2 * n);
    out.sigma.topLeftCorner(n, n) = Uinv;
    out.sigma.topRightCorner(n, n) = Uinv * V;
    out.sigma.bottomLeftCorner(n, n) = V * Uinv;
    out.sigma.bottomRightCorner(n, n) = U + V * Uinv * V;
    return out;
}

std::vector<int> idler_modes(const ModeIndexMap& map) {
    std::vector<int> modes;
    for (int l = 0; l < map.L; ++l) {
        if (l <= map.mirror_band(l)) continue;   // lower half and self-paired center
        for (int j = 0; j < map.N; ++j) modes.push_back(map.flat(j, l));
    }
    return modes;
}

BogoliubovTransform idler_rotation(const BogoliubovTransform& bog, const std::vector<int>& modes,
                                   double theta) {
    return rotate_modes(bog, modes, theta);
}

std::string to_string(EdgeKind kind) {
    switch (kind) {
        case EdgeKind::Spectral: return "spectral";
        case EdgeKind::Spatial: return "spatial";
        case EdgeKind::SpatioSpectral: return "spatio-spectral";
    }
    return "unknown";
}

namespace {

EdgeKind classify_pair(const ModeIndexMap& map, int u, int v) {
    const auto [ju, lu] = map.split(u);
    const auto [jv, lv] = map.split(v);
    if (ju == jv && lv == map.mirror_band(lu) && lu != lv) return EdgeKind::Spectral;
    if (lu == lv && std::abs(ju - jv) == 1) return EdgeKind::Spatial;
    return EdgeKind::SpatioSpectral;
}

bool is_grid_2xN(const std::set<std::pair<int, int>>& edges, const ModeIndexMap& map) {
    if (map.L != 2) return false;
    std::set<std::pair<int, int>> want;
    for (int j = 0; j < map.N; ++j) want.emplace(map.flat(j, 0), map.flat(j, 1));
    for (int l = 0; l < 2; ++l)
        for (int j = 0; j + 1 < map.N; ++j) want.emplace(map.flat(j, l), map.flat(j + 1, l));
    return edges == want;
}

bool is_linear(const std::set<std::pair<int, int>>& edges, const ModeIndexMap& map) {
    std::set<std::pair<int, int>> want;
    for (int m = 0; m + 1 < map.total(); ++m) want.emplace(m, m + 1);
    return map.total() > 1 && edges == want;
}

} // namespace

EdgeReport classify_edges(const GraphState& graph, const ModeIndexMap& map, double epsilon) {
    if (!(epsilon > 0.0)) throw UsageError("classify_edges: epsilon must be > 0");
    const Eigen::MatrixXd V = graph.V_g();
    const int n = static_cast<int>(V.rows());
    if (n != map.total()) throw UsageError("classify_edges: index map does not match the graph");

    EdgeReport report;
    report.trace_U = graph.trace_U();
    const double vmax = V.cwiseAbs().maxCoeff();
    report.threshold_abs = epsilon * vmax;

    std::set<std::pair<int, int>> edge_set;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            const double w = V(u, v);
            if (std::abs(w) > report.threshold_abs) {
                report.edges.push_back({u, v, w, classify_pair(map, u, v)});
                edge_set.emplace(u, v);
            } else {
                report.suppressed_bound = std::max(report.suppressed_bound, std::abs(w));
            }
        }

    if (is_grid_2xN(edge_set, map))
        report.topology = "grid_2x" + std::to_string(map.N);
    else if (is_linear(edge_set, map))
        report.topology = "linear";
    else
        report.topology = "other";
    return report;
}

double mean_abs_weight(const EdgeReport& report, EdgeKind kind) {
    double sum = 0.0;
    int count = 0;
    for (const auto& e : report.edges)
        if (e.kind == kind) {
            sum += std::abs(e.weight);
            ++count;
        }
    return count > 0 ? sum / count : 0.0;
}

double max_abs_weight(const EdgeReport& report, EdgeKind kind) {
    double best = 0.0;
    for (const auto& e : report.edges)
        if (e.kind == kind) best = std::max(best, std::abs(e.weight));
    return best;
}

} // namespace spdclat
