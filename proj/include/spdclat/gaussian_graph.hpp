#pragma once

#include "spdclat/lattice.hpp"
#include "spdclat/propagate.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace spdclat {

// Real quadrature-space map in (x_1..x_N, p_1..p_N) ordering, x = a + a^dag,
// p = -i(a - a^dag); vacuum shot noise is 1.
struct SymplecticMatrix {
    Eigen::MatrixXd S;

    int modes() const { return static_cast<int>(S.rows()) / 2; }
    Eigen::MatrixXd A() const { return S.topLeftCorner(modes(), modes()); }
    Eigen::MatrixXd B() const { return S.topRightCorner(modes(), modes()); }
    Eigen::MatrixXd C() const { return S.bottomLeftCorner(modes(), modes()); }
    Eigen::MatrixXd D() const { return S.bottomRightCorner(modes(), modes()); }
    double symplectic_residual() const;    // max |S Omega S^T - Omega|
};

struct CovarianceMatrix {
    Eigen::MatrixXd sigma;

    // Moduli of the Williamson spectrum; all 1 for pure states from vacuum.
    Eigen::VectorXd symplectic_eigenvalues() const;
};

// Complex adjacency Z = V + iU of the output Gaussian pure state.
struct GraphState {
    Eigen::MatrixXcd Z;
    double condition_number = 0.0;   // of A + iB

    Eigen::MatrixXd V_g() const { return Z.real(); }
    Eigen::MatrixXd U_g() const { return Z.imag(); }
    double trace_U() const { return Z.imag().trace(); }
};

enum class EdgeKind { Spectral, Spatial, SpatioSpectral };

std::string to_string(EdgeKind kind);

struct Edge {
    int u = 0;       // flat mode indices, u < v
    int v = 0;
    double weight = 0.0;
    EdgeKind kind = EdgeKind::SpatioSpectral;
};

struct EdgeReport {
    std::vector<Edge> edges;
    std::string topology;            // grid_2xN | linear | other
    double trace_U = 0.0;
    double suppressed_bound = 0.0;   // largest |V_g| entry below the threshold
    double threshold_abs = 0.0;      // epsilon * max |V_g| actually applied
};

SymplecticMatrix to_symplectic(const BogoliubovTransform& bog);

// sigma = S S^T (pure state from vacuum).
CovarianceMatrix covariance(const SymplecticMatrix& S);

// Z = (C + iD)(A + iB)^{-1}; the inverse exists for symplectic S.
GraphState graph_state(const SymplecticMatrix& S);

// Covariance reconstructed from the graph alone:
//   sigma_xx = U^{-1}, sigma_xp = U^{-1} V, sigma_pp = U + V U^{-1} V.
// Independent route used to cross-check covariance(S).
CovarianceMatrix covariance_from_graph(const GraphState& graph);

// Upper halves of the mirror band pairs; the self-paired center band of an
// odd L is excluded.
std::vector<int> idler_modes(const ModeIndexMap& map);

BogoliubovTransform idler_rotation(const BogoliubovTransform& bog, const std::vector<int>& modes,
                                   double theta);

// Thresholds |V_g| at epsilon * max |V_g| and labels the surviving edges:
// spectral = same waveguide, mirror bands; spatial = same band, adjacent
// waveguides; anything else is spatio-spectral.
EdgeReport classify_edges(const GraphState& graph, const ModeIndexMap& map, double epsilon);

double mean_abs_weight(const EdgeReport& report, EdgeKind kind);   // 0 when no such edges
double max_abs_weight(const EdgeReport& report, EdgeKind kind);

} // namespace spdclat
