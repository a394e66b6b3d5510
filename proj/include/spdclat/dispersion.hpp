#pragma once

#include <utility>
#include <vector>

namespace spdclat {

// Refractive index model, either Sellmeier n^2 = 1 + sum B_i l^2/(l^2 - C_i)
// (wavelength in um) or a table with linear interpolation.
struct IndexModel {
    enum class Kind { Sellmeier, Tabulated };

    Kind kind = Kind::Sellmeier;
    std::vector<double> B;
    std::vector<double> C;
    std::vector<std::pair<double, double>> table;   // (lambda_um, n), ascending
    double lambda_min = 0.4;
    double lambda_max = 5.0;

    double operator()(double lambda_um) const;

    // Extraordinary index of congruent lithium niobate at room temperature
    // (Zelmon, Small, Jundt, JOSA B 14, 3319 (1997)).
    static IndexModel lithium_niobate_ne();
};

// Exponential model of the evanescent coupling between adjacent waveguides:
//   C(lambda, d) = C_0 / lambda * exp(-Gamma_0 * n(lambda) * d / lambda)
// valid for separations d above d_valid_min where next-to-nearest-neighbor
// effects are negligible.
struct DispersionModel {
    double C_0 = 25.6;        // um/mm
    double Gamma_0 = 0.19;    // dimensionless
    double lambda_0 = 1.55;   // design wavelength, um
    double d_m = 13.0;        // shortest separation of the design, um
    double d_valid_min = 13.0;
    IndexModel index = IndexModel::lithium_niobate_ne();

    void validate() const;
    double n(double lambda_um) const;

    static DispersionModel lithium_niobate_defaults();
};

// Coupling strength in mm^-1.
double coupling_strength(const DispersionModel& model, double lambda_um, double d_um);

// Separations (um) realizing a design coupling profile at lambda_0:
//   d_j = d_m - lambda_0 / (Gamma_0 n(lambda_0)) * ln(f_j); each f_j in (0, 1].
std::vector<double> distance_profile(const DispersionModel& model,
                                     const std::vector<double>& f_design);

// Profile seen at wavelength lambda by a lattice designed at lambda_0.
// Closed form; agrees with coupling_strength over distance_profile.
std::vector<double> distorted_profile(const DispersionModel& model,
                                      const std::vector<double>& f_design, double lambda_um);

} // namespace spdclat
