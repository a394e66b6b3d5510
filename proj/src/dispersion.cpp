#include "spdclat/dispersion.hpp"

#include "spdclat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spdclat {

double IndexModel::operator()(double lambda_um) const {
    if (!(lambda_um >= lambda_min && lambda_um <= lambda_max))
        throw DomainError("index model: wavelength " + std::to_string(lambda_um) +
                          " um outside validity [" + std::to_string(lambda_min) + ", " +
                          std::to_string(lambda_max) + "]");
    if (kind == Kind::Sellmeier) {
        const double l2 = lambda_um * lambda_um;
        double n2 = 1.0;
        for (std::size_t i = 0; i < B.size(); ++i) n2 += B[i] * l2 / (l2 - C[i]);
        if (!(n2 > 1.0))
            throw DomainError("index model: n^2 <= 1 at lambda = " + std::to_string(lambda_um));
        return std::sqrt(n2);
    }
    const auto& t = table;
    auto hi = std::upper_bound(t.begin(), t.end(), lambda_um,
                               [](double v, const auto& p) { return v < p.first; });
    if (hi == t.begin()) return t.front().second;
    if (hi == t.end()) return t.back().second;
    auto lo = hi - 1;
    const double w = (lambda_um - lo->first) / (hi->first - lo->first);
    return (1.0 - w) * lo->second + w * hi->second;
}

IndexModel IndexModel::lithium_niobate_ne() {
    IndexModel m;
    m.kind = Kind::Sellmeier;
    m.B = {2.9804, 0.5981, 8.9543};
    m.C = {0.02047, 0.0666, 416.08};
    m.lambda_min = 0.4;
    m.lambda_max = 5.0;
    return m;
}

void DispersionModel::validate() const {
    if (!(C_0 > 0.0)) throw ConfigError("dispersion.C_0: must be > 0");
    if (!(Gamma_0 > 0.0)) throw ConfigError("dispersion.Gamma_0: must be > 0");
    if (!(lambda_0 > 0.0)) throw ConfigError("dispersion.lambda_0: must be > 0");
    if (!(d_m >= d_valid_min))
        throw ConfigError("dispersion.d_m: " + std::to_string(d_m) +
                          " um below the validity minimum " + std::to_string(d_valid_min) + " um");
    if (index.kind == IndexModel::Kind::Sellmeier && index.B.size() != index.C.size())
        throw ConfigError("dispersion.index: B and C must have equal lengths");
    if (index.kind == IndexModel::Kind::Tabulated && index.table.size() < 2)
        throw ConfigError("dispersion.index: table needs at least 2 samples");
}

double DispersionModel::n(double lambda_um) const {
    return index(lambda_um);
}

DispersionModel DispersionModel::lithium_niobate_defaults() {
    return DispersionModel{};
}

double coupling_strength(const DispersionModel& model, double lambda_um, double d_um) {
    model.validate();
    if (!(d_um >= model.d_valid_min))
        throw DomainError("coupling_strength: d = " + std::to_string(d_um) +
                          " um below the validity minimum " + std::to_string(model.d_valid_min) +
                          " um");
    const double n = model.n(lambda_um);
    return model.C_0 / lambda_um * std::exp(-model.Gamma_0 * n * d_um / lambda_um);
}

std::vector<double> distance_profile(const DispersionModel& model,
                                     const std::vector<double>& f_design) {
    model.validate();
    const double n0 = model.n(model.lambda_0);
    std::vector<double> d(f_design.size());
    for (std::size_t j = 0; j < f_design.size(); ++j) {
        const double f = f_design[j];
        if (!(f > 0.0))
            throw DomainError("distance_profile: f_design[" + std::to_string(j) +
                              "] must be > 0 (log divergence)");
        if (f > 1.0)
            throw DomainError("distance_profile: f_design[" + std::to_string(j) +
                              "] > 1 would need d below d_m");
        d[j] = model.d_m - model.lambda_0 / (model.Gamma_0 * n0) * std::log(f);
    }
    return d;
}

std::vector<double> distorted_profile(const DispersionModel& model,
                                      const std::vector<double>& f_design, double lambda_um) {
    model.validate();
    const double n0 = model.n(model.lambda_0);
    const double nl = model.n(lambda_um);
    const double ratio = model.lambda_0 / lambda_um;
    const double carrier = ratio * std::exp(-model.Gamma_0 *
                                            (nl / lambda_um - n0 / model.lambda_0) * model.d_m);
    std::vector<double> f(f_design.size());
    for (std::size_t j = 0; j < f_design.size(); ++j) {
        const double fd = f_design[j];
        if (!(fd > 0.0) || fd > 1.0)
            throw DomainError("distorted_profile: f_design[" + std::to_string(j) +
                              "] must be in (0, 1]");
        f[j] = carrier * std::exp(ratio * (nl / n0) * std::log(fd));
    }
    return f;
}

} // namespace spdclat
