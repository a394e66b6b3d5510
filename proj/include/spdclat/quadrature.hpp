#pragma once

#include <complex>
#include <type_traits>
#include <vector>

namespace spdclat::quad {

// Gauss-Legendre nodes and weights on [-1, 1].
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Rules are computed once per order and cached; thread-safe.
const Rule& gauss_legendre(int order);

// Composite Gauss-Legendre on [a, b] split into `panels` equal panels.
template <typename F>
auto integrate(F&& f, double a, double b, int order, int panels = 1) {
    using T = std::invoke_result_t<F, double>;
    const Rule& rule = gauss_legendre(order);
    const double hp = (b - a) / panels;
    T sum{};
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * hp;
        const double halfw = 0.5 * hp;
        for (int i = 0; i < order; ++i)
            sum += rule.weights[i] * halfw * f(mid + halfw * rule.nodes[i]);
    }
    return sum;
}

// Tensorized composite Gauss-Legendre over [ax,bx] x [ay,by].
template <typename F>
auto integrate2d(F&& f, double ax, double bx, double ay, double by, int order, int panels_x = 1,
                 int panels_y = 1) {
    using T = std::invoke_result_t<F, double, double>;
    const Rule& rule = gauss_legendre(order);
    const double hx = (bx - ax) / panels_x;
    const double hy = (by - ay) / panels_y;
    T sum{};
    for (int px = 0; px < panels_x; ++px) {
        const double midx = ax + (px + 0.5) * hx;
        for (int py = 0; py < panels_y; ++py) {
            const double midy = ay + (py + 0.5) * hy;
            for (int i = 0; i < order; ++i) {
                const double x = midx + 0.5 * hx * rule.nodes[i];
                const double wx = 0.5 * hx * rule.weights[i];
                for (int j = 0; j < order; ++j) {
                    const double y = midy + 0.5 * hy * rule.nodes[j];
                    sum += wx * 0.5 * hy * rule.weights[j] * f(x, y);
                }
            }
        }
    }
    return sum;
}

} // namespace spdclat::quad
